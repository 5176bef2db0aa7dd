"""
Allow ``python -m atlas``.
"""

from atlas.main import main

raise SystemExit(main())
