"""
Repository layer for the transcribed root data.

Root lists are kept as text in the notation of the source tables
(``1/2(-k1+k2+k3+k4-k5-r3*k6)``, ``±`` expanding to both signs) and parsed on
demand into exact ``RootVector`` values.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from atlas.core.exceptions import TranscriptionError, UnknownAlgebraError
from atlas.models import AlgebraName, ParityReading, ParticleKind
from atlas.models.exactnum import FieldScalar, ScalarLike
from atlas.models.vectors import RootVector

_TERM = re.compile(r"^([+-]?)(?:(.+?)\*)?k([1-8])$")


def parse_root(text: str) -> RootVector:
    """Parse ``[factor(]terms[)]`` such as ``-k1+k4`` or ``1/2*r2(k4+k5)``."""
    source = text.replace(" ", "")
    factor = FieldScalar.rational(1)
    body = source
    if "(" in source:
        if not source.endswith(")") or source.count("(") != 1:
            raise TranscriptionError(f"unbalanced root text {text!r}")
        head, body = source[:-1].split("(", 1)
        if head in ("", "+"):
            pass
        elif head == "-":
            factor = -factor
        else:
            factor = FieldScalar.parse(head)
    terms = re.findall(r"[+-]?[^+-]+", body)
    if not terms or "".join(terms) != body:
        raise TranscriptionError(f"cannot parse root text {text!r}")
    coords: dict[int, ScalarLike] = {}
    for term in terms:
        match = _TERM.match(term)
        if not match:
            raise TranscriptionError(f"bad term {term!r} in root text {text!r}")
        sign, coefficient, index = match.groups()
        value = FieldScalar.parse(coefficient) if coefficient else FieldScalar.rational(1)
        if sign == "-":
            value = -value
        k = int(index)
        coords[k] = FieldScalar.coerce(coords.get(k, 0)) + value
    return RootVector.from_terms(coords, factor)


def expand_signs(text: str) -> list[str]:
    """Every reading of ``±`` as ``+`` or ``-``, in order."""
    pieces = text.split("±")
    if len(pieces) == 1:
        return [text]
    out = []
    for signs in itertools.product("+-", repeat=len(pieces) - 1):
        out.append(pieces[0] + "".join(s + p for s, p in zip(signs, pieces[1:])))
    return out


def parse_roots(texts: Iterable[str]) -> list[RootVector]:
    return [parse_root(t) for text in texts for t in expand_signs(text)]


def signed_half_sums(
    prefix: str,
    signed: Sequence[str],
    parity: str | None,
    count_prefix: bool = True,
    uncounted: Sequence[str] = (),
) -> list[RootVector]:
    """
    ½(prefix ± signed_1 ± ... ± signed_m) over the admitted sign patterns.

    The number of + signs (those of ``prefix`` when ``count_prefix``, plus the chosen
    signs of the ``signed`` terms except those listed in ``uncounted``) must have the
    given parity ("even" or "odd"); ``None`` admits every pattern.
    """
    prefix_plus = 0
    if count_prefix and prefix:
        prefix_plus = sum(1 for t in re.findall(r"[+-]?[^+-]+", prefix) if not t.startswith("-"))
    out = []
    for signs in itertools.product("+-", repeat=len(signed)):
        plus = prefix_plus + sum(
            1 for s, term in zip(signs, signed) if s == "+" and term not in uncounted
        )
        if parity == "even" and plus % 2:
            continue
        if parity == "odd" and not plus % 2:
            continue
        body = prefix + "".join(s + term for s, term in zip(signs, signed))
        out.append(parse_root(f"1/2({body})"))
    return out


def negatives(roots: Iterable[RootVector]) -> list[RootVector]:
    return [-r for r in roots]


def plus_minus(roots: Iterable[RootVector]) -> list[RootVector]:
    items = list(roots)
    return items + negatives(items)


# ============================================================================
# Root table
# ============================================================================


@dataclass(frozen=True)
class RootRow:
    """
    One line of the root table.

    ``pattern`` is one of:
      differences  (k_i - k_j), i != j over ``indices``
      thirds       ±1/3(-2k_i + k_j + k_l) over permutations of ``indices``
      units        ±coefficient*k_i
      pairs        ±k_i ± k_j, i < j
      half_signs   1/2(±k_1 ... ± coefficient*k_last) with an optional sign parity
    """

    pattern: str
    indices: tuple[int, ...]
    count: int
    coefficient: str = "1"
    parity: str | None = None

    @property
    def has_irrational_term(self) -> bool:
        return self.pattern == "half_signs" and self.coefficient != "1"


ROOT_TABLE: dict[AlgebraName, tuple[RootRow, ...]] = {
    AlgebraName.G2: (
        RootRow("differences", (1, 2, 3), 6),
        RootRow("thirds", (1, 2, 3), 6),
    ),
    AlgebraName.F4: (
        RootRow("units", (1, 2, 3, 4), 8),
        RootRow("pairs", (1, 2, 3, 4), 24),
        RootRow("half_signs", (1, 2, 3, 4), 16),
    ),
    AlgebraName.E6: (
        RootRow("pairs", (1, 2, 3, 4, 5), 40),
        RootRow("half_signs", (1, 2, 3, 4, 5, 6), 32, coefficient="r3", parity="odd"),
    ),
    AlgebraName.E7: (
        RootRow("units", (7,), 2, coefficient="r2"),
        RootRow("pairs", (1, 2, 3, 4, 5, 6), 60),
        RootRow("half_signs", (1, 2, 3, 4, 5, 6, 7), 64, coefficient="r2", parity="even"),
    ),
    AlgebraName.E8: (
        RootRow("pairs", (1, 2, 3, 4, 5, 6, 7, 8), 112),
        RootRow("half_signs", (1, 2, 3, 4, 5, 6, 7, 8), 128, parity="even"),
    ),
}

ROOT_COUNTS: dict[AlgebraName, int] = {
    AlgebraName.G2: 12,
    AlgebraName.F4: 48,
    AlgebraName.E6: 72,
    AlgebraName.E7: 126,
    AlgebraName.E8: 240,
}

# Rank of the span of each system inside R^8
SPAN_RANKS: dict[AlgebraName, int] = {
    AlgebraName.G2: 2,
    AlgebraName.F4: 4,
    AlgebraName.E6: 6,
    AlgebraName.E7: 7,
    AlgebraName.E8: 8,
}


def expand_row(row: RootRow, reading: ParityReading = ParityReading.COUNTED) -> list[RootVector]:
    """Vectors of one table line; ``reading`` decides whether the irrational term joins the parity count."""
    idx = row.indices
    if row.pattern == "differences":
        return [RootVector.k(i) - RootVector.k(j) for i in idx for j in idx if i != j]
    if row.pattern == "thirds":
        out = []
        for i, j, l in itertools.permutations(idx, 3):
            if j < l:
                v = parse_root(f"1/3(-2*k{i}+k{j}+k{l})")
                out.extend((v, -v))
        return out
    if row.pattern == "units":
        return plus_minus(parse_root(f"{row.coefficient}*k{i}") for i in idx)
    if row.pattern == "pairs":
        return [
            parse_root(f"{a}k{i}{b}k{j}")
            for i, j in itertools.combinations(idx, 2)
            for a in "+-"
            for b in "+-"
        ]
    if row.pattern == "half_signs":
        terms = [f"k{i}" for i in idx[:-1]] + [f"{row.coefficient}*k{idx[-1]}"]
        uncounted: tuple[str, ...] = ()
        if row.has_irrational_term and reading == ParityReading.EXCLUDED:
            uncounted = (terms[-1],)
        return signed_half_sums("", terms, row.parity, uncounted=uncounted)
    raise TranscriptionError(f"unknown row pattern {row.pattern!r}")


# ============================================================================
# Explicit lists of the decomposition
# ============================================================================

HIGHEST_WEIGHT_TEXT: dict[AlgebraName, tuple[str, ...]] = {
    AlgebraName.F4: ("-k1", "-k1±k4", "1/2(-k1+k2+k3±k4)", "k2+k3"),
    AlgebraName.E6: (
        "-k1±k4",
        "-k1±k5",
        "k2+k3",
        "1/2(-k1+k2+k3+k4-k5-r3*k6)",
        "1/2(-k1+k2+k3+k4+k5+r3*k6)",
        "1/2(-k1+k2+k3-k4+k5-r3*k6)",
        "1/2(-k1+k2+k3-k4-k5+r3*k6)",
    ),
    AlgebraName.E7: (
        "-k1±k4",
        "-k1±k5",
        "-k1±k6",
        "k2+k3",
        "1/2(-k1+k2+k3-k4-k5-k6±r2*k7)",
        "1/2(-k1+k2+k3-k4+k5+k6±r2*k7)",
        # printed with -k6; the root on eta_3 + eta_5 and the sign parity need +k6
        "1/2(-k1+k2+k3+k4-k5+k6±r2*k7)",
        "1/2(-k1+k2+k3+k4+k5-k6±r2*k7)",
    ),
    AlgebraName.E8: ("-k1±k4", "-k1±k5", "-k1±k6", "-k1±k7", "-k1±k8", "k2+k3"),
}

A2_ONE_TEXT = ("±(k4+k5)", "±1/2(k1+k2+k3-k4-k5-r3*k6)", "±1/2(k1+k2+k3+k4+k5-r3*k6)")
A2_TWO_TEXT = ("±(k4-k5)", "±1/2(k1+k2+k3-k4+k5+r3*k6)", "±1/2(k1+k2+k3+k4-k5+r3*k6)")

G0_TEXT: dict[AlgebraName, tuple[str, ...]] = {
    AlgebraName.F4: ("±k4", "±1/2(k1+k2+k3±k4)"),
    AlgebraName.E6: A2_ONE_TEXT + A2_TWO_TEXT,
    AlgebraName.E7: ("±k4±k5", "±k4±k6", "±k5±k6", "±r2*k7"),
    AlgebraName.E8: tuple(
        f"±k{i}±k{j}" for i, j in itertools.combinations((4, 5, 6, 7, 8), 2)
    ),
}


def _parse_signed(text: str) -> list[RootVector]:
    """A leading ``±`` (possibly before a factor) marks a list entry taken with both signs."""
    if text.startswith("±"):
        return plus_minus(parse_roots([text[1:]]))
    return parse_roots([text])


def highest_weight_list(name: AlgebraName) -> list[RootVector]:
    """The h.w. Jordan roots exactly as listed."""
    if name not in HIGHEST_WEIGHT_TEXT:
        raise UnknownAlgebraError(f"no highest-weight list for {name.value}")
    roots = [r for text in HIGHEST_WEIGHT_TEXT[name] for r in _parse_signed(text)]
    if name == AlgebraName.E8:
        roots += signed_half_sums("-k1+k2+k3", ("k4", "k5", "k6", "k7", "k8"), "even")
    return roots


def g0_list(name: AlgebraName) -> list[RootVector]:
    """The g0 roots exactly as listed."""
    if name not in G0_TEXT:
        raise UnknownAlgebraError(f"no g0 list for {name.value}")
    roots = [r for text in G0_TEXT[name] for r in _parse_signed(text)]
    if name == AlgebraName.E7:
        roots += plus_minus(
            signed_half_sums("k1+k2+k3", ("k4", "k5", "k6", "r2*k7"), "even", uncounted=("r2*k7",))
        )
    if name == AlgebraName.E8:
        roots += plus_minus(signed_half_sums("k1+k2+k3", ("k4", "k5", "k6", "k7", "k8"), "even"))
    return roots


def e6_g0_components() -> tuple[list[RootVector], list[RootVector]]:
    """The two a2 summands of the e6 g0."""
    return (
        [r for text in A2_ONE_TEXT for r in _parse_signed(text)],
        [r for text in A2_TWO_TEXT for r in _parse_signed(text)],
    )


# ============================================================================
# Planes of e6 and f4
# ============================================================================

F4_PLANE_BASIS = ("k4", "1/3*r3(k1+k2+k3)")
# (s, t) of each h.w. root of f4 on its plane, in list order
F4_PLANE_COORDINATES: tuple[tuple[str, str, str], ...] = (
    ("-k1", "0", "-1/3*r3"),
    ("-k1+k4", "1", "-1/3*r3"),
    ("-k1-k4", "-1", "-1/3*r3"),
    ("1/2(-k1+k2+k3+k4)", "1/2", "1/6*r3"),
    ("1/2(-k1+k2+k3-k4)", "-1/2", "1/6*r3"),
    ("k2+k3", "0", "2/3*r3"),
)

E6_PLANE_BASES: dict[int, tuple[str, str]] = {
    1: ("1/2*r2(k4+k5)", "1/6*r6(k1+k2+k3-r3*k6)"),
    2: ("1/2*r2(k4-k5)", "1/6*r6(k1+k2+k3+r3*k6)"),
}

E6_PLANE_OFFSETS: dict[int, tuple[str, str, str]] = {
    1: (
        "1/6(-5*k1+k2+k3+3*k4-3*k5-r3*k6)",
        "1/3(-k1+2*k2+2*k3+r3*k6)",
        "1/6(-5*k1+k2+k3-3*k4+3*k5-r3*k6)",
    ),
    2: (
        "1/6(-5*k1+k2+k3+3*k4+3*k5+r3*k6)",
        "1/3(-k1+2*k2+2*k3-r3*k6)",
        "1/6(-5*k1+k2+k3-3*k4-3*k5+r3*k6)",
    ),
}


@dataclass(frozen=True)
class Table3Row:
    """One row of the a2 + a2 quantum number table."""

    plane1_index: int
    plane2_index: int
    root: str
    st: tuple[str, str]
    st_prime: tuple[str, str]


_R2 = "1/2*r2"
_MR2 = "-1/2*r2"
_LOW = "-1/6*r6"
_HIGH = "1/3*r6"

TABLE3: tuple[Table3Row, ...] = (
    Table3Row(1, 1, "-k1+k4", (_R2, _LOW), (_R2, _LOW)),
    Table3Row(1, 2, "1/2(-k1+k2+k3+k4-k5-r3*k6)", ("0", _HIGH), (_R2, _LOW)),
    Table3Row(1, 3, "-k1-k5", (_MR2, _LOW), (_R2, _LOW)),
    Table3Row(2, 1, "1/2(-k1+k2+k3+k4+k5+r3*k6)", (_R2, _LOW), ("0", _HIGH)),
    Table3Row(2, 2, "k2+k3", ("0", _HIGH), ("0", _HIGH)),
    Table3Row(2, 3, "1/2(-k1+k2+k3-k4-k5+r3*k6)", (_MR2, _LOW), ("0", _HIGH)),
    Table3Row(3, 1, "-k1+k5", (_R2, _LOW), (_MR2, _LOW)),
    # printed as the (1, 2) root
    Table3Row(3, 2, "1/2(-k1+k2+k3-k4+k5-r3*k6)", ("0", _HIGH), (_MR2, _LOW)),
    Table3Row(3, 3, "-k1-k4", (_MR2, _LOW), (_MR2, _LOW)),
)


# ============================================================================
# eta bases
# ============================================================================

# eta_i - eta_j for the a5 inside e6
E6_ETA_DIFFERENCES: dict[tuple[int, int], str] = {
    (1, 2): "k4+k5",
    (3, 1): "1/2(k1+k2+k3-k4-k5-r3*k6)",
    (2, 3): "1/2(-k1-k2-k3-k4-k5+r3*k6)",
    (4, 5): "1/2(k1+k2+k3-k4+k5+r3*k6)",
    (6, 4): "k4-k5",
    (5, 6): "1/2(-k1-k2-k3-k4+k5-r3*k6)",
    (1, 4): "-k1+k4",
    (1, 5): "1/2(-k1+k2+k3+k4+k5+r3*k6)",
    (1, 6): "-k1+k5",
    (2, 4): "-k1-k5",
    (2, 5): "1/2(-k1+k2+k3-k4-k5+r3*k6)",
    (2, 6): "-k1-k4",
    (3, 4): "1/2(-k1+k2+k3+k4-k5-r3*k6)",
    (3, 5): "k2+k3",
    (3, 6): "1/2(-k1+k2+k3-k4+k5-r3*k6)",
}

D6_ETA: tuple[str, ...] = (
    "1/2(-k1-k4-k5-k6)",
    "1/2(-k1-k4+k5+k6)",
    "1/2(-k1+k4-k5+k6)",
    "1/2(-k1+k4+k5-k6)",
    "1/2(k2+k3+r2*k7)",
    "1/2(k2+k3-r2*k7)",
)

D6_ETA_DIFFERENCES: dict[tuple[int, int], str] = {
    (1, 2): "-k5-k6",
    (1, 3): "-k4-k6",
    (1, 4): "-k4-k5",
    (1, 5): "1/2(-k1-k2-k3-k4-k5-k6-r2*k7)",
    (1, 6): "1/2(-k1-k2-k3-k4-k5-k6+r2*k7)",
    (2, 3): "-k4+k5",
    (2, 4): "-k4+k6",
    (2, 5): "1/2(-k1-k2-k3-k4+k5+k6-r2*k7)",
    (2, 6): "1/2(-k1-k2-k3-k4+k5+k6+r2*k7)",
    (3, 4): "-k5+k6",
    (3, 5): "1/2(-k1-k2-k3+k4-k5+k6-r2*k7)",
    (3, 6): "1/2(-k1-k2-k3+k4-k5+k6+r2*k7)",
    (4, 5): "1/2(-k1-k2-k3+k4+k5-k6-r2*k7)",
    (4, 6): "1/2(-k1-k2-k3+k4+k5-k6+r2*k7)",
    (5, 6): "r2*k7",
}

D6_ETA_SUMS: dict[tuple[int, int], str] = {
    (1, 2): "-k1-k4",
    (1, 3): "-k1-k5",
    (1, 4): "-k1-k6",
    (1, 5): "1/2(-k1+k2+k3-k4-k5-k6+r2*k7)",
    (1, 6): "1/2(-k1+k2+k3-k4-k5-k6-r2*k7)",
    (2, 3): "-k1+k6",
    (2, 4): "-k1+k5",
    (2, 5): "1/2(-k1+k2+k3-k4+k5+k6+r2*k7)",
    (2, 6): "1/2(-k1+k2+k3-k4+k5+k6-r2*k7)",
    (3, 4): "-k1+k4",
    (3, 5): "1/2(-k1+k2+k3+k4-k5+k6+r2*k7)",
    (3, 6): "1/2(-k1+k2+k3+k4-k5+k6-r2*k7)",
    (4, 5): "1/2(-k1+k2+k3+k4+k5-k6+r2*k7)",
    (4, 6): "1/2(-k1+k2+k3+k4+k5-k6-r2*k7)",
    (5, 6): "k2+k3",
}


# ============================================================================
# Coordinate substitutions inside e8
# ============================================================================

# Each reading maps the target's k_i to a vector of the e8 space
SUBSTITUTIONS: dict[AlgebraName, dict[str, tuple[str, ...]]] = {
    AlgebraName.E6: {
        "index_shift": ("k4", "k5", "k6", "k7", "k8", "-1/3*r3(k1+k2+k3)"),
        "literal_index": ("k1", "k2", "k3", "k4", "k5", "-1/3*r3(k1+k2+k3)"),
    },
    AlgebraName.E7: {
        "index_shift": ("k4", "k5", "k6", "k7", "k8", "k1", "1/2*r2(k2+k3)"),
        "literal_index": ("k1", "k2", "k3", "k4", "k5", "k1", "1/2*r2(k2+k3)"),
    },
}


# ============================================================================
# Particle lists
# ============================================================================


def quark_roots(color: int) -> list[RootVector]:
    """Quarks of color c: -k_c ± k_j (j = 4..8), -k_c + k1+k2+k3 and the half sums."""
    kc = RootVector.k(color)
    roots = parse_roots(f"±k{j}" for j in range(4, 9))
    roots = [r - kc for r in roots]
    roots.append(parse_root("k1+k2+k3") - kc)
    roots += [
        r - kc
        for r in signed_half_sums(
            "k1+k2+k3", ("k4", "k5", "k6", "k7", "k8"), "even", count_prefix=False
        )
    ]
    return roots


def lepton_roots(family: int) -> list[RootVector]:
    """Leptons of family f: -k_f ± k7, -k_f ± k8, -k_f + k4+k5+k6 and the half sums."""
    kf = RootVector.k(family)
    roots = [r - kf for r in parse_roots(["±k7", "±k8"])]
    roots.append(parse_root("k4+k5+k6") - kf)
    for sign in "+-":
        for t7, t8 in itertools.product("+-", repeat=2):
            plus = (sign, t7, t8).count("+")
            if plus % 2:
                continue
            body = f"{sign}k1{sign}k2{sign}k3+k4+k5+k6{t7}k7{t8}k8"
            roots.append(parse_root(f"1/2({body})") - kf)
    return roots


A2_LABEL_TEXT: dict[ParticleKind, tuple[str, ...]] = {
    ParticleKind.A2_C: ("±(k1-k2)", "±(k1-k3)", "±(k2-k3)"),
    ParticleKind.A2_F: ("±(k4-k5)", "±(k4-k6)", "±(k5-k6)"),
    ParticleKind.A2_G1: ("±(k7+k8)", "±1/2(k1+k2+k3+k4+k5+k6-k7-k8)", "±1/2(k1+k2+k3+k4+k5+k6+k7+k8)"),
    ParticleKind.A2_G2: (
        "±(k7-k8)",
        "±1/2(-k1-k2-k3+k4+k5+k6-k7+k8)",
        "±1/2(-k1-k2-k3+k4+k5+k6+k7-k8)",
    ),
}


def a2_label_roots(kind: ParticleKind) -> list[RootVector]:
    return [r for text in A2_LABEL_TEXT[kind] for r in _parse_signed(text)]


# ============================================================================
# Errata
# ============================================================================


@dataclass(frozen=True)
class Erratum:
    """A slip in the source text and the reading used instead."""

    location: str
    printed: str
    used: str
    reason: str


ERRATA: tuple[Erratum, ...] = (
    Erratum(
        "Table 3, third group, middle row",
        "1/2(-k1+k2+k3+k4-k5-r3*k6)",
        "1/2(-k1+k2+k3-k4+k5-r3*k6)",
        "the printed root repeats row (1, 2); the root on the planes (3, 2) is the eta_3 - eta_6 root",
    ),
    Erratum(
        "e7 highest-weight list, third half-sum entry",
        "1/2(-k1+k2+k3+k4-k5-k6±r2*k7)",
        "1/2(-k1+k2+k3+k4-k5+k6±r2*k7)",
        "the printed vector has an odd number of + among k1..k6 and is not an e7 root",
    ),
    Erratum(
        "e7 Jordan pair geometry, Sigma+ label",
        "Sigma+ holds the h.w. Jbar",
        "Sigma+ holds the h.w. J",
        "the listed roots are those of the h.w. J; the label is kept as printed",
    ),
    Erratum(
        "Table 3 headers",
        "planes indexed Pi-",
        "planes Pi+ with offsets u_i, v_j",
        "the h.w. roots lie on the Pi+ planes; the conjugate roots lie on Pi- with opposite numbers",
    ),
    Erratum(
        "f4 plane Pi0 parameters",
        "t = -r3/2 for s = ±1/2",
        "t = ±r3/2 for s = ±1/2",
        "the g0 roots ±1/2(k1+k2+k3±k4) reach both t = r3/2 and t = -r3/2",
    ),
    Erratum(
        "e6 and e8 inside e8, coordinate substitution",
        "k'_i = k_i+3",
        "k'_i = k_(i+3)",
        "only the shifted-index reading maps the g0 roots onto the root table",
    ),
)


class TranscriptionRepository:
    """Parsed, cached access to the transcribed lists."""

    def __init__(self) -> None:
        self._cache: dict[tuple, list[RootVector]] = {}

    def _cached(self, key: tuple, build) -> list[RootVector]:
        if key not in self._cache:
            self._cache[key] = build()
        return list(self._cache[key])

    def table_rows(self, name: AlgebraName) -> tuple[RootRow, ...]:
        """Get the root-table lines of an exceptional algebra."""
        if name not in ROOT_TABLE:
            raise UnknownAlgebraError(f"{name.value} is not in the root table")
        return ROOT_TABLE[name]

    def highest_weight(self, name: AlgebraName) -> list[RootVector]:
        """Get the listed h.w. Jordan roots."""
        return self._cached(("hw", name), lambda: highest_weight_list(name))

    def g0(self, name: AlgebraName) -> list[RootVector]:
        """Get the listed g0 roots."""
        return self._cached(("g0", name), lambda: g0_list(name))

    def e6_eta_differences(self) -> dict[tuple[int, int], RootVector]:
        return {key: parse_root(text) for key, text in E6_ETA_DIFFERENCES.items()}

    def d6_eta(self) -> list[RootVector]:
        return self._cached(("d6_eta",), lambda: [parse_root(t) for t in D6_ETA])

    def d6_lists(self) -> tuple[dict[tuple[int, int], RootVector], dict[tuple[int, int], RootVector]]:
        """Get the listed eta_i - eta_j and eta_i + eta_j of the d6 inside e7."""
        return (
            {key: parse_root(text) for key, text in D6_ETA_DIFFERENCES.items()},
            {key: parse_root(text) for key, text in D6_ETA_SUMS.items()},
        )

    def table3(self) -> list[Table3Row]:
        return list(TABLE3)

    def quarks(self, color: int) -> list[RootVector]:
        return self._cached(("quark", color), lambda: quark_roots(color))

    def leptons(self, family: int) -> list[RootVector]:
        return self._cached(("lepton", family), lambda: lepton_roots(family))

    def a2_labels(self, kind: ParticleKind) -> list[RootVector]:
        return self._cached(("a2", kind), lambda: a2_label_roots(kind))

    def errata(self) -> tuple[Erratum, ...]:
        return ERRATA


@lru_cache(maxsize=1)
def get_repository() -> TranscriptionRepository:
    """Shared repository instance."""
    return TranscriptionRepository()
