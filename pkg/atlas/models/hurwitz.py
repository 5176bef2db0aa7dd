"""
Hurwitz (composition) algebras of dimension 1, 2, 4 and 8 and the Zorn model.

Basis {1, u_1, ..., u_7}. The octonion table is fixed by the oriented triples
below, (a, b, c) meaning u_a u_b = u_c cyclically and u_b u_a = -u_c. The
distinguished unit u_7 acts by u_7 u_k = u_{k+3} for k = 1, 2, 3, which makes
e_k^+ = rho^+ u_k multiply by the cross product rule of Zorn vector matrices.
The quaternions are span{1, u_1, u_2, u_3}, the complex numbers span{1, u_1}.
"""

from __future__ import annotations

from typing import Any, Iterable, Sequence

from atlas.core.exceptions import DimensionMismatchError
from atlas.models.exactnum import HALF, I, FieldScalar, ScalarLike

OCTONION_TRIPLES: tuple[tuple[int, int, int], ...] = (
    (1, 2, 3),
    (1, 6, 5),
    (2, 4, 6),
    (3, 5, 4),
    (7, 1, 4),
    (7, 2, 5),
    (7, 3, 6),
)

HURWITZ_DIMS = (1, 2, 4, 8)


def _build_table() -> tuple[tuple[tuple[int, int], ...], ...]:
    table: list[list[tuple[int, int]]] = [[(0, 0)] * 8 for _ in range(8)]
    for k in range(8):
        table[0][k] = (1, k)
        table[k][0] = (1, k)
    for k in range(1, 8):
        table[k][k] = (-1, 0)
    for a, b, c in OCTONION_TRIPLES:
        for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
            table[x][y] = (1, z)
            table[y][x] = (-1, z)
    return tuple(tuple(row) for row in table)


# MULTIPLICATION_TABLE[a][b] = (sign, c) with u_a u_b = sign * u_c, u_0 = 1
MULTIPLICATION_TABLE = _build_table()


class HurwitzElement:
    """Element sum(coords[k] u_k) of the Hurwitz algebra of dimension ``dim``."""

    __slots__ = ("dim", "coords")

    def __init__(self, dim: int, coords: Iterable[Any]):
        if dim not in HURWITZ_DIMS:
            raise DimensionMismatchError(f"Hurwitz algebras have dimension 1, 2, 4 or 8, not {dim}")
        values = tuple(coords)
        if len(values) != dim:
            raise DimensionMismatchError(f"expected {dim} coordinates, got {len(values)}")
        self.dim = dim
        self.coords = values

    @classmethod
    def zero(cls, dim: int) -> HurwitzElement:
        return cls(dim, (0,) * dim)

    @classmethod
    def basis(cls, dim: int, index: int, value: Any = 1) -> HurwitzElement:
        coords: list[Any] = [0] * dim
        coords[index] = value
        return cls(dim, coords)

    @classmethod
    def one(cls, dim: int) -> HurwitzElement:
        return cls.basis(dim, 0)

    def _check(self, other: HurwitzElement) -> None:
        if self.dim != other.dim:
            raise DimensionMismatchError(f"cannot combine dimension {self.dim} with {other.dim}")

    def __add__(self, other: HurwitzElement) -> HurwitzElement:
        self._check(other)
        return HurwitzElement(self.dim, (a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: HurwitzElement) -> HurwitzElement:
        self._check(other)
        return HurwitzElement(self.dim, (a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> HurwitzElement:
        return HurwitzElement(self.dim, (-a for a in self.coords))

    def scale(self, factor: Any) -> HurwitzElement:
        return HurwitzElement(self.dim, (a * factor for a in self.coords))

    def __mul__(self, other: HurwitzElement) -> HurwitzElement:
        self._check(other)
        out: list[Any] = [0] * self.dim
        for a, x in enumerate(self.coords):
            if not x:
                continue
            row = MULTIPLICATION_TABLE[a]
            for b, y in enumerate(other.coords):
                if y:
                    sign, c = row[b]
                    out[c] = out[c] + x * y if sign > 0 else out[c] - x * y
        return HurwitzElement(self.dim, out)

    def conj(self) -> HurwitzElement:
        """Octonionic conjugation: negates the imaginary units only."""
        return HurwitzElement(self.dim, (self.coords[0],) + tuple(-a for a in self.coords[1:]))

    def norm(self) -> Any:
        """n(x) = x conj(x), a scalar (bilinear; the complex unit is not conjugated)."""
        return sum((a * a for a in self.coords), 0)

    def trace(self) -> Any:
        """t(x) = x + conj(x)."""
        return 2 * self.coords[0]

    def is_zero(self) -> bool:
        return not any(self.coords)

    def is_scalar(self) -> bool:
        return not any(self.coords[1:])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, HurwitzElement):
            return NotImplemented
        return self.dim == other.dim and all(a == b for a, b in zip(self.coords, other.coords))

    def __hash__(self) -> int:
        return hash((self.dim, self.coords))

    def __repr__(self) -> str:
        terms = [f"{c}*{'1' if k == 0 else f'u{k}'}" for k, c in enumerate(self.coords) if c]
        return f"HurwitzElement({' + '.join(terms) or '0'})"


def associator(x: HurwitzElement, y: HurwitzElement, z: HurwitzElement) -> HurwitzElement:
    """(xy)z - x(yz)."""
    return (x * y) * z - x * (y * z)


def commutator(x: HurwitzElement, y: HurwitzElement) -> HurwitzElement:
    return x * y - y * x


# A^+ . B^- = ZORN_DOT_SIGN * sum(alpha_k^+ beta_k^-)
ZORN_DOT_SIGN = -1


def _cross(a: Sequence[Any], b: Sequence[Any]) -> tuple[Any, Any, Any]:
    return (
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    )


def _dot(a: Sequence[Any], b: Sequence[Any]) -> Any:
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]


class ZornMatrix:
    """
    Zorn vector matrix [[alpha+, A+], [A-, alpha-]].

    Corresponds to the octonion alpha+ rho+ + alpha- rho- + sum(alpha_k^+ e_k^+ + alpha_k^- e_k^-)
    with rho+- = (1 +- i u_7)/2 and e_k^+- = rho+- u_k.
    """

    __slots__ = ("alpha_plus", "alpha_minus", "a_plus", "a_minus")

    def __init__(
        self,
        alpha_plus: ScalarLike,
        alpha_minus: ScalarLike,
        a_plus: Sequence[ScalarLike],
        a_minus: Sequence[ScalarLike],
    ):
        self.alpha_plus = FieldScalar.coerce(alpha_plus)
        self.alpha_minus = FieldScalar.coerce(alpha_minus)
        self.a_plus = tuple(FieldScalar.coerce(v) for v in a_plus)
        self.a_minus = tuple(FieldScalar.coerce(v) for v in a_minus)
        if len(self.a_plus) != 3 or len(self.a_minus) != 3:
            raise DimensionMismatchError("Zorn vectors have three components")

    def multiply(self, other: ZornMatrix, dot_sign: int = ZORN_DOT_SIGN) -> ZornMatrix:
        a, b = self, other
        alpha_plus = a.alpha_plus * b.alpha_plus + dot_sign * _dot(a.a_plus, b.a_minus)
        alpha_minus = a.alpha_minus * b.alpha_minus + dot_sign * _dot(a.a_minus, b.a_plus)
        cross_minus = _cross(a.a_minus, b.a_minus)
        cross_plus = _cross(a.a_plus, b.a_plus)
        a_plus = tuple(
            a.alpha_plus * b.a_plus[k] + b.alpha_minus * a.a_plus[k] + cross_minus[k]
            for k in range(3)
        )
        a_minus = tuple(
            a.alpha_minus * b.a_minus[k] + b.alpha_plus * a.a_minus[k] + cross_plus[k]
            for k in range(3)
        )
        return ZornMatrix(alpha_plus, alpha_minus, a_plus, a_minus)

    def __mul__(self, other: ZornMatrix) -> ZornMatrix:
        return self.multiply(other)

    @classmethod
    def from_octonion(cls, x: HurwitzElement) -> ZornMatrix:
        if x.dim != 8:
            raise DimensionMismatchError("the Zorn model needs an octonion")
        c = [FieldScalar.coerce(v) for v in x.coords]
        return cls(
            c[0] - I * c[7],
            c[0] + I * c[7],
            [c[k] - I * c[k + 3] for k in (1, 2, 3)],
            [c[k] + I * c[k + 3] for k in (1, 2, 3)],
        )

    def to_octonion(self) -> HurwitzElement:
        coords: list[FieldScalar] = [HALF * (self.alpha_plus + self.alpha_minus)] + [FieldScalar()] * 7
        coords[7] = HALF * I * (self.alpha_plus - self.alpha_minus)
        for k in range(3):
            coords[k + 1] = HALF * (self.a_plus[k] + self.a_minus[k])
            coords[k + 4] = HALF * I * (self.a_plus[k] - self.a_minus[k])
        return HurwitzElement(8, coords)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ZornMatrix):
            return NotImplemented
        return (self.alpha_plus, self.alpha_minus, self.a_plus, self.a_minus) == (
            other.alpha_plus,
            other.alpha_minus,
            other.a_plus,
            other.a_minus,
        )

    def render(self) -> str:
        plus = ", ".join(str(v) for v in self.a_plus)
        minus = ", ".join(str(v) for v in self.a_minus)
        return f"[ {self.alpha_plus} | ({plus}) ]\n[ ({minus}) | {self.alpha_minus} ]"

    def __repr__(self) -> str:
        return f"ZornMatrix({self.alpha_plus}, {self.alpha_minus}, {self.a_plus}, {self.a_minus})"


def rho(sign: int) -> HurwitzElement:
    """rho+- = (1 +- i u_7)/2."""
    coords: list[FieldScalar] = [FieldScalar()] * 8
    coords[0] = HALF
    coords[7] = HALF * I * sign
    return HurwitzElement(8, coords)


def epsilon(k: int, sign: int) -> HurwitzElement:
    """e_k^+- = rho+- u_k, k = 1, 2, 3."""
    return rho(sign) * HurwitzElement.basis(8, k, FieldScalar.rational(1))
