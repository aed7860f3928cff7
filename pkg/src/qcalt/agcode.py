"""GRS and alternant codes, both from (support, multiplier) and as AG codes on P^1.

A divisor G is split into positive and negative parts. L(G) is spanned by
N_neg * X^i * Y^(d-i) / D_pos for i = 0..deg G, where D_pos is the product of
the linear forms of the positive part and N_neg that of the negative part.
With homogeneous coordinates that covers P_inf and finite points alike.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from . import falg
from .errors import (
    BadDimension,
    DuplicateSupport,
    NegativeDegree,
    NonRationalSupport,
    SupportMeetsDivisor,
    SupportNotStable,
    ZeroMultiplier,
)
from .falg import LinearCode
from .ff import GF, FieldTower, Poly, _pmul, interpolate, roots_with_multiplicity
from .projline import INF, Homography, ProjPoint, affine

GRS = "grs"
ALTERNANT = "alternant"


class Divisor:
    """Finite formal sum of points; zero multiplicities are dropped."""

    __slots__ = ("_m",)

    def __init__(self, mult: Mapping[ProjPoint, int] | Iterable[tuple[ProjPoint, int]] = ()) -> None:
        items = mult.items() if isinstance(mult, Mapping) else mult
        m: dict[ProjPoint, int] = {}
        for P, k in items:
            m[P] = m.get(P, 0) + k
        self._m = {P: k for P, k in sorted(m.items()) if k}

    @classmethod
    def point(cls, P: ProjPoint, k: int = 1) -> Divisor:
        return cls({P: k})

    @classmethod
    def sum_of(cls, points: Iterable[ProjPoint], k: int = 1) -> Divisor:
        return cls((P, k) for P in points)

    def items(self):
        return self._m.items()

    def __getitem__(self, P: ProjPoint) -> int:
        return self._m.get(P, 0)

    def __iter__(self):
        return iter(self._m)

    def __len__(self) -> int:
        return len(self._m)

    @property
    def degree(self) -> int:
        return sum(self._m.values())

    @property
    def support(self) -> list[ProjPoint]:
        return list(self._m)

    def positive(self) -> Divisor:
        return Divisor({P: k for P, k in self._m.items() if k > 0})

    def negative(self) -> Divisor:
        return Divisor({P: -k for P, k in self._m.items() if k < 0})

    def is_effective(self) -> bool:
        return all(k > 0 for k in self._m.values())

    def image(self, sigma: Homography) -> Divisor:
        return Divisor((sigma(P), k) for P, k in self._m.items())

    def __add__(self, other: Divisor) -> Divisor:
        return Divisor(list(self._m.items()) + list(other._m.items()))

    def __neg__(self) -> Divisor:
        return Divisor({P: -k for P, k in self._m.items()})

    def __sub__(self, other: Divisor) -> Divisor:
        return self + (-other)

    def __mul__(self, t: int) -> Divisor:
        return Divisor({P: t * k for P, k in self._m.items()})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return isinstance(other, Divisor) and self._m == other._m

    def __hash__(self) -> int:
        return hash(tuple(self._m.items()))

    def __repr__(self) -> str:
        body = " + ".join(f"{k}*({P})" for P, k in self._m.items())
        return f"Divisor({body or '0'})"


def _linear_form(F: GF, P: ProjPoint) -> list[int]:
    """Coefficients of the form vanishing at P, indexed by the power of X."""
    if P.is_infinity:
        return [1, 0]
    return [F.neg(P.x), 1]


def _hmul(F: GF, a: list[int], b: list[int]) -> list[int]:
    out = _pmul(F, a, b)
    return out + [0] * (len(a) + len(b) - 1 - len(out))


@dataclass(frozen=True)
class RationalFunction:
    """N(X, Y) / D(X, Y) with N, D homogeneous of the same degree.

    Both are stored as coefficient lists indexed by the power of X, so entry i
    multiplies X^i Y^(deg - i).
    """

    numerator: tuple[int, ...]
    denominator: tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.numerator) - 1

    @staticmethod
    def _hom_eval(F: GF, c: Sequence[int], P: ProjPoint) -> int:
        if P.is_infinity:
            return c[-1]
        acc = 0
        for v in reversed(c):
            acc = F.add(F.mul(acc, P.x), v)
        return acc

    def __call__(self, F: GF, P: ProjPoint) -> int:
        return F.div(self._hom_eval(F, self.numerator, P), self._hom_eval(F, self.denominator, P))

    @staticmethod
    def _hom_valuation(F: GF, c: Sequence[int], P: ProjPoint) -> int:
        if P.is_infinity:
            top = max(i for i, v in enumerate(c) if v)
            return len(c) - 1 - top
        return dict(roots_with_multiplicity(Poly(F, c))).get(P.x, 0)

    def valuation(self, F: GF, P: ProjPoint) -> int:
        """Order of vanishing at P (negative for a pole)."""
        return self._hom_valuation(F, self.numerator, P) - self._hom_valuation(F, self.denominator, P)


def rr_basis(G: Divisor, F: GF) -> list[RationalFunction]:
    """Basis of L(G) over F, numerators in increasing X-degree."""
    d = G.degree
    if d < 0:
        return []
    for P in G:
        if P.x >= F.order:
            raise NonRationalSupport(f"point {P} of G is not rational over {F.name}")
    den = [1]
    for P, k in G.positive().items():
        for _ in range(k):
            den = _hmul(F, den, _linear_form(F, P))
    neg = [1]
    for P, k in G.negative().items():
        for _ in range(k):
            neg = _hmul(F, neg, _linear_form(F, P))
    basis = []
    for i in range(d + 1):
        mono = [0] * (d + 1)
        mono[i] = 1
        basis.append(RationalFunction(tuple(_hmul(F, neg, mono)), tuple(den)))
    return basis


@dataclass(frozen=True)
class AgSpec:
    """Support points, divisor and working level of a GRS or alternant code."""

    tower: FieldTower
    points: tuple[ProjPoint, ...]
    divisor: Divisor
    flavor: str = GRS
    level: str = "qm"

    def __post_init__(self) -> None:
        object.__setattr__(self, "points", tuple(self.points))
        F = self.field
        if len(set(self.points)) != len(self.points):
            raise DuplicateSupport("support points must be distinct")
        for P in self.points:
            if P.x >= F.order:
                raise NonRationalSupport(f"support point {P} is not rational over {F.name}")
        if any(P in self.divisor._m for P in self.points):
            raise SupportMeetsDivisor("the divisor meets the support")
        if self.divisor.degree < 0:
            raise NegativeDegree("deg G must be >= 0")
        if self.divisor.degree >= len(self.points):
            raise BadDimension("deg G must be smaller than the code length")

    @property
    def field(self) -> GF:
        return self.tower.level(self.level)

    @property
    def n(self) -> int:
        return len(self.points)

    def with_flavor(self, flavor: str) -> AgSpec:
        return AgSpec(self.tower, self.points, self.divisor, flavor, self.level)

    def image(self, sigma: Homography, level: str | None = None) -> AgSpec:
        return AgSpec(self.tower, [sigma(P) for P in self.points], self.divisor.image(sigma),
                      self.flavor, level or self.level)


def evaluation_matrix(F: GF, basis: Sequence[RationalFunction], points: Sequence[ProjPoint]) -> falg.Matrix:
    return [[f(F, P) for P in points] for f in basis]


def eval_code(spec: AgSpec) -> LinearCode:
    """C_L(P^1, points, G) over the field named by spec.level.

    When G has points only rational over the quadratic extension, evaluate
    there and descend; the descended dimension must not drop.
    """
    F = spec.field
    G = spec.divisor
    if all(P.x < F.order for P in G):
        basis = rr_basis(G, F)
        return LinearCode(F, spec.n, evaluation_matrix(F, basis, spec.points))
    if spec.level != "qm":
        raise NonRationalSupport(f"divisor not rational over {F.name}")
    E = spec.tower.ext
    basis = rr_basis(G, E)
    C_ext = LinearCode(E, spec.n, evaluation_matrix(E, basis, spec.points))
    C = falg.subfield_subcode(C_ext, F)
    if C.dim != C_ext.dim:
        raise BadDimension("divisor is not stable under Frobenius; code does not descend")
    return C


def alternant_code(spec: AgSpec) -> LinearCode:
    """Dual of the evaluation code intersected with F_q^n."""
    return falg.subfield_subcode(falg.dual(eval_code(spec)), spec.tower.base)


def grs_code(F: GF, x: Sequence[int], y: Sequence[int], k: int) -> LinearCode:
    """Classic GRS_k(x, y) = {(y_i f(x_i))_i : deg f < k}."""
    rows = [[F.mul(yi, F.pow(xi, j)) for xi, yi in zip(x, y)] for j in range(k)]
    return LinearCode(F, len(x), rows)


def _check_xy(x: Sequence[int], y: Sequence[int]) -> None:
    if len(set(x)) != len(x):
        raise DuplicateSupport("support x must have distinct entries")
    if len(x) != len(y):
        raise ValueError("x and y must have the same length")
    if any(v == 0 for v in y):
        raise ZeroMultiplier("multiplier entries must be nonzero")


def grs_from_xy(tower: FieldTower, x: Sequence[int], y: Sequence[int], k: int, level: str = "qm") -> AgSpec:
    """AG description of GRS_k(x, y): G = (k-1) P_inf - (f), f interpolating y.

    The interpolant must split over the working level.
    """
    _check_xy(x, y)
    n = len(x)
    if not 0 < k <= n:
        raise BadDimension(f"need 0 < k <= n, got k={k}, n={n}")
    F = tower.level(level)
    f = interpolate(F, list(x), list(y))
    roots = roots_with_multiplicity(f)
    if sum(m for _, m in roots) != f.degree:
        raise NonRationalSupport("interpolant of y does not split over the working level")
    G = Divisor.point(INF, k - 1 + int(f.degree)) - Divisor((affine(r), m) for r, m in roots)
    return AgSpec(tower, [affine(v) for v in x], G, GRS, level)


def dual_multiplier(F: GF, x: Sequence[int], y: Sequence[int]) -> list[int]:
    """y_perp with GRS_k(x, y)^perp = GRS_{n-k}(x, y_perp) for every k."""
    _check_xy(x, y)
    out = []
    for i, xi in enumerate(x):
        prod = y[i]
        for j, xj in enumerate(x):
            if j != i:
                prod = F.mul(prod, F.sub(xi, xj))
        out.append(F.inv(prod))
    return out


def induced_permutation(sigma: Homography, points: Sequence[ProjPoint]) -> list[int]:
    """pi with sigma(P_i) = P_{pi(i)}; permute_columns(C, pi) realizes f -> f o sigma."""
    index = {P: i for i, P in enumerate(points)}
    perm = []
    for P in points:
        j = index.get(sigma(P))
        if j is None:
            raise SupportNotStable(f"sigma maps {P} outside the support")
        perm.append(j)
    return perm


def splitting_multiplier_instance(F: GF, x: Sequence[int], roots: Sequence[int], scale: int = 1) -> list[int]:
    """Multiplier y_i = scale * prod(x_i - r) for planted roots r (so the interpolant splits)."""
    f = Poly.from_roots(F, roots) * scale
    return [f(v) for v in x]


__all__ = [
    "ALTERNANT", "GRS", "AgSpec", "Divisor", "RationalFunction", "alternant_code",
    "dual_multiplier", "eval_code", "grs_code", "grs_from_xy", "induced_permutation",
    "rr_basis", "splitting_multiplier_instance",
]
