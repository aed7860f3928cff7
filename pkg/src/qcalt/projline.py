"""The projective line over a tower level and the action of PGL_2 on it.

Points are stored as canonical coordinate pairs (x, 1) or (1, 0). Because
every tower level shares the integer encoding, a point carries no field: the
same pair means the same point in every level containing its coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import DivisionByZero, IdentityNotClassifiable, ZeroElement
from .ff import GF, Poly, poly_roots, roots_with_multiplicity

DIAG = "diag"
TRIG = "trig"
QUAD = "quadratic"


@dataclass(frozen=True, order=True)
class ProjPoint:
    x: int
    y: int

    @property
    def is_infinity(self) -> bool:
        return self.y == 0

    def __str__(self) -> str:
        return "inf" if self.y == 0 else f"{self.x}:1"


INF = ProjPoint(1, 0)


def affine(x: int) -> ProjPoint:
    return ProjPoint(x, 1)


def make_point(F: GF, x: int, y: int) -> ProjPoint:
    """Canonical representative of (x : y)."""
    if y:
        return ProjPoint(F.div(x, y), 1)
    if x == 0:
        raise ZeroElement("(0 : 0) is not a point")
    return INF


def all_points(F: GF) -> list[ProjPoint]:
    return [affine(x) for x in range(F.order)] + [INF]


def is_rational(P: ProjPoint, F: GF) -> bool:
    return P.x < F.order


class Homography:
    """An element of PGL_2 over ``field``: the class of (a b; c d)."""

    __slots__ = ("a", "b", "c", "d", "field")

    def __init__(self, field: GF, a: int, b: int, c: int, d: int) -> None:
        det = field.sub(field.mul(a, d), field.mul(b, c))
        if det == 0:
            raise DivisionByZero("singular matrix does not define a homography")
        lead = next(v for v in (a, b, c, d) if v)
        if lead != 1:
            a, b, c, d = (field.div(v, lead) for v in (a, b, c, d))
        self.field = field
        self.a, self.b, self.c, self.d = a, b, c, d

    @classmethod
    def identity(cls, field: GF) -> Homography:
        return cls(field, 1, 0, 0, 1)

    @classmethod
    def diagonal(cls, field: GF, a: int) -> Homography:
        return cls(field, a, 0, 0, 1)

    @classmethod
    def translation(cls, field: GF, b: int) -> Homography:
        return cls(field, 1, b, 0, 1)

    @classmethod
    def from_columns(cls, field: GF, u: Sequence[int], v: Sequence[int]) -> Homography:
        return cls(field, u[0], v[0], u[1], v[1])

    @property
    def entries(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)

    def on_field(self, F: GF) -> Homography:
        return Homography(F, *self.entries)

    def is_identity(self) -> bool:
        return self.entries == (1, 0, 0, 1)

    def det(self) -> int:
        F = self.field
        return F.sub(F.mul(self.a, self.d), F.mul(self.b, self.c))

    def __call__(self, P: ProjPoint) -> ProjPoint:
        F = self.field
        x = F.add(F.mul(self.a, P.x), F.mul(self.b, P.y))
        y = F.add(F.mul(self.c, P.x), F.mul(self.d, P.y))
        return make_point(F, x, y)

    def __matmul__(self, other: Homography) -> Homography:
        F = self.field
        a1, b1, c1, d1 = self.entries
        a2, b2, c2, d2 = other.entries
        return Homography(
            F,
            F.add(F.mul(a1, a2), F.mul(b1, c2)),
            F.add(F.mul(a1, b2), F.mul(b1, d2)),
            F.add(F.mul(c1, a2), F.mul(d1, c2)),
            F.add(F.mul(c1, b2), F.mul(d1, d2)),
        )

    def inverse(self) -> Homography:
        F = self.field
        return Homography(F, self.d, F.neg(self.b), F.neg(self.c), self.a)

    def __pow__(self, k: int) -> Homography:
        if k < 0:
            return self.inverse() ** (-k)
        out = Homography.identity(self.field)
        base = self
        while k:
            if k & 1:
                out = out @ base
            base = base @ base
            k >>= 1
        return out

    def order(self) -> int:
        h = self
        k = 1
        while not h.is_identity():
            h = h @ self
            k += 1
        return k

    def __eq__(self, other) -> bool:
        return isinstance(other, Homography) and self.entries == other.entries

    def __hash__(self) -> int:
        return hash(self.entries)

    def __repr__(self) -> str:
        return f"Homography({self.a} {self.b}; {self.c} {self.d} over {self.field.name})"


def apply(sigma: Homography, P: ProjPoint) -> ProjPoint:
    return sigma(P)


def compose(sigma: Homography, tau: Homography) -> Homography:
    return sigma @ tau


def inverse(sigma: Homography) -> Homography:
    return sigma.inverse()


def conjugate(sigma: Homography, rho: Homography) -> Homography:
    """rho o sigma o rho^-1."""
    return rho @ sigma @ rho.inverse()


def order(sigma: Homography) -> int:
    return sigma.order()


def orbit(sigma: Homography, P: ProjPoint) -> list[ProjPoint]:
    """[P, sigma P, sigma^2 P, ...] up to the first return to P."""
    out = [P]
    Q = sigma(P)
    while Q != P:
        out.append(Q)
        Q = sigma(Q)
    return out


def has_trivial_stabilizer(sigma: Homography, P: ProjPoint, ell: int | None = None) -> bool:
    if ell is None:
        ell = sigma.order()
    return len(orbit(sigma, P)) == ell


def fixed_points(sigma: Homography, points: Iterable[ProjPoint]) -> list[ProjPoint]:
    return [P for P in points if sigma(P) == P]


def free_orbits(sigma: Homography, points: Iterable[ProjPoint]) -> list[list[ProjPoint]]:
    """Orbits of full length ord(sigma) among ``points``, each starting at its smallest point."""
    ell = sigma.order()
    seen: set[ProjPoint] = set()
    out = []
    for P in sorted(points):
        if P in seen:
            continue
        orb = orbit(sigma, P)
        seen.update(orb)
        if len(orb) == ell:
            out.append(orb)
    return out


@dataclass(frozen=True)
class HomographyClass:
    """Conjugacy data: ``sigma = rho . standard . rho^-1`` (in PGL_2 over rho.field).

    ``ratio`` is the eigenvalue ratio for the diagonal and quadratic cases,
    ``b`` the translation of the trigonal normal form (1 b; 0 1), and
    ``alpha`` the eigenvalue in F_{q^2m} for the quadratic case.
    """

    tag: str
    rho: Homography
    standard: Homography
    eigenvalues: tuple[int, ...]
    ratio: int | None = None
    b: int | None = None
    alpha: int | None = None


def _char_poly(F: GF, s: Homography) -> Poly:
    tr = F.add(s.a, s.d)
    return Poly(F, [s.det(), F.neg(tr), 1])


def _eigenvector(F: GF, s: Homography, lam: int) -> tuple[int, int]:
    v = (s.b, F.sub(lam, s.a))
    if v == (0, 0):
        v = (F.sub(lam, s.d), s.c)
    return _normalize(F, v)


def _normalize(F: GF, v: tuple[int, int]) -> tuple[int, int]:
    lead = v[0] if v[0] else v[1]
    return (F.div(v[0], lead), F.div(v[1], lead))


def classify(sigma: Homography, ext: GF | None = None) -> HomographyClass:
    """Sort sigma into the diagonal, trigonal or quadratic conjugacy case.

    ``ext`` is the quadratic extension of sigma's field, required only when the
    characteristic polynomial is irreducible.
    """
    if sigma.is_identity():
        raise IdentityNotClassifiable("the identity has no normal form")
    F = sigma.field
    chi = _char_poly(F, sigma)
    roots = roots_with_multiplicity(chi)
    if len(roots) == 2:
        # eigenvalues only matter up to a common scalar, so order the pairs by
        # their fixed point, larger first: (a 0; 0 1) gives ratio a and rho = id
        pairs = [(r, _eigenvector(F, sigma, r)) for r, _ in roots]
        pairs.sort(key=lambda e: make_point(F, *e[1]), reverse=True)
        (l1, v1), (l2, v2) = pairs
        ratio = F.div(l1, l2)
        return HomographyClass(DIAG, Homography.from_columns(F, v1, v2),
                               Homography.diagonal(F, ratio), (l1, l2), ratio=ratio)
    if len(roots) == 1:
        lam = roots[0][0]
        # w outside the eigenline; (sigma - lam) w is then an eigenvector
        w = (0, 1)
        Mw = (sigma.b, F.sub(sigma.d, lam))
        if Mw == (0, 0):
            w = (1, 0)
            Mw = (F.sub(sigma.a, lam), sigma.c)
        v = _normalize(F, Mw)
        i = 0 if v[0] else 1
        mu = F.div(Mw[i], v[i])
        b = F.div(mu, lam)
        return HomographyClass(TRIG, Homography.from_columns(F, v, w),
                               Homography.translation(F, b), (lam, lam), b=b)
    if ext is None:
        raise ValueError("irreducible characteristic polynomial needs the quadratic extension")
    chiE = Poly(ext, chi.coeffs)
    l1, l2 = poly_roots(chiE)
    alpha = l1
    conj = ext.pow(alpha, F.order)
    sE = sigma.on_field(ext)
    v = _eigenvector(ext, sE, alpha)
    vbar = (ext.pow(v[0], F.order), ext.pow(v[1], F.order))
    ratio = ext.div(alpha, conj)
    return HomographyClass(QUAD, Homography.from_columns(ext, v, vbar),
                           Homography.diagonal(ext, ratio), (alpha, conj),
                           ratio=ratio, alpha=alpha)
