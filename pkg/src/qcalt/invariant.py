"""Folded and invariant subcodes of a code stable under a coordinate permutation.

The prediction side conjugates sigma to its normal form and pushes support and
divisor through the quotient map of P^1 by <sigma>: z -> z^ell in the
diagonal case, z -> z^p - b^(p-1) z in the trigonal case. A point of G fixed by
the normal form is a ramification point, so its multiplicity T drops to
floor(T / e) with e = ell (diagonal) or p (trigonal).
"""

from __future__ import annotations

from dataclasses import dataclass

from . import falg
from .agcode import GRS, AgSpec, Divisor, eval_code, induced_permutation
from .errors import BadDimension, NotInvariant, NotInvariantInstance, NotOrbitConstant, WrongClass
from .falg import LinearCode
from .ff import GF
from .projline import DIAG, QUAD, Homography, HomographyClass, ProjPoint, classify, make_point


def _check_stable(C: LinearCode, perm: list[int]) -> None:
    if falg.permute_columns(C, perm) != C:
        raise NotInvariant("the code is not stable under the permutation")


def permutation_order(perm: list[int]) -> int:
    from math import lcm
    out = 1
    for cyc in falg.permutation_cycles(perm):
        out = lcm(out, len(cyc))
    return out


def fold(C: LinearCode, perm: list[int]) -> LinearCode:
    """Image of Id + pi + ... + pi^(ell-1) applied to a generator basis."""
    _check_stable(C, perm)
    F = C.field
    ell = permutation_order(perm)
    rows = []
    for g in C.gen:
        acc = list(g)
        cur = list(g)
        for _ in range(ell - 1):
            cur = falg.permute_vector(cur, perm)
            acc = [F.add(a, b) for a, b in zip(acc, cur)]
        rows.append(acc)
    return LinearCode(F, C.n, rows)


def invariant_subcode(C: LinearCode, perm: list[int]) -> LinearCode:
    """{c in C : pi(c) = c}: left kernel of Gen - pi(Gen), mapped back through Gen."""
    _check_stable(C, perm)
    F = C.field
    gen = C.generator()
    if not gen:
        return LinearCode(F, C.n)
    diff = [[F.sub(a, b) for a, b in zip(g, falg.permute_vector(g, perm))] for g in gen]
    coeffs = falg.left_kernel(F, diff, len(gen))
    return LinearCode(F, C.n, falg.matmul(F, coeffs, gen))


def orbit_representatives(perm: list[int]) -> list[int]:
    """Smallest index of each cycle, in increasing order."""
    return sorted(min(c) for c in falg.permutation_cycles(perm))


def restrict_to_reps(C_inv: LinearCode, perm: list[int]) -> LinearCode:
    for row in C_inv.gen:
        for cyc in falg.permutation_cycles(perm):
            if len({row[i] for i in cyc}) > 1:
                raise NotOrbitConstant("codeword is not constant on a permutation cycle")
    return falg.puncture(C_inv, orbit_representatives(perm))


@dataclass(frozen=True)
class InvariantPrediction:
    points: tuple[ProjPoint, ...]
    divisor: Divisor
    tag: str
    standard: Homography
    rho: Homography
    ratio: int | None = None
    b: int | None = None
    alpha: int | None = None

    @property
    def field(self) -> GF:
        return self.rho.field

    def spec(self, tower, flavor: str = GRS) -> AgSpec:
        level = tower.level_name(self.field)
        return AgSpec(tower, self.points, self.divisor, flavor, level)


def quotient_map(cls: HomographyClass, ell: int):
    """The quotient P^1 -> P^1 by the normal form, and its ramification index."""
    F = cls.rho.field
    if cls.tag in (DIAG, QUAD):
        def q(P: ProjPoint) -> ProjPoint:
            return make_point(F, F.pow(P.x, ell), F.pow(P.y, ell))
        return q, ell
    p = F.p
    bp = F.pow(cls.b, p - 1)

    def q(P: ProjPoint) -> ProjPoint:
        x, y = P.x, P.y
        num = F.sub(F.pow(x, p), F.mul(bp, F.mul(x, F.pow(y, p - 1))))
        return make_point(F, num, F.pow(y, p))
    return q, p


def _predict(spec: AgSpec, sigma: Homography, cls: HomographyClass) -> InvariantPrediction:
    F = cls.rho.field
    sig = sigma.on_field(F)
    perm = induced_permutation(sig, spec.points)
    if spec.divisor.image(sig) != spec.divisor:
        raise NotInvariantInstance("sigma does not fix the divisor")
    ell = permutation_order(perm)
    rinv = cls.rho.inverse()
    q, e = quotient_map(cls, ell)
    pts = tuple(q(rinv(spec.points[i])) for i in orbit_representatives(perm))
    std = cls.standard
    G = Divisor()
    seen: set[ProjPoint] = set()
    for P, t in spec.divisor.items():
        Ph = rinv(P)
        img = q(Ph)
        if std(Ph) == Ph:
            G = G + Divisor.point(img, t // e)
        elif img not in seen:
            seen.add(img)
            G = G + Divisor.point(img, t)
    return InvariantPrediction(pts, G, cls.tag, std, cls.rho, cls.ratio, cls.b, cls.alpha)


def predict_invariant(spec: AgSpec, sigma: Homography) -> InvariantPrediction:
    """Support and divisor of the invariant code for the diagonal and trigonal classes."""
    cls = classify(sigma, spec.tower.ext)
    if cls.tag == QUAD:
        raise WrongClass("quadratic homographies go through extend_scalars_invariant")
    return _predict(spec, sigma, cls)


def extend_scalars_invariant(spec: AgSpec, sigma: Homography) -> tuple[LinearCode, InvariantPrediction]:
    """Invariant code of a quadratic-class instance via F_{q^2m}.

    Lifts the evaluation code, takes the invariant subcode over the extension
    (where sigma is diagonal), descends it to F_{q^m}, and predicts its support
    and divisor over the extension.
    """
    tower = spec.tower
    cls = classify(sigma, tower.ext)
    if cls.tag != QUAD:
        raise WrongClass("extend_scalars_invariant needs a quadratic homography")
    E, F = tower.ext, spec.field
    perm = induced_permutation(sigma, spec.points)
    C_ext = eval_code(spec).on_field(E)
    inv_ext = invariant_subcode(C_ext, perm)
    inv = falg.subfield_subcode(inv_ext, F)
    if inv.dim != inv_ext.dim:
        raise BadDimension("invariant code over the extension has no basis over F_{q^m}")
    return inv, _predict(spec, sigma, cls)
