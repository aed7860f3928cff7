"""Key recovery for QC alternant codes from the secrets of their invariant code.

Given the support and divisor of the invariant code in the normal-form frame
of sigma, every candidate scalar (an ell-th root of unity ``a`` for diagonal
sigma, a translation ``b`` for trigonal sigma) yields a divisor G', an
orbit-major support P' and a linear system for the unknown per-orbit cyclic
shifts. A candidate is accepted only when that system has a unique solution
which is a block-cyclic permutation and the recomputed code equals the public
one.
"""

from __future__ import annotations

import hashlib
import itertools
import logging
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

from . import falg
from .agcode import ALTERNANT, AgSpec, Divisor, alternant_code, evaluation_matrix, rr_basis
from .errors import (
    AttackFailure,
    BadDimension,
    DescentFailed,
    EmptyCandidateSet,
    NoRoots,
    NotFound,
    QcaltError,
    SearchSpaceTooLarge,
    UnsolvableCoordinate,
)
from .falg import LinearCode
from .ff import GF, FieldTower, Poly, poly_gcd, poly_roots, resultant_in_x, roots_of_unity
from .invariant import invariant_subcode, restrict_to_reps
from .projline import DIAG, INF, QUAD, TRIG, Homography, ProjPoint, affine, all_points, classify

log = logging.getLogger(__name__)


@dataclass
class AttackInput:
    """Public code plus the invariant code's support and divisor in the normal-form frame."""

    tower: FieldTower
    code: LinearCode
    ell: int
    case: str
    points: tuple[ProjPoint, ...]
    divisor: Divisor
    level: str = "qm"
    provenance: str = "oracle"


@dataclass
class Certificate:
    public_rref: tuple
    recovered_rref: tuple

    @property
    def valid(self) -> bool:
        return self.public_rref == self.recovered_rref

    @property
    def digest(self) -> str:
        return code_digest(self.recovered_rref)


@dataclass
class AttackResult:
    points: list[ProjPoint]
    divisor: Divisor
    scalar: int
    perm: list[int]
    certificate: Certificate
    case: str
    level: str
    tried: int
    log: list[dict] = field(default_factory=list)
    sigma: Homography | None = None

    def spec(self, tower: FieldTower) -> AgSpec:
        return AgSpec(tower, self.points, self.divisor, ALTERNANT, self.level)


def code_digest(gen) -> str:
    h = hashlib.sha256()
    for row in gen:
        h.update(",".join(map(str, row)).encode())
        h.update(b";")
    return h.hexdigest()


def verify_certificate(result: AttackResult, tower: FieldTower, public: LinearCode) -> bool:
    """Recompute the recovered alternant code from scratch and compare."""
    code = alternant_code(result.spec(tower))
    return code.gen == public.gen == result.certificate.recovered_rref


# --- divisor recovery ---------------------------------------------------------------


def _diag_leading(K: GF, a: int, ell: int) -> int:
    c = K.pow(a, ell * (ell - 1) // 2)
    return K.neg(c) if ell % 2 == 0 else c


def recover_divisor_diag(G_inv: Divisor, ell: int, a: int, K: GF) -> Divisor:
    """Pull a divisor on the quotient back along z -> z^ell.

    Finite points come from the roots of (-1)^(ell-1) a^(ell(ell-1)/2) X^ell - g;
    the leading factor is 1 for every a of order ell. The fixed points 0 and
    inf carry ell times their multiplicity.
    """
    lead = _diag_leading(K, a, ell)
    out = Divisor()
    for P, t in G_inv.items():
        if P.is_infinity or P.x == 0:
            out = out + Divisor.point(P, ell * t)
            continue
        f = Poly(K, [K.neg(P.x)] + [0] * (ell - 1) + [lead])
        roots = poly_roots(f)
        if not roots:
            raise NoRoots(f"{P.x} has no {ell}-th root")
        out = out + Divisor.sum_of((affine(r) for r in roots), t)
    return out


def artin_schreier_poly(K: GF, b: int, c: int) -> Poly:
    """X^p - b^(p-1) X - c."""
    p = K.p
    coeffs = [K.neg(c), K.neg(K.pow(b, p - 1))] + [0] * (p - 2) + [1]
    return Poly(K, coeffs)


def recover_divisor_trig(G_inv: Divisor, b: int, p: int, K: GF) -> Divisor:
    out = Divisor()
    for P, t in G_inv.items():
        if P.is_infinity:
            out = out + Divisor.point(INF, p * t)
            continue
        roots = poly_roots(artin_schreier_poly(K, b, P.x))
        if not roots:
            raise NoRoots(f"X^p - b^(p-1) X - {P.x} has no root")
        out = out + Divisor.sum_of((affine(r) for r in roots), t)
    return out


def recover_b_candidates(points: Sequence[ProjPoint], tower: FieldTower, level: str = "qm") -> list[int]:
    """Nonzero roots of gcd_i Res_X(X^p - Y^(p-1) X - x_i, X^Q - X) and Y^Q - Y.

    Y = 0 is always a common root (p-th roots exist in characteristic p), and
    b is nonzero, so 0 is dropped.
    """
    K = tower.level(level)
    p, Q = K.p, K.order
    xQ = Poly(K, [0, K.neg(1)] + [0] * (Q - 2) + [1])
    need = Q * (p - 1) + 1
    E = K if K.order >= need else tower.ext
    g = xQ
    for P in points:
        if P.is_infinity:
            continue
        rows = [Poly(K, [K.neg(P.x)]), Poly(K, [0] * (p - 1) + [K.neg(1)])]
        rows += [Poly(K, [])] * (p - 2) + [Poly(K, [1])]
        g = poly_gcd(g, resultant_in_x(rows, xQ, E))
        if g.degree <= 1:
            break
    B = [r for r in poly_roots(g) if r]
    if not B:
        raise EmptyCandidateSet("no nonzero common root")
    log.info("b-candidate gcd degree %s, |B| = %d", g.degree, len(B))
    return B


# --- support ------------------------------------------------------------------------


def candidate_support(points: Sequence[ProjPoint], scalar: int, case: str, ell: int, K: GF) -> list[ProjPoint]:
    """Orbit-major support: one root per quotient point, expanded along the orbit."""
    out = []
    for P in points:
        if P.is_infinity or (case != TRIG and P.x == 0):
            raise UnsolvableCoordinate(f"{P} is a branch point and cannot lie under a free orbit")
        if case == TRIG:
            roots = poly_roots(artin_schreier_poly(K, scalar, P.x))
        else:
            roots = poly_roots(Poly(K, [K.neg(P.x)] + [0] * (ell - 1) + [1]))
        if not roots:
            raise UnsolvableCoordinate(f"no preimage for {P}")
        x = roots[0]
        for j in range(ell):
            if case == TRIG:
                out.append(affine(K.add(x, K.mul(j % K.p, scalar))))
            else:
                out.append(affine(K.mul(x, K.pow(scalar, j))))
    return out


# --- permutation solve --------------------------------------------------------------


@dataclass
class SolveOutcome:
    perm: list[int] | None
    status: str
    rank_deficit: int = 0


def block_shift_permutation(shifts: Sequence[int], ell: int) -> list[int]:
    """perm[(j, d)] = (j, d - s_j mod ell), orbit-major indices."""
    return [j * ell + (d - s) % ell for j, s in enumerate(shifts) for d in range(ell)]


def solve_permutation(public: LinearCode, support: Sequence[ProjPoint], G: Divisor, ell: int,
                      tower: FieldTower, level: str = "qm", early_exit: bool = True) -> SolveOutcome:
    """Find per-orbit cyclic shifts turning A(support, G) into the public code.

    Unknowns x_{j,s} (block j shifted by s) enter Gen_pub . Pi . H'^T = 0
    linearly, with sum_s x_{j,s} = 1 per block. Block 0 is pinned to shift 0:
    the simultaneous shift of all blocks is an automorphism of A(support, G),
    so without the pin the solution is never unique. ``early_exit`` skips the
    solve when the support already reproduces the public code.
    """
    C = alternant_code(AgSpec(tower, support, G, ALTERNANT, level))
    if early_exit and C == public:
        return SolveOutcome(list(range(len(support))), "early")
    if C.dim != public.dim:
        return SolveOutcome(None, "none")
    Fq = public.field
    n = public.n
    nb = n // ell
    gen = public.generator()
    H = C.parity_check()
    neq = len(gen) * len(H)
    cols = []
    for j in range(nb):
        base = j * ell
        for s in range(ell):
            col = []
            for g in gen:
                gb = g[base:base + ell]
                for h in H:
                    hb = h[base:base + ell]
                    col.append(Fq.sum(Fq.mul(gb[d], hb[(d - s) % ell]) for d in range(ell)))
            cols.append(col)
    A = [[cols[c][r] for c in range(n)] for r in range(neq)]
    rhs = [0] * neq
    for j in range(nb):
        A.append([1 if c // ell == j else 0 for c in range(n)])
        rhs.append(1)
    for s in range(1, ell):
        row = [0] * n
        row[s] = 1
        A.append(row)
        rhs.append(0)
    sol = falg.solve_affine(Fq, A, rhs, n)
    if sol.is_empty:
        return SolveOutcome(None, "none")
    if sol.cardinality != "1":
        return SolveOutcome(None, "multiple", len(sol.basis))
    x = sol.particular
    shifts = []
    for j in range(nb):
        blk = x[j * ell:(j + 1) * ell]
        if sorted(blk) != [0] * (ell - 1) + [1]:
            return SolveOutcome(None, "invalid")
        shifts.append(blk.index(1))
    return SolveOutcome(block_shift_permutation(shifts, ell), "unique")


# --- driver -------------------------------------------------------------------------


def _threads_from_env() -> int:
    try:
        return max(1, int(os.environ.get("QCALT_THREADS", "1")))
    except ValueError:
        return 1


def _try_scalar(inp: AttackInput, scalar: int) -> tuple[AttackResult | None, dict]:
    tower = inp.tower
    K = tower.level(inp.level)
    case = TRIG if inp.case == TRIG else DIAG
    entry: dict = {"scalar": scalar}
    try:
        if case == TRIG:
            G = recover_divisor_trig(inp.divisor, scalar, K.p, K)
        else:
            G = recover_divisor_diag(inp.divisor, inp.ell, scalar, K)
        support = candidate_support(inp.points, scalar, case, inp.ell, K)
        out = solve_permutation(inp.code, support, G, inp.ell, tower, inp.level)
    except (NoRoots, UnsolvableCoordinate, BadDimension) as exc:
        entry["outcome"] = type(exc).__name__
        return None, entry
    except QcaltError as exc:
        entry["outcome"] = type(exc).__name__
        return None, entry
    entry["outcome"] = out.status
    if out.perm is None:
        return None, entry
    permuted = falg.permute_vector(support, out.perm)
    spec = AgSpec(tower, permuted, G, ALTERNANT, inp.level)
    rec = alternant_code(spec)
    cert = Certificate(inp.code.gen, rec.gen)
    if not cert.valid:
        entry["outcome"] = "certificate_mismatch"
        return None, entry
    return AttackResult(permuted, G, scalar, out.perm, cert, inp.case, inp.level, 0), entry


def scalar_candidates(inp: AttackInput) -> list[int]:
    K = inp.tower.level(inp.level)
    if inp.case == TRIG:
        return recover_b_candidates(inp.points, inp.tower, inp.level)
    return roots_of_unity(K, inp.ell)


def attack(inp: AttackInput, threads: int | None = None) -> AttackResult:
    """Try every scalar candidate; return the smallest one that certifies.

    Quadratic instances run the diagonal attack over F_{q^2m} and are then
    pulled back to an F_{q^m}-rational support.
    """
    try:
        cands = scalar_candidates(inp)
    except EmptyCandidateSet as exc:
        raise AttackFailure(0, str(exc)) from exc
    threads = threads or _threads_from_env()
    logs: list[dict] = []
    found: AttackResult | None = None
    if threads > 1 and len(cands) > 1:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            results = list(ex.map(lambda s: _try_scalar(inp, s), cands))
        for res, entry in results:
            logs.append(entry)
            if res is not None and found is None:
                found = _finish(inp, res, entry)
    else:
        for s in cands:
            res, entry = _try_scalar(inp, s)
            logs.append(entry)
            if res is not None:
                found = _finish(inp, res, entry)
                if found is not None:
                    break
    if found is None:
        raise AttackFailure(len(cands), f"no candidate among {len(cands)} certified")
    found.tried = len(logs)
    found.log = logs
    return found


def _finish(inp: AttackInput, res: AttackResult, entry: dict) -> AttackResult | None:
    if inp.case != QUAD:
        return res
    try:
        return quadratic_pullback(res, inp.tower, inp.code)
    except DescentFailed as exc:
        entry["outcome"] = f"descent_failed: {exc}"
        return None


# --- quadratic pullback -------------------------------------------------------------


def _swap_columns(h: Homography) -> Homography:
    return Homography(h.field, h.b, h.a, h.d, h.c)


def quadratic_pullback(result: AttackResult, tower: FieldTower, public: LinearCode) -> AttackResult:
    """Map a support recovered over F_{q^2m} (diagonal frame) to an F_{q^m}-rational one.

    Uses alpha with alpha / alpha^(q^m) = a, the companion matrix of its
    minimal polynomial, and the eigenvector frame of that matrix (columns
    swapped if its ratio is a^-1). The recovered support is first rescaled so
    that its first point has norm 1.
    """
    F, E = tower.field, tower.ext
    Q = F.order
    a = result.scalar
    # alpha itself must lie outside F_{q^m}; a may not (a = -1 when ell = 2)
    alpha = next((x for x in range(Q, E.order) if E.div(x, E.pow(x, Q)) == a), None)
    if alpha is None:
        raise DescentFailed("no alpha outside F_{q^m} with alpha^(1-q^m) = a")
    conj = E.pow(alpha, Q)
    tr, nm = E.add(alpha, conj), E.mul(alpha, conj)
    if tr >= Q or nm >= Q:
        raise DescentFailed("minimal polynomial does not descend")
    sigma = Homography(F, 0, F.neg(nm), 1, tr)
    cls = classify(sigma, E)
    rho = cls.rho
    if cls.ratio != a:
        if cls.ratio != E.inv(a):
            raise DescentFailed("companion matrix has the wrong eigenvalue ratio")
        rho = _swap_columns(rho)
    x0 = result.points[0].x
    psi = rho @ Homography(E, E.inv(x0), 0, 0, 1)
    pts = [psi(P) for P in result.points]
    if any(P.x >= Q for P in pts):
        raise DescentFailed("pulled-back support is not F_{q^m}-rational")
    G = result.divisor.image(psi)
    for P, t in G.items():
        if G[ProjPoint(E.pow(P.x, Q), P.y)] != t:
            raise DescentFailed("pulled-back divisor is not Frobenius-stable")
    spec = AgSpec(tower, pts, G, ALTERNANT, "qm")
    rec = alternant_code(spec)
    cert = Certificate(public.gen, rec.gen)
    if not cert.valid:
        raise DescentFailed("pulled-back code differs from the public code")
    return AttackResult(pts, G, a, result.perm, cert, QUAD, "qm", result.tried, result.log, sigma)


# --- tiny brute force ---------------------------------------------------------------


def _brute_space(N: int, size: int) -> int:
    rest = 1
    for i in range(N - 3):
        rest *= size - 3 - i
    return rest * (size - N) * max(N - 1, 1)


def brute_force_invariant_secrets(C_inv: LinearCode, tower: FieldTower, max_space: int = 10 ** 6,
                                  level: str = "qm") -> tuple[tuple[ProjPoint, ...], Divisor]:
    """Exhaustive search for (P~, t Q~) with A(P~, t Q~) = C_inv.

    PGL_2 acts triply transitively, so the first three points are fixed to
    0, 1, inf; the answer is therefore only determined up to a homography.
    """
    N = C_inv.n
    if N > 10:
        raise SearchSpaceTooLarge(f"length {N} exceeds the brute-force limit of 10")
    if C_inv.dim == 0:
        raise NotFound("the invariant code is zero; nothing identifies the secrets")
    K = tower.level(level)
    pts = all_points(K)
    space = _brute_space(N, len(pts))
    if space > max_space:
        raise SearchSpaceTooLarge(f"search space {space} exceeds {max_space}")
    head = [affine(0), affine(1), INF][:N]
    rest_pool = [P for P in pts if P not in head]
    gen = C_inv.generator()
    base = tower.base
    for tail in itertools.permutations(rest_pool, max(N - 3, 0)):
        support = tuple(head) + tail
        for Qt in rest_pool:
            if Qt in tail:
                continue
            for t in range(1, N):
                G = Divisor.point(Qt, t)
                ev = evaluation_matrix(K, rr_basis(G, K), support)
                # C_inv must be orthogonal to the GRS code before the full check
                if any(K.dot(r, g) for r in ev for g in gen):
                    continue
                if falg.subfield_subcode(falg.dual(LinearCode(K, N, ev)), base) == C_inv:
                    return support, G
    raise NotFound("no (support, divisor) pair reproduces the invariant code")


def align_secrets(points: Sequence[ProjPoint], G: Divisor, ell: int, K: GF):
    """Homographies moving brute-forced secrets to a frame where every point has an ell-th root."""
    powers = {K.pow(x, ell) for x in range(1, K.order)}
    for a, b, c, d in itertools.product(range(K.order), repeat=4):
        if K.sub(K.mul(a, d), K.mul(b, c)) == 0:
            continue
        if next(v for v in (a, b, c, d) if v) != 1:
            continue
        h = Homography(K, a, b, c, d)
        img = [h(P) for P in points]
        if all(not P.is_infinity and P.x in powers for P in img):
            Gi = G.image(h)
            if all(P.is_infinity or P.x == 0 or P.x in powers for P in Gi):
                yield tuple(img), Gi


def attack_brute_force(tower: FieldTower, public: LinearCode, perm: Sequence[int], ell: int,
                       max_space: int = 10 ** 6) -> AttackResult:
    """Diagonal-case attack without oracle secrets (tiny instances only)."""
    C_inv = restrict_to_reps(invariant_subcode(public, list(perm)), list(perm))
    pts, G = brute_force_invariant_secrets(C_inv, tower, max_space)
    tried = 0
    for img, Gi in align_secrets(pts, G, ell, tower.field):
        inp = AttackInput(tower, public, ell, DIAG, img, Gi, provenance="brute_force")
        try:
            res = attack(inp, threads=1)
        except AttackFailure as exc:
            tried += exc.tried
            continue
        res.tried += tried
        return res
    raise AttackFailure(tried, "no aligned frame of the brute-forced secrets certified")
