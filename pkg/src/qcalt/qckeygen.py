"""Quasi-cyclic alternant key pairs built from a homography of finite order."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Sequence

from . import falg
from .agcode import ALTERNANT, AgSpec, Divisor, alternant_code, induced_permutation
from .errors import (
    DegenerateDimension,
    IdentityNotClassifiable,
    NoSuchRoots,
    NotEnoughFreePoints,
    OrbitCollision,
    StabilizedBasePoint,
)
from .falg import LinearCode
from .ff import FieldTower, prime_power, roots_of_unity
from .projline import (
    DIAG,
    INF,
    QUAD,
    TRIG,
    Homography,
    ProjPoint,
    all_points,
    classify,
    conjugate,
    fixed_points,
    free_orbits,
    orbit,
)


@dataclass
class QcKeyPair:
    tower: FieldTower
    spec: AgSpec
    sigma: Homography
    seed: int | None
    code: LinearCode
    perm: list[int]
    params: dict = field(default_factory=dict)

    @property
    def n(self) -> int:
        return self.spec.n

    @property
    def ell(self) -> int:
        return self.params["ell"]


def _random_invertible(F, rng: random.Random) -> Homography:
    while True:
        a, b, c, d = (rng.randrange(F.order) for _ in range(4))
        if F.sub(F.mul(a, d), F.mul(b, c)):
            return Homography(F, a, b, c, d)


def quadratic_generator(tower: FieldTower, ell: int, rng: random.Random | None = None) -> int:
    """An alpha in F_{q^2m} \\ F_{q^m} with alpha^(1 - q^m) of order ell."""
    F, E = tower.field, tower.ext
    Q = F.order
    if ell < 2 or (Q + 1) % ell:
        raise NoSuchRoots(f"ell={ell} must divide q^m + 1 = {Q + 1} and exceed 1")
    cands = [x for x in range(Q, E.order) if E.element_order(E.div(x, E.pow(x, Q))) == ell]
    return rng.choice(cands) if rng else cands[0]


def standard_homography(tower: FieldTower, kind: str, ell: int, rng: random.Random | None = None) -> Homography:
    """Normal form of the requested class and order over F_{q^m}.

    diag: (a 0; 0 1) with ord(a) = ell. trig: (1 b; 0 1), ell must be p.
    quadratic: companion matrix of the minimal polynomial of a suitable alpha.
    """
    F = tower.field
    if kind == DIAG:
        if ell < 2:
            raise IdentityNotClassifiable("ell = 1 gives the identity")
        roots = roots_of_unity(F, ell)
        return Homography.diagonal(F, rng.choice(roots) if rng else roots[0])
    if kind == TRIG:
        if ell != tower.p:
            raise NoSuchRoots(f"a translation has order p = {tower.p}, not {ell}")
        b = rng.randrange(1, F.order) if rng else 1
        return Homography.translation(F, b)
    if kind == QUAD:
        E = tower.ext
        alpha = quadratic_generator(tower, ell, rng)
        conj = E.pow(alpha, F.order)
        tr = E.add(alpha, conj)
        nm = E.mul(alpha, conj)
        # companion of X^2 - tr X + nm
        return Homography(F, 0, F.neg(nm), 1, tr)
    raise ValueError(f"unknown class {kind!r}")


def random_conjugate(sigma: Homography, rng: random.Random) -> Homography:
    return conjugate(sigma, _random_invertible(sigma.field, rng))


def invariant_support(sigma: Homography, n_orbits: int, rng_seed: int | random.Random | None = 0,
                      exclude: Sequence[ProjPoint] = ()) -> list[ProjPoint]:
    """n_orbits full sigma-orbits of rational points, orbit-major, seeded choice."""
    if sigma.is_identity():
        raise IdentityNotClassifiable("sigma = id has no orbits of length > 1")
    rng = rng_seed if isinstance(rng_seed, random.Random) else random.Random(rng_seed)
    banned = set(exclude)
    orbits = [o for o in free_orbits(sigma, all_points(sigma.field)) if not banned.intersection(o)]
    if n_orbits > len(orbits):
        raise NotEnoughFreePoints(f"asked for {n_orbits} orbits, only {len(orbits)} available")
    chosen = rng.sample(orbits, n_orbits)
    support = []
    for orb in chosen:
        start = orb[rng.randrange(len(orb))]
        support.extend(orbit(sigma, start))
    return support


def invariant_divisor(sigma: Homography, base_points: Sequence[ProjPoint], weights: Sequence[int]) -> Divisor:
    """sum_i t_i * (sum of the sigma-orbit of Q_i); every orbit must be free and distinct."""
    ell = sigma.order()
    if len(base_points) != len(weights):
        raise ValueError("one weight per base point")
    seen: set[ProjPoint] = set()
    G = Divisor()
    for Q, t in zip(base_points, weights):
        if t < 1:
            raise ValueError("orbit weights must be >= 1")
        orb = orbit(sigma, Q)
        if len(orb) != ell:
            raise StabilizedBasePoint(f"{Q} has a nontrivial stabilizer")
        if seen.intersection(orb):
            raise OrbitCollision(f"orbit of {Q} repeats an earlier orbit")
        seen.update(orb)
        G = G + Divisor.sum_of(orb, t)
    return G


def fixed_point_divisor(sigma: Homography, t: int, points: Sequence[ProjPoint] | None = None) -> Divisor:
    """ell*t at a sigma-fixed point, P_inf when it is fixed."""
    ell = sigma.order()
    if sigma(INF) == INF:
        return Divisor.point(INF, ell * t)
    fixed = fixed_points(sigma, points if points is not None else all_points(sigma.field))
    if not fixed:
        raise NotEnoughFreePoints("sigma has no rational fixed point")
    return Divisor.point(fixed[0], ell * t)


def quadratic_divisor(tower: FieldTower, sigma: Homography, weights: Sequence[int],
                      rng: random.Random, fixed: bool = False) -> Divisor:
    """Frobenius-stable sigma-invariant divisor from points of F_{q^2m}.

    fixed=True puts ell*t on each of the two conjugate fixed points; otherwise
    each weight covers O(R) + O(R^(q^m)) for a fresh point R.
    """
    F, E = tower.field, tower.ext
    sE = sigma.on_field(E)
    ell = sigma.order()
    if fixed:
        pts = [P for P in all_points(E) if P.x >= F.order and sE(P) == P]
        t = sum(weights)
        return Divisor((P, ell * t) for P in pts)
    used: set[ProjPoint] = set()
    G = Divisor()
    cands = [P for P in all_points(E) if P.x >= F.order]
    rng.shuffle(cands)
    it = iter(cands)
    for t in weights:
        for R in it:
            orb = orbit(sE, R)
            if len(orb) != ell or used.intersection(orb):
                continue
            conj = [ProjPoint(E.pow(P.x, F.order), P.y) for P in orb]
            pts = set(orb) | set(conj)
            used.update(pts)
            G = G + Divisor.sum_of(sorted(pts), t)
            break
        else:
            raise NotEnoughFreePoints("ran out of F_{q^2m} orbits for the divisor")
    return G


def keygen(tower: FieldTower, sigma: Homography, n_orbits: int, divisor_weights: Sequence[int],
           rng_seed: int | None = 0, at_fixed: bool = False) -> QcKeyPair:
    """Seeded QC alternant key pair.

    The support takes n_orbits free orbits. The divisor puts weight t_i on
    further free orbits; with ``at_fixed`` (or when no rational orbit is left)
    it puts ell * sum(t_i) on a fixed point instead. Quadratic homographies
    have no rational fixed points, so their divisors live over F_{q^2m}.
    """
    if sigma.is_identity():
        raise IdentityNotClassifiable("sigma must not be the identity")
    rng = random.Random(rng_seed)
    kind = classify(sigma, tower.ext).tag
    F = tower.field
    ell = sigma.order()
    support = invariant_support(sigma, n_orbits, rng)
    if kind == QUAD:
        G = quadratic_divisor(tower, sigma, divisor_weights, rng, fixed=at_fixed)
    else:
        rest = [o for o in free_orbits(sigma, all_points(F)) if not set(o) & set(support)]
        if at_fixed or len(rest) < len(divisor_weights):
            G = fixed_point_divisor(sigma, sum(divisor_weights))
        else:
            picks = rng.sample(rest, len(divisor_weights))
            G = invariant_divisor(sigma, [o[rng.randrange(ell)] for o in picks], divisor_weights)
    spec = AgSpec(tower, support, G, ALTERNANT)
    code = alternant_code(spec)
    if code.dim == 0 or code.dim == spec.n:
        raise DegenerateDimension(f"alternant code has dimension {code.dim} of {spec.n}")
    perm = induced_permutation(sigma, support)
    params = {"q": tower.q, "m": tower.m, "n": spec.n, "k": code.dim, "ell": ell,
              "class": kind, "deg_G": G.degree}
    return QcKeyPair(tower, spec, sigma, rng_seed, code, perm, params)


def verify_keypair(pair: QcKeyPair) -> bool:
    """The public code is stable under its published permutation."""
    return falg.permute_columns(pair.code, pair.perm) == pair.code


def validate_parameters(q: int, m: int, n: int, k: int, ell: int) -> dict:
    """Consistency of a (q, m, n, k, ell) row without building the code.

    Looks for an order r = deg G + 1 with ell | deg G, n - m r <= k <= n - r,
    and a homography class that has order ell with enough free points.
    """
    p, _ = prime_power(q)
    Q = q ** m
    if not 0 < k < n:
        raise ValueError("need 0 < k < n")
    if n % ell:
        raise ValueError(f"ell={ell} does not divide n={n}")
    classes = []
    if (Q - 1) % ell == 0 and n <= Q - 1:
        classes.append(DIAG)
    if ell == p and n <= Q:
        classes.append(TRIG)
    if (Q + 1) % ell == 0 and n <= Q + 1:
        classes.append(QUAD)
    if not classes:
        raise ValueError("no homography class of that order fits n points")
    orders = [r for r in range(1, n) if (r - 1) % ell == 0 and n - m * r <= k <= n - r]
    if not orders:
        raise ValueError("no divisor degree is compatible with k")
    return {"q": q, "m": m, "n": n, "k": k, "ell": ell, "classes": classes,
            "orders": orders[:3]}
