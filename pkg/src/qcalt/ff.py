"""Finite field tower F_p < F_q < F_{q^m} < F_{q^2m} and univariate polynomials.

Every level of a tower stores its elements as plain ``int``s: the coordinate
vector over the prime field read as a little-endian number in radix ``p``.
Each level is built as a degree-``d`` extension of the level below it, so the
elements of a subfield are exactly the integers smaller than its order. That
makes embedding the identity on integers and descent a range check.

Multiplication goes through exp/log tables; addition is XOR in characteristic
2 and Zech logarithms otherwise.
"""

from __future__ import annotations

import itertools
import math
import operator
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import (
    BothZero,
    DegreeZero,
    DivisionByZero,
    DuplicateNodes,
    FieldTooLarge,
    InsufficientEvaluationPoints,
    NotInSubfield,
    NotPrime,
    NoSuchRoots,
    ZeroElement,
    ZeroPolynomial,
)

MAX_SCAN_ORDER = 1 << 16
MAX_FIELD_ORDER = 1 << 32
NEG_INF = float("-inf")

LEVELS = ("p", "q", "qm", "q2m")


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    r = math.isqrt(n)
    return all(n % d for d in range(3, r + 1, 2))


def prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def prime_power(q: int) -> tuple[int, int]:
    """Split ``q = p**s``; raises NotPrime if ``q`` is not a prime power."""
    if q < 2:
        raise NotPrime(f"{q} is not a prime power")
    p = prime_factors(q)[0]
    s = 0
    while q % p == 0:
        q //= p
        s += 1
    if q != 1:
        raise NotPrime(f"{q * p ** s} is not a prime power")
    return p, s


# --- raw polynomial helpers over a GF (lists of ints, low-to-high) ------------------


def _trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _padd(F: GF, a: Sequence[int], b: Sequence[int]) -> list[int]:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    add = F.add
    for i, v in enumerate(b):
        out[i] = add(out[i], v)
    return _trim(out)


def _pscale(F: GF, a: Sequence[int], c: int) -> list[int]:
    if c == 0:
        return []
    mul = F.mul
    return _trim([mul(c, v) for v in a])


def _pmul(F: GF, a: Sequence[int], b: Sequence[int]) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    add, mul = F.add, F.mul
    for i, u in enumerate(a):
        if u == 0:
            continue
        for j, v in enumerate(b):
            if v:
                out[i + j] = add(out[i + j], mul(u, v))
    return _trim(out)


def _pdivmod(F: GF, a: Sequence[int], b: Sequence[int]) -> tuple[list[int], list[int]]:
    if not b:
        raise DivisionByZero("polynomial division by zero")
    r = list(a)
    db = len(b) - 1
    if len(r) - 1 < db:
        return [], _trim(r)
    inv_lead = F.inv(b[-1])
    q = [0] * (len(r) - db)
    sub, mul = F.sub, F.mul
    for i in range(len(r) - 1 - db, -1, -1):
        c = r[i + db]
        if c == 0:
            continue
        c = mul(c, inv_lead)
        q[i] = c
        for j, v in enumerate(b):
            if v:
                r[i + j] = sub(r[i + j], mul(c, v))
    return _trim(q), _trim(r[:db])


def _pmod(F: GF, a: Sequence[int], b: Sequence[int]) -> list[int]:
    return _pdivmod(F, a, b)[1]


def _pmonic(F: GF, a: Sequence[int]) -> list[int]:
    if not a:
        return []
    return _pscale(F, a, F.inv(a[-1]))


def _pgcd(F: GF, a: Sequence[int], b: Sequence[int]) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _pmod(F, a, b)
    return _pmonic(F, a)


def _ppowmod(F: GF, a: Sequence[int], e: int, mod: Sequence[int]) -> list[int]:
    result = [1]
    base = _pmod(F, a, mod)
    while e:
        if e & 1:
            result = _pmod(F, _pmul(F, result, base), mod)
        e >>= 1
        if e:
            base = _pmod(F, _pmul(F, base, base), mod)
    return result


def _peval(F: GF, a: Sequence[int], x: int) -> int:
    acc = 0
    add, mul = F.add, F.mul
    for c in reversed(a):
        acc = add(mul(acc, x), c)
    return acc


def is_irreducible(F: GF, f: Sequence[int]) -> bool:
    """Rabin-style check: no factor of degree <= deg/2 divides ``f``."""
    d = len(f) - 1
    if d < 1:
        return False
    if d == 1:
        return True
    x = [0, 1]
    h = x
    for _ in range(d // 2):
        h = _ppowmod(F, h, F.order, f)
        if len(_pgcd(F, f, _padd(F, h, [F.neg(v) for v in x]))) > 1:
            return False
    return True


def smallest_irreducible(F: GF, degree: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of ``degree`` over ``F``.

    Candidates are ordered by the coefficient tuple (c_0, ..., c_{d-1}) compared
    as integers, low degree first.
    """
    for tail in itertools.product(range(F.order), repeat=degree):
        f = list(tail) + [1]
        if is_irreducible(F, f):
            return tuple(f)
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


# --- a single field level -----------------------------------------------------------


class GF:
    """One level of a field tower, elements encoded as ints ``0..order-1``."""

    def __init__(self, p: int, base: GF | None = None, modulus: Sequence[int] | None = None,
                 name: str = "") -> None:
        self.p = p
        self.base = base
        self.modulus = tuple(modulus) if modulus is not None else None
        if base is None:
            self.order = p
            self.degree = 1
        else:
            d = len(self.modulus) - 1
            self.order = base.order ** d
            self.degree = base.degree * d
        if self.order > MAX_FIELD_ORDER:
            raise FieldTooLarge(f"field of order {self.order} exceeds 2^32")
        self.name = name or f"F{self.order}"
        self._build_tables()

    # construction helpers operate on digit vectors over the base field
    def _raw_mul(self, a: int, b: int) -> int:
        if self.base is None:
            return a * b % self.p
        B = self.base
        Q = B.order
        d = len(self.modulus) - 1
        da = [(a // Q ** i) % Q for i in range(d)]
        db = [(b // Q ** i) % Q for i in range(d)]
        r = _pmod(B, _pmul(B, da, db), self.modulus)
        return sum(c * Q ** i for i, c in enumerate(r))

    def _raw_pow(self, a: int, e: int) -> int:
        r = 1
        while e:
            if e & 1:
                r = self._raw_mul(r, a)
            a = self._raw_mul(a, a)
            e >>= 1
        return r

    def _digit_add(self, a: int, b: int) -> int:
        p = self.p
        out, w = 0, 1
        while a or b:
            out += ((a % p + b % p) % p) * w
            a //= p
            b //= p
            w *= p
        return out

    def _digit_neg(self, a: int) -> int:
        p = self.p
        out, w = 0, 1
        while a:
            out += ((-(a % p)) % p) * w
            a //= p
            w *= p
        return out

    def _build_tables(self) -> None:
        N = self.order
        n1 = N - 1
        self.generator = self._find_generator()
        exp = [0] * (2 * n1 + 1)
        log = [0] * N
        x = 1
        for i in range(n1):
            exp[i] = x
            log[x] = i
            x = self._raw_mul(x, self.generator)
        for i in range(n1, 2 * n1 + 1):
            exp[i] = exp[i - n1]
        self.exp, self.log = exp, log
        if self.p == 2:
            self.add = operator.xor
            self.sub = operator.xor
            self.neg = lambda a: a
            self._neg = None
        else:
            neg = [self._digit_neg(a) for a in range(N)]
            self._neg = neg
            zech = [-1] * n1
            for k in range(n1):
                s = self._digit_add(1, exp[k])
                zech[k] = log[s] if s else -1
            self._zech = zech
            self.add = self._zech_add
            self.sub = lambda a, b: self._zech_add(a, neg[b])
            self.neg = neg.__getitem__

    def _find_generator(self) -> int:
        n1 = self.order - 1
        if n1 == 1:
            return 1
        factors = prime_factors(n1)
        for g in range(2, self.order):
            if all(self._raw_pow(g, n1 // r) != 1 for r in factors):
                return g
        raise AssertionError("multiplicative group not cyclic?")  # pragma: no cover

    def _zech_add(self, a: int, b: int) -> int:
        if a == 0:
            return b
        if b == 0:
            return a
        la = self.log[a]
        d = self.log[b] - la
        if d < 0:
            d += self.order - 1
        z = self._zech[d]
        if z < 0:
            return 0
        return self.exp[la + z]

    # public arithmetic ------------------------------------------------------------
    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self.exp[self.log[a] + self.log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("inverse of zero")
        return self.exp[(self.order - 1 - self.log[a]) % (self.order - 1)]

    def div(self, a: int, b: int) -> int:
        if b == 0:
            raise DivisionByZero("division by zero")
        if a == 0:
            return 0
        return self.exp[(self.log[a] - self.log[b]) % (self.order - 1)]

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise DivisionByZero("zero to a negative power")
            return 1 if e == 0 else 0
        return self.exp[(self.log[a] * e) % (self.order - 1)]

    def frobenius(self, a: int, k: int) -> int:
        """``a ** k`` where ``k`` is typically a power of the characteristic."""
        return self.pow(a, k)

    def sum(self, values: Iterable[int]) -> int:
        acc = 0
        add = self.add
        for v in values:
            acc = add(acc, v)
        return acc

    def dot(self, u: Sequence[int], v: Sequence[int]) -> int:
        acc = 0
        add, exp, log = self.add, self.exp, self.log
        for a, b in zip(u, v):
            if a and b:
                acc = add(acc, exp[log[a] + log[b]])
        return acc

    def elements(self) -> range:
        return range(self.order)

    def contains(self, a: int) -> bool:
        return 0 <= a < self.order

    def digits(self, a: int, sub_order: int, count: int) -> list[int]:
        """Coordinates of ``a`` over the subfield of order ``sub_order``."""
        return [(a // sub_order ** i) % sub_order for i in range(count)]

    def element_order(self, a: int) -> int:
        if a == 0:
            raise ZeroElement("zero has no multiplicative order")
        n1 = self.order - 1
        return n1 // math.gcd(self.log[a], n1)

    def __call__(self, value: int) -> FieldElement:
        if not 0 <= value < self.order:
            raise NotInSubfield(f"{value} is not an element of {self.name}")
        return FieldElement(self, value)

    def __repr__(self) -> str:
        return f"GF({self.order}, level={self.name})"


@dataclass(frozen=True, eq=False)
class FieldElement:
    """A value tagged with its field level; a convenience wrapper for callers."""

    field: GF
    value: int

    @property
    def level(self) -> str:
        return self.field.name

    def _coerce(self, other) -> tuple[GF, int, int]:
        if isinstance(other, FieldElement):
            F = self.field if self.field.order >= other.field.order else other.field
            return F, self.value, other.value
        if isinstance(other, int):
            return self.field, self.value, other
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other):
        F, a, b = self._coerce(other)
        return FieldElement(F, F.add(a, b))

    __radd__ = __add__

    def __sub__(self, other):
        F, a, b = self._coerce(other)
        return FieldElement(F, F.sub(a, b))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.value))

    def __mul__(self, other):
        F, a, b = self._coerce(other)
        return FieldElement(F, F.mul(a, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        F, a, b = self._coerce(other)
        return FieldElement(F, F.div(a, b))

    def __pow__(self, e: int):
        return FieldElement(self.field, self.field.pow(self.value, e))

    def inv(self) -> FieldElement:
        return FieldElement(self.field, self.field.inv(self.value))

    def embed(self, target: GF) -> FieldElement:
        if target.p != self.field.p or target.order < self.field.order:
            raise NotInSubfield(f"cannot embed {self.field.name} into {target.name}")
        return FieldElement(target, self.value)

    def try_descend(self, target: GF) -> FieldElement:
        if self.value >= target.order:
            raise NotInSubfield(f"{self.value} does not lie in {target.name}")
        return FieldElement(target, self.value)

    def __eq__(self, other) -> bool:
        if isinstance(other, FieldElement):
            return self.value == other.value and self.field.p == other.field.p
        if isinstance(other, int):
            return self.value == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.field.p, self.value))

    def __repr__(self) -> str:
        return f"{self.value}@{self.field.name}"


# --- towers -------------------------------------------------------------------------


class FieldTower:
    """The chain F_p < F_q < F_{q^m} < F_{q^{2m}} with lexicographic moduli.

    ``F_{q^{2m}}`` is only built when first requested.
    """

    def __init__(self, p: int, s: int, m: int) -> None:
        if not is_prime(p):
            raise NotPrime(f"{p} is not prime")
        if s < 1 or m < 1:
            raise DegreeZero("extension degrees must be >= 1")
        if p ** (2 * s * m) > MAX_FIELD_ORDER:
            raise FieldTooLarge("F_{q^2m} would exceed 2^32 elements")
        self.p, self.s, self.m = p, s, m
        self.q = p ** s
        self.qm = self.q ** m
        prime = GF(p, name="p")
        if s == 1:
            fq = prime
        else:
            fq = GF(p, prime, smallest_irreducible(prime, s), name="q")
        if m == 1:
            fqm = fq
        else:
            fqm = GF(p, fq, smallest_irreducible(fq, m), name="qm")
        self._levels: dict[str, GF] = {"p": prime, "q": fq, "qm": fqm}
        self._ext: GF | None = None

    @property
    def prime(self) -> GF:
        return self._levels["p"]

    @property
    def base(self) -> GF:
        return self._levels["q"]

    @property
    def field(self) -> GF:
        return self._levels["qm"]

    @property
    def ext(self) -> GF:
        if self._ext is None:
            fqm = self.field
            self._ext = GF(self.p, fqm, smallest_irreducible(fqm, 2), name="q2m")
        return self._ext

    def level(self, name: str) -> GF:
        if name == "q2m":
            return self.ext
        return self._levels[name]

    def level_name(self, F: GF) -> str:
        """Name of the level holding F; with coinciding levels the largest name wins."""
        if self._ext is not None and F is self._ext:
            return "q2m"
        for name in ("qm", "q", "p"):
            if self._levels[name] is F:
                return name
        raise KeyError(F)

    def frobenius_qm(self, a: int) -> int:
        """x -> x^{q^m}, the generator of Gal(F_{q^2m}/F_{q^m})."""
        return self.ext.pow(a, self.qm)

    def __repr__(self) -> str:
        return f"FieldTower(p={self.p}, s={self.s}, m={self.m})"


@lru_cache(maxsize=None)
def make_tower(p: int, s: int, m: int) -> FieldTower:
    """Deterministic tower for (p, s, m); cached so equal params share objects."""
    return FieldTower(p, s, m)


def tower_for(q: int, m: int) -> FieldTower:
    p, s = prime_power(q)
    return make_tower(p, s, m)


def field_arith(x: FieldElement, y: FieldElement | int | None, op: str) -> FieldElement:
    """Dispatch one of add/sub/mul/div/pow/inv/embed/try_descend.

    For ``embed`` and ``try_descend`` pass the target GF as ``y``.
    """
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        return x / y
    if op == "pow":
        return x ** int(y)
    if op == "inv":
        return x.inv()
    if op == "embed":
        return x.embed(y)
    if op == "try_descend":
        return x.try_descend(y)
    raise ValueError(f"unknown op {op!r}")


def element_order(x: FieldElement) -> int:
    return x.field.element_order(x.value)


def roots_of_unity(F: GF, ell: int) -> list[int]:
    """Elements of exact order ``ell`` (primitive ell-th roots), ascending."""
    n1 = F.order - 1
    if ell < 1 or n1 % ell:
        raise NoSuchRoots(f"{ell} does not divide |{F.name}^*| = {n1}")
    step = n1 // ell
    return sorted(F.exp[k * step] for k in range(ell) if math.gcd(k, ell) == 1)


# --- polynomials --------------------------------------------------------------------


class Poly:
    """Univariate polynomial over a GF, coefficients low-to-high."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: GF, coeffs: Iterable[int] = ()) -> None:
        self.field = field
        self.coeffs: tuple[int, ...] = tuple(_trim(list(coeffs)))

    @classmethod
    def x(cls, field: GF) -> Poly:
        return cls(field, [0, 1])

    @classmethod
    def const(cls, field: GF, c: int) -> Poly:
        return cls(field, [c])

    @classmethod
    def from_roots(cls, field: GF, roots: Iterable[int]) -> Poly:
        c = [1]
        for r in roots:
            c = _pmul(field, c, [field.neg(r), 1])
        return cls(field, c)

    @property
    def degree(self) -> int | float:
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    @property
    def lead(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def monic(self) -> Poly:
        return Poly(self.field, _pmonic(self.field, self.coeffs))

    def __call__(self, x: int) -> int:
        return _peval(self.field, self.coeffs, x)

    def __add__(self, other: Poly) -> Poly:
        return Poly(self.field, _padd(self.field, self.coeffs, other.coeffs))

    def __neg__(self) -> Poly:
        return Poly(self.field, [self.field.neg(c) for c in self.coeffs])

    def __sub__(self, other: Poly) -> Poly:
        return self + (-other)

    def __mul__(self, other: Poly | int) -> Poly:
        if isinstance(other, int):
            return Poly(self.field, _pscale(self.field, self.coeffs, other))
        return Poly(self.field, _pmul(self.field, self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def __divmod__(self, other: Poly) -> tuple[Poly, Poly]:
        q, r = _pdivmod(self.field, self.coeffs, other.coeffs)
        return Poly(self.field, q), Poly(self.field, r)

    def __floordiv__(self, other: Poly) -> Poly:
        return divmod(self, other)[0]

    def __mod__(self, other: Poly) -> Poly:
        return divmod(self, other)[1]

    def __pow__(self, e: int) -> Poly:
        out = Poly(self.field, [1])
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, Poly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"Poly({list(self.coeffs)}, {self.field.name})"


def _require_scannable(F: GF) -> None:
    if F.order > MAX_SCAN_ORDER:
        raise FieldTooLarge(f"root scan over {F.name} (order {F.order}) exceeds 2^16")


def poly_roots(f: Poly) -> list[int]:
    """All roots of ``f`` in its field, ascending, by exhaustive scan."""
    if f.is_zero():
        raise ZeroPolynomial("the zero polynomial has every element as a root")
    F = f.field
    _require_scannable(F)
    c = f.coeffs
    if len(c) == 1:
        return []
    if len(c) == 2:
        return [F.div(F.neg(c[0]), c[1])]
    return [x for x in range(F.order) if _peval(F, c, x) == 0]


def roots_with_multiplicity(f: Poly) -> list[tuple[int, int]]:
    out = []
    F = f.field
    for r in poly_roots(f):
        mult = 0
        g = list(f.coeffs)
        lin = [F.neg(r), 1]
        while g:
            q, rem = _pdivmod(F, g, lin)
            if rem:
                break
            mult += 1
            g = q
        out.append((r, mult))
    return out


def poly_gcd(f: Poly, g: Poly) -> Poly:
    if f.is_zero() and g.is_zero():
        raise BothZero("gcd(0, 0) is undefined")
    return Poly(f.field, _pgcd(f.field, f.coeffs, g.coeffs))


def interpolate(F: GF, xs: Sequence[int], ys: Sequence[int]) -> Poly:
    """Newton interpolation: the unique poly of degree < len(xs) through the nodes."""
    if len(xs) != len(ys) or not xs:
        raise ValueError("need matching, non-empty node and value lists")
    if len(set(xs)) != len(xs):
        raise DuplicateNodes("interpolation nodes must be distinct")
    n = len(xs)
    sub, div = F.sub, F.div
    coef = list(ys)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = div(sub(coef[i], coef[i - 1]), sub(xs[i], xs[i - j]))
    out = [coef[-1]]
    for i in range(n - 2, -1, -1):
        out = _padd(F, _pmul(F, out, [F.neg(xs[i]), 1]), [coef[i]])
    return Poly(F, out)


def determinant(F: GF, rows: Sequence[Sequence[int]]) -> int:
    """Determinant by Gaussian elimination (row swaps tracked)."""
    a = [list(r) for r in rows]
    n = len(a)
    det = 1
    mul, sub, inv = F.mul, F.sub, F.inv
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col]), None)
        if piv is None:
            return 0
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = F.neg(det)
        pr = a[col]
        det = mul(det, pr[col])
        ip = inv(pr[col])
        for r in range(col + 1, n):
            row = a[r]
            c = row[col]
            if c:
                c = mul(c, ip)
                for j in range(col, n):
                    if pr[j]:
                        row[j] = sub(row[j], mul(c, pr[j]))
    return det


def sylvester_matrix(F: GF, f: Sequence[int], g: Sequence[int]) -> list[list[int]]:
    """Sylvester matrix with f's rows first; coefficient lists low-to-high."""
    df, dg = len(f) - 1, len(g) - 1
    size = df + dg
    rows = []
    fh, gh = list(reversed(f)), list(reversed(g))
    for i in range(dg):
        rows.append([0] * i + fh + [0] * (size - df - 1 - i))
    for i in range(df):
        rows.append([0] * i + gh + [0] * (size - dg - 1 - i))
    return rows


def resultant(f: Poly, g: Poly) -> int:
    """Res(f, g) as det of the Sylvester matrix with f's rows first."""
    if f.is_zero() or g.is_zero():
        return 0
    return determinant(f.field, sylvester_matrix(f.field, f.coeffs, g.coeffs))


def resultant_in_x(f: Sequence[Poly], g: Poly, eval_field: GF | None = None) -> Poly:
    """Res_X(f, g) for ``f = sum_i f[i](Y) X^i`` and ``g`` in X only.

    Evaluation/interpolation: Y is specialised at deg+1 distinct points of
    ``eval_field`` (default: the coefficient field), each specialisation gives a
    scalar Sylvester determinant, and the values are interpolated back. The
    formal X-degree of ``f`` is kept even where its leading coefficient vanishes.
    """
    if not f or all(c.is_zero() for c in f) or g.is_zero():
        raise ZeroPolynomial("resultant needs nonzero inputs")
    if g.degree < 1:
        raise ValueError("g must have positive degree in X")
    F = f[0].field
    E = eval_field or F
    dy = max((c.degree for c in f if not c.is_zero()), default=0)
    bound = int(g.degree) * int(dy)
    if E.order < bound + 1:
        raise InsufficientEvaluationPoints(
            f"need {bound + 1} evaluation points but {E.name} has {E.order}")
    gc = list(g.coeffs)
    xs = list(range(bound + 1))
    ys = []
    for y0 in xs:
        fc = [_peval(E, c.coeffs, y0) for c in f]
        ys.append(determinant(E, sylvester_matrix(E, fc, gc)))
    res = interpolate(E, xs, ys)
    if any(c >= F.order for c in res.coeffs):
        raise NotInSubfield("interpolated resultant left the coefficient field")
    return Poly(F, res.coeffs)
