"""Line-oriented text formats for matrices, keys, invariant secrets and attack results.

Field elements are written as the decimal integer of their canonical
encoding. Points are "x:1" or "inf". Blank lines and lines starting with
'#' are ignored by every reader.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

from . import falg
from .agcode import ALTERNANT, AgSpec, Divisor
from .attack import AttackResult, Certificate
from .falg import LinearCode
from .ff import FieldTower, make_tower, tower_for
from .projline import INF, Homography, ProjPoint, affine


class FormatError(ValueError):
    """A key or result file could not be parsed."""


# --- primitives ---------------------------------------------------------------------


def format_point(P: ProjPoint) -> str:
    return "inf" if P.is_infinity else f"{P.x}:1"


def parse_point(tok: str) -> ProjPoint:
    if tok == "inf":
        return INF
    try:
        x, y = tok.split(":")
        x, y = int(x), int(y)
    except ValueError as exc:
        raise FormatError(f"bad point {tok!r}") from exc
    if y == 0:
        return INF
    if y != 1 or x < 0:
        raise FormatError(f"point {tok!r} is not in canonical form")
    return affine(x)


def format_matrix(rows: Sequence[Sequence[int]], ncols: int, level: str) -> list[str]:
    out = [f"{len(rows)} {ncols} {level}"]
    out += [" ".join(map(str, r)) for r in rows]
    return out


def format_cycles(perm: Sequence[int]) -> str:
    return " | ".join(" ".join(map(str, c)) for c in falg.permutation_cycles(perm))


def parse_cycles(n: int, text: str) -> list[int]:
    try:
        cycles = [[int(v) for v in part.split()] for part in text.split("|") if part.strip()]
        return falg.permutation_from_cycles(n, cycles)
    except (ValueError, IndexError) as exc:
        raise FormatError(f"bad cycle list: {exc}") from exc


class _Reader:
    def __init__(self, text: str) -> None:
        self.lines: Iterator[str] = iter(
            ln.strip() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#"))

    def next(self) -> str:
        try:
            return next(self.lines)
        except StopIteration:
            raise FormatError("unexpected end of file") from None

    def keyed(self, key: str) -> str:
        ln = self.next()
        head, _, rest = ln.partition(" ")
        if head != key:
            raise FormatError(f"expected {key!r}, found {ln!r}")
        return rest.strip()

    def keyed_int(self, key: str) -> int:
        try:
            return int(self.keyed(key))
        except ValueError as exc:
            raise FormatError(f"{key} must be an integer") from exc

    def matrix(self, tower: FieldTower) -> tuple[list[list[int]], int, str]:
        try:
            r, c, level = self.next().split()
            r, c = int(r), int(c)
            F = tower.level(level)
        except (ValueError, KeyError) as exc:
            raise FormatError("bad matrix header") from exc
        rows = []
        for _ in range(r):
            try:
                row = [int(v) for v in self.next().split()]
            except ValueError as exc:
                raise FormatError("non-integer matrix entry") from exc
            if len(row) != c or any(not 0 <= v < F.order for v in row):
                raise FormatError("matrix row has wrong length or out-of-field entries")
            rows.append(row)
        return rows, c, level

    def points(self, key: str = "points") -> list[ProjPoint]:
        count = self.keyed_int(key)
        return [parse_point(self.next()) for _ in range(count)]

    def divisor(self) -> Divisor:
        count = self.keyed_int("divisor")
        items = []
        for _ in range(count):
            try:
                tok, mult = self.next().split()
                items.append((parse_point(tok), int(mult)))
            except ValueError as exc:
                raise FormatError("bad divisor line") from exc
        return Divisor(items)


def _points_lines(points: Sequence[ProjPoint], key: str = "points") -> list[str]:
    return [f"{key} {len(points)}"] + [format_point(P) for P in points]


def _divisor_lines(G: Divisor) -> list[str]:
    return [f"divisor {len(G)}"] + [f"{format_point(P)} {t}" for P, t in G.items()]


def _tower_lines(tower: FieldTower) -> list[str]:
    return [f"p {tower.p}", f"s {tower.s}", f"m {tower.m}"]


def _read_tower(rd: _Reader) -> FieldTower:
    p, s, m = rd.keyed_int("p"), rd.keyed_int("s"), rd.keyed_int("m")
    return make_tower(p, s, m)


# --- public / secret keys -----------------------------------------------------------


@dataclass
class PublicKey:
    tower: FieldTower
    code: LinearCode
    perm: list[int]

    @property
    def ell(self) -> int:
        from .invariant import permutation_order
        return permutation_order(self.perm)


def dump_public(tower: FieldTower, code: LinearCode, perm: Sequence[int]) -> str:
    lines = ["qcalt-public 1", f"q {tower.q}", f"m {tower.m}", "generator"]
    lines += format_matrix(code.gen, code.n, "q")
    lines.append("cycles " + format_cycles(perm))
    return "\n".join(lines) + "\n"


def load_public(text: str) -> PublicKey:
    rd = _Reader(text)
    if rd.next() != "qcalt-public 1":
        raise FormatError("not a qcalt public key")
    try:
        tower = tower_for(rd.keyed_int("q"), rd.keyed_int("m"))
    except ValueError as exc:
        raise FormatError(str(exc)) from exc
    rd.keyed("generator")
    rows, n, level = rd.matrix(tower)
    if level != "q":
        raise FormatError("public generator must be over F_q")
    perm = parse_cycles(n, rd.keyed("cycles"))
    return PublicKey(tower, LinearCode(tower.base, n, rows), perm)


def dump_secret(tower: FieldTower, spec: AgSpec, sigma: Homography, seed) -> str:
    lines = ["qcalt-secret 1"] + _tower_lines(tower)
    lines.append(f"seed {seed}")
    lines.append("sigma " + " ".join(map(str, sigma.entries)))
    lines.append(f"level {spec.level}")
    lines.append(f"flavor {spec.flavor}")
    lines += _points_lines(spec.points)
    lines += _divisor_lines(spec.divisor)
    return "\n".join(lines) + "\n"


def load_secret(text: str) -> tuple[FieldTower, AgSpec, Homography, str]:
    rd = _Reader(text)
    if rd.next() != "qcalt-secret 1":
        raise FormatError("not a qcalt secret key")
    tower = _read_tower(rd)
    seed = rd.keyed("seed")
    try:
        sigma = Homography(tower.field, *map(int, rd.keyed("sigma").split()))
    except (TypeError, ValueError) as exc:
        raise FormatError("bad sigma line") from exc
    level = rd.keyed("level")
    flavor = rd.keyed("flavor")
    points = rd.points()
    G = rd.divisor()
    return tower, AgSpec(tower, points, G, flavor, level), sigma, seed


# --- invariant secrets --------------------------------------------------------------


@dataclass
class InvariantSecrets:
    tower: FieldTower
    case: str
    ell: int
    level: str
    points: list[ProjPoint]
    divisor: Divisor


def dump_invariant_secrets(tower: FieldTower, case: str, ell: int, level: str,
                           points: Sequence[ProjPoint], G: Divisor) -> str:
    lines = ["qcalt-invariant 1"] + _tower_lines(tower)
    lines += [f"case {case}", f"ell {ell}", f"level {level}"]
    lines += _points_lines(points)
    lines += _divisor_lines(G)
    return "\n".join(lines) + "\n"


def load_invariant_secrets(text: str) -> InvariantSecrets:
    rd = _Reader(text)
    if rd.next() != "qcalt-invariant 1":
        raise FormatError("not a qcalt invariant-secrets file")
    tower = _read_tower(rd)
    case = rd.keyed("case")
    ell = rd.keyed_int("ell")
    level = rd.keyed("level")
    return InvariantSecrets(tower, case, ell, level, rd.points(), rd.divisor())


# --- codes and attack results -------------------------------------------------------


def dump_code(tower: FieldTower, code: LinearCode) -> str:
    lines = ["qcalt-code 1"] + _tower_lines(tower)
    lines += format_matrix(code.gen, code.n, tower.level_name(code.field))
    return "\n".join(lines) + "\n"


def load_code(text: str) -> tuple[FieldTower, LinearCode]:
    rd = _Reader(text)
    if rd.next() != "qcalt-code 1":
        raise FormatError("not a qcalt code file")
    tower = _read_tower(rd)
    rows, n, level = rd.matrix(tower)
    return tower, LinearCode(tower.level(level), n, rows)


def dump_result(tower: FieldTower, res: AttackResult) -> str:
    lines = ["qcalt-result 1"] + _tower_lines(tower)
    lines += [f"case {res.case}", f"level {res.level}", f"scalar {res.scalar}", f"tried {res.tried}"]
    lines.append("sigma " + (" ".join(map(str, res.sigma.entries)) if res.sigma else "none"))
    lines += _points_lines(res.points)
    lines += _divisor_lines(res.divisor)
    lines.append("cycles " + format_cycles(res.perm))
    lines.append(f"certificate {res.certificate.digest}")
    return "\n".join(lines) + "\n"


def load_result(text: str) -> tuple[FieldTower, AttackResult, str]:
    """Returns the tower, the result (certificate left empty) and the stored digest."""
    rd = _Reader(text)
    if rd.next() != "qcalt-result 1":
        raise FormatError("not a qcalt result file")
    tower = _read_tower(rd)
    case = rd.keyed("case")
    level = rd.keyed("level")
    scalar = rd.keyed_int("scalar")
    tried = rd.keyed_int("tried")
    sig = rd.keyed("sigma")
    sigma = None if sig == "none" else Homography(tower.field, *map(int, sig.split()))
    points = rd.points()
    G = rd.divisor()
    perm = parse_cycles(len(points), rd.keyed("cycles"))
    digest = rd.keyed("certificate")
    res = AttackResult(points, G, scalar, perm, Certificate((), ()), case, level, tried, [], sigma)
    return tower, res, digest


__all__ = [
    "ALTERNANT", "FormatError", "InvariantSecrets", "PublicKey", "dump_code", "dump_invariant_secrets",
    "dump_public", "dump_result", "dump_secret", "format_point", "load_code", "load_invariant_secrets",
    "load_public", "load_result", "load_secret", "parse_point",
]
