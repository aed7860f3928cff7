"""qcalt command line: keygen, invariant, attack, verify, bench.

Exit codes: 0 success, 2 input error, 3 structural mismatch between the
invariant code and its prediction, 4 attack failure or invalid certificate.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path
from statistics import mean
from typing import Callable, Sequence

from . import falg, io
from .agcode import GRS, AgSpec, alternant_code, eval_code, induced_permutation
from .attack import (
    AttackInput,
    AttackResult,
    attack,
    attack_brute_force,
    code_digest,
    verify_certificate,
)
from .errors import AttackFailure, QcaltError
from .ff import tower_for
from .invariant import (
    extend_scalars_invariant,
    invariant_subcode,
    predict_invariant,
    restrict_to_reps,
)
from .projline import QUAD, classify
from .qckeygen import keygen, random_conjugate, standard_homography

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_MISMATCH = 3
EXIT_ATTACK = 4

CLASS_NAMES = {"diag": "diag", "trig": "trig", "quad": QUAD}

# Reference rows of the published timing table (Magma, full size); never run here.
REFERENCE_ROWS = [
    "2 & 12 & 3600 & 2825 & 3 & 129 & 1659 s (≈ 27 min)",
    "2 & 12 & 3500 & 2665 & 5 & 130 & 2572 s (≈ 42 min)",
    "2 & 12 & 3510 & 2579 & 13 & 132 & 8848 s (≈ 2h27)",
]

# q, m, ell, class, orbits, divisor weight, divisor at a fixed point
DEFAULT_GRID = [
    (2, 4, 3, "diag", 5, 1, True),
    (2, 6, 3, "diag", 15, 1, False),
    (2, 4, 5, "diag", 3, 1, True),
    (2, 4, 2, "trig", 7, 1, False),
    (3, 3, 3, "trig", 8, 1, False),
    (3, 3, 4, "quad", 7, 1, True),
    (2, 6, 7, "diag", 7, 1, True),
]


class InputError(Exception):
    pass


@dataclass
class RunReport:
    command: str
    parameters: dict
    timings_ms: dict = field(default_factory=dict)
    outcome: str = ""
    certificate: str | None = None
    repeat: int = 1

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2, sort_keys=True) + "\n"


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc


def _write(path: str | Path, text: str) -> None:
    Path(path).write_text(text)


def _weights(text: str) -> list[int]:
    try:
        w = [int(v) for v in text.split(",") if v.strip()]
    except ValueError as exc:
        raise InputError(f"bad --divisor-weight {text!r}") from exc
    if not w or min(w) < 1:
        raise InputError("--divisor-weight needs positive integers")
    return w


def _timed(fn: Callable, repeat: int):
    times = []
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append((time.perf_counter() - t0) * 1000)
    return out, round(mean(times), 3)


# --- keygen -------------------------------------------------------------------------


def build_keypair(q: int, m: int, ell: int, kind: str, orbits: int, weights: Sequence[int],
                  seed: int, at_fixed: bool = False, standard: bool = False):
    tower = tower_for(q, m)
    rng = random.Random(seed)
    sigma = standard_homography(tower, CLASS_NAMES[kind], ell, rng)
    if not standard:
        sigma = random_conjugate(sigma, rng)
    return keygen(tower, sigma, orbits, weights, seed, at_fixed=at_fixed)


def cmd_keygen(args) -> int:
    pair = build_keypair(args.q, args.m, args.ell, args.cls, args.orbits, _weights(args.divisor_weight),
                         args.seed, args.at_fixed, args.standard)
    out = Path(args.out)
    _write(out.with_suffix(".pub"), io.dump_public(pair.tower, pair.code, pair.perm))
    _write(out.with_suffix(".sec"), io.dump_secret(pair.tower, pair.spec, pair.sigma, pair.seed))
    p = pair.params
    print(f"q={p['q']} m={p['m']} n={p['n']} k={p['k']} ell={p['ell']} class={p['class']} deg_G={p['deg_G']}")
    return EXIT_OK


# --- invariant ----------------------------------------------------------------------


def _grs_invariant_matches(spec: AgSpec, sigma, pred) -> bool:
    """Invariant subcode of the evaluation code against the predicted quotient code."""
    grs = spec.with_flavor(GRS)
    perm = induced_permutation(sigma, spec.points)
    if classify(sigma, spec.tower.ext).tag == QUAD:
        inv, _ = extend_scalars_invariant(grs, sigma)
        got = restrict_to_reps(inv, perm).on_field(pred.field)
    else:
        got = restrict_to_reps(invariant_subcode(eval_code(grs), perm), perm)
    want = eval_code(pred.spec(spec.tower))
    return falg.row_space_equal(got, want)


def cmd_invariant(args) -> int:
    pub = io.load_public(_read(args.public))
    C_inv = restrict_to_reps(invariant_subcode(pub.code, pub.perm), pub.perm)
    out = Path(args.out)
    _write(out.with_suffix(".inv"), io.dump_code(pub.tower, C_inv))
    print(f"invariant code: length {C_inv.n}, dimension {C_inv.dim}")
    if not args.secret:
        return EXIT_OK
    tower, spec, sigma, _ = io.load_secret(_read(args.secret))
    if tower.q != pub.tower.q or tower.m != pub.tower.m:
        raise InputError("secret and public keys live over different fields")
    cls = classify(sigma, tower.ext)
    if cls.tag == QUAD:
        _, pred = extend_scalars_invariant(spec, sigma)
    else:
        pred = predict_invariant(spec, sigma)
    level = tower.level_name(pred.field)
    _write(out.with_suffix(".secrets"),
           io.dump_invariant_secrets(tower, cls.tag, pub.ell, level, pred.points, pred.divisor))
    if not _grs_invariant_matches(spec, sigma, pred):
        print("structure check FAILED: invariant code differs from its prediction", file=sys.stderr)
        return EXIT_MISMATCH
    print(f"structure check ok: predicted support of {len(pred.points)} points, divisor degree {pred.divisor.degree}")
    return EXIT_OK


# --- attack -------------------------------------------------------------------------


def _params(pub, res: AttackResult | None = None, case: str | None = None) -> dict:
    return {"q": pub.tower.q, "m": pub.tower.m, "n": pub.code.n, "k": pub.code.dim,
            "ell": pub.ell, "class": case or (res.case if res else None)}


def run_attack(pub, secrets: io.InvariantSecrets | None, repeat: int):
    """Run the attack `repeat` times; returns (result, timings in ms)."""
    if secrets is None:
        def go():
            return attack_brute_force(pub.tower, pub.code, pub.perm, pub.ell)
    else:
        inp = AttackInput(pub.tower, pub.code, secrets.ell, secrets.case, tuple(secrets.points),
                          secrets.divisor, secrets.level)

        def go():
            return attack(inp)
    res, t_attack = _timed(go, repeat)
    ok, t_verify = _timed(lambda: verify_certificate(res, pub.tower, pub.code), repeat)
    return res, ok, {"attack": t_attack, "verify": t_verify}


def cmd_attack(args) -> int:
    pub = io.load_public(_read(args.public))
    secrets = None
    if not args.brute_force:
        if not args.secrets:
            raise InputError("give an invariant-secrets file or --brute-force")
        secrets = io.load_invariant_secrets(_read(args.secrets))
        if (secrets.tower.q, secrets.tower.m) != (pub.tower.q, pub.tower.m):
            raise InputError("invariant secrets and public key live over different fields")
    out = Path(args.out)
    case = secrets.case if secrets else "diag"
    report = RunReport("attack", _params(pub, case=case), repeat=args.repeat)
    try:
        res, ok, timings = run_attack(pub, secrets, args.repeat)
    except (AttackFailure, QcaltError, ValueError) as exc:
        report.outcome = f"failure: {exc}"
        _write(out.with_suffix(".report.json"), report.to_json())
        print(f"attack failed: {exc}", file=sys.stderr)
        return EXIT_ATTACK
    report.timings_ms = timings
    if not ok:
        report.outcome = "failure: certificate did not re-verify"
        _write(out.with_suffix(".report.json"), report.to_json())
        print(report.outcome, file=sys.stderr)
        return EXIT_ATTACK
    report.outcome = "success"
    report.certificate = res.certificate.digest
    _write(out.with_suffix(".result"), io.dump_result(pub.tower, res))
    _write(out.with_suffix(".report.json"), report.to_json())
    print(f"attack ok: scalar {res.scalar} after {res.tried} candidate(s), "
          f"mean attack {timings['attack']} ms over {args.repeat} run(s)")
    print(f"certificate {res.certificate.digest}")
    return EXIT_OK


# --- verify -------------------------------------------------------------------------


def cmd_verify(args) -> int:
    pub = io.load_public(_read(args.public))
    if falg.permute_columns(pub.code, pub.perm) != pub.code:
        print("public code is not stable under its permutation", file=sys.stderr)
        return EXIT_ATTACK
    status = EXIT_OK
    if args.secret:
        _, spec, _, _ = io.load_secret(_read(args.secret))
        if alternant_code(spec) != pub.code:
            print("secret key does not produce the public code", file=sys.stderr)
            status = EXIT_ATTACK
        else:
            print("secret key matches public key")
    if args.result:
        _, res, digest = io.load_result(_read(args.result))
        rec = alternant_code(res.spec(pub.tower))
        if rec != pub.code or code_digest(rec.gen) != digest:
            print("certificate INVALID", file=sys.stderr)
            status = EXIT_ATTACK
        else:
            print(f"certificate valid {digest}")
    return status


# --- bench --------------------------------------------------------------------------


def _parse_grid_row(text: str) -> tuple:
    parts = [v.strip() for v in text.split(",")]
    if len(parts) not in (6, 7):
        raise InputError(f"grid row {text!r} needs q,m,ell,class,orbits,weight[,fixed]")
    try:
        q, m, ell = int(parts[0]), int(parts[1]), int(parts[2])
        orbits, weight = int(parts[4]), int(parts[5])
    except ValueError as exc:
        raise InputError(f"grid row {text!r} has a non-integer field") from exc
    if parts[3] not in CLASS_NAMES:
        raise InputError(f"unknown class {parts[3]!r}")
    fixed = len(parts) == 7 and parts[6].lower() in ("1", "true", "fixed", "yes")
    return q, m, ell, parts[3], orbits, weight, fixed


def bench_rows(grid: Sequence[tuple], repeat: int, seed: int = 0) -> list[dict]:
    rows = []
    for q, m, ell, kind, orbits, weight, fixed in grid:
        pair = build_keypair(q, m, ell, kind, orbits, [weight], seed, fixed)
        cls = classify(pair.sigma, pair.tower.ext)
        pred = (extend_scalars_invariant(pair.spec, pair.sigma)[1] if cls.tag == QUAD
                else predict_invariant(pair.spec, pair.sigma))
        inp = AttackInput(pair.tower, pair.code, ell, cls.tag, pred.points, pred.divisor,
                          pair.tower.level_name(pred.field))
        try:
            res, ms = _timed(lambda: attack(inp), repeat)
            outcome = "ok" if verify_certificate(res, pair.tower, pair.code) else "bad certificate"
        except AttackFailure:
            ms, outcome = None, "failed"
        p = pair.params
        rows.append({"q": q, "m": m, "n": p["n"], "k": p["k"], "ell": ell, "class": cls.tag,
                     "ms": ms, "outcome": outcome})
    rows.sort(key=lambda r: (r["ell"], r["n"]))
    return rows


def format_bench(rows: Sequence[dict], repeat: int) -> str:
    head = f"| q | m | n | k | ℓ | class | w_ISD | attack time (mean of {repeat}) | note |"
    lines = [head, "|---|---|---|---|---|---|---|---|---|"]
    for r in rows:
        t = f"{r['ms'] / 1000:.3f} s" if r["ms"] is not None else "-"
        lines.append(f"| {r['q']} | {r['m']} | {r['n']} | {r['k']} | {r['ell']} | {r['class']} "
                     f"| not computed | {t} | {r['outcome']} |")
    for ref in REFERENCE_ROWS:
        q, m, n, k, ell, w_isd, t = (v.strip() for v in ref.split("&"))
        lines.append(f"| {q} | {m} | {n} | {k} | {ell} | - | {w_isd} (published) | {t} "
                     f"| reference value, not run at desk scale |")
    lines.append("")
    lines.append("Reference rows as published (Magma, Xeon E5520), not run at desk scale:")
    lines.extend(f"    {ref}" for ref in REFERENCE_ROWS)
    return "\n".join(lines) + "\n"


def cmd_bench(args) -> int:
    grid = [_parse_grid_row(g) for g in args.grid] if args.grid else DEFAULT_GRID
    text = format_bench(bench_rows(grid, args.repeat, args.seed), args.repeat)
    if args.out:
        _write(args.out, text)
    print(text, end="")
    return EXIT_OK


# --- entry point --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="qcalt", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    k = sub.add_parser("keygen", help="generate a QC alternant key pair")
    k.add_argument("--q", type=int, required=True)
    k.add_argument("--m", type=int, required=True)
    k.add_argument("--ell", type=int, required=True)
    k.add_argument("--class", dest="cls", choices=sorted(CLASS_NAMES), required=True)
    k.add_argument("--orbits", type=int, required=True)
    k.add_argument("--divisor-weight", default="1", help="comma-separated orbit weights")
    k.add_argument("--seed", type=int, default=0)
    k.add_argument("--at-fixed", action="store_true", help="put the divisor on a fixed point")
    k.add_argument("--standard", action="store_true", help="keep sigma in normal form")
    k.add_argument("--out", required=True, help="output prefix; writes PREFIX.pub and PREFIX.sec")
    k.set_defaults(func=cmd_keygen)

    i = sub.add_parser("invariant", help="extract the invariant code")
    i.add_argument("public")
    i.add_argument("--secret")
    i.add_argument("--out", required=True, help="writes PREFIX.inv and, with --secret, PREFIX.secrets")
    i.set_defaults(func=cmd_invariant)

    a = sub.add_parser("attack", help="recover a secret key")
    a.add_argument("public")
    a.add_argument("secrets", nargs="?")
    a.add_argument("--brute-force", action="store_true")
    a.add_argument("--repeat", type=int, default=10)
    a.add_argument("--out", required=True, help="writes PREFIX.result and PREFIX.report.json")
    a.set_defaults(func=cmd_attack)

    v = sub.add_parser("verify", help="check a public key against a secret key or attack result")
    v.add_argument("public")
    v.add_argument("--secret")
    v.add_argument("--result")
    v.set_defaults(func=cmd_verify)

    b = sub.add_parser("bench", help="timing table on desk-scale parameters")
    b.add_argument("--grid", action="append", help="q,m,ell,class,orbits,weight[,fixed]; repeatable")
    b.add_argument("--repeat", type=int, default=10)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--out")
    b.set_defaults(func=cmd_bench)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    if getattr(args, "repeat", 1) < 1:
        print("error: --repeat must be >= 1", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args)
    except (InputError, QcaltError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
