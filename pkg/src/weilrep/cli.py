"""Command line front end: ``weilrep gauss|weil|verify|index``.

Every command prints one JSON report (or writes it to ``--out``) and exits
with status 1 when any verdict in it fails, 2 on a usage or config error.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
import time
from dataclasses import dataclass, field

import numpy as np

from . import suites
from .characters import NotFound, find_character
from .cyclotomic import prime_power
from .groups import index_certificate
from .hermitian import HermitianSpace
from .rings import FAMILIES, FiniteRing, RingConfig, is_prime
from .weil import WeilConfig, classical_gauss_suite, gauss_sum, weil_bruhat

SCHEMA = "weilrep.report/1"


class ConfigError(ValueError):
    pass


_SHORT = [
    (re.compile(r"^M2F(\d+)$"), "matrix2_adjugate"),
    (re.compile(r"^F(\d+)$"), "field"),
    (re.compile(r"^Z/?(\d+)$"), "integers_mod_pk"),
    (re.compile(r"^GR(\d+)$"), "galois_ring_frobenius"),
    (re.compile(r"^RAM(\d+)$"), "ramified_even"),
]


def parse_ring(name, p=None, k=None, s=None):
    """A family name with --p/--k/--s, or a shorthand such as F3, F9, Z9, GR81, RAM9, M2F3."""
    if name in FAMILIES:
        if p is None:
            raise ConfigError(f"family {name} needs --p")
        return RingConfig(name, p, k or 1, s)
    for pat, fam in _SHORT:
        hit = pat.match(name or "")
        if not hit:
            continue
        q = int(hit.group(1))
        try:
            base, e = prime_power(q)
        except ValueError as exc:
            raise ConfigError(f"{q} is not an odd prime power") from exc
        if fam == "field":
            if e == 1:
                return RingConfig("prime_field", base)
            if e == 2:
                return RingConfig("quadratic_frobenius", base)
            raise ConfigError("only F_p and F_{p^2} are shipped")
        if fam == "matrix2_adjugate":
            if e != 1:
                raise ConfigError("M2F needs a prime")
            return RingConfig(fam, base)
        if fam == "integers_mod_pk":
            return RingConfig(fam, base, e)
        if e % 2:
            raise ConfigError(f"{fam} has order p^(2k)")
        return RingConfig(fam, base, e // 2)
    raise ConfigError(f"unrecognised ring {name!r}")


@dataclass
class RunConfig:
    ring: RingConfig
    m: int = 1
    eps: int = -1
    suites: list = field(default_factory=list)
    seed: int = 0
    out: str | None = None
    timings: bool = False

    def space(self):
        try:
            B = FiniteRing(self.ring)
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
        return HermitianSpace(B, self.m, self.eps)

    def to_json(self):
        return {"ring": self.ring.to_json(), "m": self.m, "eps": self.eps, "seed": self.seed}


def _eps(text):
    v = int(text)
    if v not in (1, -1):
        raise argparse.ArgumentTypeError("eps must be +1 or -1")
    return v


def _ring_args(ap):
    ap.add_argument("--ring", help="family name or shorthand (F3, F9, Z9, GR81, RAM9, M2F3)")
    ap.add_argument("--config", help="JSON file {family, p, k?, s?, m?}")
    ap.add_argument("--p", type=int)
    ap.add_argument("--k", type=int)
    ap.add_argument("--s", type=int)
    ap.add_argument("--m", type=int)
    ap.add_argument("--eps", type=_eps, default=-1)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--out")
    ap.add_argument("--timings", action="store_true", help="include wall-clock timings (not reproducible)")


def run_config(args):
    if args.config:
        with open(args.config) as fh:
            obj = json.load(fh)
        ring_cfg = RingConfig.from_json(obj)
        m = args.m or obj.get("m") or 1
    elif args.ring:
        ring_cfg = parse_ring(args.ring, args.p, args.k, args.s)
        m = args.m or 1
    else:
        raise ConfigError("give --ring or --config")
    if m < 1:
        raise ConfigError("m must be positive")
    return RunConfig(ring_cfg, m, args.eps, getattr(args, "suite", None) or [], args.seed,
                     args.out, args.timings)


def build_parser():
    ap = argparse.ArgumentParser(prog="weilrep", description="Exact Weil representations over finite rings")
    sub = ap.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gauss", help="Gauss sums G_T and the classical suite")
    g.add_argument("--ring")
    g.add_argument("--config")
    g.add_argument("--p", type=int, action="append", help="odd prime(s) for the classical suite")
    g.add_argument("--k", type=int)
    g.add_argument("--s", type=int)
    g.add_argument("--m", type=int)
    g.add_argument("--eps", type=_eps, default=-1)
    g.add_argument("--T", action="append", help="1, Q or a JSON matrix of ring indices")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out")
    g.add_argument("--timings", action="store_true")

    w = sub.add_parser("weil", help="dump W on Bruhat generators as JSON")
    _ring_args(w)
    w.add_argument("--max-generators", type=int, default=50)

    v = sub.add_parser("verify", help="run verification suites")
    _ring_args(v)
    v.add_argument("--suite", action="append", choices=suites.SUITES)

    i = sub.add_parser("index", help="index of SSL in the isometry group")
    _ring_args(i)
    i.add_argument("--mode", choices=["auto", "enumeration", "reduction"], default="auto")
    return ap


# --- commands ---------------------------------------------------------------

def _named_T(space, text):
    A, B = space.A, space.ring
    if text == "1":
        return A.identity()
    if text == "Q":
        m = space.m
        if m % 2:
            raise ConfigError("Q needs even m")
        n = m // 2
        Q = A.zero()
        for i in range(n):
            Q[i, n + i] = B.neg(B.one)
            Q[n + i, i] = B.one
        return Q
    T = np.asarray(json.loads(text), dtype=np.int64)
    if T.shape != (space.m, space.m):
        raise ConfigError(f"T must be {space.m} x {space.m}")
    return T


def cmd_gauss(args):
    report = {"command": "gauss", "classical": []}
    ok = True
    ring_given = args.ring or args.config
    primes = [] if ring_given else (args.p or [3, 5, 7, 13, 17])
    for p in primes:
        if not is_prime(p) or p == 2:
            raise ConfigError(f"{p} is not an odd prime")
        rep = classical_gauss_suite(p)
        ok = ok and rep["pass"]
        report["classical"].append(rep)
    if ring_given:
        if args.p and len(args.p) > 1:
            raise ConfigError("give one --p with a ring family")
        args.p = args.p[0] if args.p else None
        cfg = run_config(args)
        space = cfg.space()
        report["config"] = cfg.to_json()
        try:
            beta = find_character(space.ring, space.eps)
        except NotFound as exc:
            report["error"] = f"no admissible character: {exc}"
            report["pass"] = False
            return report
        report["beta"] = beta.to_json()
        rows = []
        for text in args.T or ["1"]:
            G = gauss_sum(_named_T(space, text), beta)
            rows.append({"T": text, "G": G, "embedded": G.embed()})
        report["sums"] = rows
    report["pass"] = ok
    return report


def cmd_weil(args):
    cfg = run_config(args)
    space = cfg.space()
    wc = WeilConfig(space, find_character(space.ring, space.eps))
    params, mode = suites._generator_params(space, args.max_generators, cfg.seed)
    ops = []
    for kind, p in params:
        op = weil_bruhat(wc, (kind, p))
        ops.append({"kind": kind, "param": None if p is None else np.asarray(p).tolist(),
                    "operator": op.to_json()})
    return {"command": "weil", "config": cfg.to_json(), "beta": wc.beta.to_json(),
            "transversal": wc.rule, "f": wc.f, "generator_mode": mode, "generators": ops, "pass": True}


def cmd_verify(args):
    cfg = run_config(args)
    names = cfg.suites or ["relations"]
    space = None if names == ["notlocal"] else cfg.space()
    report = {"command": "verify", "config": cfg.to_json(), "suites": {}}
    for name in names:
        t0 = time.perf_counter()
        rep = suites.run_suite(name, space, seed=cfg.seed)
        if cfg.timings:
            rep["seconds"] = round(time.perf_counter() - t0, 3)
        report["suites"][name] = rep
    report["pass"] = all(r["pass"] for r in report["suites"].values())
    return report


def cmd_index(args):
    cfg = run_config(args)
    t0 = time.perf_counter()
    rep = index_certificate(cfg.space(), args.mode)
    if cfg.timings:
        rep["seconds"] = round(time.perf_counter() - t0, 3)
    ok = rep.get("lagrange", False) and rep["index"] is not None
    for key in ("ssl_closure_valid", "kernel_in_ssl", "reduction_surjective"):
        ok = ok and rep.get(key, True)
    if rep["index"] == 2:
        ok = ok and rep.get("T_normalises_ssl", False) and not rep.get("T_in_ssl")
    return {"command": "index", **rep, "pass": bool(ok)}


COMMANDS = {"gauss": cmd_gauss, "weil": cmd_weil, "verify": cmd_verify, "index": cmd_index}


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        report = COMMANDS[args.command](args)
    except (ConfigError, NotFound, ValueError) as exc:
        print(json.dumps({"command": args.command, "error": str(exc), "pass": False}))
        print(f"weilrep: {exc}", file=sys.stderr)
        return 2
    report = {"schema": SCHEMA, **suites.jsonable(report)}
    text = json.dumps(report, indent=1, sort_keys=True)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
        print(f"{args.command}: {'pass' if report['pass'] else 'FAIL'} -> {args.out}")
    else:
        print(text)
    return 0 if report["pass"] else 1


if __name__ == "__main__":
    sys.exit(main())
