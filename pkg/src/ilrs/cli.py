"""Command line: ``ilrs bounds``, ``ilrs simulate``, ``ilrs selftest``.

Exit codes: 0 success, 1 configuration error, 2 self-test mismatch.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict

from pydantic import ValidationError

from . import selftest
from .schemas import BoundsRequest, ExperimentRequest
from .sim import PRESETS, ConfigError, RadiusExceeded, bound_table, parse_kv, run_experiment, write_report

EXIT_OK, EXIT_CONFIG, EXIT_SELFTEST = 0, 1, 2

_INT_KEYS = {"q", "m", "u", "k", "s", "tau", "tf", "tr", "tc", "trials", "failures",
             "max_trials", "seed", "workers"}
_BOOL_KEYS = {"resample_code", "allow_beyond_radius"}


def _partition(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(" ", "").strip("()[]").split(",") if x]
    except ValueError:
        raise ConfigError(f"bad partition {text!r}; expected e.g. 4,4")


def _coerce(d: dict) -> dict:
    out = {}
    for k, v in d.items():
        if not isinstance(v, str):
            out[k] = v
        elif k == "partition":
            out[k] = _partition(v)
        elif k in _INT_KEYS:
            try:
                out[k] = None if v.lower() in ("", "none") else int(v)
            except ValueError:
                raise ConfigError(f"{k} must be an integer, got {v!r}")
        elif k in _BOOL_KEYS:
            out[k] = v.lower() in ("1", "true", "yes", "on")
        elif k == "max_seconds":
            out[k] = float(v)
        else:
            out[k] = v
    return out


def _add_code_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--preset", choices=sorted(PRESETS))
    p.add_argument("--config", metavar="FILE", help="key = value file with the same keys")
    p.add_argument("--q", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--u", type=int)
    p.add_argument("--partition", help="block lengths, e.g. 4,4")
    p.add_argument("--k", type=int)
    p.add_argument("--s", type=int)


def _base(args) -> dict:
    d: dict = {}
    if args.preset:
        d.update(PRESETS[args.preset])
    if args.config:
        try:
            with open(args.config) as fh:
                d.update(_coerce(parse_kv(fh.read())))
        except OSError as exc:
            raise ConfigError(f"cannot read config: {exc}")
    for key in ("q", "m", "u", "k", "s"):
        v = getattr(args, key)
        if v is not None:
            d[key] = v
    if args.partition:
        d["partition"] = _partition(args.partition)
    d["partition"] = list(d.get("partition", (4, 4)))
    return d


def cmd_bounds(args) -> int:
    d = _base(args)
    d.pop("tau", None)
    if args.taus:
        d["taus"] = [int(x) for x in args.taus.split(",")]
    req = BoundsRequest(**{k: v for k, v in d.items() if k in BoundsRequest.model_fields})
    rows = bound_table(req.q, req.m, req.partition, req.k, req.s, req.taus)
    if args.json:
        print(json.dumps(rows, indent=2))
        return EXIT_OK
    print(f"q={req.q} m={req.m} n={list(req.partition)} k={req.k} s={req.s} "
          f"tau_max={rows[0]['tau_max'] if rows else 0:.4g}")
    print(f"{'tau':>4}  {'standard':>10}  {'improved':>10}")
    for r in rows:
        print(f"{r['tau']:>4}  {r['bound_std']:>10.3e}  {r['bound_impr']:>10.3e}")
    return EXIT_OK


def cmd_simulate(args) -> int:
    d = _base(args)
    for key in ("mode", "tau", "tf", "tr", "tc", "trials", "failures", "max_trials",
                "max_seconds", "seed", "workers"):
        v = getattr(args, key)
        if v is not None:
            d[key] = v
    if any(getattr(args, k) is not None for k in ("tf", "tr", "tc")) and args.tau is None:
        d["tau"] = None
    if args.pin_code:
        d["resample_code"] = False
    if args.allow_beyond_radius:
        d["allow_beyond_radius"] = True
    if d.get("trials") is None and d.get("failures") is None:
        d["failures"] = 100
    if d.get("tau") is None and not any(d.get(k) for k in ("tf", "tr", "tc")):
        d.setdefault("tau", 0)
    cfg = ExperimentRequest(**d).to_config()

    def progress(n, f):
        if args.verbose:
            print(f"  {n} trials, {f} failures", file=sys.stderr)

    rep = run_experiment(cfg, progress=progress)
    if args.out:
        csv_path, side = write_report(rep, args.out)
        print(f"wrote {csv_path} and {side}", file=sys.stderr)
    if args.json:
        print(json.dumps(rep.to_dict(), indent=2, sort_keys=True))
    else:
        row = rep.csv_row()
        print(" ".join(f"{k}={v}" for k, v in row.items()))
    return EXIT_OK


def cmd_selftest(args) -> int:
    checks = selftest.run_all(args.trials)
    for c in checks:
        status = "PASS" if c.ok else "FAIL"
        print(f"{status}  {c.name}" + (f"  [{c.detail}]" if c.detail else ""))
    if args.json:
        print(json.dumps([asdict(c) for c in checks], indent=2))
    return EXIT_OK if all(c.ok for c in checks) else EXIT_SELFTEST


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ilrs", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="cmd", required=True)

    b = sub.add_parser("bounds", help="print failure-probability bounds")
    _add_code_args(b)
    b.add_argument("--taus", help="comma-separated error weights (default 1..tau_max)")
    b.add_argument("--json", action="store_true")
    b.set_defaults(func=cmd_bounds)

    s = sub.add_parser("simulate", help="run a Monte-Carlo experiment")
    _add_code_args(s)
    s.add_argument("--mode", choices=("vilrs", "hilrs"))
    s.add_argument("--tau", type=int)
    s.add_argument("--tf", type=int)
    s.add_argument("--tr", type=int)
    s.add_argument("--tc", type=int)
    stop = s.add_mutually_exclusive_group()
    stop.add_argument("--trials", type=int)
    stop.add_argument("--failures", type=int)
    s.add_argument("--max-trials", dest="max_trials", type=int)
    s.add_argument("--max-seconds", dest="max_seconds", type=float)
    s.add_argument("--seed", type=int)
    s.add_argument("--workers", type=int)
    s.add_argument("--pin-code", action="store_true", help="reuse one code for all trials")
    s.add_argument("--allow-beyond-radius", action="store_true")
    s.add_argument("--out", metavar="PATH", help="CSV to append to; JSON sidecar next to it")
    s.add_argument("--json", action="store_true")
    s.add_argument("-v", "--verbose", action="store_true")
    s.set_defaults(func=cmd_simulate)

    t = sub.add_parser("selftest", help="worked example, bounds and radius smoke tests")
    t.add_argument("--trials", type=int, default=30)
    t.add_argument("--json", action="store_true")
    t.set_defaults(func=cmd_selftest)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, RadiusExceeded, ValueError) as exc:
        if isinstance(exc, ValidationError):
            msg = "; ".join(f"{'.'.join(map(str, e['loc']))}: {e['msg']}" for e in exc.errors())
        else:
            msg = str(exc)
        print(f"error: {msg}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
