"""Failure-probability bounds and the Monte-Carlo harness."""
from __future__ import annotations

import csv
import json
import math
import multiprocessing as mp
import os
import random
import time
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path
from typing import Callable

from scipy.stats import beta as beta_dist

from . import decode_hilrs, decode_vilrs
from . import sumrank as sr
from .decoding import POSTCHECK
from .gf import FieldTower, kappa
from .lrs import LrsCode, random_code

CSV_COLUMNS = ("mode", "q", "m", "l", "s", "k", "n", "tau", "tf", "tr", "tc", "trials",
               "failures", "miscorrections", "rate", "ci_lo", "ci_hi", "bound_std",
               "bound_impr", "seed", "runtime_s")
KAPPA_TERMS = 100


class RadiusExceeded(ValueError):
    pass


class ConfigError(ValueError):
    pass


# ---------------------------------------------------------------------------
# bounds

def tau_max(s: int, n: int, k: int) -> float:
    return s * (n - k) / (s + 1)


def _exponent(q, m, s, n, k, tau_eff):
    tm = tau_max(s, n, k)
    if tau_eff > tm + 1e-12:
        raise RadiusExceeded(f"tau = {tau_eff} exceeds tau_max = {tm:.4g}")
    return q ** (-m * ((s + 1) * (tm - tau_eff) + 1))


def bound_standard(q: int, m: int, ell: int, s: int, n: int, k: int, tau_eff: float) -> float:
    return kappa(q, KAPPA_TERMS) ** (ell + 1) * _exponent(q, m, s, n, k, tau_eff)


def bound_improved(q: int, m: int, ell: int, s: int, n: int, k: int, tau_eff: float) -> float:
    return (kappa(q ** m, KAPPA_TERMS) * kappa(q, KAPPA_TERMS) ** ell
            * _exponent(q, m, s, n, k, tau_eff))


def tau_star(s: int, tf: int, tr: int, tc: int) -> float:
    """Effective weight of an erasure split, with the per-component erasure
    weights replaced by their maximum (t_R for VILRS, t_C for HILRS), so the
    bound is the worst case over instances.  The two modes coincide."""
    return tf + s / (s + 1) * (tr + tc)


def clopper_pearson(k: int, n: int, level: float = 0.95) -> tuple[float, float]:
    if n == 0:
        return 0.0, 1.0
    a = (1 - level) / 2
    lo = 0.0 if k == 0 else float(beta_dist.ppf(a, k, n - k + 1))
    hi = 1.0 if k == n else float(beta_dist.ppf(1 - a, k + 1, n - k))
    return lo, hi


# ---------------------------------------------------------------------------
# configuration

@dataclass
class ExperimentConfig:
    q: int = 3
    m: int = 4
    u: int = 1
    partition: tuple[int, ...] = (4, 4)
    k: int = 3
    mode: str = "vilrs"
    s: int = 4
    tau: int | None = None
    tf: int = 0
    tr: int = 0
    tc: int = 0
    trials: int | None = None
    failures: int | None = None
    max_trials: int = 1_000_000
    max_seconds: float | None = None
    seed: int = 0
    workers: int = 1
    resample_code: bool = True
    allow_beyond_radius: bool = False
    out: str | None = None

    def validate(self) -> "ExperimentConfig":
        if self.mode not in ("vilrs", "hilrs"):
            raise ConfigError(f"mode must be vilrs or hilrs, not {self.mode!r}")
        if (self.trials is None) == (self.failures is None):
            raise ConfigError("give exactly one stop rule: trials or failures")
        for name in ("trials", "failures"):
            v = getattr(self, name)
            if v is not None and v < 0:
                raise ConfigError(f"{name} must be nonnegative")
        if self.s < 1 or self.k < 1 or self.k >= self.n:
            raise ConfigError("need s >= 1 and 1 <= k < n")
        if any(b < 1 or b > self.m for b in self.partition):
            raise ConfigError(f"block lengths must lie in 1..m={self.m}")
        if len(self.partition) > self.q - 1:
            raise ConfigError(f"at most q-1 = {self.q - 1} blocks")
        if self.tau is not None and (self.tf or self.tr or self.tc):
            raise ConfigError("give either tau or (tf, tr, tc)")
        if min(self.tf, self.tr, self.tc, self.tau or 0) < 0:
            raise ConfigError("weights must be nonnegative")
        if self.tau_eff > tau_max(self.s, self.n, self.k) + 1e-12 and not self.allow_beyond_radius:
            raise ConfigError(f"effective weight {self.tau_eff:.4g} exceeds tau_max "
                              f"{tau_max(self.s, self.n, self.k):.4g} (use allow_beyond_radius)")
        if self.workers < 1:
            raise ConfigError("workers must be positive")
        return self

    @property
    def n(self) -> int:
        return sum(self.partition)

    @property
    def ell(self) -> int:
        return len(self.partition)

    @property
    def erasures(self) -> bool:
        return self.tau is None

    @property
    def tau_eff(self) -> float:
        return self.tau if self.tau is not None else tau_star(self.s, self.tf, self.tr, self.tc)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["partition"] = list(self.partition)
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "ExperimentConfig":
        known = {f.name for f in fields(cls)}
        bad = set(d) - known
        if bad:
            raise ConfigError(f"unknown keys: {sorted(bad)}")
        d = dict(d)
        if "partition" in d:
            d["partition"] = tuple(d["partition"])
        return cls(**d)


PRESETS: dict[str, dict] = {
    "ref-s4": dict(q=3, m=4, u=1, partition=(4, 4), k=3, s=4, tau=4),
    "ref-s5": dict(q=3, m=4, u=1, partition=(4, 4), k=3, s=5, tau=4),
}

# observed failure rates of the reference experiments (VILRS, HILRS)
REFERENCE_RATES = {
    ("ref-s4", "vilrs"): 1.302e-02, ("ref-s4", "hilrs"): 1.348e-02,
}


def parse_kv(text: str) -> dict:
    """Plain key = value records; '#' starts a comment."""
    out: dict = {}
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"expected key = value, got {raw!r}")
        key, val = (x.strip() for x in line.split("=", 1))
        out[key.replace("-", "_")] = val
    return out


# ---------------------------------------------------------------------------
# trials

SUCCESS, FAILURE, MISCORRECTION = 0, 1, 2

_towers: dict[tuple, FieldTower] = {}
_pinned: dict[tuple, LrsCode] = {}


def _tower(cfg: ExperimentConfig) -> FieldTower:
    key = (cfg.q, cfg.m, cfg.u, cfg.s)
    t = _towers.get(key)
    if t is None:
        t = _towers[key] = FieldTower(cfg.q, cfg.m, cfg.u, s=cfg.s)
    return t


def _code(cfg: ExperimentConfig, rng: random.Random) -> LrsCode:
    t = _tower(cfg)
    if cfg.resample_code:
        return random_code(t, cfg.partition, cfg.k, rng)
    key = (cfg.q, cfg.m, cfg.u, cfg.s, cfg.partition, cfg.k, cfg.seed)
    code = _pinned.get(key)
    if code is None:
        code = _pinned[key] = random_code(t, cfg.partition, cfg.k, random.Random(cfg.seed))
    return code


def trial_rng(seed: int, index: int) -> random.Random:
    """Independent stream per (seed, trial index)."""
    return random.Random((seed << 32) | index)


def run_trial(cfg: ExperimentConfig, index: int) -> int:
    rng = trial_rng(cfg.seed, index)
    t = _tower(cfg)
    code = _code(cfg, rng)
    s = cfg.s
    vert = cfg.mode == "vilrs"
    layout = "vertical" if vert else "horizontal"
    C = code.encode_interleaved([code.random_message(rng) for _ in range(s)], layout)
    if cfg.erasures:
        inst = sr.make_erasure_instance(t, C, code.partition, layout, s,
                                        cfg.tf, cfg.tr, cfg.tc, rng)
        if vert:
            res = decode_vilrs.decode_errors_erasures(
                decode_vilrs.VilrsInstance(code, s, inst.received), inst.side, rng)
        else:
            res = decode_hilrs.decode_errors_erasures(
                decode_hilrs.HilrsInstance(code, s, inst.received), inst.side, rng)
    else:
        E = sr.sample_fixed_weight(t, code.partition, layout, s, cfg.tau, rng)
        Y = sr.add_words(t, C, E, layout)
        if vert:
            res = decode_vilrs.decode_errors(decode_vilrs.VilrsInstance(code, s, Y), rng)
        else:
            res = decode_hilrs.decode_errors(decode_hilrs.HilrsInstance(code, s, Y), rng)
    if res.success:
        return SUCCESS if res.codeword == C else MISCORRECTION
    return MISCORRECTION if res.reason == POSTCHECK else FAILURE


def _chunk(args) -> list[int]:
    cfg_dict, start, stop = args
    cfg = ExperimentConfig.from_dict(cfg_dict)
    return [run_trial(cfg, i) for i in range(start, stop)]


def worker_count(cfg: ExperimentConfig) -> int:
    env = os.environ.get("SUMRANK_THREADS")
    if env:
        try:
            w = int(env)
        except ValueError:
            raise ConfigError(f"SUMRANK_THREADS must be an integer, got {env!r}")
        if w < 1:
            raise ConfigError("SUMRANK_THREADS must be positive")
        return w
    return cfg.workers


# ---------------------------------------------------------------------------
# reports

@dataclass
class ExperimentReport:
    config: dict
    trials: int
    failures: int
    miscorrections: int
    rate: float
    ci_lo: float
    ci_hi: float
    bound_std: float | None
    bound_impr: float | None
    seed: int
    runtime_s: float
    stop: str
    ci_hi_below_bound: bool | None = None
    bound_violation: bool | None = None
    outcomes: dict = field(default_factory=dict)

    def csv_row(self) -> dict:
        c = self.config
        return {
            "mode": c["mode"], "q": c["q"], "m": c["m"], "l": len(c["partition"]),
            "s": c["s"], "k": c["k"], "n": sum(c["partition"]),
            "tau": "" if c["tau"] is None else c["tau"],
            "tf": c["tf"], "tr": c["tr"], "tc": c["tc"], "trials": self.trials,
            "failures": self.failures, "miscorrections": self.miscorrections,
            "rate": f"{self.rate:.6e}", "ci_lo": f"{self.ci_lo:.6e}", "ci_hi": f"{self.ci_hi:.6e}",
            "bound_std": "" if self.bound_std is None else f"{self.bound_std:.6e}",
            "bound_impr": "" if self.bound_impr is None else f"{self.bound_impr:.6e}",
            "seed": self.seed, "runtime_s": f"{self.runtime_s:.3f}",
        }

    def to_dict(self, runtime: bool = True) -> dict:
        d = asdict(self)
        if not runtime:
            d.pop("runtime_s")
        return d


def run_experiment(cfg: ExperimentConfig, chunk: int = 256,
                   progress: Callable[[int, int], None] | None = None) -> ExperimentReport:
    cfg.validate()
    t0 = time.perf_counter()
    workers = worker_count(cfg)
    target_trials = cfg.trials if cfg.trials is not None else cfg.max_trials
    outcomes: list[int] = []
    fails = 0
    stop = "trials" if cfg.trials is not None else "trial cap"
    cfg_dict = cfg.to_dict()
    pool = mp.get_context("spawn").Pool(workers) if workers > 1 else None
    try:
        start = 0
        while start < target_trials:
            width = chunk * workers
            stops = min(target_trials, start + width)
            bounds = [(cfg_dict, a, min(a + chunk, stops)) for a in range(start, stops, chunk)]
            results = pool.map(_chunk, bounds) if pool else [_chunk(b) for b in bounds]
            done = False
            for r in results:
                for o in r:
                    outcomes.append(o)
                    if o != SUCCESS:
                        fails += 1
                    if cfg.failures is not None and fails >= cfg.failures:
                        done = True
                        break
                if done:
                    break
            start = stops
            if progress:
                progress(len(outcomes), fails)
            if done:
                stop = "failures"
                break
            if cfg.max_seconds is not None and time.perf_counter() - t0 > cfg.max_seconds:
                stop = "wall clock"
                break
    finally:
        if pool:
            pool.close()
            pool.join()
    n_trials = len(outcomes)
    misc = sum(1 for o in outcomes if o == MISCORRECTION)
    rate = fails / n_trials if n_trials else 0.0
    lo, hi = clopper_pearson(fails, n_trials)
    try:
        b_std = bound_standard(cfg.q, cfg.m, cfg.ell, cfg.s, cfg.n, cfg.k, cfg.tau_eff)
        b_imp = bound_improved(cfg.q, cfg.m, cfg.ell, cfg.s, cfg.n, cfg.k, cfg.tau_eff)
    except RadiusExceeded:
        b_std = b_imp = None
    rep = ExperimentReport(cfg_dict, n_trials, fails, misc, rate, lo, hi, b_std, b_imp,
                           cfg.seed, time.perf_counter() - t0, stop)
    if b_std is not None:
        rep.ci_hi_below_bound = hi <= b_std
        rep.bound_violation = lo > b_std
    rep.outcomes = {"success": n_trials - fails, "failure": fails - misc, "miscorrection": misc}
    return rep


def write_report(rep: ExperimentReport, path: str | Path) -> tuple[Path, Path]:
    """Append one CSV row (header on first write) and write the JSON sidecar."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    new = not path.exists() or path.stat().st_size == 0
    with path.open("a", newline="") as fh:
        w = csv.DictWriter(fh, fieldnames=CSV_COLUMNS)
        if new:
            w.writeheader()
        w.writerow(rep.csv_row())
    side = path.with_suffix(".json")
    side.write_text(json.dumps(rep.to_dict(), indent=2, sort_keys=True) + "\n")
    return path, side


def bound_table(q, m, partition, k, s, taus=None) -> list[dict]:
    n, ell = sum(partition), len(partition)
    if taus is None:
        taus = range(1, math.floor(tau_max(s, n, k) + 1e-12) + 1)
    rows = []
    for tau in taus:
        rows.append({"s": s, "tau": tau, "tau_max": tau_max(s, n, k),
                     "bound_std": bound_standard(q, m, ell, s, n, k, tau),
                     "bound_impr": bound_improved(q, m, ell, s, n, k, tau)})
    return rows
