"""Quick consistency checks run by `ilrs selftest` and the service."""
from __future__ import annotations

from dataclasses import dataclass

from .gf import FieldTower
from .sim import ExperimentConfig, bound_improved, bound_standard, run_experiment
from .skew import SkewRing
from .subroutines import gabidulin_solve

# reference bound values at q=3, m=4, n=(4,4), k=3: (s, tau) -> (standard, improved)
REFERENCE_BOUNDS = {
    (4, 3): (2.015e-11, 1.143e-11),
    (4, 4): (7.026e-02, 3.985e-02),
    (5, 3): (3.071e-15, 1.742e-15),
    (5, 4): (8.674e-04, 4.920e-04),
}


@dataclass
class Check:
    name: str
    ok: bool
    detail: str = ""


def sig3(a: float, b: float) -> bool:
    return f"{a:.2e}" == f"{b:.2e}"


def f9_example() -> tuple[FieldTower, list[int], list[int], list[int]]:
    """The F_9 instance: a = ((g^7, g^6) | g), xi = (1, 1, g), s = (g, g^4, g^3)."""
    t = FieldTower(3, 2, modulus=(2, 2, 1))
    g = t.elem
    return t, [g(7), g(6), g(1)], [1, 1, g(1)], [g(1), g(4), g(3)]


def check_gabidulin_example() -> Check:
    t, a, xi, s = f9_example()
    x = gabidulin_solve(t, a, xi, s)
    want = [t.elem(2), 1, t.elem(1)]
    return Check("gabidulin F_9 example", x == want, " ".join(t.fmt(v) for v in x))


def check_moore_example() -> Check:
    t, a, xi, _ = f9_example()
    M = SkewRing(t, -1).moore(3, a, [t.theta(v, -1) for v in xi])
    g = t.elem
    want = [[g(7), g(6), g(1)], [g(5), g(2), g(6)], [g(7), g(6), g(5)]]
    return Check("moore F_9 example", M == want)


def check_bounds() -> Check:
    bad = []
    for (s, tau), (std, imp) in REFERENCE_BOUNDS.items():
        b1 = bound_standard(3, 4, 2, s, 8, 3, tau)
        b2 = bound_improved(3, 4, 2, s, 8, 3, tau)
        if not (sig3(b1, std) and sig3(b2, imp)):
            bad.append(f"s={s} tau={tau}: {b1:.3e}/{b2:.3e}")
    return Check("reference bounds", not bad, "; ".join(bad))


def check_radius(trials: int = 30) -> list[Check]:
    out = []
    base = dict(q=3, m=4, partition=(4, 4), k=3, s=4, trials=trials, seed=7)
    for mode in ("vilrs", "hilrs"):
        for tau in (1, 2):
            rep = run_experiment(ExperimentConfig(mode=mode, tau=tau, **base))
            out.append(Check(f"{mode} tau={tau} ({trials} trials)", rep.failures == 0,
                             f"{rep.failures} failures"))
        rep = run_experiment(ExperimentConfig(mode=mode, tf=1, tr=1, tc=1, **base))
        out.append(Check(f"{mode} erasures (1,1,1) ({trials} trials)", rep.failures == 0,
                         f"{rep.failures} failures"))
    return out


def run_all(trials: int = 30) -> list[Check]:
    return [check_gabidulin_example(), check_moore_example(), check_bounds(),
            *check_radius(trials)]
