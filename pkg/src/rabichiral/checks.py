"""Invariant suite behind ``rabichiral check``.

Each check returns a :class:`CheckResult`; grids are small enough that the
whole suite runs in well under a minute.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import crossings as cx
from .chiral import e_low_total, ledger_constants, select_epsilon
from .fc_numerics import (
    amplitudes,
    build_chains,
    dense_spectrum,
    eigensolve,
    fc_ground,
    photon_number,
    verify_decomposition,
)
from .jc_spectrum import Branch, candidate_count, jc_ground, level_energy
from .model import ModelParams

RES = ModelParams()
ROUNDOFF = 1e-12


@dataclass(frozen=True)
class CheckResult:
    name: str
    ok: bool
    detail: str


def check_decomposition(seed: int = 7, count: int = 50, n_max: int = 30) -> CheckResult:
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(count):
        wa = rng.uniform(1.0, 2.0)
        p = ModelParams(omega_a=wa, g=rng.uniform(0.0, 3.0))
        worst = max(worst, verify_decomposition(p, rng.uniform(0.01, 0.99), n_max))
    return CheckResult("decomposition identity", worst <= 1e-13, f"max deviation {worst:.2e}")


def check_sandwich(g_max: float = 3.0, step: float = 0.01) -> CheckResult:
    bad = []
    for g in np.round(np.arange(0.0, g_max + step / 2, step), 12):
        p = RES.with_g(float(g))
        E = fc_ground(p).E0
        r = e_low_total(p, select_epsilon(float(g)), check=False)
        ok = r.e_low - ROUNDOFF <= E <= r.e_upp + ROUNDOFF
        ok &= r.E_low + max(0.0, r.E_lbd) - ROUNDOFF <= E <= r.E_low + r.E_ubd + ROUNDOFF
        if not ok:
            bad.append(float(g))
    return CheckResult("sandwich and E_low bounds", not bad, f"{len(bad)} violations" + (f", first g={bad[0]}" if bad else ""))


def check_crossing_chains(n_levels: int = 6) -> CheckResult:
    """``G_n^* < G_n^+`` and ``G_n^WC <= G_n^SC <= G_n^+`` on an (eps, n) grid."""
    bad = 0
    for eps in np.linspace(0.0, 0.95, 20):
        for n in range(n_levels):
            gs, gp = cx.g2_star(RES, eps, n), cx.g2_plus(RES, eps, n)
            bad += not gs < gp
            if n >= 1:
                wc, sc = cx.g2_wc(RES, eps, n), cx.g2_sc(RES, eps, n)
                bad += not (wc <= sc + ROUNDOFF and sc <= gp + ROUNDOFF)
    return CheckResult("crossing inequality chains", bad == 0, f"{bad} counterexamples")


def check_predicates() -> CheckResult:
    """Closed-form comparisons agree with direct energy comparisons."""
    bad = 0
    for eps in np.linspace(0.0, 0.9, 10):
        for g in np.linspace(0.0, 3.0, 61):
            p = RES.with_g(float(g))
            up0 = level_energy(p, eps, Branch.up0())
            for n in range(4):
                en = level_energy(p, eps, Branch.minus(n))
                order = cx.compare_up0_minus_n(p, eps, n, float(g))
                if abs(up0 - en) > 1e-9:
                    bad += (order is cx.Ordering.LESS) != (up0 < en)
    return CheckResult("predicate consistency", bad == 0, f"{bad} counterexamples")


def check_envelope() -> CheckResult:
    """Envelope minimum vs brute force over a long ladder."""
    bad = 0
    for eps in np.linspace(0.0, 0.9, 10):
        for g in np.linspace(0.0, 4.0, 81):
            p = RES.with_g(float(g))
            env = jc_ground(p, eps).energy
            n = candidate_count(p, eps) + 40
            brute = min([level_energy(p, eps, Branch.up0())] + [level_energy(p, eps, Branch.minus(k)) for k in range(n)])
            bad += abs(env - brute) > 1e-12
    return CheckResult("envelope vs brute force", bad == 0, f"{bad} counterexamples")


def check_dense_oracle() -> CheckResult:
    worst = 0.0
    for wa in (1.0, 1.5):
        for g in (0.0, 0.3, 1.0, 2.0):
            for n in (10, 25, 40):
                p = ModelParams(omega_a=wa, g=g)
                dense = dense_spectrum(p, n)
                chains = np.sort(np.concatenate([eigensolve(c, c.n_max).eigenvalues for c in build_chains(p, n)]))
                worst = max(worst, float(np.max(np.abs(dense - chains))))
    return CheckResult("dense vs chain spectra", worst <= 1e-10, f"max deviation {worst:.2e}")


def check_expansion() -> CheckResult:
    worst = 0.0
    for g in (0.1, 0.5, 1.0, 2.0):
        for eps in (0.1, 0.3, 0.5):
            rep = amplitudes(RES.with_g(g), eps)
            worst = max(worst, rep.expansion_error / rep.slack)
    return CheckResult("expansion reconstruction", worst <= 1.0, f"max error/slack {worst:.2e}")


def check_pull_through() -> CheckResult:
    excess = max(photon_number(RES.with_g(g)) - g * g for g in (0.5, 1.0, 2.0, 3.0))
    return CheckResult("pull-through bound", excess <= 1e-8, f"max <N> - g^2 = {excess:.3e}")


def check_constants() -> CheckResult:
    lc = ledger_constants()
    roots = cx.epsilon_roots()
    ok = all(lc.e_upp_at_root[n] <= lc.caps[n] for n in range(4))
    ok &= abs(cx.c1_wc(0.5) - 1.1938972) <= 1e-4
    return CheckResult("ledger constants", ok, f"eps roots {roots.eps0:.6f} {roots.eps1:.4f} {roots.eps2:.6f}")


ALL_CHECKS = (
    check_decomposition,
    check_sandwich,
    check_crossing_chains,
    check_predicates,
    check_envelope,
    check_dense_oracle,
    check_expansion,
    check_pull_through,
    check_constants,
)


def run_all() -> list[CheckResult]:
    return [f() for f in ALL_CHECKS]

