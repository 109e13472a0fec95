"""Dicke-type level crossings of the modified JC ladder.

Squared-coupling thresholds (units of omega_c^2):

* ``G_n^*``  : ``Up0`` versus ``Minus(n)`` (exact, iff).
* ``G_n^+``  : onset of the ``Minus(n)`` ground level.
* ``G_n^WC`` : below it ``Minus(n-1)`` is provably lower than ``Minus(n)``.
* ``G_n^SC`` : above it ``Minus(n)`` is provably lower than ``Minus(n-1)``.

``classify`` returns the superradiance indices ``[|nu*|, |nu**|]`` from the
envelope and cross-checks them against the closed-form sufficient regions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

from scipy.optimize import brentq

from .jc_spectrum import JcGround, chiral_ground, jc_ground
from .model import ModelParams, as_epsilon, detuning

SQRT2 = math.sqrt(2.0)
SQRT3 = math.sqrt(3.0)


class InconsistencyError(RuntimeError):
    """The envelope contradicts an applicable analytic sufficient condition."""


class Ordering(str, Enum):
    LESS = "Less"
    EQUAL = "Equal"
    GREATER = "Greater"


class Predicate(str, Enum):
    PROVABLY_BELOW = "ProvablyBelow"
    PROVABLY_ABOVE = "ProvablyAbove"
    INDETERMINATE = "Indeterminate"


def _w(params: ModelParams, eps: float) -> float:
    return (1.0 - eps) * params.omega_c


def g2_star(params: ModelParams, eps, n: int) -> float:
    """``G_n^* = (1-eps)^2 omega_c^2 {(n+1) + delta_eps / ((1-eps) omega_c)}``."""
    if n < 0:
        raise ValueError("n must be >= 0")
    e = as_epsilon(eps)
    w = _w(params, e)
    return w * w * ((n + 1) + detuning(params, e).delta_eps / w)


def g2_plus(params: ModelParams, eps, n: int) -> float:
    if n < 0:
        raise ValueError("n must be >= 0")
    e = as_epsilon(eps)
    w = _w(params, e)
    r = detuning(params, e).delta_eps / (2.0 * w)
    return 2.0 * w * w * ((n + 1) + math.sqrt((n + 1) ** 2 + r * r))


def g2_wc(params: ModelParams, eps, n: int) -> float:
    if n < 1:
        raise ValueError("G_n^WC is defined for n >= 1")
    e = as_epsilon(eps)
    w = _w(params, e)
    r = detuning(params, e).delta_eps / (2.0 * w)
    return 2.0 * w * w * (n + 0.25 + math.sqrt((n + 0.25) ** 2 + r * r))


def g2_sc(params: ModelParams, eps, n: int) -> float:
    if n < 1:
        raise ValueError("G_n^SC is defined for n >= 1")
    e = as_epsilon(eps)
    w = _w(params, e)
    r = detuning(params, e).delta_eps / (2.0 * w)
    return 2.0 * w * w * (n + 0.5 + math.sqrt(n * (n + 1) + r * r))


@dataclass(frozen=True)
class CrossingConstants:
    g2_star: float
    g2_plus: float
    g2_wc: float | None
    g2_sc: float | None


def crossing_constants(params: ModelParams, eps, n: int) -> CrossingConstants:
    return CrossingConstants(
        g2_star(params, eps, n),
        g2_plus(params, eps, n),
        g2_wc(params, eps, n) if n >= 1 else None,
        g2_sc(params, eps, n) if n >= 1 else None,
    )


def compare_up0_minus_n(params: ModelParams, eps, n: int, g: float) -> Ordering:
    """Order of ``E_{up,0}`` relative to ``E_{-,n}`` at coupling ``g``."""
    g2, thr = g * g, g2_star(params, eps, n)
    if g2 < thr:
        return Ordering.LESS
    if g2 == thr:
        return Ordering.EQUAL
    return Ordering.GREATER


def adjacent_crossing_predicate(params: ModelParams, eps, n: int, g: float) -> Predicate:
    """Sufficient-condition test for ``E_{-,n-1}`` versus ``E_{-,n}``."""
    g2 = g * g
    if g2 < g2_wc(params, eps, n):
        return Predicate.PROVABLY_BELOW
    if g2 > g2_sc(params, eps, n):
        return Predicate.PROVABLY_ABOVE
    return Predicate.INDETERMINATE


def k_of_n(n: int) -> float:
    """``K(n)``: largest eps for which ``[0, n+1]`` can follow ``[0, n]``."""
    if n < 1:
        raise ValueError("K(n) is defined for n >= 1")
    m = n + 1
    return math.sqrt(2.0 * m * m - 2.0 * m * math.sqrt(n * m)) / (2.0 * m)


def c1_wc(eps) -> float:
    """``C_1^WC(eps)``, the resonant value of ``sqrt(G_1^WC(eps))``."""
    e = as_epsilon(eps)
    return math.sqrt((1.0 - e) * (5.0 * (1.0 - e) + math.sqrt(41.0 * e * e - 50.0 * e + 25.0)) / 2.0)


def solve_bracketed(f, lo: float, hi: float, *, tol: float = 1e-13) -> float:
    """Root of ``f`` in ``[lo, hi]`` by Brent's bisection/secant hybrid.

    Raises
    ------
    RuntimeError
        If the bracket has no sign change or the residual exceeds ``tol``.
    """
    flo, fhi = f(lo), f(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if flo * fhi > 0:
        raise RuntimeError(f"no sign change on [{lo}, {hi}]")
    x = brentq(f, lo, hi, xtol=1e-15, rtol=4 * 2.220446049250313e-16, maxiter=200)
    if abs(f(x)) > tol:
        raise RuntimeError(f"residual {f(x):.3e} above tolerance at x={x}")
    return x


@dataclass(frozen=True)
class EpsilonRoots:
    eps0: float
    eps1: float
    eps2: float
    eps3: float


@lru_cache(maxsize=1)
def epsilon_roots() -> EpsilonRoots:
    """Roots ``eps_0..eps_3`` bounding the ``[1,1]`` and ``[1,2]`` regions.

    ``eps_3`` is the root of ``(sqrt2+1) eps = C_1^WC(eps)``, the condition
    under which the ``[1,2]`` region ``(sqrt2+1) eps < g < C_1^WC(eps)`` is
    non-empty; it therefore coincides with ``eps_0``.
    """

    def root(f, guess):
        return solve_bracketed(f, max(guess - 0.2, 1e-9), min(guess + 0.2, 0.999))

    e0 = root(lambda e: (SQRT2 + 1.0) * e - c1_wc(e), 0.496914)
    e1 = root(lambda e: e - c1_wc(e), 0.75)
    e2 = root(lambda e: (SQRT3 + SQRT2) * e - c1_wc(e), 0.424913)
    e3 = root(lambda e: (SQRT2 + 1.0) * e - c1_wc(e), 0.496914)
    return EpsilonRoots(e0, e1, e2, e3)


def literal_eps3() -> float:
    """Root of ``(sqrt2+1) eps^2 = C_1^WC(eps)`` read literally (diagnostic)."""
    return solve_bracketed(lambda e: (SQRT2 + 1.0) * e * e - c1_wc(e), 0.3, 0.95)


@dataclass(frozen=True)
class SuperradianceIndices:
    """Photon counts ``[|nu*|, |nu**|](eps)`` of the two sector ground levels.

    ``nu_star2_abs`` is 0 with ``chiral_defined=False`` when ``eps = 0``.
    """

    nu_star_abs: int
    nu_star2_abs: int
    epsilon: float
    degenerate_star: bool = False
    degenerate_star2: bool = False
    chiral_defined: bool = True
    checked_regions: tuple[str, ...] = ()

    @property
    def pair(self) -> tuple[int, int]:
        return (self.nu_star_abs, self.nu_star2_abs)


@dataclass(frozen=True)
class Region:
    name: str
    lo: float
    hi: float
    indices: tuple[int, int]

    def contains(self, g: float, margin: float = 1e-10) -> bool:
        return self.lo + margin < g < self.hi - margin


def sufficient_regions(eps) -> list[Region]:
    """Closed-form regions in g (resonance, omega = 1) with known indices.

    The ``[1,1]`` third case uses the lower edge ``max(eps, sqrt(1-eps^2))``,
    the smallest coupling compatible with both ``|nu*| = 1`` and
    ``|nu**| = 1``.  The region set is the union of all cases.
    """
    e = as_epsilon(eps)
    r = epsilon_roots()
    out: list[Region] = []
    s = math.sqrt(1.0 - e * e)
    inv_sqrt2 = 1.0 / SQRT2
    k1 = k_of_n(1)
    if e > 0:
        out.append(Region("weak-coupling", 0.0, e if e <= inv_sqrt2 else s, (0, 0)))
        if e <= k1:
            out.append(Region("[0,1] small eps", e, (SQRT2 + 1.0) * e, (0, 1)))
        elif e < inv_sqrt2:
            out.append(Region("[0,1] large eps", e, s, (0, 1)))
        for n in range(1, 40):
            lo = (math.sqrt(n + 1) + math.sqrt(n)) * e
            top = (math.sqrt(n + 2) + math.sqrt(n + 1)) * e
            if e * e < 1.0 / (top * top / (e * e) + 1.0):
                out.append(Region(f"[0,{n + 1}] small eps", lo, top, (0, n + 1)))
            kn1, kn = k_of_n(n + 1), k_of_n(n)
            if e <= kn1:
                out.append(Region(f"[0,{n + 1}] K-case 1", lo, top, (0, n + 1)))
            elif e < kn:
                out.append(Region(f"[0,{n + 1}] K-case 2", lo, s, (0, n + 1)))
        c1 = c1_wc(e)
        if k1 <= e <= r.eps0:
            out.append(Region("[1,1] case 1", s, (SQRT2 + 1.0) * e, (1, 1)))
        if r.eps0 < e < inv_sqrt2:
            out.append(Region("[1,1] case 2", s, c1, (1, 1)))
        if r.eps0 < e < r.eps1:
            out.append(Region("[1,1] case 3", max(e, s), c1, (1, 1)))
        k2 = k_of_n(2)
        if k2 <= e <= k1:
            out.append(Region("[1,2] case 1", s, (SQRT3 + SQRT2) * e, (1, 2)))
        if k1 < e < r.eps2:
            out.append(Region("[1,2] case 2", (SQRT2 + 1.0) * e, (SQRT3 + SQRT2) * e, (1, 2)))
        if r.eps2 <= e < r.eps3:
            out.append(Region("[1,2] case 3", (SQRT2 + 1.0) * e, c1, (1, 2)))
    return [reg for reg in out if reg.hi > reg.lo]


def indices_from_grounds(std: JcGround, chi: JcGround | None, eps: float) -> SuperradianceIndices:
    return SuperradianceIndices(
        nu_star_abs=std.level_index + 1,
        nu_star2_abs=0 if chi is None else chi.level_index + 1,
        epsilon=eps,
        degenerate_star=std.degenerate,
        degenerate_star2=False if chi is None else chi.degenerate,
        chiral_defined=chi is not None,
    )


def classify(params: ModelParams, eps, g: float | None = None, *, check: bool = True) -> SuperradianceIndices:
    """Superradiance indices at coupling ``g`` (defaults to ``params.g``).

    Raises
    ------
    InconsistencyError
        If ``check`` is set, parameters are resonant and the envelope result
        contradicts a sufficient region containing ``g``.
    """
    e = as_epsilon(eps)
    p = params if g is None else params.with_g(g)
    std = jc_ground(p, e)
    chi = chiral_ground(p, e) if e > 0 else None
    idx = indices_from_grounds(std, chi, e)
    if not (check and e > 0 and p.omega_a == p.omega_c == 1.0):
        return idx
    hits = []
    for reg in sufficient_regions(e):
        if reg.contains(p.g):
            hits.append(reg.name)
            if reg.indices != idx.pair:
                raise InconsistencyError(
                    f"envelope gives {list(idx.pair)} at g={p.g}, eps={e} "
                    f"but region '{reg.name}' implies {list(reg.indices)}"
                )
    return SuperradianceIndices(**{**idx.__dict__, "checked_regions": tuple(hits)})


def _ground_index(params: ModelParams, eps: float, g: float) -> int:
    return jc_ground(params.with_g(g), eps).level_index


def level_crossing(params: ModelParams, eps: float, a: int, b: int, lo: float, hi: float) -> float:
    """Coupling where ladder ground levels ``a`` and ``b`` exchange order."""
    from .jc_spectrum import Branch, level_energy

    def br(i):
        return Branch.up0() if i < 0 else Branch.minus(i)

    if a == -1:
        return math.sqrt(g2_star(params, eps, b))

    def f(g):
        p = params.with_g(g)
        return level_energy(p, eps, br(a)) - level_energy(p, eps, br(b))

    return solve_bracketed(f, lo, hi, tol=1e-10)


@dataclass(frozen=True)
class CrossingInterval:
    level_index: int
    g_lo: float
    g_hi: float
    wc_bracket: tuple[float, float] | None


def crossing_map(params: ModelParams, eps, g_max: float, *, step: float = 1e-3) -> list[CrossingInterval]:
    """Intervals of g on which ``Minus(n)`` (or ``Up0``) is the ladder ground.

    For every adjacent crossing ``n-1 -> n`` the sufficient bracket
    ``(sqrt(G_n^WC), sqrt(G_n^SC))`` is attached.
    """
    e = as_epsilon(eps)
    n_steps = max(1, int(math.ceil(g_max / step)))
    grid = [g_max * i / n_steps for i in range(n_steps + 1)]
    out: list[CrossingInterval] = []
    cur = _ground_index(params, e, 0.0)
    start = 0.0
    for g0, g1 in zip(grid[:-1], grid[1:]):
        nxt = _ground_index(params, e, g1)
        if nxt != cur:
            gc = level_crossing(params, e, cur, nxt, g0, g1)
            out.append(CrossingInterval(cur, start, gc, _bracket(params, e, cur)))
            cur, start = nxt, gc
    out.append(CrossingInterval(cur, start, math.inf, _bracket(params, e, cur)))
    return out


def _bracket(params: ModelParams, eps: float, n: int):
    if n < 1:
        return None
    return (math.sqrt(g2_wc(params, eps, n)), math.sqrt(g2_sc(params, eps, n)))
