"""Truncated Fock-space numerics for the Rabi Hamiltonian.

``H_FC = (omega_a/2) sigma_z + omega_c (N + 1/2) + g sigma_x (a + a^dag)``
commutes with the parity ``sigma_z (-1)^N``.  Each parity sector is an
irreducible symmetric tridiagonal chain over photon number ``k``:

* Even: ``|down,0>, |up,1>, |down,2>, ...`` (spin sign +1 at k = 0)
* Odd:  ``|up,0>, |down,1>, |up,2>, ...``   (spin sign -1 at k = 0)

with ``d_k = omega_c (k + 1/2) + (omega_a/2) s_k`` and ``t_k = g sqrt(k+1)``.
A truncation of ``n_max`` chain sites keeps photon numbers ``0..n_max-1``;
the product basis index of ``|s, k>`` is ``2k + s`` (s = 0 down, 1 up).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple

import mpmath
import numpy as np

from . import tridiag
from .jc_spectrum import chiral_params, level_energy, mixing_angle, Branch
from .model import SPIN_DOWN, SPIN_UP, ModelParams, as_epsilon


class Sector(str, Enum):
    EVEN = "Even"
    ODD = "Odd"


class TruncationTooSmall(ValueError):
    pass


class DomainError(ValueError):
    pass


@dataclass(frozen=True)
class ParityChain:
    sector: Sector
    diag: np.ndarray
    offdiag: np.ndarray
    n_max: int

    @property
    def spins(self) -> np.ndarray:
        """Product-basis spin label of each chain site."""
        k = np.arange(self.n_max)
        first, other = (SPIN_DOWN, SPIN_UP) if self.sector is Sector.EVEN else (SPIN_UP, SPIN_DOWN)
        return np.where(k % 2 == 0, first, other)

    @property
    def basis_index(self) -> np.ndarray:
        return 2 * np.arange(self.n_max) + self.spins


@dataclass(frozen=True)
class TridiagonalSpectrum:
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray | None
    residual_norms: np.ndarray | None


def truncation_rule(g: float, omega: float = 1.0) -> int:
    """Minimum chain length ``ceil(g^2/omega^2) + 10``."""
    if g < 0:
        raise ValueError("g must be non-negative")
    return int(math.ceil(g * g / (omega * omega))) + 10


def auto_truncation(g: float, omega: float = 1.0) -> int:
    """Working chain length used by the ``auto`` policy.

    The ground state is spread over photon numbers ``g^2 +- O(g)``, so the
    minimum rule is widened by ten standard deviations of that spread.
    """
    return truncation_rule(g, omega) + int(math.ceil(10.0 * g / omega)) + 10


def _chain_arrays(params: ModelParams, n_max: int, sign0: float):
    k = np.arange(n_max, dtype=float)
    s = sign0 * (-1.0) ** k
    diag = params.omega_c * (k + 0.5) + 0.5 * params.omega_a * s
    off = params.g * np.sqrt(k[:-1] + 1.0)
    return diag, off


def build_chains(params: ModelParams, n_max: int) -> tuple[ParityChain, ParityChain]:
    """The (Even, Odd) parity chains truncated to ``n_max`` sites."""
    if n_max < 2:
        raise ValueError("n_max must be >= 2")
    de, oe = _chain_arrays(params, n_max, +1.0)
    do, oo = _chain_arrays(params, n_max, -1.0)
    return (
        ParityChain(Sector.EVEN, de, oe, n_max),
        ParityChain(Sector.ODD, do, oo, n_max),
    )


def eigensolve(chain: ParityChain, k: int = 1, want_vectors: bool = False) -> TridiagonalSpectrum:
    """The ``k`` lowest eigenpairs of one chain."""
    if not 1 <= k <= chain.n_max:
        raise ValueError("need 1 <= k <= n_max")
    vals = tridiag.lowest_eigenvalues(chain.diag, chain.offdiag, k)
    if not want_vectors:
        return TridiagonalSpectrum(vals, None, None)
    vecs = []
    for i, lam in enumerate(vals):
        v = tridiag.inverse_iteration(chain.diag, chain.offdiag, lam, previous=vecs)
        vecs.append(v)
    V = np.column_stack(vecs)
    res = np.array(
        [np.linalg.norm(tridiag.tridiag_matvec(chain.diag, chain.offdiag, V[:, i]) - vals[i] * V[:, i]) for i in range(k)]
    )
    span = max(chain.diag.max() - chain.diag.min() + 2 * np.abs(chain.offdiag).max(initial=0.0), 1.0)
    if np.any(res > 1e-10 * span):
        bad = int(np.argmax(res))
        raise tridiag.ConvergenceError(bad, f"residual {res[bad]:.2e} above contract")
    return TridiagonalSpectrum(vals, V, res)


class FcGround(NamedTuple):
    E0: float
    E1: float
    sector: Sector


def _check_truncation(params: ModelParams, n_max: int):
    if n_max < params.g**2 / params.omega_c**2 + 10:
        raise TruncationTooSmall(
            f"n_max={n_max} below g^2/omega_c^2 + 10 = {params.g**2 / params.omega_c**2 + 10:.3f}"
        )


def resolve_nmax(params: ModelParams, n_max: int | None) -> int:
    return auto_truncation(params.g, params.omega_c) if n_max is None else int(n_max)


def fc_ground(params: ModelParams, n_max: int | None = None, *, enforce: bool = True) -> FcGround:
    """Ground and first excited energies of the truncated ``H_FC``.

    ``n_max=None`` selects :func:`auto_truncation`.  With ``enforce`` the
    minimum truncation rule raises :class:`TruncationTooSmall`.
    """
    n = resolve_nmax(params, n_max)
    if enforce:
        _check_truncation(params, n)
    even, odd = build_chains(params, n)
    d = np.vstack([even.diag, even.diag, odd.diag, odd.diag])
    e = np.vstack([even.offdiag, even.offdiag, odd.offdiag, odd.offdiag])
    ev = tridiag.bisect_batch(d, e, [0, 1, 0, 1])
    levels = sorted([(ev[0], Sector.EVEN), (ev[1], Sector.EVEN), (ev[2], Sector.ODD), (ev[3], Sector.ODD)],
                    key=lambda t: t[0])
    return FcGround(float(levels[0][0]), float(levels[1][0]), levels[0][1])


@dataclass(frozen=True)
class GroundState:
    energy: float
    sector: Sector
    vector: np.ndarray  # product basis, length 2 n_max
    n_max: int
    tail: float  # norm of the component on the last photon shell

    def slack(self, g: float) -> float:
        """Truncation slack ``O(g sqrt(n_max) |tail|)`` with a roundoff floor."""
        return 1e-10 + (1.0 + g) * math.sqrt(self.n_max) * self.tail * 10.0


def ground_state(params: ModelParams, n_max: int | None = None, *, enforce: bool = True) -> GroundState:
    n = resolve_nmax(params, n_max)
    if enforce:
        _check_truncation(params, n)
    E0, _, sector = fc_ground(params, n, enforce=False)
    chain = build_chains(params, n)[0 if sector is Sector.EVEN else 1]
    spec = eigensolve(chain, 1, want_vectors=True)
    psi = np.zeros(2 * n)
    psi[chain.basis_index] = spec.eigenvectors[:, 0]
    tail = float(np.linalg.norm(psi[2 * (n - 1):]))
    return GroundState(float(spec.eigenvalues[0]), sector, psi, n, tail)


# Dense operators on the truncated product basis (small n_max only).


def _number(n_max: int) -> np.ndarray:
    return np.repeat(np.arange(n_max, dtype=float), 2)


def _sigma_z_diag(n_max: int) -> np.ndarray:
    return np.tile([1.0, -1.0], n_max)


def sigma_x_perm(n_max: int) -> np.ndarray:
    """Index permutation implementing sigma_x (spin flip at fixed photon number)."""
    idx = np.arange(2 * n_max)
    return idx ^ 1


def fc_matrix(params: ModelParams, n_max: int) -> np.ndarray:
    dim = 2 * n_max
    H = np.diag(0.5 * params.omega_a * _sigma_z_diag(n_max) + params.omega_c * (_number(n_max) + 0.5))
    for k in range(n_max - 1):
        c = params.g * math.sqrt(k + 1)
        for s in (SPIN_DOWN, SPIN_UP):
            i, j = 2 * k + s, 2 * (k + 1) + (1 - s)
            H[i, j] = H[j, i] = c
    assert H.shape == (dim, dim)
    return H


def jc_matrix(params: ModelParams, eps, n_max: int) -> np.ndarray:
    """Dense ``H_JC^g(eps)`` with rotating coupling ``|down,k> <-> |up,k+1>``."""
    e = as_epsilon(eps)
    wa, wc = (1.0 + e) * params.omega_a, (1.0 - e) * params.omega_c
    H = np.diag(0.5 * wa * _sigma_z_diag(n_max) + wc * (_number(n_max) + 0.5))
    for k in range(n_max - 1):
        i, j = 2 * k + SPIN_DOWN, 2 * (k + 1) + SPIN_UP
        H[i, j] = H[j, i] = params.g * math.sqrt(k + 1)
    return H


def chiral_counter_matrix(params: ModelParams, eps, n_max: int) -> np.ndarray:
    """Dense ``eps sigma_x H_JC^{g/eps}(0) sigma_x``."""
    e = as_epsilon(eps)
    p = chiral_params(params, e)
    perm = sigma_x_perm(n_max)
    return e * jc_matrix(p, 0.0, n_max)[np.ix_(perm, perm)]


def verify_decomposition(params: ModelParams, eps, n_max: int) -> float:
    """Max entrywise deviation of ``H_FC - H_JC^g(eps) - eps sx H_JC^{g/eps}(0) sx``.

    Rows and columns on the last photon shell are excluded.
    """
    if n_max < 2:
        raise ValueError("n_max must be >= 2")
    R = fc_matrix(params, n_max) - jc_matrix(params, eps, n_max) - chiral_counter_matrix(params, eps, n_max)
    inner = slice(0, 2 * (n_max - 1))
    return float(np.abs(R[inner, inner]).max())


def dense_spectrum(params: ModelParams, n_max: int) -> np.ndarray:
    """Full spectrum of the assembled ``H_FC`` (dense oracle)."""
    return np.linalg.eigvalsh(fc_matrix(params, n_max))


# Transition amplitudes.


def jc_projections(params: ModelParams, eps, phi: np.ndarray, n_max: int):
    """Squared projections of ``phi`` onto the closed-form JC eigenbasis.

    Returns ``(p_up0, plus, minus, e_up0, e_plus, e_minus)``; doublets are
    kept for ``n = 0..n_max-2`` (their partner state lies inside the
    truncation).
    """
    up0 = phi[2 * 0 + SPIN_UP] ** 2
    n = np.arange(n_max - 1)
    theta = np.array([mixing_angle(params, eps, int(j)) for j in n])
    a = phi[2 * n + SPIN_DOWN]
    b = phi[2 * (n + 1) + SPIN_UP]
    plus = (np.cos(theta) * a + np.sin(theta) * b) ** 2
    minus = (-np.sin(theta) * a + np.cos(theta) * b) ** 2
    e_up0 = level_energy(params, eps, Branch.up0())
    e_plus = np.array([level_energy(params, eps, Branch.plus(int(j))) for j in n])
    e_minus = np.array([level_energy(params, eps, Branch.minus(int(j))) for j in n])
    return float(up0), plus, minus, e_up0, e_plus, e_minus


@dataclass(frozen=True)
class AmplitudeReport:
    """Transition probabilities of the FC ground state.

    ``a_sq``/``b_sq`` map labels ``-1`` and ``(sign, n)`` to probabilities;
    ``b_sq`` is ``None`` when eps = 0.
    """

    a_sq: dict
    b_sq: dict | None
    sum_a: float
    sum_b: float | None
    a_minus1: float
    b_minus1: float | None
    reconstructed_energy: float
    energy: float
    slack: float
    epsilon: float

    @property
    def expansion_error(self) -> float:
        return abs(self.reconstructed_energy - self.energy)


def _table(up0, plus, minus):
    out = {-1: up0}
    for j in range(len(plus)):
        out[("+", j)] = float(plus[j])
        out[("-", j)] = float(minus[j])
    return out


def amplitudes(params: ModelParams, eps, n_max: int | None = None, *, state: GroundState | None = None) -> AmplitudeReport:
    """A-amplitudes on ``H_JC^g(eps)`` and B-amplitudes of ``sigma_x psi`` on ``H_JC^{g/eps}(0)``."""
    e = as_epsilon(eps)
    gs = state if state is not None else ground_state(params, n_max)
    n = gs.n_max
    psi = gs.vector
    up0, plus, minus, e0, ep, em = jc_projections(params, e, psi, n)
    a_sq = _table(up0, plus, minus)
    sum_a = up0 + float(plus.sum() + minus.sum())
    recon = up0 * e0 + float(plus @ ep + minus @ em)
    b_sq = sum_b = b_m1 = None
    if e > 0:
        chi = chiral_params(params, e)
        phi = psi[sigma_x_perm(n)]
        bu, bp, bm, f0, fp, fm = jc_projections(chi, 0.0, phi, n)
        b_sq = _table(bu, bp, bm)
        sum_b = bu + float(bp.sum() + bm.sum())
        b_m1 = bu
        recon += e * (bu * f0 + float(bp @ fp + bm @ fm))
    return AmplitudeReport(
        a_sq=a_sq, b_sq=b_sq, sum_a=sum_a, sum_b=sum_b, a_minus1=up0, b_minus1=b_m1,
        reconstructed_energy=recon, energy=gs.energy, slack=gs.slack(params.g), epsilon=e,
    )


def photon_number(params: ModelParams, n_max: int | None = None, *, state: GroundState | None = None) -> float:
    """Ground-state expectation of ``N``."""
    gs = state if state is not None else ground_state(params, n_max)
    return float(_number(gs.n_max) @ gs.vector**2)


def invert_G(params: ModelParams, E_fc: float) -> float:
    """Exponent constant ``G(g)`` recovered from a ground-state energy.

    ``G = -(omega_c^2 / 2g^2) ln[(omega_c/2 - g^2/omega_c - E) 2/omega_a] - 1``.
    At ``g = 0`` the formula is 0/0 and its small-g limit
    ``-omega_a / (omega_a + omega_c)`` is returned.
    """
    wa, wc, g = params.omega_a, params.omega_c, params.g
    arg = (0.5 * wc - g * g / wc - E_fc) * 2.0 / wa
    if not arg > 0:
        raise DomainError(f"log argument {arg!r} is not positive (E_fc above e_upp)")
    if g == 0:
        return -wa / (wa + wc)
    return -(wc * wc / (2.0 * g * g)) * math.log(arg) - 1.0


# Truncation diagnostics.


def _ground_batch(params: ModelParams, gs: np.ndarray, n: int) -> np.ndarray:
    k = np.arange(n, dtype=float)
    s = (-1.0) ** k
    base = params.omega_c * (k + 0.5)
    de = base + 0.5 * params.omega_a * s
    do = base - 0.5 * params.omega_a * s
    off = np.sqrt(k[:-1] + 1.0)
    B = len(gs)
    d = np.vstack([np.tile(de, (B, 1)), np.tile(do, (B, 1))])
    e = np.vstack([np.outer(gs, off), np.outer(gs, off)])
    ev = tridiag.bisect_batch(d, e, np.zeros(2 * B, dtype=np.int64))
    return np.minimum(ev[:B], ev[B:])


def e_upp(params: ModelParams, g) -> np.ndarray:
    g = np.asarray(g, dtype=float)
    wc, wa = params.omega_c, params.omega_a
    return 0.5 * wc - g * g / wc - 0.5 * wa * np.exp(-2.0 * g * g / wc**2)


@dataclass(frozen=True)
class Breakdown:
    n: int
    g_break: float
    sqrt_n: float

    @property
    def ratio(self) -> float:
        return self.g_break / self.sqrt_n


def truncation_breakdown(n: int, params: ModelParams | None = None, *, step: float = 0.05, g_start: float = 0.5,
                         tol: float = 1e-6) -> Breakdown:
    """First g where the ``n``-site ground energy exceeds ``e_upp(g)``."""
    if n < 10:
        raise ValueError("n must be >= 10")
    p = params or ModelParams()
    g_hi_cap = 4.0 * math.sqrt(n) * p.omega_c + 5.0
    lo = g_start
    while lo < g_hi_cap:
        grid = lo + step * np.arange(1, 65)
        excess = _ground_batch(p, grid, n) - e_upp(p, grid)
        hit = np.nonzero(excess > 0)[0]
        if hit.size:
            j = int(hit[0])
            a = grid[j - 1] if j > 0 else lo
            b = grid[j]
            while b - a > tol:
                m = 0.5 * (a + b)
                if (_ground_batch(p, np.array([m]), n) - e_upp(p, m))[0] > 0:
                    b = m
                else:
                    a = m
            return Breakdown(n, 0.5 * (a + b), math.sqrt(n) * p.omega_c)
        lo = grid[-1]
    raise RuntimeError(f"no breakdown found below g={g_hi_cap}")


# Asymptotics and the tunnelling gap.


def gap_extended(params: ModelParams, n_max: int | None = None, dps: int = 60):
    """``(E0, E1)`` of ``H_FC`` in ``dps``-digit arithmetic (scalar Sturm bisection)."""
    n = resolve_nmax(params, n_max)
    with mpmath.workdps(dps):
        wa, wc, g = mpmath.mpf(params.omega_a), mpmath.mpf(params.omega_c), mpmath.mpf(params.g)
        tol = mpmath.mpf(10) ** (-(dps - 12))
        vals = []
        for sign0 in (1, -1):
            d = [wc * (k + mpmath.mpf(1) / 2) + wa / 2 * sign0 * (-1) ** k for k in range(n)]
            e = [g * mpmath.sqrt(k + 1) for k in range(n - 1)]
            vals += [tridiag.bisect_scalar(d, e, i, tol) for i in (0, 1)]
        vals.sort()
        return vals[0], vals[1]


@dataclass(frozen=True)
class GapRatio:
    g: float
    gap: float
    ratio_quadratic: float  # gap / (omega_a exp(-2 g^2/omega_c^2))
    ratio_quartic: float  # gap / (omega_a exp(-2 (g^2/omega_c)^2))


def gap_ratio(params: ModelParams, n_max: int | None = None, dps: int = 60) -> GapRatio:
    """Scaled tunnelling gap under both readings of the exponent."""
    with mpmath.workdps(dps):
        E0, E1 = gap_extended(params, n_max, dps)
        gap = E1 - E0
        g, wa, wc = mpmath.mpf(params.g), mpmath.mpf(params.omega_a), mpmath.mpf(params.omega_c)
        r2 = gap / (wa * mpmath.exp(-2 * g**2 / wc**2))
        r4 = gap / (wa * mpmath.exp(-2 * (g**2 / wc) ** 2))
        return GapRatio(params.g, float(gap), float(r2), float(r4))


@dataclass(frozen=True)
class AsymptoticsRow:
    g: float
    E_fc: float
    small_g: float
    large_g: float
    e_upp: float
    small_g_ok: bool
    large_g_ok: bool
    e_upp_ok: bool
    gap_ratio: float


def asymptotics_report(params: ModelParams, g_values, *, small_tol: float = 1e-3, large_rel_tol: float = 1e-2,
                       upp_tol: float = 1e-2) -> list[AsymptoticsRow]:
    """Compare the ground energy with its small-g, large-g and e_upp asymptotes."""
    rows = []
    wa, wc = params.omega_a, params.omega_c
    for g in g_values:
        p = params.with_g(float(g))
        E0, E1, _ = fc_ground(p)
        small = -0.5 * (wa - wc)
        large = -p.g**2 / wc + 0.5 * wc
        up = float(e_upp(p, p.g))
        gap_scale = wa * math.exp(-2.0 * p.g**2 / wc**2)
        resolved = (E1 - E0) > 1e3 * np.finfo(float).eps * max(abs(E0), 1.0)
        rows.append(
            AsymptoticsRow(
                g=p.g, E_fc=E0, small_g=small, large_g=large, e_upp=up,
                small_g_ok=abs(E0 - small) < small_tol,
                large_g_ok=large != 0 and abs(E0 / large - 1.0) < large_rel_tol,
                e_upp_ok=abs(E0 - up) <= upp_tol,
                gap_ratio=(E1 - E0) / gap_scale if resolved else float("nan"),
            )
        )
    return rows
