"""Closed-form ladder of the modified Jaynes-Cummings Hamiltonian.

``H_JC^g(eps)`` uses the rescaled frequencies ``(1+eps) omega_a`` and
``(1-eps) omega_c`` with the bare coupling ``g``.  Its eigenpairs are the
uncoupled vacuum ``|up,0>`` (labelled ``Up0`` or index -1) and the doublets
``|+-, n>`` built from ``|down, n>`` and ``|up, n+1>``.  The chiral partner
``H_JC^{g/eps}(0)`` is the same ladder at coupling ``g/eps`` and split 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .model import ModelParams, as_epsilon, detuning


class Kind(str, Enum):
    UP0 = "Up0"
    PLUS = "Plus"
    MINUS = "Minus"


@dataclass(frozen=True)
class Branch:
    """Ladder label: ``Up0``, ``Plus(n)`` or ``Minus(n)``."""

    kind: Kind
    n: int = -1

    def __post_init__(self):
        if self.kind is not Kind.UP0 and self.n < 0:
            raise ValueError("photon index must be >= 0 for Plus/Minus")

    @classmethod
    def up0(cls) -> "Branch":
        return cls(Kind.UP0, -1)

    @classmethod
    def plus(cls, n: int) -> "Branch":
        return cls(Kind.PLUS, int(n))

    @classmethod
    def minus(cls, n: int) -> "Branch":
        return cls(Kind.MINUS, int(n))


@dataclass(frozen=True)
class JcLevel:
    branch: Branch
    energy: float
    angle: float | None


@dataclass(frozen=True)
class JcGround:
    """Ground level of a modified JC ladder.

    ``level_index`` is ``n_*``: -1 for ``Up0`` and ``n`` for ``Minus(n)``.
    ``degenerate`` flags an exact tie with another candidate.
    """

    energy: float
    level_index: int
    degenerate: bool = False


def _delta(params: ModelParams, eps: float) -> float:
    return detuning(params, eps).delta_eps


def level_energy(params: ModelParams, eps, branch: Branch) -> float:
    """Energy of one ladder level in units of omega_c."""
    e = as_epsilon(eps)
    d = _delta(params, e)
    if branch.kind is Kind.UP0:
        return -0.5 * d + 0.0
    n1 = branch.n + 1
    mean = (1.0 - e) * params.omega_c * n1
    half = 0.5 * math.sqrt(d * d + 4.0 * params.g**2 * n1)
    return mean + half if branch.kind is Kind.PLUS else mean - half


def mixing_angle(params: ModelParams, eps, n: int) -> float:
    """Mixing angle ``theta_n = atan(2 g sqrt(n+1) / delta_eps) / 2``.

    Uses ``atan2`` so that ``delta_eps = 0`` gives pi/4 for g > 0; the
    uncoupled resonant doublet (g = 0 and delta_eps = 0) also returns pi/4.
    """
    if n < 0:
        raise ValueError("photon index must be >= 0")
    d = _delta(params, as_epsilon(eps))
    x = 2.0 * params.g * math.sqrt(n + 1)
    if d == 0.0:
        return math.pi / 4
    return 0.5 * math.atan2(x, d)


def level(params: ModelParams, eps, branch: Branch) -> JcLevel:
    angle = None if branch.kind is Kind.UP0 else mixing_angle(params, eps, branch.n)
    return JcLevel(branch, level_energy(params, eps, branch), angle)


def candidate_count(params: ModelParams, eps) -> int:
    """Largest photon index that can host the ladder ground level (plus slack)."""
    e = as_epsilon(eps)
    return int(math.ceil(params.g**2 / ((1.0 - e) ** 2 * params.omega_c**2))) + 2


def minus_energies(params: ModelParams, eps, n_max: int):
    """``E_{-,n}`` for ``n = 0..n_max`` as a list."""
    e = as_epsilon(eps)
    d = _delta(params, e)
    wc, g2 = (1.0 - e) * params.omega_c, params.g**2
    return [wc * (n + 1) - 0.5 * math.sqrt(d * d + 4.0 * g2 * (n + 1)) for n in range(n_max + 1)]


def ground_over(params: ModelParams, eps, n_cand: int) -> JcGround:
    """Envelope minimum over ``Up0`` and ``Minus(0..n_cand)``.

    ``Up0`` versus ``Minus(n)`` is decided through the exact threshold
    ``g^2`` vs ``G_n^*``; doublet levels are compared by energy.  Ties go to
    the smaller index and are flagged.
    """
    e = as_epsilon(eps)
    d = _delta(params, e)
    wc = (1.0 - e) * params.omega_c
    g2 = params.g**2
    energies = minus_energies(params, e, n_cand)
    best_n = min(range(len(energies)), key=lambda n: (energies[n], n))
    best_e = energies[best_n]
    tie = sum(1 for x in energies if x == best_e) > 1
    # Up0 wins or ties iff g^2 <= G_n^*(eps) for the best doublet level.
    g_star = wc * wc * ((best_n + 1) + d / wc)
    up0 = -0.5 * d + 0.0
    if g2 < g_star:
        return JcGround(up0, -1, False)
    if g2 == g_star:
        return JcGround(up0, -1, True)
    return JcGround(best_e, best_n, tie)


def jc_ground(params: ModelParams, eps) -> JcGround:
    """Ground level of ``H_JC^g(eps)`` by envelope minimisation."""
    return ground_over(params, eps, candidate_count(params, eps))


def chiral_params(params: ModelParams, eps) -> ModelParams:
    """Parameters of the chiral partner ``H_JC^{g/eps}(0)``."""
    e = as_epsilon(eps)
    if e == 0.0:
        raise ValueError("the chiral partner is undefined at epsilon = 0")
    return ModelParams(omega_a=params.omega_a, g=params.g / e, omega_c=params.omega_c)


def chiral_ground(params: ModelParams, eps) -> JcGround:
    """Ground level of ``H_JC^{g/eps}(0)``; its weight in ``E_low`` is ``eps``."""
    return jc_ground(chiral_params(params, eps), 0.0)
