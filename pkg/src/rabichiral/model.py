"""Physical parameters, unit conventions and validation.

All quantities are dimensionless with hbar = 1 and energies measured in
units of the cavity quantum, so ``omega_c`` is 1.0 by convention.

Spin labels follow an uncommon convention that the rest of the package
relies on: ``|down> = (1, 0)^T`` carries sigma_z = +1 (energy +omega_a/2)
and ``|up> = (0, 1)^T`` carries sigma_z = -1 (energy -omega_a/2).  The
noninteracting ground state is therefore ``|up, 0>``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

SPIN_DOWN = 0  # sigma_z = +1
SPIN_UP = 1  # sigma_z = -1


@dataclass(frozen=True)
class ModelParams:
    """Rabi model parameters in units of the cavity frequency.

    Parameters
    ----------
    omega_a : float
        Atomic transition frequency.
    g : float
        Atom-cavity coupling constant.
    omega_c : float, optional
        Cavity frequency, 1.0 by convention.
    """

    omega_a: float = 1.0
    g: float = 0.0
    omega_c: float = 1.0

    def with_g(self, g: float) -> "ModelParams":
        return ModelParams(omega_a=self.omega_a, g=float(g), omega_c=self.omega_c)

    @property
    def resonant(self) -> bool:
        return self.omega_a == self.omega_c


@dataclass(frozen=True)
class EpsilonSplit:
    """Split parameter of the chiral decomposition, ``0 <= epsilon < 1``."""

    epsilon: float

    def __post_init__(self):
        if not (0.0 <= self.epsilon < 1.0):
            raise ValueError(f"epsilon must lie in [0, 1), got {self.epsilon!r}")

    def __float__(self) -> float:
        return float(self.epsilon)


@dataclass(frozen=True)
class Detuning:
    """Detunings ``delta_eps = (1+eps) omega_a - (1-eps) omega_c`` and ``delta_0``."""

    delta_eps: float
    delta_0: float


@dataclass(frozen=True)
class Violation:
    """One violated parameter constraint."""

    field: str
    message: str
    value: float


@dataclass(frozen=True)
class ValidationResult:
    violations: tuple[Violation, ...] = field(default_factory=tuple)

    @property
    def valid(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.valid


def as_epsilon(eps) -> float:
    """Accept an :class:`EpsilonSplit` or a bare float and return the float."""
    if isinstance(eps, EpsilonSplit):
        return eps.epsilon
    value = float(eps)
    if not (0.0 <= value < 1.0):
        raise ValueError(f"epsilon must lie in [0, 1), got {value!r}")
    return value


def validate(params: ModelParams) -> ValidationResult:
    """Check the standing assumptions on the parameters.

    Accepts iff ``g >= 0`` and ``1/2 <= omega_c/omega_a <= 1``.  Every
    violated constraint is reported; nothing is raised.
    """
    out = []
    if not params.g >= 0.0:
        out.append(Violation("g", "coupling must be non-negative", params.g))
    if not params.omega_c > 0.0:
        out.append(Violation("omega_c", "cavity frequency must be positive", params.omega_c))
    if not params.omega_a > 0.0:
        out.append(Violation("omega_a", "atomic frequency must be positive", params.omega_a))
    else:
        ratio = params.omega_c / params.omega_a
        if not (0.5 <= ratio <= 1.0):
            out.append(
                Violation(
                    "omega_c/omega_a",
                    "frequency ratio must satisfy 1/2 <= omega_c/omega_a <= 1",
                    ratio,
                )
            )
    return ValidationResult(tuple(out))


def detuning(params: ModelParams, eps) -> Detuning:
    """Detuning of the modified JC Hamiltonian at split parameter ``eps``."""
    e = as_epsilon(eps)
    wa, wc = params.omega_a, params.omega_c
    return Detuning(delta_eps=(1.0 + e) * wa - (1.0 - e) * wc, delta_0=wa - wc)
