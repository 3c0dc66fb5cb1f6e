"""Network parameters, the design tuple, and feasibility checks.

Units are fixed throughout the package: energies in J/symbol, distances in
km, densities per km^2. Watt and dB figures are converted on the way in.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Union


def watts_to_energy_per_symbol(power: float, tau: float) -> float:
    """Convert a power in W to an energy per symbol in J/symbol."""
    if power < 0:
        raise ValueError(f"power must be nonnegative, got {power}")
    if tau <= 0:
        raise ValueError(f"symbol time must be positive, got {tau}")
    return power * tau


def db_to_linear(x: float) -> float:
    return 10.0 ** (x / 10.0)


class Asymptotic:
    """Marker for the limit of infinite BS density."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "ASYMPTOTIC"

    def __reduce__(self):
        return (Asymptotic, ())


ASYMPTOTIC = Asymptotic()

Density = Union[float, Asymptotic]


@dataclass(frozen=True)
class PropagationParams:
    alpha: float = 3.76
    omega: float = 1e13
    noise_var: float = 1e-20
    coherence_symbols: int = 400
    symbol_time: float = 1.0 / 2e7

    def __post_init__(self):
        if not self.alpha > 2:
            raise ValueError(f"pathloss exponent must exceed 2, got {self.alpha}")
        if not self.omega > 0:
            raise ValueError(f"omega must be positive, got {self.omega}")
        if not self.noise_var > 0:
            raise ValueError(f"noise variance must be positive, got {self.noise_var}")
        if int(self.coherence_symbols) != self.coherence_symbols or self.coherence_symbols < 1:
            raise ValueError(f"coherence block must be a positive integer, got {self.coherence_symbols}")
        if not self.symbol_time > 0:
            raise ValueError(f"symbol time must be positive, got {self.symbol_time}")
        object.__setattr__(self, "coherence_symbols", int(self.coherence_symbols))

    @property
    def S(self) -> int:
        return self.coherence_symbols

    @property
    def tau(self) -> float:
        return self.symbol_time


_TAU = 1.0 / 2e7


@dataclass(frozen=True)
class HardwareParams:
    """Amplifier, impairment, and circuit-power coefficients.

    Defaults are the reference values at a 20 MHz symbol rate: 10 W static
    power, 0.1 W per UE, 0.2 W per antenna.
    """

    pa_efficiency: float = 0.39
    impairment_level: float = 0.05
    coding_cost: float = 1.15e-9
    static_power: float = 10.0 * _TAU
    per_ue_power: float = 0.1 * _TAU
    per_antenna_power: float = 0.2 * _TAU
    per_antenna_ue_power: float = 1.56e-10

    def __post_init__(self):
        if not 0 < self.pa_efficiency <= 1:
            raise ValueError(f"amplifier efficiency must lie in (0, 1], got {self.pa_efficiency}")
        if not 0 <= self.impairment_level < 1:
            raise ValueError(f"impairment level must lie in [0, 1), got {self.impairment_level}")
        for name in ("coding_cost", "static_power", "per_ue_power",
                     "per_antenna_power", "per_antenna_ue_power"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be nonnegative")

    # short aliases matching the usual symbols
    eta = property(lambda self: self.pa_efficiency)
    epsilon = property(lambda self: self.impairment_level)
    A = property(lambda self: self.coding_cost)
    C0 = property(lambda self: self.static_power)
    C1 = property(lambda self: self.per_ue_power)
    D0 = property(lambda self: self.per_antenna_power)
    D1 = property(lambda self: self.per_antenna_ue_power)


@dataclass(frozen=True)
class DesignPoint:
    """The tuple (beta, rho, lambda, M, K).

    ``lam`` is either a finite density or ``ASYMPTOTIC``; passing ``math.inf``
    is accepted and normalized to the marker. ``beta=None`` asks for the
    reuse factor that meets a given target exactly. Construction does not enforce
    feasibility so that :func:`validate_design` can report every violation.
    """

    beta: Optional[float]
    rho: float
    lam: Density
    M: int
    K: int

    def __post_init__(self):
        if isinstance(self.lam, float) and math.isinf(self.lam) and self.lam > 0:
            object.__setattr__(self, "lam", ASYMPTOTIC)

    @property
    def is_asymptotic(self) -> bool:
        return self.lam is ASYMPTOTIC

    def inv_snr(self, noise_var: float) -> float:
        """sigma^2 / rho, with 0 in the dense limit and +inf for rho = 0."""
        if self.is_asymptotic:
            return 0.0
        if self.rho == 0:
            return math.inf
        return noise_var / self.rho


@dataclass(frozen=True)
class Validation:
    violations: tuple[str, ...] = field(default_factory=tuple)

    @property
    def valid(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.valid


def _is_positive_int(x) -> bool:
    try:
        return int(x) == x and x >= 1
    except (TypeError, ValueError, OverflowError):
        return False


def validate_design(point: DesignPoint, params: PropagationParams) -> Validation:
    """Check membership in the feasible set, listing every violated constraint."""
    out = []
    if point.beta is None:
        out.append("beta is unspecified")
    elif not point.beta >= 1:
        out.append(f"beta={point.beta} < 1")
    if not point.rho >= 0:
        out.append(f"rho={point.rho} < 0")
    if not point.is_asymptotic and not point.lam >= 0:
        out.append(f"lambda={point.lam} < 0")
    if not _is_positive_int(point.M):
        out.append(f"M={point.M} is not a positive integer")
    if not _is_positive_int(point.K):
        out.append(f"K={point.K} is not a positive integer")
    load = (point.beta or 0.0) * point.K
    if load > params.S:
        out.append(f"beta*K={load:g} exceeds S={params.S}")
    return Validation(tuple(out))


@dataclass(frozen=True)
class SinrTarget:
    gamma: float

    def __post_init__(self):
        if not self.gamma > 0:
            raise ValueError(f"SINR target must be positive, got {self.gamma}")

    @property
    def se_target(self) -> float:
        """Average SE in bit/symbol/user implied by the target."""
        return math.log2(1.0 + self.gamma)

    def check(self, params: PropagationParams, epsilon: float) -> None:
        """Raise :class:`InfeasibleTarget` unless the target is attainable."""
        from .se import feasibility_limit

        limit = feasibility_limit(params.S, params.alpha, epsilon)
        if not self.gamma < limit:
            raise InfeasibleTarget(self.gamma, limit)


@dataclass(frozen=True)
class FixedDensityConstraint:
    """UE density mu (UE/km^2) tying the BS density to the load: mu = K * lambda."""

    mu: float

    def __post_init__(self):
        if not self.mu > 0:
            raise ValueError(f"UE density must be positive, got {self.mu}")

    def density_for(self, K: float) -> float:
        return self.mu / K


class InfeasibleError(ValueError):
    """A design or target lies outside the feasible region."""


class InfeasibleTarget(InfeasibleError):
    def __init__(self, gamma: float, limit: float):
        self.gamma = gamma
        self.limit = limit
        super().__init__(f"SINR target {gamma:g} is infeasible; it must be below {limit:.6g}")
