"""Front speeds, effective Hamiltonians and positivity experiments for reactive kinetic models."""

from ._core import (
    ConvergenceError,
    SimulationError,
    __version__,
    front_radius,
    hamiltonian,
    hamiltonian_branch,
    hydro_limit_residual,
    legendre,
    negativity_probe,
    phase_diagram,
    phi,
    phi_power,
    second_moment,
    simulate_1d,
    speed,
    telegraph_bound_check_1d,
    telegraph_negativity_2d,
)

__all__ = [
    "ConvergenceError",
    "SimulationError",
    "__version__",
    "front_radius",
    "hamiltonian",
    "hamiltonian_branch",
    "hydro_limit_residual",
    "legendre",
    "negativity_probe",
    "phase_diagram",
    "phi",
    "phi_power",
    "second_moment",
    "simulate_1d",
    "speed",
    "telegraph_bound_check_1d",
    "telegraph_negativity_2d",
]
