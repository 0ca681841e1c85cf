"""Central numerical tolerance settings shared across the package."""

from dataclasses import dataclass


@dataclass(frozen=True)
class Tolerances:
    """Single knob for every numerical threshold used by the toolkit.

    Property tests tweak one instance instead of hunting for magic numbers.
    """

    hermiticity: float = 1e-10        # max entrywise |M - M^dag|
    trace: float = 1e-10              # |tr(rho) - 1|
    norm: float = 1e-10               # | ||psi||^2 - 1 | for state vectors
    positivity_floor: float = -1e-9   # smallest admissible eigenvalue
    eigen_residual: float = 1e-9      # |M v - lambda v| per eigenpair; also degeneracy gap
    jacobi_off_mass: float = 1e-13    # off-diagonal Frobenius mass at convergence
    jacobi_max_sweeps: int = 100
    support_cutoff: float = 1e-10     # eigenvalue > cutoff counts toward the support
    overlap: float = 1e-9             # support-projector overlap certification
    schmidt: float = 1e-9             # second Schmidt coefficient of a product vector
    zero_eigenvalue: float = 1e-12    # eigenvalues at or below this are 0 inside entropies
    probability_drift: float = 1e-9   # worst admissible normalization drift
    renormalize_drift: float = 1e-12  # drift above this (and below probability_drift) renormalizes
    purity: float = 1e-9              # 1 - tr(rho^2) threshold for pure classification
    max_dim: int = 64                 # total dimension cap for dense operators


DEFAULT = Tolerances()
