"""Global numerical policy: kernel cutoff, gate tolerances, identifiers.

Every eigenvalue whose magnitude falls at or below ``eps_rel * spectral_radius``
is treated as an exact zero of the operator (the "kernel convention"): scalar
functions applied through the functional calculus send those directions to the
declared f(0) value.  The cutoff is configurable per call, through the
``NCLP_EPS_REL`` environment variable, or falls back to ``DEFAULT_EPS_REL``.
"""

from __future__ import annotations

import os

DEFAULT_EPS_REL = 1e-12
EPS_REL_ENV = "NCLP_EPS_REL"

# Inputs expected Hermitian are symmetrized when within this relative distance
# of their adjoint; beyond it they are rejected.
HERMITIAN_TOL = 1e-8

# Eigenvalues of PSD-expected inputs in [-PSD_CLIP_TOL * radius, 0) clip to 0;
# anything lower is rejected as genuinely non-PSD.
PSD_CLIP_TOL = 1e-10

# Reference functionals used for interpolation-space specs must satisfy
# min_eig >= FAITHFULNESS_FLOOR * max_eig, else negative powers amplify noise
# beyond the advertised residuals.
FAITHFULNESS_FLOOR = 1e-13

# Orthogonal-support preconditions are checked against this Frobenius budget.
SUPPORT_TOL = 1e-8

EIGENSOLVER_ID = "numpy.linalg.eigh/svd (LAPACK)"
PRNG_ID = "numpy PCG64 (default_rng)"
LOG_BASE = "nat"


def default_eps_rel() -> float:
    """Resolve the kernel cutoff from the environment, else the default."""
    raw = os.environ.get(EPS_REL_ENV, "")
    if raw:
        value = float(raw)
        if value <= 0:
            raise ValueError(f"{EPS_REL_ENV} must be positive, got {raw}")
        return value
    return DEFAULT_EPS_REL


def resolve_eps_rel(eps_rel: float | None) -> float:
    return default_eps_rel() if eps_rel is None else float(eps_rel)
