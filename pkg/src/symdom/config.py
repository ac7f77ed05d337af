"""Numerical tolerances shared by every module.

The default relative tolerance can be overridden with the ``SYMDOM_TOL``
environment variable; individual calls accept an explicit ``tol``.
"""

import os

#: relative tolerance for tripotent/orthogonality/order decisions
DEFAULT_TOL = 1e-8

#: eigenvalue floor used before inverse square roots
EIG_FLOOR = 1e-14

#: largest change the floor may make before it counts as an error
EIG_CLAMP_LIMIT = 1e-10

#: singular values below this are treated as zero in decompositions
SVD_CUTOFF = 1e-12

#: arguments of tanh^{-1} are clamped here
ATANH_CLAMP = 1.0 - 1e-15

#: closed-form Gromov products are reported infinite below this norm
GROMOV_ZERO = 1e-10

#: numeric limits above this value are reported divergent
DIVERGENCE_CUTOFF = 8.0


def default_tol():
    """Return the active default tolerance (``SYMDOM_TOL`` or 1e-8)."""
    raw = os.environ.get("SYMDOM_TOL")
    if raw is None:
        return DEFAULT_TOL
    value = float(raw)
    if not value > 0:
        raise ValueError(f"SYMDOM_TOL must be positive, got {raw!r}")
    return value


def resolve_tol(tol):
    return default_tol() if tol is None else float(tol)
