"""
Numeric thresholds shared by every computation.
Tune values here without touching the geometry or symmetry code.
"""
from dataclasses import dataclass


@dataclass(frozen=True)
class Tolerances:
    """One record of every tolerance used by the library."""

    det: float = 1e-12               # |det A| below this is singular
    symmetry: float = 1e-10          # torsion-free test
    signature_rel: float = 1e-9      # degeneracy band, relative to spectral radius
    signature_floor: float = 1e-12   # absolute floor of the degeneracy band
    jacobi_offdiag: float = 1e-14    # Jacobi stops when off-diagonal norm < this * scale
    jacobi_max_sweeps: int = 100
    generic: float = 1e-10           # genericity threshold, scaled by Hadamard bounds
    rank: float = 1e-8               # SVD nullity cut, relative to sigma_max
    fixed: float = 1e-9              # is_fixed, scaled by 1 + max|Γ|
    order: float = 1e-9              # order_of: ||A^n - I||_inf
    support: float = 1e-12           # support pattern cut, scaled by max(1, max|Γ|)
    scan_residual: float = 1e-8      # accepted scan minimizers, scaled by 1 + max|Γ|
    scan_dedup: float = 1e-6         # max-norm distance between distinct scan results
    imag_residue: float = 1e-12      # realify output must be real up to this


DEFAULT_TOLERANCES = Tolerances()

# order_of gives up after this many powers
MAX_ORDER = 256

# Default number of multi-start restarts for the finite symmetry scan
SCAN_RESTARTS = 200
