"""Discretized 1+1D free-fermion model: momentum grid, dispersion, spinors.

Everything downstream lives on a periodic box of length L = 2*pi/delta_p
with plane waves exp(i*p_j*z)/sqrt(L), where p_j = j*delta_p for
j = -n_max .. +n_max (the p = 0 mode is kept; its energy is m > 0).
With this normalization every spatial integral of a box harmonic over
[0, L] is exact, so the operator identities checked by the rest of the
package carry no quadrature error at all.

Spinors are two-component eigenvectors of the single-particle operator

    h(p) = sigma_x * p + sigma_z * m

with eigenvalue lam * E_p, E_p = +sqrt(p^2 + m^2) and lam = +-1 the sign
of the energy.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SIGMA_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
ID2 = np.eye(2, dtype=complex)


@dataclass(frozen=True)
class LatticeConfig:
    """Finite momentum-space model: mass, grid spacing and cutoff index.

    mass     -- fermion mass m > 0 (energy units)
    delta_p  -- momentum spacing between adjacent modes, > 0
    n_max    -- largest mode index; modes are j = -n_max .. +n_max
    """

    mass: float
    delta_p: float
    n_max: int

    def __post_init__(self):
        if not self.mass > 0:
            raise ValueError(f"mass must be positive, got {self.mass}")
        if not self.delta_p > 0:
            raise ValueError(f"delta_p must be positive, got {self.delta_p}")
        if self.n_max < 1:
            raise ValueError(f"n_max must be >= 1, got {self.n_max}")

    @property
    def box_length(self) -> float:
        """Period L of the spatial box, L = 2*pi/delta_p."""
        return 2.0 * math.pi / self.delta_p

    @property
    def cutoff(self) -> float:
        """Largest momentum on the grid, n_max * delta_p."""
        return self.n_max * self.delta_p

    @property
    def n_modes(self) -> int:
        """Number of modes per species, 2*n_max + 1."""
        return 2 * self.n_max + 1

    def momentum(self, j: int) -> float:
        if abs(j) > self.n_max:
            raise ValueError(f"mode index {j} out of range [-{self.n_max}, {self.n_max}]")
        return j * self.delta_p

    def mode_indices(self) -> range:
        return range(-self.n_max, self.n_max + 1)


def dispersion(p: float, m: float) -> float:
    """Single-particle energy +sqrt(p^2 + m^2); even in p and >= m."""
    if not m > 0:
        raise ValueError(f"mass must be positive, got {m}")
    return math.hypot(p, m)


@dataclass(frozen=True)
class ModeSpinor:
    """One (lam, p) mode: energy, momentum and its unit spinor.

    Satisfies (sigma_x*p + sigma_z*m) u = lam * energy * u with u'u = 1.
    """

    lam: int
    j: int
    p: float
    energy: float
    u: np.ndarray


def spinor(lam: int, j: int, cfg: LatticeConfig) -> ModeSpinor:
    """Unit-normalized energy eigenspinor for mode j and energy sign lam.

    For lam = +1 this is the textbook column (1, p/(E+m)) normalized to
    one.  For lam = -1 the rationalized column (-p/(E+m), 1) is used: it
    is finite at p = 0 and differs from the textbook -1 column only by
    the momentum-sign phase -sign(p), a per-mode canonical phase that no
    quantity computed in this package can see.
    """
    if lam not in (+1, -1):
        raise ValueError(f"energy sign must be +1 or -1, got {lam}")
    p = cfg.momentum(j)
    m = cfg.mass
    energy = dispersion(p, m)
    norm = math.sqrt((energy + m) / (2.0 * energy))
    w = p / (energy + m)
    if lam == +1:
        u = np.array([1.0, w], dtype=complex) * norm
    else:
        u = np.array([-w, 1.0], dtype=complex) * norm
    return ModeSpinor(lam=lam, j=j, p=p, energy=energy, u=u)


def mode_function(lam: int, j: int, z: float, cfg: LatticeConfig) -> np.ndarray:
    """Plane-wave mode u_{lam,p_j} * exp(i p_j z) / sqrt(L) at position z."""
    sp = spinor(lam, j, cfg)
    phase = np.exp(1j * sp.p * z) / math.sqrt(cfg.box_length)
    return sp.u * phase


def mode_overlap(lam1: int, j1: int, lam2: int, j2: int, cfg: LatticeConfig) -> complex:
    """Exact box integral of mode_function(lam1,j1)' . mode_function(lam2,j2).

    The z-integral of exp(i(p_j2 - p_j1)z) over one period is L*delta_{j1,j2},
    so the overlap reduces to the spinor inner product at equal momentum.
    """
    if j1 != j2:
        return 0.0 + 0.0j
    u1 = spinor(lam1, j1, cfg).u
    u2 = spinor(lam2, j2, cfg).u
    return complex(np.vdot(u1, u2))
