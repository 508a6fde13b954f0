"""One-dimensional Klein-Gordon oscillator: spectrum, normalized
eigenfunctions, Feshbach-Villars components, orthonormality checks,
truncated closure kernels, and projection/reconstruction operators.

The squared-energy eigenproblem

    [-d^2/dx^2 + m^2 w^2 x^2 - m w] psi = (E^2 - m^2) psi

is the non-relativistic harmonic oscillator in disguise, so the
eigenfunctions are psi_n(x) = sqrt(lambda) h_n(lambda x) with
lambda = sqrt(m w) and h_n the normalized Hermite functions.  Two
spectrum conventions circulate for the same eigenproblem and are kept
behind a flag:

* ``ode-derived`` (default): E^2 = m^2 + 2 m w n, the unique value
  consistent with the differential operator above (its harmonic-form
  right-hand side must equal 2n).
* ``as-printed``: E^2 = m^2 + m w (2n + 1), the closed form commonly
  quoted for this model.

The finite-difference residual check :func:`ode_residual_1d` lets the
two be adjudicated numerically.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import IntegrandError, QuadratureError
from .quadrature import GAUSS_HERMITE, QuadratureRule
from .special import hermite_function, hermite_function_table

__all__ = [
    "SpectrumConvention",
    "Branch",
    "OscillatorParams",
    "Mode1D",
    "SpectralProjection",
    "mode_1d",
    "energy_1d",
    "nonrel_energy",
    "eigenfunction_1d",
    "fv_components",
    "gram_matrix_1d",
    "closure_kernel_1d",
    "project_1d",
    "reconstruct_1d",
    "ode_residual_1d",
]


class SpectrumConvention(enum.Enum):
    """Which closed form supplies E_n^2 (see module docstring)."""

    ODE_DERIVED = "ode-derived"
    AS_PRINTED = "as-printed"


class Branch(enum.Enum):
    """Sign of the energy: the spectrum is two-sheeted, E = +-|E_n|."""

    POSITIVE = "positive"
    NEGATIVE = "negative"

    @property
    def sign(self) -> float:
        return 1.0 if self is Branch.POSITIVE else -1.0


@dataclass(frozen=True)
class OscillatorParams:
    """Oscillator configuration in natural units (hbar = c = 1)."""

    mass: float
    frequency: float
    convention: SpectrumConvention = SpectrumConvention.ODE_DERIVED

    def __post_init__(self):
        if not self.mass > 0:
            raise ValueError(f"mass must be positive, got {self.mass}")
        if not self.frequency > 0:
            raise ValueError(f"frequency must be positive, got {self.frequency}")

    @property
    def lam(self) -> float:
        """Inverse oscillator length lambda = sqrt(mass * frequency)."""
        return math.sqrt(self.mass * self.frequency)


@dataclass(frozen=True)
class Mode1D:
    """Quantum number, energy branch, and the branch-signed energy."""

    n: int
    branch: Branch
    energy: float

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("n must be >= 0")
        if self.energy * self.branch.sign < 0:
            raise ValueError("energy sign must match the branch")


@dataclass(frozen=True)
class SpectralProjection:
    """Coefficients of a function in a truncated eigenbasis.

    ``ell`` is None for 1D projections and carries the angular-momentum
    sector for radial ones (needed to reconstruct).
    """

    coefficients: np.ndarray
    truncation: int
    params: OscillatorParams
    quadrature_count: int
    ell: int | None = None

    def __post_init__(self):
        if len(self.coefficients) != self.truncation + 1:
            raise ValueError("coefficient count must equal truncation + 1")


def energy_1d(params: OscillatorParams, n: int, branch: Branch) -> float:
    """Branch-signed energy of level n under the configured convention."""
    if n < 0:
        raise ValueError("n must be >= 0")
    m, w = params.mass, params.frequency
    if params.convention is SpectrumConvention.ODE_DERIVED:
        esq = m * m + 2.0 * m * w * n
    else:
        esq = m * m + m * w * (2 * n + 1)
    return branch.sign * math.sqrt(esq)


def mode_1d(params: OscillatorParams, n: int, branch: Branch) -> Mode1D:
    return Mode1D(n=n, branch=branch, energy=energy_1d(params, n, branch))


def nonrel_energy(params: OscillatorParams, n: int) -> float:
    """Non-relativistic limit value m + w (n + 1/2) of the positive branch."""
    if n < 0:
        raise ValueError("n must be >= 0")
    return params.mass + params.frequency * (n + 0.5)


def eigenfunction_1d(params: OscillatorParams, n: int, x):
    """Normalized eigenfunction psi_n(x) = sqrt(lambda) h_n(lambda x).

    Accepts a scalar or an ndarray.  Beyond |lambda x| ~ 38 the value
    underflows to 0 (the Gaussian factor is below the double range).
    """
    lam = params.lam
    return math.sqrt(lam) * hermite_function(n, np.asarray(x, dtype=float) * lam)


def _eigenfunction_table(params: OscillatorParams, n_max: int, x) -> np.ndarray:
    lam = params.lam
    return math.sqrt(lam) * hermite_function_table(n_max, lam * np.atleast_1d(np.asarray(x, dtype=float)))


def fv_components(params: OscillatorParams, mode: Mode1D, x):
    """Feshbach-Villars components of the two-component state:
    phi = (1 + 1/E)/2 psi_n, chi = (1 - 1/E)/2 psi_n, so phi + chi = psi_n.

    The coefficients are used exactly in this 1/E form (note they add a
    pure number to an inverse energy; the convention is kept as is rather
    than silently rescaled to E/m).  E = 0 is a domain error.
    """
    if mode.energy == 0.0:
        raise ValueError("Feshbach-Villars split is undefined at zero energy")
    psi = eigenfunction_1d(params, mode.n, x)
    inv = 1.0 / mode.energy
    return 0.5 * (1.0 + inv) * psi, 0.5 * (1.0 - inv) * psi


def _require_hermite(rule: QuadratureRule, min_count: int):
    if rule.family != GAUSS_HERMITE:
        raise QuadratureError(f"need a Gauss-Hermite rule, got {rule.family}")
    if rule.count < min_count:
        raise QuadratureError(
            f"rule has {rule.count} nodes but {min_count} are required for an "
            "exact result; refusing to return a silently inexact value"
        )


def gram_matrix_1d(params: OscillatorParams, n_max: int, rule: QuadratureRule) -> np.ndarray:
    """Matrix of inner products <psi_i, psi_j> for i, j <= n_max.

    Computed in the dimensionless variable xi = lambda x, where the
    integrand is polynomial times the Hermite weight, so a rule with
    count >= n_max + 1 is exact up to rounding and the result must be the
    identity matrix.
    """
    _require_hermite(rule, n_max + 1)
    table = hermite_function_table(n_max, rule.nodes)
    wt = rule.modified_weights
    gram = np.empty((n_max + 1, n_max + 1))
    for i in range(n_max + 1):
        wrow = wt * table[i]
        for j in range(i, n_max + 1):
            gram[i, j] = gram[j, i] = math.fsum(wrow * table[j])
    return gram


def closure_kernel_1d(params: OscillatorParams, N: int, x: float, x2: float) -> float:
    """Truncated closure kernel K_N(x, x') = sum_{n<=N} psi_n(x) psi_n(x'),
    accumulated with compensated summation."""
    if N < 0:
        raise ValueError("N must be >= 0")
    table = _eigenfunction_table(params, N, np.array([x, x2]))
    return math.fsum(table[:, 0] * table[:, 1])


def project_1d(params: OscillatorParams, N: int, f, rule: QuadratureRule) -> SpectralProjection:
    """Coefficients c_n = <psi_n, f> for n = 0..N by Gauss-Hermite
    quadrature in xi = lambda x."""
    _require_hermite(rule, N + 1)
    lam = params.lam
    fx = np.array([float(f(x)) for x in rule.nodes / lam])
    if not np.all(np.isfinite(fx)):
        bad = rule.nodes[~np.isfinite(fx)][0] / lam
        raise IntegrandError(f"projected function is not finite at x = {bad!r}")
    table = hermite_function_table(N, rule.nodes)
    wfx = rule.modified_weights * fx / math.sqrt(lam)
    coeffs = np.array([math.fsum(table[n] * wfx) for n in range(N + 1)])
    return SpectralProjection(
        coefficients=coeffs, truncation=N, params=params, quadrature_count=rule.count
    )


def reconstruct_1d(projection: SpectralProjection, x):
    """Evaluate sum_n c_n psi_n(x) with compensated summation.

    Accepts a scalar or an ndarray.
    """
    arr = np.atleast_1d(np.asarray(x, dtype=float))
    table = _eigenfunction_table(projection.params, projection.truncation, arr)
    c = projection.coefficients
    out = np.array([math.fsum(c * table[:, j]) for j in range(arr.size)])
    out = out.reshape(np.shape(x))
    return float(out) if np.ndim(x) == 0 else out


def ode_residual_1d(params: OscillatorParams, n: int, grid, h: float) -> float:
    """Max residual of the squared-energy eigenproblem on a uniform grid:

        | -D2_h psi_n + (m^2 w^2 x^2 - m w) psi_n - (E_n^2 - m^2) psi_n |

    with D2_h the central second difference and E_n taken from the
    params' convention.  O(h^2) for the ode-derived convention; bounded
    away from zero (at the m*w*|psi_n| scale) for the other one.
    """
    grid = np.asarray(grid, dtype=float)
    if grid.size < 3:
        raise ValueError("grid needs at least 3 points")
    m, w = params.mass, params.frequency
    psi = eigenfunction_1d(params, n, grid)
    d2 = (psi[:-2] - 2.0 * psi[1:-1] + psi[2:]) / (h * h)
    esq = energy_1d(params, n, Branch.POSITIVE) ** 2
    x_in = grid[1:-1]
    resid = -d2 + (m * m * w * w * x_in * x_in - m * w) * psi[1:-1] - (esq - m * m) * psi[1:-1]
    return float(np.max(np.abs(resid)))
