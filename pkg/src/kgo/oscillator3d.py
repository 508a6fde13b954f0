"""Three-dimensional Klein-Gordon oscillator: radial solutions, spectrum
and degeneracy, full eigenfunctions, radial orthonormality/closure
machinery, and the spherical-harmonic completeness kernel.

After separation Psi = (R(r)/r) Y_ell^m(rhat), the reduced radial
problem

    [-d^2/dr^2 + ell(ell+1)/r^2 + m^2 w^2 r^2] R = (E^2 - m^2 + 3 m w) R

has the normalized solutions

    R_{n_r ell}(r) = sqrt(2 lambda^(2 ell + 3) n_r! / Gamma(n_r+ell+3/2))
                     r^(ell+1) e^(-lambda^2 r^2 / 2)
                     L_{n_r}^(ell+1/2)(lambda^2 r^2)

with principal quantum number N = 2 n_r + ell.  All radial integrals are
carried out in rho = lambda^2 r^2, where products of radial functions
are polynomials against the Laguerre weight rho^(ell+1/2) e^(-rho), so
Gauss-Laguerre rules of sufficient size are exact up to rounding.

None of the closure/projection operations here takes an energy: spatial
completeness is a property of the eigenfunctions alone, and the
interfaces keep it that way.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import IntegrandError, QuadratureError
from .oscillator1d import Branch, OscillatorParams, SpectralProjection, SpectrumConvention
from .quadrature import GAUSS_LAGUERRE, QuadratureRule, gauss_legendre
from .special import (
    AngularPoint,
    laguerre_function,
    laguerre_function_table,
    legendre_p,
    log_gamma,
    sph_harm,
    sph_harm_all,
)

__all__ = [
    "MAX_ELL",
    "RadialMode",
    "Mode3D",
    "Point3",
    "radial_mode",
    "energy_3d",
    "degeneracy",
    "shell_modes",
    "radial_eigenfunction",
    "radial_gram",
    "radial_closure_kernel",
    "project_radial",
    "reconstruct_radial",
    "full_eigenfunction",
    "full_eigenfunction_origin",
    "angular_kernel",
    "angular_kernel_addition",
    "angular_product_grid",
]

MAX_ELL = 64
MAX_RADIAL_ORDER = 200


@dataclass(frozen=True)
class RadialMode:
    """Radial and orbital quantum numbers with N = 2 n_r + ell derived."""

    n_r: int
    ell: int
    N: int
    branch: Branch

    def __post_init__(self):
        if self.n_r < 0 or self.ell < 0:
            raise ValueError("n_r and ell must be >= 0")
        if self.N != 2 * self.n_r + self.ell:
            raise ValueError("N must equal 2 n_r + ell")


def radial_mode(n_r: int, ell: int, branch: Branch = Branch.POSITIVE) -> RadialMode:
    return RadialMode(n_r=n_r, ell=ell, N=2 * n_r + ell, branch=branch)


@dataclass(frozen=True)
class Mode3D:
    """Full index (n_r, ell, m) of a three-dimensional eigenfunction."""

    radial: RadialMode
    m: int

    def __post_init__(self):
        if abs(self.m) > self.radial.ell:
            raise ValueError(f"|m| = {abs(self.m)} exceeds ell = {self.radial.ell}")


@dataclass(frozen=True)
class Point3:
    """Spherical-coordinate point: radius plus direction."""

    r: float
    angular: AngularPoint

    def __post_init__(self):
        if self.r < 0:
            raise ValueError("r must be >= 0")


def energy_3d(params: OscillatorParams, N: int, branch: Branch) -> float:
    """Branch-signed energy of shell N under the configured convention:
    ode-derived E^2 = m^2 + 2 m w N, as-printed E^2 = m^2 + m w (2N + 3)."""
    if N < 0:
        raise ValueError("N must be >= 0")
    m, w = params.mass, params.frequency
    if params.convention is SpectrumConvention.ODE_DERIVED:
        esq = m * m + 2.0 * m * w * N
    else:
        esq = m * m + m * w * (2 * N + 3)
    return branch.sign * math.sqrt(esq)


def degeneracy(N: int) -> int:
    """Number of (ell, m) states in shell N: (N+1)(N+2)/2."""
    if N < 0:
        raise ValueError("N must be >= 0")
    return (N + 1) * (N + 2) // 2


def shell_modes(N: int) -> list[tuple[int, int]]:
    """All (n_r, ell) with 2 n_r + ell = N, sorted by descending ell."""
    if N < 0:
        raise ValueError("N must be >= 0")
    return [((N - ell) // 2, ell) for ell in range(N, -1, -2)]


def _check_radial_order(n_r, ell):
    if not 0 <= ell <= MAX_ELL:
        raise ValueError(f"ell must lie in [0, {MAX_ELL}], got {ell}")
    if not 0 <= n_r <= MAX_RADIAL_ORDER:
        raise ValueError(f"n_r must lie in [0, {MAX_RADIAL_ORDER}], got {n_r}")


def radial_eigenfunction(params: OscillatorParams, n_r: int, ell: int, r):
    """Normalized reduced radial eigenfunction R_{n_r ell}(r); R(0) = 0.

    Evaluated as sqrt(2 lambda) rho^(1/4) lf_{n_r}^(ell+1/2)(rho) with
    rho = lambda^2 r^2 and lf the normalized Laguerre function, which
    keeps every factor bounded.  Accepts a scalar or an ndarray.
    """
    _check_radial_order(n_r, ell)
    lam = params.lam
    rho = np.asarray(r, dtype=float) ** 2 * lam * lam
    return math.sqrt(2.0 * lam) * rho**0.25 * laguerre_function(n_r, ell + 0.5, rho)


def _radial_table(params: OscillatorParams, ell: int, n_max: int, r) -> np.ndarray:
    lam = params.lam
    rho = np.atleast_1d(np.asarray(r, dtype=float)) ** 2 * lam * lam
    return math.sqrt(2.0 * lam) * rho**0.25 * laguerre_function_table(n_max, ell + 0.5, rho)


def _require_laguerre(rule: QuadratureRule, ell: int, min_count: int):
    if rule.family != GAUSS_LAGUERRE:
        raise QuadratureError(f"need a Gauss-Laguerre rule, got {rule.family}")
    if rule.alpha != ell + 0.5:
        raise QuadratureError(
            f"rule has alpha = {rule.alpha} but the ell = {ell} sector requires "
            f"alpha = {ell + 0.5}"
        )
    if rule.count < min_count:
        raise QuadratureError(
            f"rule has {rule.count} nodes but {min_count} are required for an "
            "exact result; refusing to return a silently inexact value"
        )


def radial_gram(params: OscillatorParams, ell: int, n_max: int, rule: QuadratureRule) -> np.ndarray:
    """Matrix of radial inner products integral R_i R_j dr for i, j <= n_max.

    In rho = lambda^2 r^2 the integrand is exactly the product of two
    normalized Laguerre functions, so an alpha = ell + 1/2 rule with
    count >= n_max + 1 reproduces the identity up to rounding.
    """
    _check_radial_order(n_max, ell)
    _require_laguerre(rule, ell, n_max + 1)
    table = laguerre_function_table(n_max, ell + 0.5, rule.nodes)
    wt = rule.modified_weights
    gram = np.empty((n_max + 1, n_max + 1))
    for i in range(n_max + 1):
        wrow = wt * table[i]
        for j in range(i, n_max + 1):
            gram[i, j] = gram[j, i] = math.fsum(wrow * table[j])
    return gram


def radial_closure_kernel(params: OscillatorParams, ell: int, N_max: int, r: float, r2: float) -> float:
    """Truncated radial closure kernel sum_{n_r<=N_max} R(r) R(r'),
    accumulated with compensated summation."""
    _check_radial_order(N_max, ell)
    table = _radial_table(params, ell, N_max, np.array([r, r2]))
    return math.fsum(table[:, 0] * table[:, 1])


def project_radial(params: OscillatorParams, ell: int, N_max: int, f, rule: QuadratureRule) -> SpectralProjection:
    """Radial coefficients c_{n_r} = integral R_{n_r ell} f dr for
    n_r = 0..N_max, by Gauss-Laguerre quadrature in rho."""
    _check_radial_order(N_max, ell)
    _require_laguerre(rule, ell, N_max + 1)
    lam = params.lam
    r_nodes = np.sqrt(rule.nodes) / lam
    fx = np.array([float(f(r)) for r in r_nodes])
    if not np.all(np.isfinite(fx)):
        bad = r_nodes[~np.isfinite(fx)][0]
        raise IntegrandError(f"projected function is not finite at r = {bad!r}")
    table = laguerre_function_table(N_max, ell + 0.5, rule.nodes)
    # dr = drho / (2 lambda sqrt(rho)); R = sqrt(2 lambda) rho^(1/4) lf
    wfx = rule.modified_weights * fx / (math.sqrt(2.0 * lam) * rule.nodes**0.25)
    coeffs = np.array([math.fsum(table[n] * wfx) for n in range(N_max + 1)])
    return SpectralProjection(
        coefficients=coeffs,
        truncation=N_max,
        params=params,
        quadrature_count=rule.count,
        ell=ell,
    )


def reconstruct_radial(projection: SpectralProjection, r):
    """Evaluate sum_{n_r} c_{n_r} R_{n_r ell}(r) with compensated summation.

    Accepts a scalar or an ndarray; the projection must carry its ell.
    """
    if projection.ell is None:
        raise ValueError("projection does not carry an ell sector")
    arr = np.atleast_1d(np.asarray(r, dtype=float))
    table = _radial_table(projection.params, projection.ell, projection.truncation, arr)
    c = projection.coefficients
    out = np.array([math.fsum(c * table[:, j]) for j in range(arr.size)])
    out = out.reshape(np.shape(r))
    return float(out) if np.ndim(r) == 0 else out


def full_eigenfunction(params: OscillatorParams, mode: Mode3D, p: Point3) -> complex:
    """Full eigenfunction Psi = (R_{n_r ell}(r)/r) Y_ell^m(rhat).

    The quotient form requires r > 0; for the finite ell = 0 limit at the
    origin use :func:`full_eigenfunction_origin`.
    """
    if p.r <= 0:
        raise ValueError("full_eigenfunction requires r > 0 (see full_eigenfunction_origin)")
    radial = radial_eigenfunction(params, mode.radial.n_r, mode.radial.ell, p.r) / p.r
    return radial * sph_harm(mode.radial.ell, mode.m, p.angular)


def full_eigenfunction_origin(params: OscillatorParams, n_r: int) -> complex:
    """Value of Psi_{n_r, 0, 0} at the origin (the only finite-limit case):
    lim_{r->0} R_{n_r 0}(r)/r times Y_0^0."""
    _check_radial_order(n_r, 0)
    lam = params.lam
    # R/r -> sqrt(2 lambda^3 n_r!/Gamma(n_r+3/2)) L_{n_r}^(1/2)(0) and
    # L_{n_r}^(1/2)(0) = Gamma(n_r+3/2)/(n_r! Gamma(3/2))
    log_l0 = log_gamma(n_r + 1.5) - log_gamma(n_r + 1.0) - log_gamma(1.5)
    limit = math.sqrt(2.0 * lam**3) * math.exp(
        0.5 * (log_gamma(n_r + 1.0) - log_gamma(n_r + 1.5)) + log_l0
    )
    return complex(limit / math.sqrt(4.0 * math.pi))


def angular_kernel(ell_max: int, a: AngularPoint, b: AngularPoint) -> float:
    """Truncated spherical-harmonic completeness kernel
    sum_{ell<=ell_max} sum_m Y_ell^m(a) conj(Y_ell^m(b)) by the direct
    m-sum (the m and -m terms pair into conjugates, so the sum is real)."""
    ya = sph_harm_all(ell_max, a)
    yb = sph_harm_all(ell_max, b)
    terms = np.concatenate([ya[ell] * np.conj(yb[ell]) for ell in range(ell_max + 1)])
    return math.fsum(terms.real)


def angular_kernel_addition(ell_max: int, a: AngularPoint, b: AngularPoint) -> float:
    """Same kernel through the Legendre addition theorem:
    sum_ell (2 ell + 1)/(4 pi) P_ell(cos gamma) with gamma the angle
    between the two directions."""
    cos_gamma = math.cos(a.theta) * math.cos(b.theta) + math.sin(a.theta) * math.sin(
        b.theta
    ) * math.cos(a.phi - b.phi)
    cos_gamma = min(1.0, max(-1.0, cos_gamma))
    terms = [
        (2 * ell + 1) / (4.0 * math.pi) * legendre_p(ell, cos_gamma)
        for ell in range(ell_max + 1)
    ]
    return math.fsum(terms)


def angular_product_grid(n_theta: int, n_phi: int):
    """Quadrature grid over the unit sphere: Gauss-Legendre in cos(theta)
    crossed with a uniform (trapezoid) rule in phi, exact for
    spherical-harmonic products of bandwidth below the rule sizes.

    Returns flat arrays (theta, phi, weight) with sum(weight) = 4 pi.
    """
    gl = gauss_legendre(n_theta, -1.0, 1.0)
    theta = np.arccos(gl.nodes)
    phi = 2.0 * math.pi * np.arange(n_phi) / n_phi
    th_grid, ph_grid = np.meshgrid(theta, phi, indexing="ij")
    w_grid = np.broadcast_to((gl.weights * (2.0 * math.pi / n_phi))[:, None], th_grid.shape)
    return th_grid.ravel(), ph_grid.ravel(), w_grid.ravel().copy()
