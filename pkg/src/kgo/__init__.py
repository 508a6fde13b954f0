"""Klein-Gordon oscillator eigenbasis toolkit.

Numerical library plus CLI for the spin-0 relativistic oscillator in one
and three spatial dimensions: spectra under both circulating conventions,
normalized eigenfunctions, Feshbach-Villars components, quadrature-exact
orthonormality checks, weak (reproducing) verification of the closure
relations, the spherical-harmonic completeness kernel, and truncated
spectral Green's functions.
"""

__version__ = "0.1.0"

from .errors import IntegrandError, PoleProximityError, QuadratureError
from .special import (
    AngularPoint,
    PolyValue,
    hermite_function,
    hermite_function_table,
    hermite_poly,
    hermite_poly_scaled,
    laguerre_function,
    laguerre_function_table,
    laguerre_poly,
    laguerre_poly_scaled,
    legendre_p,
    log_gamma,
    sph_harm,
    sph_harm_all,
)
from .quadrature import (
    MAX_NODES,
    QuadratureRule,
    gauss_hermite,
    gauss_laguerre,
    gauss_legendre,
    integrate,
)
from .oscillator1d import (
    Branch,
    Mode1D,
    OscillatorParams,
    SpectralProjection,
    SpectrumConvention,
    closure_kernel_1d,
    eigenfunction_1d,
    energy_1d,
    fv_components,
    gram_matrix_1d,
    mode_1d,
    nonrel_energy,
    ode_residual_1d,
    project_1d,
    reconstruct_1d,
)
from .oscillator3d import (
    MAX_ELL,
    Mode3D,
    Point3,
    RadialMode,
    angular_kernel,
    angular_kernel_addition,
    angular_product_grid,
    degeneracy,
    energy_3d,
    full_eigenfunction,
    full_eigenfunction_origin,
    project_radial,
    radial_eigenfunction,
    radial_gram,
    radial_closure_kernel,
    radial_mode,
    reconstruct_radial,
    shell_modes,
)
from .greens import (
    GreensQuery,
    coefficient_deviation_1d,
    coefficient_deviation_radial,
    greens_1d,
    greens_3d_partial_wave,
)
