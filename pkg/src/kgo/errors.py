"""Exception types shared across the package."""


class QuadratureError(ValueError):
    """A quadrature rule violates a contract: unsupported node count,
    wrong family, wrong Laguerre exponent, or insufficient exactness
    for the requested integral."""


class IntegrandError(ArithmeticError):
    """An integrand produced a non-finite value at a quadrature node.
    Raised instead of letting NaN/inf propagate silently."""


class PoleProximityError(ValueError):
    """A Green's-function probe energy came closer to an eigenvalue than
    the configured pole guard allows."""

    def __init__(self, n: int, ell: int | None = None, *, distance: float = float("nan"),
                 guard: float = float("nan")):
        self.n = n
        self.ell = ell
        self.distance = distance
        self.guard = guard
        where = f"n={n}" if ell is None else f"(n_r={n}, ell={ell})"
        super().__init__(
            f"probe energy-squared is within {distance:.3e} of the eigenvalue at {where} "
            f"(pole guard {guard:.3e})"
        )
