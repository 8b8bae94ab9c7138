"""Exact dihedral hypergeometric identities, theta pull-backs and Klein coverings."""
from .algebra import Laurent, Poly, Q, RatFunc, Series, SqrtPoly
from .hyper import EvaluationError, HyperParams, pochhammer
from .identities import identity_registry, verify_identity
from .klein import KleinCovering, KleinError, klein_covering
from .odes import ode_residual, to_pqr
from .transforms import pullback_phi, tchebyshev_pair, theta_pair

__version__ = "0.1.0"

__all__ = [
    "Poly", "RatFunc", "Series", "Laurent", "SqrtPoly", "Q", "EvaluationError", "HyperParams",
    "pochhammer", "identity_registry", "verify_identity", "KleinCovering", "KleinError",
    "klein_covering", "ode_residual", "to_pqr", "theta_pair", "pullback_phi", "tchebyshev_pair",
]
