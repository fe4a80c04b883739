"""Order of convexity of the shifted Gauss hypergeometric function z 2F1(a, b; c; z).

Modules
-------
special    Gamma, reciprocal Gamma, digamma and Pochhammer for real arguments.
hyp2f1     Parameters, series and automatic evaluation, contiguous values,
           values at z = +-1, asymptotics of G/F near z = 1.
cfrac      Gauss continued fraction for G/F, Wall bounds, Cauchy factor.
convexity  W(z), M(z), closed-form rules for kappa, (non)convexity predicates.
oracle     Independent numerical estimate of kappa from boundary circles.
cli        ``hypconv`` command-line front end.
"""

from .convexity import Kind, OrderOfConvexity, RegimeMatch, W_eval, M_eval, kappa_closed_form
from .errors import *  # noqa: F401,F403
from .hyp2f1 import Params, eval_auto
from .oracle import kappa_numeric

__version__ = "0.1.0"

__all__ = [
    "Kind",
    "OrderOfConvexity",
    "RegimeMatch",
    "Params",
    "W_eval",
    "M_eval",
    "eval_auto",
    "kappa_closed_form",
    "kappa_numeric",
]
