"""Exact exterior calculus for pair-valued differential forms.

Scalar coefficients are multivariate polynomials over the rationals, so all
operator identities can be checked as exact structural equalities.  The
package provides the ordinary exterior calculus on a single chart, the
pair-valued ("generalized") calculus with a k-deformed exterior derivative, a
deterministic randomized identity harness, and a small text DSL with a CLI.
"""

from .errors import (
    ChartMismatchError,
    DegreeError,
    GenformError,
    ParseError,
    UnknownIdentityError,
)
from .scalars import Chart, ScalarField, rational_str
from .forms import Form, VectorField, coordinate_vectors, one_forms
from .generalized import GeneralizedForm, GeneralizedVector, cartan_residual
from .harness import (
    IDENTITIES,
    Failure,
    GenConfig,
    IdentityReport,
    default_chart,
    gen_form,
    gen_gform,
    gen_gvector,
    gen_scalar,
    gen_vector,
    replay_env,
    run_identity,
)
from .session import Session, parse_session, render_session, substitute

__version__ = "0.1.0"

__all__ = [
    "Chart",
    "ChartMismatchError",
    "DegreeError",
    "Failure",
    "Form",
    "GenConfig",
    "GeneralizedForm",
    "GeneralizedVector",
    "GenformError",
    "IDENTITIES",
    "IdentityReport",
    "ParseError",
    "ScalarField",
    "Session",
    "UnknownIdentityError",
    "VectorField",
    "cartan_residual",
    "coordinate_vectors",
    "default_chart",
    "gen_form",
    "gen_gform",
    "gen_gvector",
    "gen_scalar",
    "gen_vector",
    "one_forms",
    "parse_session",
    "rational_str",
    "render_session",
    "replay_env",
    "run_identity",
    "substitute",
]
