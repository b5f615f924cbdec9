"""Pair-valued calculus: generalized forms and generalized vector fields.

A generalized p-form is an ordered pair (ordinary p-form, ordinary
(p+1)-form); degree -1 is allowed and has an identically zero ordinary part.
A generalized vector field is an ordered pair (ordinary vector field,
ordinary scalar field).  The chart's constant k deforms the exterior
derivative; k = 0 recovers the componentwise ordinary calculus.

The operations, writing a = (a_p, a_{p+1}), b = (b_q, b_{q+1}),
V = (v1, v0), W = (w1, w0):

  wedge        a ^ b  = (a_p b_q,  a_p b_{q+1} + (-1)^q a_{p+1} b_q)
  d            d a    = (d a_p + (-1)^{p+1} k a_{p+1},  d a_{p+1})
  contract     I_V a  = (i_{v1} a_p,  i_{v1} a_{p+1} + p (-1)^{p-1} v0 a_p)
  scaled_by    a0 V   = (a0_0 v1,  a0_0 v0 + i_{v1} a0_1)        [a0 of degree 0]
  lie_cartan   L_V a  = I_V d a + d I_V a
  lie (form)   L^_V a = (L_{v1} a_p - p k v0 a_p,
                         L_{v1} a_{p+1} - (p+1) k v0 a_{p+1})
  lie (vector) L^_V W = ([v1, w1] + k v0 w1,  L_{v1} w0)
  commutator   {V,W}  = ([v1, w1],  L_{v1} w0 - L_{w1} v0)

lie_cartan is the raw homotopy-formula derivative; its defect of failing to
intertwine with contraction is exposed as :func:`cartan_residual`.  lie is
the corrected derivative that repairs the defect; the two differ by an exact
pair supported in the companion slot.  lie on vectors is not antisymmetric
and depends on k; commutator is antisymmetric, k-independent, and is the
bracket under which generalized vector fields form a Lie algebra.  The
sign conventions above are normative and the identity suite guards them;
do not swap them for rearranged equivalents.

Degrees outside [-1, n] can only arise for identically zero pairs and are
clamped back into range; zero pairs compare equal regardless of degree tag.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import ChartMismatchError, DegreeError
from .scalars import Chart, ScalarField, _require_same_chart
from .forms import Form, VectorField


def _sign(e: int) -> int:
    return -1 if e & 1 else 1


@dataclass(frozen=True, eq=False, repr=False)
class GeneralizedForm:
    """An ordered pair of an ordinary p-form and an ordinary (p+1)-form."""

    ordinary: Form
    companion: Form

    def __post_init__(self):
        if self.ordinary.chart != self.companion.chart:
            raise ChartMismatchError("pair components live on different charts")
        if self.companion.degree != self.ordinary.degree + 1:
            raise DegreeError(
                f"companion degree {self.companion.degree} does not follow "
                f"ordinary degree {self.ordinary.degree}"
            )
        n = self.ordinary.chart.dim
        p = self.ordinary.degree
        if p < -1 or p > n:
            # only reachable with both parts zero; retag into the legal range
            clamped = max(-1, min(n, p))
            object.__setattr__(self, "ordinary", Form.zero(self.chart, clamped))
            object.__setattr__(self, "companion", Form.zero(self.chart, clamped + 1))

    @property
    def chart(self) -> Chart:
        return self.ordinary.chart

    @property
    def degree(self) -> int:
        return self.ordinary.degree

    @classmethod
    def zero(cls, chart: Chart, degree: int = 0) -> "GeneralizedForm":
        return cls(Form.zero(chart, degree), Form.zero(chart, degree + 1))

    @classmethod
    def from_form(cls, a: Form) -> "GeneralizedForm":
        """Embed an ordinary form as the pair (a, 0)."""
        return cls(a, Form.zero(a.chart, a.degree + 1))

    @property
    def is_zero(self) -> bool:
        return self.ordinary.is_zero and self.companion.is_zero

    def __bool__(self) -> bool:
        return not self.is_zero

    def __eq__(self, other) -> bool:
        if not isinstance(other, GeneralizedForm):
            return NotImplemented
        if self.chart != other.chart:
            return False
        if self.is_zero and other.is_zero:
            return True
        return (self.degree == other.degree
                and self.ordinary == other.ordinary
                and self.companion == other.companion)

    __hash__ = None

    def __add__(self, other):
        if not isinstance(other, GeneralizedForm):
            return NotImplemented
        _require_same_chart(self.chart, other.chart)
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        if self.degree != other.degree:
            raise DegreeError(f"cannot add pairs of degree {self.degree} and {other.degree}")
        return GeneralizedForm(self.ordinary + other.ordinary,
                               self.companion + other.companion)

    def __neg__(self):
        return GeneralizedForm(-self.ordinary, -self.companion)

    def __sub__(self, other):
        if not isinstance(other, GeneralizedForm):
            return NotImplemented
        return self + (-other)

    def __rmul__(self, factor):
        # ordinary scalar multiplication: both slots scale
        if not isinstance(factor, (ScalarField, Fraction, int)):
            return NotImplemented
        return GeneralizedForm(factor * self.ordinary, factor * self.companion)

    def wedge(self, other: "GeneralizedForm") -> "GeneralizedForm":
        _require_same_chart(self.chart, other.chart)
        q = other.degree
        ordinary = self.ordinary.wedge(other.ordinary)
        companion = self.ordinary.wedge(other.companion) \
            + _sign(q) * self.companion.wedge(other.ordinary)
        return GeneralizedForm(ordinary, companion)

    def d(self) -> "GeneralizedForm":
        k = self.chart.k
        p = self.degree
        ordinary = self.ordinary.d() + (_sign(p + 1) * k) * self.companion
        return GeneralizedForm(ordinary, self.companion.d())

    def __str__(self) -> str:
        return f"[{self.ordinary} ; {self.companion}]"

    __repr__ = __str__


@dataclass(frozen=True, eq=False, repr=False)
class GeneralizedVector:
    """An ordered pair of an ordinary vector field and an ordinary scalar field."""

    v1: VectorField
    v0: ScalarField

    def __post_init__(self):
        if self.v1.chart != self.v0.chart:
            raise ChartMismatchError("pair components live on different charts")

    @property
    def chart(self) -> Chart:
        return self.v1.chart

    @classmethod
    def zero(cls, chart: Chart) -> "GeneralizedVector":
        return cls(VectorField.zero(chart), chart.constant(0))

    @classmethod
    def from_vector(cls, v: VectorField) -> "GeneralizedVector":
        """Embed an ordinary vector field as the pair (v, 0)."""
        return cls(v, v.chart.constant(0))

    @property
    def is_zero(self) -> bool:
        return self.v1.is_zero and self.v0.is_zero

    def __bool__(self) -> bool:
        return not self.is_zero

    def __eq__(self, other) -> bool:
        if not isinstance(other, GeneralizedVector):
            return NotImplemented
        return self.v1 == other.v1 and self.v0 == other.v0

    __hash__ = None

    def __add__(self, other):
        if not isinstance(other, GeneralizedVector):
            return NotImplemented
        return GeneralizedVector(self.v1 + other.v1, self.v0 + other.v0)

    def __neg__(self):
        return GeneralizedVector(-self.v1, -self.v0)

    def __sub__(self, other):
        if not isinstance(other, GeneralizedVector):
            return NotImplemented
        return self + (-other)

    def __rmul__(self, factor):
        # linear only under ordinary scalars; zero-form scaling is scaled_by
        if not isinstance(factor, (ScalarField, Fraction, int)):
            return NotImplemented
        return GeneralizedVector(factor * self.v1, factor * self.v0)

    def scaled_by(self, a0: GeneralizedForm) -> "GeneralizedVector":
        """Scale by a generalized zero-form: a0 V = (a0_0 v1, a0_0 v0 + i_{v1} a0_1)."""
        _require_same_chart(self.chart, a0.chart)
        if a0.degree != 0:
            raise DegreeError(f"scaling needs a degree-0 pair, got degree {a0.degree}")
        alpha0 = a0.ordinary.scalar_part()
        v1 = alpha0 * self.v1
        v0 = alpha0 * self.v0 + self.v1.contract(a0.companion).scalar_part()
        return GeneralizedVector(v1, v0)

    def contract(self, a: GeneralizedForm) -> GeneralizedForm:
        """Interior product I_V; the explicit degree factor kills the v0 term at p = 0."""
        _require_same_chart(self.chart, a.chart)
        p = a.degree
        ordinary = self.v1.contract(a.ordinary)
        companion = self.v1.contract(a.companion) \
            + (p * _sign(p - 1)) * (self.v0 * a.ordinary)
        return GeneralizedForm(ordinary, companion)

    def lie_cartan(self, a: GeneralizedForm) -> GeneralizedForm:
        """Uncorrected Lie derivative from the homotopy formula I_V d + d I_V."""
        return self.contract(a.d()) + self.contract(a).d()

    def lie(self, target):
        """Corrected Lie derivative, of a pair form or of a pair vector field.

        On forms this is the closed formula
        (L_{v1} a_p - p k v0 a_p, L_{v1} a_{p+1} - (p+1) k v0 a_{p+1});
        on vector fields it is ([v1, w1] + k v0 w1, L_{v1} w0), which is not
        antisymmetric and not k-independent.
        """
        if isinstance(target, GeneralizedForm):
            _require_same_chart(self.chart, target.chart)
            p = target.degree
            k = self.chart.k
            ordinary = self.v1.lie(target.ordinary) \
                - ((p * k) * self.v0) * target.ordinary
            companion = self.v1.lie(target.companion) \
                - (((p + 1) * k) * self.v0) * target.companion
            return GeneralizedForm(ordinary, companion)
        if isinstance(target, GeneralizedVector):
            _require_same_chart(self.chart, target.chart)
            k = self.chart.k
            v1 = self.v1.bracket(target.v1) + (k * self.v0) * target.v1
            return GeneralizedVector(v1, self.v1.apply(target.v0))
        raise TypeError(f"cannot take a Lie derivative of {type(target).__name__}")

    def commutator(self, other: "GeneralizedVector") -> "GeneralizedVector":
        """Antisymmetric, k-independent bracket ([v1, w1], L_{v1} w0 - L_{w1} v0)."""
        _require_same_chart(self.chart, other.chart)
        return GeneralizedVector(
            self.v1.bracket(other.v1),
            self.v1.apply(other.v0) - other.v1.apply(self.v0),
        )

    def __str__(self) -> str:
        return f"{{{self.v1} ; {self.v0}}}"

    __repr__ = __str__


def cartan_residual(V: GeneralizedVector, W: GeneralizedVector,
                    a: GeneralizedForm) -> GeneralizedForm:
    """How far the uncorrected Lie derivative is from intertwining with I_W.

    Returns L_V(I_W a) - I_W(L_V a) - I_X a, where L is the homotopy-formula
    derivative and X = ([v1, w1] + k v0 w1, L_{v1} w0 - L_{w1} v0).  The
    result equals -(-1)^p (0, L_{v0 w1} a_p): supported entirely in the
    companion slot, and not expressible as a contraction.
    """
    _require_same_chart(V.chart, W.chart)
    _require_same_chart(V.chart, a.chart)
    k = V.chart.k
    cross = GeneralizedVector(
        V.v1.bracket(W.v1) + (k * V.v0) * W.v1,
        V.v1.apply(W.v0) - W.v1.apply(V.v0),
    )
    return (V.lie_cartan(W.contract(a))
            - W.contract(V.lie_cartan(a))
            - cross.contract(a))
