"""Ordinary exterior calculus on a single chart.

A p-form is stored sparsely as a map from strictly increasing coordinate
index tuples of length p to scalar-field coefficients; insertion through
:meth:`Form.from_terms` sorts arbitrary index tuples and absorbs the
permutation parity into the coefficient, so the representation is canonical
and equality is structural.  Degrees outside [0, n] are representable and are
always the canonical zero, which keeps every operator total: contracting a
0-form, or differentiating a top form, simply yields zero instead of an
error.  Zero forms of different degree tags compare equal.

Vector fields hold one scalar component per coordinate.  The Lie derivative
of a form is computed with the homotopy formula i_v d + d i_v.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import ChartMismatchError, DegreeError
from .scalars import (
    Chart,
    ScalarField,
    _require_same_chart,
    coefficient_block,
    join_signed,
)

Key = tuple[int, ...]


def _normalize_key(key: Key) -> tuple[Key | None, int]:
    """Sort a multi-index, returning (sorted key, parity sign); None for repeats."""
    items = list(key)
    sign = 1
    for i in range(1, len(items)):
        j = i
        while j > 0 and items[j - 1] > items[j]:
            items[j - 1], items[j] = items[j], items[j - 1]
            sign = -sign
            j -= 1
    for a, b in zip(items, items[1:]):
        if a == b:
            return None, 0
    return tuple(items), sign


@dataclass(frozen=True, eq=False, repr=False)
class Form:
    """An antisymmetric p-form with exact polynomial coefficients."""

    chart: Chart
    degree: int
    components: Mapping[Key, ScalarField]

    def __post_init__(self):
        n = self.chart.dim
        clean: dict[Key, ScalarField] = {}
        for key, poly in self.components.items():
            key = tuple(key)
            if poly.chart != self.chart:
                raise ChartMismatchError("component coefficient lives on a different chart")
            if poly.is_zero:
                continue
            if not 0 <= self.degree <= n:
                raise DegreeError(f"a degree-{self.degree} form on {n} coordinates must be zero")
            if len(key) != self.degree:
                raise DegreeError(f"key {key} has length {len(key)}, form degree is {self.degree}")
            if any(not 0 <= i < n for i in key):
                raise ValueError(f"key {key} uses indices outside [0, {n})")
            if any(a >= b for a, b in zip(key, key[1:])):
                raise ValueError(f"key {key} is not strictly increasing")
            clean[key] = poly
        object.__setattr__(self, "components", clean)

    @classmethod
    def from_terms(cls, chart: Chart, degree: int, pairs: Iterable[tuple[Key, ScalarField]]) -> "Form":
        """Build a form from arbitrary-order index tuples, normalizing parity."""
        acc: dict[Key, ScalarField] = {}
        for key, poly in pairs:
            if poly.is_zero:
                continue
            sorted_key, sign = _normalize_key(tuple(key))
            if sorted_key is None:
                continue
            signed = poly if sign > 0 else -poly
            cur = acc.get(sorted_key)
            acc[sorted_key] = signed if cur is None else cur + signed
        return cls(chart, degree, acc)

    @classmethod
    def zero(cls, chart: Chart, degree: int) -> "Form":
        return cls(chart, degree, {})

    @classmethod
    def from_scalar(cls, f: ScalarField) -> "Form":
        return cls(f.chart, 0, {(): f})

    @property
    def is_zero(self) -> bool:
        return not self.components

    def __bool__(self) -> bool:
        return bool(self.components)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Form):
            return NotImplemented
        if self.chart != other.chart:
            return False
        if not self.components and not other.components:
            return True  # zero is degree-agnostic
        return self.degree == other.degree and self.components == other.components

    __hash__ = None

    def scalar_part(self) -> ScalarField:
        """The () component of a degree <= 0 form (zero if absent)."""
        if self.degree > 0:
            raise DegreeError(f"degree-{self.degree} form has no scalar part")
        return self.components.get((), self.chart.constant(0))

    def __add__(self, other):
        if not isinstance(other, Form):
            return NotImplemented
        _require_same_chart(self.chart, other.chart)
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        if self.degree != other.degree:
            raise DegreeError(f"cannot add forms of degree {self.degree} and {other.degree}")
        acc = dict(self.components)
        for key, poly in other.components.items():
            cur = acc.get(key)
            acc[key] = poly if cur is None else cur + poly
        return Form(self.chart, self.degree, acc)

    def __neg__(self):
        return Form(self.chart, self.degree, {k: -p for k, p in self.components.items()})

    def __sub__(self, other):
        if not isinstance(other, Form):
            return NotImplemented
        return self + (-other)

    def __rmul__(self, factor):
        if not isinstance(factor, (ScalarField, Fraction, int)):
            return NotImplemented
        if isinstance(factor, ScalarField):
            _require_same_chart(self.chart, factor.chart)
        return Form(self.chart, self.degree,
                    {k: factor * p for k, p in self.components.items()})

    def wedge(self, other: "Form") -> "Form":
        """Antisymmetrized product; degree adds, repeated indices cancel."""
        _require_same_chart(self.chart, other.chart)
        terms = []
        for ka, pa in self.components.items():
            for kb, pb in other.components.items():
                terms.append((ka + kb, pa * pb))
        return Form.from_terms(self.chart, self.degree + other.degree, terms)

    def d(self) -> "Form":
        """Exterior derivative: d(f dx_I) = sum_i (d_i f) dx_i ^ dx_I."""
        terms = []
        for key, poly in self.components.items():
            for i in range(self.chart.dim):
                df = poly.diff(i)
                if df:
                    terms.append(((i,) + key, df))
        return Form.from_terms(self.chart, self.degree + 1, terms)

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        if self.degree == 0:
            return str(self.scalar_part())
        parts = []
        for key in sorted(self.components):
            block = coefficient_block(self.components[key])
            suffix = "^".join(f"d{self.chart.names[i]}" for i in key)
            parts.append(suffix if block is None else f"{block}*{suffix}")
        return join_signed(parts)

    __repr__ = __str__


@dataclass(frozen=True, eq=False, repr=False)
class VectorField:
    """An ordinary vector field: one scalar component per coordinate."""

    chart: Chart
    components: tuple[ScalarField, ...]

    def __post_init__(self):
        comps = tuple(self.components)
        if len(comps) != self.chart.dim:
            raise ChartMismatchError(
                f"vector field needs {self.chart.dim} components, got {len(comps)}"
            )
        for c in comps:
            if c.chart != self.chart:
                raise ChartMismatchError("vector component lives on a different chart")
        object.__setattr__(self, "components", comps)

    @classmethod
    def zero(cls, chart: Chart) -> "VectorField":
        z = chart.constant(0)
        return cls(chart, (z,) * chart.dim)

    @property
    def is_zero(self) -> bool:
        return all(c.is_zero for c in self.components)

    def __bool__(self) -> bool:
        return not self.is_zero

    def __eq__(self, other) -> bool:
        if not isinstance(other, VectorField):
            return NotImplemented
        return self.chart == other.chart and self.components == other.components

    __hash__ = None

    def __add__(self, other):
        if not isinstance(other, VectorField):
            return NotImplemented
        _require_same_chart(self.chart, other.chart)
        return VectorField(self.chart,
                           tuple(a + b for a, b in zip(self.components, other.components)))

    def __neg__(self):
        return VectorField(self.chart, tuple(-c for c in self.components))

    def __sub__(self, other):
        if not isinstance(other, VectorField):
            return NotImplemented
        return self + (-other)

    def __rmul__(self, factor):
        if not isinstance(factor, (ScalarField, Fraction, int)):
            return NotImplemented
        if isinstance(factor, ScalarField):
            _require_same_chart(self.chart, factor.chart)
        return VectorField(self.chart, tuple(factor * c for c in self.components))

    def apply(self, f: ScalarField) -> ScalarField:
        """Directional derivative: sum_i v^i d_i f."""
        _require_same_chart(self.chart, f.chart)
        out = self.chart.constant(0)
        for i, comp in enumerate(self.components):
            if comp:
                out = out + comp * f.diff(i)
        return out

    def contract(self, a: Form) -> Form:
        """Interior product: slot-wise pairing with alternating signs."""
        _require_same_chart(self.chart, a.chart)
        terms = []
        for key, poly in a.components.items():
            for j, idx in enumerate(key):
                comp = self.components[idx]
                if comp:
                    signed = comp * poly if j % 2 == 0 else -(comp * poly)
                    terms.append((key[:j] + key[j + 1:], signed))
        return Form.from_terms(self.chart, a.degree - 1, terms)

    def lie(self, a: Form) -> Form:
        """Lie derivative of a form along this field (homotopy formula)."""
        return self.contract(a.d()) + self.contract(a).d()

    def bracket(self, other: "VectorField") -> "VectorField":
        """Commutator of vector fields, component i: sum_j (v^j d_j w^i - w^j d_j v^i)."""
        _require_same_chart(self.chart, other.chart)
        comps = []
        for i in range(self.chart.dim):
            acc = self.chart.constant(0)
            for j in range(self.chart.dim):
                acc = acc + self.components[j] * other.components[i].diff(j)
                acc = acc - other.components[j] * self.components[i].diff(j)
            comps.append(acc)
        return VectorField(self.chart, tuple(comps))

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        parts = []
        for i, comp in enumerate(self.components):
            if comp.is_zero:
                continue
            block = coefficient_block(comp)
            suffix = f"@{self.chart.names[i]}"
            parts.append(suffix if block is None else f"{block}*{suffix}")
        return join_signed(parts)

    __repr__ = __str__


def one_forms(chart: Chart) -> tuple[Form, ...]:
    """The coordinate differentials dx_0, ..., dx_{n-1}."""
    one = chart.constant(1)
    return tuple(Form(chart, 1, {(i,): one}) for i in range(chart.dim))


def coordinate_vectors(chart: Chart) -> tuple[VectorField, ...]:
    """The coordinate vector fields, dual to the coordinate differentials."""
    zero = chart.constant(0)
    one = chart.constant(1)
    out = []
    for i in range(chart.dim):
        comps = [zero] * chart.dim
        comps[i] = one
        out.append(VectorField(chart, tuple(comps)))
    return tuple(out)
