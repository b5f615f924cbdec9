"""Exact scalar fields: sparse multivariate polynomials over the rationals.

A scalar field over a chart is a polynomial in the chart coordinates with
``Fraction`` coefficients, stored as a map from exponent vectors (one
non-negative integer per coordinate) to nonzero coefficients.  The empty map
is the zero polynomial.  All arithmetic is exact; results are canonical
(zero coefficients dropped, duplicate monomials merged), so equality is a
plain structural comparison and two mathematically equal polynomials always
compare equal.

Values are immutable after construction and every operation returns a new
object, so scalar fields are safe to share between threads.

The chart also carries the deformation constant ``k`` used by the pair
calculus built on top of this module; two charts are interchangeable only if
they agree on dimension, coordinate names and ``k``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import ChartMismatchError

Exponents = tuple[int, ...]
RationalLike = Fraction | int


@dataclass(frozen=True)
class Chart:
    """A single coordinate chart: ordered coordinate names plus the constant k."""

    names: tuple[str, ...]
    k: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "names", tuple(self.names))
        object.__setattr__(self, "k", Fraction(self.k))
        if not self.names:
            raise ValueError("a chart needs at least one coordinate")
        if len(set(self.names)) != len(self.names):
            raise ValueError("coordinate names must be distinct")

    @property
    def dim(self) -> int:
        return len(self.names)

    def constant(self, value: RationalLike) -> "ScalarField":
        c = Fraction(value)
        return ScalarField(self, {} if c == 0 else {(0,) * self.dim: c})

    def coordinate(self, index: int) -> "ScalarField":
        """The coordinate function x_index as a scalar field."""
        if not 0 <= index < self.dim:
            raise IndexError(f"coordinate index {index} out of range for dimension {self.dim}")
        exps = [0] * self.dim
        exps[index] = 1
        return ScalarField(self, {tuple(exps): Fraction(1)})

    def coordinates(self) -> tuple["ScalarField", ...]:
        return tuple(self.coordinate(i) for i in range(self.dim))


def _require_same_chart(a: Chart, b: Chart) -> None:
    if a != b:
        raise ChartMismatchError(
            f"operands live on different charts: ({', '.join(a.names)}; k={a.k}) "
            f"vs ({', '.join(b.names)}; k={b.k})"
        )


@dataclass(frozen=True, eq=False, repr=False)
class ScalarField:
    """A polynomial with rational coefficients over a chart's coordinates."""

    chart: Chart
    terms: Mapping[Exponents, Fraction]

    def __post_init__(self):
        n = self.chart.dim
        clean: dict[Exponents, Fraction] = {}
        for exps, coeff in self.terms.items():
            exps = tuple(exps)
            if len(exps) != n:
                raise ChartMismatchError(
                    f"exponent vector {exps} has length {len(exps)}, chart dimension is {n}"
                )
            c = Fraction(coeff)
            if c:
                clean[exps] = c
        object.__setattr__(self, "terms", clean)

    @classmethod
    def from_terms(cls, chart: Chart, pairs: Iterable[tuple[Exponents, RationalLike]]) -> "ScalarField":
        """Canonical form of a raw term list: duplicates merged, zeros dropped."""
        acc: dict[Exponents, Fraction] = {}
        for exps, coeff in pairs:
            exps = tuple(exps)
            acc[exps] = acc.get(exps, Fraction(0)) + Fraction(coeff)
        return cls(chart, acc)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ScalarField):
            return NotImplemented
        return self.chart == other.chart and self.terms == other.terms

    __hash__ = None  # mutable-value semantics: equal fields need not share a hash

    def _coerce(self, other) -> "ScalarField | None":
        if isinstance(other, ScalarField):
            _require_same_chart(self.chart, other.chart)
            return other
        if isinstance(other, (Fraction, int)):
            return self.chart.constant(other)
        return None

    def __add__(self, other):
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        acc = dict(self.terms)
        for exps, c in rhs.terms.items():
            acc[exps] = acc.get(exps, Fraction(0)) + c
        return ScalarField(self.chart, acc)

    __radd__ = __add__

    def __neg__(self):
        return ScalarField(self.chart, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return self + (-rhs)

    def __rsub__(self, other):
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return rhs + (-self)

    def __mul__(self, other):
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        acc: dict[Exponents, Fraction] = {}
        for ea, ca in self.terms.items():
            for eb, cb in rhs.terms.items():
                key = tuple(x + y for x, y in zip(ea, eb))
                acc[key] = acc.get(key, Fraction(0)) + ca * cb
        return ScalarField(self.chart, acc)

    __rmul__ = __mul__

    def diff(self, coord: int) -> "ScalarField":
        """Exact partial derivative with respect to coordinate ``coord``."""
        if not 0 <= coord < self.chart.dim:
            raise IndexError(f"coordinate index {coord} out of range for dimension {self.chart.dim}")
        acc: dict[Exponents, Fraction] = {}
        for exps, c in self.terms.items():
            e = exps[coord]
            if e:
                key = exps[:coord] + (e - 1,) + exps[coord + 1:]
                acc[key] = c * e
        return ScalarField(self.chart, acc)

    def eval_at(self, point: Sequence[RationalLike]) -> Fraction:
        """Exact value at a rational point (one value per coordinate)."""
        values = [Fraction(v) for v in point]
        if len(values) != self.chart.dim:
            raise ValueError(
                f"point has {len(values)} entries, chart dimension is {self.chart.dim}"
            )
        total = Fraction(0)
        for exps, c in self.terms.items():
            term = c
            for e, v in zip(exps, values):
                if e:
                    term *= v ** e
            total += term
        return total

    def __str__(self) -> str:
        return poly_str(self)

    def __repr__(self) -> str:
        return poly_str(self)


# ---------------------------------------------------------------------------
# Canonical rendering.
#
# Monomials are printed in ascending graded order (total degree first, then
# earlier coordinates before later ones), coefficients of magnitude one are
# dropped except on a leading negative term, which keeps an explicit -1* so
# the output stays a plain product grammar.


def rational_str(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _grlex_key(exps: Exponents) -> tuple:
    return (sum(exps), tuple(-e for e in exps))


def _mono_str(chart: Chart, exps: Exponents) -> str:
    parts = []
    for name, e in zip(chart.names, exps):
        if e == 1:
            parts.append(name)
        elif e:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def poly_str(f: ScalarField) -> str:
    if f.is_zero:
        return "0"
    pieces = []
    for i, exps in enumerate(sorted(f.terms, key=_grlex_key)):
        coeff = f.terms[exps]
        mono = _mono_str(f.chart, exps)
        if i == 0:
            if not mono:
                pieces.append(rational_str(coeff))
            elif coeff == 1:
                pieces.append(mono)
            else:
                pieces.append(f"{rational_str(coeff)}*{mono}")
        else:
            mag = abs(coeff)
            if not mono:
                body = rational_str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{rational_str(mag)}*{mono}"
            pieces.append((" - " if coeff < 0 else " + ") + body)
    return "".join(pieces)


def coefficient_block(f: ScalarField) -> str | None:
    """Render ``f`` for use in front of a basis factor; None means "omit".

    Single-term polynomials splice in directly (``3``, ``x^2``, ``-1*x``),
    anything longer is parenthesized, and the constant one is omitted.
    """
    if len(f.terms) == 1:
        ((exps, coeff),) = f.terms.items()
        if coeff == 1 and not any(exps):
            return None
        return poly_str(f)
    return f"({poly_str(f)})"


def join_signed(parts: Iterable[str]) -> str:
    """Join rendered summands, folding a leading minus into a binary one."""
    out = ""
    for s in parts:
        if not out:
            out = s
        elif s.startswith("-"):
            out += " - " + s[1:]
        else:
            out += " + " + s
    return out
