"""Kernel tests: exact polynomial arithmetic, differentiation, evaluation."""

from fractions import Fraction

import pytest

from genform import Chart, ChartMismatchError, GenConfig, ScalarField, gen_scalar


def chart2(k=0):
    return Chart(("x", "y"), Fraction(k))


def test_normalize_merges_like_terms():
    ch = Chart(("x",))
    f = ScalarField.from_terms(ch, [((1,), 1), ((1,), 1)])
    assert f.terms == {(1,): Fraction(2)}


def test_normalize_cancels_to_zero():
    ch = chart2()
    f = ScalarField.from_terms(ch, [((2, 1), 3), ((2, 1), -3)])
    assert f.terms == {}
    assert f.is_zero


def test_product_expansion_difference_of_squares():
    ch = chart2()
    x, y = ch.coordinates()
    # (x + y) * (x - y) expanded by hand: x^2 - y^2
    assert ((x + y) * (x - y)).terms == {(2, 0): Fraction(1), (0, 2): Fraction(-1)}


def test_additive_and_multiplicative_identities():
    ch = chart2()
    x, _ = ch.coordinates()
    assert x + ch.constant(0) == x
    assert x * ch.constant(1) == x
    assert x + 0 == x
    assert 1 * x == x


def test_square_expansion():
    ch = chart2()
    x, _ = ch.coordinates()
    # (x + 1)^2 expanded by hand
    assert ((x + 1) * (x + 1)).terms == {(2, 0): Fraction(1), (1, 0): Fraction(2), (0, 0): Fraction(1)}


def test_diff_power_rule():
    ch = chart2()
    x, y = ch.coordinates()
    assert (x * x * y).diff(0) == 2 * x * y


def test_diff_constant_is_zero():
    ch = chart2()
    assert ch.constant(3).diff(1).is_zero


def test_diff_of_square_sum():
    ch = chart2()
    x, y = ch.coordinates()
    # d/dx (x + y)^2 = 2x + 2y by hand
    assert ((x + y) * (x + y)).diff(0) == 2 * x + 2 * y


def test_diff_out_of_range():
    ch = chart2()
    with pytest.raises(IndexError):
        ch.coordinate(0).diff(2)


def test_eval_substitution():
    ch = chart2()
    x, y = ch.coordinates()
    assert (x * x * y).eval_at([2, 3]) == 12
    assert ch.constant(0).eval_at([7, 9]) == 0
    assert (x + y).eval_at([Fraction(1, 2), Fraction(1, 2)]) == 1


def test_eval_point_arity():
    ch = chart2()
    with pytest.raises(ValueError):
        ch.coordinate(0).eval_at([1])


def test_exponent_length_mismatch_is_chart_mismatch():
    ch = chart2()
    with pytest.raises(ChartMismatchError):
        ScalarField(ch, {(1,): Fraction(1)})


def test_cross_chart_arithmetic_rejected():
    a = Chart(("x", "y")).coordinate(0)
    b = Chart(("u", "v")).coordinate(0)
    with pytest.raises(ChartMismatchError):
        a + b
    with pytest.raises(ChartMismatchError):
        a * b
    # same names but different k is still a different chart
    c = Chart(("x", "y"), Fraction(1)).coordinate(0)
    with pytest.raises(ChartMismatchError):
        a + c


def _random_scalars(seed, count, chart):
    cfg = GenConfig(seed=seed, dimension=chart.dim)
    return [gen_scalar(cfg, i, chart) for i in range(count)]


def test_ring_axioms_on_random_triples():
    ch = chart2()
    fs = _random_scalars(11, 30, ch)
    for a, b, c in zip(fs[::3], fs[1::3], fs[2::3]):
        assert (a + b) + c == a + (b + c)
        assert a + b == b + a
        assert (a * b) * c == a * (b * c)
        assert a * b == b * a
        assert a * (b + c) == a * b + a * c


def test_partial_derivatives_commute():
    ch = Chart(("x", "y", "z"))
    for f in _random_scalars(5, 12, ch):
        for i in range(3):
            for j in range(3):
                assert f.diff(i).diff(j) == f.diff(j).diff(i)


def test_derivative_leibniz_rule():
    ch = chart2()
    fs = _random_scalars(8, 20, ch)
    for a, b in zip(fs[::2], fs[1::2]):
        for i in range(2):
            assert (a * b).diff(i) == a.diff(i) * b + a * b.diff(i)


def test_eval_is_ring_homomorphism():
    ch = chart2()
    fs = _random_scalars(13, 20, ch)
    points = [(Fraction(1, 2), Fraction(-2, 3)), (3, -1), (Fraction(5, 7), 0)]
    for a, b in zip(fs[::2], fs[1::2]):
        for pt in points:
            assert (a * b).eval_at(pt) == a.eval_at(pt) * b.eval_at(pt)
            assert (a + b).eval_at(pt) == a.eval_at(pt) + b.eval_at(pt)


def test_canonical_form_is_construction_order_independent():
    ch = chart2()
    x, y = ch.coordinates()
    one_way = x * y + x * x + ch.constant(1)
    other_way = ch.constant(1) + x * x + y * x
    assert one_way == other_way
    assert str(one_way) == str(other_way)


def test_rendering():
    ch = chart2()
    x, y = ch.coordinates()
    assert str(ch.constant(0)) == "0"
    assert str(x - y * y * y) == "x - y^3"
    assert str(-x) == "-1*x"
    assert str(ch.constant(Fraction(-2, 3)) * x) == "-2/3*x"
    assert str(ch.constant(1) - y) == "1 - y"
