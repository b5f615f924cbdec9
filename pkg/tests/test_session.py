"""DSL parsing, evaluation, canonical printing, diagnostics, round trips."""

from fractions import Fraction

import pytest

from genform import (
    Chart,
    Form,
    GenConfig,
    GeneralizedForm,
    GeneralizedVector,
    ParseError,
    ScalarField,
    VectorField,
    gen_form,
    gen_gform,
    gen_gvector,
    gen_scalar,
    gen_vector,
    one_forms,
    parse_session,
    render_session,
    substitute,
)


def test_chart_and_pair_literal():
    session = parse_session("chart x, y k=1\na = [x*dy ; dx^dy]")
    assert session.chart == Chart(("x", "y"), Fraction(1))
    a = session.definitions["a"]
    assert isinstance(a, GeneralizedForm)
    assert a.degree == 1
    ch = session.chart
    x, y = ch.coordinates()
    dx, dy = one_forms(ch)
    assert a == GeneralizedForm(x * dy, dx.wedge(dy))


def test_lie_of_vector_along_itself():
    session = parse_session("chart x k=1\nv = {@x ; x}\nb = Lv(v, v)")
    b = session.definitions["b"]
    ch = session.chart
    x = ch.coordinate(0)
    # (k x @x, @x applied to x) at k=1
    assert b == GeneralizedVector(x * VectorField(ch, (ch.constant(1),)), ch.constant(1))
    assert str(b) == "{x*@x ; 1}"


def test_use_before_definition():
    with pytest.raises(ParseError) as info:
        parse_session("chart x\na = d(a)")
    assert info.value.code == "E_NAME"
    assert info.value.line == 2


def test_default_k_is_zero():
    assert parse_session("chart x, y").chart.k == 0


def test_negative_k():
    assert parse_session("chart x k=-1/2").chart.k == Fraction(-1, 2)


def test_comments_and_whitespace():
    text = "# leading comment\nchart x , y   k = 2  # trailing\n\n  f =  x * y  # done\n"
    session = parse_session(text)
    x, y = session.chart.coordinates()
    assert session.definitions["f"] == x * y


def test_parity_normalization_in_rendering():
    session = parse_session("chart x, y\na = x*dy^dx")
    assert str(session.definitions["a"]) == "-1*x*dx^dy"


def test_repeated_differential_cancels():
    session = parse_session("chart x, y\na = dx^dx")
    assert isinstance(session.definitions["a"], ScalarField)  # collapsed zero
    assert session.definitions["a"].is_zero


def test_negative_degree_pair_literal():
    session = parse_session("chart x, y\na = [0 ; x]")
    a = session.definitions["a"]
    assert a.degree == -1
    assert a.ordinary.is_zero
    assert a.companion == Form.from_scalar(session.chart.coordinate(0))


def test_zero_pair_vector_literal():
    session = parse_session("chart x, y\nV = {0 ; 0}\n")
    assert session.definitions["V"].is_zero


def test_scalar_power_and_rationals():
    session = parse_session("chart x, y\nf = 2/3*x^2*y - (x + y)^2 + 1/3")
    ch = session.chart
    x, y = ch.coordinates()
    expected = ch.constant(Fraction(2, 3)) * x * x * y - (x + y) * (x + y) + ch.constant(Fraction(1, 3))
    assert session.definitions["f"] == expected


def test_ordinary_operations_through_dsl():
    text = """chart x, y
v = y*@x
al = x*dy
w = @y
c = comm(v, w)
t = I(v, dx^dy)
s = L(v, x*y)
"""
    session = parse_session(text)
    ch = session.chart
    x, y = ch.coordinates()
    dx, dy = one_forms(ch)
    assert session.definitions["c"] == (y * VectorField(ch, (ch.constant(1), ch.constant(0)))).bracket(
        VectorField(ch, (ch.constant(0), ch.constant(1))))
    assert session.definitions["t"] == y * dy
    assert session.definitions["s"] == y * y  # (y @x)(x y) = y*y


def test_generalized_operations_through_dsl():
    text = """chart x, y k=1
a = [x ; y*dx]
b = d(a)
V = {y*@x ; x}
r = I(V, [x*dy ; dx^dy])
s = scale([x ; dy], {@y ; 1})
"""
    session = parse_session(text)
    ch = session.chart
    x, y = ch.coordinates()
    dx, dy = one_forms(ch)
    assert session.definitions["b"] == GeneralizedForm((ch.constant(1) - y) * dx,
                                                       -(dx.wedge(dy)))
    assert session.definitions["r"] == GeneralizedForm(Form.zero(ch, 0), (y + x * x) * dy)
    ey = VectorField(ch, (ch.constant(0), ch.constant(1)))
    assert session.definitions["s"] == GeneralizedVector(x * ey, x + 1)


def test_smul_and_add():
    session = parse_session("chart x, y\na = add(x*dx, smul(y, dy))")
    ch = session.chart
    x, y = ch.coordinates()
    dx, dy = one_forms(ch)
    assert session.definitions["a"] == x * dx + y * dy


@pytest.mark.parametrize("text,code", [
    ("chart x\nf = $", "E_LEX"),
    ("f = x", "E_PARSE"),                     # missing chart declaration
    ("chart x\nf x", "E_PARSE"),              # missing '='
    ("chart x\nf = nope", "E_NAME"),
    ("chart x\nf = x\nf = x", "E_REDEF"),
    ("chart x\nx = 1", "E_REDEF"),            # collides with a coordinate
    ("chart x\ndx = 1", "E_REDEF"),           # collides with a differential
    ("chart x\nwedge = 1", "E_REDEF"),        # reserved operation name
    ("chart x, y\nf = wedge(@x, @y)", "E_TYPE"),
    ("chart x, y\nf = dx + @x", "E_TYPE"),
    ("chart x, y\nf = dx^2", "E_TYPE"),
    ("chart x, y\nf = x*dx + dx^dy", "E_DEGREE"),
    ("chart x, y\nf = [x*dx ; x]", "E_DEGREE"),
    ("chart x, y\nf = scale([x*dx ; dx^dy], {@x ; 0})", "E_DEGREE"),
    ("chart x, y\nf = d(x", "E_PARSE"),
    ("chart wedge\nf = 1", "E_PARSE"),        # reserved coordinate name
    ("chart x, x\nf = 1", "E_PARSE"),         # duplicate coordinate
    ("chart x\nf = 1/0", "E_PARSE"),
])
def test_diagnostic_codes(text, code):
    with pytest.raises(ParseError) as info:
        parse_session(text)
    assert info.value.code == code
    assert info.value.line >= 1 and info.value.col >= 1


def test_diagnostic_position_is_exact():
    with pytest.raises(ParseError) as info:
        parse_session("chart x, y\nf = x + nope")
    assert (info.value.line, info.value.col) == (2, 9)


def test_empty_definition_list_renders_chart_line_only():
    session = parse_session("chart x, y k=3/4")
    assert session.render() == "chart x, y k=3/4\n"


def test_substitute_forms_and_pairs():
    session = parse_session("chart x, y k=1\na = [x ; y*dx]\nV = {y*@x ; x}")
    point = [Fraction(2), Fraction(3)]
    a_at = substitute(session.definitions["a"], point)
    assert str(a_at) == "[2 ; 3*dx]"
    v_at = substitute(session.definitions["V"], point)
    assert str(v_at) == "{3*@x ; 2}"


def _round_trip(text):
    first = parse_session(text)
    rendered = first.render()
    second = parse_session(rendered)
    assert second.chart == first.chart
    assert list(second.definitions) == list(first.definitions)
    for name, value in first.definitions.items():
        assert second.definitions[name] == value
    assert second.render() == rendered


def test_round_trip_handwritten_sessions():
    _round_trip("chart x, y k=1\na = [x*dy ; dx^dy]\nb = d(a)\nf = x^3 - 2/7*y")
    _round_trip("chart x\nv = {@x ; x}\nb = Lv(v, v)")
    _round_trip("chart x, y, z k=-2/3\nw = x*dx^dy + z*dy^dz\nu = y*@x + x^2*@z")


def test_round_trip_generated_sessions():
    for seed in range(12):
        cfg = GenConfig(seed=seed, dimension=1 + seed % 3)
        chart = Chart(("x", "y", "z")[: cfg.dimension], Fraction(seed, 7))
        defs = {
            "f": gen_scalar(cfg, 0, chart),
            "al": gen_form(cfg, min(1, chart.dim), 1, chart),
            "v": gen_vector(cfg, 2, chart),
            "A": gen_gform(cfg, chart.dim - 1, 3, chart),
            "V": gen_gvector(cfg, 4, chart),
        }
        _round_trip(render_session(chart, defs))
