"""Tests for the connection definition language."""

import pytest
import sympy as sp

import symexpr as sx
from connection import FAMILY_1, GENERIC, is_torsion_free
from Connection_Parser import (
    ConnectionSpecError,
    ConnectionSyntaxError,
    DimensionLimitError,
    IndexOutOfRangeError,
    InconsistentSymmetryError,
    UnknownVariableError,
    format_connection_spec,
    parse_connection_file,
    to_connection,
    tokenize,
)


x1, x2, x3 = sx.chart_vars(3)

ROTATION = """\
# family-1 example with a rotation in the (x2, x3) plane
dim 3
vars x1 x2 x3
family 1
G[1,2,1] = -x3
G[1,3,1] = x2
"""


# ---------------------------------------------------------------------------
# Parsing
# ---------------------------------------------------------------------------


class TestParse:
    def test_rotation_example(self, family1_rotation):
        spec = parse_connection_file(ROTATION)
        assert spec.dim == 3
        assert spec.declared_family == FAMILY_1
        assert spec.torsion_free
        assert spec.christoffels == (
            (1, 2, 1, -x3),
            (1, 3, 1, x2),
            (2, 1, 1, -x3),
            (3, 1, 1, x2),
        )
        c = to_connection(spec)
        assert c == family1_rotation
        assert c.family == FAMILY_1

    def test_default_family_and_variables(self):
        spec = parse_connection_file("dim 2; G[1,1,2] = x1")
        assert spec.variables == ("x1", "x2")
        assert spec.declared_family is None
        assert to_connection(spec).family == GENERIC

    def test_aliases(self):
        spec = parse_connection_file("dim 2\nvars u v\nG[1,1,2] = u^2 - v/2")
        assert spec.christoffels == ((1, 1, 2, x1**2 - x2 / 2),)
        assert spec.names == {x1: "u", x2: "v"}

    def test_arithmetic(self):
        spec = parse_connection_file("dim 1\nG[1,1,1] = -(x1 + 1)^2 * 3 / 4")
        expected = sp.Rational(-3, 4) * (x1**2 + 2 * x1 + 1)
        assert sx.is_zero(spec.christoffels[0][3] - expected)

    def test_zero_components_dropped(self):
        spec = parse_connection_file("dim 2\nG[1,1,1] = x1 - x1")
        assert spec.christoffels == ()

    def test_functions_and_derivatives(self):
        text = "dim 3\nfunc f(x1)\nG[1,1,1] = d2(f)(x1) + f(x1)^2"
        spec = parse_connection_file(text)
        f = sx.opaque("f", x1)
        expected = sx.diff(sx.diff(f, x1), x1) + f**2
        assert sx.is_zero(spec.christoffels[0][3] - expected)
        assert spec.functions == (("f", ("x1",)),)

    def test_multi_variable_derivative(self):
        text = "dim 2\nfunc g(x1, x2)\nG[1,2,2] = d[x1,x2](g)(x1,x2)"
        spec = parse_connection_file(text)
        g = sx.opaque("g", x1, x2)
        expected = sx.diff(sx.diff(g, x1), x2)
        assert [entry[:3] for entry in spec.christoffels] == [(1, 2, 2), (2, 1, 2)]
        assert sx.is_zero(spec.christoffels[0][3] - expected)

    def test_symmetric_partner_may_be_repeated(self):
        spec = parse_connection_file("dim 2\nG[1,2,1] = x1\nG[2,1,1] = x1")
        assert len(spec.christoffels) == 2

    def test_torsion_free_false(self):
        spec = parse_connection_file("dim 2\ntorsion_free false\nG[1,2,1] = x1\nG[2,1,1] = x2")
        assert not spec.torsion_free
        assert not is_torsion_free(to_connection(spec))

    def test_tokens_carry_positions(self):
        tokens = tokenize("dim 2\n  G[1,1,1] = x1")
        g = next(t for t in tokens if t.text == "G")
        assert (g.line, g.column) == (2, 3)


# ---------------------------------------------------------------------------
# Printing
# ---------------------------------------------------------------------------


class TestFormat:
    def test_round_trip(self):
        spec = parse_connection_file(ROTATION)
        text = format_connection_spec(spec)
        assert parse_connection_file(text) == spec

    def test_prints_aliases_and_upper_triangle(self):
        spec = parse_connection_file("dim 2\nvars u v\nG[2,1,1] = u^2 - v/2")
        assert format_connection_spec(spec) == (
            "dim 2\n"
            "vars u v\n"
            "torsion_free true\n"
            "G[1,2,1] = u^2 - 1/2*v\n"
        )

    def test_round_trip_with_functions(self):
        text = "dim 3\nfamily 2\nfunc f(x1)\nfunc g(x1,x2)\nG[1,1,2] = d2(f)(x1)*x2 + d[x1,x2](g)(x1,x2)"
        spec = parse_connection_file(text)
        assert parse_connection_file(format_connection_spec(spec)) == spec

    def test_round_trip_with_torsion(self):
        spec = parse_connection_file("dim 2\ntorsion_free false\nG[1,2,1] = x1")
        printed = format_connection_spec(spec)
        assert "torsion_free false" in printed
        assert parse_connection_file(printed) == spec


# ---------------------------------------------------------------------------
# Errors
# ---------------------------------------------------------------------------


class TestErrors:
    def test_index_out_of_range(self):
        with pytest.raises(IndexOutOfRangeError) as info:
            parse_connection_file("dim 3\nG[1,4,1] = x1")
        assert (info.value.line, info.value.column) == (2, 5)
        assert str(info.value).startswith("line 2, column 5: ")

    def test_unknown_variable(self):
        with pytest.raises(UnknownVariableError) as info:
            parse_connection_file("dim 2\nG[1,1,1] = y")
        assert (info.value.line, info.value.column) == (2, 12)

    def test_unknown_function_in_derivative(self):
        with pytest.raises(UnknownVariableError):
            parse_connection_file("dim 1\nG[1,1,1] = d1(h)(x1)")

    def test_inconsistent_symmetry(self):
        with pytest.raises(InconsistentSymmetryError) as info:
            parse_connection_file("dim 2\nG[1,2,1] = x1\nG[2,1,1] = x2")
        assert info.value.line == 2

    def test_dimension_limit(self):
        with pytest.raises(DimensionLimitError) as info:
            parse_connection_file("dim 5", max_dim=4)
        assert (info.value.line, info.value.column) == (1, 5)

    @pytest.mark.parametrize(
        "text",
        [
            "",
            "G[1,1,1] = 1",
            "dim 2\ndim 2",
            "dim 0",
            "dim 2\nG[1,1,1] = x1 +",
            "dim 2\nG[1,1,1] = x1 $ 2",
            "dim 2\nG[1,1,1] = 0.5",
            "dim 2\nG[1,1,1] = 1/x1",
            "dim 2\nG[1,1,1] = 1/0",
            "dim 2\nG[1,1,1] = x1\nG[1,1,1] = x2",
            "dim 2\nvars u",
            "dim 2\nfamily 3",
            "dim 2\ntorsion_free maybe",
            "dim 2\nfunc f(x1, x1)",
            "dim 2\nfunc f(x1)\nG[1,1,1] = f(x2)",
            "dim 2\nfunc g(x1, x2)\nG[1,1,1] = d2(g)(x1,x2)",
            "dim 2\nG[1,1,1] = x1\nvars u v",
            "dim 2\nconnection",
        ],
    )
    def test_syntax_errors(self, text):
        with pytest.raises(ConnectionSyntaxError):
            parse_connection_file(text)

    def test_errors_are_value_errors(self):
        assert issubclass(ConnectionSpecError, ValueError)
