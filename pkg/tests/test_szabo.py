"""Tests for the affine Szabo operator and its characteristic polynomial."""

import numpy as np
import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

import symexpr as sx
from connection import FAMILY_1, FAMILY_2, TorsionError, flat, from_components, generic_family
from Golden_Corpus import CORPUS
from szabo import (
    CharPoly,
    char_poly,
    determinant,
    faddeev_leverrier,
    is_affine_szabo,
    numeric_spot_check,
    rescaling_holds,
    szabo_kernel_residual,
    szabo_operator,
    trace_identity_holds,
)
from tensorcalc import vanishes


x1, x2, x3 = sx.chart_vars(3)
lam = sx.LAMBDA


def integer_matrices(n):
    return st.lists(st.integers(-4, 4), min_size=n * n, max_size=n * n).map(
        lambda flat_entries: np.array(
            [sp.Integer(v) for v in flat_entries], dtype=object
        ).reshape(n, n)
    )


def sympy_char_poly(matrix):
    """c_0 .. c_n from sympy's berkowitz charpoly."""
    coeffs = sp.Matrix(matrix.tolist()).charpoly(lam).all_coeffs()
    return tuple(sx.canonical(c) for c in reversed(coeffs))


# ---------------------------------------------------------------------------
# Determinant and characteristic polynomial
# ---------------------------------------------------------------------------


class TestDeterminant:
    def test_small(self):
        m = np.array([[1, 2], [3, 4]], dtype=object)
        assert determinant(m) == -2

    def test_empty(self):
        assert determinant(np.empty((0, 0), dtype=object)) == 1

    def test_symbolic_against_sympy(self):
        a1, a2, a3 = sx.directions(3)
        m = np.array([[x1, a1, 0], [a2, x2 * a1, 1], [x3, 2, a3]], dtype=object)
        assert sx.is_zero(determinant(m) - sp.Matrix(m.tolist()).det())

    @settings(max_examples=30, deadline=None)
    @given(integer_matrices(4))
    def test_integer_against_sympy(self, m):
        assert determinant(m) == sp.Matrix(m.tolist()).det()


class TestCharPoly:
    @settings(max_examples=30, deadline=None)
    @given(integer_matrices(3))
    def test_methods_agree_with_sympy(self, m):
        expected = sympy_char_poly(m)
        assert char_poly(m, "minors").coefficients == expected
        assert char_poly(m, "trace").coefficients == expected

    def test_leading_coefficient_is_one(self, family2_l3):
        poly = char_poly(szabo_operator(family2_l3))
        assert poly.degree == 3
        assert poly.coefficient(3) == 1

    def test_symbolic_methods_agree(self, family2_l3):
        m = szabo_operator(family2_l3)
        by_minors = char_poly(m, "minors").coefficients
        by_trace = char_poly(m, "trace").coefficients
        assert all(sx.is_zero(p - q) for p, q in zip(by_minors, by_trace))

    def test_trace_and_determinant_coefficients(self, family2_l3):
        m = szabo_operator(family2_l3)
        poly = char_poly(m)
        assert sx.is_zero(poly.coefficient(2) + m.trace())
        assert sx.is_zero(poly.coefficient(0) + determinant(m.entries))

    def test_faddeev_leverrier_nilpotent(self):
        m = np.array([[0, x1, 0], [0, 0, x2], [0, 0, 0]], dtype=object)
        assert faddeev_leverrier(m) == (0, 0, 0, 1)

    def test_unknown_method(self):
        with pytest.raises(ValueError):
            char_poly(np.zeros((2, 2), dtype=object), "qr")

    def test_first_nonzero_subleading(self):
        poly = CharPoly((sp.S.One, sp.S.Zero, x1, sp.S.One))
        assert poly.first_nonzero_subleading() == (2, x1)
        assert not poly.is_nilpotent_form()
        assert sx.is_zero(poly.expr() - (lam**3 + x1 * lam**2 + 1))
        assert CharPoly((0, 0, 1)).is_nilpotent_form()


# ---------------------------------------------------------------------------
# Operator properties
# ---------------------------------------------------------------------------


class TestSzaboOperator:
    @pytest.mark.parametrize("family", (FAMILY_1, FAMILY_2))
    def test_direction_is_in_kernel(self, family):
        m = szabo_operator(generic_family(family))
        assert vanishes(szabo_kernel_residual(m))

    @pytest.mark.parametrize("family", (FAMILY_1, FAMILY_2))
    def test_trace_identity(self, family):
        assert trace_identity_holds(generic_family(family))

    def test_cubic_rescaling(self, family2_l3):
        assert rescaling_holds(szabo_operator(family2_l3))

    def test_family1_single_nonzero_row(self):
        m = szabo_operator(generic_family(FAMILY_1))
        assert vanishes(m.entries[1:, :])

    def test_flat_is_zero(self):
        assert vanishes(szabo_operator(flat(3)).entries)

    def test_entries_are_cubic_in_direction(self, family2_l3):
        m = szabo_operator(family2_l3)
        assert all(sx.is_homogeneous(e, m.alphas, 3) for e in m.entries.flat)

    def test_requires_torsion_free(self):
        with pytest.raises(TorsionError):
            szabo_operator(from_components(2, {(0, 1, 0): x1}))

    def test_matrix_views(self, family2_l3):
        m = szabo_operator(family2_l3)
        assert m.dim == 3
        assert m.transpose().entries[0, 1] == m.entries[1, 0]
        assert m.block(slice(0, 2), slice(1, 3)).entries[0, 0] == m.entries[0, 1]
        assert len(m.to_json()) == 3


# ---------------------------------------------------------------------------
# Verdicts
# ---------------------------------------------------------------------------


class TestVerdict:
    @pytest.mark.parametrize("entry", CORPUS, ids=lambda e: e.name)
    def test_corpus(self, entry):
        verdict = is_affine_szabo(entry.connection())
        assert verdict.is_szabo == entry.affine_szabo
        failing = verdict.failing_coefficient[0] if verdict.failing_coefficient else None
        assert failing == entry.failing_degree
        assert verdict.trace_identity_ok

    def test_methods_give_same_verdict(self, family2_l3):
        assert not is_affine_szabo(family2_l3, "trace").is_szabo
        assert not is_affine_szabo(family2_l3, "minors").is_szabo

    def test_flat_json(self):
        out = is_affine_szabo(flat(3)).to_json()
        assert out["is_szabo"]
        assert out["char_poly"] == ["0", "0", "0", "1"]
        assert out["trace_identity_ok"]
        assert "failing_coefficient" not in out

    def test_failing_coefficient_json(self, family2_l3):
        out = is_affine_szabo(family2_l3).to_json()
        assert not out["is_szabo"]
        assert out["failing_coefficient"]["degree"] == 1
        assert out["failing_coefficient"]["expr"] == out["char_poly"][1]
        assert out["char_poly"][0] == "0"
        assert out["char_poly"][2] == "0"


# ---------------------------------------------------------------------------
# Numeric spot check
# ---------------------------------------------------------------------------


class TestSpotCheck:
    def test_szabo_example(self, family1_rotation):
        spot = numeric_spot_check(family1_rotation, seed=3)
        assert spot["ok"]
        assert spot["points"] == 5

    def test_not_szabo_example(self, family2_l3):
        spot = numeric_spot_check(family2_l3, points=10, seed=3)
        assert not spot["ok"]

    def test_deterministic(self, family2_l3):
        assert numeric_spot_check(family2_l3, seed=7) == numeric_spot_check(family2_l3, seed=7)

    def test_opaque_atoms_cannot_be_evaluated(self):
        with pytest.raises(sx.UnboundAtomError):
            numeric_spot_check(generic_family(FAMILY_2))
