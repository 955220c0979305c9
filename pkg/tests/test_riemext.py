"""Tests for Riemannian extensions and their Levi-Civita connection."""

import numpy as np
import pytest

import symexpr as sx
from connection import Chart, Connection, TorsionError, flat, from_components, zeros
from Golden_Corpus import CORPUS, FAMILY1_LINEAR_EXTENSION_METRIC
from riemext import (
    NeutralMetric,
    SingularMetricError,
    check_block_structure,
    extension_curvature_checks,
    is_pseudo_szabo,
    levi_civita_checks,
    levi_civita_closed_form,
    levi_civita_koszul,
    metric_compatibility,
    metric_determinant,
    metric_inverse,
    riemannian_extension,
    signature_counts,
)
from szabo import is_affine_szabo
from tensorcalc import curvature, vanishes


x1, x2, x3, x4 = sx.chart_vars(4)


@pytest.fixture
def plane():
    """Two-dimensional connection with nonzero curvature."""
    return from_components(2, {(0, 0, 1): x1**2, (0, 1, 0): x2}, symmetrize=True)


@pytest.fixture
def plane_metric(plane):
    return riemannian_extension(plane)


# ---------------------------------------------------------------------------
# Metric
# ---------------------------------------------------------------------------


class TestMetric:
    def test_reference_components(self, corpus):
        g = riemannian_extension(corpus("FAMILY1_LINEAR")).g
        for (i, j), value in np.ndenumerate(g):
            expected = FAMILY1_LINEAR_EXTENSION_METRIC.get((min(i, j) + 1, max(i, j) + 1), 0)
            assert sx.is_zero(value - expected)

    def test_to_json(self, corpus):
        out = riemannian_extension(corpus("FAMILY1_LINEAR")).to_json()
        assert out["dim"] == 6
        assert out["g"] == [
            {"i": 1, "j": 1, "expr": "-2*x1*x4"},
            {"i": 1, "j": 2, "expr": "-4*x3*x4"},
            {"i": 1, "j": 3, "expr": "4*x2*x4"},
            {"i": 1, "j": 4, "expr": "1"},
            {"i": 2, "j": 5, "expr": "1"},
            {"i": 3, "j": 6, "expr": "1"},
        ]

    def test_inverse(self, plane_metric):
        inv = metric_inverse(plane_metric)
        product = np.dot(plane_metric.g, inv)
        for (i, j), value in np.ndenumerate(product):
            assert sx.is_zero(value - (1 if i == j else 0))

    def test_inverse_rejects_other_metrics(self):
        g = np.array([[x1, 1], [1, x1]], dtype=object)
        with pytest.raises(SingularMetricError):
            metric_inverse(NeutralMetric(1, g))

    @pytest.mark.parametrize("n", (1, 2, 3))
    def test_determinant(self, n):
        c = from_components(n, {(0, 0, n - 1): sx.chart_var(1) ** 2}, symmetrize=True)
        assert metric_determinant(riemannian_extension(c)) == (-1) ** n

    def test_neutral_signature(self, plane_metric, corpus):
        assert signature_counts(plane_metric) == (2, 2)
        assert signature_counts(riemannian_extension(corpus("FAMILY2_L3_NOT_SZABO"))) == (3, 3)

    def test_requires_torsion_free(self):
        with pytest.raises(TorsionError):
            riemannian_extension(from_components(2, {(0, 1, 0): x1}))

    def test_requires_standard_chart(self):
        c = Connection(Chart(2, (x2, x1)), zeros((2, 2, 2)), torsion_free=True)
        with pytest.raises(ValueError):
            riemannian_extension(c)


# ---------------------------------------------------------------------------
# Levi-Civita connection
# ---------------------------------------------------------------------------


class TestLeviCivita:
    def test_koszul_equals_closed_form(self, plane, plane_metric):
        assert levi_civita_koszul(plane_metric) == levi_civita_closed_form(plane)

    def test_metric_compatible(self, plane_metric):
        assert vanishes(metric_compatibility(plane_metric))

    def test_closed_form_is_compatible(self, plane, plane_metric):
        assert vanishes(metric_compatibility(plane_metric, levi_civita_closed_form(plane)))

    def test_flat_base_gives_flat_extension(self):
        assert vanishes(curvature(levi_civita_koszul(riemannian_extension(flat(2)))).comp)

    def test_curvature_relations(self, plane):
        checks = extension_curvature_checks(plane)
        assert set(checks) == {"base_block", "fiber_first_slot", "fiber_third_slot"}
        for check in checks.values():
            assert check == {"ok": True, "failing": None}

    def test_block_structure(self, plane):
        for name, check in check_block_structure(plane).items():
            assert check["ok"], f"{name}: {check['failing']}"

    def test_levi_civita_checks(self, plane):
        checks = levi_civita_checks(plane)
        assert checks == {
            "koszul_equals_closed_form": {"ok": True, "failing": None},
            "metric_compatible": {"ok": True, "failing": None},
        }

    def test_levi_civita_checks_name_the_failing_entry(self, plane):
        checks = levi_civita_checks(plane, riemannian_extension(flat(2)))
        assert checks["koszul_equals_closed_form"] == {"ok": False, "failing": "G~[1,1,2]: -x1^2"}
        assert checks["metric_compatible"]["ok"]

    def test_pseudo_szabo_follows_base(self, plane, plane_metric):
        assert is_pseudo_szabo(plane_metric).is_szabo == is_affine_szabo(plane).is_szabo


@pytest.mark.slow
class TestCorpusExtensions:
    @pytest.mark.parametrize("entry", CORPUS, ids=lambda e: e.name)
    def test_koszul_equals_closed_form(self, entry):
        c = entry.connection()
        assert levi_civita_koszul(riemannian_extension(c)) == levi_civita_closed_form(c)

    @pytest.mark.parametrize("entry", CORPUS, ids=lambda e: e.name)
    def test_pseudo_szabo_iff_affine_szabo(self, entry):
        metric = riemannian_extension(entry.connection())
        assert is_pseudo_szabo(metric).is_szabo == entry.affine_szabo

    @pytest.mark.parametrize("name", ("FAMILY1_LINEAR", "FAMILY2_L3_NOT_SZABO"))
    def test_block_structure(self, corpus, name):
        for check in check_block_structure(corpus(name)).values():
            assert check["ok"]
