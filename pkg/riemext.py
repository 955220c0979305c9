"""
Riemannian extension of a torsion-free connection to the cotangent bundle.

Fiber coordinates are x_{n+1} ... x_{2n}; the primed index i' is i + n.
    g(d_i, d_j)   = -2 sum_r x_{n+r} Gamma^r_ij
    g(d_i, d_j')  = delta_ij
    g(d_i', d_j') = 0
"""

from dataclasses import dataclass

import numpy as np
import scipy.linalg
import sympy as sp

import symexpr as sx
from connection import (
    GENERIC,
    Chart,
    Connection,
    frozen,
    nonzero_entries,
    require_torsion_free,
    zeros,
)
from szabo import char_poly, determinant, is_affine_szabo, szabo_operator
from tensorcalc import curvature, gradient


class SingularMetricError(ValueError):
    pass


# ============================================================
# METRIC
# ============================================================

@dataclass(frozen=True, eq=False)
class NeutralMetric:
    base_dim: int
    g: np.ndarray

    @property
    def dim(self):
        return 2 * self.base_dim

    @property
    def chart(self):
        return Chart.standard(self.dim)

    def base_block(self):
        n = self.base_dim
        return self.g[:n, :n]

    def to_json(self):
        return {
            "dim": self.dim,
            "g": [
                {"i": i + 1, "j": j + 1, "expr": sx.to_string(value)}
                for (i, j), value in nonzero_entries(self.g)
                if i <= j
            ],
        }


def _check_standard_chart(c):
    if tuple(c.chart.variables) != sx.chart_vars(c.dim):
        raise ValueError("Riemannian extension needs the standard chart x1..xn")


def riemannian_extension(c):
    require_torsion_free(c)
    _check_standard_chart(c)
    n = c.dim
    fiber = np.asarray(sx.chart_vars(2 * n)[n:], dtype=object)
    g = zeros((2 * n, 2 * n))
    g[:n, :n] = -2 * np.tensordot(c.gamma, fiber, axes=([2], [0]))
    for i in range(n):
        g[i, i + n] = sp.S.One
        g[i + n, i] = sp.S.One
    return NeutralMetric(n, frozen(g))


def metric_inverse(metric):
    """[[G, I], [I, 0]]^-1 = [[0, I], [I, -G]], checked against g * g^-1 = I."""
    n = metric.base_dim
    inv = zeros((2 * n, 2 * n))
    inv[n:, n:] = -metric.base_block()
    for i in range(n):
        inv[i, i + n] = sp.S.One
        inv[i + n, i] = sp.S.One
    inv = frozen(inv)
    product = frozen(np.dot(metric.g, inv))
    for (i, j), value in np.ndenumerate(product):
        if not sx.is_zero(value - (1 if i == j else 0)):
            raise SingularMetricError(f"metric is not a Riemannian extension at entry ({i + 1}, {j + 1})")
    return inv


def metric_determinant(metric):
    """(-1)^n for every extension of an n-dimensional connection."""
    return determinant(metric.g)


def signature_counts(metric, point=None, seed=0):
    """(positive, negative) eigenvalue counts of g at a numeric point."""
    if point is None:
        rng = np.random.default_rng(seed)
        point = {v: float(rng.uniform(-2.0, 2.0)) for v in metric.chart.variables}
    numeric = np.array([[sx.eval_numeric(e, point) for e in row] for row in metric.g], dtype=float)
    eigenvalues = scipy.linalg.eigvalsh(numeric)
    return int(np.sum(eigenvalues > 0)), int(np.sum(eigenvalues < 0))


# ============================================================
# LEVI-CIVITA CONNECTION
# ============================================================

def levi_civita_koszul(metric):
    """Gamma[a, b, c] = 1/2 sum_d g^cd (d_a g_db + d_b g_ad - d_d g_ab)."""
    inv = metric_inverse(metric)
    dg = gradient(metric.g, metric.chart.variables)  # dg[e, p, q] = d_e g_pq
    koszul = dg.transpose(0, 2, 1) + dg.transpose(1, 0, 2) - dg.transpose(1, 2, 0)
    gamma = np.tensordot(koszul, inv, axes=([2], [1])) * sp.Rational(1, 2)
    return Connection(metric.chart, gamma, GENERIC, torsion_free=True)


def levi_civita_closed_form(c):
    require_torsion_free(c)
    _check_standard_chart(c)
    n = c.dim
    base = c.gamma
    fiber = np.asarray(sx.chart_vars(2 * n)[n:], dtype=object)
    gamma = zeros((2 * n, 2 * n, 2 * n))
    gamma[:n, :n, :n] = base
    # Gamma^k'_i'j = -Gamma^i_jk, Gamma^k'_ij' = -Gamma^j_ik
    gamma[n:, :n, n:] = -base.transpose(2, 0, 1)
    gamma[:n, n:, n:] = -base.transpose(0, 2, 1)

    dg = gradient(base, c.chart.variables)  # dg[k, i, j, r] = d_k Gamma^r_ij
    quad = np.tensordot(base, base, axes=([2], [1]))  # quad[i, j, k, r] = sum_l G^l_ij G^r_kl
    inner = dg.transpose(1, 2, 0, 3) - dg - dg.transpose(1, 0, 2, 3) + 2 * quad
    gamma[:n, :n, n:] = np.tensordot(inner, fiber, axes=([3], [0]))
    return Connection(Chart.standard(2 * n), gamma, GENERIC, torsion_free=True)


def metric_compatibility(metric, conn=None):
    """(nabla_a g)_bc under `conn` (default: the Koszul connection)."""
    conn = conn or levi_civita_koszul(metric)
    g = metric.g
    dg = gradient(g, metric.chart.variables)
    first = np.tensordot(conn.gamma, g, axes=([2], [0]))
    second = np.tensordot(conn.gamma, g, axes=([2], [1])).transpose(0, 2, 1)
    return frozen(dg - first - second)


# ============================================================
# SZABO PROPERTY OF THE EXTENSION
# ============================================================

def is_pseudo_szabo(metric):
    return is_affine_szabo(levi_civita_koszul(metric))


def _first_failure(pairs):
    for label, value in pairs:
        if not sx.is_zero(value):
            return f"{label}: {sx.to_string(value)}"
    return None


def _check(pairs):
    failing = _first_failure(pairs)
    return {"ok": failing is None, "failing": failing}


def check_block_structure(c):
    """
    S~ = [[S, 0], [*, S^t]] for the extension's Szabo matrix, with fiber
    directions set to zero in the diagonal blocks, and the matching
    factorization of the characteristic polynomial.
    """
    n = c.dim
    base = szabo_operator(c)
    ext = szabo_operator(levi_civita_closed_form(c))
    drop_fiber = {a: sp.S.Zero for a in ext.alphas[n:]}
    upper_left = ext.block(slice(0, n), slice(0, n)).substitute(drop_fiber)
    lower_right = ext.block(slice(n, 2 * n), slice(n, 2 * n)).substitute(drop_fiber)
    upper_right = ext.entries[:n, n:]

    factored = char_poly(base).expr() * char_poly(base.transpose()).expr()
    return {
        "upper_right_zero": _check(
            (f"S~[{i + 1},{j + n + 1}]", v) for (i, j), v in np.ndenumerate(upper_right)
        ),
        "upper_left_is_base": _check(
            (f"S~[{i + 1},{j + 1}]", v - base.entries[i, j])
            for (i, j), v in np.ndenumerate(upper_left.entries)
        ),
        "lower_right_is_transpose": _check(
            (f"S~[{i + n + 1},{j + n + 1}]", v - base.entries[j, i])
            for (i, j), v in np.ndenumerate(lower_right.entries)
        ),
        "char_poly_factorization": _check(
            [("P(S~) - P(S)P(S^t)", char_poly(ext).expr() - factored)]
        ),
    }


def extension_curvature_checks(c):
    """
    Curvature of the extension against the base curvature:
        R~^h_ikj   = R^h_ikj
        R~^h'_i'kj = -R^i_hkj
        R~^h'_ik'j = R^k_jhi
    """
    n = c.dim
    r = curvature(c).comp
    rt = curvature(levi_civita_closed_form(c)).comp
    idx = list(np.ndindex(n, n, n, n))
    return {
        "base_block": _check(
            (f"R~[{h + 1},{i + 1},{k + 1},{j + 1}]", rt[h, i, k, j] - r[h, i, k, j])
            for h, i, k, j in idx
        ),
        "fiber_first_slot": _check(
            (f"R~[{h + n + 1},{i + n + 1},{k + 1},{j + 1}]", rt[h + n, i + n, k, j] + r[i, h, k, j])
            for h, i, k, j in idx
        ),
        "fiber_third_slot": _check(
            (f"R~[{h + n + 1},{i + 1},{k + n + 1},{j + 1}]", rt[h + n, i, k + n, j] - r[k, j, h, i])
            for h, i, k, j in idx
        ),
    }


def levi_civita_checks(c, metric=None):
    """Koszul connection against the closed form, and nabla g = 0 for it."""
    metric = metric or riemannian_extension(c)
    koszul = levi_civita_koszul(metric)
    closed = levi_civita_closed_form(c).gamma
    nabla_g = metric_compatibility(metric, koszul)
    return {
        "koszul_equals_closed_form": _check(
            (f"G~[{i + 1},{j + 1},{k + 1}]", v - closed[i, j, k])
            for (i, j, k), v in np.ndenumerate(koszul.gamma)
        ),
        "metric_compatible": _check(
            (f"(nabla g)[{a + 1},{b + 1},{d + 1}]", v) for (a, b, d), v in np.ndenumerate(nabla_g)
        ),
    }
