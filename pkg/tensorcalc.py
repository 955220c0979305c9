"""
Curvature, Ricci tensor, covariant derivatives and the cyclic parallel
Ricci test for torsion-free connections.

Conventions (0-based, gamma[i, j, k] = Gamma^k_ij):
    R[i, j, k, l]          R(d_k, d_l) d_j = sum_i R^i_jkl d_i
    Ric[j, k]              Ric(d_j, d_k) = sum_i R^i_kij
    DRic[i, j, k]          (nabla_{d_i} Ric)_jk
    DR[m, i, j, k, l]      (nabla_{d_m} R)^i_jkl
"""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
import sympy as sp

import symexpr as sx
from connection import (
    FAMILY_1,
    FAMILY_2,
    diff_all,
    frozen,
    generic_family,
    nonzero_entries,
    require_torsion_free,
)


# ============================================================
# TENSOR TYPES
# ============================================================

def sparse_json(arr, names=None):
    """Nonzero components as {indices (1-based), expr}, in index order."""
    return [
        {"indices": [i + 1 for i in idx], "expr": sx.to_string(value, names)}
        for idx, value in nonzero_entries(arr)
    ]


@dataclass(frozen=True, eq=False)
class _Tensor:
    comp: np.ndarray

    def to_json(self, names=None):
        return sparse_json(self.comp, names)


@dataclass(frozen=True, eq=False)
class CurvatureTensor(_Tensor):
    def operator(self, k, l, j):
        """Components of R(d_k, d_l) d_j."""
        return tuple(self.comp[:, j, k, l])


@dataclass(frozen=True, eq=False)
class RicciTensor(_Tensor):
    pass


@dataclass(frozen=True, eq=False)
class CovDerivRicci(_Tensor):
    pass


@dataclass(frozen=True, eq=False)
class CovDerivCurvature(_Tensor):
    pass


@dataclass(frozen=True)
class CyclicVerdict:
    verdict: bool
    witness: tuple = None  # ((i, j, k), expr) of the first failing triple

    def to_json(self, names=None):
        if self.witness is None:
            return {"verdict": self.verdict, "witness": None}
        (i, j, k), value = self.witness
        return {
            "verdict": self.verdict,
            "witness": {"indices": [i + 1, j + 1, k + 1], "expr": sx.to_string(value, names)},
        }


# ============================================================
# PARTIAL DERIVATIVES
# ============================================================

def gradient(arr, variables):
    """d[a, ...] = d_a arr[...]."""
    return np.stack([diff_all(arr, v) for v in variables])


# ============================================================
# CURVATURE AND RICCI
# ============================================================

@lru_cache(maxsize=64)
def curvature(c):
    """R^i_jkl = d_k G^i_lj - d_l G^i_kj + sum_m (G^i_km G^m_lj - G^i_lm G^m_kj)."""
    require_torsion_free(c)
    g = c.gamma
    dg = gradient(g, c.chart.variables)  # dg[a, p, q, r] = d_a G^r_pq
    linear = dg.transpose(3, 2, 0, 1) - dg.transpose(3, 2, 1, 0)
    quad = np.tensordot(g, g, axes=([1], [2]))  # quad[a, i, b, j] = sum_m G^i_am G^m_bj
    r = linear + quad.transpose(1, 3, 0, 2) - quad.transpose(1, 3, 2, 0)
    return CurvatureTensor(frozen(r))


@lru_cache(maxsize=64)
def ricci(c):
    """Ric_jk = sum_i R^i_kij."""
    r = curvature(c).comp
    return RicciTensor(frozen(np.trace(r, axis1=0, axis2=2).T))


@lru_cache(maxsize=64)
def cov_deriv_ricci(c):
    """(nabla_i Ric)_jk = d_i Ric_jk - G^m_ij Ric_mk - G^m_ik Ric_jm."""
    g = c.gamma
    ric = ricci(c).comp
    d_ric = gradient(ric, c.chart.variables)
    first = np.tensordot(g, ric, axes=([2], [0]))
    second = np.tensordot(g, ric, axes=([2], [1])).transpose(0, 2, 1)
    return CovDerivRicci(frozen(d_ric - first - second))


@lru_cache(maxsize=64)
def cov_deriv_curvature(c):
    """
    (nabla_m R)^i_jkl = d_m R^i_jkl + G^i_mr R^r_jkl - G^r_mk R^i_jrl
                        - G^r_ml R^i_jkr - G^r_mj R^i_rkl
    """
    g = c.gamma
    r = curvature(c).comp
    d_r = gradient(r, c.chart.variables)
    upper = np.tensordot(g, r, axes=([1], [0]))
    slot_k = np.tensordot(g, r, axes=([2], [2])).transpose(0, 2, 3, 1, 4)
    slot_l = np.tensordot(g, r, axes=([2], [3])).transpose(0, 2, 3, 4, 1)
    slot_j = np.tensordot(g, r, axes=([2], [1])).transpose(0, 2, 1, 3, 4)
    return CovDerivCurvature(frozen(d_r + upper - slot_k - slot_l - slot_j))


# ============================================================
# IDENTITIES
# ============================================================

def curvature_antisymmetry(c):
    """R^i_jkl + R^i_jlk, identically zero."""
    r = curvature(c).comp
    return frozen(r + r.transpose(0, 1, 3, 2))


def first_bianchi(c):
    """R^i_jkl + R^i_klj + R^i_ljk, identically zero for torsion-free connections."""
    r = curvature(c).comp
    return frozen(r + r.transpose(0, 3, 1, 2) + r.transpose(0, 2, 3, 1))


def vanishes(arr):
    return all(sx.is_zero(value) for value in np.asarray(arr).flat)


# ============================================================
# CYCLIC PARALLEL RICCI
# ============================================================

@lru_cache(maxsize=64)
def cyclic_sum(c):
    """C[i, j, k] = (nabla_i Ric)_jk + (nabla_j Ric)_ki + (nabla_k Ric)_ij."""
    n = cov_deriv_ricci(c).comp
    return frozen(n + n.transpose(2, 0, 1) + n.transpose(1, 2, 0))


def is_cyclic_parallel(c):
    """Verdict with the lexicographically first nonzero cyclic sum as witness."""
    for idx, value in np.ndenumerate(cyclic_sum(c)):
        if not sx.is_zero(value):
            return CyclicVerdict(False, (idx, value))
    return CyclicVerdict(True)


def cubic_form(arr, alphas):
    """sum_ijk a_i a_j a_k arr[i, j, k]."""
    total = [alphas[i] * alphas[j] * alphas[k] * value for (i, j, k), value in nonzero_entries(arr)]
    return sx.canonical(sp.Add(*total))


def ricci_cubic_form(c, alphas=None):
    """(nabla_X Ric)(X, X) for X = sum a_i d_i."""
    alphas = alphas or sx.directions(c.dim)
    return cubic_form(cov_deriv_ricci(c).comp, alphas)


def cubic_form_coefficients(c):
    """{alpha exponent tuple: coefficient} of (nabla_X Ric)(X, X), grlex order."""
    alphas = sx.directions(c.dim)
    coeffs = sx.coefficients(ricci_cubic_form(c, alphas), alphas)
    return dict(sorted(coeffs.items(), key=lambda kv: tuple(-e for e in kv[0])))


def cyclic_parallel_pde_system(family):
    """Independent alpha-coefficients of (nabla_X Ric)(X, X) for a generic family."""
    if family not in (FAMILY_1, FAMILY_2):
        raise ValueError(f"no generic family '{family}'")
    return list(cubic_form_coefficients(generic_family(family)).values())


@dataclass(frozen=True)
class PdeComparison:
    matched: tuple     # (derived index, reference index, rational scale)
    unmatched_derived: tuple
    unmatched_reference: tuple

    @property
    def equal(self):
        return not self.unmatched_derived and not self.unmatched_reference


def compare_pde_systems(derived, reference):
    """Match equations one-to-one up to a nonzero rational factor."""
    matched, used = [], set()
    unmatched = []
    for d_index, equation in enumerate(derived):
        for r_index, target in enumerate(reference):
            if r_index in used:
                continue
            scale = sx.proportionality(equation, target)
            if scale is not None and scale != 0:
                matched.append((d_index, r_index, scale))
                used.add(r_index)
                break
        else:
            unmatched.append(d_index)
    missing = tuple(i for i in range(len(reference)) if i not in used)
    return PdeComparison(tuple(matched), tuple(unmatched), missing)
