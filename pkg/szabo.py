"""
Affine Szabo operator S(X)Y = (nabla_X R)(Y, X)X in a fully symbolic
direction X = sum a_i d_i, its characteristic polynomial det(lam*I - S)
and the nilpotency verdict.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np
import sympy as sp

import symexpr as sx
from connection import frozen, require_torsion_free, zeros
from tensorcalc import cov_deriv_curvature, ricci_cubic_form


# ============================================================
# CONFIG
# ============================================================

EIGENVALUE_TOLERANCE = 1e-8
MINOR_EXPANSION_MAX_DIM = 8
SPOT_CHECK_POINTS = 5
SPOT_CHECK_NUMERATORS = (-5, 6)
SPOT_CHECK_DENOMINATORS = (1, 4)


# ============================================================
# TYPES
# ============================================================

@dataclass(frozen=True, eq=False)
class SzaboMatrix:
    """Column m holds the components of S(X) d_m."""
    entries: np.ndarray
    alphas: tuple

    @property
    def dim(self):
        return self.entries.shape[0]

    def trace(self):
        return sx.canonical(sp.Add(*np.diagonal(self.entries)))

    def apply(self, vector):
        return frozen(np.dot(self.entries, np.asarray(vector, dtype=object)))

    def transpose(self):
        return SzaboMatrix(frozen(self.entries.T), self.alphas)

    def block(self, rows, cols):
        return SzaboMatrix(frozen(self.entries[rows, cols]), self.alphas)

    def substitute(self, bindings):
        entries = np.frompyfunc(lambda e: sx.substitute(e, bindings), 1, 1)(self.entries)
        return SzaboMatrix(frozen(entries), self.alphas)

    def to_json(self, names=None):
        return [[sx.to_string(e, names) for e in row] for row in self.entries]


@dataclass(frozen=True)
class CharPoly:
    """c_0 ... c_n of det(lam*I - S); c_n is 1."""
    coefficients: tuple

    @property
    def degree(self):
        return len(self.coefficients) - 1

    def coefficient(self, d):
        return self.coefficients[d]

    def expr(self):
        return sx.canonical(sum(c * sx.LAMBDA**d for d, c in enumerate(self.coefficients)))

    def first_nonzero_subleading(self):
        """(d, c_d) for the highest d < n with c_d != 0, or None."""
        for d in range(self.degree - 1, -1, -1):
            if not sx.is_zero(self.coefficients[d]):
                return d, self.coefficients[d]
        return None

    def is_nilpotent_form(self):
        return self.first_nonzero_subleading() is None

    def to_json(self, names=None):
        return [sx.to_string(c, names) for c in self.coefficients]


@dataclass(frozen=True)
class SzaboVerdict:
    is_szabo: bool
    char_poly: CharPoly
    failing_coefficient: tuple = None
    trace_identity_ok: bool = None
    notes: list = field(default_factory=list)

    def to_json(self, names=None):
        out = {
            "is_szabo": self.is_szabo,
            "char_poly": self.char_poly.to_json(names),
            "trace_identity_ok": self.trace_identity_ok,
            "notes": list(self.notes),
        }
        if self.failing_coefficient is not None:
            d, value = self.failing_coefficient
            out["failing_coefficient"] = {"degree": d, "expr": sx.to_string(value, names)}
        return out


# ============================================================
# OPERATOR
# ============================================================

def contract_direction(dr, alphas):
    """S[r, m] = sum_ijk a_i a_j a_k DR[i, r, k, m, j]."""
    a = np.asarray(alphas, dtype=object)
    t = np.tensordot(a, dr, axes=([0], [0]))   # [r, k, m, j]
    t = np.tensordot(t, a, axes=([3], [0]))    # [r, k, m]
    t = np.tensordot(t, a, axes=([1], [0]))    # [r, m]
    return frozen(t)


@lru_cache(maxsize=64)
def szabo_operator(c):
    require_torsion_free(c)
    alphas = sx.directions(c.dim)
    return SzaboMatrix(contract_direction(cov_deriv_curvature(c).comp, alphas), alphas)


# ============================================================
# DETERMINANT AND CHARACTERISTIC POLYNOMIAL
# ============================================================

def determinant(matrix):
    """Exact Laplace expansion with minors memoized by their column set."""
    m = np.asarray(matrix, dtype=object)
    n = m.shape[0]
    if n == 0:
        return sp.S.One

    @lru_cache(maxsize=None)
    def minor(row, used):
        if row == n:
            return sp.S.One
        total = []
        position = 0
        for col in range(n):
            if used & (1 << col):
                continue
            entry = m[row, col]
            if entry != 0:
                sub = minor(row + 1, used | (1 << col))
                if sub != 0:
                    sign = -1 if position % 2 else 1
                    total.append(sign * entry * sub)
            position += 1
        return sx.canonical(sp.Add(*total))

    return minor(0, 0)


def faddeev_leverrier(matrix):
    """Coefficients c_0..c_n of det(lam*I - A) by the trace recursion."""
    a = np.asarray(matrix, dtype=object)
    n = a.shape[0]
    identity = zeros((n, n))
    np.fill_diagonal(identity, sp.S.One)
    coeffs = [sp.S.Zero] * (n + 1)
    coeffs[n] = sp.S.One
    m = zeros((n, n))
    for k in range(1, n + 1):
        m = frozen(np.dot(a, m) + identity * coeffs[n - k + 1])
        am = np.dot(a, m)
        coeffs[n - k] = sx.canonical(-sp.Rational(1, k) * sp.Add(*np.diagonal(am)))
    return tuple(coeffs)


def char_poly(m, method="auto"):
    """det(lam*I - S) as a CharPoly; `method` is auto, minors or trace."""
    entries = m.entries if isinstance(m, SzaboMatrix) else np.asarray(m, dtype=object)
    n = entries.shape[0]
    if method == "auto":
        method = "minors" if n <= MINOR_EXPANSION_MAX_DIM else "trace"
    if method == "trace":
        return CharPoly(faddeev_leverrier(entries))
    if method != "minors":
        raise ValueError(f"unknown characteristic polynomial method '{method}'")
    shifted = frozen(-entries)
    shifted = np.array(shifted, dtype=object)
    for i in range(n):
        shifted[i, i] = sx.canonical(sx.LAMBDA + shifted[i, i])
    coeffs = sx.coefficients(determinant(shifted), [sx.LAMBDA])
    return CharPoly(tuple(coeffs.get((d,), sp.S.Zero) for d in range(n + 1)))


# ============================================================
# VERDICT
# ============================================================

def is_affine_szabo(c, method="auto"):
    """Szabo iff det(lam*I - S(X)) = lam^n identically in the direction."""
    m = szabo_operator(c)
    poly = char_poly(m, method)
    failing = poly.first_nonzero_subleading()
    if failing is None:
        notes = [f"characteristic polynomial is lam^{m.dim}"]
    else:
        notes = [f"coefficient of lam^{failing[0]} does not vanish"]
    return SzaboVerdict(
        is_szabo=failing is None,
        char_poly=poly,
        failing_coefficient=failing,
        trace_identity_ok=trace_identity_holds(c),
        notes=notes,
    )


# ============================================================
# PROPERTIES
# ============================================================

def szabo_kernel_residual(m):
    """S(X)X, identically zero."""
    return m.apply(m.alphas)


def rescaling_holds(m):
    """S(beta*X) = beta^3 S(X) for a fresh parameter beta."""
    beta = sx.parameter("beta")
    scaled = m.substitute({a: beta * a for a in m.alphas})
    return all(
        sx.is_zero(s - beta**3 * e) for s, e in zip(scaled.entries.flat, m.entries.flat)
    )


def trace_identity_holds(c):
    """trace S(X) = (nabla_X Ric)(X, X)."""
    m = szabo_operator(c)
    return sx.is_zero(m.trace() - ricci_cubic_form(c, m.alphas))


def _random_rational(rng):
    num = int(rng.integers(*SPOT_CHECK_NUMERATORS))
    den = int(rng.integers(*SPOT_CHECK_DENOMINATORS))
    return Fraction(num, den)


def numeric_spot_check(c, points=SPOT_CHECK_POINTS, seed=0):
    """
    Largest eigenvalue modulus of S(X) at random rational points and
    directions. S is evaluated exactly and the eigenvalues are the roots
    of its exact characteristic polynomial.
    Connections with opaque atoms cannot be evaluated.
    """
    m = szabo_operator(c)
    rng = np.random.default_rng(seed)
    largest = 0.0
    for _ in range(points):
        point = {v: _random_rational(rng) for v in c.chart.variables}
        point.update({a: _random_rational(rng) for a in m.alphas})
        exact = np.array(
            [[sx.eval_exact(e, point) for e in row] for row in m.entries], dtype=object
        )
        coefficients = faddeev_leverrier(exact)
        eigenvalues = np.roots([float(q) for q in reversed(coefficients)])
        largest = max(largest, float(np.max(np.abs(eigenvalues))) if eigenvalues.size else 0.0)
    return {"points": points, "max_abs_eigenvalue": largest, "ok": largest < EIGENVALUE_TOLERANCE}
