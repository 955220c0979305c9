"""
Affine connections on a coordinate chart, given by Christoffel symbols.

Index convention (0-based internally): gamma[i, j, k] is the coefficient of
d_k in nabla_{d_i} d_j.
"""

from dataclasses import dataclass, field

import numpy as np
import sympy as sp

import symexpr as sx


# ============================================================
# CONFIG
# ============================================================

FAMILY_1 = "family-1"
FAMILY_2 = "family-2"
GENERIC = "generic"

FAMILIES = (FAMILY_1, FAMILY_2, GENERIC)


class TorsionError(ValueError):
    pass


# ============================================================
# ARRAY HELPERS
# ============================================================

expand_all = np.frompyfunc(sx.canonical, 1, 1)


def zeros(shape):
    arr = np.empty(shape, dtype=object)
    arr.fill(sp.S.Zero)
    return arr


def frozen(arr):
    """Canonical, read-only copy of an object array."""
    arr = np.asarray(expand_all(arr), dtype=object)
    arr.setflags(write=False)
    return arr


def diff_all(arr, v):
    return np.frompyfunc(lambda e: sx.diff(e, v), 1, 1)(arr)


def nonzero_entries(arr):
    return [(idx, arr[idx]) for idx in np.ndindex(arr.shape) if arr[idx] != 0]


# ============================================================
# CHART
# ============================================================

@dataclass(frozen=True)
class Chart:
    dim: int
    variables: tuple = field(default=())

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError(f"chart dimension must be >= 1, got {self.dim}")
        if not self.variables:
            object.__setattr__(self, "variables", sx.chart_vars(self.dim))
        if len(self.variables) != self.dim:
            raise ValueError(f"chart of dimension {self.dim} needs {self.dim} variables")
        if len(set(self.variables)) != self.dim:
            raise ValueError("chart variable names must be unique")

    @classmethod
    def standard(cls, n):
        return cls(n, sx.chart_vars(n))


# ============================================================
# CONNECTION
# ============================================================

@dataclass(frozen=True, eq=False)
class Connection:
    chart: Chart
    gamma: np.ndarray
    family: str = GENERIC
    torsion_free: bool = False

    def __post_init__(self):
        n = self.chart.dim
        gamma = np.asarray(self.gamma, dtype=object)
        if gamma.shape != (n, n, n):
            raise ValueError(f"Christoffel array must have shape {(n, n, n)}, got {gamma.shape}")
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family tag '{self.family}'")
        gamma = frozen(gamma)
        allowed = set(self.chart.variables)
        for idx, value in nonzero_entries(gamma):
            stray = sx.chart_vars_of(value) - allowed
            if stray:
                raise ValueError(
                    f"Christoffel symbol {idx} uses variables outside the chart: "
                    + ", ".join(sorted(str(s) for s in stray))
                )
        object.__setattr__(self, "gamma", gamma)
        if self.torsion_free and not is_torsion_free(self):
            raise TorsionError("connection is tagged torsion-free but Gamma^k_ij != Gamma^k_ji")

    @property
    def dim(self):
        return self.chart.dim

    def christoffel(self, i, j, k):
        return self.gamma[i, j, k]

    def nonzero_components(self):
        return [(i, j, k, value) for (i, j, k), value in nonzero_entries(self.gamma)]

    def substitute(self, bindings):
        gamma = np.frompyfunc(lambda e: sx.substitute(e, bindings), 1, 1)(self.gamma)
        return Connection(self.chart, gamma, self.family, self.torsion_free)

    def to_json(self, names=None):
        return {
            "dim": self.dim,
            "variables": [str(v) for v in self.chart.variables],
            "gamma": [
                {"i": i + 1, "j": j + 1, "k": k + 1, "expr": sx.to_string(value, names)}
                for i, j, k, value in self.nonzero_components()
            ],
        }

    def __eq__(self, other):
        if not isinstance(other, Connection):
            return NotImplemented
        return self.chart == other.chart and bool(np.all(self.gamma == other.gamma))

    def __hash__(self):
        return hash((self.chart, tuple(self.gamma.flat)))


def from_components(dim, components, family=GENERIC, symmetrize=False):
    """
    Connection from a sparse {(i, j, k): expr} map of Gamma^k_ij (0-based).
    With `symmetrize`, each (i, j, k) also sets (j, i, k).
    """
    gamma = zeros((dim, dim, dim))
    for (i, j, k), value in components.items():
        value = sx.canonical(value)
        gamma[i, j, k] = value
        if symmetrize:
            gamma[j, i, k] = value
    return Connection(Chart.standard(dim), gamma, family, torsion_free=symmetrize)


def flat(n):
    return Connection(Chart.standard(n), zeros((n, n, n)), GENERIC, torsion_free=True)


# ============================================================
# THE TWO THREE-DIMENSIONAL FAMILIES
# ============================================================

def family1_connection(f1, f2, f3, direction=0):
    """
    nabla_{d1} d1 = f1 d_D, nabla_{d1} d2 = f2 d_D, nabla_{d1} d3 = f3 d_D with
    D = `direction` (0 gives d1). Symmetric partners are stored explicitly.
    """
    components = {(0, 0, direction): f1, (0, 1, direction): f2, (0, 2, direction): f3}
    return from_components(3, components, FAMILY_1, symmetrize=True)


def family2_connection(f1, f2, f3):
    """nabla_{d1} d1 = f1 d2, nabla_{d2} d2 = f2 d3, nabla_{d3} d3 = f3 d1."""
    components = {(0, 0, 1): f1, (1, 1, 2): f2, (2, 2, 0): f3}
    return from_components(3, components, FAMILY_2, symmetrize=True)


def generic_functions():
    """Opaque f1, f2, f3 of (x1, x2, x3)."""
    x = sx.chart_vars(3)
    return tuple(sx.opaque(f"f{i}", *x) for i in (1, 2, 3))


def generic_family(family, direction=0):
    f1, f2, f3 = generic_functions()
    if family == FAMILY_1:
        return family1_connection(f1, f2, f3, direction)
    if family == FAMILY_2:
        return family2_connection(f1, f2, f3)
    raise ValueError(f"no generic builder for family '{family}'")


# ============================================================
# TORSION
# ============================================================

def torsion(c):
    """T[i, j, k] = Gamma^k_ij - Gamma^k_ji."""
    t = c.gamma - c.gamma.transpose(1, 0, 2)
    return frozen(t)


def is_torsion_free(c):
    return all(sx.is_zero(value) for value in torsion(c).flat)


def require_torsion_free(c):
    if not is_torsion_free(c):
        (i, j, k), value = nonzero_entries(torsion(c))[0]
        raise TorsionError(
            f"connection has torsion: T^{k + 1}_{i + 1}{j + 1} = {sx.to_string(value)}"
        )


# ============================================================
# DIRECT SUM
# ============================================================

def rename_variables(e, offset):
    """Shift every chart variable x_i of e to x_{i+offset}."""
    mapping = {v: sx.chart_var(sx.chart_index(v) + 1 + offset) for v in sx.chart_vars_of(e)}
    return sx.canonical(sp.sympify(e).xreplace(mapping))


def direct_sum(c1, c2):
    """Block-diagonal connection on the product chart (c2 variables shifted by dim c1)."""
    n1, n2 = c1.dim, c2.dim
    n = n1 + n2
    gamma = zeros((n, n, n))
    gamma[:n1, :n1, :n1] = c1.gamma
    shifted = np.frompyfunc(lambda e: rename_variables(e, n1), 1, 1)(c2.gamma)
    gamma[n1:, n1:, n1:] = shifted
    return Connection(
        Chart.standard(n), gamma, GENERIC, torsion_free=c1.torsion_free and c2.torsion_free
    )
