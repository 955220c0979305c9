"""
Named reference connections with their known verdicts, and hand-written
reference formulas (curvature, Ricci, cyclic-parallel equations) for the
two generic three-dimensional families.
"""

from dataclasses import dataclass

import sympy as sp

import symexpr as sx
from connection import (
    FAMILY_1,
    FAMILY_2,
    family1_connection,
    family2_connection,
    flat,
    generic_functions,
    zeros,
)


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    description: str
    build: object
    cyclic_parallel: bool
    affine_szabo: bool
    failing_degree: int = None   # lam-degree of the first nonzero coefficient

    def connection(self):
        return self.build()


x1, x2, x3 = sx.chart_vars(3)


# ============================================================
# CORPUS
# ============================================================

CORPUS = (
    CorpusEntry(
        "FLAT", "flat connection on R^3",
        lambda: flat(3), True, True,
    ),
    CorpusEntry(
        "FAMILY1_ROTATION", "family-1 with f = (0, -x3, x2)",
        lambda: family1_connection(0, -x3, x2), True, True,
    ),
    CorpusEntry(
        "FAMILY1_LINEAR", "family-1 with f = (x1, 2*x3, -2*x2)",
        lambda: family1_connection(x1, 2 * x3, -2 * x2), True, True,
    ),
    CorpusEntry(
        "FAMILY1_NOT_CYCLIC", "family-1 with f = (0, x2, 0)",
        lambda: family1_connection(0, x2, 0), False, False, 2,
    ),
    CorpusEntry(
        "FAMILY2_L3_NOT_SZABO", "family-2 with f = (x1^2, x1 + x2, x2 + x3^2)",
        lambda: family2_connection(x1**2, x1 + x2, x2 + x3**2), True, False, 1,
    ),
    CorpusEntry(
        "FAMILY2_F1_ZERO", "family-2 with f = (0, x2, x2 + x3^2)",
        lambda: family2_connection(0, x2, x2 + x3**2), True, True,
    ),
    CorpusEntry(
        "FAMILY2_F3_ZERO", "family-2 with f = (x1^2, x1 + x2, 0)",
        lambda: family2_connection(x1**2, x1 + x2, 0), True, True,
    ),
    CorpusEntry(
        "FAMILY2_NOT_CYCLIC", "family-2 with f = (x2^2, 0, 0)",
        lambda: family2_connection(x2**2, 0, 0), False, False, 2,
    ),
)

CORPUS_BY_NAME = {entry.name: entry for entry in CORPUS}

# g(d_i, d_j) of the extension of FAMILY1_LINEAR, upper triangle, 1-based.
FAMILY1_LINEAR_EXTENSION_METRIC = {
    (1, 1): -2 * x1 * sx.chart_var(4),
    (1, 2): -4 * x3 * sx.chart_var(4),
    (1, 3): 4 * x2 * sx.chart_var(4),
    (1, 4): 1,
    (2, 5): 1,
    (3, 6): 1,
}


def corpus_entry(name):
    if name not in CORPUS_BY_NAME:
        raise KeyError(f"no corpus entry '{name}'")
    return CORPUS_BY_NAME[name]


# ============================================================
# REFERENCE FORMULAS FOR THE GENERIC FAMILIES
# ============================================================

def _d(f, *variables):
    return sp.diff(f, *variables)


def _curvature_array(operators):
    """R[i, j, k, l] from {(k, l, j): {i: value}} (1-based), antisymmetric in k, l."""
    r = zeros((3, 3, 3, 3))
    for (k, l, j), components in operators.items():
        for i, value in components.items():
            r[i - 1, j - 1, k - 1, l - 1] = sx.canonical(value)
            r[i - 1, j - 1, l - 1, k - 1] = sx.canonical(-value)
    return r


def reference_curvature(family):
    """Nonzero R(d_k, d_l) d_j as printed for the generic family."""
    f1, f2, f3 = generic_functions()
    if family == FAMILY_1:
        return _curvature_array({
            (1, 2, 1): {1: _d(f2, x1) - _d(f1, x2)},
            (1, 2, 2): {1: -(_d(f2, x2) + f2**2)},
            (1, 2, 3): {1: -(_d(f3, x2) + f2 * f3)},
            (1, 3, 1): {1: _d(f3, x1) - _d(f1, x3)},
            (1, 3, 2): {1: -(_d(f2, x3) + f2 * f3)},
            (1, 3, 3): {1: -(_d(f3, x3) + f3**2)},
            (2, 3, 1): {1: _d(f3, x2) - _d(f2, x3)},
        })
    if family == FAMILY_2:
        return _curvature_array({
            (1, 2, 1): {2: -_d(f1, x2), 3: -f1 * f2},
            (1, 2, 2): {3: _d(f2, x1)},
            (1, 3, 1): {2: -_d(f1, x3)},
            (1, 3, 3): {1: _d(f3, x1), 2: f1 * f3},
            (2, 3, 2): {3: -_d(f2, x3), 1: -f3 * f2},
            (2, 3, 3): {1: _d(f3, x2)},
        })
    raise ValueError(f"no reference curvature for family '{family}'")


def reference_ricci(family):
    f1, f2, f3 = generic_functions()
    if family == FAMILY_1:
        entries = {
            (2, 1): _d(f2, x1) - _d(f1, x2),
            (2, 2): -(_d(f2, x2) + f2**2),
            (2, 3): -(_d(f3, x2) + f2 * f3),
            (3, 1): _d(f3, x1) - _d(f1, x3),
            (3, 2): -(_d(f2, x3) + f2 * f3),
            (3, 3): -(_d(f3, x3) + f3**2),
        }
    elif family == FAMILY_2:
        entries = {(1, 1): _d(f1, x2), (2, 2): _d(f2, x3), (3, 3): _d(f3, x1)}
    else:
        raise ValueError(f"no reference Ricci tensor for family '{family}'")
    ric = zeros((3, 3))
    for (j, k), value in entries.items():
        ric[j - 1, k - 1] = sx.canonical(value)
    return ric


def reference_pde_system(family):
    """Left-hand sides of the printed cyclic-parallel equations."""
    f1, f2, f3 = generic_functions()
    if family == FAMILY_1:
        system = [
            _d(f3, x3, x3) + 2 * f3 * _d(f3, x3),
            _d(f2, x2, x2) + 2 * f2 * _d(f2, x2),
            _d(f1, x3, x3) + 4 * f3 * _d(f3, x1) - 2 * f3 * _d(f1, x3),
            _d(f1, x2, x2) + 4 * f2 * _d(f2, x1) - 2 * f2 * _d(f1, x2),
            _d(f3, x1, x1) - _d(f1, x1, x3) - f1 * _d(f3, x1) + f1 * _d(f1, x3),
            _d(f2, x1, x1) - _d(f1, x1, x2) - f1 * _d(f2, x1) + f1 * _d(f1, x2),
            _d(f3, x2, x2) + 2 * _d(f2, x3, x2) + 2 * f2 * _d(f2, x3)
            + 2 * f3 * _d(f2, x2) + 2 * f2 * _d(f3, x2),
            _d(f2, x3, x3) + 2 * _d(f3, x3, x2) + 2 * f3 * _d(f3, x2)
            + 2 * f3 * _d(f2, x3) + 2 * f2 * _d(f3, x3),
            4 * f3 * _d(f2, x1) + 4 * f2 * _d(f3, x1) - 2 * f3 * _d(f1, x2)
            - 2 * f2 * _d(f1, x3) + 2 * _d(f1, x3, x2),
        ]
    elif family == FAMILY_2:
        system = [
            _d(f1, x1, x2),
            _d(f1, x3, x2),
            _d(f2, x1, x3),
            _d(f2, x2, x3),
            _d(f3, x2, x1),
            _d(f3, x3, x1),
            _d(f1, x2, x2) - 2 * f1 * _d(f2, x3),
            _d(f3, x1, x1) - 2 * f3 * _d(f1, x2),
            _d(f2, x3, x3) - 2 * f2 * _d(f3, x1),
        ]
    else:
        raise ValueError(f"no reference equations for family '{family}'")
    return [sx.canonical(e) for e in system]


def family2_solution_shape():
    """f1 = f(x1) + g(x3), f2 = h(x1) + u(x2), f3 = v(x2) + t(x3)."""
    f, g, h = sx.opaque("f", x1), sx.opaque("g", x3), sx.opaque("h", x1)
    u, v, t = sx.opaque("u", x2), sx.opaque("v", x2), sx.opaque("t", x3)
    return f + g, h + u, v + t

