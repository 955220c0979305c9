# Family2_Cases.py

"""
Family-2 connections (nabla_{d1} d1 = f1 d2, nabla_{d2} d2 = f2 d3,
nabla_{d3} d3 = f3 d1).

- The cyclic-parallel equations match the printed nine, and the solution
  shape f1 = f(x1) + g(x3), f2 = h(x1) + u(x2), f3 = v(x2) + t(x3) makes
  the cyclic sum of nabla Ric vanish.
- On that shape the Szabo matrix has zero trace and zero determinant, so
  only the lam^1 coefficient b12 b21 + b23 b32 + b13 b31 can survive.
- Each of the six sufficient cases (one or two f_i zero) is Szabo, and the
  branch product that remains after zeroing f_i vanishes.
"""

import symexpr as sx
from connection import FAMILY_2, family2_connection, generic_family
from Golden_Corpus import family2_solution_shape, reference_pde_system
from szabo import char_poly, is_affine_szabo, szabo_operator
from tensorcalc import compare_pde_systems, cubic_form_coefficients, cyclic_sum, vanishes
from Theorems import progress


x1, x2, x3 = sx.chart_vars(3)

f, g, h = sx.opaque("f", x1), sx.opaque("g", x3), sx.opaque("h", x1)
u, v, t = sx.opaque("u", x2), sx.opaque("v", x2), sx.opaque("t", x3)

# (label, (f1, f2, f3), branch product (i, j) 1-based -> b_ij * b_ji)
SUFFICIENT_CASES = (
    ("f1 = 0, f2 = u(x2), f3 = v(x2) + t(x3)", (0, u, v + t), (1, 3)),
    ("f2 = 0, f3 = t(x3), f1 = f(x1) + g(x3)", (f + g, 0, t), (1, 2)),
    ("f3 = 0, f1 = f(x1), f2 = h(x1) + u(x2)", (f, h + u, 0), (2, 3)),
    ("f1 = f3 = 0, f2 = h(x1) + u(x2)", (0, h + u, 0), (1, 3)),
    ("f1 = f2 = 0, f3 = v(x2) + t(x3)", (0, 0, v + t), (1, 2)),
    ("f2 = f3 = 0, f1 = f(x1) + g(x3)", (f + g, 0, 0), (2, 3)),
)


def branch_product(m, i, j):
    return sx.canonical(m.entries[i - 1, j - 1] * m.entries[j - 1, i - 1])


def equation_checks():
    derived = list(cubic_form_coefficients(generic_family(FAMILY_2)).values())
    comparison = compare_pde_systems(derived, reference_pde_system(FAMILY_2))
    shaped = family2_connection(*family2_solution_shape())
    solution_ok = vanishes(cyclic_sum(shaped))
    return {
        "equations_match": comparison.equal,
        "unmatched_derived": [sx.to_string(derived[i]) for i in comparison.unmatched_derived],
        "solution_shape_cyclic_parallel": solution_ok,
        "ok": comparison.equal and solution_ok,
    }


def solution_shape_char_poly():
    """Trace and determinant of S vanish for every cyclic-parallel shape."""
    m = szabo_operator(family2_connection(*family2_solution_shape()))
    poly = char_poly(m)
    trace_zero = sx.is_zero(poly.coefficient(2))
    det_zero = sx.is_zero(poly.coefficient(0))
    diagonal_zero = all(sx.is_zero(m.entries[i, i]) for i in range(3))
    return {
        "trace_zero": trace_zero,
        "determinant_zero": det_zero,
        # informational: the individual diagonal entries need not vanish
        "diagonal_zero": diagonal_zero,
        "ok": trace_zero and det_zero,
    }


def check_case(label, functions, pair):
    c = family2_connection(*functions)
    verdict = is_affine_szabo(c)
    product_zero = sx.is_zero(branch_product(szabo_operator(c), *pair))
    return {
        "case": label,
        "is_szabo": verdict.is_szabo,
        "char_poly": verdict.char_poly.to_json(),
        "branch_product": f"b{pair[0]}{pair[1]}*b{pair[1]}{pair[0]}",
        "branch_product_zero": product_zero,
        "ok": verdict.is_szabo and product_zero,
    }


def verify_family2_theorem(verbose=False):
    progress("\n==== Family-2: sufficient Szabo cases ====", verbose)

    equations = equation_checks()
    shape = solution_shape_char_poly()
    cases = []
    for index, (label, functions, pair) in enumerate(SUFFICIENT_CASES, 1):
        progress(f"  [{index}/{len(SUFFICIENT_CASES)}] {label}", verbose)
        cases.append(check_case(label, functions, pair))

    ok = equations["ok"] and shape["ok"] and all(case["ok"] for case in cases)
    progress(f"Family-2 checks passed: {ok}", verbose)
    return {"equations": equations, "solution_shape": shape, "cases": cases, "ok": ok}
