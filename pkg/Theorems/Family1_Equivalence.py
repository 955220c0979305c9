# Family1_Equivalence.py

"""
Family-1 connections (nabla_{d1} d_j = f_j d1): the affine Szabo property
and the cyclic parallel Ricci condition coincide.

Two checks:
- symbolic, with opaque f_i: the Szabo matrix has a single nonzero row,
  its (1,1) entry carries exactly the cyclic-parallel equations, and
  forcing that entry to zero leaves lam^3;
- randomized, over seeded low-degree polynomial f_i: both predicates are
  computed independently and must agree on every sample.
"""

import sys
from itertools import combinations_with_replacement

import numpy as np
import sympy as sp
from tqdm import tqdm

import symexpr as sx
from connection import FAMILY_1, family1_connection, generic_family
from Golden_Corpus import reference_pde_system
from szabo import char_poly, is_affine_szabo, szabo_operator
from tensorcalc import compare_pde_systems, is_cyclic_parallel
from Theorems import progress


# ============================================================
# CONFIG
# ============================================================

COEFFICIENT_RANGE = (-2, 3)     # integers drawn from [low, high)
MAX_DEGREE = 2
TERM_DENSITY = 0.35


# -------------------------------------------------------
# Random samples
# -------------------------------------------------------

def _monomials(variables, max_degree):
    return [
        sp.Mul(*combo)
        for degree in range(max_degree + 1)
        for combo in combinations_with_replacement(variables, degree)
    ]


def random_polynomial(rng, variables, max_degree=MAX_DEGREE):
    terms = []
    for monomial in _monomials(tuple(variables), max_degree):
        if rng.random() < TERM_DENSITY:
            terms.append(int(rng.integers(*COEFFICIENT_RANGE)) * monomial)
    return sx.canonical(sp.Add(*terms))


def sample_family1_functions(rng, count):
    """
    Yields (f1, f2, f3). Even draws are unconstrained polynomials, odd
    draws come from the solution family f1 = p(x1), f2 = c*x3 + e,
    f3 = -c*x2 + e'.
    """
    x1, x2, x3 = sx.chart_vars(3)
    for index in range(count):
        if index % 2 == 0:
            yield tuple(random_polynomial(rng, (x1, x2, x3)) for _ in range(3))
            continue
        c, e, e2 = (int(rng.integers(*COEFFICIENT_RANGE)) for _ in range(3))
        yield (
            random_polynomial(rng, (x1,)),
            sx.canonical(c * x3 + e),
            sx.canonical(-c * x2 + e2),
        )


# -------------------------------------------------------
# Symbolic direction
# -------------------------------------------------------

def generic_family1_checks():
    c = generic_family(FAMILY_1)
    m = szabo_operator(c)
    alphas = m.alphas

    rows_zero = all(sx.is_zero(value) for value in m.entries[1:, :].flat)

    a11 = m.entries[0, 0]
    derived = list(sx.coefficients(a11, alphas).values())
    comparison = compare_pde_systems(derived, reference_pde_system(FAMILY_1))

    forced = np.array(m.entries, dtype=object)
    forced[0, 0] = sp.S.Zero
    poly = char_poly(forced)

    return {
        "single_nonzero_row": rows_zero,
        "a11_equations_match": comparison.equal,
        "a11_equation_count": len(derived),
        "char_poly_with_a11_zero": poly.to_json(),
        "nilpotent_with_a11_zero": poly.is_nilpotent_form(),
        "ok": rows_zero and comparison.equal and poly.is_nilpotent_form(),
    }


def negative_family1_check():
    """f2 = x2 breaks the second equation; both predicates must be false."""
    x2 = sx.chart_var(2)
    c = family1_connection(0, x2, 0)
    cyclic = is_cyclic_parallel(c).verdict
    szabo = is_affine_szabo(c).is_szabo
    return {"cyclic_parallel": cyclic, "affine_szabo": szabo, "ok": not cyclic and not szabo}


# -------------------------------------------------------
# Main Computation
# -------------------------------------------------------

def verify_family1_theorem(samples=50, seed=42, direction=0, verbose=False):
    """
    Parameters
    ----------
    samples : int
        Number of random family-1 connections.
    seed : int
        Seed for numpy's default_rng.
    direction : int
        0-based index of the basis field the Christoffel symbols point
        along. Agreement is only required for direction 0; other
        directions are reported as observed.

    Returns
    -------
    dict with the symbolic checks, sample counts and any disagreements.
    """
    progress("\n==== Family-1: Szabo <=> cyclic parallel ====", verbose)

    generic = generic_family1_checks()
    progress(f"Generic family: single row {generic['single_nonzero_row']}, "
             f"equations match {generic['a11_equations_match']}", verbose)

    rng = np.random.default_rng(seed)
    agreements, szabo_count, cyclic_count = 0, 0, 0
    disagreements = []
    draws = sample_family1_functions(rng, samples)
    for f1, f2, f3 in tqdm(draws, total=samples, disable=not verbose, file=sys.stderr):
        c = family1_connection(f1, f2, f3, direction)
        cyclic = is_cyclic_parallel(c).verdict
        szabo = is_affine_szabo(c).is_szabo
        cyclic_count += cyclic
        szabo_count += szabo
        if cyclic == szabo:
            agreements += 1
        else:
            disagreements.append({
                "f": [sx.to_string(f) for f in (f1, f2, f3)],
                "cyclic_parallel": cyclic,
                "affine_szabo": szabo,
            })

    progress(f"Samples: {samples} | agree: {agreements} | "
             f"Szabo: {szabo_count} | cyclic parallel: {cyclic_count}", verbose)

    negative = negative_family1_check()
    sampled_ok = agreements == samples or direction != 0
    return {
        "seed": seed,
        "samples": samples,
        "direction": direction + 1,
        "max_degree": MAX_DEGREE,
        "generic": generic,
        "agreements": agreements,
        "szabo_count": szabo_count,
        "cyclic_count": cyclic_count,
        "disagreements": disagreements,
        "negative_case": negative,
        "ok": generic["ok"] and negative["ok"] and sampled_ok,
    }
