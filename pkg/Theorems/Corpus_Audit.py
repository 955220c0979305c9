# Corpus_Audit.py

"""
Runs every named corpus connection through the engine and tabulates the
verdicts next to the expected ones, together with the engine identities
(S(X)X = 0, cubic rescaling, trace identity, Bianchi, antisymmetry).
Also compares the generic family curvature and Ricci tensors with the
reference formulas.
"""

import sys

import pandas as pd
from tqdm import tqdm

from connection import FAMILY_1, FAMILY_2, generic_family
from Golden_Corpus import CORPUS, reference_curvature, reference_ricci
from szabo import (
    is_affine_szabo,
    numeric_spot_check,
    rescaling_holds,
    szabo_kernel_residual,
    szabo_operator,
)
from tensorcalc import (
    curvature,
    curvature_antisymmetry,
    first_bianchi,
    is_cyclic_parallel,
    ricci,
    vanishes,
)
from Theorems import progress


def audit_entry(entry, seed=42):
    c = entry.connection()
    cyclic = is_cyclic_parallel(c).verdict
    verdict = is_affine_szabo(c)
    m = szabo_operator(c)
    failing = verdict.failing_coefficient[0] if verdict.failing_coefficient else None

    row = {
        "name": entry.name,
        "cyclic_parallel": cyclic,
        "expected_cyclic": entry.cyclic_parallel,
        "affine_szabo": verdict.is_szabo,
        "expected_szabo": entry.affine_szabo,
        "failing_degree": failing,
        "kernel_zero": vanishes(szabo_kernel_residual(m)),
        "rescaling": rescaling_holds(m),
        "trace_identity": verdict.trace_identity_ok,
        "bianchi": vanishes(first_bianchi(c)),
        "antisymmetry": vanishes(curvature_antisymmetry(c)),
        "max_abs_eigenvalue": None,
    }
    identities_ok = all(
        row[key] for key in ("kernel_zero", "rescaling", "trace_identity", "bianchi", "antisymmetry")
    )
    spot_ok = True
    if verdict.is_szabo:
        spot = numeric_spot_check(c, seed=seed)
        row["max_abs_eigenvalue"] = spot["max_abs_eigenvalue"]
        spot_ok = spot["ok"]
    row["ok"] = (
        cyclic == entry.cyclic_parallel
        and verdict.is_szabo == entry.affine_szabo
        and failing == entry.failing_degree
        and identities_ok
        and spot_ok
    )
    return row


def audit_corpus(seed=42, verbose=False):
    """
    Returns
    -------
    pd.DataFrame
        One row per corpus connection; column `ok` is the overall verdict.
    """
    progress("\n==== Corpus audit ====", verbose)
    rows = [audit_entry(entry, seed) for entry in tqdm(CORPUS, disable=not verbose, file=sys.stderr)]
    df = pd.DataFrame(rows)
    progress(f"Corpus entries passing: {int(df['ok'].sum())}/{len(df)}", verbose)
    return df


def golden_formula_checks():
    """Engine curvature and Ricci of the generic families against the printed formulas."""
    rows = []
    for family in (FAMILY_1, FAMILY_2):
        c = generic_family(family)
        rows.append({
            "family": family,
            "curvature_match": vanishes(curvature(c).comp - reference_curvature(family)),
            "ricci_match": vanishes(ricci(c).comp - reference_ricci(family)),
        })
    df = pd.DataFrame(rows)
    df["ok"] = df["curvature_match"] & df["ricci_match"]
    return df
