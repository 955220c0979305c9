# Product_Theorem.py

"""
Direct sums of affine Szabo connections are affine Szabo.
"""

from connection import direct_sum
from Golden_Corpus import corpus_entry
from szabo import is_affine_szabo, numeric_spot_check
from Theorems import progress


DEFAULT_FACTORS = ("FAMILY1_ROTATION", "FAMILY2_F1_ZERO")


def verify_product_theorem(first=DEFAULT_FACTORS[0], second=DEFAULT_FACTORS[1], seed=42, verbose=False):
    progress(f"\n==== Product: {first} + {second} ====", verbose)
    c1 = corpus_entry(first).connection()
    c2 = corpus_entry(second).connection()
    factors_szabo = is_affine_szabo(c1).is_szabo and is_affine_szabo(c2).is_szabo

    product = direct_sum(c1, c2)
    verdict = is_affine_szabo(product)
    spot = numeric_spot_check(product, seed=seed)
    progress(f"Dimension {product.dim} | Szabo: {verdict.is_szabo} | "
             f"max |eigenvalue|: {spot['max_abs_eigenvalue']:.2e}", verbose)

    return {
        "factors": [first, second],
        "factors_szabo": factors_szabo,
        "dim": product.dim,
        "is_szabo": verdict.is_szabo,
        "char_poly": verdict.char_poly.to_json(),
        "spot_check": spot,
        "ok": factors_szabo and verdict.is_szabo and spot["ok"],
    }
