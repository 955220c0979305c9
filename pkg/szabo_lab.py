"""
szabo-lab: cyclic parallel Ricci and affine Szabo checks for connection
definition files, Riemannian extensions, and the full reference run.

    python3 szabo_lab.py check-szabo examples.conn --json
    python3 szabo_lab.py verify-paper --seed 42 --samples 50
"""

import argparse
import json
import sys
import time
from dataclasses import dataclass

import pandas as pd

from connection import is_torsion_free
from generate_verification_report import create_pdf
from Connection_Parser import (
    ConnectionSpec,
    DimensionLimitError,
    format_connection_spec,
    parse_connection_file,
    to_connection,
)
from riemext import (
    check_block_structure,
    extension_curvature_checks,
    is_pseudo_szabo,
    levi_civita_checks,
    riemannian_extension,
)
from szabo import is_affine_szabo, szabo_operator
from tensorcalc import is_cyclic_parallel
from Theorems import progress
from Theorems.Corpus_Audit import audit_corpus, golden_formula_checks
from Theorems.Extension_Theorem import verify_extension_theorem
from Theorems.Family1_Equivalence import verify_family1_theorem
from Theorems.Family2_Cases import verify_family2_theorem
from Theorems.Product_Theorem import verify_product_theorem


# ============================================================
# CONFIG
# ============================================================

DEFAULT_SEED = 42
DEFAULT_SAMPLES = 50
MAX_BASE_DIM = 4
MAX_EXTENSION_DIM = 8

CHECK_CYCLIC = "check-cyclic"
CHECK_SZABO = "check-szabo"
EXTEND = "extend"
VERIFY_PAPER = "verify-paper"
FULL = "full"
COMMANDS = (CHECK_CYCLIC, CHECK_SZABO, EXTEND, VERIFY_PAPER, FULL)


@dataclass(frozen=True)
class RunOptions:
    seed: int = DEFAULT_SEED
    samples: int = DEFAULT_SAMPLES
    timing: bool = False
    verbose: bool = False


def _records(df):
    return json.loads(df.to_json(orient="records"))


# ============================================================
# SECTIONS
# ============================================================

def cyclic_section(c, names):
    return is_cyclic_parallel(c).to_json(names)


def szabo_section(c, names):
    verdict = is_affine_szabo(c)
    section = verdict.to_json(names)
    section["szabo_matrix"] = szabo_operator(c).to_json(names)
    return section, verdict.trace_identity_ok


def extension_section(c):
    if 2 * c.dim > MAX_EXTENSION_DIM:
        raise DimensionLimitError(f"extension dimension {2 * c.dim} exceeds the limit {MAX_EXTENSION_DIM}")
    metric = riemannian_extension(c)
    checks = levi_civita_checks(c, metric)
    checks.update(extension_curvature_checks(c))
    checks.update(check_block_structure(c))
    verdict = is_pseudo_szabo(metric)
    section = {
        "metric": metric.to_json(),
        "checks": checks,
        "pseudo_szabo": verdict.to_json(),
    }
    return section, all(item["ok"] for item in checks.values())


def verify_paper_section(options):
    golden = golden_formula_checks()
    corpus = audit_corpus(options.seed, options.verbose)
    family1 = verify_family1_theorem(options.samples, options.seed, verbose=options.verbose)
    family2 = verify_family2_theorem(options.verbose)
    product = verify_product_theorem(seed=options.seed, verbose=options.verbose)
    extension = verify_extension_theorem(verbose=options.verbose)
    summary = {
        "golden_formulas": bool(golden["ok"].all()),
        "corpus": bool(corpus["ok"].all()),
        "family1_equivalence": family1["ok"],
        "family2_cases": family2["ok"],
        "product": product["ok"],
        "extension": extension["ok"],
    }
    section = {
        "summary": summary,
        "golden_formulas": _records(golden),
        "corpus": _records(corpus),
        "family1_equivalence": family1,
        "family2_cases": family2,
        "product": product,
        "extension": extension,
    }
    return section, all(summary.values())


# ============================================================
# DISPATCH
# ============================================================

def run(command, spec=None, options=None):
    """
    Run `command` on `spec` (a ConnectionSpec or definition text).

    Module errors are caught and reported in the `error` field; `ok` is
    False when an error occurred or a consistency check failed. A negative
    cyclic or Szabo verdict is not a failure.
    """
    options = options or RunOptions()
    report = {"command": command, "error": None, "ok": True}
    started = time.perf_counter()
    try:
        if command not in COMMANDS:
            raise ValueError(f"unknown command '{command}'")
        if command == VERIFY_PAPER:
            report["verify_paper"], report["ok"] = verify_paper_section(options)
        else:
            if spec is None:
                raise ValueError(f"'{command}' needs a connection definition")
            if not isinstance(spec, ConnectionSpec):
                spec = parse_connection_file(spec, MAX_BASE_DIM)
            elif spec.dim > MAX_BASE_DIM:
                raise DimensionLimitError(f"dimension {spec.dim} exceeds the limit {MAX_BASE_DIM}")
            report["input"] = format_connection_spec(spec)
            c = to_connection(spec)
            report["torsion_free"] = is_torsion_free(c)
            progress(f"\n==== {command}: dimension {c.dim} ====", options.verbose)

            report["cyclic_parallel"] = cyclic_section(c, spec.names)
            if command in (CHECK_SZABO, FULL):
                report["szabo"], trace_ok = szabo_section(c, spec.names)
                report["ok"] = report["ok"] and trace_ok
            if command in (EXTEND, FULL):
                report["extension"], checks_ok = extension_section(c)
                report["ok"] = report["ok"] and checks_ok
    except ValueError as exc:
        report["error"] = str(exc)
        report["ok"] = False
    if options.timing:
        report["timing_seconds"] = round(time.perf_counter() - started, 3)
    return report


# ============================================================
# OUTPUT
# ============================================================

def to_json_text(report):
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def _check_line(name, ok):
    return f"  [{'PASS' if ok else 'FAIL'}] {name}"


def to_text(report):
    lines = [f"==== szabo-lab {report['command']} ===="]
    if report.get("input"):
        lines.append("")
        lines.extend("  " + line for line in report["input"].splitlines())
    if "torsion_free" in report:
        lines.append(f"\nTorsion-free: {report['torsion_free']}")
    if "cyclic_parallel" in report:
        cyclic = report["cyclic_parallel"]
        lines.append(f"Cyclic parallel Ricci: {cyclic['verdict']}")
        if cyclic["witness"]:
            i, j, k = cyclic["witness"]["indices"]
            lines.append(f"  witness ({i},{j},{k}): {cyclic['witness']['expr']}")
    if "szabo" in report:
        szabo = report["szabo"]
        lines.append(f"Affine Szabo: {szabo['is_szabo']}")
        for degree, coefficient in enumerate(szabo["char_poly"]):
            lines.append(f"  lam^{degree}: {coefficient}")
        lines.append(f"  trace identity: {szabo['trace_identity_ok']}")
    if "extension" in report:
        extension = report["extension"]
        lines.append(f"\nRiemannian extension (dimension {extension['metric']['dim']})")
        for entry in extension["metric"]["g"]:
            lines.append(f"  g[{entry['i']},{entry['j']}] = {entry['expr']}")
        for name, check in extension["checks"].items():
            lines.append(_check_line(name, check["ok"]))
            if check["failing"]:
                lines.append(f"      {check['failing']}")
        lines.append(f"  pseudo-Riemannian Szabo: {extension['pseudo_szabo']['is_szabo']}")
    if "verify_paper" in report:
        lines.append("")
        for name, ok in report["verify_paper"]["summary"].items():
            lines.append(_check_line(name, ok))
        corpus = pd.DataFrame(report["verify_paper"]["corpus"])
        if not corpus.empty:
            lines.append("")
            columns = ["name", "cyclic_parallel", "affine_szabo", "failing_degree", "ok"]
            lines.append(corpus[columns].to_string(index=False))
    if "timing_seconds" in report:
        lines.append(f"\nTime: {report['timing_seconds']} s")
    if report["error"]:
        lines.append(f"\nERROR: {report['error']}")
    lines.append(f"\nResult: {'OK' if report['ok'] else 'FAILED'}")
    return "\n".join(lines) + "\n"


# ============================================================
# MAIN DRIVER
# ============================================================

def build_parser():
    parser = argparse.ArgumentParser(
        prog="szabo-lab",
        description="Cyclic parallel Ricci and affine Szabo checks for affine connections.",
    )
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("file", nargs="?", help="connection definition file")
    parser.add_argument("--json", action="store_true", help="emit JSON instead of text")
    parser.add_argument("--seed", type=int, default=DEFAULT_SEED)
    parser.add_argument("--samples", type=int, default=DEFAULT_SAMPLES)
    parser.add_argument("--out", help="write the report to this path")
    parser.add_argument("--pdf", help="also write a PDF summary to this path")
    parser.add_argument("--timing", action="store_true", help="record wall-clock time")
    parser.add_argument("--quiet", action="store_true", help="no progress output on stderr")
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command != VERIFY_PAPER and not args.file:
        parser.error(f"'{args.command}' needs a connection definition file")
    if args.samples < 1:
        parser.error("--samples must be positive")

    text = None
    if args.file and args.command != VERIFY_PAPER:
        try:
            with open(args.file, encoding="utf-8") as handle:
                text = handle.read()
        except OSError as exc:
            print(f"szabo-lab: cannot read {args.file}: {exc}", file=sys.stderr)
            return 2

    options = RunOptions(args.seed, args.samples, args.timing, verbose=not args.quiet)
    report = run(args.command, text, options)
    output = to_json_text(report) if args.json else to_text(report)

    if args.out:
        with open(args.out, "w", encoding="utf-8") as handle:
            handle.write(output)
    else:
        sys.stdout.write(output)

    if args.pdf:
        create_pdf(report, args.pdf)
    return 0 if report["ok"] else 1


if __name__ == "__main__":
    sys.exit(main())
