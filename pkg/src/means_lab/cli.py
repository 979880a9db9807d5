"""Command-line front end: mean evaluation, bound verification, sharpness
probing, constant recovery, and series verdicts, with table/JSON/CSV output.

Exit codes: 0 = all claims hold / expected witness found, 1 = a verification
failed, 2 = usage or domain error.  Every JSON document carries the same
top-level keys: command, seed, grid_size, samples, verdicts, worst_case.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys

from .certify import (
    REPORT_ONLY_CORPUS_CLAIMS,
    BoundClaim,
    ConvexCombination,
    Objective,
    Relation,
    sharpness_probe,
    recover_constant,
    theorem_claims,
    verify_bound,
    verify_chain,
    verify_corpus,
)
from .exceptions import DomainError, EvaluationError
from .means import (
    ARITHMETIC,
    CONTRA_HARMONIC,
    GEOMETRIC,
    HARMONIC,
    LOGARITHMIC,
    NEUMAN_SANDOR,
    QUADRATIC,
    SEIFFERT_FIRST,
    SEIFFERT_SECOND,
    MeanKind,
    PositivePair,
    evaluate_mean,
    generalized_log,
    normalized_gap,
)
from .ratios import ASINH_ONE, RatioFunctionKind, sharp_constants
from .series import CoefficientKind, ratio_sequence_verdict, coefficient_exact

__all__ = ["main", "build_parser", "parse_mean_token"]

_NAMED_MEANS = {
    "H": HARMONIC,
    "G": GEOMETRIC,
    "L": LOGARITHMIC,
    "P": SEIFFERT_FIRST,
    "A": ARITHMETIC,
    "M": NEUMAN_SANDOR,
    "T": SEIFFERT_SECOND,
    "Q": QUADRATIC,
    "C": CONTRA_HARMONIC,
}


def parse_mean_token(token: str) -> MeanKind:
    token = token.strip()
    if token in _NAMED_MEANS:
        return _NAMED_MEANS[token]
    if token.startswith("Lp:"):
        try:
            return generalized_log(float(token[3:]))
        except ValueError:
            raise DomainError(f"bad generalized-log exponent in {token!r}") from None
    raise DomainError(f"unknown mean {token!r}; expected one of "
                      f"{','.join(_NAMED_MEANS)} or Lp:<p>")


def _parse_pair(text: str) -> PositivePair:
    parts = text.split(",")
    if len(parts) != 2:
        raise DomainError(f"--pair expects 'a,b', got {text!r}")
    try:
        a, b = float(parts[0]), float(parts[1])
    except ValueError:
        raise DomainError(f"--pair entries must be decimal literals, got {text!r}") from None
    return PositivePair(a, b)


def _resolve_format(fmt: str | None) -> str:
    if fmt is not None:
        return fmt
    return "table" if sys.stdout.isatty() else "json"


def _document(command: str, verdicts: list[dict], *, seed: int | None = None,
              grid_size: int | None = None, samples: int | None = None,
              worst_case: dict | None = None) -> dict:
    return {
        "command": command,
        "seed": seed,
        "grid_size": grid_size,
        "samples": samples,
        "verdicts": verdicts,
        "worst_case": worst_case,
    }


def _cell(value) -> str:
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _render(doc: dict, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(doc, indent=2))
        return
    rows = doc["verdicts"]
    if fmt == "csv":
        writer = csv.writer(sys.stdout)
        if rows:
            header = list(rows[0].keys())
            writer.writerow(header)
            for row in rows:
                writer.writerow([_cell(row.get(k, "")) for k in header])
        return
    if not rows:
        print("(no rows)")
        return
    header = list(rows[0].keys())
    table = [header] + [[_cell(row.get(k, "")) for k in header] for row in rows]
    widths = [max(len(r[i]) for r in table) for i in range(len(header))]
    for r in table:
        print("  ".join(cell.ljust(width) for cell, width in zip(r, widths)))


def _report_row(claim_id: str, report) -> dict:
    return {
        "id": claim_id,
        "holds": report.holds,
        "min_margin": report.min_margin,
        "near_zero": report.near_zero,
        "worst_gap": normalized_gap(report.worst_pair),
        "worst_a": report.worst_pair.a,
        "worst_b": report.worst_pair.b,
    }


def _worst_case(rows: list[dict]) -> dict | None:
    finite = [r for r in rows if isinstance(r.get("min_margin"), float) and math.isfinite(r["min_margin"])]
    if not finite:
        return None
    worst = min(finite, key=lambda r: r["min_margin"])
    return {
        "claim": worst["id"],
        "min_margin": worst["min_margin"],
        "pair": [worst["worst_a"], worst["worst_b"]],
        "gap": worst["worst_gap"],
    }


def cmd_eval(args) -> int:
    pair = _parse_pair(args.pair)
    kinds = [parse_mean_token(tok) for tok in args.means.split(",")]
    rows = [{"id": kind.token, "value": evaluate_mean(kind, pair)} for kind in kinds]
    _render(_document("eval", rows), _resolve_format(args.format))
    return 0


def _theorem_reports(args) -> list[dict]:
    if args.grid < 100:
        raise DomainError(f"--grid must be >= 100, got {args.grid}")
    rows = []
    for claim_id, claim in theorem_claims(args.target):
        override = args.weight_lower if claim.relation is Relation.LESS_THAN_M else args.weight_upper
        if override is not None:
            claim = BoundClaim(
                ConvexCombination(override, claim.combination.first, claim.combination.second),
                claim.relation, override, claim.sharp_at)
        report = verify_bound(claim, args.grid)
        rows.append(_report_row(claim_id, report))
    return rows


def cmd_verify(args) -> int:
    fmt = _resolve_format(args.format)
    if args.target in ("1.1", "1.2", "1.3"):
        rows = _theorem_reports(args)
        doc = _document("verify", rows, grid_size=args.grid, worst_case=_worst_case(rows))
        _render(doc, fmt)
        return 0 if all(r["holds"] for r in rows) else 1
    if args.target == "chain":
        report = verify_chain(args.samples, args.seed)
        rows = [_report_row("chain", report)]
        doc = _document("verify", rows, seed=args.seed, samples=args.samples,
                        worst_case=_worst_case(rows))
        _render(doc, fmt)
        return 0 if report.holds else 1
    if args.target == "corpus":
        rows = []
        for claim_id, report in verify_corpus(args.samples, args.seed):
            row = _report_row(claim_id, report)
            row["gating"] = claim_id not in REPORT_ONLY_CORPUS_CLAIMS
            rows.append(row)
        doc = _document("verify", rows, seed=args.seed, samples=args.samples,
                        worst_case=_worst_case(rows))
        _render(doc, fmt)
        return 0 if all(r["holds"] for r in rows if r["gating"]) else 1
    raise DomainError(f"unknown verification target {args.target!r}")


def cmd_sharpness(args) -> int:
    claims = dict(theorem_claims(args.theorem))
    claim = claims[f"{args.theorem}-{args.side}"]
    report = sharpness_probe(claim, args.epsilon)
    row = {
        "id": f"{args.theorem}-{args.side}",
        "violated": report.violated,
        "perturbation": report.perturbation,
        "witness_gap": report.witness_gap,
        "witness_a": report.witness.a if report.witness else None,
        "witness_b": report.witness.b if report.witness else None,
    }
    worst = None
    if report.violated:
        worst = {"claim": row["id"], "min_margin": None,
                 "pair": [report.witness.a, report.witness.b], "gap": report.witness_gap}
    _render(_document("sharpness", [row], worst_case=worst), _resolve_format(args.format))
    return 0 if report.violated else 1


def _recover_p0() -> float:
    # fixed-point iteration p <- log(1+p)/log(2 log(1+sqrt(2))), an
    # independent route to the same root as the bisection solver
    target_log = math.log(2.0 * ASINH_ONE)
    p = 2.0
    for _ in range(200):
        p = math.log1p(p) / target_log
    return p


def cmd_constants(args) -> int:
    c = sharp_constants()
    lam_form = "1 - 1/(sqrt(2)*log(1+sqrt(2)))"
    recoveries = {
        "alpha1": (c.alpha1, "2/9", (RatioFunctionKind.PHI_HQ, Objective.SUPREMUM)),
        "beta1": (c.beta1, lam_form, (RatioFunctionKind.PHI_HQ, Objective.INFIMUM)),
        "alpha2": (c.alpha2, "1/3", (RatioFunctionKind.RATIO_GQ, Objective.SUPREMUM)),
        "beta2": (c.beta2, lam_form, (RatioFunctionKind.RATIO_GQ, Objective.INFIMUM)),
        "alpha3": (c.alpha3, "1 - 1/(2*log(1+sqrt(2)))", (RatioFunctionKind.PHI_HC, Objective.SUPREMUM)),
        "beta3": (c.beta3, "5/12", (RatioFunctionKind.PHI_HC, Objective.INFIMUM)),
        "lambda0": (c.lambda0, lam_form, (RatioFunctionKind.RATIO_GQ, Objective.INFIMUM)),
    }
    rows = []
    for name, (value, form, (fn, objective)) in recoveries.items():
        recovered = recover_constant(fn, objective, 1e-9)
        rows.append({
            "id": name,
            "closed_form": form,
            "value": f"{value:.15f}",
            "recovered": recovered,
            "abs_diff": abs(value - recovered),
        })
    p0_recovered = _recover_p0()
    rows.append({
        "id": "p0",
        "closed_form": "root of (p+1)^(1/p) = 2*log(1+sqrt(2))",
        "value": f"{c.p0:.15f}",
        "recovered": p0_recovered,
        "abs_diff": abs(c.p0 - p0_recovered),
    })
    _render(_document("constants", rows), _resolve_format(args.format))
    return 0 if all(row["abs_diff"] < 1e-9 for row in rows) else 1


def cmd_series(args) -> int:
    if args.terms < 2:
        raise DomainError(f"--terms must be >= 2, got {args.terms}")
    pairing = {"HQ": (CoefficientKind.A, CoefficientKind.B),
               "HC": (CoefficientKind.C, CoefficientKind.D)}[args.pairing]
    verdict = ratio_sequence_verdict(pairing[0], pairing[1], args.terms)
    rows = []
    for n in range(1, min(10, args.terms) + 1):
        ratio = coefficient_exact(pairing[0], n) / coefficient_exact(pairing[1], n)
        rows.append({
            "id": f"{args.pairing}-ratio-{n}",
            "direction": verdict.direction.value,
            "ratio": f"{ratio.numerator}/{ratio.denominator}",
            "ratio_float": float(ratio),
        })
    doc = _document("series", rows)
    doc["first_violation"] = verdict.first_violation
    _render(doc, _resolve_format(args.format))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="means-lab",
        description="Bivariate means and sharp weighted-mean inequality certification.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_format(p):
        p.add_argument("--format", choices=("table", "json", "csv"), default=None,
                       help="output format (default: table on a terminal, else json)")

    p_eval = sub.add_parser("eval", help="evaluate means on a pair")
    p_eval.add_argument("--means", required=True,
                        help="comma-separated means, e.g. H,G,Q or Lp:2")
    p_eval.add_argument("--pair", required=True, help="the pair as 'a,b'")
    add_format(p_eval)
    p_eval.set_defaults(handler=cmd_eval)

    p_verify = sub.add_parser("verify", help="verify bounds, the chain, or the corpus")
    p_verify.add_argument("target", choices=("1.1", "1.2", "1.3", "chain", "corpus"))
    p_verify.add_argument("--grid", type=int, default=100_000,
                          help="gap-grid size for theorem targets")
    p_verify.add_argument("--samples", type=int, default=None,
                          help="sample count for chain/corpus targets")
    p_verify.add_argument("--seed", type=int, default=42)
    p_verify.add_argument("--weight-lower", type=float, default=None,
                          help="override the lower-bound weight")
    p_verify.add_argument("--weight-upper", type=float, default=None,
                          help="override the upper-bound weight")
    add_format(p_verify)
    p_verify.set_defaults(handler=cmd_verify)

    p_sharp = sub.add_parser("sharpness", help="witness that a perturbed weight breaks a bound")
    p_sharp.add_argument("theorem", choices=("1.1", "1.2", "1.3"))
    p_sharp.add_argument("--side", choices=("lower", "upper"), required=True)
    p_sharp.add_argument("--epsilon", type=float, required=True)
    add_format(p_sharp)
    p_sharp.set_defaults(handler=cmd_sharpness)

    p_const = sub.add_parser("constants", help="sharp constants with recovery cross-check")
    add_format(p_const)
    p_const.set_defaults(handler=cmd_constants)

    p_series = sub.add_parser("series", help="coefficient-ratio monotonicity verdicts")
    p_series.add_argument("pairing", choices=("HQ", "HC"))
    p_series.add_argument("--terms", type=int, default=50)
    add_format(p_series)
    p_series.set_defaults(handler=cmd_series)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "verify" and args.samples is None:
        args.samples = 100_000 if args.target == "chain" else 10_000
    try:
        return args.handler(args)
    except (DomainError, EvaluationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
