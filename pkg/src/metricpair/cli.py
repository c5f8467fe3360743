"""Command-line front end.

Reports go to stdout as JSON; human-readable diagnostics go to stderr.

Exit codes: 0 success, 1 unreadable input, 2 domain error (signature,
singular transition, ...), 3 indeterminate classification, 4 failed
verification or fuzz failures.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import __version__
from .associated import CanonicalClass, PairInvariants, classify, invariants
from .canonicalize import canonical_form, canonical_matrices
from .errors import (
    IndeterminateClassification,
    InvalidInputError,
    MetricPairError,
    NumericalDegeneracyError,
    SignatureError,
    SingularTransitionError,
    WrongBranchError,
)
from .forms import MetricPair, SymForm, Transition, congruence, form_distance, validate_pair
from .oracle import FuzzConfig, generate
from .scalar import APPROX, BACKENDS, EXACT, TolerancePolicy, format_scalar, parse_literal

EXIT_OK, EXIT_PARSE, EXIT_DOMAIN, EXIT_INDETERMINATE, EXIT_FAILED = 0, 1, 2, 3, 4

# fuzz acceptance thresholds
FUZZ_RESIDUAL_RTOL = 1e-9
FUZZ_PARAM_RTOL = 1e-9


# --- serialization -------------------------------------------------------------


def _fmt_float(x: float) -> str:
    if not math.isfinite(x):
        raise InvalidInputError(f"cannot serialize non-finite value {x!r}")
    s = f"{x + 0.0:.17g}"
    if not any(c in s for c in ".en"):
        s += ".0"
    return s


def _is_flat(seq) -> bool:
    return all(not isinstance(v, (dict, list, tuple)) or _is_flat_list(v) for v in seq)


def _is_flat_list(v) -> bool:
    return isinstance(v, (list, tuple)) and all(not isinstance(x, (dict, list, tuple)) for x in v)


def _encode(obj, level: int) -> str:
    pad = "  " * (level + 1)
    end = "  " * level
    if isinstance(obj, float):
        return _fmt_float(obj)
    if obj is None or isinstance(obj, (bool, int, str)):
        return json.dumps(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        body = ",\n".join(f"{pad}{json.dumps(str(k))}: {_encode(v, level + 1)}" for k, v in obj.items())
        return "{\n" + body + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if _is_flat(obj):
            return "[" + ", ".join(_encode(v, level) for v in obj) + "]"
        body = ",\n".join(pad + _encode(v, level + 1) for v in obj)
        return "[\n" + body + "\n" + end + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj) -> str:
    """Deterministic JSON; doubles carry 17 significant digits."""
    return _encode(obj, 0) + "\n"


def _num(x):
    return format_scalar(x)


def form_rows(form: SymForm):
    return [[_num(x) for x in row] for row in form.rows()]


def transition_rows(S: Transition):
    return [[_num(x) for x in row] for row in S.rows()]


def pair_document(pair: MetricPair) -> dict:
    return {"g": form_rows(pair.g), "gcheck": form_rows(pair.gcheck)}


# --- parsing -------------------------------------------------------------------


def _matrix(doc: dict, key: str):
    rows = doc.get(key)
    if not isinstance(rows, list) or len(rows) != 2 or any(not isinstance(r, list) or len(r) != 2 for r in rows):
        raise InvalidInputError(f"'{key}' must be a 2x2 array")
    return rows


def load_pair(doc, backend: str):
    """Parse a pair document; returns ``(pair, effective_backend)``.

    Under the exact backend a non-integral JSON number cannot be kept
    exact, so the whole document falls back to the approximate backend.
    """
    if not isinstance(doc, dict):
        raise InvalidInputError("pair document must be a JSON object")
    forms = {}
    for key in ("g", "gcheck"):
        parsed = [[parse_literal(x, backend) for x in row] for row in _matrix(doc, key)]
        forms[key] = SymForm.from_rows(parsed)
    pair = MetricPair(forms["g"], forms["gcheck"])
    if backend == EXACT and not pair.is_exact:
        print("warning: non-integral JSON number; using the approx backend", file=sys.stderr)
        return pair.to_float(), APPROX
    if backend == APPROX:
        pair = pair.to_float()
    return pair, backend


def parse_transition(rows) -> Transition:
    if not isinstance(rows, list) or len(rows) != 2 or any(not isinstance(r, list) or len(r) != 2 for r in rows):
        raise InvalidInputError("transition must be a 2x2 array")
    return Transition.from_rows([[parse_literal(x, APPROX) for x in row] for row in rows])


def _read_json(path: Optional[str]):
    try:
        text = Path(path).read_text() if path and path != "-" else sys.stdin.read()
    except OSError as exc:
        raise InvalidInputError(f"cannot read {path}: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidInputError(f"malformed JSON: {exc}") from exc


# --- report builders -----------------------------------------------------------


def _invariants_dict(inv: PairInvariants) -> dict:
    return {
        "trace": _num(inv.trace),
        "det": _num(inv.determinant),
        "disc": _num(inv.discriminant),
        "sigma": inv.sigma,
    }


def _base(command: str, backend: str, policy: TolerancePolicy) -> dict:
    return {
        "command": command,
        "backend": backend,
        "tolerance": {"atol": policy.atol, "rtol": policy.rtol},
    }


def classification_report(pair: MetricPair, backend: str, policy: TolerancePolicy) -> dict:
    report = _base("classify", backend, policy)
    try:
        label = classify(pair, policy)
        inv = invariants(pair, policy)
        report.update({"class": label.value, "indeterminate": False, "candidates": []})
    except IndeterminateClassification as exc:
        inv = exc.invariants
        report.update({
            "class": None,
            "indeterminate": True,
            "candidates": [c.value for c in exc.candidates],
            "reason": exc.reason,
        })
    report["invariants"] = _invariants_dict(inv)
    return report


def canonical_report(pair: MetricPair, backend: str, policy: TolerancePolicy) -> dict:
    result = canonical_form(pair, policy)
    inv = invariants(pair, policy)
    report = _base("canonicalize", backend, policy)
    report.update({
        "class": result.label.value,
        "indeterminate": result.indeterminate,
        "candidates": [c.value for c in result.candidates],
        "invariants": _invariants_dict(inv),
        "a": float(result.a),
        "b": None if result.b is None else float(result.b),
        "transition": transition_rows(result.transition.map(float)),
        "canonical": {
            "g": form_rows(result.canonical_g.map(float)),
            "gcheck": form_rows(result.canonical_gcheck.map(float)),
        },
        "residuals": {"g": result.residual_g, "gcheck": result.residual_gcheck},
        "route_discrepancy": result.route_discrepancy,
    })
    return report


def verify_report(
    pair: MetricPair, transition: Transition, expected: dict, policy: TolerancePolicy
) -> dict:
    """Recompute both congruences and compare with the expected canonical matrices."""
    try:
        label = CanonicalClass(expected["class"])
    except (KeyError, ValueError, TypeError) as exc:
        raise InvalidInputError(f"expected report lacks a valid 'class': {exc}") from exc
    a = parse_literal(expected.get("a"), APPROX)
    b = expected.get("b")
    b = None if b is None else parse_literal(b, APPROX)
    g_can, gc_can = (m.map(float) for m in canonical_matrices(label, a, b))
    fpair = pair.to_float()
    transition.require_invertible()
    g_new = congruence(fpair.g, transition)
    gc_new = congruence(fpair.gcheck, transition)
    res_g = form_distance(g_new, g_can)
    res_gc = form_distance(gc_new, gc_can)
    lim_g = policy.atol + policy.rtol * float(fpair.g.norm_inf())
    lim_gc = policy.atol + policy.rtol * float(fpair.gcheck.norm_inf())
    report = _base("verify", APPROX, policy)
    report.update({
        "class": label.value,
        "pass": res_g <= lim_g and res_gc <= lim_gc,
        "residuals": {"g": res_g, "gcheck": res_gc},
        "limits": {"g": lim_g, "gcheck": lim_gc},
        "expected": {"g": form_rows(g_can), "gcheck": form_rows(gc_can)},
        "actual": {"g": form_rows(g_new), "gcheck": form_rows(gc_new)},
    })
    return report


def _fuzz_check(inst, backend: str, policy: TolerancePolicy):
    """Return ``(status, sigma, reason)``; status is ok, failure or indeterminate."""
    truth = inst.truth
    if backend == EXACT:
        pair = inst.pair
        label = classify(pair, policy)
        sig = invariants(pair, policy).sigma
        if label is not truth.label:
            return "failure", sig, f"classified {label.value}, expected {truth.label.value}"
        return "ok", sig, None

    pair = inst.pair.to_float()
    try:
        label = classify(pair, policy)
    except IndeterminateClassification as exc:
        return "indeterminate", exc.invariants.sigma, exc.reason
    sig = invariants(pair, policy).sigma
    if label is not truth.label:
        return "failure", sig, f"classified {label.value}, expected {truth.label.value}"
    res = canonical_form(pair, policy)
    if res.residual_g > FUZZ_RESIDUAL_RTOL * float(pair.g.norm_inf()):
        return "failure", sig, f"g residual {res.residual_g!r}"
    if res.residual_gcheck > FUZZ_RESIDUAL_RTOL * float(pair.gcheck.norm_inf()):
        return "failure", sig, f"gcheck residual {res.residual_gcheck!r}"
    for got, want in ((res.a, truth.a), (res.b, truth.b)):
        if want is not None and abs(got - float(want)) > FUZZ_PARAM_RTOL * max(1.0, abs(float(want))):
            return "failure", sig, f"parameter {got!r} differs from {float(want)!r}"
    if not res.routes_agree:
        return "failure", sig, f"route discrepancy {res.route_discrepancy!r}"
    return "ok", sig, None


def fuzz_summary(
    config: FuzzConfig, backend: str, policy: TolerancePolicy, witness_dir: Optional[Path] = None
) -> dict:
    labels = {c.value: 0 for c in CanonicalClass}
    sigmas = {"-1": 0, "0": 0, "+1": 0, "none": 0}
    witnesses = []
    indeterminate = 0
    for inst in generate(config):
        labels[inst.truth.label.value] += 1
        try:
            status, sig, reason = _fuzz_check(inst, backend, policy)
        except MetricPairError as exc:
            status, sig, reason = "failure", None, f"{type(exc).__name__}: {exc}"
        sigmas["none" if sig is None else f"{sig:+d}".replace("+0", "0")] += 1
        if status == "indeterminate":
            indeterminate += 1
        elif status == "failure":
            doc = pair_document(inst.pair)
            witnesses.append({"index": inst.index, "reason": reason, "document": doc})
            if witness_dir is not None:
                witness_dir.mkdir(parents=True, exist_ok=True)
                (witness_dir / f"witness_{config.seed}_{inst.index}.json").write_text(dumps(doc))
    report = _base("fuzz", backend, policy)
    report.update({
        "seed": config.seed,
        "count": config.count,
        "class_filter": None if config.class_filter is None else config.class_filter.value,
        "max_condition": float(config.max_condition),
        "instances": config.count,
        "failures": len(witnesses),
        "indeterminate": indeterminate,
        "labels": labels,
        "sigma": sigmas,
        "witnesses": witnesses,
    })
    return report


# --- argument handling ---------------------------------------------------------


def _policy(args) -> TolerancePolicy:
    return TolerancePolicy() if args.tol is None else TolerancePolicy(args.tol, args.tol)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--backend", choices=BACKENDS, default=APPROX)
    common.add_argument("--tol", type=float, default=None, help="sets atol = rtol (default 1e-9)")

    parser = argparse.ArgumentParser(
        prog="metricpair",
        description="Classify a pair of 2D bilinear forms whose first form has signature (+,-).",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    for name, help_ in (
        ("classify", "class label and invariants"),
        ("canonicalize", "class, parameters and canonical transition"),
    ):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.add_argument("--input", default=None, help="pair document path (default stdin)")

    p = sub.add_parser("verify", parents=[common], help="check a transition against an expected report")
    p.add_argument("--input", default=None, help="pair document path (default stdin)")
    p.add_argument("--report", required=True, help="expected report (output of canonicalize)")
    p.add_argument("--transition", default=None, help="2x2 JSON matrix; default: the report's transition")

    p = sub.add_parser("fuzz", parents=[common], help="seeded round-trip testing")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--class", dest="class_filter", choices=[c.value for c in CanonicalClass], default=None)
    p.add_argument("--max-condition", type=float, default=10.0)
    p.add_argument("--witness-dir", default=None, help="write failing pair documents here")
    return parser


def _run(args) -> int:
    policy = _policy(args)
    if args.command == "fuzz":
        config = FuzzConfig(
            seed=args.seed,
            count=args.count,
            class_filter=None if args.class_filter is None else CanonicalClass(args.class_filter),
            max_condition=args.max_condition,
        )
        witness_dir = Path(args.witness_dir) if args.witness_dir else None
        summary = fuzz_summary(config, args.backend, policy, witness_dir)
        sys.stdout.write(dumps(summary))
        return EXIT_OK if summary["failures"] == 0 else EXIT_FAILED

    pair, backend = load_pair(_read_json(args.input), args.backend)
    validate_pair(pair, policy)

    if args.command == "classify":
        report = classification_report(pair, backend, policy)
        sys.stdout.write(dumps(report))
        return EXIT_INDETERMINATE if report["indeterminate"] else EXIT_OK

    if args.command == "canonicalize":
        report = canonical_report(pair, backend, policy)
        sys.stdout.write(dumps(report))
        return EXIT_INDETERMINATE if report["indeterminate"] else EXIT_OK

    expected = _read_json(args.report)
    if not isinstance(expected, dict):
        raise InvalidInputError("expected report must be a JSON object")
    rows = _read_json(args.transition) if args.transition else expected.get("transition")
    report = verify_report(pair, parse_transition(rows), expected, policy)
    sys.stdout.write(dumps(report))
    if not report["pass"]:
        print(
            f"verification failed: residuals g={report['residuals']['g']:.3e}, "
            f"gcheck={report['residuals']['gcheck']:.3e}",
            file=sys.stderr,
        )
        return EXIT_FAILED
    return EXIT_OK


_KINDS = {
    SignatureError: "signature",
    SingularTransitionError: "singular_transition",
    WrongBranchError: "wrong_branch",
    NumericalDegeneracyError: "numerical_degeneracy",
}


def _error(kind: str, exc: Exception, code: int) -> int:
    print(f"error: {exc}", file=sys.stderr)
    sys.stdout.write(dumps({"error": {"kind": kind, "message": str(exc)}}))
    return code


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _run(args)
    except InvalidInputError as exc:
        return _error("input", exc, EXIT_PARSE)
    except IndeterminateClassification as exc:
        return _error("indeterminate", exc, EXIT_INDETERMINATE)
    except MetricPairError as exc:
        return _error(_KINDS.get(type(exc), "domain"), exc, EXIT_DOMAIN)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
