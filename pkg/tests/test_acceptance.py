"""Acceptance criteria 1-8.

Each test prints one ``ACCEPTANCE <n> PASS|FAIL: ...`` line. Run with
``pytest -v -s tests/test_acceptance.py`` or ``python tests/test_acceptance.py``.
"""

import math
import sys
import time
from fractions import Fraction
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from cli_cases import CASES, golden_path, run  # noqa: E402
from metricpair import (  # noqa: E402
    CanonicalClass,
    IndeterminateClassification,
    MetricPair,
    SymForm,
    Transition,
    canonical_form,
    classify,
    eigen_route_elliptic,
    eigen_route_hyperbolic,
    invariants,
    orthonormalize_pair,
)
from metricpair.associated import associated_operator  # noqa: E402
from metricpair.oracle import (  # noqa: E402
    FuzzConfig,
    generate,
    grid_min_offdiag,
    instance_rng,
    random_rational,
)

SEED = 20261015
PER_CLASS = 1000
RESIDUAL_RTOL = 1e-9
DISC_RTOL = 1e-12
ROUTE_RTOL = 1e-10
WITNESS_FACTOR = 1e3
MINK = SymForm(1, 0, -1)
# columns (1,1)/2 and (1,-1) form a null basis of MINK; this is its inverse
NULL_TO_MINK = Transition(1, 1, Fraction(1, 2), Fraction(-1, 2))

_instances = None
LINES = []  # echoed in the pytest terminal summary


def instances():
    """5000 exact instances, 1000 per class (classes cycle)."""
    global _instances
    if _instances is None:
        _instances = list(generate(FuzzConfig(seed=SEED, count=5 * PER_CLASS)))
    return _instances


def report(n, ok, detail):
    line = f"ACCEPTANCE {n} {'PASS' if ok else 'FAIL'}: {detail}"
    LINES.append(line)
    print("\n" + line, flush=True)
    assert ok, detail


def test_criterion_1_exact_classification():
    insts = instances()
    wrong = [i.index for i in insts if classify(i.pair) is not i.truth.label]
    per = {c: sum(i.truth.label is c for i in insts) for c in CanonicalClass}
    ok = not wrong and all(v == PER_CLASS for v in per.values())
    report(1, ok, f"{len(insts) - len(wrong)}/{len(insts)} exact labels recovered; mislabeled {wrong[:5]}")


def _approx_outcomes():
    agree, indeterminate, wrong = 0, 0, []
    for inst in instances():
        try:
            label = classify(inst.pair.to_float())
        except IndeterminateClassification as exc:
            if inst.truth.label not in exc.candidates:
                wrong.append(inst.index)
            indeterminate += 1
            continue
        if label is inst.truth.label:
            agree += 1
        else:
            wrong.append(inst.index)
    return agree, indeterminate, wrong


def test_criterion_2_approx_classification():
    agree, indeterminate, wrong = _approx_outcomes()
    total = len(instances())
    ok = agree >= 0.99 * total and not wrong
    report(2, ok, f"{agree}/{total} agree, {indeterminate} indeterminate, {len(wrong)} mislabeled")


def test_criterion_3_round_trip_residuals():
    worst, bad, checked = 0.0, [], 0
    for inst in instances():
        pair = inst.pair.to_float()
        res = canonical_form(pair)
        if res.indeterminate:
            continue
        checked += 1
        rg = res.residual_g / pair.g.norm_inf()
        rgc = res.residual_gcheck / pair.gcheck.norm_inf() if pair.gcheck.norm_inf() else res.residual_gcheck
        worst = max(worst, rg, rgc)
        if rg > RESIDUAL_RTOL or rgc > RESIDUAL_RTOL:
            bad.append(inst.index)
    report(3, not bad, f"{checked} round trips, worst relative residual {worst:.2e}, failures {bad[:5]}")


def test_criterion_4_discriminant_identity():
    exact_bad, worst = 0, 0.0
    for i in range(1000):
        rng = instance_rng(SEED, i)
        gc = SymForm(*(random_rational(rng, -10, 10) for _ in range(3)))
        pair = MetricPair(MINK, gc)
        F = associated_operator(pair)
        lhs = (gc.m00 + gc.m11) ** 2 - 4 * gc.m01**2
        rhs = F.trace() ** 2 - 4 * F.det()
        exact_bad += lhs != rhs
        inv = invariants(pair.to_float())
        lhs_f = (float(gc.m00) + float(gc.m11)) ** 2 - 4 * float(gc.m01) ** 2
        scale = (float(gc.m00) + float(gc.m11)) ** 2 + 4 * float(gc.m01) ** 2 or 1.0
        worst = max(worst, abs(lhs_f - inv.discriminant) / scale)
    ok = exact_bad == 0 and worst <= DISC_RTOL
    report(4, ok, f"exact mismatches {exact_bad}/1000, worst double relative gap {worst:.2e}")


def _route_gap(label, count):
    worst = 0.0
    eigen = eigen_route_hyperbolic if label is CanonicalClass.HYPERBOLIC else eigen_route_elliptic
    for inst in generate(FuzzConfig(seed=SEED + 1, count=count, class_filter=label)):
        pair = inst.pair.to_float()
        boost = canonical_form(pair)
        check = eigen(pair)
        scale = max(abs(boost.a), abs(boost.b))
        worst = max(worst, abs(boost.a - check.a) / scale, abs(boost.b - check.b) / scale)
    return worst


def test_criterion_5_route_agreement():
    hyp = _route_gap(CanonicalClass.HYPERBOLIC, 1000)
    ell = _route_gap(CanonicalClass.ELLIPTIC, 1000)
    pair = MetricPair(MINK, SymForm(3.0, 1.0, 1.0))
    res = canonical_form(pair)
    want_a, want_b = 1 + math.sqrt(3), math.sqrt(3) - 1
    example = max(abs(res.a - want_a) / want_a, abs(res.b - want_b) / want_b)
    phi_grid, min_val = grid_min_offdiag(pair.gcheck, (-2.0, 2.0), 4001)
    grid_ok = min_val <= 1e-10 and abs(phi_grid - res.extras["phi"]) <= 1e-6
    ok = hyp <= ROUTE_RTOL and ell <= ROUTE_RTOL and example <= ROUTE_RTOL and grid_ok
    report(
        5, ok,
        f"worst route gap hyperbolic {hyp:.2e}, elliptic {ell:.2e}; [[3,1],[1,1]] gap {example:.2e}, "
        f"grid phi {phi_grid:.6f} vs boost {res.extras['phi']:.6f}",
    )


def _rational_lorentz(t: Fraction, reflect: bool) -> Transition:
    # cosh = (1+t^2)/(1-t^2), sinh = 2t/(1-t^2) keeps the boost rational
    d = 1 - t * t
    ch, sh = (1 + t * t) / d, 2 * t / d
    if reflect:
        return Transition(ch, -sh, sh, -ch)
    return Transition(ch, sh, sh, ch)


def test_criterion_6_sigma_invariance_and_witness():
    parabolic = [CanonicalClass.PARABOLIC_POS, CanonicalClass.PARABOLIC_NEG]
    changed = 0
    for k in range(100):
        label = parabolic[k % 2]
        inst = next(generate(FuzzConfig(seed=SEED + 2 + k, count=1, class_filter=label)))
        base = invariants(inst.pair).sigma
        # canonical null frame, then a rational Minkowski frame
        pair = inst.pair.transformed(inst.truth.transition).transformed(NULL_TO_MINK)
        assert pair.g == MINK
        rng = instance_rng(SEED + 2, k)
        for _ in range(100):
            L = _rational_lorentz(random_rational(rng, Fraction(-7, 8), Fraction(7, 8)), bool(rng.integers(2)))
            changed += invariants(pair.transformed(L)).sigma != base
    # witness: equal (trace, det), different sigma
    seen = {}
    witness = None
    for inst in generate(FuzzConfig(seed=SEED, count=5 * PER_CLASS)):
        if not inst.truth.label.is_degenerate:
            continue
        inv = invariants(inst.pair)
        key = (inv.trace, inv.determinant)
        other = seen.setdefault(key, inst)
        if invariants(other.pair).sigma != inv.sigma:
            witness = f"#{other.index} {other.truth.label.value} vs #{inst.index} {inst.truth.label.value}, trace {key[0]}, det {key[1]}"
            break
    ok = changed == 0 and witness is not None
    report(6, ok, f"sigma changed {changed}/10000 times; witness pair {witness}")


def test_criterion_7_elliptic_not_diagonalizable():
    worst_ratio, bad = math.inf, []
    for inst in generate(FuzzConfig(seed=SEED + 3, count=200, class_filter=CanonicalClass.ELLIPTIC)):
        ortho, _ = orthonormalize_pair(inst.pair.to_float())
        gc = ortho.gcheck
        _, min_val = grid_min_offdiag(gc)
        bound = WITNESS_FACTOR * RESIDUAL_RTOL * gc.norm_inf()
        worst_ratio = min(worst_ratio, min_val / bound)
        if min_val <= bound:
            bad.append(inst.index)
    report(7, not bad, f"200 elliptic grid minima, smallest min/threshold {worst_ratio:.3g}, failures {bad[:5]}")


def test_criterion_8_golden_files():
    mismatched = []
    for name, (argv, code) in sorted(CASES.items()):
        first, second = run(argv), run(argv)
        if first != second or first[0] != code or first[1] != golden_path(name).read_text():
            mismatched.append(name)
    report(8, not mismatched, f"{len(CASES) - len(mismatched)}/{len(CASES)} golden outputs byte-identical")


if __name__ == "__main__":
    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            t0 = time.perf_counter()
            try:
                fn()
            except AssertionError:
                failed += 1
            print(f"  ({time.perf_counter() - t0:.1f} s)")
    sys.exit(1 if failed else 0)
