"""Acceptance suite: one test per criterion, each printing a verdict line.

Run with ``pytest tests/test_acceptance.py -v -s``.  The dataset-reproduction
criteria need the five UCI benchmark files and skip with a notice when those
cannot be fetched (set BICLOSE_UCI_DIR to a directory with the raw files to
run them offline).
"""

import time
from contextlib import contextmanager

import numpy as np
import pytest

from biclose import (
    EnumParams,
    MixedMatrix,
    brute_force_enumerate,
    enumerate_biclusters,
    filter_relevance,
    greedy_select,
    load_dataset,
    render_qcar,
    row_coverage,
    score_rules,
)
from support import (
    as_pairs,
    assert_valid_solution,
    random_mixed_instance,
    ref10_expected,
    ref10_matrix,
)
import uci


@contextmanager
def criterion(num: int, desc: str):
    try:
        yield
    except Exception:
        print(f"\nACCEPTANCE {num} FAIL: {desc}")
        raise
    print(f"\nACCEPTANCE {num} PASS: {desc}")


def skip_criterion(num: int, desc: str, reason: str):
    print(f"\nACCEPTANCE {num} SKIP: {desc} ({reason})")
    pytest.skip(reason)


# Published reference results for the five benchmark datasets: bicluster
# counts after enumeration / relevance filter / greedy selection, and the
# row/column coverage percentages of the three stages.
UCI_EXPECTED = {
    "acute1": dict(min_rows=5, min_conf=0.95, counts=(172, 54, 4),
                   row=(100.0, 100.0, 100.0), col=(100.0, 100.0, 83.33)),
    "acute2": dict(min_rows=5, min_conf=0.95, counts=(172, 66, 4),
                   row=(100.0, 100.0, 100.0), col=(100.0, 100.0, 50.0)),
    "car": dict(min_rows=5, min_conf=0.95, counts=(4147, 1940, 54),
                row=(98.67, 85.01, 85.01), col=(100.0, 100.0, 100.0)),
    "heart": dict(min_rows=5, min_conf=0.95, counts=(82150, 15808, 38),
                  row=(100.0, 99.63, 99.63), col=(100.0, 100.0, 100.0)),
    "voting": dict(min_rows=5, min_conf=0.95, counts=(189785, 109873, 13),
                   row=(99.77, 99.08, 99.08), col=(100.0, 100.0, 87.5)),
    "zoo": dict(min_rows=3, min_conf=1.0, counts=(4429, 346, 9),
                row=(100.0, 100.0, 100.0), col=(100.0, 100.0, 100.0)),
}

LIFT_DISTANCE = 0.2

_pipeline_cache: dict[str, dict] = {}


def run_uci_pipeline(name: str) -> dict | None:
    """Full pipeline on one benchmark dataset; cached across criteria."""
    if name in _pipeline_cache:
        return _pipeline_cache[name]
    files = uci.dataset_files(name)
    if files is None:
        return None
    csv_path, schema_path = files
    spec = UCI_EXPECTED[name]
    matrix = load_dataset(csv_path, schema_path)
    params = EnumParams.for_matrix(matrix, spec["min_rows"], 1)
    biclusters = enumerate_biclusters(matrix, params)
    scored = score_rules(biclusters, matrix)
    kept = filter_relevance(scored, spec["min_conf"], LIFT_DISTANCE)
    kept_strict = filter_relevance(
        scored, spec["min_conf"], LIFT_DISTANCE, strict_lift=True
    )
    result = {
        "matrix": matrix,
        "scored": scored,
        "filter1": kept,
        "filter1_strict": kept_strict,
        "filter2": greedy_select(kept, matrix),
        "filter2_strict": greedy_select(kept_strict, matrix)
        if len(kept_strict) != len(kept)
        else None,
    }
    _pipeline_cache[name] = result
    return result


def test_criterion_1_worked_example_exact():
    desc = "10x3 worked example yields exactly the 12 reference biclusters"
    with criterion(1, desc):
        mat = ref10_matrix()
        params = EnumParams.for_matrix(mat, 2, 2)
        t0 = time.perf_counter()
        got = enumerate_biclusters(mat, params)
        elapsed = time.perf_counter() - t0
        assert {(b.extent, b.intent) for b in got} == ref10_expected()
        assert elapsed < 1.0, f"took {elapsed:.3f}s"


def test_criterion_2_oracle_equivalence():
    desc = "engine equals brute force on 200 random mixed instances"
    with criterion(2, desc):
        rng = np.random.RandomState(2024)
        t0 = time.perf_counter()
        for trial in range(200):
            mat, params = random_mixed_instance(rng)
            got = set(as_pairs(enumerate_biclusters(mat, params)))
            want = set(as_pairs(brute_force_enumerate(mat, params)))
            assert got == want, f"trial {trial} diverged"
        elapsed = time.perf_counter() - t0
        assert elapsed < 120.0, f"took {elapsed:.1f}s"


def test_criterion_3_direct_assertions():
    desc = "homogeneity, one-step maximality and distinct extents on all outputs"
    with criterion(3, desc):
        mat = ref10_matrix()
        params = EnumParams.for_matrix(mat, 2, 2)
        assert_valid_solution(mat, params, enumerate_biclusters(mat, params))
        rng = np.random.RandomState(31337)
        for _ in range(60):
            mat, params = random_mixed_instance(rng)
            assert_valid_solution(mat, params, enumerate_biclusters(mat, params))
            assert_valid_solution(mat, params, brute_force_enumerate(mat, params))


@pytest.mark.parametrize("name", list(UCI_EXPECTED))
def test_criterion_4_uci_reproduction(name):
    desc = f"benchmark reproduction: {name} counts and coverages"
    result = run_uci_pipeline(name)
    if result is None:
        skip_criterion(4, desc, "dataset unavailable offline")
    with criterion(4, desc):
        spec = UCI_EXPECTED[name]
        enum_expected, f1_expected, f2_expected = spec["counts"]
        assert len(result["scored"]) == enum_expected, (
            f"enumerated {len(result['scored'])}, expected {enum_expected}"
        )

        f1 = result["filter1"]
        if len(f1) == f1_expected:
            f2 = result["filter2"]
        elif len(result["filter1_strict"]) == f1_expected:
            # only acceptable when the one-off is the lift tie semantics
            f1 = result["filter1_strict"]
            f2 = result["filter2_strict"]
        else:
            raise AssertionError(
                f"filter1 kept {len(f1)} (strict {len(result['filter1_strict'])}), "
                f"expected {f1_expected}"
            )
        assert len(f2) == f2_expected, (
            f"filter2 kept {len(f2)}, expected {f2_expected}"
        )

        matrix = result["matrix"]
        stages = (result["scored"], f1, f2)
        for idx, stage in enumerate(stages):
            rows, cols = row_coverage(stage, matrix)
            assert abs(100 * rows - spec["row"][idx]) <= 0.0105, (
                f"stage {idx} row coverage {100 * rows:.4f} vs {spec['row'][idx]}"
            )
            assert abs(100 * cols - spec["col"][idx]) <= 0.0105, (
                f"stage {idx} column coverage {100 * cols:.4f} vs {spec['col'][idx]}"
            )


def test_criterion_5_rule_metric_spot_check():
    desc = "selected acute rule reproduces the published metric quadruple"
    result = run_uci_pipeline("acute1")
    if result is None:
        skip_criterion(5, desc, "dataset unavailable offline")
    with criterion(5, desc):
        matrix = result["matrix"]
        selected = result["filter2"]
        wanted = "urinePushing{yes}, micturitionPain{yes} ⇒ 1"
        hits = [
            (q, m) for q, m in selected if render_qcar(q, matrix) == wanted
        ]
        assert hits, "expected rule not among the selected rules: " + "; ".join(
            render_qcar(q, matrix) for q, _ in selected
        )
        _, m = hits[0]
        for got, expected in (
            (m.completeness, 0.83),
            (m.confidence, 1.00),
            (m.lift, 2.03),
            (m.leverage, 0.21),
        ):
            assert abs(round(got, 2) - expected) <= 0.005, (got, expected)


def test_criterion_6_filter_properties():
    desc = "greedy selection preserves row coverage and best-completeness rules"
    with criterion(6, desc):
        rng = np.random.RandomState(606)
        checked = 0
        for _ in range(40):
            mat, params = random_mixed_instance(rng)
            labels = tuple(str(rng.randint(3)) for _ in range(mat.n))
            mat = MixedMatrix(
                values=mat.values, missing=mat.missing, schema=mat.schema,
                row_labels=labels,
            )
            scored = score_rules(enumerate_biclusters(mat, params), mat)
            if not scored:
                continue
            picked = greedy_select(scored, mat)
            assert row_coverage(picked, mat)[0] == row_coverage(scored, mat)[0]
            for label in {q.consequent for q, _ in scored}:
                best_in = max(
                    m.completeness for q, m in scored if q.consequent == label
                )
                best_out = max(
                    m.completeness for q, m in picked if q.consequent == label
                )
                assert best_out == best_in
            checked += 1
        assert checked >= 20
        for name in UCI_EXPECTED:
            result = _pipeline_cache.get(name)
            if not result:
                continue
            matrix = result["matrix"]
            for f1_key, f2_key in (("filter1", "filter2"),):
                f1, f2 = result[f1_key], result[f2_key]
                if f1:
                    assert row_coverage(f2, matrix)[0] == row_coverage(f1, matrix)[0]


def test_criterion_7_pruning_neutrality():
    desc = "min-column pruning never changes output and never costs more nodes"
    with criterion(7, desc):
        instances = [(ref10_matrix(), EnumParams(2, 2, (0.2,) * 3))]
        rng = np.random.RandomState(707)
        for _ in range(40):
            instances.append(random_mixed_instance(rng))
        for mat, params in instances:
            on, off = {}, {}
            with_p = enumerate_biclusters(mat, params, stats=on)
            without = enumerate_biclusters(
                mat, params, prune_min_cols=False, stats=off
            )
            assert as_pairs(with_p) == as_pairs(without)
            assert on["nodes"] <= off["nodes"]
