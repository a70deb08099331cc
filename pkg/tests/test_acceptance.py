"""Acceptance suite: one test per exit criterion, each printing a verdict line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the verdict lines
and timings inline.  Every tolerance is exact (rational equality or exact
integer comparison); runtime limits are asserted where stated.
"""

import time
from contextlib import contextmanager
from fractions import Fraction

import numpy as np

from ltclab.code import Word, repetition, reed_solomon
from ltclab.field import Field
from ltclab.harness import (
    ExperimentConfig,
    product_instance,
    run_compose_check,
    run_expansion_check,
    run_sweep,
)
from ltclab.reports import json_bytes
from ltclab.tanner import TannerCode, iterated_graph, product_graph, square_test_graph
from ltclab.tensor import TensorWord, project_word, tensor_power, tensor_product

GF2 = Field(2)
SEED = 20260808


@contextmanager
def criterion(num: int, desc: str, limit: float = None):
    t0 = time.perf_counter()
    try:
        yield
    except BaseException:
        print(f"[acceptance] criterion {num:2d}: FAIL - {desc}")
        raise
    wall = time.perf_counter() - t0
    if limit is not None:
        assert wall < limit, f"criterion {num} took {wall:.1f}s (limit {limit}s)"
    print(f"[acceptance] criterion {num:2d}: PASS - {desc} ({wall:.2f}s)")


def test_criterion_01_field_and_code_foundations():
    with criterion(1, "field axioms exhaustive for q <= 13; RS codes are MDS", 10.0):
        for q in (2, 3, 5, 7, 11, 13):
            f = Field(q)
            elems = [f.element(v) for v in range(q)]
            for a in elems:
                if a.value:
                    assert a.inv().inv() == a
                    assert a ** (q - 1) == f.one
                for b in elems:
                    assert a + b == b + a
                    assert a * b == b * a
                    for c in elems:
                        assert (a + b) + c == a + (b + c)
                        assert (a * b) * c == a * (b * c)
                        assert a * (b + c) == a * b + a * c
        for q in (5, 7, 11, 13):
            f = Field(q)
            for k in (1, 2, 3):
                for n in range(k, q + 1):
                    assert reed_solomon(f, n, k).min_distance() == n - k + 1


def test_criterion_02_axis_membership_equals_generator_membership():
    with criterion(2, "axis-parallel membership == generator membership", 30.0):
        # [2,1,2] squared: exhaustive over all 16 words.
        rep2 = repetition(GF2, 2)
        square = tensor_power(rep2, 2)
        flat = tensor_product(rep2, rep2)
        words = np.stack(
            np.unravel_index(np.arange(16), (2,) * 4), axis=1
        ).astype(np.int64)
        axis_route = square.contains_batch(words)
        generator_route = flat.contains_batch(words)
        assert np.array_equal(axis_route, generator_route)
        assert int(axis_route.sum()) == 2

        # RS[5,2,4] squared: 10^4 seeded random words, zero disagreements.
        rs = reed_solomon(Field(5), 5, 2)
        square5 = tensor_power(rs, 2)
        flat5 = tensor_product(rs, rs)
        rng = np.random.default_rng(SEED)
        sample = rng.integers(0, 5, size=(10**4, 25))
        assert np.array_equal(
            square5.contains_batch(sample), flat5.contains_batch(sample)
        )


def test_criterion_03_project_extend_roundtrip():
    with criterion(3, "project-then-extend recovers all 2401 codewords", 30.0):
        f = Field(7)
        square = tensor_power(reed_solomon(f, 7, 2), 2)
        sets = [[1, 2], [1, 2]]  # size n - d + 1 = 2 per axis
        table = square.codewords()
        assert table.shape[0] == 2401
        for row in table:
            original = TensorWord(f, (7, 7), row)
            recovered = square.extend(sets, project_word(original, sets))
            assert recovered == original


def test_criterion_04_product_tester_sweep_at_paper_constant():
    with criterion(4, "1000-word sweep holds at alpha = 2^-16 (RS[31,1,31]^3)", 300.0):
        base = reed_solomon(Field(31), 31, 1)
        assert Fraction(30, 31) ** 3 >= Fraction(7, 8)  # distance hypothesis
        instance = product_instance(base, 3)
        config = ExperimentConfig(
            graph_spec="product:n=31,m=3",
            small_spec="rs:q=31,n=31,k=1^2",
            corpus="mixed:1000",
            seed=SEED,
            alpha=Fraction(1, 2**16),
        )
        result = run_sweep(config, instance=instance)
        assert result.summary["words"] == 1000
        assert result.violations == 0
        assert result.summary["hypotheses"]["product_tester"] is True
        print(
            f"[acceptance]   criterion 4 empirical min ratio: "
            f"{result.summary['min_ratio']} "
            f"(~{result.summary['min_ratio_decimal'][:8]})"
        )


def test_criterion_05_hand_computed_robustness():
    with criterion(5, "single-error word: rho = delta = 1/9 exactly"):
        instance = product_instance(repetition(GF2, 3), 2)
        values = np.zeros(9, dtype=np.int64)
        values[0] = 1
        w = Word(GF2, values)
        assert instance.expected_robustness(w) == Fraction(1, 9)
        assert instance.delta_exact(w) == Fraction(1, 9)


def test_criterion_06_composition_identity():
    with criterion(6, "composed expectation == nested expectation, exact", 60.0):
        rep2 = repetition(GF2, 2)
        outer = product_graph(2, 4)
        inner = product_graph(2, 3)
        c2 = tensor_power(rep2, 2).as_linear_code()
        result = run_compose_check(
            outer, inner, c2, "uniform:200;low_weight,wmax=2", seed=SEED
        )
        report = result["report"]
        assert report["words"] == 200 + 137  # seeded words plus all weight <= 2
        assert report["identity_mismatches"] == 0
        assert result["exit_code"] == 0


def test_criterion_07_tanner_product_equivalences():
    with criterion(7, "product-graph TPC membership == axis membership", 60.0):
        rep2 = repetition(GF2, 2)
        # m = 2: exhaustive 16 words against TPC(G^2_2, C).
        words4 = np.stack(np.unravel_index(np.arange(16), (2,) * 4), axis=1)
        got = TannerCode(product_graph(2, 2), rep2).contains_batch(words4)
        expect = tensor_power(rep2, 2).contains_batch(words4)
        assert np.array_equal(got, expect)

        # m = 3: exhaustive 256 words against TPC(G^2_3, C^2).
        c2 = tensor_power(rep2, 2).as_linear_code()
        words8 = np.stack(np.unravel_index(np.arange(256), (2,) * 8), axis=1)
        got = TannerCode(product_graph(2, 3), c2).contains_batch(words8)
        expect = tensor_power(rep2, 3).contains_batch(words8)
        assert np.array_equal(got, expect)

        # m = 4: exhaustive 65536 words against three equivalent testers.
        c3 = tensor_power(rep2, 3).as_linear_code()
        words16 = np.stack(np.unravel_index(np.arange(2**16), (2,) * 16), axis=1)
        expect = tensor_power(rep2, 4).contains_batch(words16)
        for graph, small in (
            (product_graph(2, 4), c3),
            (iterated_graph(2, 4, 2), c2),
            (square_test_graph(2, 2), c2),
        ):
            got = TannerCode(graph, small).contains_batch(words16)
            assert np.array_equal(got, expect)


def test_criterion_08_amplified_rejection_floor():
    with criterion(8, "amplified test rejects with prob >= delta/2 on all 512 words", 60.0):
        instance = product_instance(repetition(GF2, 3), 2)
        alpha = Fraction(1, 8)
        for bits in range(512):
            values = [(bits >> i) & 1 for i in range(9)]
            res = instance.amplified_rejection(Word(GF2, values), alpha)
            assert res.repetitions == 8
            assert res.holds, f"word {values}"


def test_criterion_09_coordinate_weight_diagnostic():
    with criterion(9, "weights sum to 1; witness word shows ratio <= 1"):
        for n in (2, 3):
            for m in (2, 3):
                instance = product_instance(repetition(GF2, n), m)
                weights, wmin = instance.coordinate_weights()
                assert sum(weights) == 1
                assert wmin <= Fraction(1, n**m)
                i = weights.index(wmin)
                values = np.zeros(n**m, dtype=np.int64)
                values[i] = 1
                w = Word(GF2, values)
                rho = instance.expected_robustness(w)
                assert rho == wmin
                assert rho <= instance.delta_exact(w)


def test_criterion_10_expansion_bound():
    with criterion(10, "boundary expansion >= the 1/8 bound", 120.0):
        exhaustive = run_expansion_check(product_graph(2, 3), mode="exhaustive")
        assert exhaustive["report"]["pairs_checked"] == 37 * 64
        assert exhaustive["report"]["violations"] == 0
        sampled = run_expansion_check(
            product_graph(3, 3), mode="sampled", samples=10**5, seed=SEED
        )
        assert sampled["report"]["pairs_checked"] == 10**5
        assert sampled["report"]["violations"] == 0


def test_criterion_11_deterministic_reports():
    with criterion(11, "same seed => byte-identical JSON sweep reports"):
        config = ExperimentConfig(
            graph_spec="product:n=3,m=2",
            small_spec="rep:q=2,n=3",
            corpus="mixed:45",
            seed=SEED,
            alpha=Fraction(1, 2**16),
        )
        first = json_bytes(run_sweep(config).document())
        second = json_bytes(run_sweep(config).document())
        assert first == second
