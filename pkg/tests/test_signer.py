import math

import numpy as np
import pytest

from signseq.adversary import build_lower_bound_sequence
from signseq.admissible import AdmissibleSet, EnumerationCapExceeded, InputTooLong, collapse, insert, pi_set
from signseq.norms import EUCLIDEAN, L1, DimensionMismatch, random_unit_ball_vectors
from signseq.signer import (
    SignResult,
    certified_bound,
    greedy_sign,
    partial_sums,
    sign_result_problems,
    sign_sequence,
    verify_sign_result,
)

from .fuzz import HEXAGON, fuzz_sequence, plane_norms

SQRT3 = math.sqrt(3)


def test_orthogonal_pair_euclidean():
    r = sign_sequence([(1, 0), (0, 1)], EUCLIDEAN)
    assert r.max_partial_norm == pytest.approx(math.sqrt(2))
    assert r.max_partial_norm <= SQRT3
    assert r.certified_bound == pytest.approx(SQRT3 * (1 + 1e-9), abs=0)
    assert r.algorithm == "trapping"


def test_repeated_vector_cancels():
    r = sign_sequence([(1, 0), (1, 0)], EUCLIDEAN)
    assert r.signs[0] == -r.signs[1]
    assert r.partial_norms == [1.0, 0.0]


def test_l1_pair_meets_bound():
    r = sign_sequence([(1, 0), (0, 1)], L1)
    assert r.max_partial_norm == 2.0
    assert r.certified_bound == 2 * (1 + 1e-9)


def test_empty_and_single():
    r = sign_sequence([], EUCLIDEAN)
    assert r.signs == [] and r.partial_norms == [] and r.max_partial_norm == 0
    r = sign_sequence([(0.3, -0.4)], HEXAGON)
    assert r.signs in ([1], [-1]) and len(r.partial_norms) == 1


def test_random_disk_sequence_within_sqrt3():
    vs = random_unit_ball_vectors(EUCLIDEAN, 200, np.random.default_rng(0))
    r = sign_sequence(vs, EUCLIDEAN)
    assert r.max_partial_norm <= SQRT3 + 1e-6
    assert verify_sign_result(vs, r, EUCLIDEAN)


def test_errors():
    with pytest.raises(InputTooLong):
        sign_sequence([(0.5, 0), (3, 0)], EUCLIDEAN)
    with pytest.raises(DimensionMismatch):
        sign_sequence([(0.5, 0), (0.1, 0, 0)], EUCLIDEAN)
    with pytest.raises(DimensionMismatch):
        sign_sequence([(0.5, 0, 0)], HEXAGON)


def test_final_pattern_minimises_final_norm():
    rng = np.random.default_rng(3)
    for _ in range(50):
        vs = fuzz_sequence(rng, EUCLIDEAN, 15)
        r = sign_sequence(vs, EUCLIDEAN, with_trace=True)
        final = r.trace[-1].atoms
        best = min(math.hypot(*p) for p, _ in pi_set(final))
        assert r.partial_norms[-1] == pytest.approx(best, abs=1e-12)
        assert r.final_radius == pytest.approx(max(math.hypot(*p) for p, _ in pi_set(final)))


def test_trace_replays_exactly():
    rng = np.random.default_rng(4)
    for spec in plane_norms(seed=4):
        vs = fuzz_sequence(rng, spec, 12)
        r = sign_sequence(vs, spec, with_trace=True)
        assert len(r.trace) == len(vs)
        prev = None
        for i, step in enumerate(r.trace):
            base = prev if prev is not None else AdmissibleSet()
            assert insert(base, step.vector, i, spec) == step.atoms
            assert step.case in (1, 2)
            assert len(step.pattern) == len(base)
            prev = step.atoms


@pytest.mark.parametrize("spec", plane_norms(seed=5), ids=str)
def test_trapping_claim_prefix_sums_in_signed_sums(spec):
    rng = np.random.default_rng(6)
    for _ in range(40):
        n = int(rng.integers(1, 13))
        vs = fuzz_sequence(rng, spec, n)
        r = sign_sequence(vs, spec, with_trace=True)
        for k, s in enumerate(partial_sums(vs, r.signs)):
            members = [p for p, _ in pi_set(r.trace[k].atoms)]
            assert any(max(abs(a - b) for a, b in zip(s, p)) <= 1e-9 for p in members)


@pytest.mark.parametrize("spec", plane_norms(seed=9), ids=str)
def test_negating_inputs_preserves_partial_norms(spec):
    rng = np.random.default_rng(10)
    for _ in range(20):
        vs = fuzz_sequence(rng, spec, 40)
        a = sign_sequence(vs, spec)
        b = sign_sequence([tuple(-c for c in v) for v in vs], spec)
        assert b.partial_norms == pytest.approx(a.partial_norms, abs=1e-12)


@pytest.mark.parametrize("spec", plane_norms(seed=12), ids=str)
def test_bound_on_fuzzed_runs(spec):
    rng = np.random.default_rng(13)
    for _ in range(25):
        vs = fuzz_sequence(rng, spec, 200)
        r = sign_sequence(vs, spec)
        assert r.max_partial_norm <= certified_bound(spec, 2) + 1e-9
        assert not sign_result_problems(vs, r, spec)
        assert not r.warnings


def test_greedy_examples():
    r = greedy_sign([(1, 0), (1, 0)], EUCLIDEAN)
    assert r.signs == [1, -1] and r.max_partial_norm == 1
    assert r.certified_bound is None and r.algorithm == "greedy"
    r = greedy_sign([(0, 1)], EUCLIDEAN)
    assert r.signs == [1] and r.max_partial_norm == 1


def test_greedy_loses_to_adversary():
    seq = build_lower_bound_sequence(0.1)
    r = greedy_sign(seq.vectors, EUCLIDEAN)
    assert r.max_partial_norm >= SQRT3 - 0.1 - 1e-12
    r = sign_sequence(seq.vectors, EUCLIDEAN)
    assert SQRT3 - 0.1 - 1e-12 <= r.max_partial_norm <= SQRT3 * (1 + 1e-9)


def test_verify_sign_result_detects_tampering():
    vs = [(1, 0), (0, 1)]
    r = sign_sequence(vs, L1)
    assert verify_sign_result(vs, r, L1)
    flipped = SignResult([r.signs[0], -r.signs[1]], [1.0, 2.0], 2.0, r.certified_bound, "trapping")
    assert verify_sign_result(vs, flipped, L1)
    tampered = SignResult(r.signs, [1.0, 1.5], 1.5, r.certified_bound, "trapping")
    assert not verify_sign_result(vs, tampered, L1)
    problems = sign_result_problems(vs, tampered, L1)
    assert any("partial_norms[1]" in p for p in problems)
    over = SignResult(r.signs, r.partial_norms, r.max_partial_norm, 1.5, "trapping")
    assert any("exceeds" in p for p in sign_result_problems(vs, over, L1))
    assert not verify_sign_result(vs, SignResult([1], [1.0], 1.0, None, "greedy"), L1)


def test_high_dimension_reports_no_bound():
    vs = random_unit_ball_vectors(EUCLIDEAN, 50, np.random.default_rng(1), d=3)
    r = sign_sequence(vs, EUCLIDEAN)
    assert r.certified_bound is None
    assert r.final_radius is not None and r.final_radius >= r.partial_norms[-1]
    assert verify_sign_result(vs, r, EUCLIDEAN)
    with pytest.raises(EnumerationCapExceeded):
        # orthonormal basis vectors are admissible, so the set grows past the cap
        sign_sequence([tuple(1.0 if j == i else 0.0 for j in range(6)) for i in range(6)], EUCLIDEAN, cap=4)


def test_degeneracy_fallback_records_excess():
    # Real inputs only reach the fallback through rounding, so feed the core
    # step a stretched norm under which a third planar atom looks admissible.
    f = EUCLIDEAN.evaluator()
    atoms, _, _, _ = collapse((), (1.0, 0.0), 0, f, 1.0)
    atoms, case, _, _ = collapse(atoms, (0.0, 1.0), 1, f, 1.0)
    assert case == 1
    v = (-0.6, -0.6)
    stretched = lambda w: f(w) if w == v else 2.0 * f(w)  # noqa: E731
    atoms, case, pattern, warning = collapse(atoms, v, 2, stretched, 1.0)
    assert case == 2 and warning is not None and len(atoms) <= 2
    best = min(
        stretched((v[0] + e1, v[1] + e2))
        for e1 in (-1, 0, 1)
        for e2 in (-1, 0, 1)
        if (e1, e2) != (0, 0)
    )
    assert warning.excess == pytest.approx(best - 1.0)
    assert pattern == (1, 1)
