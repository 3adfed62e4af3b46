"""Exhaustive search over sign patterns.

``brute_force_minmax`` returns the exact value of
``min over signs of max_k ||eps_1 v_1 + ... + eps_k v_k||`` for one fixed
sequence.  The first sign is fixed to +1: flipping every sign leaves every
prefix norm unchanged.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Sequence

from .norms import NormSpec
from .signer import partial_sums, prepare_vectors

ORACLE_CAP = 24


class OracleCapExceeded(ValueError):
    pass


@dataclass
class OracleResult:
    value: float
    witness_signs: list[int]
    nodes_explored: int


def _check(n: int, cap: int) -> None:
    if n > cap:
        raise OracleCapExceeded(f"{n} vectors exceed the oracle cap of {cap}; raise it with cap=/--cap")


def brute_force_minmax(vectors: Sequence[Sequence[float]], spec: NormSpec, cap: int = ORACLE_CAP) -> OracleResult:
    """Depth-first branch and bound over all sign patterns.

    A branch is cut as soon as its running maximum reaches the best complete
    value found so far, so the result is the exact optimum.  At each node the
    sign giving the shorter prefix is explored first.
    """
    vectors = prepare_vectors(vectors, spec)
    n = len(vectors)
    _check(n, cap)
    if n == 0:
        return OracleResult(0.0, [], 1)
    f = spec.evaluator()
    d = len(vectors[0])

    best = math.inf
    best_signs: list[int] = []
    signs = [0] * n
    nodes = 0

    def dfs(k: int, s: tuple, running: float) -> None:
        nonlocal best, best_signs, nodes
        nodes += 1
        if k == n:
            if running < best:
                best, best_signs = running, signs.copy()
            return
        v = vectors[k]
        options = []
        for e in ((1,) if k == 0 else (1, -1)):
            t = tuple(a + e * b for a, b in zip(s, v))
            options.append((max(running, f(t)), e, t))
        options.sort(key=lambda o: o[0])
        for m, e, t in options:
            if m >= best:
                continue
            signs[k] = e
            dfs(k + 1, t, m)

    dfs(0, (0.0,) * d, 0.0)
    return OracleResult(best, best_signs, nodes)


def plain_minmax(vectors: Sequence[Sequence[float]], spec: NormSpec, cap: int = 16) -> OracleResult:
    """Unpruned enumeration of all 2^(n-1) patterns; a reference for tests."""
    vectors = prepare_vectors(vectors, spec)
    n = len(vectors)
    _check(n, cap)
    if n == 0:
        return OracleResult(0.0, [], 1)
    f = spec.evaluator()
    best, witness, count = math.inf, [], 0
    for rest in itertools.product((1, -1), repeat=n - 1):
        signs = [1, *rest]
        count += 1
        value = max(f(p) for p in partial_sums(vectors, signs))
        if value < best:
            best, witness = value, signs
    return OracleResult(best, witness, count)


def all_patterns_exceed(
    vectors: Sequence[Sequence[float]], spec: NormSpec, threshold: float, cap: int = ORACLE_CAP
) -> bool:
    """True iff every sign pattern has a prefix sum of norm >= ``threshold``.

    Searches for an escaping pattern (all prefixes strictly below the
    threshold) and stops at the first one.
    """
    vectors = prepare_vectors(vectors, spec)
    n = len(vectors)
    _check(n, cap)
    if n == 0:
        return False
    f = spec.evaluator()

    def escapes(k: int, s: tuple) -> bool:
        if k == n:
            return True
        v = vectors[k]
        for e in ((1,) if k == 0 else (1, -1)):
            t = tuple(a + e * b for a, b in zip(s, v))
            if f(t) < threshold and escapes(k + 1, t):
                return True
        return False

    return not escapes(0, (0.0,) * len(vectors[0]))
