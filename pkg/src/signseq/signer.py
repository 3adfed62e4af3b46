"""Sign assignment with bounded prefix sums.

``sign_sequence`` consumes the vectors left to right, maintaining an
admissible set whose signed sums contain every reachable prefix sum.  The
state never looks ahead, but signs are only known after the last vector:
they are read back from the provenance of the final atoms.

In the plane every prefix sum is certified to have norm at most 2, and at most
sqrt(3) for the Euclidean norm (both times ``1 + tol``).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Sequence

from .admissible import (
    ADMISSIBLE_CAP,
    AdmissibleSet,
    DegeneracyWarning,
    EnumerationCapExceeded,
    InputTooLong,
    collapse,
)
from .norms import DEFAULT_TOL, DimensionMismatch, NormSpec, Vector, as_vector


@dataclass(frozen=True)
class TraceStep:
    vector: Vector
    case: int
    pattern: tuple[int, ...]
    atoms: AdmissibleSet


@dataclass
class SignResult:
    signs: list[int]
    partial_norms: list[float]
    max_partial_norm: float
    certified_bound: float | None
    algorithm: str
    warnings: list[DegeneracyWarning] = field(default_factory=list)
    final_radius: float | None = None
    trace: list[TraceStep] | None = None


def prepare_vectors(vectors: Sequence[Sequence[float]], spec: NormSpec) -> list[Vector]:
    out = [as_vector(v) for v in vectors]
    if out:
        d = len(out[0])
        for i, v in enumerate(out):
            if len(v) != d:
                raise DimensionMismatch(f"vector {i} has dimension {len(v)}, expected {d}")
        spec.check_dimension(d)
    return out


def partial_sums(vectors: Sequence[Vector], signs: Sequence[int]) -> list[Vector]:
    if not vectors:
        return []
    if len(vectors[0]) == 2:
        x = y = 0.0
        out = []
        for e, (a, b) in zip(signs, vectors):
            x += e * a
            y += e * b
            out.append((x, y))
        return out
    s = [0.0] * len(vectors[0])
    out = []
    for e, v in zip(signs, vectors):
        s = [a + e * b for a, b in zip(s, v)]
        out.append(tuple(s))
    return out


def certified_bound(spec: NormSpec, d: int, tol: float = DEFAULT_TOL, warnings=()) -> float | None:
    """Proven prefix-sum bound for ``sign_sequence`` (None outside the plane)."""
    if d != 2:
        return None
    base = math.sqrt(3.0) if spec.kind == "euclidean" else 2.0
    return base * (1 + tol) + sum(2 * w.excess for w in warnings)


def _finish(vectors, signs, spec, algorithm, bound, **extra) -> SignResult:
    f = spec.evaluator(len(vectors[0]) if vectors else None)
    norms = [f(p) for p in partial_sums(vectors, signs)]
    return SignResult(
        signs=list(signs),
        partial_norms=norms,
        max_partial_norm=max(norms, default=0.0),
        certified_bound=bound,
        algorithm=algorithm,
        **extra,
    )


def sign_sequence(
    vectors: Sequence[Sequence[float]],
    spec: NormSpec,
    tol: float = DEFAULT_TOL,
    with_trace: bool = False,
    cap: int = ADMISSIBLE_CAP,
) -> SignResult:
    """Sign ``vectors`` so that every prefix sum stays in the certified ball.

    Input positions are 0-based; atom provenance uses the same indices.  With
    ``with_trace`` the result carries one ``TraceStep`` per input holding the
    admissible set after that input.
    """
    vectors = prepare_vectors(vectors, spec)
    f = spec.evaluator(len(vectors[0]) if vectors else None)
    for i, v in enumerate(vectors):
        if f(v) > 1 + tol:
            raise InputTooLong(f"vector {i} = {v} has norm {f(v)!r} > 1 + tol")

    atoms: tuple = ()
    warnings: list[DegeneracyWarning] = []
    trace: list[TraceStep] | None = [] if with_trace else None
    limit = 1 + tol
    for i, v in enumerate(vectors):
        if len(atoms) > cap:
            raise EnumerationCapExceeded(f"admissible set grew to {len(atoms)} atoms, over the cap of {cap}")
        atoms, case, pattern, warning = collapse(atoms, v, i, f, limit)
        if warning is not None:
            warnings.append(warning)
        if trace is not None:
            trace.append(TraceStep(v, case, pattern, AdmissibleSet(atoms, i)))
    aset = AdmissibleSet(atoms, len(vectors) - 1 if vectors else None)

    # any signed sum of the final atoms is certified; take the shortest
    best_pattern, best_norm, final_radius = (), math.inf, 0.0
    for pattern, total in _signed_sums(aset):
        n = f(total)
        final_radius = max(final_radius, n)
        if n < best_norm:
            best_pattern, best_norm = pattern, n

    signs = [0] * len(vectors)
    for s, atom in zip(best_pattern, aset.atoms):
        for i, sign in atom.provenance:
            signs[i] = s * sign

    d = len(vectors[0]) if vectors else 0
    return _finish(
        vectors,
        signs,
        spec,
        "trapping",
        certified_bound(spec, d, tol, warnings),
        warnings=warnings,
        final_radius=final_radius,
        trace=trace,
    )


def _signed_sums(aset: AdmissibleSet):
    """(pattern, sum) over {+1,-1}^k in lexicographic order, +1 first."""
    if not aset.atoms:
        return
    d = len(aset.atoms[0].value)
    for pattern in itertools.product((1, -1), repeat=len(aset)):
        total = [0.0] * d
        for s, atom in zip(pattern, aset.atoms):
            total = [a + s * b for a, b in zip(total, atom.value)]
        yield pattern, total


def greedy_sign(vectors: Sequence[Sequence[float]], spec: NormSpec) -> SignResult:
    """Pick each sign to minimise the current prefix norm (ties go to +1).

    A baseline with no guarantee.
    """
    vectors = prepare_vectors(vectors, spec)
    f = spec.evaluator()
    signs = []
    s: list[float] = [0.0] * (len(vectors[0]) if vectors else 0)
    for v in vectors:
        plus = [a + b for a, b in zip(s, v)]
        minus = [a - b for a, b in zip(s, v)]
        if f(minus) < f(plus):
            signs.append(-1)
            s = minus
        else:
            signs.append(1)
            s = plus
    return _finish(vectors, signs, spec, "greedy", None)


def sign_result_problems(
    vectors: Sequence[Sequence[float]], result: SignResult, spec: NormSpec, atol: float = 1e-9
) -> list[str]:
    """Recompute everything from scratch and list the violated invariants."""
    problems = []
    vectors = prepare_vectors(vectors, spec)
    n = len(vectors)
    if len(result.signs) != n:
        return [f"{len(result.signs)} signs for {n} vectors"]
    if any(s not in (-1, 1) for s in result.signs):
        problems.append("signs must be -1 or +1")
        return problems
    if len(result.partial_norms) != n:
        problems.append(f"{len(result.partial_norms)} partial norms for {n} vectors")
        return problems
    f = spec.evaluator()
    fresh = [f(p) for p in partial_sums(vectors, result.signs)]
    for k, (got, want) in enumerate(zip(result.partial_norms, fresh)):
        if not abs(got - want) <= atol:
            problems.append(f"partial_norms[{k}] = {got!r}, recomputed {want!r}")
    if not abs(result.max_partial_norm - max(fresh, default=0.0)) <= atol:
        problems.append(f"max_partial_norm {result.max_partial_norm!r} != {max(fresh, default=0.0)!r}")
    if result.certified_bound is not None and max(fresh, default=0.0) > result.certified_bound + atol:
        problems.append(f"prefix norm {max(fresh)!r} exceeds certified bound {result.certified_bound!r}")
    return problems


def verify_sign_result(vectors: Sequence[Sequence[float]], result: SignResult, spec: NormSpec) -> bool:
    return not sign_result_problems(vectors, result, spec)
