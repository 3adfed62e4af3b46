"""A Euclidean-plane sequence that defeats every signing strategy.

For ``delta > 0`` the sequence forces every sign pattern to have some prefix
sum of Euclidean norm at least ``sqrt(3) - delta``, so no method can promise
less than sqrt(3) in the plane.

Construction: start with ``(0, 1)`` and track ``x_k = -(v_1 + ... + v_k)``.
While ``|x_k| < sqrt(2)``, the next vector is the unit vector ``v`` with
``|x_k + v| = sqrt(3) - delta``; each such step pushes ``|x_k - v|`` up by
more than ``delta``.  Once ``|x| >= sqrt(2)``, a final unit vector
perpendicular to ``x`` is appended.  With the first sign fixed to -1, the
first +1 lands on a point of norm ``sqrt(3) - delta`` and the all -1 pattern
ends at norm ``sqrt(|x|^2 + 1) >= sqrt(3)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .norms import EUCLIDEAN, Vector, rotate
from .oracle import ORACLE_CAP, all_patterns_exceed

SQRT2 = math.sqrt(2.0)
SQRT3 = math.sqrt(3.0)


class AdversaryError(ValueError):
    pass


@dataclass(frozen=True)
class AdversaryConfig:
    delta: float

    def __post_init__(self) -> None:
        if not (self.delta > 0 and math.isfinite(self.delta)):
            raise AdversaryError(f"delta must be a positive number, got {self.delta!r}")


@dataclass
class AdversarySequence:
    vectors: list[Vector]
    delta: float
    trajectory: list[Vector] = field(default_factory=list)

    @property
    def threshold(self) -> float:
        return SQRT3 - self.delta

    @property
    def length_bound(self) -> float:
        return length_bound(self.delta)


def length_bound(delta: float) -> float:
    """Strict upper bound on the sequence length."""
    return 3 + (SQRT2 - 1) / delta


def choose_unit_vector(x: Vector, target: float) -> Vector:
    """Unit ``v`` with ``|x + v| = target``.

    Of the two solutions, returns ``x/|x|`` rotated counterclockwise by
    ``arccos((target^2 - |x|^2 - 1) / (2|x|))``.
    """
    r = math.hypot(*x)
    if r < 1 - 1e-12:
        raise AdversaryError(f"|x| = {r!r} < 1")
    c = (target * target - r * r - 1) / (2 * r)
    if abs(c) > 1 + 1e-12:
        raise AdversaryError(f"no unit vector v has |x + v| = {target!r} for |x| = {r!r}")
    theta = math.acos(max(-1.0, min(1.0, c)))
    return rotate((x[0] / r, x[1] / r), theta)


def build_lower_bound_sequence(config: AdversaryConfig | float) -> AdversarySequence:
    if not isinstance(config, AdversaryConfig):
        config = AdversaryConfig(float(config))
    delta = config.delta
    target = SQRT3 - delta
    if target <= SQRT2:
        vectors = [(1.0, 0.0), (0.0, 1.0)]
        return AdversarySequence(vectors, delta, _trajectory(vectors))

    vectors: list[Vector] = [(0.0, 1.0)]
    x = (0.0, -1.0)
    trajectory = [x]
    while math.hypot(*x) < SQRT2:
        v = choose_unit_vector(x, target)
        x = (x[0] - v[0], x[1] - v[1])
        vectors.append(v)
        trajectory.append(x)
    r = math.hypot(*x)
    vectors.append(rotate((x[0] / r, x[1] / r), math.pi / 2))
    trajectory.append(_trajectory(vectors)[-1])

    seq = AdversarySequence(vectors, delta, trajectory)
    problems = sequence_problems(seq)
    if problems:
        raise AdversaryError("construction invariant failed: " + "; ".join(problems))
    return seq


def _trajectory(vectors: list[Vector]) -> list[Vector]:
    x, out = (0.0, 0.0), []
    for v in vectors:
        x = (x[0] - v[0], x[1] - v[1])
        out.append(x)
    return out


def sequence_problems(seq: AdversarySequence, atol: float = 1e-9) -> list[str]:
    """Check the structural invariants of a constructed sequence."""
    problems = []
    vs, delta = seq.vectors, seq.delta
    n = len(vs)
    if not n < length_bound(delta):
        problems.append(f"length {n} is not below {length_bound(delta)!r}")
    for i, v in enumerate(vs):
        if math.hypot(*v) > 1 + 1e-12:
            problems.append(f"vector {i} has norm {math.hypot(*v)!r} > 1")
    for i in (0, n - 1):
        if n and abs(math.hypot(*vs[i]) - 1) > 1e-12:
            problems.append(f"vector {i} is not a unit vector")
    if SQRT3 - delta <= SQRT2:
        return problems

    xs = _trajectory(vs)
    if seq.trajectory and any(math.dist(a, b) > atol for a, b in zip(xs, seq.trajectory)):
        problems.append("trajectory does not match the vectors")
    # growth phase: v_2 .. v_{n-1}
    for k in range(1, n - 1):
        x, v = xs[k - 1], vs[k]
        r = math.hypot(*x)
        plus = math.hypot(x[0] + v[0], x[1] + v[1])
        minus_sq = (x[0] - v[0]) ** 2 + (x[1] - v[1]) ** 2
        if plus < SQRT3 - delta - atol:
            problems.append(f"step {k}: |x + v| = {plus!r} < sqrt(3) - delta")
        if not math.sqrt(minus_sq) > r + delta - atol:
            problems.append(f"step {k}: |x - v| did not grow by delta")
        if not minus_sq > r * r + 2 * SQRT2 * delta + delta * delta - atol:
            problems.append(f"step {k}: |x - v|^2 below |x|^2 + 2 sqrt(2) delta + delta^2")
    return problems


def verify_adversary(seq: AdversarySequence, cap: int = ORACLE_CAP) -> bool:
    """Structural invariants plus an exhaustive check that no pattern escapes."""
    if sequence_problems(seq):
        return False
    return all_patterns_exceed(seq.vectors, EUCLIDEAN, SQRT3 - seq.delta - 1e-9, cap)
