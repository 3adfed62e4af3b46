"""Explicit admissible sets in R^d whose sum has norm linear in d.

They show that the admissible-set construction, which is optimal in the plane,
cannot give a bound that grows slower than linearly with the dimension.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .admissible import is_admissible, min_combination_norm
from .norms import DEFAULT_TOL, EUCLIDEAN, LINF, NormSpec, Vector

VERIFY_CAP = 14


@dataclass
class HighDimFamily:
    dimension: int
    kind: str  # "max" or "euclidean"
    vectors: list[Vector]
    sum: Vector
    sum_norm: float

    @property
    def spec(self) -> NormSpec:
        return LINF if self.kind == "max" else EUCLIDEAN

    @property
    def rate(self) -> float:
        """The constant c in sum_norm >= c (d - 1)."""
        return 1.0 if self.kind == "max" else 0.2


def _family(d: int, kind: str, vectors: list[Vector]) -> HighDimFamily:
    total = tuple(math.fsum(v[j] for v in vectors) for j in range(d))
    spec = LINF if kind == "max" else EUCLIDEAN
    return HighDimFamily(d, kind, vectors, total, spec.evaluator()(total))


def _check_dim(d: int) -> None:
    if d < 2:
        raise ValueError(f"dimension must be at least 2, got {d}")


def maxnorm_family(d: int) -> HighDimFamily:
    """v_i has -1 in coordinate i and +1 elsewhere, for i = 1..d-1."""
    _check_dim(d)
    vectors = [tuple(-1.0 if j == i else 1.0 for j in range(d)) for i in range(d - 1)]
    return _family(d, "max", vectors)


def euclidean_family(d: int) -> HighDimFamily:
    """v_i = 0.2 e_1 + 0.8 e_{i+1}, for i = 1..d-1."""
    _check_dim(d)
    vectors = []
    for i in range(d - 1):
        v = [0.0] * d
        v[0] = 0.2
        v[i + 1] = 0.8
        vectors.append(tuple(v))
    return _family(d, "euclidean", vectors)


def euclidean_sum_norm(d: int) -> float:
    """Closed form: sqrt(0.04 (d-1)^2 + 0.64 (d-1))."""
    m = d - 1
    return math.sqrt(0.04 * m * m + 0.64 * m)


def family_radius_lower_bound(fam: HighDimFamily) -> float:
    """The all +1 signed sum lies in the family's signed-sum set."""
    return fam.sum_norm


def verify_family(fam: HighDimFamily, tol: float = DEFAULT_TOL, cap: int = VERIFY_CAP) -> bool | None:
    """Brute-force admissibility; None when d - 1 exceeds ``cap``."""
    if len(fam.vectors) > cap:
        return None
    return is_admissible(fam.vectors, fam.spec, tol, cap=cap)


def min_pair_norm(fam: HighDimFamily, cap: int = VERIFY_CAP) -> float:
    """Smallest norm over combinations with at least two nonzero coefficients."""
    return min_combination_norm(fam.vectors, fam.spec, 2, cap)
