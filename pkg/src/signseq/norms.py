"""Norms on R^d and unit-ball geometry.

Supported norms are the Euclidean, l1 and max norms in any dimension, and in
the plane the gauge (Minkowski functional) of an origin-symmetric convex
polygon.  Vectors are plain tuples of floats.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

Vector = tuple[float, ...]

KINDS = ("euclidean", "l1", "linf", "polygon")

DEFAULT_TOL = 1e-9
SYMMETRY_TOL = 1e-12


class NormError(ValueError):
    """Invalid norm description or incompatible input."""


class DimensionMismatch(NormError):
    pass


class PolygonError(NormError):
    pass


def as_vector(v: Sequence[float]) -> Vector:
    out = tuple(map(float, v))
    if not out:
        raise NormError("vector must have at least one coordinate")
    if not all(map(math.isfinite, out)):
        raise NormError(f"vector has non-finite coordinates: {out}")
    return out


@dataclass(frozen=True)
class PolygonGauge:
    """Unit ball {x : <a_f, x> <= 1 for every facet f}."""

    vertices: tuple[Vector, ...]
    facets: tuple[Vector, ...]
    angles: tuple[float, ...] = ()

    def __call__(self, v: Sequence[float]) -> float:
        # the facet whose cone contains v attains the maximum
        x, y = v
        i = bisect.bisect_right(self.angles, math.atan2(y, x)) - 1
        ax, ay = self.facets[i]
        return ax * x + ay * y

    def max_form(self, v: Sequence[float]) -> float:
        """max_f <a_f, v>, evaluated over every facet."""
        x, y = v
        return max(ax * x + ay * y for ax, ay in self.facets)


def _canonical_polygon(vertices: Sequence[Sequence[float]]) -> tuple[Vector, ...]:
    pts = []
    for p in vertices:
        p = as_vector(p)
        if len(p) != 2:
            raise PolygonError(f"polygon vertex {p} is not two-dimensional")
        pts.append(p)
    if len(pts) < 4:
        raise PolygonError("polygon needs at least 4 vertices (two antipodal pairs)")

    for i, p in enumerate(pts):
        for q in pts[i + 1:]:
            if math.dist(p, q) <= SYMMETRY_TOL:
                raise PolygonError(f"duplicate vertex {p}")
    for p in pts:
        if math.hypot(*p) <= SYMMETRY_TOL:
            raise PolygonError("origin is not strictly inside the polygon (vertex at 0)")
        if not any(math.dist(p, (-q[0], -q[1])) <= SYMMETRY_TOL for q in pts):
            raise PolygonError(f"polygon is not origin-symmetric: -{p} missing")

    pts.sort(key=lambda p: math.atan2(p[1], p[0]))
    for i in range(len(pts)):
        a, b = pts[i], pts[(i + 1) % len(pts)]
        if a[0] * b[1] - a[1] * b[0] <= 0:
            # consecutive vertices by angle must turn counterclockwise around 0
            raise PolygonError("origin is not strictly inside the polygon")

    # drop collinear points, reject reflex ones
    changed = True
    while changed:
        changed = False
        m = len(pts)
        for i in range(m):
            a, b, c = pts[i - 1], pts[i], pts[(i + 1) % m]
            cross = (b[0] - a[0]) * (c[1] - b[1]) - (b[1] - a[1]) * (c[0] - b[0])
            scale = math.dist(a, b) * math.dist(b, c)
            if cross < -1e-12 * scale:
                raise PolygonError(f"polygon is not convex at vertex {b}")
            if cross <= 1e-12 * scale:
                del pts[i]
                changed = True
                break
    if len(pts) < 4:
        raise PolygonError("polygon is degenerate after removing collinear vertices")
    return tuple(pts)


def build_gauge(vertices: Sequence[Sequence[float]]) -> PolygonGauge:
    """Validate a symmetric convex polygon and compute its facet functionals.

    Vertices are sorted counterclockwise and collinear ones are dropped.  For
    each edge (p, q) the functional a satisfies <a, p> = <a, q> = 1.
    """
    pts = _canonical_polygon(vertices)
    facets = []
    for i, p in enumerate(pts):
        q = pts[(i + 1) % len(pts)]
        nx, ny = q[1] - p[1], p[0] - q[0]
        c = nx * p[0] + ny * p[1]
        if c <= SYMMETRY_TOL:
            raise PolygonError("origin is not strictly inside the polygon")
        facets.append((nx / c, ny / c))
    return PolygonGauge(pts, tuple(facets), tuple(math.atan2(p[1], p[0]) for p in pts))


@dataclass(frozen=True)
class NormSpec:
    """A norm descriptor: ``euclidean``, ``l1``, ``linf`` or ``polygon``."""

    kind: str
    gauge: PolygonGauge | None = field(default=None, compare=False, repr=False)
    vertices: tuple[Vector, ...] = ()

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise NormError(f"unknown norm kind {self.kind!r}")
        if self.kind == "polygon":
            if self.gauge is None:
                object.__setattr__(self, "gauge", build_gauge(self.vertices))
            object.__setattr__(self, "vertices", self.gauge.vertices)

    @classmethod
    def polygon(cls, vertices: Sequence[Sequence[float]]) -> NormSpec:
        return cls("polygon", vertices=tuple(tuple(map(float, p)) for p in vertices))

    @property
    def dimension(self) -> int | None:
        return 2 if self.kind == "polygon" else None

    def __str__(self) -> str:
        if self.kind == "polygon":
            return f"polygon({len(self.vertices)} vertices)"
        return self.kind

    def evaluator(self, d: int | None = None) -> Callable[[Sequence[float]], float]:
        """Fast scalar evaluator with no validation, for inner loops.

        Passing ``d = 2`` selects unrolled planar versions of l1 and linf.
        """
        if self.kind == "euclidean":
            return lambda v: math.hypot(*v)
        if self.kind == "l1":
            if d == 2:
                return lambda v: abs(v[0]) + abs(v[1])
            return lambda v: sum(map(abs, v))
        if self.kind == "linf":
            if d == 2:
                return lambda v: max(abs(v[0]), abs(v[1]))
            return lambda v: max(map(abs, v))
        angles, facets = self.gauge.angles, self.gauge.facets
        atan2, locate = math.atan2, bisect.bisect_right

        def gauge(v):
            x, y = v
            ax, ay = facets[locate(angles, atan2(y, x)) - 1]
            return ax * x + ay * y

        return gauge

    def __call__(self, v: Sequence[float]) -> float:
        return norm(v, self)

    def many(self, X: np.ndarray) -> np.ndarray:
        """Row-wise norms of an (m, d) array."""
        X = np.asarray(X, dtype=float)
        if self.kind == "euclidean":
            return np.sqrt(np.einsum("ij,ij->i", X, X))
        if self.kind == "l1":
            return np.abs(X).sum(axis=1)
        if self.kind == "linf":
            return np.abs(X).max(axis=1)
        if X.shape[1] != 2:
            raise DimensionMismatch("polygon norms are two-dimensional")
        return (X @ np.asarray(self.gauge.facets).T).max(axis=1)

    def check_dimension(self, d: int) -> None:
        if self.dimension is not None and d != self.dimension:
            raise DimensionMismatch(f"{self} needs {self.dimension}-dimensional vectors, got d={d}")


EUCLIDEAN = NormSpec("euclidean")
L1 = NormSpec("l1")
LINF = NormSpec("linf")


def norm(v: Sequence[float], spec: NormSpec) -> float:
    v = as_vector(v)
    spec.check_dimension(len(v))
    return spec.evaluator()(v)


def parse_norm(text: str) -> NormSpec:
    """Parse ``euclidean``, ``l1``, ``linf``/``max`` or ``polygon:<path>``."""
    if text.startswith("polygon:"):
        from .vectorfile import read_polygon_file

        return NormSpec.polygon(read_polygon_file(text[len("polygon:"):]))
    aliases = {"euclidean": EUCLIDEAN, "l2": EUCLIDEAN, "l1": L1, "linf": LINF, "max": LINF}
    try:
        return aliases[text]
    except KeyError:
        raise NormError(f"unknown norm {text!r}; use euclidean, l1, linf or polygon:<file>") from None


def rotate(v: Sequence[float], angle: float) -> Vector:
    """Rotate a plane vector counterclockwise by ``angle`` radians."""
    if len(v) != 2:
        raise DimensionMismatch("rotate needs a two-dimensional vector")
    c, s = math.cos(angle), math.sin(angle)
    x, y = v
    return (c * x - s * y, s * x + c * y)


def random_unit_ball_vectors(spec: NormSpec, n: int, rng: np.random.Generator, d: int = 2) -> list[Vector]:
    """``n`` random points of the unit ball of ``spec``.

    The direction is uniform on the Euclidean sphere and the radius is
    ``U**(1/d)`` in the norm's own scale, so the Euclidean case is uniform in
    the ball.
    """
    spec.check_dimension(d)
    U = rng.standard_normal((n, d))
    r = spec.many(U)
    while n and r.min() <= 1e-12:
        bad = r <= 1e-12
        U[bad] = rng.standard_normal((int(bad.sum()), d))
        r = spec.many(U)
    X = U * (rng.random(n) ** (1.0 / d) / r)[:, None] if n else U
    f = spec.evaluator()
    out = []
    for row in X.tolist():
        v = tuple(row)
        m = f(v)
        # rounding can push the norm a hair past 1
        out.append(tuple(c / m for c in v) if m > 1.0 else v)
    return out


def random_unit_ball_vector(spec: NormSpec, rng: np.random.Generator, d: int = 2) -> Vector:
    return random_unit_ball_vectors(spec, 1, rng, d)[0]


def random_symmetric_polygon(n_vertices: int, rng: np.random.Generator) -> NormSpec:
    """A random polygon norm with ``n_vertices`` vertices (even, >= 4).

    Vertices are antipodal pairs on a random ellipse, so they are in strictly
    convex position.
    """
    if n_vertices < 4 or n_vertices % 2:
        raise PolygonError("n_vertices must be even and at least 4")
    half = n_vertices // 2
    while True:
        angles = np.sort(rng.uniform(0.0, math.pi, half))
        gaps = np.diff(np.concatenate([angles, [angles[0] + math.pi]]))
        if gaps.min() > 0.05:
            break
    A = rng.normal(size=(2, 2))
    while abs(np.linalg.det(A)) < 0.2:
        A = rng.normal(size=(2, 2))
    circle = np.stack([np.cos(angles), np.sin(angles)], axis=1)
    pts = circle @ A.T
    verts = [tuple(map(float, p)) for p in pts] + [tuple(map(float, -p)) for p in pts]
    return NormSpec.polygon(verts)
