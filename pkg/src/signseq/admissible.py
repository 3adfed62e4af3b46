"""Admissible sets and the insertion step of the trapping-family construction.

A finite set of unit-ball vectors is *admissible* when every combination with
coefficients in {-1, 0, 1} and at least two nonzero coefficients has norm
greater than 1.  The signed sums of an admissible set form a trapping set:
inserting a new vector either extends the set (when the result stays
admissible) or collapses the new vector together with some atoms into a single
atom, and the new signed sums are always reachable from the old ones by adding
or subtracting the new vector.

Each atom remembers which input positions it aggregates, with signs, so the
final sign sequence can be read back from the atoms.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .norms import DEFAULT_TOL, DimensionMismatch, NormSpec, Vector, as_vector

ADMISSIBLE_CAP = 16
PI_CAP = 20
_BLOCK = 10


class EnumerationCapExceeded(ValueError):
    pass


class InputTooLong(ValueError):
    """A vector lies outside the unit ball beyond the tolerance."""


Provenance = tuple[tuple[int, int], ...]


class Atom:
    """A unit-ball vector and the signed input positions it aggregates.

    ``provenance`` is a sorted tuple of ``(index, sign)``.  Atoms produced by
    a collapse keep references to their parts and flatten the provenance on
    first access, which keeps insertion O(1) in the sequence length.
    """

    __slots__ = ("value", "_prov", "_index", "_parts")

    def __init__(self, value: Sequence[float], provenance: Provenance | None = None, *, index=None, parts=()):
        self.value: Vector = tuple(value)
        self._prov = tuple(sorted(provenance)) if provenance is not None else None
        self._index = index
        self._parts = parts

    @property
    def provenance(self) -> Provenance:
        if self._prov is None:
            out = [(self._index, 1)]
            stack = [(e, a) for e, a in self._parts]
            while stack:
                e, a = stack.pop()
                if a._prov is not None:
                    out.extend((i, s * e) for i, s in a._prov)
                else:
                    out.append((a._index, e))
                    stack.extend((e * f, b) for f, b in a._parts)
            out.sort()
            self._prov = tuple(out)
            self._parts = ()
        return self._prov

    def __eq__(self, other) -> bool:
        if not isinstance(other, Atom):
            return NotImplemented
        return self.value == other.value and self.provenance == other.provenance

    def __hash__(self) -> int:
        return hash((self.value, self.provenance))

    def __repr__(self) -> str:
        return f"Atom(value={self.value!r}, provenance={self.provenance!r})"

    def flipped(self, sign: int) -> Atom:
        if sign == 1:
            return self
        return Atom(tuple(-c for c in self.value), tuple((i, -s) for i, s in self.provenance))


@dataclass(frozen=True)
class DegeneracyWarning:
    """Recorded when rounding lets a third atom look admissible in the plane."""

    index: int
    excess: float

    def as_dict(self) -> dict:
        return {"index": self.index, "excess": self.excess}


@dataclass(frozen=True)
class AdmissibleSet:
    atoms: tuple[Atom, ...] = ()
    last_index: int | None = field(default=None, compare=False)

    def __len__(self) -> int:
        return len(self.atoms)

    @property
    def values(self) -> list[Vector]:
        return [a.value for a in self.atoms]

    def indices(self) -> set[int]:
        return {i for a in self.atoms for i, _ in a.provenance}


@dataclass(frozen=True)
class InsertStep:
    """Outcome of one insertion: the new set and how it was obtained."""

    result: AdmissibleSet
    case: int
    pattern: tuple[int, ...]
    warning: DegeneracyWarning | None = field(default=None)


def _check_cap(k: int, cap: int, what: str) -> None:
    if k > cap:
        raise EnumerationCapExceeded(f"{what} over {k} vectors exceeds the cap of {cap}")


def ternary_patterns(k: int) -> np.ndarray:
    """All of {-1, 0, 1}^k in lexicographic order, shape (3**k, k)."""
    if k == 0:
        return np.zeros((1, 0), dtype=np.int8)
    grids = np.meshgrid(*([np.array([-1, 0, 1], dtype=np.int8)] * k), indexing="ij")
    return np.stack(grids, axis=-1).reshape(-1, k)


def min_combination_norm(
    vectors: Sequence[Sequence[float]],
    spec: NormSpec,
    min_nonzero: int = 2,
    cap: int = ADMISSIBLE_CAP,
    stop_below: float | None = None,
) -> float:
    """Smallest norm of a {-1,0,1}-combination with >= ``min_nonzero`` nonzeros.

    Returns inf when no such pattern exists.  With ``stop_below`` the search
    returns as soon as a value <= ``stop_below`` is found.
    """
    k = len(vectors)
    _check_cap(k, cap, "admissibility check")
    if k < max(min_nonzero, 1):
        return float("inf")
    V = np.asarray(vectors, dtype=float)
    spec.check_dimension(V.shape[1])
    inner = min(k, _BLOCK)
    tail = ternary_patterns(inner)
    tail_sums = tail.astype(float) @ V[k - inner:]
    tail_nnz = np.count_nonzero(tail, axis=1)
    best = float("inf")
    for head in itertools.product((-1, 0, 1), repeat=k - inner):
        head_nnz = sum(1 for e in head if e)
        mask = tail_nnz + head_nnz >= min_nonzero
        if not mask.any():
            continue
        offset = np.asarray(head, dtype=float) @ V[: k - inner] if head else 0.0
        m = float(spec.many(tail_sums[mask] + offset).min())
        best = min(best, m)
        if stop_below is not None and best <= stop_below:
            break
    return best


def is_admissible(
    vectors: Sequence[Sequence[float]],
    spec: NormSpec,
    tol: float = DEFAULT_TOL,
    cap: int = ADMISSIBLE_CAP,
) -> bool:
    """Every combination with at least two nonzero coefficients has norm > 1 + tol."""
    f = spec.evaluator()
    for v in vectors:
        if f(as_vector(v)) > 1 + tol:
            raise InputTooLong(f"{tuple(v)} has norm {f(v)!r} > 1 + tol")
    if len(vectors) <= 1:
        _check_cap(len(vectors), cap, "admissibility check")
        return True
    return min_combination_norm(vectors, spec, 2, cap, stop_below=1 + tol) > 1 + tol


def pi_set(aset: AdmissibleSet | Sequence[Sequence[float]], cap: int = PI_CAP) -> list[tuple[Vector, tuple[int, ...]]]:
    """All signed sums of the atoms, each with its sign pattern.

    The empty set yields the single point 0 (with the empty pattern); its
    dimension is unknown, so that point is returned as ``()``.
    """
    values = aset.values if isinstance(aset, AdmissibleSet) else [as_vector(v) for v in aset]
    k = len(values)
    _check_cap(k, cap, "signed-sum enumeration")
    if k == 0:
        return [((), ())]
    d = len(values[0])
    out = []
    for pattern in itertools.product((1, -1), repeat=k):
        point = tuple(sum(s * v[j] for s, v in zip(pattern, values)) for j in range(d))
        out.append((point, pattern))
    return out


def radius(aset: AdmissibleSet, spec: NormSpec, cap: int = PI_CAP) -> float:
    """Largest norm over the signed sums of the atoms."""
    if len(aset) == 0:
        return 0.0
    f = spec.evaluator()
    return max(f(p) for p, _ in pi_set(aset, cap))


def _merge(index: int, atoms: tuple[Atom, ...], pattern, combined: Vector) -> Atom:
    parts = tuple((e, a) for e, a in zip(pattern, atoms) if e)
    return Atom(combined, index=index, parts=parts)


_RANKED: dict[int, list[tuple[int, tuple[int, ...], int]]] = {}


def _ranked_patterns(k: int) -> list[tuple[int, tuple[int, ...], int]]:
    """(lex position, pattern, nonzero count) over {-1,0,1}^k.

    Sorted by decreasing nonzero count, then lexicographically, so the first
    feasible pattern is the one the collapse rule selects.
    """
    if k not in _RANKED:
        pats = list(itertools.product((-1, 0, 1), repeat=k))
        ranked = [(i, p, k - p.count(0)) for i, p in enumerate(pats)]
        ranked.sort(key=lambda t: (-t[2], t[1]))
        _RANKED[k] = ranked
    return _RANKED[k]


# (pattern, nonzero count, e1, e2) in ranked order for k <= 2 planar atoms
_PLANAR = [[(p, c, (p + (0, 0))[0], (p + (0, 0))[1]) for _, p, c in _ranked_patterns(k)] for k in range(3)]


def _offsets(atoms: tuple[Atom, ...], d: int) -> list[tuple[float, ...]]:
    """sum e_i a_i for every e in {-1,0,1}^k, lexicographic order."""
    if d == 2:
        combos2 = [(0.0, 0.0)]
        for atom in atoms:
            ax, ay = atom.value
            combos2 = [t for ox, oy in combos2 for t in ((ox - ax, oy - ay), (ox, oy), (ox + ax, oy + ay))]
        return combos2
    combos = [(0.0,) * d]
    for atom in atoms:
        a = atom.value
        combos = [
            t
            for off in combos
            for t in (tuple(x - y for x, y in zip(off, a)), off, tuple(x + y for x, y in zip(off, a)))
        ]
    return combos


def collapse(atoms: tuple[Atom, ...], v: Vector, index: int, f, limit: float):
    """Core insertion step without validation.

    Returns ``(atoms, case, pattern, warning)``; ``f`` is a norm evaluator and
    ``limit`` is ``1 + tol``.
    """
    k = len(atoms)
    offsets = None
    if len(v) == 2 and k <= 2:
        # the usual planar case: evaluate candidates inline, no offset table
        vx, vy = v
        ax, ay = atoms[0].value if k else (0.0, 0.0)
        bx, by = atoms[1].value if k == 2 else (0.0, 0.0)
        for pattern, nnz, e1, e2 in _PLANAR[k]:
            w = (vx + e1 * ax + e2 * bx, vy + e1 * ay + e2 * by)
            if f(w) <= limit:
                break
    elif len(v) == 2:
        offsets = _offsets(atoms, 2)
        vx, vy = v
        for pos, pattern, nnz in _ranked_patterns(k):
            ox, oy = offsets[pos]
            w = (vx + ox, vy + oy)
            if f(w) <= limit:
                break
    else:
        offsets = _offsets(atoms, len(v))
        for pos, pattern, nnz in _ranked_patterns(k):
            w = tuple(a + b for a, b in zip(v, offsets[pos]))
            if f(w) <= limit:
                break

    warning = None
    if nnz == 0:
        if len(v) != 2 or k < 2:
            return atoms + (Atom(v, index=index),), 1, pattern, None
        # a third admissible atom in the plane can only come from rounding:
        # collapse along the shortest combination and record the excess
        if offsets is None:
            offsets = _offsets(atoms, 2)
        candidates = []
        for pos, p, c in _ranked_patterns(k):
            if c:
                u = tuple(a + b for a, b in zip(v, offsets[pos]))
                candidates.append((f(u), p, u))
        n, pattern, w = min(candidates, key=lambda t: t[0])
        warning = DegeneracyWarning(index, n - 1.0)

    kept = tuple(a for e, a in zip(pattern, atoms) if not e)
    return kept + (_merge(index, atoms, pattern, w),), 2, pattern, warning


def insert_step(
    aset: AdmissibleSet,
    v: Sequence[float],
    index: int,
    spec: NormSpec,
    tol: float = DEFAULT_TOL,
    cap: int = ADMISSIBLE_CAP,
) -> InsertStep:
    """Insert ``v`` (input position ``index``) into an admissible set.

    Case 1: the atoms together with ``v`` are admissible, so ``v`` becomes a
    new atom.  Case 2: among the patterns e in {-1,0,1}^k with
    ``||v + sum e_i a_i|| <= 1 + tol`` pick one with the most nonzero entries
    (ties broken lexicographically, -1 < 0 < 1) and replace ``v`` and the
    atoms it uses by their combination.
    """
    f = spec.evaluator()
    v = as_vector(v)
    if aset.atoms and len(v) != len(aset.atoms[0].value):
        raise DimensionMismatch(f"vector has dimension {len(v)}, atoms have {len(aset.atoms[0].value)}")
    spec.check_dimension(len(v))
    nv = f(v)
    if nv > 1 + tol:
        raise InputTooLong(f"vector at position {index} has norm {nv!r} > 1 + tol")
    _check_cap(len(aset), cap, "insertion")
    if aset.last_index is not None and index <= aset.last_index:
        raise ValueError(f"index {index} was already consumed")
    atoms, case, pattern, warning = collapse(aset.atoms, v, index, f, 1 + tol)
    return InsertStep(AdmissibleSet(atoms, index), case, pattern, warning)


def insert(
    aset: AdmissibleSet,
    v: Sequence[float],
    index: int,
    spec: NormSpec,
    tol: float = DEFAULT_TOL,
    cap: int = ADMISSIBLE_CAP,
) -> AdmissibleSet:
    return insert_step(aset, v, index, spec, tol, cap).result
