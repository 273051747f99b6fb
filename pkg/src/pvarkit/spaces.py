"""Vectors in concrete normed coordinate spaces.

Two families cover everything the toolkit needs:

* dense vectors in R^d with a fixed dimension, and
* finitely supported sequences, indexed by positive integers with almost
  all coordinates zero (the sequence-space setting: only the support is
  stored, never an explicit zero).

Every vector carries a :class:`VectorSpace` descriptor (family, dimension
for the dense case, and the coordinate norm).  Vectors combine only with
vectors of an identical descriptor; anything else raises
:class:`~pvarkit.errors.SpaceMismatch`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import SpaceMismatch

__all__ = [
    "NormKind",
    "L1",
    "L2",
    "LINF",
    "LP",
    "VectorSpace",
    "Vector",
    "norm",
    "diff_norm",
    "coordinate_matrix",
    "row_norms",
]

_NORM_TAGS = ("l1", "l2", "linf", "lp")


@dataclass(frozen=True)
class NormKind:
    """Which norm the coordinates carry: l1, l2, linf, or a general lp.

    The ``r`` field is meaningful only for the ``lp`` tag and must satisfy
    r >= 1 (anything smaller fails the triangle inequality and is not a
    norm).
    """

    tag: str
    r: float | None = None

    def __post_init__(self):
        if self.tag not in _NORM_TAGS:
            raise ValueError("unknown norm tag %r" % (self.tag,))
        if self.tag == "lp":
            if self.r is None or not float(self.r) >= 1.0:
                raise ValueError("lp norm requires a real exponent r >= 1")
            object.__setattr__(self, "r", float(self.r))
        elif self.r is not None:
            raise ValueError("norm %r takes no exponent" % (self.tag,))

    def to_json(self):
        if self.tag == "lp":
            return {"lp": self.r}
        return self.tag

    @classmethod
    def from_json(cls, obj) -> "NormKind":
        if isinstance(obj, str):
            if obj not in ("l1", "l2", "linf"):
                raise ValueError("unknown norm %r" % (obj,))
            return cls(obj)
        if isinstance(obj, Mapping) and set(obj) == {"lp"}:
            return cls("lp", float(obj["lp"]))
        raise ValueError("norm must be 'l1', 'l2', 'linf' or {'lp': r}")


L1 = NormKind("l1")
L2 = NormKind("l2")
LINF = NormKind("linf")


def LP(r: float) -> NormKind:
    """The l^r norm on coordinates, r >= 1."""
    return NormKind("lp", float(r))


def _reduce_abs(a: np.ndarray, kind: NormKind, axis=None) -> np.ndarray:
    # `a` holds absolute values already; empty reductions must give 0.0.
    if kind.tag == "l1":
        return a.sum(axis=axis)
    if kind.tag == "l2":
        return np.sqrt((a * a).sum(axis=axis))
    if kind.tag == "linf":
        return a.max(axis=axis, initial=0.0)
    return (a ** kind.r).sum(axis=axis) ** (1.0 / kind.r)


@dataclass(frozen=True)
class VectorSpace:
    """Descriptor of a coordinate space: family, norm, and dense dimension."""

    kind: str  # "dense" | "sparse"
    norm: NormKind
    dim: int | None = None

    def __post_init__(self):
        if self.kind == "dense":
            if not isinstance(self.dim, int) or self.dim < 1:
                raise ValueError("dense spaces need an integer dimension >= 1")
        elif self.kind == "sparse":
            if self.dim is not None:
                raise ValueError("sparse spaces carry no dimension")
        else:
            raise ValueError("space kind must be 'dense' or 'sparse'")

    def zero(self) -> "Vector":
        """The zero vector of this space."""
        if self.kind == "dense":
            return Vector(self, np.zeros(self.dim))
        return Vector(self, {})

    def to_json(self):
        out = {"kind": self.kind, "norm": self.norm.to_json()}
        if self.kind == "dense":
            out["dim"] = self.dim
        return out

    @classmethod
    def from_json(cls, obj) -> "VectorSpace":
        if not isinstance(obj, Mapping) or "kind" not in obj or "norm" not in obj:
            raise ValueError("space must be an object with 'kind' and 'norm'")
        kind = obj["kind"]
        norm_kind = NormKind.from_json(obj["norm"])
        if kind == "dense":
            if "dim" not in obj:
                raise ValueError("dense space needs 'dim'")
            return cls("dense", norm_kind, int(obj["dim"]))
        if kind == "sparse":
            if "dim" in obj:
                raise ValueError("sparse space carries no 'dim'")
            return cls("sparse", norm_kind)
        raise ValueError("space kind must be 'dense' or 'sparse'")


class Vector:
    """An immutable point of a :class:`VectorSpace`.

    Build instances through :meth:`Vector.dense`, :meth:`Vector.sparse`, or
    :meth:`VectorSpace.zero`; the raw constructor trusts its arguments.
    Dense data is a read-only float array of the space's dimension; sparse
    data is a dict from positive integer index to a nonzero coordinate.
    """

    __slots__ = ("space", "data")

    def __init__(self, space: VectorSpace, data):
        object.__setattr__(self, "space", space)
        object.__setattr__(self, "data", data)
        if space.kind == "dense":
            data.flags.writeable = False

    def __setattr__(self, name, value):
        raise AttributeError("Vector is immutable")

    @classmethod
    def dense(cls, coords: Sequence[float], norm: NormKind = L2) -> "Vector":
        arr = np.array(coords, dtype=float)
        if arr.ndim != 1 or arr.size < 1:
            raise ValueError("dense vector needs a 1-d coordinate list")
        if not np.all(np.isfinite(arr)):
            raise ValueError("coordinates must be finite")
        return cls(VectorSpace("dense", norm, arr.size), arr)

    @classmethod
    def sparse(cls, entries: Mapping[int, float], norm: NormKind = L2) -> "Vector":
        clean = {}
        for idx, coord in entries.items():
            if not isinstance(idx, int) or isinstance(idx, bool) or idx < 1:
                raise ValueError("sparse indices are integers >= 1, got %r" % (idx,))
            c = float(coord)
            if not np.isfinite(c):
                raise ValueError("coordinates must be finite")
            if c != 0.0:  # never store an explicit zero
                clean[idx] = c
        return cls(VectorSpace("sparse", norm), clean)

    @property
    def support(self) -> tuple[int, ...]:
        """Sorted indices of nonzero coordinates (sparse vectors only)."""
        if self.space.kind != "sparse":
            raise SpaceMismatch("support is defined for sparse vectors only")
        return tuple(sorted(self.data))

    def is_zero(self) -> bool:
        if self.space.kind == "dense":
            return bool(np.all(self.data == 0.0))
        return not self.data

    def _combine(self, other: "Vector", sign: float) -> "Vector":
        _same_space(self, other)
        if self.space.kind == "dense":
            return Vector(self.space, self.data + sign * other.data)
        merged = dict(self.data)
        for idx, c in other.data.items():
            val = merged.get(idx, 0.0) + sign * c
            if val == 0.0:
                merged.pop(idx, None)
            else:
                merged[idx] = val
        return Vector(self.space, merged)

    def __add__(self, other):
        if not isinstance(other, Vector):
            return NotImplemented
        return self._combine(other, 1.0)

    def __sub__(self, other):
        if not isinstance(other, Vector):
            return NotImplemented
        return self._combine(other, -1.0)

    def __mul__(self, scalar):
        try:
            c = float(scalar)
        except (TypeError, ValueError):
            return NotImplemented
        if self.space.kind == "dense":
            return Vector(self.space, c * self.data)
        scaled = {i: c * v for i, v in self.data.items() if c * v != 0.0}
        return Vector(self.space, scaled)

    __rmul__ = __mul__

    def __neg__(self):
        return self * -1.0

    def __eq__(self, other):
        if not isinstance(other, Vector):
            return NotImplemented
        if self.space != other.space:
            return False
        if self.space.kind == "dense":
            return bool(np.array_equal(self.data, other.data))
        return self.data == other.data

    __hash__ = None

    def __repr__(self):
        if self.space.kind == "dense":
            return "Vector.dense(%s, %r)" % (list(self.data), self.space.norm.tag)
        return "Vector.sparse(%s, %r)" % (dict(sorted(self.data.items())), self.space.norm.tag)

    def to_json(self):
        if self.space.kind == "dense":
            return {"dense": [float(c) for c in self.data]}
        return {"sparse": {str(i): float(c) for i, c in sorted(self.data.items())}}

    @classmethod
    def from_json(cls, space: VectorSpace, obj) -> "Vector":
        if not isinstance(obj, Mapping) or len(obj) != 1:
            raise ValueError("vector must be {'dense': [...]} or {'sparse': {...}}")
        if "dense" in obj:
            if space.kind != "dense":
                raise ValueError("dense vector in a sparse space")
            coords = obj["dense"]
            if len(coords) != space.dim:
                raise ValueError(
                    "dense vector has %d coordinates, space has dim %d"
                    % (len(coords), space.dim)
                )
            return cls.dense(coords, space.norm)
        if "sparse" in obj:
            if space.kind != "sparse":
                raise ValueError("sparse vector in a dense space")
            entries = {}
            for key, coord in obj["sparse"].items():
                idx = int(key)
                if str(idx) != key or idx < 1:
                    raise ValueError("sparse index keys are positive integers, got %r" % (key,))
                entries[idx] = float(coord)
            return cls.sparse(entries, space.norm)
        raise ValueError("vector must be {'dense': [...]} or {'sparse': {...}}")


def _same_space(u: Vector, w: Vector) -> None:
    if u.space != w.space:
        raise SpaceMismatch(
            "vectors live in different spaces: %s vs %s"
            % (u.space.to_json(), w.space.to_json())
        )


def norm(v: Vector) -> float:
    """The coordinate norm of ``v`` in its own space.

    Exactly 0.0 if and only if ``v`` is the zero vector.
    """
    kind = v.space.norm
    if v.space.kind == "dense":
        return float(_reduce_abs(np.abs(v.data), kind))
    vals = np.abs(np.fromiter(v.data.values(), dtype=float, count=len(v.data)))
    return float(_reduce_abs(vals, kind))


def diff_norm(u: Vector, w: Vector) -> float:
    """``norm(u - w)`` after checking both vectors share one space."""
    return norm(u - w)


def coordinate_matrix(vectors: Sequence[Vector]) -> np.ndarray:
    """Stack same-space vectors into a (len, d) float matrix.

    Sparse vectors are embedded into the sorted union of their supports, so
    the column count is the union's size (possibly zero).  Distances taken
    row-wise in this matrix agree with :func:`diff_norm` on the originals.
    """
    if not vectors:
        return np.zeros((0, 0))
    space = vectors[0].space
    for v in vectors[1:]:
        _same_space(vectors[0], v)
    if space.kind == "dense":
        return np.stack([v.data for v in vectors])
    support = sorted(set().union(*(v.data.keys() for v in vectors)))
    col = {idx: j for j, idx in enumerate(support)}
    out = np.zeros((len(vectors), len(support)))
    for i, v in enumerate(vectors):
        for idx, c in v.data.items():
            out[i, col[idx]] = c
    return out


def row_norms(a: np.ndarray, kind: NormKind) -> np.ndarray:
    """Norm of each row of a 2-d array, under the given coordinate norm."""
    return _reduce_abs(np.abs(a), kind, axis=1)
