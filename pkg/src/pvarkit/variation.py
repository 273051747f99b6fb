"""p-variation of discrete paths.

``pvar`` maximises the sum of p-th powers of increment norms over
subsequences of the sample indices with an O(n^2) dynamic program;
``pvar_bruteforce`` enumerates every subsequence literally and exists as an
independent oracle for the engine, guarded to small paths.  The two must
agree to floating precision and tests hold them to that.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from .errors import InvalidExponent, TooLarge
from .paths import DiscretePath
from .spaces import diff_norm, norm as vector_norm, row_norms

__all__ = [
    "PVarResult",
    "pvar",
    "pvar_bruteforce",
    "pvar_restricted",
    "partition_sum",
    "bv_norm",
    "sup_norm",
    "BRUTEFORCE_LIMIT",
]

BRUTEFORCE_LIMIT = 20  # increments, i.e. 2^(n-1) candidate subsequences


@dataclass
class PVarResult:
    """Value of a p-variation maximisation plus an optimising partition.

    ``partition`` lists sample indices, starts at 0, ends at the last
    index, and realises ``value`` as its sum of p-th increment powers.
    """

    p: float
    value: float
    partition: list[int]

    def to_json(self) -> dict:
        return {"p": self.p, "value": self.value, "partition": list(self.partition)}

    @classmethod
    def from_json(cls, obj) -> "PVarResult":
        return cls(float(obj["p"]), float(obj["value"]), [int(i) for i in obj["partition"]])


def _check_exponent(p: float) -> float:
    try:
        p = float(p)
    except (TypeError, ValueError):
        raise InvalidExponent("exponent p must be a real number") from None
    if not np.isfinite(p) or p < 1.0:
        raise InvalidExponent("exponent p must satisfy p >= 1, got %r" % (p,))
    return p


def pvar(path: DiscretePath, p: float) -> PVarResult:
    """Exact p-variation of ``path`` by dynamic programming.

    Runs the O(n^2) recurrence V[i] = max_{j<i} V[j] + d(j, i)^p with
    V[0] = 0 and backtracks one optimising partition.  Ties are broken
    toward the smallest predecessor index, so the output is deterministic.
    """
    p = _check_exponent(p)
    mat = path.coordinate_matrix()
    kind = path.space.norm
    s = mat.shape[0]
    best = np.zeros(s)
    pred = np.zeros(s, dtype=np.int64)
    for i in range(1, s):
        cand = best[:i] + row_norms(mat[:i] - mat[i], kind) ** p
        j = int(np.argmax(cand))  # first maximum = smallest predecessor
        best[i] = cand[j]
        pred[i] = j
    partition = [s - 1]
    while partition[-1] != 0:
        partition.append(int(pred[partition[-1]]))
    partition.reverse()
    return PVarResult(p=p, value=float(best[-1]), partition=partition)


def _pairwise_powers(path: DiscretePath, p: float) -> np.ndarray:
    mat = path.coordinate_matrix()
    diff = mat[:, None, :] - mat[None, :, :]
    flat = row_norms(diff.reshape(-1, mat.shape[1]), path.space.norm)
    return flat.reshape(mat.shape[0], mat.shape[0]) ** p


@lru_cache(maxsize=8)
def _subset_tables(size: int):
    """Flattened consecutive-pair tables for every subsequence of 0..size-1.

    Subsequences always contain both endpoints; interior membership is the
    binary expansion of the mask.  Returns (prev, nxt, seg) arrays where
    ``seg`` maps each pair back to its mask.
    """
    interior = size - 2
    prev, nxt, seg = [], [], []
    for mask in range(1 << interior):
        seq = [0]
        seq.extend(i + 1 for i in range(interior) if mask >> i & 1)
        seq.append(size - 1)
        for a, b in zip(seq, seq[1:]):
            prev.append(a)
            nxt.append(b)
            seg.append(mask)
    return (
        np.array(prev, dtype=np.int64),
        np.array(nxt, dtype=np.int64),
        np.array(seg, dtype=np.int64),
    )


def _decode_mask(mask: int, size: int) -> list[int]:
    out = [0]
    out.extend(i + 1 for i in range(size - 2) if mask >> i & 1)
    out.append(size - 1)
    return out


def pvar_bruteforce(path: DiscretePath, p: float) -> PVarResult:
    """p-variation by literal enumeration of all 2^(n-1) subsequences.

    Independent of the dynamic program by construction; refuses paths with
    more than ``BRUTEFORCE_LIMIT`` increments.  The reported partition is
    the first maximiser in mask enumeration order.
    """
    p = _check_exponent(p)
    n = path.n
    if n > BRUTEFORCE_LIMIT:
        raise TooLarge(
            "brute force handles at most %d increments, path has %d"
            % (BRUTEFORCE_LIMIT, n)
        )
    powers = _pairwise_powers(path, p)
    size = n + 1
    if size <= 16:
        prev, nxt, seg = _subset_tables(size)
        sums = np.bincount(seg, weights=powers[prev, nxt], minlength=1 << (size - 2))
        mask = int(np.argmax(sums))
        value = float(sums[mask])
    else:
        rows = powers.tolist()
        value, mask = -1.0, 0
        for m in range(1 << (size - 2)):
            seq = _decode_mask(m, size)
            total = 0.0
            for a, b in zip(seq, seq[1:]):
                total += rows[a][b]
            if total > value:
                value, mask = total, m
    return PVarResult(p=p, value=value, partition=_decode_mask(mask, size))


def pvar_restricted(path: DiscretePath, p: float, c: float, d: float) -> PVarResult:
    """p-variation of the restriction of ``path`` to [c, d].

    Both endpoints must be sample times; the returned partition indexes
    into the restricted path (0 = the sample at ``c``).
    """
    return pvar(path.restrict(c, d), p)


def partition_sum(path: DiscretePath, indices: Sequence[int], p: float) -> float:
    """Sum of p-th powers of increment norms along the given index chain.

    Evaluated directly on the stored vectors, so tests can re-check any
    reported partition without going through the engine's embedding.
    """
    p = _check_exponent(p)
    total = 0.0
    for a, b in zip(indices, list(indices)[1:]):
        total += diff_norm(path.values[b], path.values[a]) ** p
    return total


def bv_norm(path: DiscretePath, p: float) -> float:
    """Norm of the starting value plus the p-th root of the p-variation."""
    p = _check_exponent(p)
    return vector_norm(path.values[0]) + pvar(path, p).value ** (1.0 / p)


def sup_norm(path: DiscretePath) -> float:
    """Largest value norm over the samples."""
    return max(vector_norm(v) for v in path.values)
