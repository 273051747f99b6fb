"""Composition operators and empirical Holder-constant estimation.

A :class:`Generator` is a pointwise map f on vectors; ``compose_path``
pushes a whole path through it, sample by sample.  ``estimate_holder``
scans a finite point set for the largest ratio |f(u) - f(w)| / |u - w|^alpha,
which lower-bounds any true Holder constant of f on that set, and
``composition_bound_check`` ties the pieces together: with alpha = p/q and
the constant estimated on the exact range of the path, the q-variation of
the composed path can never exceed L^q times the p-variation of the input.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Mapping, Sequence

import numpy as np

from .errors import (
    DomainMismatch,
    InvalidAlpha,
    InvalidExponent,
    TooFewPoints,
)
from .paths import DiscretePath
from .spaces import Vector, diff_norm, coordinate_matrix, row_norms
from .variation import _check_exponent, pvar

__all__ = [
    "Generator",
    "compose_path",
    "HolderEstimate",
    "estimate_holder",
    "BoundCheckReport",
    "composition_bound_check",
    "epsilon_covering",
    "BOUND_TOL",
]

BOUND_TOL = 1e-9


class Generator:
    """Named pointwise map on vectors.

    Construct through the factory classmethods.  ``identity`` accepts any
    vector; ``power`` and ``scalar_lipschitz`` act on dense one-dimensional
    vectors (the real line); ``l2_sup`` acts on finitely supported
    sequences; ``custom`` wraps an arbitrary pure callable and is the one
    kind that cannot be serialized.
    """

    __slots__ = ("kind", "beta", "xs", "ys", "fn", "label")

    def __init__(self, kind, beta=None, xs=None, ys=None, fn=None, label=None):
        self.kind = kind
        self.beta = beta
        self.xs = xs
        self.ys = ys
        self.fn = fn
        self.label = label or kind

    @classmethod
    def identity(cls) -> "Generator":
        return cls("identity")

    @classmethod
    def power(cls, beta: float) -> "Generator":
        """t -> sign(t) |t|^beta on the real line, 0 < beta <= 1."""
        beta = float(beta)
        if not 0.0 < beta <= 1.0:
            raise ValueError("power exponent must lie in (0, 1], got %r" % (beta,))
        return cls("power", beta=beta, label="power(%g)" % beta)

    @classmethod
    def scalar_lipschitz(cls, breakpoints: Sequence[Sequence[float]]) -> "Generator":
        """Piecewise-linear map of the real line from (x, y) breakpoints.

        Breakpoints must have strictly increasing x; outside their range
        the map clamps to the end values (slope zero), so the global
        Lipschitz constant is the largest segment slope magnitude.
        """
        pts = [(float(x), float(y)) for x, y in breakpoints]
        if len(pts) < 2:
            raise ValueError("need at least 2 breakpoints")
        xs = np.array([x for x, _ in pts])
        ys = np.array([y for _, y in pts])
        if not np.all(np.diff(xs) > 0):
            raise ValueError("breakpoint x values must be strictly increasing")
        return cls("scalar_lipschitz", xs=xs, ys=ys, label="scalar_lipschitz")

    @classmethod
    def l2_sup(cls) -> "Generator":
        """Sequence map whose first output coordinate is sup_n n(2|x_n| - 1).

        Off the support the coordinate is zero, so those indices contribute
        -n and the supremum over them is minus the smallest index missing
        from the support; the sup is therefore exact on finite supports.
        All other output coordinates vanish.
        """
        return cls("l2_sup")

    @classmethod
    def custom(cls, fn: Callable[[Vector], Vector], label: str = "custom") -> "Generator":
        return cls("custom", fn=fn, label=label)

    def _scalar_in(self, v: Vector) -> float:
        if v.space.kind != "dense" or v.space.dim != 1:
            raise DomainMismatch(
                "%s acts on dense 1-dimensional vectors, got %s"
                % (self.label, v.space.to_json())
            )
        return float(v.data[0])

    def __call__(self, v: Vector) -> Vector:
        if not isinstance(v, Vector):
            raise DomainMismatch("generators act on Vector instances")
        if self.kind == "identity":
            return v
        if self.kind == "power":
            t = self._scalar_in(v)
            out = math.copysign(abs(t) ** self.beta, t) if t != 0.0 else 0.0
            return Vector(v.space, np.array([out]))
        if self.kind == "scalar_lipschitz":
            t = self._scalar_in(v)
            return Vector(v.space, np.array([float(np.interp(t, self.xs, self.ys))]))
        if self.kind == "l2_sup":
            if v.space.kind != "sparse":
                raise DomainMismatch(
                    "l2_sup acts on finitely supported sequences, got %s"
                    % (v.space.to_json(),)
                )
            entries = v.data
            m = 1
            while m in entries:
                m += 1
            best = float(-m)
            for idx, coord in entries.items():
                best = max(best, idx * (2.0 * abs(coord) - 1.0))
            return Vector(v.space, {1: best} if best != 0.0 else {})
        return self.fn(v)

    def to_json(self) -> dict:
        if self.kind == "identity":
            return {"name": "identity"}
        if self.kind == "power":
            return {"name": "power", "beta": self.beta}
        if self.kind == "scalar_lipschitz":
            return {
                "name": "scalar_lipschitz",
                "breakpoints": [[float(x), float(y)] for x, y in zip(self.xs, self.ys)],
            }
        if self.kind == "l2_sup":
            return {"name": "l2_sup"}
        raise ValueError("custom generators cannot be serialized")

    @classmethod
    def from_json(cls, obj) -> "Generator":
        if not isinstance(obj, Mapping) or "name" not in obj:
            raise ValueError("generator must be an object with a 'name'")
        name = obj["name"]
        if name == "identity":
            return cls.identity()
        if name == "power":
            if "beta" not in obj:
                raise ValueError("power generator needs 'beta'")
            return cls.power(obj["beta"])
        if name == "scalar_lipschitz":
            if "breakpoints" not in obj:
                raise ValueError("scalar_lipschitz generator needs 'breakpoints'")
            return cls.scalar_lipschitz(obj["breakpoints"])
        if name == "l2_sup":
            return cls.l2_sup()
        raise ValueError("unknown generator name %r" % (name,))

    def __repr__(self):
        return "Generator(%s)" % self.label


def compose_path(f: Generator, path: DiscretePath) -> DiscretePath:
    """Apply ``f`` to every sample value, keeping the time grid."""
    return DiscretePath(path.times, [f(v) for v in path.values], path.interval)


@dataclass
class HolderEstimate:
    """Largest observed ratio |f(u)-f(w)| / |u-w|^alpha over a point set.

    ``infinite`` marks the degenerate situation of two points at zero
    distance whose images differ; ``constant`` is then ``math.inf`` and the
    witness is the offending pair.  ``pair_count`` counts the pairs that
    actually contributed a finite ratio.
    """

    alpha: float
    constant: float
    witness: tuple[Vector, Vector] | None
    pair_count: int
    infinite: bool = False

    def to_json(self) -> dict:
        return {
            "alpha": self.alpha,
            "constant": "inf" if self.infinite else self.constant,
            "witness": None
            if self.witness is None
            else [self.witness[0].to_json(), self.witness[1].to_json()],
            "pair_count": self.pair_count,
            "infinite": self.infinite,
        }


def estimate_holder(f: Generator, points: Sequence[Vector], alpha: float) -> HolderEstimate:
    """Scan all point pairs for the worst Holder ratio at exponent alpha.

    Pairs of componentwise-identical vectors are skipped; a pair at zero
    distance with differing images short-circuits to an infinite estimate.
    The scan runs in index order (i, j), i < j, and keeps the first pair
    attaining the maximum, so the witness is deterministic.
    """
    alpha = float(alpha)
    if not 0.0 < alpha <= 1.0:
        raise InvalidAlpha("alpha must lie in (0, 1], got %r" % (alpha,))
    points = list(points)
    if len(points) < 2:
        raise TooFewPoints("need at least 2 points, got %d" % len(points))
    images = [f(v) for v in points]
    best = -1.0
    witness = None
    count = 0
    for i in range(len(points)):
        for j in range(i + 1, len(points)):
            if points[i] == points[j]:
                continue
            d = diff_norm(points[i], points[j])
            if d == 0.0:
                if images[i] == images[j]:
                    continue
                return HolderEstimate(
                    alpha=alpha,
                    constant=math.inf,
                    witness=(points[i], points[j]),
                    pair_count=count,
                    infinite=True,
                )
            count += 1
            ratio = diff_norm(images[i], images[j]) / d ** alpha
            if ratio > best:
                best = ratio
                witness = (points[i], points[j])
    if count == 0:
        raise TooFewPoints("points contain fewer than 2 distinct vectors")
    return HolderEstimate(alpha=alpha, constant=best, witness=witness, pair_count=count)


@dataclass
class BoundCheckReport:
    """Measured two-sided data for the variation transfer inequality."""

    l_hat: float
    var_p: float
    var_q: float
    bound_holds: bool
    p: float = field(default=0.0, repr=False)
    q: float = field(default=0.0, repr=False)

    def to_json(self) -> dict:
        return {
            "L_hat": self.l_hat,
            "var_p": self.var_p,
            "var_q": self.var_q,
            "bound_holds": self.bound_holds,
        }


def composition_bound_check(
    f: Generator, path: DiscretePath, p: float, q: float
) -> BoundCheckReport:
    """Check var_q(f o x) <= L^q var_p(x) with L estimated at alpha = p/q.

    The estimate runs over the exact range of the path, so every increment
    the composed maximisation can use is itself one of the scanned pairs
    and the inequality holds up to floating-point slack.  A constant path
    has no distinct pairs; its estimate is taken as zero.
    """
    p = _check_exponent(p)
    q = _check_exponent(q)
    if q < p:
        raise InvalidExponent("need p <= q, got p=%r q=%r" % (p, q))
    try:
        estimate = estimate_holder(f, path.values, p / q)
        l_hat = estimate.constant
        infinite = estimate.infinite
    except TooFewPoints:
        l_hat, infinite = 0.0, False
    var_p = pvar(path, p).value
    var_q = pvar(compose_path(f, path), q).value
    if infinite:
        holds = True if var_p > 0.0 else var_q <= BOUND_TOL
    else:
        holds = var_q <= l_hat ** q * var_p + BOUND_TOL
    return BoundCheckReport(
        l_hat=l_hat, var_p=var_p, var_q=var_q, bound_holds=bool(holds), p=p, q=q
    )


def epsilon_covering(points: Sequence[Vector], eps: float) -> int:
    """Greedy covering-number diagnostic: within factor 2 of optimal.

    Walks the points in order; each point not within ``eps`` of an existing
    center becomes one.  Returns the number of centers.
    """
    eps = float(eps)
    if not eps > 0.0:
        raise ValueError("eps must be positive")
    points = list(points)
    if not points:
        return 0
    mat = coordinate_matrix(points)
    kind = points[0].space.norm
    centers: list[int] = []
    for i in range(mat.shape[0]):
        if centers:
            dists = row_norms(mat[centers] - mat[i], kind)
            if float(dists.min()) <= eps:
                continue
        centers.append(i)
    return len(centers)
