"""Generators, composition, Holder-constant estimation, and range covering."""

import math

import pytest

from pvarkit.errors import (
    DomainMismatch,
    InvalidAlpha,
    TooFewPoints,
)
from pvarkit.operators import (
    Generator,
    composition_bound_check,
    compose_path,
    epsilon_covering,
    estimate_holder,
)
from pvarkit.paths import DiscretePath
from pvarkit.spaces import L2, LINF, Vector, diff_norm
from pvarkit.variation import pvar

from conftest import build_corpus


def scalar_path(xs):
    times = [float(t) for t in range(len(xs))]
    values = [Vector.dense([x]) for x in xs]
    return DiscretePath(times, values, (times[0], times[-1]))


def test_identity_generator():
    f = Generator.identity()
    v = Vector.dense([1.0, -2.0], norm=LINF)
    assert f(v) == v
    s = Vector.sparse({4: 2.0})
    assert f(s) == s


def test_power_generator_is_odd_and_exact():
    f = Generator.power(0.5)
    assert f(Vector.dense([0.25])) == Vector.dense([0.5])
    assert f(Vector.dense([-0.25])) == Vector.dense([-0.5])
    assert f(Vector.dense([0.0])) == Vector.dense([0.0])
    with pytest.raises(ValueError):
        Generator.power(0.0)
    with pytest.raises(ValueError):
        Generator.power(1.5)
    with pytest.raises(DomainMismatch):
        f(Vector.dense([1.0, 2.0]))
    with pytest.raises(DomainMismatch):
        f(Vector.sparse({1: 1.0}))


def test_scalar_lipschitz_generator():
    f = Generator.scalar_lipschitz([(-1.0, 0.0), (0.0, 0.0), (1.0, 2.0)])
    assert f(Vector.dense([0.5])) == Vector.dense([1.0])
    assert f(Vector.dense([-0.5])) == Vector.dense([0.0])
    # clamped outside the breakpoints: constant extension
    assert f(Vector.dense([9.0])) == Vector.dense([2.0])
    assert f(Vector.dense([-9.0])) == Vector.dense([0.0])
    with pytest.raises(ValueError):
        Generator.scalar_lipschitz([(0.0, 1.0)])
    with pytest.raises(ValueError):
        Generator.scalar_lipschitz([(0.0, 1.0), (0.0, 2.0)])


def test_supremum_score_generator_on_basis_vectors():
    f = Generator.l2_sup()
    for k in (1, 2, 7):
        img = f(Vector.sparse({k: 1.0}))
        assert img == Vector.sparse({1: float(k)})
    with pytest.raises(DomainMismatch):
        f(Vector.dense([1.0]))


def test_supremum_score_generator_floor():
    f = Generator.l2_sup()
    # scores n (2 |xi_n| - 1) maximise; the floor is -(smallest missing index)
    assert f(Vector.sparse({1: 0.25, 2: 0.25})) == Vector.sparse({1: -0.5})
    assert f(Vector.sparse({5: 0.25})) == Vector.sparse({1: -1.0})
    assert f(Vector.sparse({})) == Vector.sparse({1: -1.0})


def test_custom_generator_and_serialization_limits():
    f = Generator.custom(lambda v: 2.0 * v, label="double")
    v = Vector.dense([1.5])
    assert f(v) == Vector.dense([3.0])
    with pytest.raises(ValueError):
        f.to_json()
    for g in (Generator.identity(), Generator.power(0.25), Generator.l2_sup(),
              Generator.scalar_lipschitz([(0.0, 0.0), (1.0, 1.0)])):
        again = Generator.from_json(g.to_json())
        assert again.to_json() == g.to_json()


def test_compose_path_keeps_times_and_interval():
    p = scalar_path([0.25, 1.0, 0.0])
    out = compose_path(Generator.power(0.5), p)
    assert list(out.times) == list(p.times)
    assert out.interval == p.interval
    assert [v.data[0] for v in out.values] == [0.5, 1.0, 0.0]


# frozen: max over 45 pairs of |i - j| / sqrt(2) at K = 10
def test_holder_estimate_on_score_map():
    pts = [Vector.sparse({k: 1.0}) for k in range(1, 11)]
    est = estimate_holder(Generator.l2_sup(), pts, 1.0)
    assert est.constant == 6.363961030678928
    assert est.constant == pytest.approx(9.0 / math.sqrt(2.0), rel=1e-15)
    assert est.pair_count == 45
    assert not est.infinite
    u, w = est.witness
    assert diff_norm(u, w) > 0.0


def test_holder_estimate_exact_exponent_match():
    # |x^(1/2) - y^(1/2)| / |x - y|^(1/2) peaks at pairs through 0
    pts = [Vector.dense([x]) for x in (0.0, 0.25, 1.0)]
    est = estimate_holder(Generator.power(0.5), pts, 0.5)
    assert est.constant == 1.0
    assert est.pair_count == 3


def test_holder_estimate_monotone_in_point_set():
    pts = [Vector.dense([float(k)]) for k in range(6)]
    f = Generator.scalar_lipschitz([(0.0, 0.0), (5.0, 5.0)])
    small = estimate_holder(f, pts[:3], 1.0)
    big = estimate_holder(f, pts, 1.0)
    assert big.constant >= small.constant
    assert big.constant == 1.0


def test_holder_estimate_corner_cases():
    pts = [Vector.dense([0.0]), Vector.dense([1.0])]
    with pytest.raises(InvalidAlpha):
        estimate_holder(Generator.identity(), pts, 0.0)
    with pytest.raises(InvalidAlpha):
        estimate_holder(Generator.identity(), pts, 1.5)
    with pytest.raises(TooFewPoints):
        estimate_holder(Generator.identity(), [pts[0]], 0.5)
    # all points identical: no usable pair
    with pytest.raises(TooFewPoints):
        estimate_holder(Generator.identity(), [pts[0], pts[0]], 0.5)


def test_holder_estimate_infinite_on_zero_distance_image_gap():
    # the squared norm of 1e-200 underflows: distinct vectors at measured
    # distance zero with distinct images short-circuit to an infinite estimate
    pts = [Vector.dense([0.0], norm=L2), Vector.dense([1e-200], norm=L2)]
    assert diff_norm(pts[0], pts[1]) == 0.0
    est = estimate_holder(Generator.identity(), pts, 1.0)
    assert est.infinite
    assert est.constant == math.inf
    assert est.pair_count == 0


def test_composition_bound_identity_on_corpus():
    f = Generator.identity()
    for path in build_corpus(30, seed=5, max_n=8):
        rep = composition_bound_check(f, path, 1.0, 2.0)
        assert rep.bound_holds


def test_composition_bound_power_on_scalar_corpus():
    p, q = 1.0, 2.0
    f = Generator.power(p / q)
    for path in build_corpus(30, seed=9, max_n=8, dims=(1,)):
        rep = composition_bound_check(f, path, p, q)
        assert rep.bound_holds
        assert rep.var_q == pytest.approx(pvar(compose_path(f, path), q).value)


def test_composition_bound_requires_ordered_exponents():
    from pvarkit.errors import InvalidExponent

    path = scalar_path([0.0, 1.0])
    with pytest.raises(InvalidExponent):
        composition_bound_check(Generator.identity(), path, 2.0, 1.0)


def test_composition_bound_constant_path_degenerate():
    path = scalar_path([1.0, 1.0, 1.0])
    rep = composition_bound_check(Generator.identity(), path, 1.0, 2.0)
    assert rep.l_hat == 0.0
    assert rep.var_p == 0.0 and rep.var_q == 0.0
    assert rep.bound_holds


def test_epsilon_covering_counts():
    pts = [Vector.sparse({k: 1.0}) for k in range(1, 8)]
    # basis vectors are sqrt(2) apart: below that radius nothing merges
    assert epsilon_covering(pts, 1.0) == 7
    assert epsilon_covering(pts, 1.5) == 1
    assert epsilon_covering([Vector.dense([0.0]), Vector.dense([0.5])], 0.5) == 1
    assert epsilon_covering([Vector.dense([0.0]), Vector.dense([0.5])], 0.49) == 2
    with pytest.raises(ValueError):
        epsilon_covering(pts, 0.0)
    assert epsilon_covering([], 1.0) == 0


def test_bound_report_json():
    path = scalar_path([0.0, 1.0, 0.5])
    rep = composition_bound_check(Generator.identity(), path, 1.0, 2.0)
    doc = rep.to_json()
    assert set(doc) == {"L_hat", "var_p", "var_q", "bound_holds"}
    assert doc["bound_holds"] is True
