import pytest

from softsheaf.order import OrderError, antichain, chain, poset_from_covers
from softsheaf.compord import (
    CompOrdSpace,
    FinTopSpace,
    NotT0,
    closed_commute,
    closed_commute_report,
    compact_saturated,
    decomposition_bijection_check,
    decomposition_to_dot,
    down_space,
    down_up_duality,
    hofmann_mislove_check,
    interpolating_check,
    up_space,
)


def test_topology_validation():
    with pytest.raises(OrderError):
        FinTopSpace(2, (0,))
    with pytest.raises(OrderError):
        FinTopSpace(2, (0, 1, 2))  # {0} and {1} but not their union


def test_down_up_duality():
    X = CompOrdSpace(antichain(2))
    down, up, _ = down_up_duality(X)
    assert down.opens == up.opens == (0, 1, 2, 3)

    X = CompOrdSpace(chain(2).poset)
    down, up, pairs = down_up_duality(X)
    assert down.opens == (0, 1, 3)
    assert up.opens == (0, 2, 3)
    assert dict(pairs) == {0: 3, 1: 2, 3: 0}


def test_compact_saturated():
    discrete = FinTopSpace(2, (0, 1, 2, 3))
    lat, sats = compact_saturated(discrete)
    assert sats == (0, 1, 2, 3)
    sierpinski = FinTopSpace(2, (0, 2, 3))
    lat, sats = compact_saturated(sierpinski)
    assert sats == (0, 2, 3)
    up2 = up_space(CompOrdSpace(chain(2).poset))
    lat, sats = compact_saturated(up2)
    assert sats == (0, 2, 3)
    not_t0 = FinTopSpace(2, (0, 3))
    with pytest.raises(NotT0):
        compact_saturated(not_t0)


def test_hofmann_mislove_explicit():
    sierpinski = FinTopSpace(2, (0, 2, 3))
    assert hofmann_mislove_check(sierpinski)
    assert hofmann_mislove_check(FinTopSpace(1, (0, 1)))
    with pytest.raises(NotT0):
        hofmann_mislove_check(FinTopSpace(2, (0, 3)))


def test_closed_commute_examples():
    c2 = CompOrdSpace(chain(2).poset)
    assert closed_commute(c2, 0b11, 0b11)
    assert not closed_commute(c2, 0b01, 0b10)
    c3 = CompOrdSpace(chain(3).poset)
    assert closed_commute(c3, 0b011, 0b110)


def test_closed_commute_pushout_cross_check():
    c2 = CompOrdSpace(chain(2).poset)
    r = closed_commute_report(c2, 0b01, 0b10)
    assert r.agree and not r.criterion and not r.pushout_matches_union
    v = CompOrdSpace(poset_from_covers(3, [(0, 1), (0, 2)]))
    for c1 in range(8):
        for c2m in range(8):
            assert closed_commute_report(v, c1, c2m).agree


def test_interpolating_check():
    c2 = CompOrdSpace(chain(2).poset)
    a2 = CompOrdSpace(antichain(2))
    assert interpolating_check((0, 1), c2, c2)  # the identity
    assert not interpolating_check((0, 1), c2, a2)
    assert interpolating_check((1, 1), c2, a2)  # constants interpolate


def test_identity_is_interpolating(corpus_posets_5):
    for p in corpus_posets_5:
        X = CompOrdSpace(p)
        assert interpolating_check(tuple(range(p.n)), X, X)


def test_decomposition_bijection_golden():
    c2 = CompOrdSpace(chain(2).poset)
    a2 = CompOrdSpace(antichain(2))
    s1 = CompOrdSpace(antichain(1))
    r = decomposition_bijection_check(s1, s1)
    assert r.counts == {"decompositions": 1, "frame_homs": 1} and r.bijection
    r = decomposition_bijection_check(c2, c2)
    assert r.counts == {"decompositions": 4, "frame_homs": 4} and r.bijection
    r = decomposition_bijection_check(c2, a2)
    assert r.counts == {"decompositions": 2, "frame_homs": 2} and r.bijection
    assert (0, 1) not in r.interpolating  # the order-breaking map is excluded


def test_preimage_is_a_frame_hom_for_every_function():
    # the preimage map preserves meets and joins of down-sets whether or
    # not the function interpolates; only the commuting filter differs
    from softsheaf.order import downset_lattice
    import itertools

    X = CompOrdSpace(chain(2).poset)
    Y = CompOrdSpace(poset_from_covers(3, [(0, 1), (0, 2)]))
    dy, labels = downset_lattice(Y.poset)
    for q in itertools.product(range(Y.n), repeat=X.n):
        val = [
            sum(1 << x for x in range(X.n) if (labels[i] >> q[x]) & 1)
            for i in range(dy.n)
        ]
        for i in range(dy.n):
            for j in range(dy.n):
                assert val[dy.meet(i, j)] == val[i] & val[j]
                assert val[dy.join(i, j)] == val[i] | val[j]


def test_decomposition_dot_output():
    c2 = CompOrdSpace(chain(2).poset)
    dot = decomposition_to_dot((0, 0), c2, c2)
    assert "x0 -> y0" in dot and "cluster_x" in dot
