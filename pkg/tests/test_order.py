import pytest

from softsheaf.order import (
    CapExceeded,
    Filter,
    LatticeParseError,
    MonotoneMap,
    NoJoin,
    NoMeet,
    NoBottom,
    NoTop,
    NotAntisymmetric,
    NotDistributive,
    NotReflexive,
    NotTransitive,
    OrderError,
    bits,
    boolean_lattice,
    chain,
    check_lattice,
    check_poset,
    diamond_m3,
    downset_lattice,
    enumerate_monotone_maps,
    filters,
    is_continuous,
    is_normal_frame,
    is_stably_continuous,
    join_irreducibles,
    lattice_to_dot,
    lattice_to_text,
    lawson_dual,
    named_lattice,
    parse_lattice,
    parse_poset,
    pentagon,
    poset_from_covers,
    scott_filter_properties_check,
    scott_open_filters,
    way_below,
    way_below_bruteforce,
    wilker_check,
)


def test_check_poset_accepts_antichain_and_chain():
    identity = [[i == j for j in range(3)] for i in range(3)]
    p = check_poset(identity)
    assert p.n == 3 and not p.covers

    upper = [[j >= i for j in range(3)] for i in range(3)]
    q = check_poset(upper)
    assert q.covers == ((0, 1), (1, 2))


def test_check_poset_reports_specific_axiom():
    with pytest.raises(NotReflexive):
        check_poset([[False]])
    with pytest.raises(NotAntisymmetric) as e:
        check_poset([[True, True], [True, True]])
    assert (e.value.i, e.value.j) == (0, 1)
    # 0<1, 1<2 without 0<2
    m = [[True, True, False], [False, True, True], [False, False, True]]
    with pytest.raises(NotTransitive):
        check_poset(m)


def test_check_lattice_bool4():
    b = boolean_lattice(2)
    assert b.meet(1, 2) == 0 and b.join(1, 2) == 3
    assert b.bot == 0 and b.top == 3


def test_check_lattice_missing_pieces():
    # two incomparable maximal elements over a chain: no top
    p = poset_from_covers(4, [(0, 1), (1, 2), (1, 3)])
    with pytest.raises(NoTop):
        check_lattice(p)
    with pytest.raises(NoBottom):
        check_lattice(poset_from_covers(3, [(0, 2), (1, 2)]))
    # bottom and top present but the middle antichain of 2 has no meet/join
    p = poset_from_covers(6, [(0, 1), (0, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 5), (4, 5)])
    with pytest.raises((NoMeet, NoJoin)):
        check_lattice(p)


def test_pentagon_tables_against_glb_lub_scan():
    n5 = pentagon()
    # oracle: independent scan over all common bounds using only leq
    for x in range(5):
        for y in range(5):
            lower = [z for z in range(5) if n5.leq(z, x) and n5.leq(z, y)]
            glb = [m for m in lower if all(n5.leq(z, m) for z in lower)]
            upper = [z for z in range(5) if n5.leq(x, z) and n5.leq(y, z)]
            lub = [m for m in upper if all(n5.leq(m, z) for z in upper)]
            assert [n5.meet(x, y)] == glb
            assert [n5.join(x, y)] == lub
    assert not n5.is_distributive
    assert n5.meet(2, 3) == 0 and n5.join(1, 3) == 4


def test_way_below_examples():
    c3 = chain(3)
    assert way_below_bruteforce(c3, 1, 2) and way_below(c3, 1, 2)
    b = boolean_lattice(2)
    # bottom is way below everything
    for L in (c3, b, pentagon()):
        for y in range(L.n):
            assert way_below_bruteforce(L, L.bot, y)
    # incomparable atoms are not way below each other
    assert not way_below_bruteforce(b, 1, 2)
    assert not way_below(b, 1, 2)


def test_way_below_collapse_on_small_corpus(small_corpus_lattices):
    for L in small_corpus_lattices:
        for x in range(L.n):
            for y in range(L.n):
                assert way_below_bruteforce(L, x, y) == L.leq(x, y)
                assert way_below(L, x, y) == L.leq(x, y)


def test_continuity_flags(catalog_lattices):
    for L in catalog_lattices.values():
        assert is_continuous(L)
        assert is_stably_continuous(L)


def test_filters_chain2_explicit():
    fs = filters(chain(2))
    assert [(f.mask, f.least, f.scott_open) for f in fs] == [(2, 1, True), (3, 0, True)]


def test_filters_are_principal_and_scott_open(small_corpus_lattices):
    for L in small_corpus_lattices:
        fs = filters(L)
        assert len(fs) == L.n
        for f in fs:
            assert f.mask == L.ups[f.least]
            assert f.scott_open
        # the improper filter is the up-set of bottom
        assert fs[-1].mask == (1 << L.n) - 1 or any(f.mask == (1 << L.n) - 1 for f in fs)


def test_lawson_dual_shapes():
    d3 = lawson_dual(chain(3))
    assert d3.least == (2, 1, 0)  # inclusion order reverses the chain
    db = lawson_dual(boolean_lattice(2))
    assert sorted(db.least) == [0, 1, 2, 3]
    d1 = lawson_dual(chain(1))
    assert d1.lattice.n == 1


def test_lawson_double_dual_collapse(small_corpus_lattices):
    # the double dual is again the original lattice, witnessed by the
    # composite of the two principal-filter assignments
    for L in small_corpus_lattices:
        d = lawson_dual(L)
        dd = lawson_dual(d.lattice)
        assert dd.lattice.n == L.n
        through = [d.least[dd.least[i]] for i in range(L.n)]
        assert sorted(through) == list(range(L.n))
        for i in range(L.n):
            for j in range(L.n):
                assert dd.lattice.leq(i, j) == L.leq(through[i], through[j])


def test_scott_filter_properties_small(small_corpus_lattices):
    for L in small_corpus_lattices:
        report = scott_filter_properties_check(L)
        assert report.ok, report.items


def test_scott_filter_codirected_witness_bool4():
    b = boolean_lattice(2)
    holding = [f for f in scott_open_filters(b) if 1 in f]
    assert sorted(f.mask for f in holding) == [10, 15]  # up(a) and up(bot)


def test_scott_filter_item_c_chain3_witness():
    report = scott_filter_properties_check(chain(3))
    d = lawson_dual(chain(3))
    # filters sorted by mask: up(2), up(1), up(0)
    w = report.items["c"].witnesses[(1, 0)]  # up(2) way below up(1) in the dual
    assert w in (1, 2)
    assert not d.filters[0].mask & ~chain(3).ups[w]


def test_wilker(catalog_lattices):
    b = catalog_lattices["bool4"]
    res = wilker_check(b)
    assert res.ok
    # x=a, y=b, l=up(top): first witness pair is (up(a), up(b))
    assert res.witnesses[(1, 2, 8)] == (10, 12)
    # x = y = top: some witness exists for every filter l holding top
    assert all(res.witnesses[(3, 3, f.mask)] for f in scott_open_filters(b) if 3 in f)


def test_wilker_corpus_small(small_corpus_lattices):
    for L in small_corpus_lattices:
        assert wilker_check(L).ok


def test_normality():
    for k in range(1, 5):
        assert is_normal_frame(chain(k)).normal
    assert is_normal_frame(boolean_lattice(2)).normal
    lat, labels = downset_lattice(poset_from_covers(3, [(0, 1), (0, 2)]))
    res = is_normal_frame(lat)
    assert not res.normal
    g, h = res.witness
    assert (labels[g], labels[h]) == (0b011, 0b101)  # {x,y} and {x,z}
    with pytest.raises(NotDistributive):
        is_normal_frame(diamond_m3())


def test_normality_invariant_under_isomorphism():
    lat, _ = downset_lattice(poset_from_covers(3, [(0, 1), (0, 2)]))
    relabeled, _ = downset_lattice(poset_from_covers(3, [(2, 1), (2, 0)]))
    assert is_normal_frame(lat).normal == is_normal_frame(relabeled).normal


def test_enumerate_monotone_maps_counts():
    c2 = chain(2)
    plain = enumerate_monotone_maps(c2, c2)
    assert len(plain) == 3
    both = enumerate_monotone_maps(
        c2, c2, preserve_finite_infima=True, preserve_arbitrary_suprema=True
    )
    assert len(both) == 1 and both[0].val == (0, 1)
    single = enumerate_monotone_maps(pentagon(), chain(1), preserve_finite_infima=True,
                                     preserve_arbitrary_suprema=True)
    assert len(single) == 1


def test_enumerate_monotone_maps_fast_path_matches_general():
    # the distributive shortcut must agree with the literal pairwise filter
    def general(P, Q, fin_inf):
        out = []
        for m in enumerate_monotone_maps(P, Q):
            v = m.val
            if any(v[P.join(x, y)] != Q.join(v[x], v[y]) for x in range(P.n) for y in range(P.n)):
                continue
            if v[P.bot] != Q.bot:
                continue
            if fin_inf:
                if v[P.top] != Q.top:
                    continue
                if any(v[P.meet(x, y)] != Q.meet(v[x], v[y]) for x in range(P.n) for y in range(P.n)):
                    continue
            out.append(v)
        return sorted(out)

    cases = [
        (chain(3), boolean_lattice(2)),
        (boolean_lattice(2), boolean_lattice(2)),
        (downset_lattice(poset_from_covers(3, [(0, 1), (0, 2)]))[0], chain(3)),
        (pentagon(), boolean_lattice(2)),
        (diamond_m3(), diamond_m3()),
    ]
    for P, Q in cases:
        for fin_inf in (False, True):
            fast = [
                m.val
                for m in enumerate_monotone_maps(
                    P, Q, preserve_finite_infima=fin_inf, preserve_arbitrary_suprema=True
                )
            ]
            assert fast == general(P, Q, fin_inf)


def test_monotone_map_validation():
    c2 = chain(2)
    with pytest.raises(OrderError):
        MonotoneMap(c2, c2, (1, 0))
    m = MonotoneMap(c2, c2, (1, 0), contravariant=True)
    assert m(0) == 1


def test_join_irreducibles():
    assert join_irreducibles(boolean_lattice(2)) == [1, 2]
    assert join_irreducibles(chain(3)) == [1, 2]
    assert join_irreducibles(diamond_m3()) == [1, 2, 3]


def test_parse_and_emit_roundtrip():
    text = "lattice 4\n0<1\n0<2\n1<3\n2<3\n"
    lat = parse_lattice(text)
    assert lat.meet(1, 2) == 0 and lat.join(1, 2) == 3
    assert lattice_to_text(lat) == text
    dot = lattice_to_dot(lat)
    assert "v0 -> v1" in dot and "rank=same" in dot


def test_parse_errors_carry_line_numbers():
    with pytest.raises(LatticeParseError) as e:
        parse_lattice("lattice 2\n0<5\n")
    assert e.value.line_no == 2
    with pytest.raises(LatticeParseError):
        parse_lattice("widget 2\n")
    with pytest.raises(LatticeParseError):
        parse_poset("poset 2\n0<1\n1<0\n")
    with pytest.raises(LatticeParseError):
        parse_lattice("")


def test_named_lattices_cover_the_catalog():
    for name in ("chain4", "bool4", "n5", "m3", "nonnormal5"):
        lat = named_lattice(name)
        assert lat.n >= 1
    with pytest.raises(OrderError):
        named_lattice("nope")


def test_directed_mask_cap():
    with pytest.raises(CapExceeded):
        chain(13).directed_masks
    with pytest.raises(CapExceeded):
        way_below_bruteforce(boolean_lattice(4), 0, 1)


def test_scott_open_filters_beyond_cap_are_principal():
    big = boolean_lattice(4)  # 16 elements > exhaustive cap
    fs = scott_open_filters(big)
    assert len(fs) == big.n
    for f in fs:
        assert f.mask == big.ups[f.least]
