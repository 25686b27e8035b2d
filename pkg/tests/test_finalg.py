import itertools

import pytest

from softsheaf.order import chain
from softsheaf.corpus import canonical_key
from softsheaf.finalg import (
    AlgebraError,
    AlgebraMismatch,
    CodomainMismatch,
    Congruence,
    FinAlgebra,
    Homomorphism,
    Signature,
    algebra_to_text,
    all_partitions,
    commute,
    commuting_equivalences_report,
    compose_relations,
    congruence_generated,
    congruence_lattice,
    cyclic_group,
    chain_semilattice,
    dihedral_group_8,
    empty_semigroup,
    find_isomorphism,
    homs,
    identity_hom,
    image_factorization,
    kernel_congruence,
    klein_four,
    named_algebra,
    one_element_algebra,
    parse_algebra,
    product,
    pullback,
    pushout_of_quotients,
    quaternion_group,
    quotient,
    set_algebra,
    symmetric_group,
    two_element_semilattice,
)


def test_signature_validation():
    with pytest.raises(AlgebraError):
        Signature((("f", 1), ("f", 2)))
    with pytest.raises(AlgebraError):
        FinAlgebra(Signature((("c", 0),)), 0, {"c": ()})


def test_group_builders_are_groups():
    for g in (cyclic_group(6), klein_four(), symmetric_group(3), dihedral_group_8(), quaternion_group()):
        e = g.op("e")
        for x in range(g.n):
            assert g.op("mul", x, g.op("inv", x)) == e
            for y in range(g.n):
                for z in range(g.n):
                    assert g.op("mul", g.op("mul", x, y), z) == g.op("mul", x, g.op("mul", y, z))


def test_homomorphism_validation_and_flags():
    z4, z2 = cyclic_group(4), cyclic_group(2)
    h = Homomorphism(z4, z2, (0, 1, 0, 1))
    assert h.surjective and not h.injective
    with pytest.raises(AlgebraError):
        Homomorphism(z4, z2, (0, 0, 1, 1))


def test_image_factorization():
    z4, z2 = cyclic_group(4), cyclic_group(2)
    h = Homomorphism(z4, z2, (0, 1, 0, 1))
    e, m = image_factorization(h)
    assert e.surjective and m.injective
    assert [m.mapping[e.mapping[x]] for x in range(4)] == list(h.mapping)
    # surjective input: the injection is an identity-sized inclusion
    assert m.dom.n == 2

    # constant map to an idempotent between chain semilattices: image size 1
    h2 = Homomorphism(two_element_semilattice(), chain_semilattice(3), (0, 0))
    e2, m2 = image_factorization(h2)
    assert e2.cod.n == 1 and m2.injective

    # injective input: the surjection is a bijection
    inc = Homomorphism(cyclic_group(2), z4, (0, 2))
    e3, m3 = image_factorization(inc)
    assert e3.bijective and m3.injective


def test_kernel_congruence():
    z4, z2 = cyclic_group(4), cyclic_group(2)
    inj = Homomorphism(cyclic_group(2), z4, (0, 2))
    assert kernel_congruence(inj) == Congruence.diagonal(cyclic_group(2))
    h = Homomorphism(z4, z2, (0, 1, 0, 1))
    assert kernel_congruence(h).blocks() == [(0, 2), (1, 3)]
    const = Homomorphism(set_algebra(3), set_algebra(1), (0, 0, 0))
    assert kernel_congruence(const) == Congruence.full(set_algebra(3))


def test_congruence_generated():
    z4 = cyclic_group(4)
    assert congruence_generated(z4, []) == Congruence.diagonal(z4)
    assert congruence_generated(z4, [(0, 2)]).blocks() == [(0, 2), (1, 3)]
    assert congruence_generated(z4, [(0, 1)]) == Congruence.full(z4)


def test_congruence_lattice_small():
    two = set_algebra(2)
    assert len(congruence_lattice(two).congruences) == 2
    three = set_algebra(3)
    con3 = congruence_lattice(three)
    assert len(con3.congruences) == 5  # bell number of 3
    assert sum(1 for _ in all_partitions(3)) == 5
    z4 = cyclic_group(4)
    conz4 = congruence_lattice(z4)
    assert [c.blocks() for c in conz4.congruences] == [
        [(0, 1, 2, 3)],
        [(0, 2), (1, 3)],
        [(0,), (1,), (2,), (3,)],
    ]
    assert canonical_key(conz4.lattice.poset) == canonical_key(chain(3).poset)


def test_congruence_lattice_join_closure_agrees_with_partition_filter():
    # the above-cap generation path must match the exhaustive one
    for A in (set_algebra(3), cyclic_group(4), klein_four(), two_element_semilattice()):
        full = congruence_lattice(A)
        A2 = FinAlgebra(A.sig, A.n, A.tables)  # fresh object, fresh cache
        closure = congruence_lattice(A2, cap=0)
        assert [c.leaders for c in full.congruences] == [c.leaders for c in closure.congruences]


def test_compose_relations_and_commute():
    s3 = set_algebra(3)
    t1 = Congruence.from_partition(s3, [[0, 1], [2]])
    t2 = Congruence.from_partition(s3, [[0], [1, 2]])
    c12 = compose_relations(t1, t2)
    assert c12.holds(0, 2) and not compose_relations(t2, t1).holds(0, 2)
    assert not commute(t1, t2)
    for t in congruence_lattice(s3).congruences:
        assert compose_relations(Congruence.diagonal(s3), t) == t.relation()
        assert commute(Congruence.diagonal(s3), t)
    with pytest.raises(AlgebraMismatch):
        compose_relations(t1, Congruence.diagonal(set_algebra(4)))


def test_quotient():
    z4 = cyclic_group(4)
    q, proj = quotient(z4, Congruence.diagonal(z4))
    assert proj.bijective
    q, proj = quotient(z4, Congruence.full(z4))
    assert q.n == 1
    mu = Congruence.from_partition(z4, [[0, 2], [1, 3]])
    q, proj = quotient(z4, mu)
    assert find_isomorphism(q, cyclic_group(2))
    empty = empty_semigroup()
    q, proj = quotient(empty, Congruence.diagonal(empty))
    assert q.n == 0


def test_pushout_of_quotients():
    z4 = cyclic_group(4)
    mu = Congruence.from_partition(z4, [[0, 2], [1, 3]])
    h, e1, e2 = pushout_of_quotients(z4, mu, Congruence.diagonal(z4))
    assert find_isomorphism(h, cyclic_group(2)) and e2.surjective
    s3 = set_algebra(3)
    t1 = Congruence.from_partition(s3, [[0, 1], [2]])
    t2 = Congruence.from_partition(s3, [[0], [1, 2]])
    h, _, _ = pushout_of_quotients(s3, t1, t2)
    assert h.n == 1
    h, e1, e2 = pushout_of_quotients(z4, mu, mu)
    assert find_isomorphism(h, cyclic_group(2))


def test_pullback():
    z2, z4 = cyclic_group(2), cyclic_group(4)
    one = cyclic_group(1)
    pb = pullback(Homomorphism(z2, one, (0, 0)), Homomorphism(z2, one, (0, 0)))
    assert pb.algebra.n == 4 and find_isomorphism(pb.algebra, klein_four())
    pb2 = pullback(identity_hom(z2), identity_hom(z2))
    assert pb2.algebra.n == 2
    h = Homomorphism(z4, z2, (0, 1, 0, 1))
    pb3 = pullback(h, identity_hom(z2))
    assert pb3.algebra.n == 4 and pb3.proj1.bijective
    with pytest.raises(CodomainMismatch):
        pullback(identity_hom(z2), identity_hom(z4))


def test_product_projections():
    p, p1, p2, pairs = product(cyclic_group(2), cyclic_group(3))
    assert p.n == 6 and p1.surjective and p2.surjective
    assert find_isomorphism(p, cyclic_group(6))


def test_commuting_equivalences_report_agreement(catalog_algebras):
    s3 = catalog_algebras["set3"]
    t1 = Congruence.from_partition(s3, [[0, 1], [2]])
    t2 = Congruence.from_partition(s3, [[0], [1, 2]])
    rep = commuting_equivalences_report(s3, t1, t2)
    assert rep.agree and not rep.value
    assert not rep.equal_composites and not rep.regular_pushout

    for A in catalog_algebras.values():
        cons = congruence_lattice(A).congruences
        for ta in cons:
            rep = commuting_equivalences_report(A, ta, ta)
            assert rep.agree and rep.value
        for ta, tb in itertools.combinations(cons, 2):
            assert commuting_equivalences_report(A, ta, tb).agree


def test_groups_have_commuting_congruences():
    for g in (cyclic_group(4), symmetric_group(3)):
        cons = congruence_lattice(g).congruences
        for ta in cons:
            for tb in cons:
                assert commute(ta, tb)


def test_surjection_composition_and_cancellation():
    z4, z2 = cyclic_group(4), cyclic_group(2)
    f = Homomorphism(z4, z2, (0, 1, 0, 1))
    g = Homomorphism(z2, cyclic_group(1), (0, 0))
    assert g.compose(f).surjective
    # if the composite is surjective the outer map is surjective
    for h in homs(z4, z2):
        if g.compose(h).surjective:
            assert g.surjective


def test_kernel_order_embedding():
    # f factors through g exactly when ker g refines ker f
    A = cyclic_group(4)
    cons = congruence_lattice(A).congruences
    quotient_maps = [quotient(A, t)[1] for t in cons]
    for f in quotient_maps:
        for g in quotient_maps:
            factors = any(h.compose(g) == f for h in homs(g.cod, f.cod))
            assert factors == kernel_congruence(g).leq(kernel_congruence(f))


def test_barr_exact_witness(catalog_algebras):
    # every compatible partition is the kernel of its own projection
    for A in catalog_algebras.values():
        for theta in congruence_lattice(A).congruences:
            _, proj = quotient(A, theta)
            assert kernel_congruence(proj) == theta


def test_join_is_composite_when_commuting(catalog_algebras):
    for A in catalog_algebras.values():
        cons = congruence_lattice(A).congruences
        for ta in cons:
            for tb in cons:
                if commute(ta, tb):
                    assert ta.join(tb).relation() == compose_relations(ta, tb)


def test_empty_semigroup_is_subterminal():
    empty = empty_semigroup()
    terminal = one_element_algebra(empty.sig)
    maps = homs(empty, terminal)
    assert len(maps) == 1 and maps[0].injective


def test_algebra_text_roundtrip():
    z4 = cyclic_group(4)
    text = algebra_to_text(z4)
    back = parse_algebra(text)
    assert back == z4
    with pytest.raises(AlgebraError):
        parse_algebra("algebra 2\nsig f/1\ntable f 0 5\n")


def test_named_algebras():
    assert named_algebra("z4").n == 4
    assert named_algebra("semigroup0").n == 0
    with pytest.raises(AlgebraError):
        named_algebra("nope")
