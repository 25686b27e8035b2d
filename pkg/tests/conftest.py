import pytest

from softsheaf import corpus, finalg, order


@pytest.fixture(scope="session")
def catalog_lattices():
    return {
        "chain1": order.chain(1),
        "chain2": order.chain(2),
        "chain3": order.chain(3),
        "chain4": order.chain(4),
        "chain5": order.chain(5),
        "bool4": order.boolean_lattice(2),
        "n5": order.pentagon(),
        "m3": order.diamond_m3(),
    }


@pytest.fixture(scope="session")
def catalog_algebras():
    return {
        "set3": finalg.set_algebra(3),
        "z4": finalg.cyclic_group(4),
        "z2z2": finalg.klein_four(),
        "sl2": finalg.two_element_semilattice(),
    }


@pytest.fixture(scope="session")
def group_corpus():
    return {
        "z1": finalg.cyclic_group(1),
        "z2": finalg.cyclic_group(2),
        "z3": finalg.cyclic_group(3),
        "z4": finalg.cyclic_group(4),
        "z5": finalg.cyclic_group(5),
        "z6": finalg.cyclic_group(6),
        "z7": finalg.cyclic_group(7),
        "z8": finalg.cyclic_group(8),
        "z2z2": finalg.klein_four(),
        "s3": finalg.symmetric_group(3),
        "d4": finalg.dihedral_group_8(),
        "q8": finalg.quaternion_group(),
    }


@pytest.fixture(scope="session")
def small_corpus_lattices():
    return corpus.corpus_lattices(5)


@pytest.fixture(scope="session")
def corpus_lattices_6():
    return corpus.corpus_lattices(6)


@pytest.fixture(scope="session")
def corpus_posets_5():
    return corpus.corpus_posets(5)
