import pytest

from reconlab.core import all_isomorphisms, is_isomorphic
from reconlab.corpus import IDS, CorpusError, Role, corpus_get, corpus_pairs
from reconlab.invariants import Flavor, same_deck


def test_c8_entry():
    e = corpus_get("c8")
    assert e.role is Role.SINGLE and e.digraphs[0].n == 8


@pytest.mark.parametrize("pid,n", [("fig7-pair1", 5), ("fig7-pair2", 5), ("fig7-pair3", 6), ("fig8-pair1", 6), ("fig8-pair2", 8)])
def test_pair_sizes(pid, n):
    e = corpus_get(pid)
    assert e.role is Role.PAIR and [D.n for D in e.digraphs] == [n, n]


def test_pairs_hypomorphic_not_isomorphic_not_da():
    for e in corpus_pairs():
        D, E = e.digraphs
        assert same_deck(D, E, Flavor.CARD)
        assert not is_isomorphic(D, E)
        assert not same_deck(D, E, Flavor.DACARD)


def test_c8_automorphism_v1_to_v5():
    C = corpus_get("c8").digraphs[0]
    assert any(f[0] == 4 for f in all_isomorphisms(C, C))


def test_unknown_id():
    with pytest.raises(CorpusError):
        corpus_get("fig4-pair1")


def test_every_id_loads():
    assert [corpus_get(i).id for i in IDS] == list(IDS)
