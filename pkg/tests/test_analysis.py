import itertools

import pytest

from reconlab.analysis import (
    ISOMORPHIC,
    NDT_PER_DACARD,
    PASTING_READING,
    STRICT_READING,
    SIsoWitness,
    Verdict,
    certify_da_reconstructible,
    iso_characterization,
    pair_report,
    s_isomorphism,
)
from reconlab.core import GraphError, automorphism_orbits, build, is_isomorphic
from reconlab.corpus import corpus_get
from reconlab.invariants import DeckError, Flavor
from reconlab.search import ScanConfig, enumerate_small


def _rigid6():
    return [G for G in enumerate_small(ScanConfig(6, "graph")) if len(automorphism_orbits(G)) == 6]


def test_s_iso_isomorphic(dp3):
    assert s_isomorphism(dp3, dp3) == ISOMORPHIC


def test_s_iso_witness_form():
    D = build(3, [(0, 1)])
    E = build(3, [(1, 0)])
    assert s_isomorphism(D, E) == ISOMORPHIC
    D = build(4, [(0, 1), (1, 2), (2, 3)])
    E = build(4, [(0, 1), (2, 1), (2, 3)])
    w = s_isomorphism(D, E)
    assert isinstance(w, SIsoWitness)
    assert is_isomorphic(w.F.with_arcs([(w.u, w.v)]), D)
    assert is_isomorphic(w.F.with_arcs([(w.v, w.u)]), E)


def test_s_iso_fig8():
    D, E = corpus_get("fig8-pair1").digraphs
    assert isinstance(s_isomorphism(D, E), SIsoWitness)


def test_s_iso_size_mismatch(dp3):
    with pytest.raises(GraphError):
        s_isomorphism(dp3, build(4, []))


def test_dichotomy_self(p3u):
    v = iso_characterization(p3u, p3u, Flavor.DACARD)
    assert v.verdict is Verdict.ALL_PAIRS and v.isomorphic and v.complete


def test_dichotomy_relabelled():
    D = build(5, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 3), (0, 3)])
    v = iso_characterization(D, D.relabel((4, 2, 0, 1, 3)))
    assert v.verdict is Verdict.ALL_PAIRS and len(v.table) == 10


def test_dichotomy_card_flavor_fig8():
    D, E = corpus_get("fig8-pair1").digraphs
    v = iso_characterization(D, E, Flavor.CARD)
    assert any(v.table.values()) and not v.isomorphic


def test_dichotomy_deck_mismatch(dp3, p3u):
    with pytest.raises(DeckError):
        iso_characterization(dp3, p3u)


def test_certify_none_examples():
    assert certify_da_reconstructible(build(3, [(0, 1), (1, 2), (2, 0)])) is None
    for arcs in ([(0, 1), (0, 2), (0, 3)], [(1, 0), (0, 2), (3, 0)], [(0, 1), (1, 0), (2, 0), (0, 3)]):
        assert certify_da_reconstructible(build(4, arcs)) is None


def test_certify_strict_rigid6_impossible():
    rigid = _rigid6()
    assert len(rigid) == 8
    assert all(certify_da_reconstructible(G) is None for G in rigid)


def test_certify_pasting_reading_rigid6():
    G = _rigid6()[0]
    D = build(G.n, [(i, j) for i, j in G.arcs if i < j])
    cert = certify_da_reconstructible(D, reading="pasting")
    assert cert is not None
    assert cert.reading == PASTING_READING and cert.cross_check_pastings == 1
    assert cert.multiplicity["outside_matches"] == 0


def test_certify_strict_n8():
    D = build(8, [(2, 7), (3, 6), (4, 5), (4, 7), (5, 6), (5, 7), (6, 7)], symmetric=True)
    cert = certify_da_reconstructible(D)
    assert cert is not None and cert.reading == STRICT_READING


def test_certify_bad_reading(dp3):
    with pytest.raises(ValueError):
        certify_da_reconstructible(dp3, reading="loose")


def test_pair_report_fig7():
    D, E = corpus_get("fig7-pair1").digraphs
    r = pair_report(D, E)
    assert r.hypomorphic and not r.isomorphic and not r.da_hypomorphic
    assert r.iso_pasted_card_pair is None


def test_pair_report_fig8_pair2():
    D, E = corpus_get("fig8-pair2").digraphs
    r = pair_report(D, E)
    assert r.hypomorphic and not r.isomorphic and r.s_isomorphic
    assert r.iso_pasted_card_pair is not None
    assert r.distinguishing_da_invariant == NDT_PER_DACARD


def test_pair_report_degenerate(dp3):
    r = pair_report(dp3, dp3)
    assert r.hypomorphic and r.da_hypomorphic and r.isomorphic and r.s_isomorphic


def test_dacard_dichotomy_self_pairs_n4():
    for D in itertools.islice(enumerate_small(ScanConfig(4, "digraph")), 0, 218, 9):
        v = iso_characterization(D, D.relabel((3, 1, 0, 2)))
        assert v.verdict is Verdict.ALL_PAIRS
