import itertools

from hypothesis import given, settings
from hypothesis import strategies as st

from reconlab.analysis import ISOMORPHIC, s_isomorphism
from reconlab.core import all_isomorphisms, build, canonical_code, is_isomorphic, isomorphism, labeled_isomorphic
from reconlab.invariants import (
    ARC,
    BIARC,
    TRIANGLE,
    CountMode,
    Flavor,
    card_of,
    count_subgraphs,
    count_subgraphs_at,
    dacard_of,
    deck,
    kelly_count,
    same_deck,
    star,
)
from reconlab.pasting import completions, enumerate_pastings, pasting_from_host


@st.composite
def digraphs(draw, lo=1, hi=6, symmetric=False):
    n = draw(st.integers(lo, hi))
    pairs = [(i, j) for i in range(n) for j in range(n) if i != j and (not symmetric or i < j)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return build(n, chosen, symmetric=symmetric)


@st.composite
def relabelled(draw, lo=1, hi=6):
    D = draw(digraphs(lo, hi))
    perm = draw(st.permutations(range(D.n)))
    return D, D.relabel(perm)


@settings(max_examples=150, deadline=None)
@given(relabelled())
def test_canonical_code_invariant(pair):
    D, E = pair
    assert canonical_code(D) == canonical_code(E)
    f = isomorphism(D, E)
    assert f is not None and {(f[i], f[j]) for i, j in D.arcs} == E.arcs


@settings(max_examples=150, deadline=None)
@given(digraphs(), digraphs())
def test_isomorphism_iff_codes(D, E):
    same = D.n == E.n and canonical_code(D) == canonical_code(E)
    assert (isomorphism(D, E) is not None) == same


@settings(max_examples=60, deadline=None)
@given(digraphs(4, 6), st.sampled_from([ARC, BIARC, TRIANGLE, star(3), build(3, [(0, 1), (1, 2)])]), st.sampled_from(list(CountMode)))
def test_kelly_consistency(D, F, mode):
    dk = deck(D)
    assert kelly_count(F, dk, mode) == count_subgraphs(F, D, mode)
    assert kelly_count(F, dk, mode, at_card=card_of(D, 0)) == count_subgraphs_at(F, D, 0, mode)


@settings(max_examples=80, deadline=None)
@given(digraphs(2, 5), digraphs(2, 5))
def test_s_isomorphism_symmetric(D, E):
    if D.n != E.n:
        return
    assert (s_isomorphism(D, E) is None) == (s_isomorphism(E, D) is None)


@settings(max_examples=40, deadline=None)
@given(digraphs(3, 6), st.data())
def test_dacard_pasting_unique_completion(G, data):
    u, v = data.draw(st.lists(st.integers(0, G.n - 1), min_size=2, max_size=2, unique=True))
    Ys = completions(pasting_from_host(G, u, v, Flavor.DACARD))
    assert len(Ys) == 1 and is_isomorphic(Ys[0], G)


def _external_iso(P, Q):
    """Some isomorphism between the completions carrying the external set onto the external set."""
    (Y,), (Z,) = completions(P), completions(Q)
    return any({f[w] for w in P.externals} == set(Q.externals) for f in all_isomorphisms(Y, Z))


@settings(max_examples=30, deadline=None)
@given(digraphs(3, 5), digraphs(3, 5), st.data())
def test_dapasting_iso_iff_completion_iso(G, H, data):
    if G.n != H.n or not same_deck(G, H, Flavor.DACARD):
        H = G.relabel(data.draw(st.permutations(range(G.n))))
    x, y = data.draw(st.lists(st.integers(0, G.n - 1), min_size=2, max_size=2, unique=True))
    A, B = dacard_of(G, x), dacard_of(G, y)
    ref = deck(G, Flavor.DACARD)
    for P, Q in itertools.product(enumerate_pastings(A, B, ref, Flavor.DACARD), repeat=2):
        assert labeled_isomorphic(P.body, Q.body) == _external_iso(P, Q)


@settings(max_examples=30, deadline=None)
@given(digraphs(3, 5, symmetric=True))
def test_graph_card_flavor_matches_dacard(G):
    for x, y in itertools.combinations(range(G.n), 2):
        card = enumerate_pastings(card_of(G, x), card_of(G, y), deck(G), Flavor.CARD)
        da = enumerate_pastings(dacard_of(G, x), dacard_of(G, y), deck(G, Flavor.DACARD), Flavor.DACARD)
        assert len(card) == len(da)


@settings(max_examples=40, deadline=None)
@given(digraphs(3, 5), digraphs(3, 5))
def test_ref_is_part_of_pasting_identity(G, H):
    if G.n != H.n or deck(G) == deck(H):
        return
    x, y = 0, 1
    A, B = card_of(G, x), card_of(G, y)
    mine = enumerate_pastings(A, B, deck(G))
    theirs = enumerate_pastings(A, B, deck(H))
    assert not set(mine) & set(theirs)


@settings(max_examples=60, deadline=None)
@given(relabelled(2, 6))
def test_relabelled_hosts_share_dadeck(pair):
    D, E = pair
    assert same_deck(D, E, Flavor.DACARD) and s_isomorphism(D, E) == ISOMORPHIC
