"""Acceptance criteria 1-10, one PASS/FAIL line each.

Run directly (``python tests/test_acceptance.py``) or through pytest; the
lines are printed either way.
"""

from __future__ import annotations

import time
from collections import defaultdict
from itertools import combinations

import pytest

from reconlab.analysis import (
    certify_da_reconstructible,
    iso_characterization,
    pair_report,
    Verdict,
)
from reconlab.core import (
    Digraph,
    TheoremViolation,
    automorphism_orbits,
    canonical_code,
    canonical_form,
    degree_triple,
    is_isomorphic,
    underlying_graph,
)
from reconlab.corpus import corpus_get, corpus_pairs
from reconlab.invariants import (
    CountMode,
    Flavor,
    automorphism_count,
    count_subgraphs_at,
    dacard_of,
    deck,
    host_degrees,
    induced_path2_counts,
    kelly_census,
    ndq_reconstruction,
    neighbor_profiles,
    same_deck,
    star,
    subgraph_census,
    vertex_params_from_card,
    card_of,
)
from reconlab.pasting import (
    completions,
    enumerate_pastings,
    pasting_from_host,
    pasting_parameter_report,
)
from reconlab.search import (
    ScanConfig,
    deck_collision_scan,
    enumerate_small,
    pasted_pair_scan,
)

pytestmark = pytest.mark.slow

_lines: dict[int, str] = {}
# pastings produced by criteria 3-5, re-checked by criterion 7
_generated: list[tuple] = []


@pytest.fixture
def say(capsys):
    def _say(k: int, ok: bool, detail: str, seconds: float, limit: float):
        within = seconds <= limit
        status = "PASS" if ok and within else "FAIL"
        line = f"CRITERION {k}: {status} ({seconds:.1f}s, limit {limit:.0f}s) {detail}"
        _lines[k] = line
        with capsys.disabled():
            print("\n" + line)
        return ok and within

    return _say


def _digraphs_upto(n):
    for m in range(3, n + 1):
        yield from enumerate_small(ScanConfig(m, "digraph"))


def test_criterion_1_corpus_validation(say):
    t = time.monotonic()
    rows = []
    for e in corpus_pairs():
        D, E = e.digraphs
        rows.append(
            (e.id, same_deck(D, E, Flavor.CARD), is_isomorphic(D, E), same_deck(D, E, Flavor.DACARD))
        )
    ok = all(h and not i and not da for _, h, i, da in rows)
    bad = [r[0] for r in rows if not (r[1] and not r[2] and not r[3])]
    assert say(1, ok, f"{len(rows)} pairs hypomorphic, non-isomorphic, not da-hypomorphic; bad={bad}", time.monotonic() - t, 5)


def test_criterion_2_pasted_pair_split(say):
    t = time.monotonic()
    got = {}
    for e in corpus_pairs():
        r = pair_report(*e.digraphs)
        got[e.id] = (r.iso_pasted_card_pair is not None, r.s_isomorphic)
    want = {i: (i.startswith("fig8"), i.startswith("fig8")) for i in got}
    ok = got == want
    assert say(2, ok, f"(pasted pair, S-isomorphic) per pair: {got}", time.monotonic() - t, 60)


def test_criterion_3_c8_dapastings(say):
    t = time.monotonic()
    C = corpus_get("c8").digraphs[0]
    p1 = pasting_from_host(C, 2, 0, Flavor.DACARD)
    p2 = pasting_from_host(C, 2, 4, Flavor.DACARD)
    c1, c2 = completions(p1), completions(p2)
    arcs = (p1.body.base.arc_count, p2.body.base.arc_count)
    moves = any(0 in orb and 4 in orb for orb in automorphism_orbits(C))
    enumerated = enumerate_pastings(p1.cards[0], p1.cards[1], p1.ref, Flavor.DACARD)
    unique = len(c1) == 1 and len(c2) == 1 and is_isomorphic(c1[0], C) and is_isomorphic(c2[0], C)
    ok = arcs == (27, 26) and p1 != p2 and unique and moves and p1 in enumerated
    _generated.extend([(p1, C), (p2, C)])
    detail = f"arcs={arcs} labeled-isomorphic={p1 == p2} unique C8 completion={unique} v1~v5={moves}"
    assert say(3, ok, detail, time.monotonic() - t, 5)


def _external_key(Y, x, y):
    colors = [0] * Y.n
    colors[x] = colors[y] = 1
    return canonical_form(Y, colors).code


def test_criterion_4_unique_completion_and_isomorphism(say):
    t = time.monotonic()
    hosts = pastings = violations = pairs = 0
    first = None
    for G in _digraphs_upto(5):
        hosts += 1
        groups = defaultdict(list)
        for x, y in combinations(range(G.n), 2):
            P = pasting_from_host(G, x, y, Flavor.DACARD)
            pastings += 1
            try:
                comps = completions(P)
            except TheoremViolation:
                comps = []
            if len(comps) != 1 or not is_isomorphic(comps[0], G):
                violations += 1
                first = first or (G, x, y, "completion count")
            _generated.append((P, G))
            groups[(dacard_of(G, x), dacard_of(G, y))].append((P, x, y))
            groups[(dacard_of(G, y), dacard_of(G, x))].append((pasting_from_host(G, y, x, Flavor.DACARD), y, x))
        for members in groups.values():
            for (P1, x1, y1), (P2, x2, y2) in combinations(members, 2):
                pairs += 1
                same_label = P1 == P2
                same_ext = _external_key(G, x1, y1) == _external_key(G, x2, y2)
                if same_label != same_ext:
                    violations += 1
                    first = first or (G, (x1, y1), (x2, y2), "labeled vs external iso")
    detail = f"{hosts} hosts, {pastings} dapastings, {pairs} same-dacard pairs, violations={violations} first={first}"
    assert say(4, violations == 0, detail, time.monotonic() - t, 600)


def test_criterion_5_dichotomy(say):
    t = time.monotonic()
    classes = deck_collision_scan(ScanConfig(5, "digraph", "dacard"))
    cross = [(a, b) for c in classes for a, b in combinations(c.digraphs(), 2)]
    checked = violations = 0
    first = None
    pairs = [(G, G) for G in _digraphs_upto(5)] + cross
    for G, H in pairs:
        checked += 1
        try:
            v = iso_characterization(G, H, Flavor.DACARD)
            ok = (v.verdict is Verdict.ALL_PAIRS) == is_isomorphic(G, H) and v.verdict is not Verdict.MIXED
        except TheoremViolation as e:
            ok = False
            first = first or str(e)
        if not ok:
            violations += 1
            first = first or (G, H)
    detail = (
        f"{checked} dadeck-equal pairs ({len(cross)} non-isomorphic; the rest are self-pairs), "
        f"violations={violations} first={first}"
    )
    assert say(5, violations == 0, detail, time.monotonic() - t, 900)


def _kelly_mismatches(D, dk):
    bad = 0
    for k in range(1, D.n):
        for mode in (CountMode.SUBGRAPH, CountMode.INDUCED):
            if kelly_census(dk, k, mode) != +subgraph_census(D, k, mode):
                bad += 1
    return bad


def _graph_param_mismatches(G, dk):
    bad = 0
    for v in range(G.n):
        p = vertex_params_from_card(card_of(G, v), dk)
        d = G.out[v].bit_count()
        nd = tuple(sorted(G.out[w].bit_count() for w in range(G.n) if G.out[v] >> w & 1))
        if p.degree != d or p.nd != nd or p.ip2 != induced_path2_counts(G, v):
            bad += 1
            continue
        for m, (centre, leaf) in p.stars.items():
            if centre + leaf != count_subgraphs_at(star(m), G, v):
                bad += 1
    return bad


def test_criterion_6_oracle_equivalence(say):
    t = time.monotonic()
    kelly_bad = param_bad = spd_bad = 0
    for n in range(3, 7):
        for G in enumerate_small(ScanConfig(n, "graph")):
            dk = deck(G)
            kelly_bad += _kelly_mismatches(G, dk)
            param_bad += _graph_param_mismatches(G, dk)
            if sorted(host_degrees(dk)) != sorted(r.bit_count() for r in G.out):
                param_bad += 1
    ndq_cases = ndq_wrong = 0
    undetermined = []
    for D in _digraphs_upto(5):
        dk = deck(D)
        kelly_bad += _kelly_mismatches(D, dk)
        dadk = deck(D, Flavor.DACARD)
        for v in range(D.n):
            p = vertex_params_from_card(card_of(D, v), dk, dep=degree_triple(D, v).dep)
            if p.dt != degree_triple(D, v):
                spd_bad += 1
            ndq_cases += 1
            found, _ = ndq_reconstruction(dacard_of(D, v), dadk)
            truth = neighbor_profiles(D, v)[1]
            if truth not in found:
                ndq_wrong += 1
            elif len(found) > 1:
                undetermined.append((D, v, found))
    first = ""
    shared = 0
    for D, v, found in undetermined:
        twins = [w for w in range(D.n) if w != v and dacard_of(D, w) == dacard_of(D, v)]
        if any(neighbor_profiles(D, w)[1] != neighbor_profiles(D, v)[1] for w in twins):
            shared += 1
    if undetermined:
        D, v, found = undetermined[0]
        first = (
            f"; {shared} of them share an identical dacard with a vertex of different ndq; "
            f"first undetermined: {D!r} vertex {v} candidates {found}"
        )
    ok = kelly_bad == 0 and param_bad == 0 and spd_bad == 0 and ndq_wrong == 0 and not undetermined
    detail = (
        f"kelly mismatches={kelly_bad}, degree/ND/star/ip mismatches={param_bad}, dt mismatches={spd_bad}, "
        f"ndq wrong={ndq_wrong}, ndq not determined by dacard+dadeck={len(undetermined)} of {ndq_cases} "
        f"vertex cases ({len({canonical_code(D) for D, _, _ in undetermined})} digraphs){first}"
    )
    assert say(6, ok, detail, time.monotonic() - t, 600)


def test_criterion_7_pasting_identities(say):
    t = time.monotonic()
    if not _generated:
        pytest.skip("criteria 3-5 did not run in this session")
    graph_pastings = []
    for G in enumerate_small(ScanConfig(5, "graph")):
        for x, y in combinations(range(G.n), 2):
            graph_pastings.append((pasting_from_host(G, x, y, Flavor.CARD), G))
    checked = bad = graph_checked = 0
    first = None
    for P, G in _generated + graph_pastings:
        rep = pasting_parameter_report(P, G)
        checked += 1
        graph_checked += G.symmetric
        if not rep.ok:
            bad += 1
            first = first or (G, P.externals, [c.name for c in rep.falsifications])
    detail = f"{checked} pastings ({graph_checked} on graphs), falsifications={bad} first={first}"
    assert say(7, bad == 0, detail, time.monotonic() - t, 600)


def test_criteria_8_9_hunt(say):
    t = time.monotonic()
    card5 = deck_collision_scan(ScanConfig(5, "digraph", "card"))
    sets = [{m.code for m in c.members} for c in card5]
    found = {}
    for pid in ("fig7-pair1", "fig7-pair2"):
        D, E = corpus_get(pid).digraphs
        found[pid] = any({canonical_code(D), canonical_code(E)} <= s for s in sets)
    da5 = deck_collision_scan(ScanConfig(5, "digraph", "dacard"))
    t_digraph = time.monotonic() - t
    t2 = time.monotonic()
    graphs = {n: len(deck_collision_scan(ScanConfig(n, "graph", "card"))) for n in range(4, 8)}
    t_graph = time.monotonic() - t2
    ok8 = all(found.values()) and not da5 and not any(graphs.values()) and t_graph <= 600
    detail = (
        f"digraph n=5 card classes={len(card5)} corpus pairs found={found}; dacard classes={len(da5)}; "
        f"graph classes n=4..7={graphs} (graph scans {t_graph:.1f}s)"
    )
    t3 = time.monotonic()
    part = pasted_pair_scan(ScanConfig(5, "digraph", "card"))
    t_76 = time.monotonic() - t3
    ok8 = say(8, ok8, detail, t_digraph + t_76, 1800)
    detail9 = (
        f"{len(part.pasted)} pairs with a pasted card pair, {len(part.unpasted)} without, "
        f"da-hypomorphic among pasted={len(part.violations)}"
    )
    ok9 = say(9, not part.violations and part.complete, detail9, t_digraph + t_76, 1800)
    assert ok8 and ok9


def test_criterion_10_da_certificate(say):
    t = time.monotonic()
    rigid6 = [G for G in enumerate_small(ScanConfig(6, "graph")) if automorphism_count(G) == 1]
    certs = [(G, certify_da_reconstructible(G)) for G in rigid6]
    hit = next(((G, c) for G, c in certs if c is not None), None)
    ok = hit is not None
    detail = f"{len(rigid6)} rigid 6-vertex graphs, certificates={sum(c is not None for _, c in certs)}"
    if not ok:
        # a 6-vertex graph leaves 4 vertices after deleting two, and no
        # 4-vertex graph is rigid, so psi is never unique; show the smallest
        # order where the certifier does succeed
        for G in enumerate_small(ScanConfig(8, "graph")):
            c = certify_da_reconstructible(G)
            if c is not None:
                D = _some_biorientation(G)
                cd = certify_da_reconstructible(D)
                loose = sum(certify_da_reconstructible(R, reading="pasting") is not None for R in rigid6)
                detail += (
                    f"; none possible at n=6 (every 4-vertex graph has a non-trivial automorphism). "
                    f"Under the looser unique-pasting reading {loose} of {len(rigid6)} rigid 6-vertex graphs certify. "
                    f"Supplementary: first certified graph at n=8 {G!r}, biorientation cross-check "
                    f"{'passes' if cd is not None and cd.cross_check_pastings == 1 else 'fails'}"
                )
                break
    assert say(10, ok, detail, time.monotonic() - t, 300)


def _some_biorientation(G):
    rows = list(G.out)
    for x, y in combinations(range(G.n), 2):
        if G.has_arc(x, y) and (x + y) % 2:
            rows[y] &= ~(1 << x)
    D = Digraph(G.n, tuple(rows))
    assert underlying_graph(D) == G
    return D


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
