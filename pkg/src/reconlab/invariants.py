"""Decks, dadecks and the parameters recoverable from them.

Every from-deck computation here has a direct counterpart computed on the
host; the test-suite checks one against the other.
"""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, product
from math import comb
from typing import NamedTuple, Sequence

from . import _backend
from .core import (
    DegreeTriple,
    Digraph,
    GraphError,
    TheoremViolation,
    build,
    canonical_code,
    decode,
    degree_triple,
    degree_triples,
    delete_vertex,
    neighbours,
)


class DeckError(ValueError):
    """A deck or dadeck that no digraph could have produced."""


class Flavor(str, enum.Enum):
    CARD = "card"
    DACARD = "dacard"


class CountMode(str, enum.Enum):
    SUBGRAPH = "subgraph"
    INDUCED = "induced"


@dataclass(frozen=True, order=True)
class Card:
    code: int

    def digraph(self) -> Digraph:
        return decode(self.code)

    def __str__(self):
        return f"{self.code:x}"


@dataclass(frozen=True, order=True)
class Dacard:
    card: Card
    dt: DegreeTriple

    def digraph(self) -> Digraph:
        return self.card.digraph()

    def __str__(self):
        return f"{self.card} {self.dt.a} {self.dt.b} {self.dt.c}"


@dataclass(frozen=True)
class Deck:
    host_n: int
    entries: tuple[Card, ...]
    graph: bool = field(default=False, compare=False)

    flavor = Flavor.CARD

    def __post_init__(self):
        if len(self.entries) != self.host_n:
            raise DeckError(f"deck of a {self.host_n}-vertex host needs {self.host_n} cards")

    @property
    def cards(self) -> tuple[Card, ...]:
        return self.entries

    def count(self, card: Card) -> int:
        return self.entries.count(card)


@dataclass(frozen=True)
class Dadeck:
    host_n: int
    entries: tuple[Dacard, ...]
    graph: bool = field(default=False, compare=False)

    flavor = Flavor.DACARD

    def __post_init__(self):
        if len(self.entries) != self.host_n:
            raise DeckError(f"dadeck of a {self.host_n}-vertex host needs {self.host_n} dacards")

    @property
    def cards(self) -> tuple[Card, ...]:
        return tuple(sorted(d.card for d in self.entries))

    @property
    def triples(self) -> list[DegreeTriple]:
        return sorted(d.dt for d in self.entries)

    def count(self, dacard: Dacard) -> int:
        return self.entries.count(dacard)

    def as_deck(self) -> Deck:
        return Deck(self.host_n, self.cards, self.graph)


def card_of(D: Digraph, x: int) -> Card:
    return Card(canonical_code(delete_vertex(D, x)))


def dacard_of(D: Digraph, x: int) -> Dacard:
    return Dacard(card_of(D, x), degree_triple(D, x))


def deck(D: Digraph, flavor: Flavor | str = Flavor.CARD) -> Deck | Dadeck:
    flavor = Flavor(flavor)
    if D.n < 2:
        raise DeckError("decks need at least two vertices")
    return _deck_cached(D, flavor)


@lru_cache(maxsize=1 << 16)
def _deck_cached(D: Digraph, flavor: Flavor) -> Deck | Dadeck:
    if flavor is Flavor.CARD:
        return Deck(D.n, tuple(sorted(card_of(D, x) for x in range(D.n))), D.symmetric)
    return Dadeck(D.n, tuple(sorted(dacard_of(D, x) for x in range(D.n))), D.symmetric)


def same_deck(D: Digraph, E: Digraph, flavor: Flavor | str = Flavor.CARD) -> bool:
    return D.n == E.n and deck(D, flavor) == deck(E, flavor)


def deck_text(dk: Deck | Dadeck) -> str:
    """One card code (hex) per line; dacard lines carry the triple."""
    head = f"# {dk.flavor.value} host_n={dk.host_n} graph={int(dk.graph)}"
    return "\n".join([head, *map(str, dk.entries)]) + "\n"


def parse_deck(text: str) -> Deck | Dadeck:
    graph = None
    rows = []
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        if line.startswith("#"):
            for tok in line[1:].split():
                if tok.startswith("graph="):
                    graph = tok == "graph=1"
            continue
        rows.append(line.split())
    if not rows:
        raise DeckError("empty deck")
    widths = {len(r) for r in rows}
    if widths == {1}:
        entries = tuple(sorted(Card(int(r[0], 16)) for r in rows))
        dk_graph = graph if graph is not None else all(c.digraph().symmetric for c in entries)
        return Deck(len(entries), entries, dk_graph)
    if widths == {4}:
        entries = tuple(sorted(Dacard(Card(int(r[0], 16)), DegreeTriple(*map(int, r[1:]))) for r in rows))
        dk_graph = graph if graph is not None else all(d.dt.a == d.dt.b == 0 for d in entries)
        return Dadeck(len(entries), entries, dk_graph)
    raise DeckError("mixed card and dacard lines")


# -- subgraph counting --------------------------------------------------------


@lru_cache(maxsize=1 << 18)
def _embeddings(F: Digraph, D: Digraph, induced: bool) -> int:
    return _backend.count_embeddings(F.n, F.out, D.n, D.out, induced)


def automorphism_count(F: Digraph) -> int:
    return _embeddings(F, F, True)


def count_subgraphs(F: Digraph, D: Digraph, mode: CountMode | str = CountMode.SUBGRAPH) -> int:
    """S(F, D) or s(F, D) by direct embedding enumeration."""
    induced = CountMode(mode) is CountMode.INDUCED
    return _embeddings(F, D, induced) // automorphism_count(F)


def count_subgraphs_at(F: Digraph, D: Digraph, v: int, mode: CountMode | str = CountMode.SUBGRAPH) -> int:
    """S(F, D, v): copies of F in D that use vertex v."""
    return count_subgraphs(F, D, mode) - count_subgraphs(F, delete_vertex(D, v), mode)


def _kelly_divide(total: int, host_n: int, k: int) -> int:
    if host_n - k <= 0:
        raise DeckError(f"Kelly counting needs a pattern smaller than the host ({k} >= {host_n})")
    q, r = divmod(total, host_n - k)
    if r:
        raise DeckError(f"non-integral Kelly count {total}/{host_n - k}: not a legitimate deck")
    return q


def kelly_count(
    F: Digraph,
    dk: Deck | Dadeck,
    mode: CountMode | str = CountMode.SUBGRAPH,
    at_card: Card | Dacard | None = None,
) -> int:
    """S(F,G) (or s) from the deck alone; with ``at_card`` the count at that vertex."""
    total = sum(count_subgraphs(F, c.digraph(), mode) for c in dk.cards)
    whole = _kelly_divide(total, dk.host_n, F.n)
    if at_card is None:
        return whole
    if isinstance(at_card, Dacard):
        at_card = at_card.card
    if at_card not in dk.cards:
        raise DeckError("card is not a member of the deck")
    return whole - count_subgraphs(F, at_card.digraph(), mode)


@lru_cache(maxsize=1 << 14)
def _spanning_census(code: int) -> dict[int, int]:
    """For the k-vertex digraph ``code``: spanning-subgraph class -> count."""
    X = decode(code)
    arcs = sorted(X.arcs)
    tally: Counter[int] = Counter()
    for mask in range(1 << len(arcs)):
        tally[canonical_code(build(X.n, [a for i, a in enumerate(arcs) if mask >> i & 1]))] += 1
    return dict(tally)


def subgraph_census(D: Digraph, k: int, mode: CountMode | str = CountMode.SUBGRAPH) -> Counter[int]:
    """Count of every k-vertex class (by canonical code) as a subgraph of D.

    Enumerates vertex subsets, so it is independent of the embedding counter
    used by ``count_subgraphs``.
    """
    induced: Counter[int] = Counter()
    for W in combinations(range(D.n), k):
        induced[canonical_code(D.induced(W))] += 1
    if CountMode(mode) is CountMode.INDUCED:
        return induced
    out: Counter[int] = Counter()
    for code, mult in induced.items():
        for sub, cnt in _spanning_census(code).items():
            out[sub] += mult * cnt
    return out


def kelly_census(dk: Deck | Dadeck, k: int, mode: CountMode | str = CountMode.SUBGRAPH) -> Counter[int]:
    """``subgraph_census`` of the host, rebuilt from its cards."""
    total: Counter[int] = Counter()
    for c in dk.cards:
        total.update(subgraph_census(c.digraph(), k, mode))
    return Counter({code: _kelly_divide(t, dk.host_n, k) for code, t in total.items()})


ARC = build(2, [(0, 1)])
BIARC = build(2, [(0, 1), (1, 0)])
TRIANGLE = build(3, [(0, 1), (1, 2), (0, 2)], symmetric=True)


def star(m: int) -> Digraph:
    """Undirected K_{1,m-1}: centre 0 and m-1 leaves."""
    return build(m, [(0, j) for j in range(1, m)], symmetric=True)


def arc_census(dk: Deck | Dadeck) -> tuple[int, int]:
    """(unpaired arcs, biarcs) of the host, from its deck."""
    if dk.host_n < 3:
        raise DeckError("arc census from a deck needs at least three vertices")
    return (
        kelly_count(ARC, dk, CountMode.INDUCED),
        kelly_count(BIARC, dk, CountMode.INDUCED),
    )


# -- vertex parameters --------------------------------------------------------


@dataclass
class VertexParams:
    spd: tuple[int, int]
    dt: DegreeTriple | None = None
    degree: int | None = None
    nd: tuple[int, ...] | None = None
    stars: dict[int, tuple[int, int]] = field(default_factory=dict)
    ip2: int | None = None


def host_degrees(dk: Deck | Dadeck) -> list[int]:
    """Degree sequence of a graph host, one entry per card (graphs only)."""
    _, edges = arc_census(dk)
    return sorted(edges - c.digraph().census()[1] for c in dk.cards)


def _graph_degrees(G: Digraph) -> list[int]:
    return [row.bit_count() for row in G.out]


def vertex_params_from_card(
    card: Card | Dacard,
    dk: Deck | Dadeck,
    dep: tuple[int, int] | None = None,
    star_sizes: Sequence[int] | None = None,
) -> VertexParams:
    """Parameters of the deleted vertex, using only its card and the deck."""
    if isinstance(card, Dacard):
        card = card.card
    n = dk.host_n
    if n < 3:
        raise DeckError("vertex parameters from a card need a host with at least three vertices")
    if card not in dk.cards:
        raise DeckError("card is not a member of the deck")
    C = card.digraph()
    unpaired, biarcs = arc_census(dk)
    cu, cb = C.census()
    spd = (unpaired - cu, biarcs - cb)
    params = VertexParams(spd=spd)
    if dep is not None:
        c = spd[1]
        a, b = dep[0] - c, dep[1] - c
        if a < 0 or b < 0 or a + b != spd[0]:
            raise DeckError(f"degree pair {dep} is inconsistent with split degree {spd}")
        params.dt = DegreeTriple(a, b, c)
    if not dk.graph:
        return params

    d = spd[1]
    params.degree = d
    others = host_degrees(dk)
    others.remove(d)
    in_card = _graph_degrees(C)
    nd = []
    for k in range(1, n):
        hits = sum(x < k for x in in_card) - sum(x < k for x in others)
        if hits < 0:
            raise DeckError("neighbourhood degree count went negative")
        nd.extend([k] * hits)
    if len(nd) != d:
        raise DeckError("neighbourhood degree sequence does not match the degree")
    params.nd = tuple(nd)

    sizes = range(3, n) if star_sizes is None else star_sizes
    for m in sizes:
        if not 3 <= m < n:
            raise DeckError(f"star size {m} outside 3..{n - 1}")
        at_v = kelly_count(star(m), dk, CountMode.SUBGRAPH, at_card=card)
        centre = comb(d, m - 1)
        params.stars[m] = (centre, at_v - centre)

    if n >= 4:
        leaf_paths = params.stars[3][1] if 3 in params.stars else (
            kelly_count(star(3), dk, CountMode.SUBGRAPH, at_card=card) - comb(d, 2)
        )
        tri = kelly_count(TRIANGLE, dk, CountMode.SUBGRAPH, at_card=card)
    else:
        # three vertices: no Kelly room for 3-vertex patterns
        leaf_paths = sum(k - 1 for k in nd)
        tri = 1 if biarcs == 3 else 0
    params.ip2 = leaf_paths - 2 * tri
    return params


def induced_path2_counts(G: Digraph, v: int, w: int | None = None) -> int:
    """ip(2, G, v), or ip(2, G, v, w) when ``w`` is given."""
    if not G.symmetric:
        raise GraphError("induced path counts are defined for graphs")
    nv = G.out[v]
    if w is not None:
        if nv >> w & 1:
            return 0
        return (nv & G.out[w]).bit_count()
    total = 0
    for x in range(G.n):
        if nv >> x & 1:
            total += (G.out[x] & ~nv & ~(1 << v)).bit_count()
    return total


def triangles_at(G: Digraph, v: int) -> int:
    """S(K3, G, v) by direct enumeration."""
    nv = G.out[v]
    return sum((G.out[x] & nv).bit_count() for x in range(G.n) if nv >> x & 1) // 2


# -- neighbourhood profiles ---------------------------------------------------


class Ndt(NamedTuple):
    out: tuple[DegreeTriple, ...]
    inn: tuple[DegreeTriple, ...]
    strong: tuple[DegreeTriple, ...]


class Ndq(NamedTuple):
    csdon: tuple[int, ...]
    cidon: tuple[int, ...]
    cfdin: tuple[int, ...]
    codin: tuple[int, ...]
    ctdsn: tuple[int, ...]


def neighbor_profiles(D: Digraph, v: int) -> tuple[Ndt, Ndq]:
    dts = degree_triples(D)
    o, i, s = neighbours(D, v)
    ndt = Ndt(*(tuple(sorted(dts[w] for w in grp)) for grp in (o, i, s)))
    ndq = Ndq(
        csdon=tuple(sorted(dts[w].b for w in o)),
        cidon=tuple(sorted(dts[w].id for w in o)),
        cfdin=tuple(sorted(dts[w].a for w in i)),
        codin=tuple(sorted(dts[w].od for w in i)),
        ctdsn=tuple(sorted(dts[w].c for w in s)),
    )
    return ndt, ndq


def _threshold(card_vals: list[int], host_vals: list[int], n: int) -> tuple[int, ...]:
    # vertices whose statistic dropped by one on deletion, by host value
    out = []
    for k in range(1, n):
        hits = sum(x < k for x in card_vals) - sum(x < k for x in host_vals)
        if hits < 0:
            raise DeckError("threshold count went negative: inconsistent dadeck")
        out.extend([k] * hits)
    return tuple(out)


def _neighbour_splits(card: list[DegreeTriple], host: list[DegreeTriple], csdon, cfdin, ctdsn):
    """Every way to pick out-, in- and strong neighbours among the host triples.

    Out-neighbours lose one from b, in-neighbours from a, strong ones from c;
    a choice is kept when the shifted multiset equals the card's triples and
    the chosen b / a / c values match the threshold counts.
    """
    avail = Counter(host)
    target = Counter(card)

    def choices(values, coord):
        per_value = []
        for val, mult in sorted(Counter(values).items()):
            pool = sorted(t for t in avail.elements() if t[coord] == val)
            per_value.append(sorted(set(combinations(pool, mult))))
        for combo in product(*per_value):
            yield tuple(t for grp in combo for t in grp)

    found = []
    for outs in choices(csdon, 1):
        for ins in choices(cfdin, 0):
            for strongs in choices(ctdsn, 2):
                used = Counter(outs) + Counter(ins) + Counter(strongs)
                if any(used[t] > avail[t] for t in used):
                    continue
                moved = avail - used
                moved.update(t.minus((0, 1, 0)) for t in outs)
                moved.update(t.minus((1, 0, 0)) for t in ins)
                moved.update(t.minus((0, 0, 1)) for t in strongs)
                if moved == target:
                    found.append((outs, ins, strongs))
    return found


def _extensions(C: Digraph, dt: DegreeTriple, triples: list[DegreeTriple]):
    """Hosts obtained by adding one vertex with triple ``dt`` to the card ``C``.

    Only extensions whose degree-triple multiset equals ``triples`` are kept.
    """
    m = C.n
    a, b, c = dt
    card_dts = degree_triples(C)
    avail = Counter(triples)
    avail[dt] -= 1
    verts = range(m)
    for strong in combinations(verts, c):
        rest = [w for w in verts if w not in strong]
        for outs in combinations(rest, a):
            rest2 = [w for w in rest if w not in outs]
            for ins in combinations(rest2, b):
                shifted = list(card_dts)
                for w in outs:
                    shifted[w] = shifted[w].minus((0, -1, 0))
                for w in ins:
                    shifted[w] = shifted[w].minus((-1, 0, 0))
                for w in strong:
                    shifted[w] = shifted[w].minus((0, 0, -1))
                if Counter(shifted) != +avail:
                    continue
                rows = list(C.out) + [sum(1 << w for w in outs + strong)]
                for w in ins + strong:
                    rows[w] |= 1 << m
                yield Digraph(m + 1, tuple(rows))


def ndq_reconstruction(dacard: Dacard, dk: Dadeck) -> tuple[list[Ndq], str]:
    """Every ndq the deleted vertex can have, given only its dacard and the dadeck.

    Also returns the route that settled the out/strong and in/strong
    separation: ``"threshold"`` when the triple multisets alone decide it,
    ``"extension"`` when one-vertex extensions of the card had to be checked
    against the full dadeck.
    """
    n = dk.host_n
    if n < 3:
        raise DeckError("ndq reconstruction needs a host with at least three vertices")
    if dacard not in dk.entries:
        raise DeckError("dacard is not a member of the dadeck")
    host = list(dk.triples)
    host.remove(dacard.dt)
    card = degree_triples(dacard.digraph())
    a, b, c = dacard.dt

    csdon = _threshold([t.b for t in card], [t.b for t in host], n)
    cfdin = _threshold([t.a for t in card], [t.a for t in host], n)
    ctdsn = _threshold([t.c for t in card], [t.c for t in host], n)
    ids = _threshold([t.id for t in card], [t.id for t in host], n)
    ods = _threshold([t.od for t in card], [t.od for t in host], n)
    if (len(csdon), len(cfdin), len(ctdsn)) != (a, b, c):
        raise DeckError("threshold counts disagree with the dacard's degree triple")

    # indegree thresholds see out- and strong neighbours together, outdegree
    # thresholds in- and strong ones; the joint split separates them
    answers = set()
    for outs, ins, strongs in _neighbour_splits(card, host, csdon, cfdin, ctdsn):
        cidon = tuple(sorted(t.id for t in outs))
        codin = tuple(sorted(t.od for t in ins))
        if tuple(sorted(cidon + tuple(t.id for t in strongs))) != ids:
            continue
        if tuple(sorted(codin + tuple(t.od for t in strongs))) != ods:
            continue
        answers.add((cidon, codin))
    route = "threshold"
    if len(answers) > 1:
        route = "extension"
        answers = set()
        v = n - 1
        for Y in _extensions(dacard.digraph(), dacard.dt, dk.triples):
            if deck(Y, Flavor.DACARD) == dk:
                q = neighbor_profiles(Y, v)[1]
                answers.add((q.cidon, q.codin))
    if not answers:
        raise DeckError("no host consistent with the dacard and dadeck")
    found = sorted(Ndq(csdon, ci, cfdin, co, ctdsn) for ci, co in answers)
    return found, route


def ndq_from_dacard(dacard: Dacard, dk: Dadeck) -> Ndq:
    """ndq of the deleted vertex from its dacard and the dadeck alone.

    Raises ``NdqUndetermined`` when hosts with this dadeck disagree on the
    ndq of the deleted vertex, i.e. when the answer is not a function of the
    inputs at all.
    """
    found, _ = ndq_reconstruction(dacard, dk)
    if len(found) > 1:
        raise NdqUndetermined(dacard, dk, found)
    return found[0]


class NdqUndetermined(TheoremViolation):
    def __init__(self, dacard: Dacard, dk: Dadeck, candidates: list[Ndq]):
        super().__init__(
            f"dacard {dacard} is consistent with {len(candidates)} different ndq values",
            witness=(dacard, dk, candidates),
        )
        self.candidates = candidates


class DaPairInvariants(NamedTuple):
    dt_tail_second_head: tuple
    first_tail_dt_head: tuple
    first_tail_second_head: tuple
    dt_tail_id_head: tuple
    od_tail_dt_head: tuple
    dt_ndq: tuple


def da_pair_invariants(D: Digraph) -> DaPairInvariants:
    dts = degree_triples(D)
    unpaired = [(v, w) for v, w in D.arcs if not D.has_arc(w, v)]

    def coll(f):
        return tuple(sorted(f(dts[v], dts[w]) for v, w in unpaired))

    return DaPairInvariants(
        dt_tail_second_head=coll(lambda s, t: (s, t.b)),
        first_tail_dt_head=coll(lambda s, t: (s.a, t)),
        first_tail_second_head=coll(lambda s, t: (s.a, t.b)),
        dt_tail_id_head=coll(lambda s, t: (s, t.id)),
        od_tail_dt_head=coll(lambda s, t: (s.od, t)),
        dt_ndq=tuple(sorted((dts[v], neighbor_profiles(D, v)[1]) for v in range(D.n))),
    )


def dacard_ndt_profile(D: Digraph, v: int) -> tuple:
    """(dt(v), multiset of NDTs of the vertices of D - v, taken inside D - v)."""
    C = delete_vertex(D, v)
    return (degree_triple(D, v), tuple(sorted(neighbor_profiles(C, w)[0] for w in range(C.n))))


def dacard_ndt_profiles(D: Digraph) -> tuple:
    return tuple(sorted(dacard_ndt_profile(D, v) for v in range(D.n)))
