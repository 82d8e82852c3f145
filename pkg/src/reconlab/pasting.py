"""Pastings and dapastings of two cards as members of a reference deck.

A pasting of cards A and B is a digraph P with two non-adjacent external
vertices u, v such that P - u is A, P - v is B, and adding at most one arc
or biarc between u and v yields a host whose deck is the reference deck.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterator, Union

from .core import (
    E,
    DegreeTriple,
    Digraph,
    GraphError,
    LabeledDigraph,
    TheoremViolation,
    all_isomorphisms,
    canonical_code,
    canonical_rep,
    degree_triple,
    delete_vertex,
    e_degree,
    e_triple,
    is_isomorphic,
    labeled_key,
)
from .invariants import (
    Card,
    Dacard,
    Dadeck,
    Deck,
    DeckError,
    Flavor,
    Ndq,
    arc_census,
    card_of,
    dacard_of,
    deck,
    induced_path2_counts,
    neighbor_profiles,
    triangles_at,
)

AnyCard = Union[Card, Dacard]
AnyDeck = Union[Deck, Dadeck]


class InvalidPasting(ValueError):
    """A pasting that no completion realizes against its reference deck."""


class NoPasting(ValueError):
    """The two cards admit no pasting at all against the reference deck."""


class ArcPrescription(str, enum.Enum):
    NONE = "none"
    SINGLE_UV = "single_uv"
    SINGLE_VU = "single_vu"
    BIARC = "biarc"
    SINGLE_UNORIENTED = "single_unoriented"


@dataclass(frozen=True)
class Alignment:
    """``psi`` maps ``A - v_star`` onto ``B - u_star`` (as a dict of pairs)."""

    v_star: int
    u_star: int
    psi: tuple[tuple[int, int], ...]

    def mapping(self) -> dict[int, int]:
        return dict(self.psi)


@dataclass(frozen=True, eq=False)
class Pasting:
    body: LabeledDigraph
    externals: tuple[int, int]
    flavor: Flavor
    ref: AnyDeck
    cards: tuple[AnyCard, AnyCard]
    alignment: Alignment | None = field(default=None)

    @property
    def key(self) -> tuple:
        return (self.flavor, self.ref, labeled_key(self.body))

    def __eq__(self, other):
        if not isinstance(other, Pasting):
            return NotImplemented
        return self.key == other.key

    def __hash__(self):
        return hash(self.key)

    @property
    def graph(self) -> bool:
        return self.ref.graph and self.flavor is Flavor.CARD

    def __repr__(self):
        u, v = self.externals
        return f"Pasting({self.flavor.value}, n={self.body.base.n}, arcs={self.body.base.arc_count}, externals=({u}, {v}))"


def _labels(flavor: Flavor, ref: AnyDeck, A: AnyCard, B: AnyCard):
    if flavor is Flavor.DACARD:
        return e_triple(A.dt), e_triple(B.dt)
    if ref.graph:
        if ref.host_n < 3:
            raise DeckError("degree labels need a host with at least three vertices")
        _, edges = arc_census(ref)
        return (
            e_degree(edges - A.digraph().census()[1]),
            e_degree(edges - B.digraph().census()[1]),
        )
    return E, E


def _make(body: Digraph, u: int, v: int, flavor: Flavor, ref: AnyDeck, A, B, alignment=None) -> Pasting:
    la, lb = _labels(flavor, ref, A, B)
    return Pasting(LabeledDigraph(body, ((u, la), (v, lb))), (u, v), flavor, ref, (A, B), alignment)


def pasting_from_host(G: Digraph, u: int, v: int, flavor: Flavor | str = Flavor.CARD) -> Pasting:
    """Strip the arcs between ``u`` and ``v`` and label them as externals."""
    flavor = Flavor(flavor)
    if u == v:
        raise GraphError("externals must be distinct vertices")
    if G.n < 3:
        raise DeckError("pastings need a host with at least three vertices")
    take = dacard_of if flavor is Flavor.DACARD else card_of
    return _make(G.strip_between(u, v), u, v, flavor, deck(G, flavor), take(G, u), take(G, v))


def _family(P: Pasting) -> list[tuple[ArcPrescription, Digraph]]:
    u, v = P.externals
    X = P.body.base
    if P.graph:
        return [(ArcPrescription.NONE, X), (ArcPrescription.BIARC, X.with_arcs([(u, v), (v, u)]))]
    return [
        (ArcPrescription.NONE, X),
        (ArcPrescription.SINGLE_UV, X.with_arcs([(u, v)])),
        (ArcPrescription.SINGLE_VU, X.with_arcs([(v, u)])),
        (ArcPrescription.BIARC, X.with_arcs([(u, v), (v, u)])),
    ]


def _realizes(P: Pasting, Y: Digraph) -> bool:
    if deck(Y, P.flavor) != P.ref:
        return False
    if P.flavor is Flavor.DACARD:
        u, v = P.externals
        A, B = P.cards
        return degree_triple(Y, u) == A.dt and degree_triple(Y, v) == B.dt
    return True


def completion_requirements(P: Pasting) -> ArcPrescription:
    """Arcs forced between the externals by the reference arc census."""
    U, Bi = arc_census(P.ref)
    pu, pb = P.body.base.census()
    du, db = U - pu, Bi - pb
    if (du, db) == (0, 0):
        return ArcPrescription.NONE
    if (du, db) == (0, 1):
        return ArcPrescription.BIARC
    if (du, db) == (1, 0) and not P.graph:
        if P.flavor is not Flavor.DACARD:
            return ArcPrescription.SINGLE_UNORIENTED
        u, _ = P.externals
        gap = tuple(P.cards[0].dt.minus(degree_triple(P.body.base, u)))
        if gap == (1, 0, 0):
            return ArcPrescription.SINGLE_UV
        if gap == (0, 1, 0):
            return ArcPrescription.SINGLE_VU
        raise InvalidPasting(f"external triple gap {gap} does not fit a single arc")
    raise InvalidPasting(f"arc census gap (unpaired {du}, biarcs {db}) cannot be closed by one arc or biarc")


def _admissible(req: ArcPrescription, kind: ArcPrescription) -> bool:
    if req is ArcPrescription.SINGLE_UNORIENTED:
        return kind in (ArcPrescription.SINGLE_UV, ArcPrescription.SINGLE_VU)
    return req is kind


def _valid(P: Pasting) -> bool:
    try:
        req = completion_requirements(P)
    except InvalidPasting:
        return False
    return any(_admissible(req, kind) and _realizes(P, Y) for kind, Y in _family(P))


def _realizing(P: Pasting) -> list[tuple[ArcPrescription, Digraph]]:
    return [(kind, Y) for kind, Y in _family(P) if _realizes(P, Y)]


def completions(P: Pasting) -> list[Digraph]:
    """Every completion of ``P`` whose deck is the reference, up to isomorphism."""
    found: dict[int, Digraph] = {}
    for _, Y in _realizing(P):
        found.setdefault(canonical_code(Y), Y)
    if not found:
        raise InvalidPasting("no completion has the reference deck")
    result = list(found.values())
    if P.flavor is Flavor.DACARD and len(result) > 1:
        raise TheoremViolation(f"dapasting with {len(result)} non-isomorphic completions", witness=P)
    return result


def is_pasting_in(P: Pasting, H: Digraph) -> bool:
    if H.n != P.body.base.n:
        return False
    try:
        return any(is_isomorphic(Y, H) for Y in completions(P))
    except InvalidPasting:
        return False


def _alignments(A: Digraph, B: Digraph) -> Iterator[Alignment]:
    for vs in range(A.n):
        rest_a = [x for x in range(A.n) if x != vs]
        Av = A.induced(rest_a)
        for us in range(B.n):
            rest_b = [x for x in range(B.n) if x != us]
            Bu = B.induced(rest_b)
            if canonical_code(Av) != canonical_code(Bu):
                continue
            for iso in all_isomorphisms(Av, Bu):
                psi = tuple((rest_a[i], rest_b[j]) for i, j in sorted(iso.items()))
                yield Alignment(vs, us, psi)


def _body(A: Digraph, B: Digraph, al: Alignment) -> Digraph:
    # A's vertices keep their numbers; the external u is appended
    m = A.n
    rows = list(A.out) + [0]
    for w, bw in al.psi:
        if B.has_arc(al.u_star, bw):
            rows[m] |= 1 << w
        if B.has_arc(bw, al.u_star):
            rows[w] |= 1 << m
    return Digraph(m + 1, tuple(rows))


def _check_inputs(A: AnyCard, B: AnyCard, ref: AnyDeck, flavor: Flavor) -> None:
    want = Dacard if flavor is Flavor.DACARD else Card
    if not (isinstance(A, want) and isinstance(B, want)):
        raise DeckError(f"{flavor.value} pastings take {want.__name__} arguments")
    if ref.flavor is not flavor:
        raise DeckError(f"reference is a {ref.flavor.value} deck, expected {flavor.value}")
    for X in (A, B):
        if X.digraph().n != ref.host_n - 1:
            raise DeckError("cards must have one vertex fewer than the reference host")
    if ref.host_n < 3:
        raise DeckError("pastings need a host with at least three vertices")


def _scan(A: AnyCard, B: AnyCard, ref: AnyDeck, flavor: Flavor):
    """Yield (alignment, pasting or None) for every alignment triple."""
    _check_inputs(A, B, ref, flavor)
    Ad, Bd = A.digraph(), B.digraph()
    seen: dict[tuple, Pasting | None] = {}
    u = Ad.n
    for al in _alignments(Ad, Bd):
        P = _make(_body(Ad, Bd, al), u, al.v_star, flavor, ref, A, B, al)
        k = P.key
        if k not in seen:
            seen[k] = P if _valid(P) else None
        yield al, seen[k]


def enumerate_pastings(A: AnyCard, B: AnyCard, ref: AnyDeck, flavor: Flavor | str = Flavor.CARD) -> list[Pasting]:
    """All pairwise non-isomorphic pastings of ``A`` and ``B`` against ``ref``."""
    flavor = Flavor(flavor)
    out: dict[tuple, Pasting] = {}
    for _, P in _scan(A, B, ref, flavor):
        if P is not None:
            out.setdefault(P.key, P)
    return list(out.values())


def unique_dapasting(
    A: AnyCard, B: AnyCard, ref: AnyDeck, flavor: Flavor | str = Flavor.CARD
) -> tuple[bool, Alignment | None]:
    """Whether exactly one alignment triple realizes a valid pasting."""
    flavor = Flavor(flavor)
    good = []
    for al, P in _scan(A, B, ref, flavor):
        if P is not None:
            good.append(al)
            if len(good) > 1:
                return False, None
    if not good:
        raise NoPasting("the cards admit no pasting against the reference deck")
    return (True, good[0]) if len(good) == 1 else (False, None)


def pastings_in_host(A: AnyCard, B: AnyCard, G: Digraph, flavor: Flavor | str = Flavor.CARD) -> list[Pasting]:
    """Pastings of ``A`` and ``B`` that have ``G`` as a completion, up to isomorphism."""
    flavor = Flavor(flavor)
    take = dacard_of if flavor is Flavor.DACARD else card_of
    entries = [take(G, x) for x in range(G.n)]
    out: dict[tuple, Pasting] = {}
    for x in range(G.n):
        if entries[x] != A:
            continue
        for y in range(G.n):
            if y != x and entries[y] == B:
                P = pasting_from_host(G, x, y, flavor)
                out.setdefault(P.key, P)
    return list(out.values())


def pasted_isomorphically(
    A: AnyCard,
    B: AnyCard,
    ref: AnyDeck,
    G: Digraph,
    H: Digraph,
    flavor: Flavor | str = Flavor.CARD,
) -> tuple[bool, tuple[Pasting, Pasting] | None]:
    flavor = Flavor(flavor)
    if deck(G, flavor) != ref or deck(H, flavor) != ref:
        raise DeckError("both hosts must have the reference deck")
    in_h = {P.key: P for P in pastings_in_host(A, B, H, flavor)}
    for P in pastings_in_host(A, B, G, flavor):
        if P.key in in_h:
            return True, (P, in_h[P.key])
    return False, None


# -- parameter identities -----------------------------------------------------


@dataclass
class Check:
    name: str
    expected: object
    actual: object

    @property
    def ok(self) -> bool:
        return self.expected == self.actual


@dataclass
class ParameterReport:
    case: ArcPrescription
    checks: list[Check]

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    @property
    def falsifications(self) -> list[Check]:
        return [c for c in self.checks if not c.ok]


def _drop(values: tuple[int, ...], *gone: int) -> tuple[int, ...]:
    rest = list(values)
    for g in gone:
        rest.remove(g)
    return tuple(rest)


def _predict(Y: Digraph, x: int, y: int) -> tuple[DegreeTriple, Ndq]:
    """(dt, ndq) of ``x`` once every arc between ``x`` and ``y`` is removed."""
    dt = degree_triple(Y, x)
    q = neighbor_profiles(Y, x)[1]
    t = degree_triple(Y, y)
    fwd, back = Y.has_arc(x, y), Y.has_arc(y, x)
    if fwd and back:
        return dt.minus((0, 0, 1)), q._replace(ctdsn=_drop(q.ctdsn, t.c))
    if fwd:
        return dt.minus((1, 0, 0)), q._replace(csdon=_drop(q.csdon, t.b), cidon=_drop(q.cidon, t.id))
    if back:
        return dt.minus((0, 1, 0)), q._replace(cfdin=_drop(q.cfdin, t.a), codin=_drop(q.codin, t.od))
    return dt, q


def pasting_parameter_report(P: Pasting, G: Digraph) -> ParameterReport:
    """Check the pasting/host parameter identities on a completion ``G`` of ``P``."""
    u, v = P.externals
    X = P.body.base
    match = [(kind, Y) for kind, Y in _realizing(P) if is_isomorphic(Y, G)]
    if not match:
        raise InvalidPasting("the digraph is not a completion of the pasting")
    case, Y = match[0]
    checks = []
    dts_y = sorted(degree_triple(Y, x) for x in range(Y.n))
    for w in (u, v):
        dts_y.remove(degree_triple(Y, w))
    inner = sorted(degree_triple(X, x) for x in range(X.n) if x not in (u, v))
    checks.append(Check("triple multiset of non-externals", dts_y, inner))
    if P.flavor is Flavor.DACARD:
        checks.append(Check("dt(A) is the host triple of u", P.cards[0].dt, degree_triple(Y, u)))
        checks.append(Check("dt(B) is the host triple of v", P.cards[1].dt, degree_triple(Y, v)))
    for x, y in ((u, v), (v, u)):
        dt_p, ndq_p = _predict(Y, x, y)
        checks.append(Check(f"dt_P of external {x}", dt_p, degree_triple(X, x)))
        checks.append(Check(f"ndq_P of external {x}", ndq_p, neighbor_profiles(X, x)[1]))
    checks.append(Check("P - u is card A", P.cards[0].digraph(), canonical_rep(delete_vertex(X, u))))
    checks.append(Check("P - v is card B", P.cards[1].digraph(), canonical_rep(delete_vertex(X, v))))
    if Y.symmetric:
        checks.extend(_graph_checks(X, Y, u, v))
    return ParameterReport(case, checks)


def _graph_checks(X: Digraph, Y: Digraph, u: int, v: int) -> list[Check]:
    edges_y, edges_x = Y.census()[1], X.census()[1]
    out = []
    if edges_y == edges_x:
        for x in (u, v):
            out.append(Check(f"ip(2) at {x}, no edge between externals", induced_path2_counts(X, x), induced_path2_counts(Y, x)))
            out.append(Check(f"triangles at {x}, no edge between externals", triangles_at(X, x), triangles_at(Y, x)))
        return out
    out.append(Check("one edge between externals", edges_x + 1, edges_y))
    common = induced_path2_counts(X, u, v)
    for x, y in ((u, v), (v, u)):
        d_other = Y.out[y].bit_count()
        predicted = induced_path2_counts(X, x) - 2 * common + d_other - 1
        out.append(Check(f"ip(2) at {x} with edge {x}{y}", predicted, induced_path2_counts(Y, x)))
        out.append(Check(f"triangles at {x} with edge {x}{y}", triangles_at(X, x) + common, triangles_at(Y, x)))
    return out
