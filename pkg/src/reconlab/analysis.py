"""Theorem-level checkers built on decks and pastings."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from itertools import combinations

from .core import (
    Digraph,
    GraphError,
    TheoremViolation,
    is_isomorphic,
    underlying_graph,
)
from .invariants import (
    Card,
    DeckError,
    Flavor,
    card_of,
    da_pair_invariants,
    dacard_ndt_profiles,
    dacard_of,
    deck,
    same_deck,
)
from .pasting import (
    Alignment,
    Pasting,
    enumerate_pastings,
    pasted_isomorphically,
    unique_dapasting,
)

ISOMORPHIC = "ISOMORPHIC"
STRICT_READING = "unique (v_star, u_star, psi) over all valid alignments"
PASTING_READING = "unique pasting up to labeled isomorphism"
READINGS = {"strict": STRICT_READING, "pasting": PASTING_READING}


def _same_order(D: Digraph, E: Digraph) -> None:
    if D.n != E.n:
        raise GraphError(f"vertex count mismatch: {D.n} vs {E.n}")


# -- S-isomorphism ------------------------------------------------------------


@dataclass(frozen=True)
class SIsoWitness:
    """``F + uv`` is the first digraph and ``F + vu`` the second."""

    F: Digraph
    u: int
    v: int


def s_isomorphism(D: Digraph, E: Digraph) -> SIsoWitness | str | None:
    """``ISOMORPHIC``, a witness of one reversed unpaired arc, or ``None``."""
    _same_order(D, E)
    if is_isomorphic(D, E):
        return ISOMORPHIC
    if D.arc_count != E.arc_count or D.census() != E.census():
        return None
    for u, v in sorted(D.arcs):
        if D.has_arc(v, u):
            continue
        F = D.with_arcs(remove=[(u, v)])
        if is_isomorphic(F.with_arcs([(v, u)]), E):
            return SIsoWitness(F, u, v)
    return None


# -- dichotomy ----------------------------------------------------------------


class Verdict(str, enum.Enum):
    ALL_PAIRS = "all_pairs"
    NO_PAIRS = "no_pairs"
    MIXED = "mixed"


@dataclass
class DichotomyVerdict:
    flavor: Flavor
    verdict: Verdict
    isomorphic: bool
    table: dict[tuple[int, int], bool]
    entries: tuple
    complete: bool = True
    witness: tuple[Pasting, Pasting] | None = None


def _distinct_pairs(entries) -> list[tuple[int, int]]:
    return list(combinations(range(len(entries)), 2))


def iso_characterization(
    G: Digraph, H: Digraph, flavor: Flavor | str = Flavor.DACARD, fast: bool = False
) -> DichotomyVerdict:
    """Pasted-isomorphically table over every pair of distinct-vertex (da)cards.

    With DACARD flavor the table must be constant and equal the isomorphy of
    ``G`` and ``H``; a failure raises ``TheoremViolation``. ``fast`` stops at
    the first true entry, but only above six vertices.
    """
    flavor = Flavor(flavor)
    if not same_deck(G, H, flavor):
        raise DeckError(f"the two digraphs do not share a {flavor.value} deck")
    ref = deck(G, flavor)
    entries = ref.entries
    iso = is_isomorphic(G, H)
    table: dict[tuple[int, int], bool] = {}
    memo: dict[tuple, tuple] = {}
    witness = None
    complete = True
    for i, j in _distinct_pairs(entries):
        key = (entries[i], entries[j])
        if key not in memo:
            memo[key] = pasted_isomorphically(entries[i], entries[j], ref, G, H, flavor)
        hit, pair = memo[key]
        table[(i, j)] = hit
        if hit and witness is None:
            witness = pair
        if hit and fast and G.n > 6:
            complete = False
            break
    values = set(table.values())
    if values == {True}:
        verdict = Verdict.ALL_PAIRS
    elif values == {False}:
        verdict = Verdict.NO_PAIRS
    else:
        verdict = Verdict.MIXED
    result = DichotomyVerdict(flavor, verdict, iso, table, entries, complete, witness)
    if flavor is Flavor.DACARD:
        if verdict is Verdict.MIXED:
            raise TheoremViolation("dapasting table is neither all true nor all false", witness=result)
        if (verdict is Verdict.ALL_PAIRS) != iso:
            raise TheoremViolation(
                f"dapasting verdict {verdict.value} disagrees with isomorphy {iso}", witness=result
            )
    return result


# -- da-reconstructibility certificate -----------------------------------------


@dataclass
class DaCertificate:
    cards: tuple[Card, Card]
    vertices: tuple[int, int]
    alignment: Alignment
    multiplicity: dict[str, int]
    reading: str = STRICT_READING
    cross_check_pastings: int = 0


def _multiplicity_ok(cards: tuple[Card, ...], A: Card, B: Card) -> dict[str, int] | None:
    rest = list(cards)
    rest.remove(A)
    rest.remove(B)
    outside = sum(c in (A, B) for c in rest)
    if outside:
        return None
    return {"copies_of_A": cards.count(A), "copies_of_B": cards.count(B), "outside_matches": outside}


def certify_da_reconstructible(D: Digraph, reading: str = "strict") -> DaCertificate | None:
    """Look for a card pair of the underlying graph with a unique pasting.

    Candidates are tried in lexicographic order of their canonical codes and
    the first hit is returned, after checking directly that all dapastings
    of the matching dacards of ``D`` are isomorphic.

    ``reading="strict"`` demands a single alignment triple; ``"pasting"``
    only demands a single pasting class. The looser reading is outside what
    the uniqueness argument covers, so its cross-check failure is reported
    as ``None`` with no exception.
    """
    if reading not in READINGS:
        raise ValueError(f"reading must be one of {sorted(READINGS)}")
    if D.n < 3:
        return None
    U = underlying_graph(D)
    ref = deck(U, Flavor.CARD)
    cards = [card_of(U, x) for x in range(U.n)]
    candidates = sorted(
        (tuple(sorted((cards[x], cards[y]))), x, y) for x, y in combinations(range(U.n), 2)
    )
    tried = set()
    for (A, B), x, y in candidates:
        if (A, B) in tried:
            continue
        tried.add((A, B))
        if cards[x] != A:
            x, y = y, x
        record = _multiplicity_ok(ref.cards, A, B)
        if record is None:
            continue
        if reading == "strict":
            unique, alignment = unique_dapasting(A, B, ref, Flavor.CARD)
        else:
            found = enumerate_pastings(A, B, ref, Flavor.CARD)
            unique, alignment = len(found) == 1, found[0].alignment if found else None
        if not unique:
            continue
        da_ref = deck(D, Flavor.DACARD)
        da_pastings = enumerate_pastings(dacard_of(D, x), dacard_of(D, y), da_ref, Flavor.DACARD)
        if len(da_pastings) != 1:
            if reading == "strict":
                raise TheoremViolation(
                    f"certified card pair has {len(da_pastings)} non-isomorphic dapastings", witness=(D, x, y)
                )
            return None
        return DaCertificate((A, B), (x, y), alignment, record, READINGS[reading], len(da_pastings))
    return None


# -- pair classification --------------------------------------------------------


NDT_PER_DACARD = "dacard_ndt_profile"


@dataclass
class PairReport:
    hypomorphic: bool
    da_hypomorphic: bool
    isomorphic: bool
    s_isomorphic: bool
    s_witness: SIsoWitness | None = None
    iso_pasted_card_pair: tuple[Card, Card] | None = None
    iso_pasted_witness: tuple[Pasting, Pasting] | None = field(default=None, repr=False)
    distinguishing_da_invariant: str | None = None


def iso_pasted_card_pair(D: Digraph, E: Digraph):
    """First distinct-vertex card pair pasted isomorphically in both hosts."""
    ref = deck(D, Flavor.CARD)
    seen = set()
    for x, y in combinations(range(D.n), 2):
        A, B = card_of(D, x), card_of(D, y)
        if (A, B) in seen:
            continue
        seen.add((A, B))
        hit, pair = pasted_isomorphically(A, B, ref, D, E, Flavor.CARD)
        if hit:
            return (A, B), pair
    return None, None


def distinguishing_da_invariant(D: Digraph, E: Digraph) -> str | None:
    """Name of the first dadeck-level invariant that separates the pair."""
    pd, pe = da_pair_invariants(D), da_pair_invariants(E)
    for name in pd._fields:
        if getattr(pd, name) != getattr(pe, name):
            return name
    if dacard_ndt_profiles(D) != dacard_ndt_profiles(E):
        return NDT_PER_DACARD
    return None


def pair_report(D: Digraph, E: Digraph) -> PairReport:
    _same_order(D, E)
    hypo = same_deck(D, E, Flavor.CARD) if D.n >= 2 else D == E
    da_hypo = same_deck(D, E, Flavor.DACARD) if D.n >= 2 else D == E
    iso = is_isomorphic(D, E)
    s = s_isomorphism(D, E)
    report = PairReport(hypo, da_hypo, iso, s is not None, s if isinstance(s, SIsoWitness) else None)
    if hypo and D.n >= 3:
        report.iso_pasted_card_pair, report.iso_pasted_witness = iso_pasted_card_pair(D, E)
    if hypo and not da_hypo:
        report.distinguishing_da_invariant = distinguishing_da_invariant(D, E)
    if iso and not (hypo and da_hypo and report.s_isomorphic):
        raise TheoremViolation("isomorphic pair failed a weaker relation", witness=(D, E))
    return report
