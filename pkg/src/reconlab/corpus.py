"""Built-in digraphs shipped as ADJM data files."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

from .core import Digraph, is_isomorphic
from .formats import parse_adjm
from .invariants import Flavor, same_deck

IDS = ("c8", "fig7-pair1", "fig7-pair2", "fig7-pair3", "fig8-pair1", "fig8-pair2")

NOTES = {
    "c8": "8-vertex digraph; vertex v_k is index k-1",
    "fig7-pair1": "5-vertex hypomorphic pair, no isomorphically pasted card pair expected",
    "fig7-pair2": "5-vertex hypomorphic pair, no isomorphically pasted card pair expected",
    "fig7-pair3": "6-vertex hypomorphic pair, no isomorphically pasted card pair expected",
    "fig8-pair1": "6-vertex hypomorphic pair with an isomorphically pasted card pair",
    "fig8-pair2": "8-vertex hypomorphic pair with an isomorphically pasted card pair",
}


class CorpusError(KeyError):
    pass


class Role(str, enum.Enum):
    SINGLE = "single"
    PAIR = "pair"


@dataclass(frozen=True)
class CorpusEntry:
    id: str
    role: Role
    digraphs: tuple[Digraph, ...]
    note: str


def _text(entry_id: str) -> str:
    return resources.files("reconlab").joinpath("data", f"{entry_id}.adjm").read_text()


@lru_cache(maxsize=None)
def corpus_get(entry_id: str) -> CorpusEntry:
    if entry_id not in IDS:
        raise CorpusError(f"unknown corpus id {entry_id!r}; known: {', '.join(IDS)}")
    ds = tuple(D for _, D in parse_adjm(_text(entry_id)))
    role = Role.PAIR if len(ds) == 2 else Role.SINGLE
    if role is Role.PAIR:
        D, E = ds
        # a failing gate means a transcription error in the data file
        if not same_deck(D, E, Flavor.CARD):
            raise CorpusError(f"{entry_id}: the two digraphs do not share a deck")
        if is_isomorphic(D, E):
            raise CorpusError(f"{entry_id}: the two digraphs are isomorphic")
    return CorpusEntry(entry_id, role, ds, NOTES[entry_id])


def corpus_pairs() -> list[CorpusEntry]:
    return [corpus_get(i) for i in IDS if i != "c8"]
