"""Exhaustive small-structure enumeration and deck-collision scanning."""

from __future__ import annotations

import enum
import hashlib
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Iterator

from .core import CanonicalForm, Digraph, canonical_code, decode
from .invariants import Flavor, deck, deck_text

CEILINGS = {"graph": 8, "digraph": 6, "tournament": 8}


class Kind(str, enum.Enum):
    GRAPH = "graph"
    DIGRAPH = "digraph"
    TOURNAMENT = "tournament"


class ScanError(ValueError):
    """Bad scan configuration or an unusable checkpoint."""


@dataclass(frozen=True)
class ScanConfig:
    n: int
    kind: Kind = Kind.DIGRAPH
    mode: Flavor = Flavor.CARD
    max_seconds: float | None = None
    max_hosts: int | None = None
    ceiling: int | None = None
    workers: int = 1

    def __post_init__(self):
        object.__setattr__(self, "kind", Kind(self.kind))
        object.__setattr__(self, "mode", Flavor(self.mode))
        if self.n < 1:
            raise ScanError("n must be positive")
        top = self.ceiling if self.ceiling is not None else CEILINGS[self.kind.value]
        if self.n > top:
            raise ScanError(f"n={self.n} exceeds the {self.kind.value} ceiling {top}; raise it explicitly")

    def header(self) -> str:
        return f"# reconlab-scan kind={self.kind.value} n={self.n} mode={self.mode.value}"


# -- generation ----------------------------------------------------------------


def _extensions(parent: Digraph, kind: Kind) -> Iterator[tuple[int, ...]]:
    m = parent.n
    full = 1 << m
    if kind is Kind.GRAPH:
        for nb in range(full):
            rows = [r | ((nb >> i & 1) << m) for i, r in enumerate(parent.out)]
            yield (*rows, nb)
    elif kind is Kind.TOURNAMENT:
        for outs in range(full):
            ins = ~outs & (full - 1)
            rows = [r | ((ins >> i & 1) << m) for i, r in enumerate(parent.out)]
            yield (*rows, outs)
    else:
        for outs in range(full):
            for ins in range(full):
                rows = [r | ((ins >> i & 1) << m) for i, r in enumerate(parent.out)]
                yield (*rows, outs)


def class_codes(n: int, kind: Kind | str) -> list[int]:
    """Sorted canonical codes of every ``n``-vertex structure of ``kind``.

    Level by level: every class has a vertex-deleted subclass, so extending
    one representative per (n-1)-class by a new vertex in all possible ways
    reaches every n-class; duplicates are merged through their codes.
    """
    kind = Kind(kind)
    level = [canonical_code(Digraph(1, (0,)))]
    for m in range(1, n):
        nxt = set()
        for code in level:
            parent = decode(code)
            for rows in _extensions(parent, kind):
                nxt.add(canonical_code(Digraph(m + 1, rows)))
        level = sorted(nxt)
    return level


def enumerate_small(cfg: ScanConfig) -> Iterator[Digraph]:
    """One representative per isomorphism class, in canonical-code order."""
    for code in class_codes(cfg.n, cfg.kind):
        yield decode(code)


# -- collision scanning ----------------------------------------------------------


@dataclass
class CollisionClass:
    deck_key: str
    serialization: str
    members: list[CanonicalForm]

    def digraphs(self) -> list[Digraph]:
        return [m.digraph() for m in self.members]


@dataclass
class ScanReport:
    config: ScanConfig
    hosts: int
    complete: bool
    classes: list[CollisionClass] = field(default_factory=list)


def deck_key(D: Digraph, mode: Flavor) -> tuple[str, str]:
    text = deck_text(deck(D, mode))
    return hashlib.sha256(text.encode()).hexdigest(), text


def _keys_for(args: tuple[list[int], str]) -> list[tuple[int, str]]:
    codes, mode = args
    flavor = Flavor(mode)
    return [(c, deck_key(decode(c), flavor)[0]) for c in codes]


def _read_checkpoint(path: str, cfg: ScanConfig) -> dict[int, str]:
    done: dict[int, str] = {}
    if not os.path.exists(path) or os.path.getsize(path) == 0:
        return done
    with open(path) as fh:
        head = fh.readline().rstrip("\n")
        if head != cfg.header():
            raise ScanError(f"checkpoint {path} belongs to a different scan: {head!r}")
        for line in fh:
            parts = line.split()
            if len(parts) != 2:
                continue  # a torn final line from an interrupted write
            done[int(parts[0], 16)] = parts[1]
    return done


def scan(
    cfg: ScanConfig,
    checkpoint: str | None = None,
    hosts: Iterable[int] | None = None,
    chunk: int = 2000,
) -> ScanReport:
    """Bucket every host by its deck (or dadeck) key.

    ``checkpoint`` is an append-only log of ``<host code> <deck key>`` lines;
    hosts already logged are not recomputed. Colliding buckets are confirmed
    by comparing full deck serializations, never by hash alone.
    """
    codes = list(hosts) if hosts is not None else class_codes(cfg.n, cfg.kind)
    done = _read_checkpoint(checkpoint, cfg) if checkpoint else {}
    todo = [c for c in codes if c not in done]
    log = None
    if checkpoint:
        fresh = not os.path.exists(checkpoint) or os.path.getsize(checkpoint) == 0
        log = open(checkpoint, "a")
        if fresh:
            log.write(cfg.header() + "\n")
    start = time.monotonic()
    complete = True
    budget = cfg.max_hosts
    batches = [todo[i : i + chunk] for i in range(0, len(todo), chunk)]
    pool = ProcessPoolExecutor(cfg.workers) if cfg.workers > 1 else None
    try:
        results = (
            pool.map(_keys_for, [(b, cfg.mode.value) for b in batches])
            if pool
            else map(_keys_for, [(b, cfg.mode.value) for b in batches])
        )
        for batch in results:
            for code, key in batch:
                done[code] = key
                if log:
                    log.write(f"{code:x} {key}\n")
            if log:
                log.flush()
            if cfg.max_seconds is not None and time.monotonic() - start > cfg.max_seconds:
                complete = False
                break
            if budget is not None and len(done) >= budget:
                complete = len(done) >= len(codes)
                break
    finally:
        if pool:
            pool.shutdown(cancel_futures=True)
        if log:
            log.close()

    wanted = set(codes)
    buckets: dict[str, list[int]] = {}
    for code, key in done.items():
        if code in wanted:
            buckets.setdefault(key, []).append(code)
    classes = []
    for key in sorted(buckets):
        members = sorted(buckets[key])
        if len(members) < 2:
            continue
        # confirm on the full serialization
        by_text: dict[str, list[int]] = {}
        for c in members:
            by_text.setdefault(deck_key(decode(c), cfg.mode)[1], []).append(c)
        for text, group in sorted(by_text.items()):
            if len(group) >= 2:
                forms = [CanonicalForm(c, tuple(range(cfg.n))) for c in group]
                classes.append(CollisionClass(key, text, forms))
    hosts_seen = sum(1 for c in codes if c in done)
    return ScanReport(cfg, hosts_seen, complete and hosts_seen == len(codes), classes)


def deck_collision_scan(cfg: ScanConfig, checkpoint: str | None = None) -> list[CollisionClass]:
    return scan(cfg, checkpoint).classes


def collision_pairs(classes: Iterable[CollisionClass]) -> Iterator[tuple[Digraph, Digraph]]:
    for cls in classes:
        for a, b in combinations(cls.digraphs(), 2):
            yield a, b


# -- hypomorphic pairs with isomorphically pasted cards -----------------------


@dataclass
class ClassifiedPair:
    D: Digraph
    E: Digraph
    report: object  # analysis.PairReport
    source: str = "scan"


@dataclass
class PairPartition:
    config: ScanConfig
    pasted: list[ClassifiedPair]
    unpasted: list[ClassifiedPair]
    violations: list[ClassifiedPair]
    complete: bool = True


def pasted_pair_scan(
    cfg: ScanConfig,
    checkpoint: str | None = None,
    extra_pairs: Iterable[tuple[str, Digraph, Digraph]] = (),
) -> PairPartition:
    """Split CARD-collision pairs by whether some card pair is pasted isomorphically.

    A pair that has such a card pair yet shares its dadeck is a violation:
    it would be hypomorphic, da-hypomorphic and non-isomorphic at once.
    """
    from .analysis import pair_report

    if cfg.kind is not Kind.DIGRAPH or cfg.mode is not Flavor.CARD:
        raise ScanError("the pasted-pair classification runs on digraph CARD scans")
    rep = scan(cfg, checkpoint)
    pairs = [("scan", D, E) for D, E in collision_pairs(rep.classes)]
    pairs.extend(extra_pairs)
    out = PairPartition(cfg, [], [], [], rep.complete)
    for source, D, E in pairs:
        r = pair_report(D, E)
        item = ClassifiedPair(D, E, r, source)
        if r.iso_pasted_card_pair is not None:
            out.pasted.append(item)
            if r.da_hypomorphic:
                out.violations.append(item)
        else:
            out.unpasted.append(item)
    return out



# name used by the operation list
problem_7_6_scan = pasted_pair_scan
