"""Digraphs, degree triples, canonical forms and isomorphism.

A graph is a digraph whose arc set is closed under reversal; there is no
separate graph type. Vertices are ``0..n-1`` and adjacency is stored as one
out-neighbour bitmask per vertex.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from math import isqrt
from typing import Iterable, Iterator, NamedTuple, Sequence

from . import _backend


class GraphError(ValueError):
    """Malformed digraph input (loops, bad indices, size mismatch)."""


class TheoremViolation(Exception):
    """A checked claim failed on a concrete instance; carries the witness."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


@dataclass(frozen=True)
class Digraph:
    n: int
    out: tuple[int, ...]

    def __post_init__(self):
        if self.n < 0 or len(self.out) != self.n:
            raise GraphError(f"expected {self.n} adjacency rows, got {len(self.out)}")
        limit = 1 << self.n
        for i, row in enumerate(self.out):
            if row < 0 or row >= limit:
                raise GraphError(f"row {i} references a vertex outside 0..{self.n - 1}")
            if row >> i & 1:
                raise GraphError(f"loop at vertex {i}")

    @classmethod
    def from_matrix(cls, matrix: Sequence[Sequence[int]]) -> Digraph:
        n = len(matrix)
        rows = []
        for i, r in enumerate(matrix):
            if len(r) != n:
                raise GraphError(f"row {i} has {len(r)} entries, expected {n}")
            rows.append(sum(1 << j for j, x in enumerate(r) if x))
        return cls(n, tuple(rows))

    @cached_property
    def inn(self) -> tuple[int, ...]:
        inn = [0] * self.n
        for i, row in enumerate(self.out):
            for j in _bits(row):
                inn[j] |= 1 << i
        return tuple(inn)

    def has_arc(self, i: int, j: int) -> bool:
        return bool(self.out[i] >> j & 1)

    @property
    def arcs(self) -> frozenset[tuple[int, int]]:
        return frozenset((i, j) for i, row in enumerate(self.out) for j in _bits(row))

    @cached_property
    def symmetric(self) -> bool:
        return self.out == self.inn

    @property
    def arc_count(self) -> int:
        return sum(row.bit_count() for row in self.out)

    def census(self) -> tuple[int, int]:
        """(number of unpaired arcs, number of biarcs)."""
        both = sum((o & i).bit_count() for o, i in zip(self.out, self.inn))
        return self.arc_count - both, both // 2

    def matrix(self) -> list[list[int]]:
        return [[row >> j & 1 for j in range(self.n)] for row in self.out]

    def relabel(self, perm: Sequence[int]) -> Digraph:
        """Vertex ``i`` becomes ``perm[i]``."""
        rows = [0] * self.n
        for i, row in enumerate(self.out):
            rows[perm[i]] = sum(1 << perm[j] for j in _bits(row))
        return Digraph(self.n, tuple(rows))

    def induced(self, vertices: Sequence[int]) -> Digraph:
        """Induced subdigraph, vertices renumbered in the given order."""
        pos = {v: k for k, v in enumerate(vertices)}
        rows = []
        for v in vertices:
            rows.append(sum(1 << pos[j] for j in _bits(self.out[v]) if j in pos))
        return Digraph(len(vertices), tuple(rows))

    def with_arcs(self, add: Iterable[tuple[int, int]] = (), remove: Iterable[tuple[int, int]] = ()) -> Digraph:
        rows = list(self.out)
        for i, j in remove:
            rows[i] &= ~(1 << j)
        for i, j in add:
            if i == j:
                raise GraphError(f"loop at vertex {i}")
            rows[i] |= 1 << j
        return Digraph(self.n, tuple(rows))

    def strip_between(self, u: int, v: int) -> Digraph:
        """Remove every arc joining ``u`` and ``v``."""
        return self.with_arcs(remove=[(u, v), (v, u)])

    def __repr__(self):
        return f"Digraph(n={self.n}, arcs={sorted(self.arcs)})"


def _bits(x: int) -> Iterator[int]:
    j = 0
    while x:
        if x & 1:
            yield j
        x >>= 1
        j += 1


def build(n: int, arcs: Iterable[tuple[int, int]], symmetric: bool = False) -> Digraph:
    rows = [0] * n
    for i, j in arcs:
        if not (0 <= i < n and 0 <= j < n):
            raise GraphError(f"arc ({i}, {j}) out of range for n={n}")
        if i == j:
            raise GraphError(f"loop at vertex {i}")
        rows[i] |= 1 << j
        if symmetric:
            rows[j] |= 1 << i
    return Digraph(n, tuple(rows))


def delete_vertex(D: Digraph, x: int) -> Digraph:
    if not 0 <= x < D.n:
        raise GraphError(f"vertex {x} out of range for n={D.n}")
    return D.induced([v for v in range(D.n) if v != x])


class DegreeTriple(NamedTuple):
    """(out-neighbours, in-neighbours, strong neighbours)."""

    a: int
    b: int
    c: int

    @property
    def od(self) -> int:
        return self.a + self.c

    @property
    def id(self) -> int:
        return self.b + self.c

    @property
    def dep(self) -> tuple[int, int]:
        return (self.od, self.id)

    @property
    def spd(self) -> tuple[int, int]:
        return (self.a + self.b, self.c)

    def minus(self, other: Sequence[int]) -> DegreeTriple:
        return DegreeTriple(self.a - other[0], self.b - other[1], self.c - other[2])


def degree_triple(D: Digraph, x: int) -> DegreeTriple:
    if not 0 <= x < D.n:
        raise GraphError(f"vertex {x} out of range for n={D.n}")
    o, i = D.out[x], D.inn[x]
    return DegreeTriple((o & ~i).bit_count(), (i & ~o).bit_count(), (o & i).bit_count())


def degree_triples(D: Digraph) -> list[DegreeTriple]:
    return [degree_triple(D, x) for x in range(D.n)]


def neighbours(D: Digraph, x: int) -> tuple[list[int], list[int], list[int]]:
    """Out-, in- and strong neighbours of ``x``."""
    o, i = D.out[x], D.inn[x]
    return list(_bits(o & ~i)), list(_bits(i & ~o)), list(_bits(o & i))


# -- labels -------------------------------------------------------------------


@dataclass(frozen=True, order=True)
class Label:
    kind: str  # "e", "deg" or "dt"
    value: tuple[int, ...] = ()

    def __str__(self):
        if self.kind == "e":
            return "e"
        return f"e,{self.kind}={' '.join(map(str, self.value))}"


E = Label("e")


def e_degree(k: int) -> Label:
    return Label("deg", (k,))


def e_triple(dt: Sequence[int]) -> Label:
    return Label("dt", tuple(dt))


@dataclass(frozen=True)
class LabeledDigraph:
    base: Digraph
    labels: tuple[tuple[int, Label], ...] = field(default=())

    def __post_init__(self):
        if len(self.labels) > 2:
            raise GraphError("at most two labelled vertices")
        vs = [v for v, _ in self.labels]
        if len(set(vs)) != len(vs):
            raise GraphError("vertex labelled twice")
        if len(vs) == 2 and (self.base.has_arc(*vs) or self.base.has_arc(vs[1], vs[0])):
            raise GraphError("labelled vertices must be non-adjacent")

    def label_of(self, v: int) -> Label | None:
        for w, lab in self.labels:
            if w == v:
                return lab
        return None


# -- canonical forms ----------------------------------------------------------


@dataclass(frozen=True)
class CanonicalForm:
    """``code`` is ``1 << n*n`` plus the row-major canonical adjacency bits.

    ``witness[p]`` is the original vertex sitting at canonical position ``p``.
    """

    code: int
    witness: tuple[int, ...]

    @property
    def n(self) -> int:
        return code_order(self.code)

    def digraph(self) -> Digraph:
        return decode(self.code)


def code_order(code: int) -> int:
    return isqrt(code.bit_length() - 1)


@lru_cache(maxsize=1 << 16)
def decode(code: int) -> Digraph:
    """Canonical representative encoded by ``code``."""
    n = code_order(code)
    bits = code & ((1 << n * n) - 1)
    rows = []
    for p in range(n):
        rc = bits >> (n * (n - 1 - p)) & ((1 << n) - 1)
        rows.append(sum(1 << q for q in range(n) if rc >> (n - 1 - q) & 1))
    return Digraph(n, tuple(rows))


@lru_cache(maxsize=1 << 20)
def _canon(n: int, out: tuple[int, ...], colors: tuple[int, ...] | None) -> tuple[int, tuple[int, ...]]:
    bits, order = _backend.canon(n, out, colors)
    return (1 << n * n) | bits, order


def canonical_form(D: Digraph, colors: Sequence[int] | None = None) -> CanonicalForm:
    """Canonical form, optionally respecting a vertex colouring.

    Colours are integers compared by value, so two coloured digraphs get the
    same code iff a colour-preserving isomorphism exists.
    """
    code, order = _canon(D.n, D.out, tuple(colors) if colors is not None else None)
    return CanonicalForm(code, order)


def canonical_code(D: Digraph) -> int:
    return _canon(D.n, D.out, None)[0]


def canonical_rep(D: Digraph) -> Digraph:
    return decode(canonical_code(D))


def isomorphism(D: Digraph, E: Digraph) -> dict[int, int] | None:
    """An arc-preserving bijection ``V(D) -> V(E)``, or ``None``."""
    if D.n != E.n:
        return None
    cd, ce = canonical_form(D), canonical_form(E)
    if cd.code != ce.code:
        return None
    return {cd.witness[p]: ce.witness[p] for p in range(D.n)}


def is_isomorphic(D: Digraph, E: Digraph) -> bool:
    return D.n == E.n and canonical_code(D) == canonical_code(E)


def all_isomorphisms(D: Digraph, E: Digraph) -> Iterator[dict[int, int]]:
    """Every isomorphism ``D -> E`` (backtracking with degree-triple pruning)."""
    n = D.n
    if n != E.n:
        return
    td, te = degree_triples(D), degree_triples(E)
    if sorted(td) != sorted(te):
        return
    cand = [[y for y in range(n) if te[y] == td[x]] for x in range(n)]
    img = [-1] * n

    def extend(i, used):
        if i == n:
            yield dict(enumerate(img))
            return
        for y in cand[i]:
            if used >> y & 1:
                continue
            ok = True
            for j in range(i):
                g = img[j]
                if D.has_arc(i, j) != E.has_arc(y, g) or D.has_arc(j, i) != E.has_arc(g, y):
                    ok = False
                    break
            if ok:
                img[i] = y
                yield from extend(i + 1, used | (1 << y))
        img[i] = -1

    yield from extend(0, 0)


def label_colors(P: LabeledDigraph) -> tuple[tuple[Label, ...], list[int]]:
    """Fold labels into an integer colouring (unlabelled vertices get 0)."""
    distinct = sorted({lab for _, lab in P.labels})
    index = {lab: k + 1 for k, lab in enumerate(distinct)}
    colors = [0] * P.base.n
    for v, lab in P.labels:
        colors[v] = index[lab]
    return tuple(sorted(lab for _, lab in P.labels)), colors


def labeled_key(P: LabeledDigraph) -> tuple:
    """Hashable key equal for two labelled digraphs iff labelled-isomorphic."""
    labels, colors = label_colors(P)
    return (labels, canonical_form(P.base, colors).code)


def labeled_isomorphic(P: LabeledDigraph, Q: LabeledDigraph) -> bool:
    return P.base.n == Q.base.n and labeled_key(P) == labeled_key(Q)


def automorphism_orbits(D: Digraph) -> list[list[int]]:
    """Orbits of Aut(D), each sorted, ordered by smallest member."""
    keys: dict[int, list[int]] = {}
    for x in range(D.n):
        colors = [0] * D.n
        colors[x] = 1
        keys.setdefault(canonical_form(D, colors).code, []).append(x)
    return sorted(keys.values())


def underlying_graph(D: Digraph) -> Digraph:
    return Digraph(D.n, tuple(o | i for o, i in zip(D.out, D.inn)))


def is_biorientation(D: Digraph, G: Digraph) -> bool:
    if D.n != G.n:
        raise GraphError(f"vertex count mismatch: {D.n} vs {G.n}")
    if not G.symmetric:
        raise GraphError("second argument must be a graph (symmetric digraph)")
    return underlying_graph(D) == G
