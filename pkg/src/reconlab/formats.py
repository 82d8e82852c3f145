"""Text formats: adjacency-matrix documents and pasting listings.

ADJM grammar, per block: an optional ``name: <id>`` line, an optional line
holding just ``n``, then ``n`` rows of ``n`` entries (0/1, space separated
or run together). ``#`` starts a comment; a blank line ends a block.
"""

from __future__ import annotations

import re

from .core import Digraph, GraphError, Label, LabeledDigraph

_ROW = re.compile(r"^[01 \t]+$")


class AdjmError(GraphError):
    """Malformed adjacency-matrix text."""


def _blocks(text: str) -> list[list[tuple[int, str]]]:
    blocks, cur = [], []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            if raw.strip() == "" and cur:
                blocks.append(cur)
                cur = []
            continue
        cur.append((lineno, line))
    if cur:
        blocks.append(cur)
    return blocks


def _row(lineno: int, line: str) -> list[int]:
    if not _ROW.match(line):
        bad = next(ch for ch in line if ch not in "01 \t")
        raise AdjmError(f"line {lineno}: unexpected character {bad!r}")
    toks = line.split()
    if len(toks) == 1:
        toks = list(toks[0])
    return [int(t) for t in toks]


def _parse_block(lines: list[tuple[int, str]], graph: bool) -> tuple[str | None, Digraph]:
    name = None
    if lines and lines[0][1].lower().startswith("name:"):
        name = lines[0][1].split(":", 1)[1].strip() or None
        lines = lines[1:]
    n = None
    if lines and lines[0][1].isdigit() and len(lines) > 1 and len(lines[0][1].split()) == 1:
        # a lone integer followed by rows is the vertex count
        cand = int(lines[0][1])
        if cand == len(lines) - 1 or not set(lines[0][1]) <= {"0", "1"}:
            n = cand
            lines = lines[1:]
    rows = [_row(ln, text) for ln, text in lines]
    if n is None:
        n = len(rows)
    if len(rows) != n:
        raise AdjmError(f"expected {n} rows, found {len(rows)}")
    for (ln, _), r in zip(lines, rows):
        if len(r) != n:
            raise AdjmError(f"line {ln}: row has {len(r)} entries, expected {n} (matrix must be square)")
    for i in range(n):
        if rows[i][i]:
            raise AdjmError(f"loop at ({i + 1},{i + 1})")
    D = Digraph.from_matrix(rows)
    if graph and not D.symmetric:
        raise AdjmError(f"block {name or ''} is not symmetric but graph mode was requested".replace("  ", " "))
    return name, D


def parse_adjm(text: str, graph: bool = False) -> list[tuple[str | None, Digraph]]:
    """Every block of an ADJM document as ``(name, digraph)``."""
    blocks = _blocks(text)
    if not blocks:
        raise AdjmError("no adjacency matrix found")
    return [_parse_block(b, graph) for b in blocks]


def format_adjm(D: Digraph, name: str | None = None) -> str:
    lines = []
    if name:
        lines.append(f"name: {name}")
    lines.append(str(D.n))
    lines.extend(" ".join(map(str, r)) for r in D.matrix())
    return "\n".join(lines) + "\n"


def format_document(items: list[tuple[str | None, Digraph]]) -> str:
    return "\n".join(format_adjm(D, name) for name, D in items)


# -- pastings -------------------------------------------------------------------


def _parse_label(text: str) -> Label:
    text = text.strip()
    if text == "e":
        return Label("e")
    m = re.fullmatch(r"e,(deg|dt)=([\d ]+)", text)
    if not m:
        raise AdjmError(f"bad label {text!r}")
    return Label(m.group(1), tuple(int(x) for x in m.group(2).split()))


def format_labeled(P: LabeledDigraph, externals: tuple[int, int], name: str | None = None) -> str:
    out = format_adjm(P.base, name)
    out += f"externals: {externals[0]} {externals[1]}\n"
    for v, lab in P.labels:
        out += f"label {v}: {lab}\n"
    return out


def parse_labeled(text: str) -> tuple[LabeledDigraph, tuple[int, int]]:
    """Inverse of ``format_labeled`` (first pasting in the text)."""
    matrix, externals, labels = [], None, []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line.startswith("externals:"):
            a, b = line.split(":", 1)[1].split()
            externals = (int(a), int(b))
        elif line.startswith("label"):
            head, lab = line.split(":", 1)
            labels.append((int(head.split()[1]), _parse_label(lab)))
        else:
            matrix.append(raw)
    if externals is None:
        raise AdjmError("pasting text needs an 'externals: u v' line")
    _, D = parse_adjm("\n".join(matrix))[0]
    return LabeledDigraph(D, tuple(labels)), externals
