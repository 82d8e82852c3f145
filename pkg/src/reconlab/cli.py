"""Command-line entry point.

Exit status: 0 verified/true/found, 1 false/none found, 2 a checked theorem
failed on a concrete instance, 3 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from itertools import combinations
from typing import Any

from . import analysis, corpus, formats, pasting, search
from .core import (
    DegreeTriple,
    Digraph,
    GraphError,
    TheoremViolation,
    automorphism_orbits,
    build,
    is_isomorphic,
)
from .invariants import Dacard, DeckError, Flavor, card_of, dacard_of, deck, deck_text, parse_deck

OK, FALSE, VIOLATION, USAGE = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(USAGE, f"{self.prog}: error: {message}\n")


# -- JSON rendering --------------------------------------------------------------


def j_digraph(D: Digraph) -> dict:
    return {"n": D.n, "rows": ["".join(map(str, r)) for r in D.matrix()]}


def j_card(c) -> Any:
    if isinstance(c, Dacard):
        return {"card": f"{c.card.code:x}", "dt": list(c.dt)}
    return f"{c.code:x}"


def j_pasting(P: pasting.Pasting) -> dict:
    al = P.alignment
    return {
        "flavor": P.flavor.value,
        "body": j_digraph(P.body.base),
        "arcs": P.body.base.arc_count,
        "externals": list(P.externals),
        "labels": {str(v): str(lab) for v, lab in P.body.labels},
        "alignment": None
        if al is None
        else {"v_star": al.v_star, "u_star": al.u_star, "psi": [list(p) for p in al.psi]},
    }


def j_report(r: analysis.PairReport) -> dict:
    return {
        "hypomorphic": r.hypomorphic,
        "da_hypomorphic": r.da_hypomorphic,
        "isomorphic": r.isomorphic,
        "s_isomorphic": r.s_isomorphic,
        "s_witness": None
        if r.s_witness is None
        else {"F": j_digraph(r.s_witness.F), "u": r.s_witness.u, "v": r.s_witness.v},
        "iso_pasted_card_pair": None if r.iso_pasted_card_pair is None else [j_card(c) for c in r.iso_pasted_card_pair],
        "distinguishing_da_invariant": r.distinguishing_da_invariant,
    }


def _emit(args, payload: dict, text: str) -> None:
    if args.format == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(text.rstrip("\n"))


# -- inputs ------------------------------------------------------------------------


def _read(path: str, graph: bool) -> list[tuple[str | None, Digraph]]:
    try:
        with open(path) as fh:
            return formats.parse_adjm(fh.read(), graph=graph)
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from e


def _one(args) -> Digraph:
    if getattr(args, "corpus", None):
        entry = corpus.corpus_get(args.corpus)
        return entry.digraphs[0]
    if not args.files:
        raise UsageError("give an ADJM file or --corpus ID")
    return _read(args.files[0], args.graph)[0][1]


def _two(args) -> tuple[Digraph, Digraph]:
    if getattr(args, "corpus", None):
        entry = corpus.corpus_get(args.corpus)
        if entry.role is not corpus.Role.PAIR:
            raise UsageError(f"corpus entry {args.corpus} is not a pair")
        return entry.digraphs
    blocks = [D for f in args.files for _, D in _read(f, args.graph)]
    if len(blocks) != 2:
        raise UsageError(f"expected exactly two digraphs, found {len(blocks)}")
    return blocks[0], blocks[1]


def _flavor(args) -> Flavor:
    return Flavor(args.mode)


# -- commands ----------------------------------------------------------------------


def cmd_deck(args) -> int:
    D = _one(args)
    dk = deck(D, _flavor(args))
    payload = {
        "flavor": dk.flavor.value,
        "host_n": dk.host_n,
        "graph": dk.graph,
        "entries": [j_card(c) for c in dk.entries],
    }
    _emit(args, payload, deck_text(dk))
    return OK


def cmd_compare(args) -> int:
    D, E = _two(args)
    flavor = _flavor(args)
    same = D.n == E.n and deck(D, flavor) == deck(E, flavor)
    iso = is_isomorphic(D, E)
    payload = {"flavor": flavor.value, "same_deck": same, "isomorphic": iso}
    _emit(args, payload, f"same {flavor.value} deck: {same}\nisomorphic: {iso}")
    return OK if same else FALSE


def _cards_of(G: Digraph, idx: list[int], flavor: Flavor):
    for i in idx:
        if not 0 <= i < G.n:
            raise UsageError(f"vertex {i} out of range for n={G.n}")
    take = dacard_of if flavor is Flavor.DACARD else card_of
    return take(G, idx[0]), take(G, idx[1])


def _completions_text(P) -> tuple[list[dict], str, pasting.ArcPrescription]:
    comps = pasting.completions(P)
    req = pasting.completion_requirements(P)
    text = f"  requirement: {req.value}\n"
    for Y in comps:
        text += "  completion:\n" + "".join("    " + ln + "\n" for ln in formats.format_adjm(Y).splitlines())
    return [j_digraph(Y) for Y in comps], text, req


def cmd_paste(args) -> int:
    if not args.deck_of:
        raise UsageError("paste needs --deck-of FILE")
    G = _read(args.deck_of, args.graph)[0][1]
    flavor = _flavor(args)
    A, B = _cards_of(G, args.cards, flavor)
    found = pasting.enumerate_pastings(A, B, deck(G, flavor), flavor)
    items, text = [], f"{len(found)} pasting(s) of cards {args.cards[0]} and {args.cards[1]}\n"
    for k, P in enumerate(found):
        comps, ctext, req = _completions_text(P)
        items.append({**j_pasting(P), "requirement": req.value, "completions": comps})
        text += f"pasting {k}:\n" + formats.format_labeled(P.body, P.externals) + ctext
    _emit(args, {"cards": [j_card(A), j_card(B)], "pastings": items}, text)
    return OK if found else FALSE


def cmd_complete(args) -> int:
    flavor = _flavor(args)
    with open(args.pasting) as fh:
        body, (u, v) = formats.parse_labeled(fh.read())
    if args.deck:
        with open(args.deck) as fh:
            ref = parse_deck(fh.read())
    elif args.deck_of:
        ref = deck(_read(args.deck_of, args.graph)[0][1], flavor)
    else:
        raise UsageError("complete needs --deck FILE or --deck-of FILE")
    if ref.flavor is not flavor:
        raise UsageError(f"reference deck is {ref.flavor.value} but --mode is {flavor.value}")
    X = body.base
    A, B = card_of(X, u), card_of(X, v)
    if flavor is Flavor.DACARD:
        labs = dict(body.labels)
        if labs.get(u) is None or labs[u].kind != "dt" or labs.get(v) is None or labs[v].kind != "dt":
            raise UsageError("dacard pastings need 'e,dt=a b c' labels on both externals")
        A, B = Dacard(A, DegreeTriple(*labs[u].value)), Dacard(B, DegreeTriple(*labs[v].value))
    P = pasting.Pasting(body, (u, v), flavor, ref, (A, B))
    try:
        comps, ctext, req = _completions_text(P)
    except pasting.InvalidPasting as e:
        _emit(args, {"valid": False, "reason": str(e)}, f"not a valid pasting: {e}")
        return FALSE
    _emit(args, {"valid": True, "requirement": req.value, "completions": comps}, ctext)
    return OK


def cmd_pasted_iso(args) -> int:
    D, E = _two(args)
    flavor = _flavor(args)
    A, B = _cards_of(D, args.cards, flavor)
    hit, pair = pasting.pasted_isomorphically(A, B, deck(D, flavor), D, E, flavor)
    payload = {"pasted_isomorphically": hit, "witness": None if pair is None else [j_pasting(p) for p in pair]}
    text = f"pasted isomorphically: {hit}"
    if pair:
        text += "\n" + formats.format_labeled(pair[0].body, pair[0].externals, "in first")
        text += formats.format_labeled(pair[1].body, pair[1].externals, "in second")
    _emit(args, payload, text)
    return OK if hit else FALSE


def cmd_dichotomy(args) -> int:
    D, E = _two(args)
    v = analysis.iso_characterization(D, E, _flavor(args), fast=args.fast)
    table = [{"pair": list(k), "value": val} for k, val in sorted(v.table.items())]
    payload = {
        "flavor": v.flavor.value,
        "verdict": v.verdict.value,
        "isomorphic": v.isomorphic,
        "complete": v.complete,
        "table": table,
    }
    text = f"verdict: {v.verdict.value}\nisomorphic: {v.isomorphic}\ncomplete table: {v.complete}\n"
    text += "".join(f"  ({i},{j}) {'yes' if val else 'no'}\n" for (i, j), val in sorted(v.table.items()))
    _emit(args, payload, text)
    return OK


def cmd_certify(args) -> int:
    D = _one(args)
    c = analysis.certify_da_reconstructible(D, reading=args.reading)
    if c is None:
        _emit(args, {"certificate": None}, "no certificate found (this proves nothing)")
        return FALSE
    payload = {
        "certificate": {
            "cards": [j_card(x) for x in c.cards],
            "vertices": list(c.vertices),
            "alignment": {"v_star": c.alignment.v_star, "u_star": c.alignment.u_star, "psi": [list(p) for p in c.alignment.psi]},
            "multiplicity": c.multiplicity,
            "reading": c.reading,
            "cross_check_pastings": c.cross_check_pastings,
        }
    }
    text = (
        f"certificate: card pair from vertices {c.vertices[0]} and {c.vertices[1]}\n"
        f"  alignment v*={c.alignment.v_star} u*={c.alignment.u_star} psi={dict(c.alignment.psi)}\n"
        f"  multiplicity: {c.multiplicity}\n  reading: {c.reading}\n"
        f"  dapastings of the matching dacards: {c.cross_check_pastings} class"
    )
    _emit(args, payload, text)
    return OK


def cmd_s_iso(args) -> int:
    D, E = _two(args)
    w = analysis.s_isomorphism(D, E)
    if w == analysis.ISOMORPHIC:
        _emit(args, {"result": "isomorphic", "witness": None}, "isomorphic")
        return OK
    if w is None:
        _emit(args, {"result": "none", "witness": None}, "not S-isomorphic")
        return FALSE
    payload = {"result": "witness", "witness": {"F": j_digraph(w.F), "u": w.u, "v": w.v}}
    _emit(args, payload, f"reverse arc {w.u}->{w.v}; F:\n" + formats.format_adjm(w.F))
    return OK


def _verify_c8(args) -> int:
    C = corpus.corpus_get("c8").digraphs[0]
    p1 = pasting.pasting_from_host(C, 2, 0, Flavor.DACARD)
    p2 = pasting.pasting_from_host(C, 2, 4, Flavor.DACARD)
    c1, c2 = pasting.completions(p1), pasting.completions(p2)
    moves = any(0 in orb and 4 in orb for orb in automorphism_orbits(C))
    checks = {
        "arcs_v3_v1": p1.body.base.arc_count,
        "arcs_v3_v5": p2.body.base.arc_count,
        "labeled_isomorphic": p1 == p2,
        "unique_completion_is_host": len(c1) == 1 == len(c2) and is_isomorphic(c1[0], C) and is_isomorphic(c2[0], C),
        "automorphism_v1_to_v5": moves,
    }
    good = checks["arcs_v3_v1"] == 27 and checks["arcs_v3_v5"] == 26 and not checks["labeled_isomorphic"]
    good = good and checks["unique_completion_is_host"] and moves
    _emit(args, checks, "\n".join(f"{k}: {v}" for k, v in checks.items()))
    return OK if good else VIOLATION


def _verify_random(args) -> int:
    rng = random.Random(args.seed)
    n = args.n or 5
    bad = []
    for _ in range(args.random):
        arcs = [(i, j) for i in range(n) for j in range(n) if i != j and rng.random() < 0.4]
        G = build(n, arcs)
        for u, v in combinations(range(n), 2):
            P = pasting.pasting_from_host(G, u, v, Flavor.DACARD)
            comps = pasting.completions(P)  # raises on more than one
            rep = pasting.pasting_parameter_report(P, G)
            if len(comps) != 1 or not rep.ok:
                bad.append((G, u, v))
    payload = {"trials": args.random, "n": n, "seed": args.seed, "violations": len(bad)}
    _emit(args, payload, f"{args.random} random digraphs on {n} vertices, seed {args.seed}: {len(bad)} violations")
    return OK if not bad else VIOLATION


def cmd_verify(args) -> int:
    if args.random:
        return _verify_random(args)
    if getattr(args, "corpus", None) == "c8":
        return _verify_c8(args)
    D, E = _two(args)
    r = analysis.pair_report(D, E)
    payload = j_report(r)
    _emit(args, payload, "\n".join(f"{k}: {v}" for k, v in payload.items() if k != "s_witness"))
    return OK


def cmd_hunt(args) -> int:
    cfg = search.ScanConfig(
        n=args.n, kind=args.kind, mode=args.mode, max_seconds=args.max_seconds, ceiling=args.ceiling, workers=args.workers
    )
    if args.classify:
        part = search.pasted_pair_scan(cfg, args.checkpoint)

        def item(p):
            return {"D": j_digraph(p.D), "E": j_digraph(p.E), "report": j_report(p.report)}

        payload = {
            "n": cfg.n,
            "complete": part.complete,
            "pasted": [item(p) for p in part.pasted],
            "unpasted": [item(p) for p in part.unpasted],
            "violations": [item(p) for p in part.violations],
        }
        text = (
            f"pairs with an isomorphically pasted card pair: {len(part.pasted)}\n"
            f"pairs without: {len(part.unpasted)}\n"
            f"pasted pairs sharing a dadeck: {len(part.violations)}"
        )
        if part.violations:
            text += "\nCOUNTEREXAMPLE: pasted hypomorphic pair that is also da-hypomorphic"
        _emit(args, payload, text)
        return OK if part.complete else FALSE
    rep = search.scan(cfg, args.checkpoint)
    payload = {
        "kind": cfg.kind.value,
        "n": cfg.n,
        "mode": cfg.mode.value,
        "hosts": rep.hosts,
        "complete": rep.complete,
        "classes": [
            {"deck_key": c.deck_key, "members": [j_digraph(D) for D in c.digraphs()]} for c in rep.classes
        ],
    }
    text = f"{cfg.kind.value} n={cfg.n} {cfg.mode.value}: {rep.hosts} hosts, {len(rep.classes)} collision classes"
    if not rep.complete:
        text += " (INCOMPLETE: limit reached)"
    for c in rep.classes:
        text += f"\nclass {c.deck_key[:16]}:\n" + formats.format_document([(None, D) for D in c.digraphs()])
    loud = rep.classes and (cfg.kind is search.Kind.GRAPH or cfg.mode is Flavor.DACARD)
    if loud:
        text += "\nCOUNTEREXAMPLE: non-isomorphic hosts share a deck where none was expected"
    _emit(args, payload, text)
    return OK if rep.complete else FALSE


def cmd_corpus(args) -> int:
    if not args.id:
        payload = {"ids": list(corpus.IDS)}
        _emit(args, payload, "\n".join(f"{i}: {corpus.NOTES[i]}" for i in corpus.IDS))
        return OK
    e = corpus.corpus_get(args.id)
    names = ["D", "E"] if e.role is corpus.Role.PAIR else [e.id]
    payload = {"id": e.id, "role": e.role.value, "note": e.note, "digraphs": [j_digraph(D) for D in e.digraphs]}
    _emit(args, payload, f"# {e.note}\n" + formats.format_document(list(zip(names, e.digraphs))))
    return OK


# -- parser ------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="reconlab", description="Decks, pastings and reconstruction checks for small digraphs.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, files=True, corpus_opt=True, mode="card"):
        sp.add_argument("--format", choices=["text", "json"], default="text")
        sp.add_argument("--mode", "--flavor", dest="mode", choices=["card", "dacard"], default=mode)
        sp.add_argument("--graph", action="store_true", help="require symmetric input matrices")
        if files:
            sp.add_argument("files", nargs="*", help="ADJM file(s)")
        if corpus_opt:
            sp.add_argument("--corpus", choices=corpus.IDS)

    sp = sub.add_parser("deck", help="print the deck or dadeck")
    common(sp)
    sp.set_defaults(func=cmd_deck)

    sp = sub.add_parser("compare", help="do two digraphs share a deck")
    common(sp)
    sp.set_defaults(func=cmd_compare)

    sp = sub.add_parser("paste", help="enumerate pastings of two cards of a host")
    common(sp, files=False, corpus_opt=False)
    sp.add_argument("--deck-of", required=True)
    sp.add_argument("--cards", nargs=2, type=int, required=True, metavar=("I", "J"))
    sp.set_defaults(func=cmd_paste)

    sp = sub.add_parser("complete", help="completions of a pasting")
    common(sp, files=False, corpus_opt=False)
    sp.add_argument("pasting")
    sp.add_argument("--deck")
    sp.add_argument("--deck-of")
    sp.set_defaults(func=cmd_complete)

    sp = sub.add_parser("pasted-iso", help="are two cards pasted isomorphically in both hosts")
    common(sp)
    sp.add_argument("--cards", nargs=2, type=int, required=True, metavar=("I", "J"))
    sp.set_defaults(func=cmd_pasted_iso)

    sp = sub.add_parser("dichotomy", help="pasted-isomorphically table over all card pairs")
    common(sp, mode="dacard")
    sp.add_argument("--fast", action="store_true")
    sp.set_defaults(func=cmd_dichotomy)

    sp = sub.add_parser("certify", help="search for a da-reconstructibility certificate")
    common(sp)
    sp.add_argument("--reading", choices=sorted(analysis.READINGS), default="strict")
    sp.set_defaults(func=cmd_certify)

    sp = sub.add_parser("s-iso", help="one-arc-reversal relation")
    common(sp)
    sp.set_defaults(func=cmd_s_iso)

    sp = sub.add_parser("verify", help="pair report, c8 checks, or randomized pasting checks")
    common(sp)
    sp.add_argument("--random", type=int, default=0, metavar="K", help="run K randomized dapasting trials")
    sp.add_argument("-n", type=int, default=None)
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("hunt", help="exhaustive deck-collision scan")
    sp.add_argument("--format", choices=["text", "json"], default="text")
    sp.add_argument("--kind", choices=["graph", "digraph", "tournament"], default="digraph")
    sp.add_argument("--mode", "--flavor", dest="mode", choices=["card", "dacard"], default="card")
    sp.add_argument("-n", type=int, required=True)
    sp.add_argument("--checkpoint")
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--max-seconds", type=float, default=None)
    sp.add_argument("--ceiling", type=int, default=None)
    sp.add_argument("--classify", action="store_true", help="split collision pairs by isomorphically pasted cards")
    sp.set_defaults(func=cmd_hunt)

    sp = sub.add_parser("corpus", help="list or print built-in digraphs")
    sp.add_argument("--format", choices=["text", "json"], default="text")
    sp.add_argument("id", nargs="?", choices=corpus.IDS)
    sp.set_defaults(func=cmd_corpus)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else USAGE
    try:
        return args.func(args)
    except TheoremViolation as e:
        print(f"THEOREM VIOLATION: {e}", file=sys.stderr)
        if e.witness is not None:
            print(f"witness: {e.witness!r}", file=sys.stderr)
        return VIOLATION
    except (UsageError, GraphError, DeckError, search.ScanError, corpus.CorpusError, OSError, ValueError) as e:
        print(f"reconlab: error: {e}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
