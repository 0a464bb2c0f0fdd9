"""Command-line interface.

Exit status: 0 on success, 1 on a domain error (for example a non-generic
length vector), 2 on a usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from . import core
from .chambers import entry_for_lengths, enumerate_chambers
from .errors import NotSpecial, PolyspaceError, WrongType
from .homology import a_vector, betti
from .morse import check_subset_bijection, critical_points, reduction
from .presentations import h1_deficit, present_h1, raag_graph
from .taxonomy import annihilator_table, bettispecial_crosscheck, classify, d_invariants
from .walker import verify_walker


def _lengths(text: str):
    try:
        return core.parse_lengths(text)
    except PolyspaceError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _dump(obj) -> str:
    return json.dumps(obj)


def _fmt_lengths(lengths) -> str:
    return ",".join(str(q) for q in lengths)


# ---------------------------------------------------------------------------
# subcommands; each returns the text to print


def cmd_classify(args) -> str:
    cls = classify(args.lengths)
    if args.json:
        return _dump({"lengths": [core.format_rational(q) for q in args.lengths], "class": cls.tag()})
    return str(cls)


def cmd_betti(args) -> str:
    b = betti(args.lengths)
    if args.json:
        return _dump({"lengths": [core.format_rational(q) for q in args.lengths], "betti": list(b)})
    return "(" + ", ".join(map(str, b)) + ")"


def _read_vectors(path: str):
    stream = sys.stdin if path == "-" else open(path)
    try:
        for line in stream:
            line = line.strip()
            if line:
                yield core.as_lengths(json.loads(line)["representative"])
    finally:
        if stream is not sys.stdin:
            stream.close()


def cmd_signature(args) -> str:
    if args.source is None and args.lengths is None:
        raise _Usage("signature needs --lengths or --from")
    vectors = list(_read_vectors(args.source)) if args.source else [args.lengths]
    lines = []
    for v in vectors:
        entry = entry_for_lengths(v)
        lines.append(_dump(entry.to_json()) if args.json else str(entry.signature))
    return "\n".join(lines)


def cmd_chambers(args) -> str:
    catalog = enumerate_chambers(args.n, args.jobs)
    if args.json:
        return "\n".join(_dump(e.to_json()) for e in catalog)
    rows = [f"{len(catalog)} chambers for n={args.n}"]
    for k, e in enumerate(catalog):
        rows.append(f"{k:4d}  {_fmt_lengths(e.representative):<28} {str(e.betti):<24} {e.class_tag}")
    return "\n".join(rows)


def cmd_present(args) -> str:
    ph = present_h1(args.lengths)
    try:
        deficit = h1_deficit(args.lengths)
    except NotSpecial:
        deficit = None
    if args.json:
        out = ph.to_json()
        out["h1_deficit"] = deficit
        return _dump(out)
    p = ph.presentation
    rows = [str(ph.chamber_class), "generators: " + " ".join(p.generators), "relations:"]
    for rel in p.relations:
        rows.append("  " + p.format_element({m: c for c, m in rel}))
    rows.append("graded ranks: " + str(ph.ranks()))
    rows.append("torus images:")
    for j, x in ph.torus_images:
        rows.append(f"  X_{j} -> {p.format_element(x)}")
    if deficit is not None:
        rows.append(f"deficit in degree {ph.deficit_degree}: {deficit}")
    try:
        g = raag_graph(args.lengths)
        rows.append(f"RAAG graph: {len(g.vertices)} vertices, {len(g.edges)} edges")
    except WrongType:
        pass
    return "\n".join(rows)


def cmd_invariants(args) -> str:
    cls = classify(args.lengths)
    sig = core.chamber_signature(args.lengths)
    out = {
        "lengths": [core.format_rational(q) for q in args.lengths],
        "class": cls.tag(),
        "a_vector": list(a_vector(args.lengths)),
        "betti": list(betti(args.lengths)),
        "annihilators": {f"{k},{i}": r for (k, i), r in annihilator_table(sig)},
    }
    if cls.is_special:
        out["d"] = list(d_invariants(args.lengths).as_tuple())
        rep = bettispecial_crosscheck(args.lengths)
        out["crosscheck"] = {
            "b1": [rep.b1_formula, rep.b1_actual],
            "b2": [rep.b2_formula, rep.b2_actual],
            "passed": rep.passed,
        }
    if args.json:
        return _dump(out)
    rows = []
    for key, value in out.items():
        rows.append(f"{key}: {value}")
    return "\n".join(rows)


def cmd_morse(args) -> str:
    points = critical_points(args.lengths)
    bij = check_subset_bijection(args.lengths)
    out = {
        "critical_points": [q.to_json() for q in points],
        "bijection": bij.to_json(),
    }
    if len(args.lengths) >= 5:
        out["reduction"] = reduction(args.lengths).to_json()
    if args.json:
        return _dump(out)
    rows = [f"{len(points)} critical points"]
    for q in points:
        rows.append(f"  J={core.format_mask(q.J)} index={q.index} t={q.t}")
    rows.append(f"epsilon={bij.epsilon} bijection {'passes' if bij.passed else 'FAILS'}")
    if "reduction" in out:
        r = out["reduction"]
        rows.append(f"reduced vector {','.join(r['target'])}: {r['target_class']}")
    return "\n".join(rows)


def cmd_walker(args) -> str:
    rep = verify_walker(args.n, args.jobs)
    if args.json:
        return _dump(rep.to_json())
    rows = [f"n={rep.n}: {len(rep.representatives)} chambers, {len(rep.pairs)} pairs"]
    for t in (1, 2, 3, 4):
        rows.append(f"  tier {t}: {rep.count(t)}")
    rows.append(f"  unexplained: {len(rep.unexplained)}")
    for p in rep.residuals + rep.unexplained:
        a, b = rep.representatives[p.first], rep.representatives[p.second]
        rows.append(f"  [{p.tier}] {_fmt_lengths(a)} | {_fmt_lengths(b)}: {p.witness}")
    return "\n".join(rows)


class _Usage(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="polyspace", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, helptext, lengths=False, n=False, jobs=False):
        p = sub.add_parser(name, help=helptext)
        if lengths:
            p.add_argument("--lengths", type=_lengths, required=lengths == "required",
                           help="comma-separated rationals, e.g. 1,1,2,2,3 or 1/2,1,1")
        if n:
            p.add_argument("--n", type=int, required=True, help="number of edges")
        if jobs:
            p.add_argument("--jobs", type=int, default=None, help="worker processes")
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.add_argument("--out", help="write output to this file instead of stdout")
        p.set_defaults(func=func)
        return p

    add("classify", cmd_classify, "chamber class of a length vector", lengths="required")
    add("betti", cmd_betti, "Betti numbers", lengths="required")
    sig = add("signature", cmd_signature, "chamber signature", lengths=True)
    sig.add_argument("--from", dest="source", help="JSON lines with a representative field ('-' for stdin)")
    add("chambers", cmd_chambers, "enumerate all chambers", n=True, jobs=True)
    add("present", cmd_present, "presentation of the degree-one generated subring", lengths="required")
    add("invariants", cmd_invariants, "annihilator and d-invariants", lengths="required")
    add("morse", cmd_morse, "critical points of the shrinking cobordism", lengths="required")
    add("walker-verify", cmd_walker, "pairwise chamber separation report", n=True, jobs=True)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        text = args.func(args)
    except _Usage as exc:
        parser.print_usage(sys.stderr)
        print(f"polyspace: error: {exc}", file=sys.stderr)
        return 2
    except PolyspaceError as exc:
        print(f"polyspace: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except (OSError, ValueError, KeyError) as exc:
        print(f"polyspace: cannot read input: {exc}", file=sys.stderr)
        return 1
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
