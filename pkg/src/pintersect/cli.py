"""Command-line front end.

Exit codes: 0 success, 2 validation error, 3 capacity guard, 4 timeout with incumbent.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from math import comb

from . import certificates as cert
from . import constructions as cons
from . import projections as proj
from .errors import CapacityError, InvalidArgument
from .graphs import (
    Kind,
    PropertySpec,
    component_count,
    has_cutvertex,
    has_hamilton_cycle,
    has_hamilton_path,
    is_connected,
    is_strongly_connected,
    is_two_edge_connected,
    parse_graph,
)
from .search import CONJECTURES, SearchOptions, conjecture_report, max_family

EXIT_OK, EXIT_VALIDATION, EXIT_CAPACITY, EXIT_TIMEOUT = 0, 2, 3, 4

CONSTRUCTIONS = ("spanning-tree", "hamilton-cycle", "cycle-minus-one", "flower", "noneq-hampath", "directed-cycle")


class _Usage(InvalidArgument):
    pass


def _emit(rows: list[dict], fmt: str, text: str, out) -> None:
    if fmt == "json":
        out.write(json.dumps(rows if len(rows) != 1 else rows[0], indent=2, sort_keys=False) + "\n")
    elif fmt == "csv":
        buf = io.StringIO()
        fields = list(dict.fromkeys(k for r in rows for k in r))
        writer = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
        writer.writeheader()
        for r in rows:
            writer.writerow({k: json.dumps(v) if isinstance(v, (list, dict)) else v for k, v in r.items()})
        out.write(buf.getvalue())
    else:
        out.write(text if text.endswith("\n") else text + "\n")


def _require_n(args) -> int:
    if args.n is None:
        raise _Usage("--n is required for this subcommand")
    return args.n


def _prop(args, default: str | None = None) -> PropertySpec:
    name = args.property or default
    if name is None:
        raise _Usage("--property is required for this subcommand")
    return PropertySpec.parse(name, args.k)


def _kind(args, default: str = "simple") -> Kind:
    return Kind(args.kind or default)


# --------------------------------------------------------------------------
# subcommands
# --------------------------------------------------------------------------


def cmd_props(args, out) -> int:
    n = _require_n(args)
    kind = _kind(args)
    g = parse_graph(args.graph, n, kind)
    if kind is Kind.SIMPLE:
        row = {
            "graph": g.to_string(),
            "kind": kind.value,
            "n": n,
            "edges": g.size,
            "components": component_count(g),
            "connected": is_connected(g),
            "hamiltonian-cycle": has_hamilton_cycle(g),
            "hamiltonian-path": has_hamilton_path(g),
            "cutvertex": has_cutvertex(g),
            "two-edge-connected": is_two_edge_connected(g),
        }
    else:
        row = {
            "graph": g.to_string(),
            "kind": kind.value,
            "n": n,
            "arcs": g.size,
            "strongly-connected": is_strongly_connected(g),
        }
    text = "\n".join(f"{k}: {str(v).lower() if isinstance(v, bool) else v}" for k, v in row.items())
    _emit([row], args.output, text, out)
    return EXIT_OK


def _construct(args) -> tuple[cons.Family | None, int, str]:
    n = _require_n(args)
    name = args.name
    m = comb(n, 2)
    count_only = args.count_only
    if name == "spanning-tree":
        path = cons.path_graph(n)
        size = cons.upset_size(path)
        fam = None if count_only else cons.upset_of(path)
        return fam, size, f"2^(C(n,2)-(n-1)) = 1/2^{n - 1} of all {2**m} graphs"
    if name == "hamilton-cycle":
        size = cons.hamilton_cycle_size(n)
        fam = None if count_only else cons.hamilton_cycle_family(None, n)
        return fam, size, f"2^(C(n,2)-n) = 1/2^{n} of all {2**m} graphs"
    if name == "cycle-minus-one":
        size = cons.cycle_minus_one_size(n)
        fam = None if count_only else cons.cycle_minus_one_family(None, n)
        return fam, size, f"(n+1)*2^(C(n,2)-n) = {n + 1}/2^{n} of all {2**m} graphs"
    if name == "flower":
        if args.lengths:
            lengths = [int(x) for x in args.lengths.split(",")]
        else:
            lengths = cons.balanced_petals(n, 2)
            if lengths is None:
                raise _Usage(f"no two-petal flower fits n={n}; pass --lengths")
        size = cons.flower_size(lengths, n)
        fam = None if count_only else cons.flower_family(lengths, n)
        return fam, size, f"prod(len+1)*2^(C(n,2)-sum len) with lengths {','.join(map(str, lengths))}"
    if name == "noneq-hampath":
        size = cons.hamilton_path_noneq_size(n)
        fam = None if count_only else cons.hamilton_path_noneq_family(n)
        return fam, size, f"2^(C(n,2)-(n-1)) = 1/2^{n - 1} of all {2**m} graphs"
    if name == "directed-cycle":
        kind = _kind(args, "directed")
        if kind is Kind.SIMPLE:
            raise _Usage("directed-cycle needs --kind directed or oriented")
        if n < 2 or (kind is Kind.ORIENTED and n < 3):
            raise _Usage("directed cycle needs n >= 3 (n >= 2 for directed)")
        h = cons.directed_cycle(range(n), n, kind)
        size = cons.upset_size(h)
        fam = None if count_only else cons.upset_of(h)
        base, denom = (4, 2) if kind is Kind.DIRECTED else (3, 3)
        return fam, size, f"1/{denom}^{n} of all {base**m} {kind.value} graphs"
    raise _Usage(f"unknown construction {name!r}; choose from {', '.join(CONSTRUCTIONS)}")


def cmd_construct(args, out) -> int:
    fam, size, formula = _construct(args)
    if fam is not None and len(fam) != size:
        raise AssertionError(f"materialized {len(fam)} members, closed form {size}")
    row = {"construction": args.name, "n": args.n, "size": size, "closed_form": formula}
    if fam is not None:
        row["kind"] = fam.kind.value
        row["members"] = fam.strings()
    text = (fam.dumps() if fam is not None else "") + f"size {size} ({formula})"
    _emit([row], args.output, text, out)
    return EXIT_OK


def cmd_certify(args, out) -> int:
    n = _require_n(args)
    kind = _kind(args)
    if kind is Kind.SIMPLE:
        space = cert.star_span(n)
        c = cert.verify_undirected_cut_property(space, n, witnesses=args.witnesses)
        frac = f"1/2^{n - 1} of all graphs"
        gens = f"stars at 0..{n - 2}"
    elif kind is Kind.DIRECTED:
        space = cert.out_star_span(n)
        c = cert.verify_directed_cut_property(space, n, witnesses=args.witnesses)
        frac = f"1/2^{n} of all directed graphs"
        gens = f"out-stars at 0..{n - 1}"
    else:
        raise _Usage("certify supports --kind simple or directed (no GF(2) certificate for oriented graphs)")
    row = c.to_dict(n, kind.value)
    lines = [
        f"kind: {kind.value}",
        f"n: {n}",
        f"generators: {gens}",
        f"rank: {c.rank}",
        f"nonzero elements checked: {c.checked}",
        f"cut property: {'valid' if c.valid else 'INVALID'}",
        f"coset bound: 2^{space.ambient_dim - c.rank} = {c.bound} ({frac})",
    ]
    if c.shortcut_ok is not None:
        lines.append(f"singleton out-cut shortcut: {'ok' if c.shortcut_ok else 'FAILED'}")
    if c.failing_element is not None:
        lines.append(f"failing element: {row['failing_element']}")
    for w in row.get("witnesses", []):
        lines.append(f"  {w['element']}  side {w['side']}")
    _emit([row], args.output, "\n".join(lines), out)
    return EXIT_OK


def cmd_bound(args, out) -> int:
    n = _require_n(args)
    kind = _kind(args)
    if kind is Kind.ORIENTED:
        prop = _prop(args, "strongly-connected")
        if prop.kind != "strongly-connected":
            raise _Usage("--kind oriented pairs with --property strongly-connected")
        rep = proj.oriented_strong_bound(n)
        cover = proj.star_cover(n)
        sample_limit = 3**6
        frac = f"1/3^{n} of all {rep.total} oriented graphs"
        formula = f"3^(C(n,2)-n) = 3^{comb(n, 2) - n}"
    elif kind is Kind.SIMPLE:
        prop = _prop(args, "hamiltonian-cycle")
        if prop.kind not in ("hamiltonian-cycle", "no-cutvertex"):
            raise _Usage("--kind simple pairs with --property hamiltonian-cycle or no-cutvertex")
        rep = proj.hamiltonian_bound(n)
        cover = proj.deletion_cover(n)
        sample_limit = 2**12
        frac = f"1/2^{n} of all {rep.total} graphs"
        formula = f"2^(C(n,2)-n) = 2^{comb(n, 2) - n}"
    else:
        raise _Usage("bound supports --kind oriented or simple")
    fam = cons.construction_for(kind, n, prop, limit=sample_limit) if _fits(kind, n, prop, sample_limit) else None
    if fam is not None:
        rep.observed = proj.observed_projection_sizes(fam, cover)
    row = {
        "kind": rep.kind,
        "property": prop.name,
        "n": n,
        "blocks": len(rep.caps),
        "multiplicity": rep.multiplicity,
        "block_sizes": rep.block_sizes,
        "caps": rep.caps,
        "cap_product": rep.cap_product,
        "bound": rep.bound,
        "construction_projection_sizes": rep.observed,
    }
    lines = [f"kind: {rep.kind}  property: {prop.name}  n: {n}", "block  coords  cap" + ("  construction" if rep.observed else "")]
    for b in range(len(rep.caps)):
        extra = f"  {rep.observed[b]}" if rep.observed else ""
        lines.append(f"{b:>5}  {rep.block_sizes[b]:>6}  {rep.caps[b]}{extra}")
    lines += [
        f"cover multiplicity k: {rep.multiplicity}",
        f"product of caps: {rep.cap_product}",
        f"bound: {rep.bound} = {formula} ({frac})",
    ]
    _emit([row], args.output, "\n".join(lines), out)
    return EXIT_OK


def _fits(kind: Kind, n: int, prop: PropertySpec, limit: int) -> bool:
    if kind is Kind.ORIENTED:
        return n >= 3 and 3 ** (comb(n, 2) - n) <= limit
    return n >= 3 and cons.hamilton_cycle_size(n) <= limit


def _options(args) -> SearchOptions:
    if args.threads < 1:
        raise _Usage("--threads must be >= 1")
    if args.time_limit is not None and args.time_limit <= 0:
        raise _Usage("--time-limit must be positive")
    return SearchOptions(
        threads=args.threads,
        time_limit=args.time_limit,
        symmetry=args.symmetry,
        seed=args.seed_construction,
        all_maximum=args.all,
        force=args.force,
    )


def cmd_search(args, out) -> int:
    n = _require_n(args)
    kind = _kind(args)
    prop = _prop(args)
    if args.all and args.symmetry:
        raise _Usage("--all and --symmetry cannot be combined (orbit pruning drops maxima)")
    res = max_family(kind, n, prop, _options(args))
    row = res.to_dict()
    lines = [
        f"kind: {kind.value}  property: {prop.name}  n: {n}",
        f"universe (graphs satisfying the property): {res.universe}",
        f"status: {res.status}",
        f"max size: {res.max_size}" if res.optimum_proven else f"lower bound: {res.max_size}",
    ]
    total = {Kind.SIMPLE: 2, Kind.ORIENTED: 3, Kind.DIRECTED: 4}[kind] ** comb(n, 2)
    for ref in res.bound_refs:
        tag = "proven" if ref["proven"] else "conjectured"
        lines.append(f"{ref['name']} ({tag}): {ref['value']}")
    lines.append(f"all {kind.value} graphs: {total}")
    if res.witness is not None:
        lines.append(f"witness ({len(res.witness)} members):")
        lines.extend(f"  {s}" for s in res.witness.strings())
    if res.all_maximum is not None:
        lines.append(f"maximum families: {len(res.all_maximum)}")
        for i, fam in enumerate(res.all_maximum):
            lines.append(f"  [{i}] " + " ".join(fam.strings()))
    _emit([row], args.output, "\n".join(lines), out)
    return EXIT_OK if res.complete else EXIT_TIMEOUT


def cmd_conjectures(args, out) -> int:
    n = _require_n(args)
    which = [args.which] if args.which else list(CONJECTURES)
    options = _options(args)
    reports = [conjecture_report(n, w, options) for w in which]
    rows = [r.to_dict() for r in reports]
    lines = [f"n: {n}", "conjecture          bound     construction  search         verdict"]
    for r in reports:
        bound = r.to_dict()["conjectured_bound"]
        search = f"{r.search.max_size}" + ("" if r.search.optimum_proven else " (lower)")
        cons_size = "-" if r.construction_size is None else str(r.construction_size)
        lines.append(f"{r.which:<19} {bound!s:<9} {cons_size:<13} {search:<14} {r.verdict}" + (f"  [{r.note}]" if r.note else ""))
    for r in reports:
        if r.search.witness is not None and (args.witnesses or r.verdict == "counterexample"):
            lines.append(f"{r.which} witness ({len(r.search.witness)} members): " + " ".join(r.search.witness.strings()))
    _emit(rows, args.output, "\n".join(lines), out)
    return EXIT_OK if all(r.search.complete for r in reports) else EXIT_TIMEOUT


def cmd_oracle(args, out) -> int:
    m = args.m if args.m is not None else (None if args.n is None else args.n - 1)
    if m is None:
        raise _Usage("--m (or --n, meaning m = n-1) is required")
    size, witness = proj.ft_max_2agree(m, args.q, args.t, time_limit=args.time_limit)
    row = {"m": m, "q": args.q, "t": args.t, "max_size": size, "witness": ["".join(map(str, p)) for p in witness]}
    text = f"largest subset of [{args.q}]^{m} with pairwise agreement >= {args.t}: {size}\nwitness: " + " ".join(row["witness"])
    _emit([row], args.output, text, out)
    return EXIT_OK


COMMANDS = {
    "props": cmd_props,
    "construct": cmd_construct,
    "certify": cmd_certify,
    "bound": cmd_bound,
    "search": cmd_search,
    "conjectures": cmd_conjectures,
    "oracle": cmd_oracle,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, help="number of vertices")
    common.add_argument("--kind", choices=[k.value for k in Kind])
    common.add_argument("--property", help="e.g. connected, hamiltonian-cycle, at-most-2-components")
    common.add_argument("--k", type=int, help="component bound for at-most-k-components")
    common.add_argument("--output", choices=("text", "json", "csv"), default="text")
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--time-limit", type=float, default=600.0, help="seconds (default 600)")
    common.add_argument("--symmetry", action="store_true", help="root-level orbit pruning")
    common.add_argument("--force", action="store_true", help="lift the universe guard")
    common.add_argument("--seed-construction", action="store_true")
    common.add_argument("--all", action="store_true", help="enumerate every maximum family")
    common.add_argument("--witnesses", action="store_true")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="pintersect", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("props", parents=[common], help="evaluate predicates on one graph")
    p.add_argument("graph", help="digit string in slot order")
    p = sub.add_parser("construct", parents=[common], help="materialize a named family")
    p.add_argument("name", choices=CONSTRUCTIONS)
    p.add_argument("--lengths", help="flower petal lengths, comma separated")
    p.add_argument("--count-only", action="store_true", help="closed-form size only")
    sub.add_parser("certify", parents=[common], help="star-span cut certificate and coset bound")
    sub.add_parser("bound", parents=[common], help="projection / uniform-cover bound pipeline")
    sub.add_parser("search", parents=[common], help="exact maximum family search")
    p = sub.add_parser("conjectures", parents=[common], help="compare open conjectures with search")
    p.add_argument("--which", choices=sorted(CONJECTURES))
    p = sub.add_parser("oracle", parents=[common], help="brute-force 2-agreement maximum in [q]^m")
    p.add_argument("--m", type=int)
    p.add_argument("--q", type=int, default=3)
    p.add_argument("--t", type=int, default=2)
    return parser


def main(argv: list[str] | None = None, out=None) -> int:
    out = sys.stdout if out is None else out
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return COMMANDS[args.command](args, out)
    except CapacityError as exc:
        print(f"capacity: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except InvalidArgument as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except TimeoutError as exc:
        print(f"timeout: {exc}", file=sys.stderr)
        return EXIT_TIMEOUT


if __name__ == "__main__":
    sys.exit(main())
