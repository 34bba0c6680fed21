"""Batch command-line front end.

Matrix grammar (the serialized form used by --logic and query files):

    matrix    := component ("x" component)*
    component := chain "[>=" INT "]"
    chain     := "GV" INT "~" | "LV" INT | "FT" INT

Query files hold one query per line, ``premises |- conclusion [@ LOGIC]``
with premises comma-separated (possibly empty); ``#`` starts a comment.
Record output is one JSON object per line with fields query, logic,
holds, counterexample, steps, complete; identical inputs produce
byte-identical records.

Exit codes: 0 all queries hold, 1 some query fails, 2 error.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, TextIO

from .algebra import ChainAlgebra, Kind, ProductMatrix, ft_chain, godel_chain, matrix, mv_chain
from .analysis import classify_ideal, verify_saturated_product
from .catalog import (
    CatalogIndex, LogicDescriptor, enumerate_godel_catalog,
    enumerate_luk_catalog, named,
)
from .entail import (
    DEFAULT_BUDGET, EntailmentVerdict, StandardFilterClass, decide_standard,
    entails_family, semantically_equal,
)
from .errors import InputError, ParseError, UnknownLogicError
from .formula import Formula, parse, parse_formula_set, print_formula
from .terms import TRANSLATIONS, delta_set_translation

_CHAIN_RE = re.compile(r"(GV(\d+)~|LV(\d+)|FT(\d+))\[>=(\d+)\]")


def parse_matrix_text(text: str) -> ProductMatrix:
    """Parse the serialized matrix grammar, e.g. GV5~[>=2]xGV3~[>=1]."""
    comps = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        if comps:
            if text[pos] != "x":
                raise ParseError("expected 'x' between components", pos)
            pos += 1
        m = _CHAIN_RE.match(text, pos)
        if not m:
            raise ParseError("expected a chain component like GV5~[>=2]", pos)
        if m.group(2):
            chain: ChainAlgebra = godel_chain(int(m.group(2)))
        elif m.group(3):
            chain = mv_chain(int(m.group(3)))
        else:
            chain = ft_chain(int(m.group(4)))
        comps.append((chain, int(m.group(5))))
        pos = m.end()
    if not comps:
        raise ParseError("empty matrix", 0)
    return matrix(*comps)


def resolve_logic(text: str) -> LogicDescriptor:
    """A catalog name or a serialized matrix."""
    try:
        return named(text)
    except UnknownLogicError:
        pass
    mat = parse_matrix_text(text)
    return LogicDescriptor((mat,), mat.components[0][0].kind)


@dataclass
class Query:
    gamma: list[Formula]
    phi: Formula
    logic_text: str | None
    source: str


def parse_query(line: str) -> Query:
    at_logic = None
    body = line
    if "@" in line:
        body, _, logic_part = line.rpartition("@")
        at_logic = logic_part.strip()
    if "|-" not in body:
        raise ParseError("a query needs '|-'", 0)
    left, _, right = body.partition("|-")
    gamma = parse_formula_set(left)
    phi = parse(right)
    return Query(gamma, phi, at_logic, line.strip())


@dataclass
class RunConfig:
    command: str
    queries: list[Query] | None = None
    logic: LogicDescriptor | None = None
    logic_text: str | None = None
    filter_class: StandardFilterClass | None = None
    godel_n: int | None = None
    luk_n: int | None = None
    luk_i: int | None = None
    max_components: int = 3
    budget: int = DEFAULT_BUDGET
    workers: int = 1
    fmt: str = "human"
    translation: str | None = None
    formulas_text: str | None = None
    check_roundtrip: bool = False
    out: TextIO = sys.stdout


def _element_json(chain_or_mat, value):
    if isinstance(value, tuple):
        return [
            {"index": v, "value": str(chain.value(v))}
            for v, (chain, _) in zip(value, chain_or_mat.components)
        ]
    if isinstance(chain_or_mat, ProductMatrix):
        chain = chain_or_mat.components[0][0]
    else:
        chain = chain_or_mat
    return {"index": value, "value": str(chain.value(value))}


def _verdict_record(query: Query, logic_text: str, v: EntailmentVerdict) -> dict:
    rec = {
        "query": query.source,
        "logic": logic_text,
        "relation": v.relation,
        "holds": v.holds,
        "steps": v.steps,
        "complete": v.complete,
        "counterexample": None,
    }
    if v.counterexample is not None:
        rec["counterexample"] = {
            name: _element_json(v.matrix, value)
            for name, value in sorted(v.counterexample.items())
        }
        rec["refuting_matrix"] = str(v.matrix)
        if v.values_trace:
            rec["values"] = [
                {"formula": f, "value": val if not isinstance(val, tuple) else list(val)}
                for f, val in v.values_trace
            ]
    return rec


def _emit(config: RunConfig, rec: dict, human: str) -> None:
    if config.fmt == "records":
        print(json.dumps(rec, sort_keys=True), file=config.out)
    else:
        print(human, file=config.out)


def cmd_entail(config: RunConfig) -> int:
    any_failed = False
    for query in config.queries or []:
        if query.logic_text:
            logic = resolve_logic(query.logic_text)
            logic_text = query.logic_text
        elif config.filter_class is not None:
            logic = None
            logic_text = f"standard:{config.filter_class.value}"
        elif config.logic is not None:
            logic = config.logic
            logic_text = config.logic_text or str(config.logic)
        else:
            raise InputError("no logic given: use --logic or --class or '@'")
        if logic is None:
            v = decide_standard(config.filter_class, query.gamma, query.phi,
                                budget=config.budget, workers=config.workers)
        else:
            v = entails_family(logic.family, query.gamma, query.phi,
                               budget=config.budget, workers=config.workers)
        any_failed |= not v.holds
        human = f"{query.source} @ {logic_text}: {'holds' if v.holds else 'FAILS'}"
        if v.counterexample is not None:
            parts = []
            for name, value in sorted(v.counterexample.items()):
                if isinstance(value, tuple):
                    shown = "(" + ",".join(
                        str(chain.value(x))
                        for x, (chain, _) in zip(value, v.matrix.components)) + ")"
                else:
                    chain = v.matrix.components[0][0]
                    shown = str(chain.value(value))
                parts.append(f"{name}={shown}")
            human += f"  counterexample on {v.matrix}: {', '.join(parts)}"
        _emit(config, _verdict_record(query, logic_text, v), human)
    return 1 if any_failed else 0


def cmd_classify(config: RunConfig) -> int:
    if config.godel_n is not None:
        cat = enumerate_godel_catalog(config.godel_n, config.max_components)
        reports = classify_ideal(cat, budget=config.budget)
        label = f"godel n={config.godel_n}"
    else:
        cat = enumerate_luk_catalog(config.luk_n, config.luk_i)
        reports = classify_ideal(cat, budget=config.budget)
        label = f"luk n={config.luk_n} i={config.luk_i}"
    for r in reports:
        rec = r.record()
        rec["catalog"] = label
        human = (f"{r.logic}: paraconsistent"
                 f"{', saturated' if r.saturated else ''}"
                 f"{', ideal' if r.ideal else ''}")
        _emit(config, rec, human)
    saturated = sorted(str(r.logic) for r in reports if r.saturated)
    ideal = sorted(str(r.logic) for r in reports if r.ideal)
    summary = {
        "catalog": label,
        "entries": len(cat.entries),
        "paraconsistent": len(reports),
        "saturated": saturated,
        "ideal": ideal,
    }
    _emit(config, summary,
          f"[{label}] entries={len(cat.entries)} saturated={saturated} ideal={ideal}")
    return 0


def cmd_translate(config: RunConfig) -> int:
    name = config.translation
    fs = parse_formula_set(config.formulas_text or "")
    if name == "delta-set":
        out = delta_set_translation(fs)
        print(", ".join(print_formula(f) for f in out), file=config.out)
        return 0
    if name not in TRANSLATIONS:
        raise InputError(f"unknown translation {name!r}; "
                         f"known: {sorted(TRANSLATIONS)} and delta-set")
    tr = TRANSLATIONS[name]
    out = tr.on_set(fs)
    print(", ".join(print_formula(f) for f in out), file=config.out)
    if config.check_roundtrip and name in ("ft-star", "ft-hash"):
        from .terms import ft_hash, ft_star
        for f in fs:
            if name == "ft-hash":
                back, algebra = ft_star(ft_hash(f)), godel_chain(5)
            else:
                back, algebra = ft_hash(ft_star(f)), ft_chain(5)
            ok = semantically_equal(f, back, algebra)
            print(f"roundtrip {print_formula(f)}: "
                  f"{'equivalent' if ok else 'NOT equivalent'}", file=config.out)
            if not ok:
                return 1
    return 0


def cmd_export_dot(config: RunConfig) -> int:
    if config.godel_n is not None:
        cat = enumerate_godel_catalog(config.godel_n, config.max_components)
        title = f"godel_{config.godel_n}"
    else:
        cat = enumerate_luk_catalog(config.luk_n, config.luk_i)
        title = f"luk_{config.luk_n}_{config.luk_i}"
    print(export_dot(cat, title), file=config.out)
    return 0


def export_dot(cat: CatalogIndex, title: str) -> str:
    """DOT digraph of certified extension edges (upward inclusions);
    uncertified pairs are simply absent.  Paraconsistent entries are
    drawn boxed."""
    from .analysis import _entry_paraconsistent

    lines = [f"digraph {title} {{", "  rankdir=BT;"]
    for idx, entry in enumerate(cat.entries):
        label = entry.name or str(entry.single)
        shape = "box" if _entry_paraconsistent(entry.single) else "ellipse"
        lines.append(f'  n{idx} [label="{label}", shape={shape}];')
    for a, b, _ in cat.edges():
        lines.append(f"  n{a} -> n{b};")
    lines.append("}")
    return "\n".join(lines)


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="manyval",
        description="finite many-valued matrix logic engine")
    sub = ap.add_subparsers(dest="command", required=True)

    ent = sub.add_parser("entail", help="decide consequence queries")
    ent.add_argument("query", nargs="?", help="inline query 'premises |- phi'")
    ent.add_argument("--file", help="query file, one query per line")
    ent.add_argument("--logic", help="logic name or serialized matrix")
    ent.add_argument("--class", dest="filter_class",
                     choices=[c.value for c in StandardFilterClass],
                     help="standard-algebra designation class")
    _common(ent)

    cls = sub.add_parser("classify", help="catalog classification")
    cls.add_argument("--godel", type=int, help="chain size n")
    cls.add_argument("--luk", type=int, help="Lukasiewicz parameter n")
    cls.add_argument("--i", type=int, help="filter numerator i (with --luk)")
    cls.add_argument("--max-components", type=int, default=3)
    _common(cls)

    tr = sub.add_parser("translate", help="apply a named translation")
    tr.add_argument("translation",
                    choices=sorted(TRANSLATIONS) + ["delta-set"])
    tr.add_argument("formulas", help="comma-separated formulas")
    tr.add_argument("--check-roundtrip", action="store_true")
    _common(tr)

    dot = sub.add_parser("export-dot", help="extension-edge graph in DOT")
    dot.add_argument("--godel", type=int)
    dot.add_argument("--luk", type=int)
    dot.add_argument("--i", type=int)
    dot.add_argument("--max-components", type=int, default=3)
    _common(dot)
    return ap


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--format", dest="fmt", choices=["human", "records"],
                   default="human")


def _config_from_args(ns: argparse.Namespace) -> RunConfig:
    config = RunConfig(command=ns.command, budget=ns.budget,
                       workers=ns.workers, fmt=ns.fmt)
    if ns.budget <= 0:
        raise InputError("budget must be positive")
    if ns.command == "entail":
        queries: list[Query] = []
        if ns.query:
            queries.append(parse_query(ns.query))
        if ns.file:
            with open(ns.file, encoding="utf-8") as fh:
                for line in fh:
                    line = line.split("#", 1)[0].strip()
                    if line:
                        queries.append(parse_query(line))
        if not queries:
            raise InputError("no queries given")
        config.queries = queries
        if ns.logic:
            config.logic = resolve_logic(ns.logic)  # rejects unknown names now
            config.logic_text = ns.logic
        if ns.filter_class:
            config.filter_class = StandardFilterClass.from_name(ns.filter_class)
        for q in queries:
            if q.logic_text:
                resolve_logic(q.logic_text)
            elif config.logic is None and config.filter_class is None:
                raise InputError(f"query {q.source!r} has no logic")
    elif ns.command in ("classify", "export-dot"):
        if (ns.godel is None) == (ns.luk is None):
            raise InputError("give exactly one of --godel or --luk")
        if ns.luk is not None and ns.i is None:
            raise InputError("--luk needs --i")
        config.godel_n = ns.godel
        config.luk_n = ns.luk
        config.luk_i = ns.i
        config.max_components = ns.max_components
    elif ns.command == "translate":
        config.translation = ns.translation
        config.formulas_text = ns.formulas
        config.check_roundtrip = ns.check_roundtrip
    return config


_DISPATCH = {
    "entail": cmd_entail,
    "classify": cmd_classify,
    "translate": cmd_translate,
    "export-dot": cmd_export_dot,
}


def main(argv: Sequence[str] | None = None) -> int:
    ap = _build_parser()
    ns = ap.parse_args(argv)
    try:
        config = _config_from_args(ns)
        return _DISPATCH[config.command](config)
    except (InputError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # budget and internal errors are still exit 2
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
