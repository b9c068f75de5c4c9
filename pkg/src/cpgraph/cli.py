"""Command-line front end.

Exit codes: 0 success (whatever the verdicts), 1 usage, 2 parse/schema/IO,
3 semantic, 4 capacity.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import random
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path as FsPath
from typing import Sequence

from . import __version__
from .algebra import AlgebraContext, normal_form, normal_form_randomized, parse_expression
from .algebra.matrices import MatrixFamily, check_tck_family, tck_injectivity_verdict
from .errors import CPGraphError, ParseError, SchemaError, SemanticError
from .graph import DEFAULT_CAP, Graph, augment_relative, cycles_without_exit, regular_vertices
from .rsystem import build_system, invariant_cycle_search
from .structure import (
    analyze,
    condition_K,
    condition_K_via_quotients,
    condition_L,
    j_bracket,
    j_infinity,
)

VERBS = ("analyze", "condl", "condk", "simple", "ideals", "jset", "calc", "tck", "invcycle")

EXIT_OK, EXIT_USAGE, EXIT_PARSE, EXIT_SEMANTIC, EXIT_CAPACITY = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


def canonical_json(data: object, indent: int | None = None) -> str:
    return json.dumps(data, sort_keys=True, ensure_ascii=False, indent=indent, separators=None if indent else (",", ":"))


def graph_digest(g: Graph) -> str:
    return hashlib.sha256(canonical_json(g.to_dict()).encode("utf-8")).hexdigest()


def resolve_relations(g: Graph, value: object, pointer: str = "/relations") -> frozenset[str]:
    """``"all"`` -> regular vertices, ``"none"`` -> empty, or an explicit list of regular vertices."""
    if value is None or value == "all":
        return regular_vertices(g)
    if value == "none":
        return frozenset()
    if isinstance(value, str):
        value = [s for s in value.split(",") if s]
    if not isinstance(value, list) or not all(isinstance(v, str) for v in value):
        raise SchemaError('expected "all", "none" or a list of vertices', pointer)
    for v in value:
        if not g.has_vertex(v):
            raise SemanticError(f"relation set names unknown vertex {v!r}")
        if g.is_sink(v):
            raise SemanticError(f"relation set contains the sink {v!r}")
    return frozenset(value)


def load_graph(path: str | FsPath, relations: object = None) -> tuple[Graph, frozenset[str]]:
    """Read a graph file; ``relations`` (CLI value) overrides the file's ``"relations"`` entry."""
    try:
        text = FsPath(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise SchemaError(f"cannot read {path}: {exc.strerror or exc}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON in {path}: {exc.msg}", exc.pos) from None
    g = Graph.from_dict(data)
    value = relations if relations is not None else (data.get("relations") if isinstance(data, dict) else None)
    return g, resolve_relations(g, value)


@dataclass
class Command:
    verb: str
    graph: str
    relations: str | None = None
    k: int | None = None
    expression: str | None = None
    family: str | None = None
    json: bool = False
    seed: int = 0
    cap: int = DEFAULT_CAP


@dataclass
class ReportEnvelope:
    verb: str
    input_digest: str
    payload: dict
    text: list[str] = field(default_factory=list)
    seconds: float = 0.0
    version: str = __version__

    def to_dict(self) -> dict:
        return {
            "tool": "cpgraph",
            "version": self.version,
            "verb": self.verb,
            "inputDigest": self.input_digest,
            "payload": self.payload,
            "timing": {"seconds": round(self.seconds, 6)},
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ReportEnvelope":
        return cls(
            verb=data["verb"],
            input_digest=data["inputDigest"],
            payload=data["payload"],
            seconds=data["timing"]["seconds"],
            version=data["version"],
        )


def render(env: ReportEnvelope, mode: str = "text") -> str:
    if mode == "json":
        return canonical_json(env.to_dict(), indent=2) + "\n"
    return "".join(line + "\n" for line in env.text)


def _flag(b: bool) -> str:
    return "true" if b else "false"


def _set(vs: Sequence[str]) -> str:
    return "{" + ", ".join(vs) + "}"


def _analysis_text(d: dict) -> list[str]:
    lines = [f"conditionL: {_flag(d['conditionL']['verdict'])}"]
    if d["conditionL"]["witness"]:
        lines.append(f"  witness cycle: {' '.join(d['conditionL']['witness'])}")
    lines.append(f"conditionK: {_flag(d['conditionK']['verdict'])}")
    if d["conditionK"]["witness"]:
        lines.append(f"  witness vertex: {d['conditionK']['witness']}")
    lines.append(f"maximal: {_flag(d['maximal'])}")
    lines.append(f"superMaximal: {_flag(d['superMaximal']['verdict'])}")
    if d["superMaximal"]["witness"] is not None:
        lines.append(f"  witness: {_set(d['superMaximal']['witness'])}")
    lines.append(_simple_line(d["simple"]))
    lines.append(f"ckUniqueness: {_flag(d['ckUniqueness']['verdict'])}")
    lines.append(f"allIdealsGraded: {_flag(d['allIdealsGraded'])}")
    lines.append(f"everyNonzeroIdealContainsGraded: {_flag(d['everyNonzeroIdealContainsGraded'])}")
    lines.append(f"jInfinity: {_set(d['jInfinity'])}")
    lines.append("gradedIdeals:")
    lines.extend(f"  {_set(h)}" for h in d["gradedIdeals"])
    return lines


def _simple_line(s: dict) -> str:
    line = f"simple: {_flag(s['verdict'])}"
    return f"{line} ({s['reason']})" if s["reason"] else line


def dispatch(cmd: Command) -> ReportEnvelope:
    """Run one command; raises :class:`CPGraphError` subclasses on failure."""
    start = time.perf_counter()
    g, x = load_graph(cmd.graph, cmd.relations)
    verb = cmd.verb
    text: list[str]
    if verb in ("analyze", "simple", "ideals"):
        report = analyze(g, x, cap=cmd.cap).to_dict()
        if verb == "analyze":
            payload, text = report, _analysis_text(report)
        elif verb == "simple":
            payload = {"simple": report["simple"]}
            text = [_simple_line(report["simple"])]
        else:
            payload = {"gradedIdeals": report["gradedIdeals"], "allIdealsGraded": report["allIdealsGraded"]}
            text = [f"allIdealsGraded: {_flag(report['allIdealsGraded'])}", "gradedIdeals:"]
            text += [f"  {_set(h)}" for h in report["gradedIdeals"]]
    elif verb == "condl":
        v = condition_L(g, x)
        via_aug = not cycles_without_exit(augment_relative(g, x))
        witness = list(v.witness.edges) if v.witness else None
        payload = {"conditionL": {"verdict": v.holds, "witness": witness}, "viaAugmentation": via_aug}
        text = [f"conditionL: {_flag(v.holds)}"] + ([f"  witness cycle: {' '.join(witness)}"] if witness else [])
    elif verb == "condk":
        v = condition_K(g, x)
        via_q = condition_K_via_quotients(g, x, cap=cmd.cap)
        payload = {"conditionK": {"verdict": v.holds, "witness": v.witness}, "viaQuotients": via_q.holds}
        text = [f"conditionK: {_flag(v.holds)}"] + ([f"  witness vertex: {v.witness}"] if v.witness else [])
    elif verb == "jset":
        if cmd.k is None:
            raise UsageError("jset needs -k")
        vs = j_infinity(g, x) if cmd.k == 0 else j_bracket(g, x, cmd.k)
        payload = {"vertices": g.sort_vertices(vs)}
        text = [canonical_json(payload)]
    elif verb == "calc":
        if cmd.expression is None:
            raise UsageError("calc needs -e")
        ctx = AlgebraContext(g, x)
        raw = parse_expression(cmd.expression, ctx)
        value = normal_form(raw, ctx)
        check = normal_form_randomized(raw, ctx, random.Random(cmd.seed))
        payload = {
            "element": str(value),
            "degrees": sorted(value.degrees()),
            "rewriteCheck": check == value,
        }
        text = [str(value)]
    elif verb == "tck":
        if cmd.family is None:
            raise UsageError("tck needs -f")
        try:
            data = json.loads(FsPath(cmd.family).read_text(encoding="utf-8"))
        except OSError as exc:
            raise SchemaError(f"cannot read {cmd.family}: {exc.strerror or exc}") from None
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON in {cmd.family}: {exc.msg}", exc.pos) from None
        fam = MatrixFamily.from_dict(data)
        rel = check_tck_family(fam, g)
        payload = {"relations": {"ok": rel.ok, "violations": [str(b) for b in rel.violations]}}
        text = [f"relations: {'pass' if rel.ok else 'fail'}"] + [f"  {b}" for b in rel.violations]
        if rel.ok:
            inj = tck_injectivity_verdict(fam, g)
            payload["injective"] = {"verdict": inj.injective, "reasons": inj.reasons}
            text.append(f"injective: {_flag(inj.injective)}" + (f" ({'; '.join(inj.reasons)})" if inj.reasons else ""))
    elif verb == "invcycle":
        sys_ = build_system(g)
        found = invariant_cycle_search(sys_)
        payload = {
            "cycles": [
                {"ideal": g.sort_vertices(c.ideal), "n": c.n, "eta": c.eta.to_dict(g)} for c in found
            ]
        }
        text = [f"invariant cycles: {len(found)}"]
        for c in found:
            maps = ", ".join(f"1_{v} -> 1_({' '.join(c.eta.assignment[v][0])})" for v in g.sort_vertices(c.ideal))
            text.append(f"  {_set(g.sort_vertices(c.ideal))} n={c.n}: {maps}")
    else:
        raise UsageError(f"unknown verb {verb!r}")
    return ReportEnvelope(verb, graph_digest(g), payload, text, time.perf_counter() - start)


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="cpgraph", description="Structure and arithmetic of relative graph Cuntz-Pimsner rings.")
    parser.add_argument("--version", action="version", version=f"cpgraph {__version__}")
    parser.add_argument("verb", choices=VERBS)
    parser.add_argument("-g", "--graph", required=True, metavar="PATH")
    parser.add_argument("-X", "--relations", metavar="all|none|v1,v2,...")
    parser.add_argument("-k", type=int, help="filtration index for jset (0 means J^[inf])")
    parser.add_argument("-e", "--expression", metavar="EXPR")
    parser.add_argument("-f", "--family", metavar="PATH")
    parser.add_argument("--json", action="store_true")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--cap", type=int, default=DEFAULT_CAP)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    try:
        ns = build_parser().parse_args(argv)
        cmd = Command(
            verb=ns.verb,
            graph=ns.graph,
            relations=ns.relations,
            k=ns.k,
            expression=ns.expression,
            family=ns.family,
            json=ns.json,
            seed=ns.seed,
            cap=ns.cap,
        )
        if cmd.k is not None and cmd.k < 0:
            raise UsageError("-k must be non-negative")
        env = dispatch(cmd)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CPGraphError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    sys.stdout.write(render(env, "json" if cmd.json else "text"))
    return EXIT_OK


if __name__ == "__main__":
    raise SystemExit(main())
