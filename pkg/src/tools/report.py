"""
Rendering of decomposition reports (markdown, CSV, JSON) and of subgroup
lattices as DOT, with an optional highlighted zig-zag certificate.
"""

import csv
import io
import json
import re
from typing import Any, Dict, List, Optional, Sequence, Set, Tuple, Union

from graphviz import Digraph

from ..curves.decomp import ComponentRecord, DecompositionReport, DecompositionTable
from ..curves.genus2 import CurveContext, get_context
from ..curves.picard import ANCHOR, Anchor, CertificateStep, LSpace, describe, node_label

FORMATS = ("md", "csv", "json")

EMPTY_NOTE = "The decomposition is empty: no subgroup with P1 quotient has order at least 5."

HIGHLIGHT = {"color": "red", "penwidth": "2"}

Renderable = Union[DecompositionReport, DecompositionTable]


def _rows(obj: Renderable) -> List[DecompositionReport]:
    return [obj] if isinstance(obj, DecompositionReport) else list(obj.rows)


def _columns(rows: Sequence[DecompositionReport], columns: Optional[Sequence[int]]) -> List[int]:
    if columns is not None:
        return list(columns)
    return sorted({n for r in rows for n, count in r.histogram.items() if count})


def _markdown(obj: Renderable, columns: List[int]) -> str:
    rows = _rows(obj)
    heading = f"# {obj.group.value}\n\n"
    if not rows:
        return heading + f"{EMPTY_NOTE}\n"
    lines = [
        " | ".join(["|H|"] + [f"D_{n}" for n in columns]),
        " | ".join(["---"] * (len(columns) + 1)),
    ]
    for r in rows:
        lines.append(" | ".join(str(v) for v in [r.order] + [r.histogram.get(n, 0) for n in columns]))
    return heading + "\n".join(lines) + "\n"


def _csv(obj: Renderable, columns: List[int]) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["H"] + [f"n:{n}" for n in columns])
    for r in _rows(obj):
        writer.writerow([r.order] + [r.histogram.get(n, 0) for n in columns])
    return out.getvalue()


def certificate_json(ctx: CurveContext, steps: Sequence[CertificateStep]) -> List[Dict[str, Any]]:
    return [
        {
            "from": node_label(ctx, s.source),
            "to": node_label(ctx, s.target),
            "relation": type(s.relation).__name__,
            "statement": describe(ctx, s.relation),
            "multiple": s.multiple,
        }
        for s in steps
    ]


def _component_json(ctx: CurveContext, c: ComponentRecord) -> Dict[str, Any]:
    return {
        "N_label": c.label,
        "N_order": c.order,
        "dimension": c.dimension,
        "certainty": c.certainty.value,
        "certificate": certificate_json(ctx, c.certificate),
    }


def report_json(report: DecompositionReport) -> Dict[str, Any]:
    ctx = get_context(report.group)
    return {
        "group": report.group.value,
        "order_of_H": report.order,
        "components": [_component_json(ctx, c) for c in report.components],
        "histogram": {str(n): count for n, count in report.histogram.items()},
    }


def _json(obj: Renderable) -> str:
    if isinstance(obj, DecompositionReport):
        payload = report_json(obj)
    else:
        payload = {"group": obj.group.value, "rows": [report_json(r) for r in obj.rows]}
        if obj.empty:
            payload["note"] = EMPTY_NOTE
    return json.dumps(payload, indent=2) + "\n"


def render(obj: Renderable, fmt: str = "md", columns: Optional[Sequence[int]] = None) -> str:
    """
    Render a report or a group table.

    Args:
        obj: DecompositionReport (one row) or DecompositionTable
        fmt: one of md, csv, json
        columns: dimensions to show as columns in md/csv (default: every
                 dimension with a non-zero count)

    Returns:
        Deterministic text for a given input.
    """
    if fmt not in FORMATS:
        raise ValueError(f"Unknown format {fmt!r}, expected one of {', '.join(FORMATS)}")
    if fmt == "json":
        return _json(obj)
    cols = _columns(_rows(obj), columns)
    return _markdown(obj, cols) if fmt == "md" else _csv(obj, cols)


def render_certificate(ctx: CurveContext, h_index: int, n_index: int, space: LSpace) -> str:
    lines = [
        f"{ctx.id.value}: l(D_H - D_N) for H = #{h_index}, N = #{n_index}",
        f"  l = {space.value} ({space.certainty.value})",
    ]
    if not space.certificate:
        lines.append("  no equivalence steps (degree alone decides)")
    for i, step in enumerate(space.certificate, 1):
        lines.append(f"  {i}. {describe(ctx, step.relation)}   [{node_label(ctx, step.source)} -> "
                     f"{node_label(ctx, step.target)}: {step.multiple:+d} K]")
    return "\n".join(lines) + "\n"


def _highlight_pairs(ctx: CurveContext, steps: Sequence[CertificateStep]) -> Set[Tuple[int, int]]:
    """Lattice pairs (smaller, larger) traced by a certificate, through each mediating subgroup"""
    pairs = set()
    for step in steps:
        if isinstance(step.relation, Anchor) or ANCHOR in (step.source, step.target):
            continue
        l = ctx.subgroup_index(ctx.p1_subgroups[step.relation.l])
        for end in (step.source, step.target):
            node = ctx.subgroup_index(ctx.p1_subgroups[end])
            if node != l:
                pairs.add((l, node))
    return pairs


def render_lattice_dot(ctx: CurveContext, highlight: Optional[Sequence[CertificateStep]] = None) -> str:
    """
    DOT text of the subgroup lattice, one node per conjugacy class.

    Nodes carry the isomorphism label and the class size; edges are the
    covering relations between classes. Certificate edges are drawn red;
    a traced pair that is not a covering edge is added dashed.
    """
    lattice = ctx.lattice
    dot = Digraph(name=ctx.id.value, comment=f"Subgroup lattice of {ctx.id.value}", strict=True)
    dot.attr(rankdir="BT")

    pairs = {(lattice.orbit_ids[a], lattice.orbit_ids[b]) for a, b in _highlight_pairs(ctx, highlight or ())}
    marked = {c for pair in pairs for c in pair}

    for cls in lattice.classes:
        label = cls.label if cls.size == 1 else f"{cls.label} ({cls.size})"
        attrs = {"color": "red"} if cls.representative in marked else {}
        dot.node(f"c{cls.representative}", label, **attrs)

    for a, b in lattice.class_edges:
        attrs = HIGHLIGHT if (a, b) in pairs else {}
        dot.edge(f"c{a}", f"c{b}", **attrs)
    for a, b in sorted(pairs - set(lattice.class_edges)):
        dot.edge(f"c{a}", f"c{b}", style="dashed", constraint="false", **HIGHLIGHT)

    return dot.source


_EDGE_RE = re.compile(r'^\s*(\w+|"[^"]*")\s*->\s*(\w+|"[^"]*")\s*(\[.*\])?\s*;?\s*$')


def validate_dot(text: str) -> List[str]:
    """
    Minimal structural check of DOT text.

    Returns a list of problems: unbalanced braces, missing digraph header,
    malformed edge statements. Empty when the text looks well-formed.
    """
    problems = []
    lines = [line for line in text.splitlines() if line.strip() and not line.strip().startswith("//")]
    if not lines or not re.match(r"^\s*(strict\s+)?digraph\b.*\{\s*$", lines[0]):
        problems.append("missing digraph header")

    depth = 0
    for line in lines:
        unquoted = re.sub(r'"[^"]*"', '""', line)
        depth += unquoted.count("{") - unquoted.count("}")
        if depth < 0:
            problems.append("closing brace without opening brace")
            depth = 0
        if "->" in unquoted and not _EDGE_RE.match(line):
            problems.append(f"malformed edge statement: {line.strip()}")
    if depth != 0:
        problems.append("unbalanced braces")
    return problems
