"""JSON schemas and text renderers for graphs, bases, reports.

Graph files look like::

    { "ring": {"kind": "Int" | "ModInt" | "PolyQ",
               "modulus"?: n, "variables"?: ["x","y"], "inverted"?: ["3","x-3"]},
      "vertices": ["u","v","w"],
      "edges": [ {"ends": ["u","v"], "label": {"factors": [["3",1],["2",1]]}},
                 {"ends": ["v","w"], "label": {"zero": true}} ] }

Factor strings parse under the polynomial grammar (decimal strings for
integer rings); composite integer factor strings are split into their prime
factors.  Certificate opens live in a separate file::

    { "opens": [ {"name": "U1", "invert": ["x-3", "x-5"]} ] }

All emitted text is UTF-8 with LF line endings and byte-stable across runs.
"""

from __future__ import annotations

import json
from typing import Dict, Sequence, Tuple

from .certificates import BasicOpen, CertificateReport, CoverStatus
from .errors import SchemaError
from .graphs import EdgeLabeledGraph, RestrictionOutcome, normalize
from .modules import LimitTrace, LeafPullback, SplineModule, format_matrix
from .parsing import parse_element
from .rings import (
    INT,
    MODINT,
    POLYQ,
    Factor,
    FactoredElement,
    RingDescriptor,
    canonical_key,
    factored_from_residue,
    format_element,
    format_factored,
    integer_factors,
    make_factor,
)
from .spectrum import SpectrumDiff, SpectrumReport


# ---------------------------------------------------------------------------
# schema helpers


def _expect(cond: bool, message: str) -> None:
    if not cond:
        raise SchemaError(message)


def _only_keys(obj: dict, allowed: Sequence[str], where: str) -> None:
    extra = set(obj) - set(allowed)
    _expect(not extra, f"unknown field(s) {sorted(extra)} in {where}")


def parse_factor_text(text: str, ring: RingDescriptor) -> Tuple[Factor, ...]:
    """One factor string into canonical ``Factor``s.

    Integer strings may be composite; they are split into primes so the
    factored-form invariants hold.  Polynomial strings must be irreducible
    (checked for univariate degree <= 2, declared otherwise).
    """
    element = parse_element(text, ring.base())
    if ring.kind == INT:
        return integer_factors(element, ring)
    return (make_factor(element, ring),)


def factor_list(texts: Sequence[str], ring: RingDescriptor, where: str) -> Tuple[Factor, ...]:
    out: Dict[object, Factor] = {}
    for text in texts:
        _expect(isinstance(text, str), f"{where} entries must be strings")
        for f in parse_factor_text(text, ring):
            key = canonical_key(f.element)
            old = out.get(key)
            if old is None or f.multiplicity > old.multiplicity:
                out[key] = f
    return tuple(out[k] for k in sorted(out))


# ---------------------------------------------------------------------------
# ring descriptors


def ring_from_json(obj: dict) -> RingDescriptor:
    _expect(isinstance(obj, dict), "'ring' must be an object")
    _only_keys(obj, ("kind", "modulus", "variables", "inverted"), "'ring'")
    kind = obj.get("kind")
    _expect(kind in (INT, MODINT, POLYQ), f"'ring.kind' must be one of Int, ModInt, PolyQ, got {kind!r}")
    if kind == MODINT:
        modulus = obj.get("modulus")
        _expect(isinstance(modulus, int) and modulus >= 2, "'ring.modulus' must be an integer >= 2")
        _expect("inverted" not in obj, "'ring.inverted' is not allowed for ModInt")
        _expect("variables" not in obj, "'ring.variables' is not allowed for ModInt")
        return RingDescriptor.residues(modulus)
    if kind == POLYQ:
        variables = obj.get("variables")
        _expect(
            isinstance(variables, list) and variables and all(isinstance(v, str) for v in variables),
            "'ring.variables' must be a nonempty list of names",
        )
        ring = RingDescriptor.rational_polynomials(*variables)
    else:
        _expect("variables" not in obj, "'ring.variables' is not allowed for Int")
        _expect("modulus" not in obj, "'ring.modulus' is not allowed for Int")
        ring = RingDescriptor.integers()
    inverted = obj.get("inverted", [])
    _expect(isinstance(inverted, list), "'ring.inverted' must be a list of strings")
    if inverted:
        ring = ring.localize(factor_list(inverted, ring, "'ring.inverted'"))
    return ring


def ring_to_json(ring: RingDescriptor) -> dict:
    out: dict = {"kind": ring.kind}
    if ring.kind == MODINT:
        out["modulus"] = ring.modulus
    if ring.kind == POLYQ:
        out["variables"] = list(ring.variables)
    if ring.inverted:
        out["inverted"] = [format_element(f.element, ring.base()) for f in ring.inverted]
    return out


# ---------------------------------------------------------------------------
# graphs


def _label_from_json(obj: dict, ring: RingDescriptor, where: str) -> FactoredElement:
    _expect(isinstance(obj, dict), f"{where}: 'label' must be an object")
    _only_keys(obj, ("factors", "zero"), where)
    if obj.get("zero"):
        _expect("factors" not in obj, f"{where}: a zero label carries no factors")
        return FactoredElement.zero()
    factors = obj.get("factors")
    _expect(isinstance(factors, list), f"{where}: 'label.factors' must be a list")
    merged: Dict[object, Factor] = {}
    for item in factors:
        _expect(
            isinstance(item, list) and len(item) == 2 and isinstance(item[0], str)
            and isinstance(item[1], int) and item[1] >= 1,
            f"{where}: each factor must be [\"text\", multiplicity]",
        )
        text, mult = item
        if ring.kind == MODINT:
            value = parse_element(text, ring)
            partial = factored_from_residue(value.value ** mult % ring.modulus, ring)
            parts = partial.factors
            if partial.is_zero:
                return FactoredElement.zero()
        else:
            parts = tuple(
                Factor(f.element, f.multiplicity * mult, f.irreducibility)
                for f in parse_factor_text(text, ring)
            )
        for f in parts:
            key = canonical_key(f.element)
            old = merged.get(key)
            merged[key] = (
                f if old is None else Factor(f.element, old.multiplicity + f.multiplicity, f.irreducibility)
            )
    if ring.kind == MODINT and merged:
        value = 1
        for f in merged.values():
            value = value * f.element.value ** f.multiplicity % ring.modulus
        return factored_from_residue(value, ring)
    return FactoredElement(tuple(merged.values()))


def graph_from_json(obj: dict) -> EdgeLabeledGraph:
    _expect(isinstance(obj, dict), "the graph document must be a JSON object")
    _only_keys(obj, ("ring", "vertices", "edges"), "the graph document")
    _expect("ring" in obj, "missing 'ring'")
    _expect("vertices" in obj, "missing 'vertices'")
    ring = ring_from_json(obj["ring"])
    vertices = obj["vertices"]
    _expect(
        isinstance(vertices, list) and all(isinstance(v, str) for v in vertices),
        "'vertices' must be a list of names",
    )
    raw_edges = obj.get("edges", [])
    _expect(isinstance(raw_edges, list), "'edges' must be a list")
    edges = []
    for i, e in enumerate(raw_edges):
        where = f"edges[{i}]"
        _expect(isinstance(e, dict), f"{where} must be an object")
        _only_keys(e, ("ends", "label"), where)
        ends = e.get("ends")
        _expect(
            isinstance(ends, list) and len(ends) == 2 and all(isinstance(x, str) for x in ends),
            f"{where}: 'ends' must be a pair of vertex names",
        )
        _expect("label" in e, f"{where}: missing 'label'")
        label = _label_from_json(e["label"], ring, where)
        edges.append((ends[0], ends[1], label))
    return normalize(ring, vertices, edges)


def _label_to_json(label: FactoredElement, ring: RingDescriptor) -> dict:
    if label.is_zero:
        return {"zero": True}
    return {
        "factors": [
            [format_element(f.element, ring.base()), f.multiplicity]
            for f in label.factors
        ]
    }


def graph_to_json(g: EdgeLabeledGraph) -> dict:
    return {
        "ring": ring_to_json(g.ring),
        "vertices": list(g.vertices),
        "edges": [
            {"ends": [e.a, e.b], "label": _label_to_json(e.label, g.ring)}
            for e in g.edges
        ],
    }


def load_graph(path: str) -> EdgeLabeledGraph:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as err:
            raise SchemaError(f"{path} is not valid JSON: {err}") from None
    return graph_from_json(obj)


def render_graph_text(g: EdgeLabeledGraph) -> str:
    ring = g.ring
    head = ring.kind
    if ring.kind == MODINT:
        head = f"ModInt({ring.modulus})"
    if ring.kind == POLYQ:
        head = f"PolyQ({', '.join(ring.variables)})"
    if ring.inverted:
        inv = ", ".join(format_element(f.element, ring.base()) for f in ring.inverted)
        head += f" localized at {{{inv}}}"
    lines = [f"ring: {head}", f"vertices: {' '.join(g.vertices)}", "edges:"]
    for e in g.edges:
        lines.append(f"  {e.a}-{e.b}: {format_factored(e.label, ring)}")
    if not g.edges:
        lines.append("  (none)")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# bases and traces


def basis_to_json(module: SplineModule) -> dict:
    ring = module.graph.ring
    return {
        "vertexOrder": list(module.vertex_order),
        "basis": [
            {v: format_element(x, ring) for v, x in zip(module.vertex_order, row)}
            for row in module.rows
        ],
    }


def render_basis_text(module: SplineModule) -> str:
    header = f"vertex order: {' '.join(module.vertex_order)}"
    return header + "\n" + format_matrix(module)


def render_trace_text(g, trace: LimitTrace) -> str:
    ring = g.ring
    lines = [f"start: {trace.start_vertex}"]
    for step in trace.steps:
        if isinstance(step, LeafPullback):
            lines.append(
                f"leaf-pullback: {step.new_vertex} attached to {step.attach_vertex}"
                f" via {format_factored(step.label, ring)}"
            )
        else:
            lines.append(
                f"edge-equalizer: {step.u} ~ {step.v}"
                f" via {format_factored(step.label, ring)}"
            )
        for row in step.matrix_after:
            cells = " ".join(format_element(x, ring) for x in row)
            lines.append(f"  [ {cells} ]")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# restriction outcomes


def classification_to_json(outcome: RestrictionOutcome) -> dict:
    c = outcome.classification
    out: dict = {"kind": c.kind}
    if c.kind == "DeterminedByCycle":
        out["cycle"] = list(c.cycle)
    return out


def restriction_to_json(outcome: RestrictionOutcome) -> dict:
    return {
        "graph": graph_to_json(outcome.graph),
        "trivializedEdges": [[e.a, e.b] for e in outcome.trivialized_edges],
        "classification": classification_to_json(outcome),
    }


def render_restriction_text(outcome: RestrictionOutcome) -> str:
    lines = [render_graph_text(outcome.graph)]
    lines.append("trivialized edges:")
    if outcome.trivialized_edges:
        for e in outcome.trivialized_edges:
            lines.append(f"  {e.a}-{e.b}")
    else:
        lines.append("  (none)")
    lines.append(f"classification: {outcome.classification}")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# spectrum reports


def spectrum_to_json(report: SpectrumReport) -> dict:
    ring = report.ring
    return {
        "fibers": {
            format_element(p, ring.base()): [list(c) for c in report.fibers[p]]
            for p in report.relevant_primes
        },
        "holeCount": report.hole_count,
        "components": report.components,
    }


def render_spectrum_text(report: SpectrumReport) -> str:
    ring = report.ring
    if report.relevant_primes:
        names = ", ".join(format_element(p, ring.base()) for p in report.relevant_primes)
    else:
        names = "(none)"
    lines = [f"relevant factors: {names}"]
    for p in report.relevant_primes:
        classes = " ".join("{" + ", ".join(c) + "}" for c in report.fibers[p])
        lines.append(f"fiber at {format_element(p, ring.base())}: {classes}")
    plural = "point" if report.generic_points == 1 else "points"
    lines.append(f"generic fiber: {report.generic_points} {plural}")
    for a, b in report.fully_glued_pairs:
        lines.append(f"fully glued pair: {a}-{b}")
    lines.append(f"components: {report.components}")
    lines.append(f"holeCount: {report.hole_count}")
    return "\n".join(lines)


def render_diff_text(diff: SpectrumDiff) -> str:
    return "\n".join(diff.narrative)


def diff_to_json(diff: SpectrumDiff) -> dict:
    return {
        "before": spectrum_to_json(diff.before),
        "after": spectrum_to_json(diff.after),
        "narrative": list(diff.narrative),
    }


# ---------------------------------------------------------------------------
# certificate opens and reports


def opens_from_json(obj: dict, ring: RingDescriptor) -> Tuple[BasicOpen, ...]:
    _expect(isinstance(obj, dict), "the opens document must be a JSON object")
    _only_keys(obj, ("opens",), "the opens document")
    raw = obj.get("opens")
    _expect(isinstance(raw, list) and raw, "'opens' must be a nonempty list")
    out = []
    for i, o in enumerate(raw):
        where = f"opens[{i}]"
        _expect(isinstance(o, dict), f"{where} must be an object")
        _only_keys(o, ("name", "invert"), where)
        name = o.get("name")
        _expect(isinstance(name, str) and name, f"{where}: 'name' must be a nonempty string")
        invert = o.get("invert")
        _expect(
            isinstance(invert, list) and invert,
            f"{where}: 'invert' must be a nonempty list of factor strings",
        )
        out.append(BasicOpen(name, factor_list(invert, ring, f"{where}.invert")))
    return tuple(out)


def load_opens(path: str, ring: RingDescriptor) -> Tuple[BasicOpen, ...]:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as err:
            raise SchemaError(f"{path} is not valid JSON: {err}") from None
    return opens_from_json(obj, ring)


def cover_to_json(cover: CoverStatus, ring: RingDescriptor) -> dict:
    out: dict = {"status": cover.status}
    if cover.common_factor is not None:
        out["commonFactor"] = format_element(cover.common_factor, ring.base())
    if cover.detail:
        out["detail"] = cover.detail
    return out


def certificate_to_json(report: CertificateReport, ring: RingDescriptor) -> dict:
    return {
        "perOpen": {
            name: {
                "classification": classification_to_json(outcome),
                "trivializedEdges": [[e.a, e.b] for e in outcome.trivialized_edges],
                "survivingEdges": [[e.a, e.b] for e in outcome.graph.edges],
            }
            for name, outcome in report.per_open
        },
        "coverStatus": cover_to_json(report.cover, ring),
        "verdict": report.verdict,
        "notes": list(report.notes),
    }


def render_certificate_text(report: CertificateReport) -> str:
    lines = []
    for name, outcome in report.per_open:
        kind = str(outcome.classification)
        lines.append(
            f"open {name}: {kind}; trivialized {len(outcome.trivialized_edges)} edge(s),"
            f" {len(outcome.graph.edges)} left"
        )
    cover = report.cover
    line = f"cover status: {cover.status}"
    if cover.status == "FailsToCover" and cover.detail:
        line += f" (common factor {cover.detail})"
    elif cover.detail:
        line += f" ({cover.detail})"
    lines.append(line)
    lines.append(f"verdict: {report.verdict}")
    return "\n".join(lines)


def dump_json(obj: dict) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False)
