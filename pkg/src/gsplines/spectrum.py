"""Combinatorial reports on the glued spectrum of a spline ring.

Each vertex contributes one copy of the base spectrum; an edge glues two
copies along the vanishing locus of its label.  At the level of irreducible
factors this produces, for every factor, a partition of the vertices (the
fiber over that factor), and a gluing multigraph with one link per
(edge, factor) incidence.  The hole count is the cycle rank of that
multigraph; it is an artifact-level first Betti number of the gluing
structure, not a claim about scheme topology.

Zero-ideal labels identify their endpoints everywhere: they glue in every
fiber and contribute a single generic link.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Dict, Iterable, List, Sequence, Tuple, Union

from .errors import UnrelatedGraphs
from .graphs import Edge, EdgeLabeledGraph, restrict
from .rings import (
    Factor,
    RingDescriptor,
    RingElement,
    canonical_key,
    format_element,
    format_factored,
    normalized_associate,
)

GENERIC = "generic"

# A gluing link: the two endpoint names plus the factor element, or the
# GENERIC marker for a zero-ideal identification.
Link = Tuple[str, str, Union[RingElement, str]]


@dataclass(frozen=True)
class SpectrumReport:
    vertices: Tuple[str, ...]
    ring: RingDescriptor
    relevant_primes: Tuple[RingElement, ...]
    fibers: Dict[RingElement, Tuple[Tuple[str, ...], ...]]
    links: Tuple[Link, ...]
    fully_glued_pairs: Tuple[Tuple[str, str], ...]
    hole_count: int
    components: int
    generic_points: int


@dataclass(frozen=True)
class SpectrumDiff:
    before: SpectrumReport
    after: SpectrumReport
    narrative: Tuple[str, ...]


@dataclass(frozen=True)
class BaseChangeCheck:
    commutes: bool
    discrepancies: Tuple[str, ...]
    restricted: SpectrumReport
    filtered: SpectrumReport

    def __bool__(self) -> bool:
        return self.commutes


def _partition(vertices: Sequence[str], pairs: Iterable[Tuple[str, str]]):
    """Connected classes of the relation generated by ``pairs``; classes are
    ordered by first vertex, members in declaration order."""
    parent = {v: v for v in vertices}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for a, b in pairs:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[rb] = ra
    classes: Dict[str, List[str]] = {}
    for v in vertices:
        classes.setdefault(find(v), []).append(v)
    ordered = sorted(classes.values(), key=lambda c: vertices.index(c[0]))
    return tuple(tuple(c) for c in ordered)


def _edge_divisible_by(e: Edge, key) -> bool:
    if e.label.is_zero:
        return True
    return any(canonical_key(f.element) == key for f in e.label.factors)


def fiber_over(g: EdgeLabeledGraph, p: Union[Factor, RingElement]):
    """Partition of the vertices into classes glued over the factor ``p``."""
    element = p.element if isinstance(p, Factor) else p
    key = canonical_key(normalized_associate(element, g.ring.base()))
    pairs = [(e.a, e.b) for e in g.edges if _edge_divisible_by(e, key)]
    return _partition(g.vertices, pairs)


def _relevant_primes(g: EdgeLabeledGraph) -> List[RingElement]:
    seen: Dict[object, RingElement] = {}
    for e in g.edges:
        for f in e.label.factors:
            seen.setdefault(canonical_key(f.element), f.element)
    return [seen[k] for k in sorted(seen)]


def _links_of(g: EdgeLabeledGraph, primes: Sequence[RingElement]) -> List[Link]:
    links: List[Link] = []
    for e in g.edges:
        if e.label.is_zero:
            links.append((e.a, e.b, GENERIC))
        else:
            for f in e.label.factors:
                links.append((e.a, e.b, f.element))
    return links


def _cycle_data(vertices: Sequence[str], links: Sequence[Link]):
    comps = _partition(vertices, [(a, b) for a, b, _ in links])
    components = len(comps)
    hole_count = len(links) - len(vertices) + components
    return hole_count, components


def spectrum_report(g: EdgeLabeledGraph) -> SpectrumReport:
    """Fibers, gluing links, hole count and component count for ``g``."""
    primes = _relevant_primes(g)
    fibers = {p: fiber_over(g, p) for p in primes}
    links = _links_of(g, primes)
    hole_count, components = _cycle_data(g.vertices, links)
    glued_pairs = tuple((e.a, e.b) for e in g.edges if e.label.is_zero)
    generic_points = len(_partition(g.vertices, glued_pairs))
    return SpectrumReport(
        vertices=g.vertices,
        ring=g.ring,
        relevant_primes=tuple(primes),
        fibers=fibers,
        links=tuple(links),
        fully_glued_pairs=glued_pairs,
        hole_count=hole_count,
        components=components,
        generic_points=generic_points,
    )


# ---------------------------------------------------------------------------
# base change commutation


def base_change_commutes(g: EdgeLabeledGraph, invert) -> BaseChangeCheck:
    """Compare restricting-then-reporting with reporting-then-filtering.

    The filtered side removes from the full report every fiber at an
    inverted factor and every gluing link it induced, then recomputes the
    derived counts.  The two sides must agree exactly.
    """
    outcome = restrict(g, invert)
    restricted = spectrum_report(outcome.graph)
    inverted_keys = {
        canonical_key(f.element) for f in outcome.graph.ring.inverted
    }

    full = spectrum_report(g)
    surviving = [
        p for p in full.relevant_primes if canonical_key(p) not in inverted_keys
    ]
    fibers = {p: full.fibers[p] for p in surviving}
    links = tuple(
        (a, b, p)
        for a, b, p in full.links
        if p == GENERIC or canonical_key(p) not in inverted_keys
    )
    hole_count, components = _cycle_data(full.vertices, links)
    filtered = SpectrumReport(
        vertices=full.vertices,
        ring=restricted.ring,
        relevant_primes=tuple(surviving),
        fibers=fibers,
        links=links,
        fully_glued_pairs=full.fully_glued_pairs,
        hole_count=hole_count,
        components=components,
        generic_points=full.generic_points,
    )

    issues = []
    if restricted.relevant_primes != filtered.relevant_primes:
        issues.append("relevant factors differ")
    else:
        for p in restricted.relevant_primes:
            if restricted.fibers[p] != filtered.fibers[p]:
                issues.append(f"fiber at {format_element(p, g.ring)} differs")
    if sorted(restricted.links, key=repr) != sorted(filtered.links, key=repr):
        issues.append("gluing links differ")
    if restricted.hole_count != filtered.hole_count:
        issues.append(
            f"hole count differs: {restricted.hole_count} vs {filtered.hole_count}"
        )
    if restricted.components != filtered.components:
        issues.append(
            f"components differ: {restricted.components} vs {filtered.components}"
        )
    if restricted.generic_points != filtered.generic_points:
        issues.append("generic point counts differ")
    return BaseChangeCheck(not issues, tuple(issues), restricted, filtered)


# ---------------------------------------------------------------------------
# deletion / contraction diffs


def _format_factor_key(p, ring: RingDescriptor) -> str:
    return "generic" if p == GENERIC else format_element(p, ring)


def _classes_text(classes: Sequence[Sequence[str]]) -> str:
    return " ".join("{" + ",".join(c) + "}" for c in classes)


def _infer_operation(before: EdgeLabeledGraph, after: EdgeLabeledGraph) -> Tuple[str, ...]:
    bv, av = set(before.vertices), set(after.vertices)
    if bv == av:
        removed = [
            e for e in before.edges
            if not any({e.a, e.b} == {f.a, f.b} for f in after.edges)
        ]
        added = [
            f for f in after.edges
            if not any({e.a, e.b} == {f.a, f.b} for e in before.edges)
        ]
        if len(removed) == 1 and not added:
            e = removed[0]
            return ("delete-edge", e.a, e.b)
        raise UnrelatedGraphs("the graphs do not differ by one edge deletion")
    if bv - av and not av - bv and len(bv - av) == 1:
        (gone,) = bv - av
        return ("delete-vertex", gone)
    new = av - bv
    gone = bv - av
    if len(new) == 1 and len(gone) == 2:
        (merged,) = new
        parts = merged.rstrip("'").split("~")
        if len(parts) == 2 and set(parts) == gone:
            return ("contract", parts[0], parts[1], merged)
    raise UnrelatedGraphs(
        "the vertex sets do not differ by one deletion or contraction"
    )


def spectrum_diff(before: EdgeLabeledGraph, after: EdgeLabeledGraph) -> SpectrumDiff:
    """Narrated comparison of the gluing structure across one graph operation."""
    op = _infer_operation(before, after)
    rb = spectrum_report(before)
    ra = spectrum_report(after)
    ring = before.ring
    lines: List[str] = []
    if op[0] == "delete-edge":
        lines.append(f"operation: delete-edge {op[1]}-{op[2]}")
        edge = before.edge_between(op[1], op[2])
        lines.append(f"edge removed: {op[1]}-{op[2]} (label {format_factored(edge.label, ring)})")
    elif op[0] == "delete-vertex":
        lines.append(f"operation: delete-vertex {op[1]}")
        lines.append(f"vertex removed: {op[1]}")
    else:
        lines.append(f"operation: contract {op[1]}-{op[2]}")
        lines.append(f"vertices identified: {op[1]}, {op[2]} -> {op[3]}")

    removed_links = _link_multiset(rb.links) - _link_multiset(ra.links)
    added_links = _link_multiset(ra.links) - _link_multiset(rb.links)
    for (a, b, p), count in sorted(removed_links.items(), key=repr):
        tag = _format_factor_key(p, ring)
        for _ in range(count):
            lines.append(f"gluing removed: {a}-{b} at {tag}")
    for (a, b, p), count in sorted(added_links.items(), key=repr):
        tag = _format_factor_key(p, ring)
        for _ in range(count):
            lines.append(f"gluing added: {a}-{b} at {tag}")

    keys_before = {canonical_key(p): p for p in rb.relevant_primes}
    keys_after = {canonical_key(p): p for p in ra.relevant_primes}
    for key in sorted(set(keys_before) | set(keys_after)):
        pb = keys_before.get(key)
        pa = keys_after.get(key)
        tb = _classes_text(rb.fibers[pb]) if pb is not None else "(absent)"
        ta = _classes_text(ra.fibers[pa]) if pa is not None else "(absent)"
        if tb != ta:
            name = format_element(pb if pb is not None else pa, ring)
            lines.append(f"fiber at {name}: {tb} -> {ta}")

    if rb.components != ra.components:
        note = " (copies no longer glued)" if ra.components > rb.components else ""
        lines.append(f"components: {rb.components} -> {ra.components}{note}")
    else:
        lines.append(f"components: {rb.components} -> {ra.components}")
    lines.append(f"holeCount: {rb.hole_count} -> {ra.hole_count}")
    return SpectrumDiff(rb, ra, tuple(lines))


def _link_multiset(links: Sequence[Link]) -> Counter:
    return Counter(links)
