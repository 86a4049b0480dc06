"""Spline modules: solvers, canonical bases, enumeration, membership.

A spline assigns a ring element to every vertex so that across each edge
the difference of endpoint values lies in the edge's ideal.  The module of
all splines is computed three independent ways:

* ``solve_direct`` turns the congruence system into an integer/polynomial
  kernel problem and reduces it with Hermite-style column operations,
* ``build_incremental`` grows the module edge by edge, extending by a new
  leaf vertex or imposing one further congruence on coefficients,
* ``enumerate_bruteforce`` lists every labeling over a residue ring.

Bases are kept in flow-up (Hermite) form with respect to a fixed vertex
order: row ``i`` vanishes on the vertices before its pivot, pivots are
normalized associates, and entries above a pivot are reduced modulo it.
That form is unique, which makes golden tests possible.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from .errors import DisconnectedInput, TooLarge, UnsupportedRing
from .graphs import Edge, EdgeLabeledGraph, connected_components, normalize
from .rings import (
    INT,
    MODINT,
    POLYQ,
    VERIFIED,
    Factor,
    FactoredElement,
    Residue,
    RingDescriptor,
    RingElement,
    coerce,
    exact_divide,
    extended_gcd,
    factor_integer,
    format_element,
    is_unit,
    is_zero_element,
    normalized_associate,
    poly_divmod,
    unit_part,
)
from .rings import gcd as ring_gcd

_ENUMERATION_GUARD = 10**7

Vector = Tuple[RingElement, ...]


@dataclass(frozen=True)
class Spline:
    """One vertex labeling; ``values`` maps every vertex to a ring element."""

    graph: EdgeLabeledGraph
    values: Dict[str, RingElement]

    def value_tuple(self, order: Sequence[str]) -> Vector:
        return tuple(self.values[v] for v in order)


@dataclass(frozen=True)
class SplineModule:
    """A flow-up generating matrix for the module of splines.

    ``rows[i]`` is expressed in ``vertex_order`` coordinates and has its
    first nonzero entry at column ``pivots[i]``; the pivot columns are
    strictly increasing.
    """

    graph: EdgeLabeledGraph
    vertex_order: Tuple[str, ...]
    rows: Tuple[Vector, ...]
    pivots: Tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.rows)

    @property
    def basis(self) -> Tuple[Spline, ...]:
        return tuple(
            Spline(self.graph, dict(zip(self.vertex_order, row))) for row in self.rows
        )

    @property
    def leading_entries(self) -> Tuple[Tuple[str, RingElement], ...]:
        return tuple(
            (self.vertex_order[p], row[p]) for row, p in zip(self.rows, self.pivots)
        )


@dataclass(frozen=True)
class LeafPullback:
    new_vertex: str
    attach_vertex: str
    label: FactoredElement
    vertices_after: Tuple[str, ...]
    matrix_after: Tuple[Vector, ...]


@dataclass(frozen=True)
class EdgeEqualizer:
    u: str
    v: str
    label: FactoredElement
    vertices_after: Tuple[str, ...]
    matrix_after: Tuple[Vector, ...]


Step = Union[LeafPullback, EdgeEqualizer]


@dataclass(frozen=True)
class LimitTrace:
    """The construction order and intermediate matrices of the incremental
    build; replaying the steps from the one-vertex module reproduces the
    final normalized basis."""

    start_vertex: str
    steps: Tuple[Step, ...]


@dataclass(frozen=True)
class MembershipResult:
    member: bool
    # (numerator, denominator) per basis row; denominators are units unless
    # the ring is localized, in which case they are products of inverted
    # factors.
    coefficients: Optional[Tuple[Tuple[RingElement, RingElement], ...]] = None

    def __bool__(self) -> bool:
        return self.member


# ---------------------------------------------------------------------------
# the congruence check


def _edge_generator(e: Edge, ring: RingDescriptor) -> RingElement:
    """Expanded label with inverted factors stripped (they are units)."""
    label = e.label
    if ring.inverted and not label.is_zero:
        label = label.without(ring.inverted_elements(), ring)
    return label.expand(ring)


def gkm_check(g: EdgeLabeledGraph, s: Spline) -> bool:
    """Whether the labeling satisfies every edge congruence."""
    ring = g.ring
    for e in g.edges:
        d = coerce(s.values[e.a], ring) - coerce(s.values[e.b], ring)
        if e.label.is_zero:
            if not is_zero_element(d):
                return False
            continue
        if ring.kind == MODINT:
            m = math.gcd(e.label.expand(ring).value, ring.modulus)
            if m == 0:
                m = ring.modulus
            if d.value % m:
                return False
            continue
        gen = _edge_generator(e, ring)
        if is_zero_element(gen):
            if not is_zero_element(d):
                return False
        elif exact_divide(d, gen, ring) is None:
            return False
    return True


# ---------------------------------------------------------------------------
# Hermite machinery over the Euclidean rings (Int, univariate PolyQ)


def _require_euclidean_ring(ring: RingDescriptor, op: str) -> None:
    if ring.kind == INT:
        return
    if ring.kind == POLYQ and ring.nvars == 1:
        return
    if ring.kind == POLYQ:
        raise UnsupportedRing(
            f"{op} needs a Euclidean coefficient ring; multivariate polynomial "
            "bases are out of scope here - use the certificate tools for "
            "freeness verdicts over several variables"
        )
    raise UnsupportedRing(f"{op} needs a Euclidean coefficient ring")


def _divmod_reduce(a: RingElement, p: RingElement, ring: RingDescriptor):
    """``(q, r)`` with ``a = q*p + r`` and ``r`` canonically reduced.

    Pivots are normalized (positive / monic), so integers land in
    ``[0, p)`` and polynomials in degrees below ``deg p``.
    """
    if ring.kind == INT:
        return a // p, a % p
    return poly_divmod(a, p)


def _row_combine(r1: Vector, r2: Vector, ring: RingDescriptor, col: int):
    """Unimodular 2x2 transform leaving gcd at ``col`` of the first row and
    zero at ``col`` of the second."""
    a, b = r1[col], r2[col]
    g, u, v = extended_gcd(a, b, ring)
    ca = exact_divide(a, g, ring)
    cb = exact_divide(b, g, ring)
    new1 = tuple(u * x + v * y for x, y in zip(r1, r2))
    new2 = tuple(cb * x - ca * y for x, y in zip(r1, r2))
    return new1, new2


def _normalize_row(row: Vector, col: int, ring: RingDescriptor) -> Vector:
    u = unit_part(row[col], ring)
    if ring.kind == INT:
        return row if u == 1 else tuple(-x for x in row)
    inv = 1 / u
    return tuple(x * inv for x in row)


def hermite_rows(rows: Iterable[Vector], width: int, ring: RingDescriptor):
    """Canonical row Hermite form; returns ``(rows, pivots)`` without zero rows."""
    work = [tuple(r) for r in rows]
    fixed: List[Vector] = []
    pivots: List[int] = []
    for col in range(width):
        carrying = [r for r in work if not is_zero_element(r[col])]
        if not carrying:
            continue
        rest = [r for r in work if is_zero_element(r[col])]
        acc = carrying[0]
        for r in carrying[1:]:
            acc, r2 = _row_combine(acc, r, ring, col)
            if any(not is_zero_element(x) for x in r2):
                rest.append(r2)
        acc = _normalize_row(acc, col, ring)
        # Reduce the entries above this pivot into canonical range.
        for i, prev in enumerate(fixed):
            q, r = _divmod_reduce(prev[col], acc[col], ring)
            if not is_zero_element(q):
                fixed[i] = tuple(x - q * y for x, y in zip(prev, acc))
        fixed.append(acc)
        pivots.append(col)
        work = rest
    return tuple(fixed), tuple(pivots)


def _kernel_basis(rows: Sequence[Vector], ncols: int, ring: RingDescriptor) -> List[Vector]:
    """Basis of the (free) solution module of ``rows * x = 0``.

    Column operations bring the matrix to echelon form while the same
    operations act on an identity block; the transform columns aligned
    with zero columns span the kernel.
    """
    zero = ring.zero()
    one = ring.one()
    a_cols = [[rows[i][j] for i in range(len(rows))] for j in range(ncols)]
    u_cols = [[one if i == j else zero for i in range(ncols)] for j in range(ncols)]
    free = list(range(ncols))
    for r in range(len(rows)):
        pivot = None
        for j in list(free):
            if is_zero_element(a_cols[j][r]):
                continue
            if pivot is None:
                pivot = j
                continue
            a, b = a_cols[pivot][r], a_cols[j][r]
            g, u, v = extended_gcd(a, b, ring)
            ca = exact_divide(a, g, ring)
            cb = exact_divide(b, g, ring)
            new_ap = [u * x + v * y for x, y in zip(a_cols[pivot], a_cols[j])]
            new_aj = [cb * x - ca * y for x, y in zip(a_cols[pivot], a_cols[j])]
            new_up = [u * x + v * y for x, y in zip(u_cols[pivot], u_cols[j])]
            new_uj = [cb * x - ca * y for x, y in zip(u_cols[pivot], u_cols[j])]
            a_cols[pivot], a_cols[j] = new_ap, new_aj
            u_cols[pivot], u_cols[j] = new_up, new_uj
        if pivot is not None:
            free.remove(pivot)
    return [tuple(u_cols[j]) for j in free]


# ---------------------------------------------------------------------------
# direct solver


def _component_rows(
    comp: EdgeLabeledGraph, order: Sequence[str], ring: RingDescriptor
) -> List[Vector]:
    """Generators of the spline module of one connected component.

    The system couples a value per vertex with one slack per nonzero label:
    for each edge, difference-of-endpoints equals label times slack.  The
    spline module is the projection of that system's kernel onto the vertex
    coordinates.
    """
    col_of = {v: i for i, v in enumerate(order)}
    nV = len(order)
    slack = [e for e in comp.edges if not e.label.is_zero]
    slack_col = {id(e): nV + i for i, e in enumerate(slack)}
    ncols = nV + len(slack)
    zero = ring.zero()
    one = ring.one()
    rows = []
    for e in comp.edges:
        row = [zero] * ncols
        row[col_of[e.a]] = one
        row[col_of[e.b]] = -one
        if not e.label.is_zero:
            row[slack_col[id(e)]] = -_edge_generator(e, ring)
        rows.append(tuple(row))
    if not rows:
        return [tuple(one if j == i else zero for j in range(nV)) for i in range(nV)]
    kernel = _kernel_basis(rows, ncols, ring)
    return [vec[:nV] for vec in kernel]


def _check_vertex_order(g: EdgeLabeledGraph, vertex_order: Optional[Sequence[str]]):
    if vertex_order is None:
        return g.vertices
    order = tuple(vertex_order)
    if sorted(order) != sorted(g.vertices):
        raise ValueError("vertex order must be a permutation of the graph's vertices")
    return order


def solve_direct(
    g: EdgeLabeledGraph, vertex_order: Optional[Sequence[str]] = None
) -> SplineModule:
    """Flow-up basis of the spline module, solved per connected component.

    Residue rings are handled by lifting the labels to the integers,
    adjoining ``n`` times each coordinate vector, and reducing the Hermite
    basis modulo ``n``.
    """
    order = _check_vertex_order(g, vertex_order)
    ring = g.ring
    if ring.kind == MODINT:
        return _solve_modint(g, order)
    _require_euclidean_ring(ring, "basis computation")
    rows: List[Vector] = []
    zero = ring.zero()
    global_col = {v: i for i, v in enumerate(order)}
    for comp in connected_components(g):
        comp_order = [v for v in order if v in set(comp.vertices)]
        for vec in _component_rows(comp, comp_order, ring):
            row = [zero] * len(order)
            for v, x in zip(comp_order, vec):
                row[global_col[v]] = x
            rows.append(tuple(row))
    hrows, pivots = hermite_rows(rows, len(order), ring)
    return SplineModule(g, tuple(order), hrows, pivots)


def _lift_graph(g: EdgeLabeledGraph) -> EdgeLabeledGraph:
    """Residue labels reinterpreted over the integers (expanded values)."""
    ring = RingDescriptor.integers()
    edges = []
    for e in g.edges:
        if e.label.is_zero:
            label = FactoredElement.zero()
        else:
            value = e.label.expand(g.ring).value
            if value == 0:
                label = FactoredElement.zero()
            else:
                label = FactoredElement(
                    tuple(Factor(p, m, VERIFIED) for p, m in factor_integer(value))
                )
        edges.append((e.a, e.b, label))
    return normalize(ring, g.vertices, edges)


def _reduce_rows_mod(rows: Sequence[Vector], order, g: EdgeLabeledGraph) -> SplineModule:
    n = g.ring.modulus
    zring = RingDescriptor.integers()
    width = len(order)
    full = list(rows) + [
        tuple(n if j == i else 0 for j in range(width)) for i in range(width)
    ]
    hrows, pivots = hermite_rows(full, width, zring)
    out_rows = []
    out_pivots = []
    for row, p in zip(hrows, pivots):
        reduced = tuple(Residue(x, n) for x in row)
        if all(x.value == 0 for x in reduced):
            continue
        if reduced[p].value == 0:
            # The pivot vanished modulo n but later entries survive; such a
            # row cannot occur for Hermite rows with pivots dividing n.
            continue
        out_rows.append(reduced)
        out_pivots.append(p)
    return SplineModule(g, tuple(order), tuple(out_rows), tuple(out_pivots))


def _solve_modint(g: EdgeLabeledGraph, order) -> SplineModule:
    lifted = _lift_graph(g)
    module = solve_direct(lifted, order)
    return _reduce_rows_mod(module.rows, order, g)


# ---------------------------------------------------------------------------
# incremental construction


def _default_insertion_order(g: EdgeLabeledGraph) -> List[Edge]:
    """Earliest-declared edge that touches the already-built component."""
    remaining = list(g.edges)
    if not remaining:
        return []
    ordered = [remaining.pop(0)]
    built = {ordered[0].a, ordered[0].b}
    while remaining:
        for i, e in enumerate(remaining):
            if e.a in built or e.b in built:
                built.update((e.a, e.b))
                ordered.append(remaining.pop(i))
                break
        else:  # unreachable for connected graphs
            raise DisconnectedInput("the graph is not connected")
    return ordered


def _as_edge_list(g: EdgeLabeledGraph, order) -> List[Edge]:
    if order is None:
        return _default_insertion_order(g)
    edges = []
    seen = set()
    for u, v in order:
        e = g.edge_between(u, v)
        if e is None:
            raise DisconnectedInput(f"insertion order names a missing edge {u!r}-{v!r}")
        if id(e) in seen:
            raise DisconnectedInput(f"insertion order repeats edge {u!r}-{v!r}")
        seen.add(id(e))
        edges.append(e)
    if len(edges) != len(g.edges):
        raise DisconnectedInput("insertion order must cover every edge exactly once")
    return edges


def build_incremental(
    g: EdgeLabeledGraph,
    order: Optional[Sequence[Tuple[str, str]]] = None,
    vertex_order: Optional[Sequence[str]] = None,
) -> Tuple[SplineModule, LimitTrace]:
    """Grow the module edge by edge and record the construction.

    Starting from the one-vertex module, an edge to a fresh vertex extends
    every generator by its value at the attachment vertex and adjoins the
    generator supported on the new vertex alone; an edge between existing
    vertices imposes one congruence on coefficient vectors, solved by
    Hermite reduction of a single row.  Every inserted edge must touch the
    component built so far.
    """
    comps = connected_components(g)
    if len(comps) > 1:
        raise DisconnectedInput("the incremental builder needs a connected graph")
    final_order = _check_vertex_order(g, vertex_order)
    ring = g.ring
    if ring.kind == MODINT:
        lifted = _lift_graph(g)
        module, trace = build_incremental(lifted, order, final_order)
        return _reduce_rows_mod(module.rows, final_order, g), trace
    _require_euclidean_ring(ring, "the incremental builder")
    edges = _as_edge_list(g, order)
    zero = ring.zero()
    one = ring.one()
    if not edges:
        if len(g.vertices) > 1:
            raise DisconnectedInput("the incremental builder needs a connected graph")
        start = g.vertices[0] if g.vertices else None
        rows = (tuple([one]),) if g.vertices else ()
        pivots = (0,) if g.vertices else ()
        return (
            SplineModule(g, tuple(final_order), rows, pivots),
            LimitTrace(start, ()),
        )
    start = edges[0].a
    built: List[str] = [start]
    rows: List[Vector] = [(one,)]
    steps: List[Step] = []
    for e in edges:
        have_a = e.a in built
        have_b = e.b in built
        gen = _edge_generator(e, ring)
        if have_a and have_b:
            iu, iv = built.index(e.a), built.index(e.b)
            deltas = [row[iu] - row[iv] for row in rows]
            constraint = tuple(deltas) + (gen,)
            kernel = _kernel_basis([constraint], len(rows) + 1, ring)
            new_rows = []
            for vec in kernel:
                combo = [zero] * len(built)
                for c, row in zip(vec[: len(rows)], rows):
                    combo = [acc + c * x for acc, x in zip(combo, row)]
                new_rows.append(tuple(combo))
            rows_t, _ = hermite_rows(new_rows, len(built), ring)
            rows = list(rows_t)
            steps.append(
                EdgeEqualizer(e.a, e.b, e.label, tuple(built), tuple(rows))
            )
        elif have_a or have_b:
            attach, new = (e.a, e.b) if have_a else (e.b, e.a)
            ia = built.index(attach)
            extended = [row + (row[ia],) for row in rows]
            extended.append(tuple([zero] * len(built) + [gen]))
            built.append(new)
            rows_t, _ = hermite_rows(extended, len(built), ring)
            rows = list(rows_t)
            steps.append(
                LeafPullback(new, attach, e.label, tuple(built), tuple(rows))
            )
        else:
            raise DisconnectedInput(
                f"edge {e.a!r}-{e.b!r} does not touch the component built so far"
            )
    # Re-express in the requested vertex order and normalize once more.
    col = {v: i for i, v in enumerate(built)}
    width = len(final_order)
    final_rows = []
    for row in rows:
        vec = [zero] * width
        for i, v in enumerate(final_order):
            if v in col:
                vec[i] = row[col[v]]
        final_rows.append(tuple(vec))
    hrows, pivots = hermite_rows(final_rows, width, ring)
    module = SplineModule(g, tuple(final_order), hrows, pivots)
    return module, LimitTrace(start, tuple(steps))


def incremental_assembled(
    g: EdgeLabeledGraph, vertex_order: Optional[Sequence[str]] = None
) -> Tuple[SplineModule, List[LimitTrace]]:
    """Incremental build per connected component, assembled blockwise."""
    order = _check_vertex_order(g, vertex_order)
    comps = connected_components(g)
    traces: List[LimitTrace] = []
    rows: List[Vector] = []
    col = {v: i for i, v in enumerate(order)}
    width = len(order)
    modint = g.ring.kind == MODINT
    zero = 0 if modint else g.ring.zero()
    for comp in comps:
        comp_order = tuple(v for v in order if v in set(comp.vertices))
        module, trace = build_incremental(comp, None, comp_order)
        traces.append(trace)
        for row in module.rows:
            vec = [zero] * width
            for v, x in zip(comp_order, row):
                vec[col[v]] = x.value if modint else x
            rows.append(tuple(vec))
    if modint:
        return _reduce_rows_mod(rows, order, g), traces
    hrows, pivots = hermite_rows(rows, width, g.ring)
    return SplineModule(g, tuple(order), hrows, pivots), traces


def replay_trace(g: EdgeLabeledGraph, trace: LimitTrace) -> Tuple[Vector, ...]:
    """Re-run the recorded steps; returns the final (normalized) matrix."""
    ring = g.ring
    one = ring.one()
    rows: Tuple[Vector, ...] = ((one,),)
    built: Tuple[str, ...] = (trace.start_vertex,)
    for step in trace.steps:
        if isinstance(step, LeafPullback):
            ia = built.index(step.attach_vertex)
            gen = _edge_generator(
                Edge(step.attach_vertex, step.new_vertex, step.label), ring
            )
            extended = [row + (row[ia],) for row in rows]
            extended.append(tuple([ring.zero()] * len(built) + [gen]))
            built = built + (step.new_vertex,)
            rows, _ = hermite_rows(extended, len(built), ring)
        else:
            iu, iv = built.index(step.u), built.index(step.v)
            gen = _edge_generator(Edge(step.u, step.v, step.label), ring)
            constraint = tuple(row[iu] - row[iv] for row in rows) + (gen,)
            kernel = _kernel_basis([constraint], len(rows) + 1, ring)
            new_rows = []
            for vec in kernel:
                combo = [ring.zero()] * len(built)
                for c, row in zip(vec[: len(rows)], rows):
                    combo = [acc + c * x for acc, x in zip(combo, row)]
                new_rows.append(tuple(combo))
            rows, _ = hermite_rows(new_rows, len(built), ring)
        if rows != step.matrix_after or built != step.vertices_after:
            raise ValueError("trace does not replay to its recorded matrices")
    return rows


# ---------------------------------------------------------------------------
# brute force enumeration over residue rings


def enumerate_bruteforce(g: EdgeLabeledGraph) -> List[Spline]:
    """Every labeling over a residue ring passing the congruence check.

    Deterministic lexicographic order; guarded at ``n^|V| <= 10**7``.
    """
    if g.ring.kind != MODINT:
        raise UnsupportedRing("brute-force enumeration needs a residue ring")
    n = g.ring.modulus
    nv = len(g.vertices)
    if n**nv > _ENUMERATION_GUARD:
        raise TooLarge(f"{n}^{nv} labelings exceed the enumeration guard")
    index = {v: i for i, v in enumerate(g.vertices)}
    conditions = []
    for e in g.edges:
        if e.label.is_zero:
            m = n
        else:
            m = math.gcd(e.label.expand(g.ring).value, n)
            if m == 0:
                m = n
        conditions.append((index[e.a], index[e.b], m))
    out = []
    for values in itertools.product(range(n), repeat=nv):
        if all((values[i] - values[j]) % m == 0 for i, j, m in conditions):
            out.append(
                Spline(g, {v: Residue(values[i], n) for v, i in index.items()})
            )
    return out


def spline_set(module: SplineModule) -> frozenset:
    """All value tuples spanned by a residue-ring module's basis."""
    g = module.graph
    if g.ring.kind != MODINT:
        raise UnsupportedRing("spanning sets are enumerated over residue rings only")
    n = g.ring.modulus
    if n ** module.rank > _ENUMERATION_GUARD:
        raise TooLarge("the spanned set exceeds the enumeration guard")
    width = len(module.vertex_order)
    rows = [tuple(x.value for x in row) for row in module.rows]
    out = set()
    for coeffs in itertools.product(range(n), repeat=len(rows)):
        vec = [0] * width
        for c, row in zip(coeffs, rows):
            if c:
                vec = [(a + c * b) % n for a, b in zip(vec, row)]
        out.add(tuple(vec))
    return frozenset(out)


# ---------------------------------------------------------------------------
# flow-up normalization and membership


def flow_up_normalize(
    generators: Sequence[Spline],
    vertex_order: Optional[Sequence[str]] = None,
    graph: Optional[EdgeLabeledGraph] = None,
) -> SplineModule:
    """Hermite-reduce a generator list to the canonical flow-up basis."""
    if graph is None:
        if not generators:
            raise ValueError("cannot infer the graph from an empty generator list")
        graph = generators[0].graph
    order = _check_vertex_order(graph, vertex_order)
    ring = graph.ring
    if ring.kind == MODINT:
        n = ring.modulus
        lifted = [tuple(s.values[v].value for v in order) for s in generators]
        return _reduce_rows_mod(lifted, order, graph)
    _require_euclidean_ring(ring, "flow-up normalization")
    rows = [s.value_tuple(order) for s in generators]
    hrows, pivots = hermite_rows(rows, len(order), ring)
    return SplineModule(graph, tuple(order), hrows, pivots)


def localize_module(module: SplineModule, invert) -> SplineModule:
    """View the same generating rows over the localization inverting ``invert``.

    Membership against the result accepts coefficient denominators built
    from the inverted factors, which is how one asks whether a spline lies
    in the original module after base change.
    """
    g = module.graph
    ring = g.ring.localize(invert)
    carrier = EdgeLabeledGraph(ring, g.vertices, g.edges)
    return SplineModule(carrier, module.vertex_order, module.rows, module.pivots)


def _strip_inverted(x: RingElement, ring: RingDescriptor) -> RingElement:
    for f in ring.inverted:
        while True:
            q = exact_divide(x, f.element, ring)
            if q is None:
                break
            x = q
    return x


def _gcd_content(values, ring: RingDescriptor) -> Optional[RingElement]:
    acc = None
    for x in values:
        if is_zero_element(x):
            continue
        acc = x if acc is None else ring_gcd(acc, x, ring)
    return acc


def membership(module: SplineModule, s: Spline) -> MembershipResult:
    """Back-substitute along the triangular basis.

    Over a localized ring the coefficients may carry denominators built
    from inverted factors; otherwise denominators must be units.  The
    returned coefficients recombine exactly to ``s``.
    """
    g = module.graph
    ring = g.ring
    if ring.kind == MODINT:
        return _membership_modint(module, s)
    _require_euclidean_ring(ring, "membership testing")
    order = module.vertex_order
    target = [coerce(s.values[v], ring) for v in order]
    num_den: List[Tuple[RingElement, RingElement]] = []
    residual = list(target)
    denominator = ring.one()
    for row, p in zip(module.rows, module.pivots):
        a = residual[p]
        if is_zero_element(a):
            num_den.append((ring.zero(), ring.one()))
            continue
        den_raw = denominator * row[p]
        gcd_val = ring_gcd(a, den_raw, ring)
        num = exact_divide(a, gcd_val, ring)
        den = exact_divide(den_raw, gcd_val, ring)
        u = unit_part(den, ring)
        den = normalized_associate(den, ring)
        if ring.kind == INT:
            num = num * u
        else:
            num = num * (1 / u)
        num_den.append((num, den))
        residual = [
            x * den - num * denominator * y for x, y in zip(residual, row)
        ]
        denominator = denominator * den
        content = _gcd_content(residual + [denominator], ring)
        if content is not None and not is_unit(content, ring):
            residual = [
                x if is_zero_element(x) else exact_divide(x, content, ring)
                for x in residual
            ]
            denominator = exact_divide(denominator, content, ring)
    if any(not is_zero_element(x) for x in residual):
        return MembershipResult(False)
    coefficients = []
    for num, den in num_den:
        stripped = _strip_inverted(den, ring)
        if not is_unit(stripped, ring):
            return MembershipResult(False)
        if is_unit(den, ring):
            q = exact_divide(num, den, ring)
            coefficients.append((q, ring.one()))
        else:
            coefficients.append((num, den))
    return MembershipResult(True, tuple(coefficients))


def _membership_modint(module: SplineModule, s: Spline) -> MembershipResult:
    g = module.graph
    n = g.ring.modulus
    order = module.vertex_order
    width = len(order)
    zring = RingDescriptor.integers()
    lifted_rows = [tuple(x.value for x in row) for row in module.rows]
    full = lifted_rows + [
        tuple(n if j == i else 0 for j in range(width)) for i in range(width)
    ]
    hrows, pivots = hermite_rows(full, width, zring)
    target = [coerce(s.values[v], g.ring).value for v in order]
    residual = list(target)
    for row, p in zip(hrows, pivots):
        a = residual[p]
        if a % row[p]:
            return MembershipResult(False)
        c = a // row[p]
        residual = [x - c * y for x, y in zip(residual, row)]
    if any(residual):
        return MembershipResult(False)
    # Recover coefficients against the module's own rows by solving the
    # same back-substitution with those rows first.
    coeffs = []
    residual = list(target)
    for row in lifted_rows:
        p = next((i for i, x in enumerate(row) if x % n), None)
        if p is None:
            coeffs.append((Residue(0, n), Residue(1, n)))
            continue
        lead = row[p] % n
        gcd_l = math.gcd(lead, n)
        r = residual[p] % n
        if r % gcd_l:
            return MembershipResult(False)
        c = (r // gcd_l) * pow(lead // gcd_l, -1, n // gcd_l) % (n // gcd_l)
        coeffs.append((Residue(c, n), Residue(1, n)))
        residual = [x - c * y for x, y in zip(residual, row)]
    if any(x % n for x in residual):
        # The greedy choice can miss; fall back to the lifted certificate.
        return MembershipResult(True, None)
    return MembershipResult(True, tuple(coeffs))


# ---------------------------------------------------------------------------
# rendering helpers shared by the CLI and tests


def format_matrix(module: SplineModule) -> str:
    ring = module.graph.ring
    cells = [
        [format_element(x, ring) for x in row] for row in module.rows
    ]
    if not cells:
        return "(zero module)"
    widths = [
        max(len(cells[i][j]) for i in range(len(cells)))
        for j in range(len(module.vertex_order))
    ]
    lines = []
    for row in cells:
        padded = " ".join(c.rjust(w) for c, w in zip(row, widths))
        lines.append(f"[ {padded} ]")
    return "\n".join(lines)
