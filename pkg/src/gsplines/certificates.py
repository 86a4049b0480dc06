"""Local-freeness certificates from basic open covers.

A certificate consists of named basic opens, each the complement of the
vanishing locus of a product of irreducible factors.  The graph is
restricted along every open; when each restriction is trivial or determined
by a cycle and the opens cover the base spectrum, the spline module is
certified FREE.  Failure of any part never claims non-freeness: the verdict
falls back to UNKNOWN.

Covering is decided exactly over the integers and over one-variable
polynomial rings (gcd of the products is a unit).  Over several variables
the test is partial: a shared non-unit factor refutes covering, and a unit
gcd among the single-variable subproducts of the opens is accepted as a
covering witness; everything else is reported Inconclusive rather than
guessed.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple

from .errors import UnsupportedRing
from .graphs import EdgeLabeledGraph, RestrictionOutcome, restrict
from .rings import (
    INT,
    MODINT,
    POLYQ,
    Factor,
    Poly,
    RingDescriptor,
    RingElement,
    canonical_key,
    format_element,
    gcd,
    is_unit,
)

COVERS = "Covers"
FAILS_TO_COVER = "FailsToCover"
INCONCLUSIVE = "Inconclusive"

FREE = "FREE"
UNKNOWN = "UNKNOWN"
NOT_APPLICABLE = "NOT_APPLICABLE"


@dataclass(frozen=True)
class BasicOpen:
    """A named basic open: the localization inverting ``invert``."""

    name: str
    invert: Tuple[Factor, ...]

    def __post_init__(self):
        if not self.invert:
            raise ValueError(f"open {self.name!r} must invert at least one factor")
        keys = [canonical_key(f.element) for f in self.invert]
        if len(set(keys)) != len(keys):
            raise ValueError(f"open {self.name!r} repeats a factor")


@dataclass(frozen=True)
class CoverStatus:
    status: str
    common_factor: Optional[RingElement] = None
    detail: str = ""

    def __str__(self) -> str:
        if self.status == FAILS_TO_COVER and self.common_factor is not None:
            return f"{FAILS_TO_COVER}({self.detail})"
        return self.status


@dataclass(frozen=True)
class CertificateReport:
    per_open: Tuple[Tuple[str, RestrictionOutcome], ...]
    cover: CoverStatus
    verdict: str
    notes: Tuple[str, ...]


def _product(elements: Iterable[RingElement], ring: RingDescriptor) -> RingElement:
    out = ring.one()
    for e in elements:
        out = out * e
    return out


def _common_factor(opens: Sequence[BasicOpen]) -> Optional[RingElement]:
    """A factor associate-present in every open's inverted list, if any."""
    common = None
    for o in opens:
        keys = {canonical_key(f.element): f.element for f in o.invert}
        if common is None:
            common = keys
        else:
            common = {k: v for k, v in common.items() if k in keys}
        if not common:
            return None
    for k in sorted(common):
        return common[k]
    return None


def _single_variable_subproducts(
    opens: Sequence[BasicOpen], ring: RingDescriptor, var_index: int
) -> Optional[List[RingElement]]:
    """Per open, the product of its factors involving only one variable.

    Returns None when some open has no factor in that variable's subring.
    """
    out = []
    for o in opens:
        parts = []
        for f in o.invert:
            if f.element.used_variables() == (var_index,):
                terms = {(e[var_index],): c for e, c in f.element.terms}
                parts.append((terms, f.multiplicity))
        if not parts:
            return None
        prod = Poly.const(1, 1)
        for terms, mult in parts:
            prod = prod * Poly(1, terms) ** mult
        out.append(prod)
    return out


def check_cover(ring: RingDescriptor, opens: Sequence[BasicOpen]) -> CoverStatus:
    """Decide whether the opens cover the base spectrum.

    The opens cover exactly when their defining products generate the unit
    ideal; over a principal ideal domain this is a gcd computation.  The
    check is permutation-invariant, idempotent under duplicated opens, and
    adding an open never turns Covers into FailsToCover.
    """
    if not opens:
        raise ValueError("at least one open is required")
    if ring.kind == MODINT:
        raise UnsupportedRing("covers are checked over integer or polynomial rings")
    common = _common_factor(opens)
    if ring.kind == INT or (ring.kind == POLYQ and ring.nvars == 1):
        products = [
            _product((f.element ** f.multiplicity for f in o.invert), ring)
            for o in opens
        ]
        g = products[0]
        for p in products[1:]:
            g = gcd(g, p, ring)
        if is_unit(g, ring):
            return CoverStatus(COVERS, detail="unit gcd of the defining products")
        witness = common if common is not None else g
        return CoverStatus(
            FAILS_TO_COVER, witness, detail=format_element(witness, ring)
        )
    if common is not None:
        return CoverStatus(
            FAILS_TO_COVER, common, detail=format_element(common, ring)
        )
    one_var = RingDescriptor.rational_polynomials("t")
    for var_index, name in enumerate(ring.variables):
        subproducts = _single_variable_subproducts(opens, ring, var_index)
        if subproducts is None:
            continue
        g = subproducts[0]
        for p in subproducts[1:]:
            g = gcd(g, p, one_var)
        if is_unit(g, one_var):
            return CoverStatus(
                COVERS,
                detail=(
                    f"single-variable witness in {name}: the {name}-only "
                    "subproducts have unit gcd"
                ),
            )
    return CoverStatus(
        INCONCLUSIVE,
        detail="multivariate cover undecided without Groebner bases",
    )


def classify_restrictions(
    g: EdgeLabeledGraph, opens: Sequence[BasicOpen]
) -> Tuple[Tuple[str, RestrictionOutcome], ...]:
    """Restrict the graph along each open, in declaration order."""
    if g.ring.kind == MODINT:
        raise UnsupportedRing("restrictions are not defined over residue rings")
    return tuple((o.name, restrict(g, o.invert)) for o in opens)


def _ring_eligible(ring: RingDescriptor) -> bool:
    if ring.kind == INT:
        return True
    return ring.kind == POLYQ and ring.nvars <= 2


def verify_certificate(
    g: EdgeLabeledGraph, opens: Sequence[BasicOpen]
) -> CertificateReport:
    """Combine the cover check and the per-open classifications.

    FREE requires a covering family, every restriction trivial or
    determined by a cycle, and a coefficient ring within scope (integers,
    or polynomials in at most two variables).  Covering is reduced to the
    base spectrum: the structure map splits through the constant splines,
    so opens that cover the base pull back to a cover upstairs.
    """
    per_open = classify_restrictions(g, opens)
    cover = check_cover(g.ring, opens)
    notes = [
        "covering is checked on the base spectrum; the diagonal (constant-"
        "spline) section carries a base cover to a cover of the whole spectrum",
    ]
    if cover.status == COVERS and cover.detail:
        notes.append(f"cover evidence: {cover.detail}")
    all_good = all(
        outcome.classification.kind in ("Trivial", "DeterminedByCycle")
        for _, outcome in per_open
    )
    if not _ring_eligible(g.ring):
        verdict = NOT_APPLICABLE
        notes.append(
            "freeness is certified only over the integers or over polynomial "
            "rings in at most two variables"
        )
    elif cover.status == COVERS and all_good:
        verdict = FREE
    else:
        verdict = UNKNOWN
    return CertificateReport(per_open, cover, verdict, tuple(notes))
