"""Exact arithmetic over the supported coefficient rings.

Three base rings are supported: arbitrary-precision integers, residues
modulo a fixed ``n >= 2``, and sparse multivariate polynomials with exact
rational coefficients.  Integer and polynomial rings may additionally carry
a finite list of inverted irreducible factors; this models working over the
localization at the multiplicative set generated by those factors.

Canonical forms used throughout:

* integers keep their sign; the normalized associate is the absolute value,
* residues are stored in ``[0, n)``; the normalized associate of a nonzero
  residue ``a`` is ``gcd(a, n)`` (the canonical generator of the ideal),
* polynomials are stored as sorted sparse term lists under the graded
  lexicographic order induced by the declared variable order; the
  normalized associate is the monic scalar multiple.

All values are immutable and all functions are pure, so concurrent use
needs no coordination.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence, Tuple, Union

from .errors import MixedRings, UnsupportedRing

INT = "Int"
MODINT = "ModInt"
POLYQ = "PolyQ"

Exponents = Tuple[int, ...]


def _grlex_key(exps: Exponents):
    return (sum(exps), exps)


@dataclass(frozen=True)
class Residue:
    """A residue class modulo a fixed ``modulus >= 2``."""

    value: int
    modulus: int

    def __post_init__(self):
        if self.modulus < 2:
            raise ValueError("modulus must be at least 2")
        object.__setattr__(self, "value", self.value % self.modulus)

    def _check(self, other: "Residue") -> None:
        if not isinstance(other, Residue) or other.modulus != self.modulus:
            raise MixedRings(f"residue arithmetic requires matching moduli, got {other!r}")

    def __add__(self, other):
        self._check(other)
        return Residue(self.value + other.value, self.modulus)

    def __sub__(self, other):
        self._check(other)
        return Residue(self.value - other.value, self.modulus)

    def __mul__(self, other):
        self._check(other)
        return Residue(self.value * other.value, self.modulus)

    def __neg__(self):
        return Residue(-self.value, self.modulus)

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative residue powers are not supported")
        return Residue(pow(self.value, k, self.modulus), self.modulus)

    def __repr__(self):
        return f"Residue({self.value} mod {self.modulus})"


class Poly:
    """Sparse multivariate polynomial with exact rational coefficients.

    Terms are kept as a tuple of ``(exponent_vector, coefficient)`` pairs
    sorted in descending graded-lexicographic order; zero coefficients are
    never stored, so the zero polynomial is the empty term tuple.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Union[Mapping, Iterable] = ()):
        acc: dict = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for exps, coeff in items:
            e = tuple(int(x) for x in exps)
            if len(e) != nvars or any(x < 0 for x in e):
                raise ValueError(f"bad exponent vector {e} for {nvars} variable(s)")
            c = Fraction(coeff)
            if c:
                acc[e] = acc.get(e, Fraction(0)) + c
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(
            self,
            "terms",
            tuple(
                (e, c)
                for e, c in sorted(acc.items(), key=lambda t: _grlex_key(t[0]), reverse=True)
                if c
            ),
        )

    def __setattr__(self, name, value):  # pragma: no cover - immutability guard
        raise AttributeError("Poly is immutable")

    @classmethod
    def const(cls, nvars: int, c) -> "Poly":
        c = Fraction(c)
        return cls(nvars, {(0,) * nvars: c} if c else {})

    @classmethod
    def variable(cls, nvars: int, index: int) -> "Poly":
        exps = tuple(1 if i == index else 0 for i in range(nvars))
        return cls(nvars, {exps: Fraction(1)})

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_constant(self) -> bool:
        return not self.terms or sum(self.terms[0][0]) == 0

    def constant_value(self) -> Fraction:
        if not self.terms:
            return Fraction(0)
        if not self.is_constant:
            raise ValueError("polynomial is not constant")
        return self.terms[0][1]

    @property
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return sum(self.terms[0][0]) if self.terms else -1

    def leading(self) -> Tuple[Exponents, Fraction]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        return self.terms[0]

    def used_variables(self) -> Tuple[int, ...]:
        used = set()
        for exps, _ in self.terms:
            used.update(i for i, e in enumerate(exps) if e)
        return tuple(sorted(used))

    def _coerce(self, other):
        if isinstance(other, Poly):
            if other.nvars != self.nvars:
                raise MixedRings("polynomials over different variable lists")
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.const(self.nvars, other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        merged = dict(self.terms)
        for e, c in other.terms:
            merged[e] = merged.get(e, Fraction(0)) + c
        return Poly(self.nvars, merged)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.nvars, tuple((e, -c) for e, c in self.terms))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            return Poly(self.nvars, tuple((e, k * c) for e, k in self.terms))
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        acc: dict = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                e = tuple(a + b for a, b in zip(e1, e2))
                acc[e] = acc.get(e, Fraction(0)) + c1 * c2
        return Poly(self.nvars, acc)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative polynomial powers are not supported")
        result = Poly.const(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        return isinstance(other, Poly) and self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, self.terms))

    def __repr__(self):
        return f"Poly({self.nvars}, {list(self.terms)!r})"


RingElement = Union[int, Residue, Poly]


def poly_divmod(a: Poly, b: Poly) -> Tuple[Poly, Poly]:
    """Univariate division with remainder; ``deg r < deg b``."""
    if b.is_zero:
        raise ZeroDivisionError("polynomial division by zero")
    if a.nvars != b.nvars:
        raise MixedRings("polynomials over different variable lists")
    if len(b.used_variables()) > 1 or len(a.used_variables()) > 1:
        raise UnsupportedRing("division with remainder needs univariate operands")
    q = Poly(a.nvars, {})
    r = a
    (bexp, bc) = b.leading()
    bdeg = sum(bexp)
    while not r.is_zero and r.degree >= bdeg:
        (rexp, rc) = r.leading()
        diff = tuple(x - y for x, y in zip(rexp, bexp))
        t = Poly(a.nvars, {diff: rc / bc})
        q = q + t
        r = r - t * b
    return q, r


# ---------------------------------------------------------------------------
# ring descriptors


@dataclass(frozen=True)
class RingDescriptor:
    """The coefficient ring: its kind plus an optional inverted-factor list.

    ``inverted`` holds canonical, pairwise non-associate irreducible factors
    that are declared invertible; a nonempty list means "work over the
    localization at the multiplicative set they generate".
    """

    kind: str
    modulus: Optional[int] = None
    variables: Tuple[str, ...] = ()
    inverted: Tuple["Factor", ...] = ()

    def __post_init__(self):
        if self.kind not in (INT, MODINT, POLYQ):
            raise ValueError(f"unknown ring kind {self.kind!r}")
        if self.kind == MODINT:
            if self.modulus is None or self.modulus < 2:
                raise ValueError("ModInt requires a modulus >= 2")
            if self.inverted:
                raise ValueError("residue rings cannot be localized")
        if self.kind == POLYQ:
            if not self.variables:
                raise ValueError("PolyQ requires at least one variable")
            if len(set(self.variables)) != len(self.variables):
                raise ValueError("variable names must be distinct")
            for name in self.variables:
                if not name.isidentifier():
                    raise ValueError(f"bad variable name {name!r}")
        object.__setattr__(self, "variables", tuple(self.variables))
        object.__setattr__(self, "inverted", tuple(self.inverted))

    # constructors -----------------------------------------------------
    @classmethod
    def integers(cls) -> "RingDescriptor":
        return cls(INT)

    @classmethod
    def residues(cls, n: int) -> "RingDescriptor":
        return cls(MODINT, modulus=n)

    @classmethod
    def rational_polynomials(cls, *variables: str) -> "RingDescriptor":
        return cls(POLYQ, variables=tuple(variables))

    # elements ---------------------------------------------------------
    @property
    def nvars(self) -> int:
        return len(self.variables)

    def zero(self) -> RingElement:
        return self.from_int(0)

    def one(self) -> RingElement:
        return self.from_int(1)

    def from_int(self, k: int) -> RingElement:
        if self.kind == INT:
            return int(k)
        if self.kind == MODINT:
            return Residue(k, self.modulus)
        return Poly.const(self.nvars, k)

    def base(self) -> "RingDescriptor":
        """The ring with no inverted factors (the pre-localization ring)."""
        return replace(self, inverted=()) if self.inverted else self

    def localize(self, factors: Iterable["Factor"]) -> "RingDescriptor":
        if self.kind == MODINT:
            raise UnsupportedRing("residue rings cannot be localized")
        merged = {canonical_key(f.element): f for f in self.inverted}
        for f in factors:
            check_element(f.element, self.base())
            merged.setdefault(canonical_key(f.element), Factor(f.element, 1, f.irreducibility))
        ordered = tuple(merged[k] for k in sorted(merged))
        return replace(self, inverted=ordered)

    def inverted_elements(self) -> Tuple[RingElement, ...]:
        return tuple(f.element for f in self.inverted)


def check_element(x: RingElement, ring: RingDescriptor) -> RingElement:
    """Validate that ``x`` is an element of ``ring``; return it unchanged."""
    if ring.kind == INT:
        if isinstance(x, bool) or not isinstance(x, int):
            raise MixedRings(f"{x!r} is not an integer ring element")
    elif ring.kind == MODINT:
        if not isinstance(x, Residue) or x.modulus != ring.modulus:
            raise MixedRings(f"{x!r} is not a residue modulo {ring.modulus}")
    else:
        if not isinstance(x, Poly) or x.nvars != ring.nvars:
            raise MixedRings(f"{x!r} is not a polynomial in {ring.variables}")
    return x


def coerce(x, ring: RingDescriptor) -> RingElement:
    """Accept plain ints as a convenience and map them into ``ring``."""
    if isinstance(x, int) and not isinstance(x, bool) and ring.kind != INT:
        return ring.from_int(x)
    return check_element(x, ring)


def is_zero_element(x: RingElement) -> bool:
    if isinstance(x, Poly):
        return x.is_zero
    if isinstance(x, Residue):
        return x.value == 0
    return x == 0


def is_unit(x: RingElement, ring: RingDescriptor) -> bool:
    """Unit test in the *base* ring (inverted factors are not consulted)."""
    if ring.kind == INT:
        return x in (1, -1)
    if ring.kind == MODINT:
        return math.gcd(x.value, ring.modulus) == 1
    return (not x.is_zero) and x.is_constant


def unit_part(x: RingElement, ring: RingDescriptor):
    """The unit ``u`` with ``x = u * normalized_associate(x)``; 1 for zero."""
    if is_zero_element(x):
        return 1 if ring.kind != POLYQ else Fraction(1)
    if ring.kind == INT:
        return 1 if x > 0 else -1
    if ring.kind == POLYQ:
        return x.leading()[1]
    # Residues: u with x = u * gcd(x, n); pick the canonical solution.
    g = math.gcd(x.value, ring.modulus)
    q = exact_divide(x, Residue(g, ring.modulus), ring)
    return q


def normalized_associate(x: RingElement, ring: RingDescriptor) -> RingElement:
    """The canonical generator of the principal ideal of ``x``."""
    if is_zero_element(x):
        return x
    if ring.kind == INT:
        return abs(x)
    if ring.kind == POLYQ:
        return x * (1 / x.leading()[1])
    return Residue(math.gcd(x.value, ring.modulus), ring.modulus)


def canonical_key(x: RingElement):
    """A sortable, deterministic key for canonical-form elements."""
    if isinstance(x, int):
        return (0, x, "")
    if isinstance(x, Residue):
        return (0, x.value, "")
    return (x.degree, 0, repr(x.terms))


# ---------------------------------------------------------------------------
# gcd / exact division / associates


def _require_euclidean(ring: RingDescriptor, op: str) -> None:
    if ring.kind == MODINT:
        raise UnsupportedRing(f"{op} is not defined over residue rings")
    if ring.kind == POLYQ and ring.nvars > 1:
        raise UnsupportedRing(f"{op} is not defined over multivariate polynomial rings")


def gcd(a: RingElement, b: RingElement, ring: RingDescriptor) -> RingElement:
    """Normalized greatest common divisor; ``gcd(0, 0) = 0``."""
    _require_euclidean(ring, "gcd")
    a = coerce(a, ring)
    b = coerce(b, ring)
    if ring.kind == INT:
        return math.gcd(a, b)
    while not b.is_zero:
        _, r = poly_divmod(a, b)
        a, b = b, r
    return normalized_associate(a, ring)


def extended_gcd(a: RingElement, b: RingElement, ring: RingDescriptor):
    """``(g, u, v)`` with ``u*a + v*b = g`` and ``g`` normalized."""
    _require_euclidean(ring, "extended gcd")
    a = coerce(a, ring)
    b = coerce(b, ring)
    if ring.kind == INT:
        old_r, r = a, b
        old_u, u = 1, 0
        old_v, v = 0, 1
        while r:
            q = old_r // r
            old_r, r = r, old_r - q * r
            old_u, u = u, old_u - q * u
            old_v, v = v, old_v - q * v
        if old_r < 0:
            old_r, old_u, old_v = -old_r, -old_u, -old_v
        return old_r, old_u, old_v
    one = Poly.const(ring.nvars, 1)
    zero = Poly.const(ring.nvars, 0)
    old_r, r = a, b
    old_u, u = one, zero
    old_v, v = zero, one
    while not r.is_zero:
        q, rem = poly_divmod(old_r, r)
        old_r, r = r, rem
        old_u, u = u, old_u - q * u
        old_v, v = v, old_v - q * v
    if old_r.is_zero:
        return old_r, old_u, old_v
    c = 1 / old_r.leading()[1]
    return old_r * c, old_u * c, old_v * c


def exact_divide(a: RingElement, b: RingElement, ring: RingDescriptor) -> Optional[RingElement]:
    """The quotient ``q`` with ``q*b == a``, or ``None`` when ``b`` does not divide ``a``."""
    a = coerce(a, ring)
    b = coerce(b, ring)
    if is_zero_element(b):
        raise ZeroDivisionError("exact division by zero")
    if ring.kind == INT:
        q, r = divmod(a, b)
        return q if r == 0 else None
    if ring.kind == MODINT:
        n = ring.modulus
        g = math.gcd(b.value, n)
        if a.value % g:
            return None
        q = (a.value // g) * pow(b.value // g, -1, n // g) % (n // g)
        return Residue(q, n)
    # Multivariate exact division by iterated leading-term elimination
    # under the graded-lexicographic order.
    q = Poly(ring.nvars, {})
    r = a
    bexp, bc = b.leading()
    while not r.is_zero:
        rexp, rc = r.leading()
        diff = tuple(x - y for x, y in zip(rexp, bexp))
        if any(d < 0 for d in diff):
            return None
        t = Poly(ring.nvars, {diff: rc / bc})
        q = q + t
        r = r - t * b
    return q


def is_associate(a: RingElement, b: RingElement, ring: RingDescriptor) -> bool:
    """True when ``a = u*b`` for a unit ``u`` of the base ring."""
    a = coerce(a, ring)
    b = coerce(b, ring)
    return normalized_associate(a, ring) == normalized_associate(b, ring)


# ---------------------------------------------------------------------------
# primality / irreducibility

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
_MR_LIMIT = 3317044064679887385961981
_TRIAL_LIMIT = 10**6


def is_prime(n: int) -> bool:
    """Deterministic primality test (valid for ``n`` below ~3.3e24)."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41):
        if n == p:
            return True
        if n % p == 0:
            return False
    if n >= _MR_LIMIT:
        raise ValueError(f"primality testing is supported only below {_MR_LIMIT}")
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def factor_integer(n: int) -> Tuple[Tuple[int, int], ...]:
    """Prime factorization of ``|n| >= 1`` by trial division.

    Residual cofactors beyond the trial bound must themselves be prime;
    anything else is refused rather than silently mis-factored.
    """
    n = abs(n)
    if n == 0:
        raise ValueError("zero has no factorization")
    out = []
    for p in (2, 3, 5):
        m = 0
        while n % p == 0:
            n //= p
            m += 1
        if m:
            out.append((p, m))
    d = 7
    while d * d <= n and d <= _TRIAL_LIMIT:
        m = 0
        while n % d == 0:
            n //= d
            m += 1
        if m:
            out.append((d, m))
        d += 2
    if n > 1:
        if not is_prime(n):
            raise ValueError(f"cannot factor residual cofactor {n}")
        out.append((n, 1))
    return tuple(sorted(out))


def _rational_is_square(q: Fraction) -> bool:
    if q < 0:
        return False
    rn = math.isqrt(q.numerator)
    rd = math.isqrt(q.denominator)
    return rn * rn == q.numerator and rd * rd == q.denominator


def _poly_irreducible_low_degree(p: Poly) -> bool:
    """Irreducibility over the rationals for univariate degree <= 2."""
    used = p.used_variables()
    coeffs = {}
    if used:
        (v,) = used
        for exps, c in p.terms:
            coeffs[exps[v]] = c
    else:
        coeffs[0] = p.constant_value()
    deg = max(coeffs)
    if deg == 1:
        return True
    a = coeffs.get(2, Fraction(0))
    b = coeffs.get(1, Fraction(0))
    c = coeffs.get(0, Fraction(0))
    return not _rational_is_square(b * b - 4 * a * c)


VERIFIED = "Verified"
DECLARED = "Declared"


@dataclass(frozen=True)
class Factor:
    """An irreducible factor in normalized-associate form.

    Integer factors must pass the deterministic primality check and are
    tagged ``Verified``.  Polynomial factors are trusted by declaration,
    except univariate factors of degree <= 2 whose irreducibility over the
    rationals is actually checked.
    """

    element: RingElement
    multiplicity: int = 1
    irreducibility: str = DECLARED


def make_factor(element, ring: RingDescriptor, multiplicity: int = 1) -> Factor:
    """Validate and canonicalize a factor for ``ring``'s base ring."""
    if multiplicity < 1:
        raise ValueError("factor multiplicity must be positive")
    element = coerce(element, ring.base())
    if is_zero_element(element):
        raise ValueError("zero is not a valid factor")
    element = normalized_associate(element, ring.base())
    if ring.kind == INT:
        if element == 1:
            raise ValueError("units are not valid factors")
        if not is_prime(element):
            raise ValueError(f"{element} is not prime; supply its prime factors instead")
        return Factor(element, multiplicity, VERIFIED)
    if ring.kind == MODINT:
        return Factor(element, multiplicity, DECLARED)
    if element.is_constant:
        raise ValueError("constants are not valid polynomial factors")
    if len(element.used_variables()) == 1 and element.degree <= 2:
        if not _poly_irreducible_low_degree(element):
            raise ValueError(
                f"'{format_element(element, ring)}' is reducible over the rationals"
            )
        return Factor(element, multiplicity, VERIFIED)
    return Factor(element, multiplicity, DECLARED)


def integer_factors(n: int, ring: RingDescriptor) -> Tuple[Factor, ...]:
    """Split an integer into prime ``Factor``s (Int rings only)."""
    return tuple(make_factor(p, ring, m) for p, m in factor_integer(n))


# ---------------------------------------------------------------------------
# factored ideal generators


@dataclass(frozen=True)
class FactoredElement:
    """A principal-ideal generator kept in factored form.

    ``is_zero`` marks the zero ideal (empty factor list).  An empty factor
    list with ``is_zero`` false is the unit ideal; graphs drop such labels
    during normalization because the constraint they impose is vacuous.
    """

    factors: Tuple[Factor, ...] = ()
    is_zero: bool = False

    def __post_init__(self):
        if self.is_zero and self.factors:
            raise ValueError("the zero ideal carries no factors")
        keys = [canonical_key(f.element) for f in self.factors]
        if len(set(keys)) != len(keys):
            raise ValueError("factors must be pairwise non-associate")
        object.__setattr__(
            self, "factors", tuple(sorted(self.factors, key=lambda f: canonical_key(f.element)))
        )

    @classmethod
    def zero(cls) -> "FactoredElement":
        return cls((), True)

    @classmethod
    def unit(cls) -> "FactoredElement":
        return cls((), False)

    def expand(self, ring: RingDescriptor) -> RingElement:
        if self.is_zero:
            return ring.zero()
        out = ring.one()
        for f in self.factors:
            out = out * coerce(f.element, ring) ** f.multiplicity
        return out

    def is_unit_ideal(self) -> bool:
        return not self.is_zero and not self.factors

    def without(self, elements: Sequence[RingElement], ring: RingDescriptor) -> "FactoredElement":
        """Drop the factors associate to any element of ``elements``."""
        if self.is_zero:
            return self
        drop = {canonical_key(normalized_associate(e, ring.base())) for e in elements}
        kept = tuple(f for f in self.factors if canonical_key(f.element) not in drop)
        return FactoredElement(kept, False)


def factored_from_residue(value: int, ring: RingDescriptor) -> FactoredElement:
    """The ideal generated by an integer viewed in a residue ring."""
    n = ring.modulus
    v = value % n
    if v == 0:
        return FactoredElement.zero()
    g = math.gcd(v, n)
    if g == 1:
        return FactoredElement.unit()
    return FactoredElement((make_factor(Residue(g, n), ring),))


def trivializes(label: FactoredElement, ring: RingDescriptor) -> bool:
    """Whether the ideal becomes the unit ideal in ``ring``'s localization.

    The zero ideal never trivializes; a nonzero ideal trivializes exactly
    when every one of its factors is an associate of an inverted factor.
    """
    if label.is_zero:
        return False
    inverted = {canonical_key(f.element) for f in ring.inverted}
    return all(canonical_key(f.element) in inverted for f in label.factors)


# ---------------------------------------------------------------------------
# formatting


def _format_fraction(q: Fraction) -> str:
    return str(q)


def format_poly(p: Poly, variables: Sequence[str]) -> str:
    if not p.terms:
        return "0"
    chunks = []
    for i, (exps, coeff) in enumerate(p.terms):
        mag = -coeff if coeff < 0 else coeff
        vars_part = "*".join(
            f"{v}^{e}" if e > 1 else v for v, e in zip(variables, exps) if e > 0
        )
        if not vars_part:
            body = _format_fraction(mag)
        elif mag == 1:
            body = vars_part
        else:
            body = f"{_format_fraction(mag)}*{vars_part}"
        if i == 0:
            if coeff < 0:
                # An explicit coefficient keeps the leading sign outside any
                # exponent: the grammar binds '-' tighter than '^'.
                if vars_part:
                    chunks.append(f"-{_format_fraction(mag)}*{vars_part}")
                else:
                    chunks.append(f"-{_format_fraction(mag)}")
            else:
                chunks.append(body)
        else:
            chunks.append(("- " if coeff < 0 else "+ ") + body)
    return " ".join(chunks)


def format_element(x: RingElement, ring: RingDescriptor) -> str:
    x = coerce(x, ring)
    if ring.kind == INT:
        return str(x)
    if ring.kind == MODINT:
        return str(x.value)
    return format_poly(x, ring.variables)


def format_factored(label: FactoredElement, ring: RingDescriptor) -> str:
    if label.is_zero:
        return "0"
    if not label.factors:
        return "1"
    parts = []
    for f in label.factors:
        text = format_element(f.element, ring)
        if not (text.isdigit() or text.isidentifier()):
            text = f"({text})"
        if f.multiplicity > 1:
            text = f"{text}^{f.multiplicity}"
        parts.append(text)
    return "*".join(parts)
