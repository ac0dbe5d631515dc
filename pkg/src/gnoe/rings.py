"""Exact coefficient rings.

Every ring works on small immutable, hashable payloads kept in canonical
form (residues reduced, trailing zero coefficients stripped, Cayley pairs
reduced at every level), so structural equality of payloads is ring-element
equality.  Supported kinds:

    Integers                  arbitrary-precision int
    Rationals                 fractions.Fraction
    IntegersMod(n), n >= 2    int residue
    FiniteField(p, k)         tuple of ints: residue polynomial in t, the
                              modulus is the first irreducible monic
                              polynomial of degree k in base-p value order
    PolyOverField(base)       tuple of base payloads: polynomial in Y
    Matrix2(base)             4-tuple (a, b, c, d), row-major 2x2
    MixedTriangular2(ZQ|QZ)   3-tuple (a, b, d) for [[a, b], [0, d]] with
                              the diagonal in Z or Q per orientation and
                              the corner always in Q
    CayleyLevel(field; mus)   nested pairs of scalars, one doubling per
                              parameter

Rings and elements are immutable values; all operations are pure, so they
are safe to share between concurrent tasks.
"""

from __future__ import annotations

import itertools
import math
import re
from fractions import Fraction

from .errors import (
    CoefficientParseError,
    InvalidDescriptor,
    OwnerMismatch,
    UndefinedForKind,
)

_ATOMIC_LITERAL = re.compile(r"-?\d+(/\d+)?\Z")


def literal_is_atomic(text):
    """True when a coefficient literal needs no parentheses in a term."""
    return bool(_ATOMIC_LITERAL.match(text)) or text[:1] in "([("


class RingElement:
    """An element of a coefficient ring: owner plus canonical payload."""

    __slots__ = ("ring", "payload")

    def __init__(self, ring, payload):
        self.ring = ring
        self.payload = payload

    def _coerce(self, other):
        if not isinstance(other, RingElement):
            return None
        if self.ring != other.ring:
            raise OwnerMismatch(
                f"elements of {self.ring} and {other.ring} cannot be mixed"
            )
        return other

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return RingElement(self.ring, self.ring._add(self.payload, other.payload))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return RingElement(
            self.ring, self.ring._add(self.payload, self.ring._neg(other.payload))
        )

    def __neg__(self):
        return RingElement(self.ring, self.ring._neg(self.payload))

    def __mul__(self, other):
        if isinstance(other, int):
            return self._int_multiple(other)
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return RingElement(self.ring, self.ring._mul(self.payload, other.payload))

    def __rmul__(self, other):
        if isinstance(other, int):
            return self._int_multiple(other)
        return NotImplemented

    def _int_multiple(self, n):
        # n-fold sum; well defined in any ring, negative via negation
        if n < 0:
            return (-self)._int_multiple(-n)
        acc = self.ring.zero
        step = self
        while n:
            if n & 1:
                acc = acc + step
            n >>= 1
            if n:
                step = step + step
        return acc

    def __eq__(self, other):
        if not isinstance(other, RingElement):
            return NotImplemented
        return self.ring == other.ring and self.payload == other.payload

    def __hash__(self):
        return hash((id(type(self.ring)), self.payload))

    def __bool__(self):
        return self.payload != self.ring._zero()

    def __repr__(self):
        return self.ring.format_payload(self.payload)


class Ring:
    """Base class: exact payload arithmetic plus structural flags.

    Subclasses set the a-priori flags and implement the payload-level
    operations.  ``descriptor`` drives structural equality, so equal
    descriptors yield interchangeable rings.
    """

    is_associative = True
    is_commutative = True
    is_field = False
    kind = "Ring"

    # -- payload interface -------------------------------------------------

    def _zero(self):
        raise NotImplementedError

    def _one(self):
        raise NotImplementedError

    def _add(self, a, b):
        raise NotImplementedError

    def _neg(self, a):
        raise NotImplementedError

    def _mul(self, a, b):
        raise NotImplementedError

    def _canon(self, payload):
        """Validate and canonicalize an externally supplied payload."""
        raise NotImplementedError

    def _inv(self, a):
        raise UndefinedForKind(f"{self.kind} has no division")

    # -- element interface ---------------------------------------------------

    def element(self, payload):
        return RingElement(self, self._canon(payload))

    @property
    def zero(self):
        return RingElement(self, self._zero())

    @property
    def one(self):
        return RingElement(self, self._one())

    def inverse(self, elem):
        self._own(elem)
        return RingElement(self, self._inv(elem.payload))

    def _own(self, elem):
        if not isinstance(elem, RingElement) or elem.ring != self:
            raise OwnerMismatch(f"element does not belong to {self}")
        return elem

    # -- structure ----------------------------------------------------------

    @property
    def descriptor(self):
        raise NotImplementedError

    @property
    def cardinality(self):
        """Number of elements, or None when infinite."""
        return None

    @property
    def is_finite(self):
        return self.cardinality is not None

    @property
    def characteristic(self):
        return None

    # algebra-over-field interface; None scalar_field means "not an algebra"
    @property
    def scalar_field(self):
        return None

    @property
    def is_algebra_over_field(self):
        return self.scalar_field is not None

    @property
    def algebra_dimension(self):
        """Dimension over scalar_field, or None (not applicable/infinite)."""
        return None

    def basis(self):
        raise UndefinedForKind(f"{self.kind} has no distinguished basis")

    def coordinates(self, elem):
        raise UndefinedForKind(f"{self.kind} has no coordinate form")

    def from_coordinates(self, coords):
        raise UndefinedForKind(f"{self.kind} has no coordinate form")

    def embed_scalar(self, scalar_payload):
        raise UndefinedForKind(f"{self.kind} is not an algebra over a field")

    # -- enumeration / sampling ----------------------------------------------

    def elements(self):
        raise UndefinedForKind(f"{self.kind} is not finite")

    def sample(self, rng):
        raise NotImplementedError

    # -- text ---------------------------------------------------------------

    def format_payload(self, payload):
        raise NotImplementedError

    def parse_payload(self, text):
        raise NotImplementedError

    def format_element(self, elem):
        return self.format_payload(self._own(elem).payload)

    def parse_element(self, text):
        return RingElement(self, self._canon(self.parse_payload(text)))

    def __eq__(self, other):
        return isinstance(other, Ring) and self.descriptor == other.descriptor

    def __hash__(self):
        return hash(self.descriptor)

    def __repr__(self):
        return self.describe()

    def describe(self):
        raise NotImplementedError


# ---------------------------------------------------------------------------
# Integers and rationals
# ---------------------------------------------------------------------------


class IntegerRing(Ring):
    kind = "Integers"

    @property
    def descriptor(self):
        return ("Integers",)

    @property
    def characteristic(self):
        return 0

    def _zero(self):
        return 0

    def _one(self):
        return 1

    def _add(self, a, b):
        return a + b

    def _neg(self, a):
        return -a

    def _mul(self, a, b):
        return a * b

    def _canon(self, payload):
        if isinstance(payload, bool) or not isinstance(payload, int):
            raise InvalidDescriptor(f"integer payload expected, got {payload!r}")
        return payload

    def sample(self, rng):
        return RingElement(self, rng.randrange(-9, 10))

    def format_payload(self, payload):
        return str(payload)

    def parse_payload(self, text):
        try:
            return int(text)
        except ValueError:
            raise CoefficientParseError(f"not an integer literal: {text!r}")

    def describe(self):
        return "Z"


class RationalField(Ring):
    kind = "Rationals"
    is_field = True

    @property
    def descriptor(self):
        return ("Rationals",)

    @property
    def characteristic(self):
        return 0

    @property
    def scalar_field(self):
        return self

    @property
    def algebra_dimension(self):
        return 1

    def basis(self):
        return [self.one]

    def coordinates(self, elem):
        return (self._own(elem).payload,)

    def from_coordinates(self, coords):
        (c,) = coords
        return self.element(c)

    def embed_scalar(self, scalar_payload):
        return self.element(scalar_payload)

    def _zero(self):
        return Fraction(0)

    def _one(self):
        return Fraction(1)

    def _add(self, a, b):
        return a + b

    def _neg(self, a):
        return -a

    def _mul(self, a, b):
        return a * b

    def _inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return 1 / a

    def _canon(self, payload):
        if isinstance(payload, bool):
            raise InvalidDescriptor("rational payload expected")
        if isinstance(payload, int):
            return Fraction(payload)
        if isinstance(payload, Fraction):
            return payload
        raise InvalidDescriptor(f"rational payload expected, got {payload!r}")

    def sample(self, rng):
        return RingElement(self, Fraction(rng.randrange(-9, 10), rng.randrange(1, 8)))

    def format_payload(self, payload):
        return str(payload)

    def parse_payload(self, text):
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError):
            raise CoefficientParseError(f"not a rational literal: {text!r}")

    def describe(self):
        return "Q"


class IntegerModRing(Ring):
    kind = "IntegersMod"

    def __init__(self, n):
        if not isinstance(n, int) or n < 2:
            raise InvalidDescriptor(f"modulus must be an integer >= 2, got {n!r}")
        self.n = n
        self.is_field = _is_prime(n)

    @property
    def descriptor(self):
        return ("IntegersMod", self.n)

    @property
    def cardinality(self):
        return self.n

    @property
    def characteristic(self):
        return self.n

    @property
    def scalar_field(self):
        return self if self.is_field else None

    @property
    def algebra_dimension(self):
        return 1 if self.is_field else None

    def basis(self):
        if not self.is_field:
            raise UndefinedForKind("IntegersMod basis only over a prime modulus")
        return [self.one]

    def coordinates(self, elem):
        return (self._own(elem).payload,)

    def from_coordinates(self, coords):
        (c,) = coords
        return self.element(c)

    def embed_scalar(self, scalar_payload):
        return self.element(scalar_payload)

    def _zero(self):
        return 0

    def _one(self):
        return 1 % self.n

    def _add(self, a, b):
        return (a + b) % self.n

    def _neg(self, a):
        return (-a) % self.n

    def _mul(self, a, b):
        return (a * b) % self.n

    def _inv(self, a):
        if math.gcd(a, self.n) != 1:
            raise ZeroDivisionError(f"{a} not invertible mod {self.n}")
        return pow(a, -1, self.n)

    def _canon(self, payload):
        if isinstance(payload, bool) or not isinstance(payload, int):
            raise InvalidDescriptor(f"integer payload expected, got {payload!r}")
        return payload % self.n

    def elements(self):
        for v in range(self.n):
            yield RingElement(self, v)

    def sample(self, rng):
        return RingElement(self, rng.randrange(self.n))

    def format_payload(self, payload):
        return str(payload)

    def parse_payload(self, text):
        try:
            return int(text) % self.n
        except ValueError:
            raise CoefficientParseError(f"not a residue literal: {text!r}")

    def describe(self):
        return f"Z/{self.n}"


def _is_prime(n):
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


# ---------------------------------------------------------------------------
# Int-tuple polynomial helpers over Z/p (used by GaloisField internals)
# ---------------------------------------------------------------------------


def _ptrim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _padd(a, b, p):
    n = max(len(a), len(b))
    return _ptrim(
        ((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)) % p
        for i in range(n)
    )


def _pmul(a, b, p):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j, bj in enumerate(b):
            out[i + j] = (out[i + j] + ai * bj) % p
    return _ptrim(out)


def _pdivmod(a, b, p):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    q = [0] * max(0, len(a) - len(b) + 1)
    inv_lead = pow(b[-1], -1, p)
    while len(a) >= len(b) and _ptrim(a):
        if a[-1] == 0:
            a.pop()
            continue
        shift = len(a) - len(b)
        c = (a[-1] * inv_lead) % p
        q[shift] = c
        for i, bi in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bi) % p
        a.pop()
    return _ptrim(q), _ptrim(a)


def _first_irreducible(p, k):
    """First monic irreducible of degree k over Z/p in base-p value order.

    Deterministic so that identical (p, k) always give the same field
    presentation; the chosen moduli for small fields are listed in the
    README.
    """
    if k == 1:
        return (0, 1)
    for value in range(p**k):
        low = []
        v = value
        for _ in range(k):
            low.append(v % p)
            v //= p
        candidate = tuple(low) + (1,)
        if _pirreducible(candidate, p):
            return candidate
    raise InvalidDescriptor(f"no irreducible of degree {k} over Z/{p}")  # pragma: no cover


def _pirreducible(f, p):
    deg = len(f) - 1
    if deg <= 0:
        return False
    if deg == 1:
        return True
    for d in range(1, deg // 2 + 1):
        for value in range(p**d):
            low = []
            v = value
            for _ in range(d):
                low.append(v % p)
                v //= p
            g = tuple(low) + (1,)
            if not _pdivmod(f, g, p)[1]:
                return False
    return True


class GaloisField(Ring):
    """F_{p^k} as residue polynomials in t over Z/p."""

    kind = "FiniteField"
    is_field = True

    def __init__(self, p, k):
        if not isinstance(p, int) or not _is_prime(p):
            raise InvalidDescriptor(f"characteristic must be prime, got {p!r}")
        if not isinstance(k, int) or k < 1:
            raise InvalidDescriptor(f"extension degree must be >= 1, got {k!r}")
        self.p = p
        self.k = k
        self.modulus = _first_irreducible(p, k)

    @property
    def descriptor(self):
        return ("FiniteField", self.p, self.k)

    @property
    def cardinality(self):
        return self.p**self.k

    @property
    def characteristic(self):
        return self.p

    @property
    def scalar_field(self):
        return IntegerModRing(self.p)

    @property
    def algebra_dimension(self):
        return self.k

    def basis(self):
        return [
            RingElement(self, _ptrim([0] * i + [1])) for i in range(self.k)
        ]

    def coordinates(self, elem):
        pay = self._own(elem).payload
        return tuple(pay[i] if i < len(pay) else 0 for i in range(self.k))

    def from_coordinates(self, coords):
        return self.element(_ptrim(c % self.p for c in coords))

    def embed_scalar(self, scalar_payload):
        return self.element(_ptrim((scalar_payload % self.p,)))

    def _zero(self):
        return ()

    def _one(self):
        return (1,)

    def _add(self, a, b):
        return _padd(a, b, self.p)

    def _neg(self, a):
        return _ptrim((-c) % self.p for c in a)

    def _mul(self, a, b):
        return _pdivmod(_pmul(a, b, self.p), self.modulus, self.p)[1]

    def _inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of 0")
        return self._pow(a, self.cardinality - 2)

    def _pow(self, a, e):
        acc = self._one()
        base = a
        while e:
            if e & 1:
                acc = self._mul(acc, base)
            base = self._mul(base, base)
            e >>= 1
        return acc

    def frobenius(self, payload, e=1):
        """payload ** (p**e)."""
        return self._pow(payload, self.p**e)

    def _canon(self, payload):
        if not isinstance(payload, tuple):
            raise InvalidDescriptor(f"coefficient tuple expected, got {payload!r}")
        c = _ptrim(v % self.p for v in payload)
        if len(c) >= self.k + 1:
            c = _pdivmod(c, self.modulus, self.p)[1]
        return c

    def elements(self):
        for value in range(self.cardinality):
            digits = []
            v = value
            for _ in range(self.k):
                digits.append(v % self.p)
                v //= self.p
            yield RingElement(self, _ptrim(digits))

    def sample(self, rng):
        return RingElement(
            self, _ptrim(rng.randrange(self.p) for _ in range(self.k))
        )

    def format_payload(self, payload):
        return _format_univar(payload, "t", str, lambda c: c == 1)

    def parse_payload(self, text):
        coeffs = _parse_univar(
            text,
            "t",
            lambda s: int(s) % self.p,
            add=lambda a, b: (a + b) % self.p,
            neg=lambda a: (-a) % self.p,
            one=1,
        )
        return self._canon(tuple(coeffs))

    def describe(self):
        return f"GF({self.p}^{self.k})"


# ---------------------------------------------------------------------------
# Univariate literal helpers ("t^2+t+1", "Y^2+1", "3/2Y-1", "(t+1)Y^2")
# ---------------------------------------------------------------------------


def _format_univar(coeffs, var, fmt, is_one, is_minus_one=None):
    """Descending-power literal for an ascending coefficient sequence."""
    if not coeffs:
        return "0"
    terms = []
    for e in range(len(coeffs) - 1, -1, -1):
        c = coeffs[e]
        if not _nonzero_lit(c, fmt):
            continue
        lit = fmt(c)
        if e == 0:
            body = ""
        elif e == 1:
            body = var
        else:
            body = f"{var}^{e}"
        if body and is_one(c):
            terms.append(body)
        elif body and is_minus_one is not None and is_minus_one(c):
            terms.append("-" + body)
        elif body:
            if literal_is_atomic(lit):
                terms.append(lit + body)
            else:
                terms.append(f"({lit}){body}")
        else:
            terms.append(lit)
    if not terms:
        return "0"
    out = terms[0]
    for t in terms[1:]:
        if t.startswith("-"):
            out += "-" + t[1:]
        else:
            out += "+" + t
    return out


def _nonzero_lit(c, fmt):
    return fmt(c) != "0"


def _parse_univar(text, var, parse_coeff, add, neg, one):
    """Parse a univariate literal into a dense ascending coefficient list.

    Coefficients are parse_coeff results; parenthesized sub-literals are
    passed through to parse_coeff verbatim.
    """
    s = "".join(text.split())
    if not s:
        raise CoefficientParseError("empty literal")
    coeffs = {}
    pos = 0
    first = True
    while pos < len(s):
        sign = 1
        if s[pos] in "+-":
            sign = -1 if s[pos] == "-" else 1
            pos += 1
        elif not first:
            raise CoefficientParseError(f"expected '+' or '-' in {text!r}")
        first = False
        coeff = None
        if pos < len(s) and s[pos] == "(":
            depth = 0
            for j in range(pos, len(s)):
                if s[j] == "(":
                    depth += 1
                elif s[j] == ")":
                    depth -= 1
                    if depth == 0:
                        break
            else:
                raise CoefficientParseError(f"unbalanced parentheses in {text!r}")
            coeff = parse_coeff(s[pos + 1 : j])
            pos = j + 1
        else:
            m = re.match(r"\d+(/\d+)?", s[pos:])
            if m:
                coeff = parse_coeff(m.group(0))
                pos += m.end()
        exp = 0
        if pos < len(s) and s[pos] == var:
            pos += 1
            exp = 1
            if pos < len(s) and s[pos] == "^":
                m = re.match(r"\d+", s[pos + 1 :])
                if not m:
                    raise CoefficientParseError(f"missing exponent in {text!r}")
                exp = int(m.group(0))
                pos += 1 + m.end()
        elif coeff is None:
            raise CoefficientParseError(f"expected coefficient or {var} in {text!r}")
        if coeff is None:
            coeff = one
        if sign < 0:
            coeff = neg(coeff)
        coeffs[exp] = add(coeffs[exp], coeff) if exp in coeffs else coeff
    n = max(coeffs) + 1 if coeffs else 0
    zero = add(neg(one), one)
    return [coeffs.get(i, zero) for i in range(n)]


class PolynomialRing(Ring):
    """Single-variable polynomials in Y over a field."""

    kind = "PolyOverField"

    def __init__(self, base):
        if not isinstance(base, Ring) or not base.is_field:
            raise InvalidDescriptor("polynomial coefficients must form a field")
        self.base = base

    @property
    def descriptor(self):
        return ("PolyOverField", self.base.descriptor)

    @property
    def characteristic(self):
        return self.base.characteristic

    @property
    def scalar_field(self):
        return self.base

    # countable basis 1, Y, Y^2, ...; algebra_dimension stays None

    def _zero(self):
        return ()

    def _one(self):
        return (self.base._one(),)

    def _trim(self, seq):
        c = list(seq)
        z = self.base._zero()
        while c and c[-1] == z:
            c.pop()
        return tuple(c)

    def _add(self, a, b):
        n = max(len(a), len(b))
        z = self.base._zero()
        return self._trim(
            self.base._add(a[i] if i < len(a) else z, b[i] if i < len(b) else z)
            for i in range(n)
        )

    def _neg(self, a):
        return tuple(self.base._neg(c) for c in a)

    def _mul(self, a, b):
        if not a or not b:
            return ()
        z = self.base._zero()
        out = [z] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai == z:
                continue
            for j, bj in enumerate(b):
                out[i + j] = self.base._add(out[i + j], self.base._mul(ai, bj))
        return self._trim(out)

    def divmod_payload(self, a, b):
        if not b:
            raise ZeroDivisionError("polynomial division by zero")
        z = self.base._zero()
        a = list(a)
        q = [z] * max(0, len(a) - len(b) + 1)
        inv_lead = self.base._inv(b[-1])
        while len(a) >= len(b):
            if a[-1] == z:
                a.pop()
                continue
            shift = len(a) - len(b)
            c = self.base._mul(a[-1], inv_lead)
            q[shift] = c
            for i, bi in enumerate(b):
                a[shift + i] = self.base._add(
                    a[shift + i], self.base._neg(self.base._mul(c, bi))
                )
            a.pop()
        return self._trim(q), self._trim(a)

    def gcd_payload(self, a, b):
        while b:
            a, b = b, self.divmod_payload(a, b)[1]
        if a:
            inv = self.base._inv(a[-1])
            a = self._trim(self.base._mul(c, inv) for c in a)
        return a

    def xgcd_payload(self, a, b):
        """Returns (g, u, v) with u*a + v*b = g, g monic (or zero)."""
        r0, r1 = a, b
        s0, s1 = self._one(), self._zero()
        t0, t1 = self._zero(), self._one()
        while r1:
            q, r = self.divmod_payload(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, self._add(s0, self._neg(self._mul(q, s1)))
            t0, t1 = t1, self._add(t0, self._neg(self._mul(q, t1)))
        if r0:
            inv = self.base._inv(r0[-1])
            scale = (inv,)
            r0 = self._mul(scale, r0)
            s0 = self._mul(scale, s0)
            t0 = self._mul(scale, t0)
        return r0, s0, t0

    def degree(self, payload):
        return len(payload) - 1

    def substitute_power(self, payload, k):
        """p(Y) -> p(Y^k)."""
        z = self.base._zero()
        out = [z] * (k * (len(payload) - 1) + 1) if payload else []
        for i, c in enumerate(payload):
            out[k * i] = c
        return self._trim(out)

    def derivative(self, payload):
        out = []
        for i in range(1, len(payload)):
            c = payload[i]
            acc = self.base._zero()
            for _ in range(i):
                acc = self.base._add(acc, c)
            out.append(acc)
        return self._trim(out)

    def _canon(self, payload):
        if not isinstance(payload, tuple):
            raise InvalidDescriptor(f"coefficient tuple expected, got {payload!r}")
        return self._trim(self.base._canon(c) for c in payload)

    def sample(self, rng, max_degree=3):
        coeffs = [
            self.base.sample(rng).payload for _ in range(rng.randrange(max_degree + 2))
        ]
        return RingElement(self, self._trim(coeffs))

    def var(self):
        """The generator Y."""
        return RingElement(self, (self.base._zero(), self.base._one()))

    def format_payload(self, payload):
        one = self.base._one()
        minus_one = self.base._neg(one)
        return _format_univar(
            payload,
            "Y",
            self.base.format_payload,
            lambda c: c == one,
            (lambda c: c == minus_one) if minus_one != one else None,
        )

    def parse_payload(self, text):
        coeffs = _parse_univar(
            text,
            "Y",
            self.base.parse_payload,
            add=self.base._add,
            neg=self.base._neg,
            one=self.base._one(),
        )
        return self._canon(tuple(coeffs))

    def describe(self):
        return f"{self.base.describe()}[Y]"


# ---------------------------------------------------------------------------
# 2x2 matrix rings
# ---------------------------------------------------------------------------


def _split_bracketed(text, opener="[", closer="]"):
    """Split "a,b,c" at depth-0 commas, respecting (), [] nesting."""
    parts = []
    depth = 0
    current = []
    for ch in text:
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(current))
            current = []
        else:
            current.append(ch)
    parts.append("".join(current))
    return parts


def _parse_matrix_rows(text):
    s = "".join(text.split())
    if not (s.startswith("[[") and s.endswith("]]")):
        raise CoefficientParseError(f"matrix literal must look like [[..],[..]]: {text!r}")
    inner = s[1:-1]
    rows = _split_bracketed(inner)
    if len(rows) != 2 or not all(r.startswith("[") and r.endswith("]") for r in rows):
        raise CoefficientParseError(f"matrix literal needs two rows: {text!r}")
    out = []
    for r in rows:
        entries = _split_bracketed(r[1:-1])
        if len(entries) != 2:
            raise CoefficientParseError(f"matrix rows need two entries: {text!r}")
        out.append(entries)
    return out


class MatrixRing(Ring):
    """2x2 matrices over a base ring, row-major payload (a, b, c, d)."""

    kind = "Matrix2"
    is_commutative = False

    def __init__(self, base):
        if not isinstance(base, Ring):
            raise InvalidDescriptor("matrix entries must come from a ring")
        if not base.is_associative or not base.is_commutative:
            raise InvalidDescriptor("matrix base ring must be associative and commutative")
        self.base = base

    @property
    def descriptor(self):
        return ("Matrix2", self.base.descriptor)

    @property
    def cardinality(self):
        c = self.base.cardinality
        return None if c is None else c**4

    @property
    def characteristic(self):
        return self.base.characteristic

    @property
    def scalar_field(self):
        return self.base if self.base.is_field else None

    @property
    def algebra_dimension(self):
        return 4 if self.base.is_field else None

    def basis(self):
        z, o = self.base._zero(), self.base._one()
        units = [(o, z, z, z), (z, o, z, z), (z, z, o, z), (z, z, z, o)]
        return [RingElement(self, u) for u in units]

    def coordinates(self, elem):
        return self._own(elem).payload

    def from_coordinates(self, coords):
        return self.element(tuple(coords))

    def embed_scalar(self, scalar_payload):
        c = self.base._canon(scalar_payload)
        z = self.base._zero()
        return RingElement(self, (c, z, z, c))

    def _zero(self):
        z = self.base._zero()
        return (z, z, z, z)

    def _one(self):
        z, o = self.base._zero(), self.base._one()
        return (o, z, z, o)

    def _add(self, a, b):
        return tuple(self.base._add(x, y) for x, y in zip(a, b))

    def _neg(self, a):
        return tuple(self.base._neg(x) for x in a)

    def _mul(self, m, n):
        a, b, c, d = m
        e, f, g, h = n
        bm = self.base._mul
        ba = self.base._add
        return (
            ba(bm(a, e), bm(b, g)),
            ba(bm(a, f), bm(b, h)),
            ba(bm(c, e), bm(d, g)),
            ba(bm(c, f), bm(d, h)),
        )

    def _canon(self, payload):
        if not isinstance(payload, tuple) or len(payload) != 4:
            raise InvalidDescriptor("matrix payload must be a 4-tuple")
        return tuple(self.base._canon(x) for x in payload)

    def elements(self):
        base_elems = [e.payload for e in self.base.elements()]
        for quad in itertools.product(base_elems, repeat=4):
            yield RingElement(self, quad)

    def sample(self, rng):
        return RingElement(self, tuple(self.base.sample(rng).payload for _ in range(4)))

    def format_payload(self, payload):
        a, b, c, d = (self.base.format_payload(x) for x in payload)
        return f"[[{a},{b}],[{c},{d}]]"

    def parse_payload(self, text):
        rows = _parse_matrix_rows(text)
        return self._canon(
            (
                self.base.parse_payload(rows[0][0]),
                self.base.parse_payload(rows[0][1]),
                self.base.parse_payload(rows[1][0]),
                self.base.parse_payload(rows[1][1]),
            )
        )

    def describe(self):
        return f"M2({self.base.describe()})"


class TriangularRing(Ring):
    """Upper-triangular 2x2 matrices mixing Z and Q on the diagonal.

    Orientation ZQ is [[Z, Q], [0, Q]]; QZ is [[Q, Q], [0, Z]].  These are
    the classical one-sided Noetherian examples; which side carries the
    strictly ascending chain is decided by experiment in the verify module,
    not assumed here.
    """

    kind = "MixedTriangular2"
    is_commutative = False

    def __init__(self, orientation):
        if orientation not in ("ZQ", "QZ"):
            raise InvalidDescriptor(f"orientation must be ZQ or QZ, got {orientation!r}")
        self.orientation = orientation
        self._z = IntegerRing()
        self._q = RationalField()
        self.diag1 = self._z if orientation == "ZQ" else self._q
        self.diag2 = self._q if orientation == "ZQ" else self._z

    @property
    def descriptor(self):
        return ("MixedTriangular2", self.orientation)

    @property
    def characteristic(self):
        return 0

    def _zero(self):
        return (self.diag1._zero(), Fraction(0), self.diag2._zero())

    def _one(self):
        return (self.diag1._one(), Fraction(0), self.diag2._one())

    def _add(self, x, y):
        return (
            self.diag1._add(x[0], y[0]),
            x[1] + y[1],
            self.diag2._add(x[2], y[2]),
        )

    def _neg(self, x):
        return (self.diag1._neg(x[0]), -x[1], self.diag2._neg(x[2]))

    def _mul(self, x, y):
        # [[a,b],[0,d]] * [[a',b'],[0,d']] = [[aa', ab'+bd'], [0, dd']]
        return (
            self.diag1._mul(x[0], y[0]),
            Fraction(x[0]) * y[1] + x[1] * Fraction(y[2]),
            self.diag2._mul(x[2], y[2]),
        )

    def _canon(self, payload):
        if not isinstance(payload, tuple) or len(payload) != 3:
            raise InvalidDescriptor("triangular payload must be (a, b, d)")
        a, b, d = payload
        return (
            self.diag1._canon(a),
            self._q._canon(b),
            self.diag2._canon(d),
        )

    def corner(self, q):
        """The matrix [[0, q], [0, 0]]."""
        return RingElement(self, (self.diag1._zero(), Fraction(q), self.diag2._zero()))

    def diagonal(self, a, d):
        return self.element((a, Fraction(0), d))

    def sample(self, rng):
        return RingElement(
            self,
            (
                self.diag1.sample(rng).payload,
                self._q.sample(rng).payload,
                self.diag2.sample(rng).payload,
            ),
        )

    def format_payload(self, payload):
        a, b, d = payload
        return f"[[{a},{b}],[0,{d}]]"

    def parse_payload(self, text):
        rows = _parse_matrix_rows(text)
        if rows[1][0].strip() != "0":
            raise CoefficientParseError("triangular literal must have 0 below the diagonal")
        return self._canon(
            (
                self.diag1.parse_payload(rows[0][0]),
                self._q.parse_payload(rows[0][1]),
                self.diag2.parse_payload(rows[1][1]),
            )
        )

    def describe(self):
        if self.orientation == "ZQ":
            return "Tri2[[Z,Q],[0,Q]]"
        return "Tri2[[Q,Q],[0,Z]]"


# ---------------------------------------------------------------------------
# Cayley doubling towers
# ---------------------------------------------------------------------------


class CayleyRing(Ring):
    """Iterated Cayley doubles of a scalar field.

    Level-0 payloads are scalars; each doubling parameter adds one level of
    (left, right) pairing.  Multiplication is the closed pair form

        (a, b) * (c, d) = (a c + mu d* b,  d a + b c*)

    which is derived from, and cross-checked against, the flipped-extension
    quotient computation in the constructions module.
    """

    kind = "CayleyLevel"

    def __init__(self, field, mus):
        if not isinstance(field, Ring) or not field.is_field:
            raise InvalidDescriptor("Cayley scalars must form a field")
        if field.characteristic == 2:
            raise InvalidDescriptor("Cayley towers need characteristic != 2")
        mus = tuple(field._canon(m) for m in mus)
        if any(m == field._zero() for m in mus):
            raise InvalidDescriptor("Cayley parameters must be nonzero")
        self.field = field
        self.mus = mus
        self.level = len(mus)

    @property
    def descriptor(self):
        return ("CayleyLevel", self.field.descriptor, self.mus)

    @property
    def cardinality(self):
        c = self.field.cardinality
        return None if c is None else c ** (2**self.level)

    @property
    def characteristic(self):
        return self.field.characteristic

    @property
    def is_commutative(self):
        return self.level <= 1

    @property
    def is_associative(self):
        return self.level <= 2

    @property
    def is_field(self):
        return self.level == 0

    @property
    def scalar_field(self):
        return self.field

    @property
    def algebra_dimension(self):
        return 2**self.level

    def basis(self):
        dim = self.algebra_dimension
        out = []
        for i in range(dim):
            coords = [self.field._zero()] * dim
            coords[i] = self.field._one()
            out.append(self.from_coordinates(coords))
        return out

    def coordinates(self, elem):
        pay = self._own(elem).payload
        return tuple(self._flatten(self.level, pay))

    def _flatten(self, level, pay):
        if level == 0:
            return [pay]
        return self._flatten(level - 1, pay[0]) + self._flatten(level - 1, pay[1])

    def from_coordinates(self, coords):
        coords = [self.field._canon(c) for c in coords]
        if len(coords) != self.algebra_dimension:
            raise InvalidDescriptor("coordinate length mismatch")
        return RingElement(self, self._build(self.level, coords))

    def _build(self, level, coords):
        if level == 0:
            return coords[0]
        half = len(coords) // 2
        return (self._build(level - 1, coords[:half]), self._build(level - 1, coords[half:]))

    def embed_scalar(self, scalar_payload):
        c = self.field._canon(scalar_payload)
        dim = self.algebra_dimension
        return self.from_coordinates([c] + [self.field._zero()] * (dim - 1))

    def _zero(self):
        return self._fill(self.level, self.field._zero())

    def _one(self):
        z = self.field._zero()
        pay = self.field._one()
        for lvl in range(self.level):
            pay = (pay, self._fill(lvl, z))
        return pay

    def _fill(self, level, scalar):
        pay = scalar
        for _ in range(level):
            pay = (pay, pay)
        return pay

    def _add(self, a, b):
        return self._add_at(self.level, a, b)

    def _add_at(self, level, a, b):
        if level == 0:
            return self.field._add(a, b)
        return (
            self._add_at(level - 1, a[0], b[0]),
            self._add_at(level - 1, a[1], b[1]),
        )

    def _neg(self, a):
        return self._neg_at(self.level, a)

    def _neg_at(self, level, a):
        if level == 0:
            return self.field._neg(a)
        return (self._neg_at(level - 1, a[0]), self._neg_at(level - 1, a[1]))

    def conj_payload(self, a, level=None):
        """(a, b)* = (a*, -b); identity on scalars."""
        if level is None:
            level = self.level
        if level == 0:
            return a
        return (self.conj_payload(a[0], level - 1), self._neg_at(level - 1, a[1]))

    def _mul(self, a, b):
        return self._mul_at(self.level, a, b)

    def _mul_at(self, level, x, y):
        if level == 0:
            return self.field._mul(x, y)
        a, b = x
        c, d = y
        mu = self._scalar_at(level - 1, self.mus[level - 1])
        dstar = self.conj_payload(d, level - 1)
        cstar = self.conj_payload(c, level - 1)
        first = self._add_at(
            level - 1,
            self._mul_at(level - 1, a, c),
            self._mul_at(level - 1, mu, self._mul_at(level - 1, dstar, b)),
        )
        second = self._add_at(
            level - 1,
            self._mul_at(level - 1, d, a),
            self._mul_at(level - 1, b, cstar),
        )
        return (first, second)

    def _scalar_at(self, level, scalar):
        z = self.field._zero()
        pay = scalar
        for lvl in range(level):
            pay = (pay, self._fill(lvl, z))
        return pay

    def _canon(self, payload):
        return self._canon_at(self.level, payload)

    def _canon_at(self, level, payload):
        if level == 0:
            return self.field._canon(payload)
        if not isinstance(payload, tuple) or len(payload) != 2:
            raise InvalidDescriptor("Cayley payload must be a nested pair tree")
        return (
            self._canon_at(level - 1, payload[0]),
            self._canon_at(level - 1, payload[1]),
        )

    def lower(self):
        """The ring one doubling below (level must be >= 1)."""
        if self.level == 0:
            raise UndefinedForKind("level-0 Cayley ring has no lower level")
        return CayleyRing(self.field, self.mus[:-1])

    def pair(self, left, right):
        """Assemble a level-l element from two level-(l-1) elements."""
        low = self.lower()
        low._own(left)
        low._own(right)
        return RingElement(self, (left.payload, right.payload))

    def halves(self, elem):
        pay = self._own(elem).payload
        low = self.lower()
        return RingElement(low, pay[0]), RingElement(low, pay[1])

    def elements(self):
        if self.field.cardinality is None:
            raise UndefinedForKind("Cayley ring over an infinite field")
        scalars = [e.payload for e in self.field.elements()]
        for coords in itertools.product(scalars, repeat=self.algebra_dimension):
            yield self.from_coordinates(list(coords))

    def sample(self, rng):
        return self.from_coordinates(
            [self.field.sample(rng).payload for _ in range(self.algebra_dimension)]
        )

    _SEPS = {1: ","}

    @classmethod
    def _sep(cls, level):
        return "," if level == 1 else "|" * (level - 1)

    def format_payload(self, payload):
        if self.level == 0:
            return self.field.format_payload(payload)
        return "(" + self._fmt_at(self.level, payload) + ")"

    def _fmt_at(self, level, pay):
        if level == 0:
            return self.field.format_payload(pay)
        sep = self._sep(level)
        return self._fmt_at(level - 1, pay[0]) + sep + self._fmt_at(level - 1, pay[1])

    def parse_payload(self, text):
        s = "".join(text.split())
        if self.level == 0:
            return self.field.parse_payload(s)
        if not (s.startswith("(") and s.endswith(")")):
            raise CoefficientParseError(f"Cayley literal must be parenthesized: {text!r}")
        return self._parse_at(self.level, s[1:-1])

    def _parse_at(self, level, s):
        if level == 0:
            return self.field.parse_payload(s)
        sep = self._sep(level)
        if level == 1:
            parts = s.split(",")
        else:
            parts = s.split(sep)
            # a level-2 "|" split must not bite into deeper "||" separators;
            # splitting from the longest separator downward avoids that
            parts = [p for p in parts]
        if len(parts) != 2:
            raise CoefficientParseError(
                f"Cayley literal needs exactly one {sep!r} separator: {s!r}"
            )
        return (self._parse_at(level - 1, parts[0]), self._parse_at(level - 1, parts[1]))

    def describe(self):
        mus = ",".join(self.field.format_payload(m) for m in self.mus)
        return f"Cay({self.field.describe()};{mus})"


# ---------------------------------------------------------------------------
# Factory and generic operations
# ---------------------------------------------------------------------------

ZZ = IntegerRing()
QQ = RationalField()


def make_ring(kind, **params):
    """Build a ring handle from a descriptor (kind name plus parameters)."""
    if kind == "Integers":
        return IntegerRing()
    if kind == "Rationals":
        return RationalField()
    if kind == "IntegersMod":
        return IntegerModRing(params["n"])
    if kind == "FiniteField":
        return GaloisField(params["p"], params["k"])
    if kind == "PolyOverField":
        return PolynomialRing(params["base"])
    if kind == "Matrix2":
        return MatrixRing(params["base"])
    if kind == "MixedTriangular2":
        return TriangularRing(params["orientation"])
    if kind == "CayleyLevel":
        return CayleyRing(params["field"], params["mus"])
    raise InvalidDescriptor(f"unknown ring kind {kind!r}")


def ring_arith(op, *args):
    """Dispatch add/neg/mul/eq on ring elements with strict owner checks."""
    if not args:
        raise InvalidDescriptor("ring_arith needs at least one argument")
    ring = args[0].ring
    for a in args:
        if not isinstance(a, RingElement) or a.ring != ring:
            raise OwnerMismatch("ring_arith arguments must share one owner")
    if op == "add":
        return args[0] + args[1]
    if op == "neg":
        return -args[0]
    if op == "mul":
        return args[0] * args[1]
    if op == "eq":
        return args[0].payload == args[1].payload
    raise InvalidDescriptor(f"unknown ring operation {op!r}")


def associator(r, s, t):
    """(r, s, t) = (r s) t - r (s t); zero everywhere iff associative."""
    ring = r.ring
    ring._own(s)
    ring._own(t)
    return (r * s) * t - r * (s * t)


def commutator(r, s):
    return r * s - s * r
