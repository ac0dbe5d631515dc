"""Additive self-maps of coefficient rings: twists, derivations, involutions.

Maps are immutable and evaluation is pure.  The module also provides the
composition calculus pi(i, m) built from i copies of sigma and m - i copies
of delta (with an enumeration strategy kept as the reference oracle next to
the production recursion), law checkers with reproducible sample budgets,
exact inversion, and exact preimage search.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .errors import (
    InvalidDescriptor,
    NotInvertible,
    OwnerMismatch,
    PreimageUnavailable,
    UndefinedForKind,
)
from .rings import (
    CayleyRing,
    GaloisField,
    PolynomialRing,
    Ring,
    RingElement,
)


class AdditiveMap:
    """Base class; subclasses implement payload-level application."""

    kind = "AdditiveMap"

    def __init__(self, ring):
        if not isinstance(ring, Ring):
            raise InvalidDescriptor("additive maps need a ring owner")
        self.ring = ring

    def __call__(self, elem):
        if not isinstance(elem, RingElement) or elem.ring != self.ring:
            raise OwnerMismatch(f"{self.describe()} expects elements of {self.ring}")
        return RingElement(self.ring, self.apply_payload(elem.payload))

    def apply_payload(self, payload):
        raise NotImplementedError

    def invert(self):
        raise NotInvertible(f"{self.describe()} has no inverse by kind reasoning")

    @property
    def descriptor(self):
        raise NotImplementedError

    def describe(self):
        return self.descriptor[0]

    def __eq__(self, other):
        return (
            isinstance(other, AdditiveMap)
            and self.ring == other.ring
            and self.descriptor == other.descriptor
        )

    def __hash__(self):
        return hash(self.descriptor)

    def __repr__(self):
        return self.describe()


class IdentityMap(AdditiveMap):
    kind = "Identity"

    def apply_payload(self, payload):
        return payload

    def invert(self):
        return self

    @property
    def descriptor(self):
        return ("Identity",)


class ZeroMap(AdditiveMap):
    kind = "Zero"

    def apply_payload(self, payload):
        return self.ring._zero()

    @property
    def descriptor(self):
        return ("Zero",)


class FrobeniusMap(AdditiveMap):
    """x -> x^(p^e) on a finite field."""

    kind = "FrobeniusPower"

    def __init__(self, ring, e=1):
        if not isinstance(ring, GaloisField):
            raise UndefinedForKind("FrobeniusPower is defined on finite fields only")
        if not isinstance(e, int) or e < 1:
            raise InvalidDescriptor("Frobenius exponent must be an integer >= 1")
        super().__init__(ring)
        self.e = e

    def apply_payload(self, payload):
        return self.ring.frobenius(payload, self.e)

    def invert(self):
        k = self.ring.k
        inv = (k - self.e % k) % k
        if inv == 0:
            return IdentityMap(self.ring)
        return FrobeniusMap(self.ring, inv)

    @property
    def descriptor(self):
        return ("FrobeniusPower", self.e)

    def describe(self):
        return f"FrobeniusPower({self.e})"


class SubstitutionMap(AdditiveMap):
    """p(Y) -> p(Y^k) on a polynomial ring."""

    kind = "Substitution"

    def __init__(self, ring, k):
        if not isinstance(ring, PolynomialRing):
            raise UndefinedForKind("Substitution is defined on polynomial rings only")
        if not isinstance(k, int) or k < 1:
            raise InvalidDescriptor("substitution power must be an integer >= 1")
        super().__init__(ring)
        self.k = k

    def apply_payload(self, payload):
        return self.ring.substitute_power(payload, self.k)

    def invert(self):
        if self.k == 1:
            return IdentityMap(self.ring)
        raise NotInvertible(
            f"Y is not in the image of Y -> Y^{self.k}; injective but not onto"
        )

    def preimage_payload(self, payload):
        """Exact: q(Y^k) = target iff the support of target lies in k*N."""
        if self.k == 1:
            return payload
        zero = self.ring.base._zero()
        out = []
        for i, c in enumerate(payload):
            if i % self.k == 0:
                out.append(c)
            elif c != zero:
                return None
        return self.ring._trim(out)

    @property
    def descriptor(self):
        return ("Substitution", self.k)

    def describe(self):
        return f"Substitution(Y->Y^{self.k})"


class DerivativeMap(AdditiveMap):
    """d/dY on a polynomial ring."""

    kind = "FormalDerivative"

    def __init__(self, ring):
        if not isinstance(ring, PolynomialRing):
            raise UndefinedForKind("FormalDerivative is defined on polynomial rings only")
        super().__init__(ring)

    def apply_payload(self, payload):
        return self.ring.derivative(payload)

    def invert(self):
        raise NotInvertible("the kernel of d/dY contains all constants")

    def preimage_payload(self, payload):
        """Term-by-term antiderivative with constant 0, exact per term."""
        base = self.ring.base
        zero = base._zero()
        out = [zero]
        for i, c in enumerate(payload):
            n = base._zero()
            for _ in range(i + 1):
                n = base._add(n, base._one())
            if n == zero:
                if c != zero:
                    return None
                out.append(zero)
            else:
                out.append(base._mul(c, base._inv(n)))
        return self.ring._trim(out)

    @property
    def descriptor(self):
        return ("FormalDerivative",)


class ConjugationMap(AdditiveMap):
    """The canonical involution of a Cayley tower: (a, b)* = (a*, -b)."""

    kind = "Conjugation"

    def __init__(self, ring):
        if not isinstance(ring, CayleyRing):
            raise UndefinedForKind("Conjugation is defined on Cayley rings only")
        super().__init__(ring)

    def apply_payload(self, payload):
        return self.ring.conj_payload(payload)

    def invert(self):
        return self

    @property
    def descriptor(self):
        return ("Conjugation",)


class TableMap(AdditiveMap):
    """A finite-ring map given by its full graph."""

    kind = "Table"

    def __init__(self, ring, mapping, check_additive=True):
        if ring.cardinality is None:
            raise UndefinedForKind("Table maps require a finite ring")
        super().__init__(ring)
        mapping = {ring._canon(k): ring._canon(v) for k, v in mapping.items()}
        elems = [e.payload for e in ring.elements()]
        if set(mapping) != set(elems):
            raise InvalidDescriptor("table must be total on the ring")
        self.mapping = mapping
        if check_additive and ring.cardinality**2 <= 4096:
            for a in elems:
                for b in elems:
                    if mapping[ring._add(a, b)] != ring._add(mapping[a], mapping[b]):
                        raise InvalidDescriptor(
                            f"table is not additive at {ring.format_payload(a)}, "
                            f"{ring.format_payload(b)}"
                        )

    def apply_payload(self, payload):
        return self.mapping[payload]

    def invert(self):
        if len(set(self.mapping.values())) != len(self.mapping):
            raise NotInvertible("table map is not injective")
        inverse = {v: k for k, v in self.mapping.items()}
        return TableMap(self.ring, inverse, check_additive=False)

    @property
    def descriptor(self):
        return ("Table", tuple(sorted(self.mapping.items(), key=repr)))

    def describe(self):
        return "Table"


class SumMap(AdditiveMap):
    kind = "Sum"

    def __init__(self, parts):
        parts = tuple(parts)
        if not parts:
            raise InvalidDescriptor("Sum needs at least one map")
        super().__init__(parts[0].ring)
        for p in parts:
            if p.ring != self.ring:
                raise OwnerMismatch("Sum parts must share one ring")
        self.parts = parts

    def apply_payload(self, payload):
        acc = self.ring._zero()
        for p in self.parts:
            acc = self.ring._add(acc, p.apply_payload(payload))
        return acc

    def invert(self):
        if len(self.parts) == 1:
            return self.parts[0].invert()
        if self.ring.cardinality is not None and self.ring.cardinality <= 4096:
            return materialize(self).invert()
        raise NotInvertible("sums of maps are inverted only on finite rings")

    @property
    def descriptor(self):
        return ("Sum", tuple(p.descriptor for p in self.parts))

    def describe(self):
        return "Sum(" + ",".join(p.describe() for p in self.parts) + ")"


class ComposeMap(AdditiveMap):
    """Compose([f, g, h]) applies h, then g, then f."""

    kind = "Compose"

    def __init__(self, parts):
        parts = tuple(parts)
        if not parts:
            raise InvalidDescriptor("Compose needs at least one map")
        super().__init__(parts[0].ring)
        for p in parts:
            if p.ring != self.ring:
                raise OwnerMismatch("Compose parts must share one ring")
        self.parts = parts

    def apply_payload(self, payload):
        for p in reversed(self.parts):
            payload = p.apply_payload(payload)
        return payload

    def invert(self):
        return ComposeMap([p.invert() for p in reversed(self.parts)])

    @property
    def descriptor(self):
        return ("Compose", tuple(p.descriptor for p in self.parts))

    def describe(self):
        return "Compose(" + ",".join(p.describe() for p in self.parts) + ")"


class NegateMap(AdditiveMap):
    kind = "Negate"

    def __init__(self, inner):
        super().__init__(inner.ring)
        self.inner = inner

    def apply_payload(self, payload):
        return self.ring._neg(self.inner.apply_payload(payload))

    def invert(self):
        # (-f)^{-1} = -(f^{-1}) because inverses of additive maps are additive
        return NegateMap(self.inner.invert())

    @property
    def descriptor(self):
        return ("Negate", self.inner.descriptor)

    def describe(self):
        return f"Negate({self.inner.describe()})"


class PowerMap(AdditiveMap):
    """n-fold self-composition; negative n resolves the inverse eagerly."""

    kind = "IteratedPower"

    def __init__(self, inner, n):
        if not isinstance(n, int):
            raise InvalidDescriptor("iteration count must be an integer")
        super().__init__(inner.ring)
        self.inner = inner
        self.n = n
        if n < 0:
            self._base = inner.invert()
            self._times = -n
        else:
            self._base = inner
            self._times = n

    def apply_payload(self, payload):
        for _ in range(self._times):
            payload = self._base.apply_payload(payload)
        return payload

    def invert(self):
        return PowerMap(self.inner, -self.n)

    @property
    def descriptor(self):
        return ("IteratedPower", self.inner.descriptor, self.n)

    def describe(self):
        return f"IteratedPower({self.inner.describe()},{self.n})"


def materialize(f):
    """Freeze any map on a finite ring into its Table form."""
    if f.ring.cardinality is None:
        raise UndefinedForKind("only maps on finite rings can be materialized")
    return TableMap(
        f.ring,
        {e.payload: f.apply_payload(e.payload) for e in f.ring.elements()},
        check_additive=False,
    )


def inner_derivation(ring, c):
    """r -> c r - r c as a Table map (finite rings only)."""
    ring._own(c)
    if ring.cardinality is None:
        raise UndefinedForKind("inner derivations are tabulated on finite rings only")
    return TableMap(
        ring,
        {e.payload: (c * e - e * c).payload for e in ring.elements()},
        check_additive=False,
    )


# ---------------------------------------------------------------------------
# apply / invert entry points
# ---------------------------------------------------------------------------


def apply_map(f, elem):
    return f(elem)


def invert_map(f, verify_budget=64):
    """Exact two-sided inverse, verified before it is returned.

    Finite rings up to 4096 elements are verified exhaustively; infinite
    rings on seeded samples (kind-level reasoning guarantees the rest).
    """
    import random

    g = f.invert()
    ring = f.ring
    if ring.cardinality is not None and ring.cardinality <= 4096:
        candidates = list(ring.elements())
    else:
        rng = random.Random(20260809)
        candidates = [ring.sample(rng) for _ in range(verify_budget)]
    for x in candidates:
        if g(f(x)) != x or f(g(x)) != x:
            raise NotInvertible(
                f"claimed inverse of {f.describe()} fails at {x!r}"
            )  # pragma: no cover - guards kind-level reasoning
    return g


def try_invert_map(f):
    try:
        return invert_map(f)
    except NotInvertible:
        return None


def try_preimage(f, elem):
    """An x with f(x) = elem, or None when provably no preimage exists.

    Raises PreimageUnavailable when the question cannot be decided for this
    map kind.  Search order over finite rings is the deterministic element
    enumeration, so repeated runs pick the same preimage.
    """
    f.ring._own(elem)
    inv = _cached_inverse(f)
    if inv is not None:
        return inv(elem)
    if isinstance(f, SubstitutionMap):
        pay = f.preimage_payload(elem.payload)
        return None if pay is None else RingElement(f.ring, pay)
    if isinstance(f, DerivativeMap):
        pay = f.preimage_payload(elem.payload)
        return None if pay is None else RingElement(f.ring, pay)
    if f.ring.cardinality is not None and f.ring.cardinality <= 4096:
        for x in f.ring.elements():
            if f(x) == elem:
                return x
        return None
    raise PreimageUnavailable(
        f"no preimage search available for {f.describe()} on {f.ring}"
    )


_INVERSE_CACHE = {}


def _cached_inverse(f):
    key = (f.ring.descriptor, f.descriptor)
    if key not in _INVERSE_CACHE:
        try:
            _INVERSE_CACHE[key] = invert_map(f)
        except NotInvertible:
            _INVERSE_CACHE[key] = None
        except Exception:
            raise
    return _INVERSE_CACHE[key]


def sigma_power_preimage(sigma, d, elem):
    """x with sigma^d(x) = elem, or None when some stage provably fails."""
    for _ in range(d):
        elem = try_preimage(sigma, elem)
        if elem is None:
            return None
    return elem


# ---------------------------------------------------------------------------
# The pi calculus
# ---------------------------------------------------------------------------


def pi_words(m, i):
    """All words of length m with i sigmas ('s') and m - i deltas ('d').

    Ordered by the positions of the sigmas, leftmost first; the word is read
    as a composition, so the leftmost symbol is applied last.
    """
    if m < 0:
        raise ValueError("word length must be >= 0")
    if i < 0 or i > m:
        return []
    words = []
    for positions in itertools.combinations(range(m), i):
        pos = set(positions)
        words.append(tuple("s" if j in pos else "d" for j in range(m)))
    return words


def pi_map(sigma, delta, i, m, s, strategy="recursion"):
    """pi(i, m) applied to s.

    pi(i, m) is the sum of all binomial(m, i) compositions of i copies of
    sigma and m - i copies of delta; pi(0, 0) is the identity and pi(i, m)
    vanishes for i > m or i < 0.  The enumeration strategy is the reference
    oracle; the recursion

        pi(i, m) = sigma . pi(i-1, m-1) + delta . pi(i, m-1)

    is the production path.  Both are exposed so they can be checked against
    each other.
    """
    if m < 0:
        raise ValueError("pi_map needs m >= 0")
    ring = sigma.ring
    if delta.ring != ring:
        raise OwnerMismatch("sigma and delta must share one ring")
    ring._own(s)
    if strategy == "enumeration":
        total = ring.zero
        for word in pi_words(m, i):
            v = s
            for sym in reversed(word):
                v = sigma(v) if sym == "s" else delta(v)
            total = total + v
        return total
    if strategy == "recursion":
        memo = {}

        def rec(i_, m_):
            if i_ < 0 or i_ > m_:
                return ring.zero
            if m_ == 0:
                return s
            key = (i_, m_)
            if key not in memo:
                memo[key] = sigma(rec(i_ - 1, m_ - 1)) + delta(rec(i_, m_ - 1))
            return memo[key]

        return rec(i, m)
    raise ValueError(f"unknown pi strategy {strategy!r}")


# ---------------------------------------------------------------------------
# Law checking
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SampleBudget:
    """Reproducible budget: exhaustive on small finite rings, seeded
    sampling otherwise."""

    seed: int = 0
    samples: int = 1000
    exhaustive_limit: int = 4096
    pair_limit: int = 1 << 20


@dataclass
class Violation:
    inputs: tuple
    lhs: object
    rhs: object
    law: str

    def __repr__(self):
        ins = ", ".join(repr(x) for x in self.inputs)
        return f"{self.law}: inputs ({ins}) give {self.lhs!r} != {self.rhs!r}"


@dataclass
class LawReport:
    law: str
    ring: Ring
    exhaustive: bool
    checked: int
    seed: int
    violations: list = field(default_factory=list)
    violation_count: int = 0

    @property
    def passed(self):
        return self.violation_count == 0

    @property
    def is_proof(self):
        """Exhaustive certification on a finite ring is a proof."""
        return self.passed and self.exhaustive

    def record(self, inputs, lhs, rhs, law=None):
        self.violation_count += 1
        if len(self.violations) < 20:
            self.violations.append(Violation(inputs, lhs, rhs, law or self.law))

    def machine_lines(self):
        lines = [
            f"law={self.law}",
            f"ring={self.ring.describe()}",
            f"exhaustive={'yes' if self.exhaustive else 'no'}",
            f"checked={self.checked}",
            f"seed={self.seed}",
            f"violations={self.violation_count}",
            f"verdict={'pass' if self.passed else 'fail'}",
        ]
        for idx, v in enumerate(self.violations):
            lines.append(f"violation.{idx}={v!r}")
        return lines


KNOWN_LAWS = (
    "unital",
    "additive",
    "sigma_derivation",
    "sigma_derivation_printed",
    "involution",
    "anticommute",
    "endomorphism",
)


def _budget_tuples(ring, budget, arity):
    """(tuples, exhaustive): all element tuples or a seeded sample."""
    import random

    card = ring.cardinality
    if (
        card is not None
        and card <= budget.exhaustive_limit
        and card**arity <= budget.pair_limit
    ):
        elems = list(ring.elements())
        return itertools.product(elems, repeat=arity), True
    rng = random.Random(budget.seed)
    return (
        (tuple(ring.sample(rng) for _ in range(arity)) for _ in range(budget.samples)),
        False,
    )


def check_map_laws(sigma, delta=None, law="unital", budget=None):
    """Check one algebraic law on sampled (or all) elements.

    Laws: unital (sigma(1) = 1 and delta(1) = 0), additive (of sigma),
    sigma_derivation (delta(rs) = sigma(r) delta(s) + delta(r) s),
    sigma_derivation_printed (the same right-hand side equated to
    sigma(rs); kept selectable for comparison), involution
    (sigma^2 = id and sigma(ab) = sigma(b) sigma(a)), anticommute
    (sigma delta + delta sigma = 0), endomorphism (sigma(rs) =
    sigma(r) sigma(s)).
    """
    if law not in KNOWN_LAWS:
        raise InvalidDescriptor(f"unknown law {law!r}")
    budget = budget or SampleBudget()
    ring = sigma.ring
    if delta is None:
        delta = ZeroMap(ring)
    if delta.ring != ring:
        raise OwnerMismatch("sigma and delta must share one ring")

    if law == "unital":
        report = LawReport(law, ring, exhaustive=True, checked=1, seed=budget.seed)
        one, zero = ring.one, ring.zero
        if sigma(one) != one:
            report.record((one,), sigma(one), one, "sigma(1)=1")
        if delta(one) != zero:
            report.record((one,), delta(one), zero, "delta(1)=0")
        return report

    unary_laws = {"anticommute"}
    arity = 1 if law in unary_laws else 2
    tuples, exhaustive = _budget_tuples(ring, budget, arity)
    report = LawReport(law, ring, exhaustive=exhaustive, checked=0, seed=budget.seed)

    for args in tuples:
        report.checked += 1
        if law == "additive":
            r, s = args
            lhs, rhs = sigma(r + s), sigma(r) + sigma(s)
        elif law == "sigma_derivation":
            r, s = args
            lhs, rhs = delta(r * s), sigma(r) * delta(s) + delta(r) * s
        elif law == "sigma_derivation_printed":
            r, s = args
            lhs, rhs = sigma(r * s), sigma(r) * delta(s) + delta(r) * s
        elif law == "involution":
            a, b = args
            if sigma(sigma(a)) != a:
                report.record((a,), sigma(sigma(a)), a, "alpha^2=id")
            lhs, rhs = sigma(a * b), sigma(b) * sigma(a)
        elif law == "anticommute":
            (r,) = args
            lhs, rhs = sigma(delta(r)) + delta(sigma(r)), sigma.ring.zero
        elif law == "endomorphism":
            r, s = args
            lhs, rhs = sigma(r * s), sigma(r) * sigma(s)
        if lhs != rhs:
            report.record(args, lhs, rhs)
    return report


def make_map(kind, ring, **params):
    """Build a map from a descriptor (kind name plus parameters)."""
    if kind == "Identity":
        return IdentityMap(ring)
    if kind == "Zero":
        return ZeroMap(ring)
    if kind == "FrobeniusPower":
        return FrobeniusMap(ring, params.get("e", 1))
    if kind == "Substitution":
        return SubstitutionMap(ring, params["k"])
    if kind == "FormalDerivative":
        return DerivativeMap(ring)
    if kind == "Conjugation":
        return ConjugationMap(ring)
    if kind == "Table":
        return TableMap(ring, params["mapping"])
    if kind == "Sum":
        return SumMap(params["parts"])
    if kind == "Compose":
        return ComposeMap(params["parts"])
    if kind == "Negate":
        return NegateMap(params["inner"])
    if kind == "IteratedPower":
        return PowerMap(params["inner"], params["n"])
    raise InvalidDescriptor(f"unknown map kind {kind!r}")
