"""Twisted polynomial rings over exact coefficient rings.

An extension pairs a coefficient ring R with additive maps sigma and delta
(sigma(1) = 1, delta(1) = 0) and a multiplication mode:

    standard    (r X^m)(s X^n) = sum_i (r . pi(i, m)(s)) X^(i + n)
    flipped     (r X^m)(s X^n) = sum_i tau_n(r, pi(i, m)(s)) X^(i + n)

where tau_n(a, b) is a b for even n and b a for odd n.  Polynomials are
stored in left form (r_0, r_1, ..., r_n), trailing coefficient nonzero, the
zero polynomial being the empty sequence, so degree and leading coefficient
are total with deg 0 = -inf and lc(0) = 0.

A flipped extension with delta = 0 and involutive sigma may carry the
quotient X^2 = mu for a nonzero scalar mu; reduced representatives then
have degree <= 1.  Everything here is immutable and pure.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    InvalidDescriptor,
    NotAlgebraOverField,
    NotRightRepresentable,
    OwnerMismatch,
    QuotientNotConfigured,
    RestrictionViolated,
    ZeroParameter,
)
from .maps import (
    AdditiveMap,
    SampleBudget,
    ZeroMap,
    check_map_laws,
    sigma_power_preimage,
)
from .rings import Ring, RingElement

NEG_INF = float("-inf")

_MODES = ("standard", "flipped")


class Extension:
    """Descriptor-plus-handle for R[X; sigma, delta] in either mode."""

    def __init__(self, ring, sigma, delta=None, mode="standard", mu=None):
        if not isinstance(ring, Ring):
            raise InvalidDescriptor("extension needs a coefficient ring")
        if delta is None:
            delta = ZeroMap(ring)
        if not isinstance(sigma, AdditiveMap) or not isinstance(delta, AdditiveMap):
            raise InvalidDescriptor("sigma and delta must be additive maps")
        if sigma.ring != ring or delta.ring != ring:
            raise OwnerMismatch("sigma and delta must act on the coefficient ring")
        if mode not in _MODES:
            raise InvalidDescriptor(f"mode must be one of {_MODES}, got {mode!r}")
        if sigma(ring.one) != ring.one:
            raise InvalidDescriptor(f"{sigma.describe()} does not fix 1")
        if delta(ring.one) != ring.zero:
            raise InvalidDescriptor(f"{delta.describe()} does not kill 1")
        self.ring = ring
        self.sigma = sigma
        self.delta = delta
        self.mode = mode
        self.mu = None
        if mu is not None:
            self._configure_quotient(mu)
        self._twin = None

    def _configure_quotient(self, mu):
        if self.mode != "flipped":
            raise RestrictionViolated("the X^2 quotient requires flipped mode")
        if not isinstance(self.delta, ZeroMap):
            raise RestrictionViolated("the X^2 quotient requires delta = 0")
        field = self.ring.scalar_field
        if field is None:
            raise NotAlgebraOverField(
                "the X^2 quotient needs an algebra over a field for its scalar"
            )
        if isinstance(mu, RingElement):
            if mu.ring != field:
                raise OwnerMismatch("mu must live in the scalar field")
        else:
            mu = field.element(mu)
        if not mu:
            raise ZeroParameter("the quotient parameter mu must be nonzero")
        law = check_map_laws(
            self.sigma, law="involution", budget=SampleBudget(seed=7, samples=50)
        )
        if not law.passed:
            raise RestrictionViolated(
                f"sigma must be an involution for the X^2 quotient: {law.violations[:1]}"
            )
        self.mu = mu

    @property
    def descriptor(self):
        return (
            self.ring.descriptor,
            self.sigma.descriptor,
            self.delta.descriptor,
            self.mode,
            None if self.mu is None else self.mu.payload,
        )

    def __eq__(self, other):
        return isinstance(other, Extension) and self.descriptor == other.descriptor

    def __hash__(self):
        return hash(self.descriptor)

    def __repr__(self):
        return self.describe()

    def describe(self):
        text = f"{self.ring.describe()}[X;{self.sigma.describe()},{self.delta.describe()}]"
        if self.mode == "flipped":
            text += "^fl"
        if self.mu is not None:
            text += f"/(X^2-({self.mu!r}))"
        return text

    def unquotiented(self):
        """The same extension without the X^2 quotient."""
        if self.mu is None:
            return self
        if self._twin is None:
            self._twin = Extension(self.ring, self.sigma, self.delta, self.mode)
        return self._twin

    # -- polynomial constructors --------------------------------------------

    def poly(self, coeffs):
        out = []
        for c in coeffs:
            if not isinstance(c, RingElement) or c.ring != self.ring:
                raise OwnerMismatch("polynomial coefficients must belong to the ring")
            out.append(c)
        while out and not out[-1]:
            out.pop()
        if self.mu is not None and len(out) > 2:
            return quotient_reduce(OrePoly(self.unquotiented(), tuple(out)), self)
        return OrePoly(self, tuple(out))

    def poly_from_payloads(self, payloads):
        return self.poly([self.ring.element(p) for p in payloads])

    def zero_poly(self):
        return OrePoly(self, ())

    def one_poly(self):
        return self.embed(self.ring.one)

    def embed(self, r):
        self.ring._own(r)
        if not r:
            return OrePoly(self, ())
        return OrePoly(self, (r,))

    def x_power(self, n, coeff=None):
        """The monomial coeff * X^n (unit coefficient by default)."""
        if n < 0:
            raise InvalidDescriptor("monomial degree must be >= 0")
        coeff = self.ring.one if coeff is None else self.ring._own(coeff)
        if not coeff:
            return OrePoly(self, ())
        return self.poly([self.ring.zero] * n + [coeff])

    def sample_poly(self, rng, max_degree=3):
        n = rng.randrange(max_degree + 1)
        return self.poly([self.ring.sample(rng) for _ in range(n + 1)])

    def enumerate_polys(self, max_degree):
        """All polynomials of degree <= max_degree (finite rings only)."""
        import itertools

        elems = list(self.ring.elements())
        for coeffs in itertools.product(elems, repeat=max_degree + 1):
            yield self.poly(list(coeffs))


class OrePoly:
    """Left-form polynomial r_0 + r_1 X + ... + r_n X^n."""

    __slots__ = ("ext", "coeffs")

    def __init__(self, ext, coeffs):
        self.ext = ext
        self.coeffs = coeffs

    @property
    def deg(self):
        """Left degree; -inf for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    @property
    def lc(self):
        """Left leading coefficient; 0 for the zero polynomial."""
        return self.coeffs[-1] if self.coeffs else self.ext.ring.zero

    def coefficient(self, i):
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return self.ext.ring.zero

    def is_zero(self):
        return not self.coeffs

    def _coerce(self, other):
        if not isinstance(other, OrePoly):
            return None
        if self.ext != other.ext:
            raise OwnerMismatch("polynomials belong to different extensions")
        return other

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        zero = self.ext.ring.zero
        out = [
            (self.coeffs[i] if i < len(self.coeffs) else zero)
            + (other.coeffs[i] if i < len(other.coeffs) else zero)
            for i in range(n)
        ]
        while out and not out[-1]:
            out.pop()
        return OrePoly(self.ext, tuple(out))

    def __neg__(self):
        return OrePoly(self.ext, tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self.ext.mu is not None:
            twin = self.ext.unquotiented()
            raw = poly_mul(OrePoly(twin, self.coeffs), OrePoly(twin, other.coeffs))
            return quotient_reduce(raw, self.ext)
        return poly_mul(self, other)

    def __eq__(self, other):
        if not isinstance(other, OrePoly):
            return NotImplemented
        return self.ext == other.ext and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(tuple(c.payload for c in self.coeffs))

    def __repr__(self):
        from .textio import format_poly

        return format_poly(self)


def _pi_row(sigma, delta, m, s):
    """[pi(0, m)(s), ..., pi(m, m)(s)] built bottom-up in O(m^2) maps."""
    row = [s]
    for m_ in range(1, m + 1):
        zero = s.ring.zero
        new = []
        for i in range(m_ + 1):
            left = sigma(row[i - 1]) if 1 <= i else zero
            right = delta(row[i]) if i <= m_ - 1 else zero
            new.append(left + right)
        row = new
    return row


def poly_mul(p, q):
    """Product by biadditive extension of the monomial relations.

    Quotiented extensions multiply through the unquotiented twin followed by
    quotient_reduce; this function handles the free case only.
    """
    if not isinstance(p, OrePoly) or not isinstance(q, OrePoly):
        raise OwnerMismatch("poly_mul expects two polynomials")
    if p.ext != q.ext:
        raise OwnerMismatch("polynomials belong to different extensions")
    ext = p.ext
    if ext.mu is not None:
        raise RestrictionViolated("quotiented products go through quotient_reduce")
    if p.is_zero() or q.is_zero():
        return ext.zero_poly()
    ring = ext.ring
    sigma, delta = ext.sigma, ext.delta
    flipped = ext.mode == "flipped"
    out = [ring.zero] * (len(p.coeffs) + len(q.coeffs) - 1)
    rows = {}
    for m, r in enumerate(p.coeffs):
        if not r:
            continue
        for n, s in enumerate(q.coeffs):
            if not s:
                continue
            key = (m, s.payload)
            if key not in rows:
                rows[key] = _pi_row(sigma, delta, m, s)
            row = rows[key]
            for i in range(m + 1):
                v = row[i]
                if not v:
                    continue
                if flipped and n % 2 == 1:
                    term = v * r
                else:
                    term = r * v
                if term:
                    out[i + n] = out[i + n] + term
    while out and not out[-1]:
        out.pop()
    return OrePoly(ext, tuple(out))


def quotient_reduce(raw, target):
    """Rewrite r X^(2k + e) to (mu^k r) X^e, legal under the quotient
    restrictions (even powers of X are central there)."""
    if not isinstance(target, Extension) or target.mu is None:
        raise QuotientNotConfigured("target extension carries no X^2 quotient")
    twin = target.unquotiented()
    if isinstance(raw, OrePoly):
        if raw.ext != twin and raw.ext != target:
            raise OwnerMismatch("raw polynomial does not match the quotient target")
        coeffs = raw.coeffs
    else:
        coeffs = tuple(target.ring._own(c) for c in raw)
    ring = target.ring
    field = ring.scalar_field
    out = [ring.zero, ring.zero]
    for e, r in enumerate(coeffs):
        if not r:
            continue
        k, rem = divmod(e, 2)
        if k:
            mu_k = target.mu
            for _ in range(k - 1):
                mu_k = mu_k * target.mu
            r = ring.embed_scalar(mu_k.payload) * r
        out[rem] = out[rem] + r
    while out and not out[-1]:
        out.pop()
    return OrePoly(target, tuple(out))


@dataclass(frozen=True)
class RightForm:
    """Right-coefficient representation r_0 + X r_1 + ... + X^n r_n."""

    ext: Extension
    coeffs: tuple

    @property
    def deg(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else self.ext.ring.zero

    def to_left(self):
        """Expand sum_i X^i r_i back into left form."""
        total = self.ext.zero_poly()
        for i, r in enumerate(self.coeffs):
            if not r:
                continue
            total = total + self.ext.x_power(i) * self.ext.embed(r)
        return total

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i, r in enumerate(self.coeffs):
            if not r:
                continue
            body = "" if i == 0 else ("X*" if i == 1 else f"X^{i}*")
            parts.append(f"{body}({r!r})")
        return " + ".join(parts)


def to_right_form(p):
    """Right coefficients computed top-down via sigma-power preimages.

    Raises NotRightRepresentable (with the offending coefficient as a
    witness) when a required preimage provably does not exist, and
    PreimageUnavailable when the search cannot be decided.
    """
    ext = p.ext
    n = len(p.coeffs) - 1
    out = [ext.ring.zero] * (n + 1)
    work = p
    while work.coeffs:
        d = len(work.coeffs) - 1
        target = work.lc
        s = sigma_power_preimage(ext.sigma, d, target)
        if s is None:
            raise NotRightRepresentable(
                f"{target!r} has no sigma^{d} preimage", witness=target, power=d
            )
        out[d] = s
        work = work - ext.x_power(d) * ext.embed(s)
        if work.coeffs and len(work.coeffs) - 1 >= d:
            raise AssertionError("right-form elimination failed to drop the degree")
    while out and not out[-1]:
        out.pop()
    return RightForm(ext, tuple(out))


def deg_lc(p, side="left"):
    """(degree, leading coefficient) on the requested side; (-inf, 0) for 0."""
    if side == "left":
        return (p.deg, p.lc)
    if side == "right":
        rf = to_right_form(p)
        return (rf.deg, rf.lc)
    raise InvalidDescriptor(f"side must be left or right, got {side!r}")
