"""Cayley doubling realized through the flipped-extension quotient.

The double of a *-algebra A at a nonzero scalar mu is the algebra on pairs
(a, b) ~ a + bX inside A[X; *, 0]^fl modulo X^2 = mu.  The doubling here
literally multiplies through that quotient (poly_mul + quotient_reduce) and
cross-checks every basis product against the closed pair form

    (a, b)(c, d) = (a c + mu d* b,  d a + b c*)

which is what the CayleyRing coefficient kind uses natively; the two routes
are independent, so their agreement is a real check, not a tautology.  The
induced involution (a, b)* = (a*, -b) is validated by the involution law
checker rather than assumed.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    InvalidDescriptor,
    NotAlgebraOverField,
    ZeroParameter,
)
from .maps import AdditiveMap, ConjugationMap, IdentityMap
from .ore import Extension
from .rings import CayleyRing, Ring, RingElement


@dataclass(frozen=True)
class InvolutiveAlgebra:
    """An algebra over a field together with a validated involution."""

    ring: Ring
    star: AdditiveMap

    @classmethod
    def create(cls, ring, star):
        if not ring.is_algebra_over_field or ring.algebra_dimension is None:
            raise NotAlgebraOverField(
                f"{ring.describe()} is not a finite-dimensional algebra over a field"
            )
        if star.ring != ring:
            raise InvalidDescriptor("the involution must act on the algebra")
        basis = ring.basis()
        for a in basis:
            if star(star(a)) != a:
                raise InvalidDescriptor(f"star fails star(star({a!r})) = {a!r}")
            for b in basis:
                if star(a * b) != star(b) * star(a):
                    raise InvalidDescriptor(
                        f"star fails the reversal law at {a!r}, {b!r}"
                    )
        field = ring.scalar_field
        for k in _scalar_probes(field):
            s = ring.embed_scalar(k)
            if star(s) != s:
                raise InvalidDescriptor(f"star moves the scalar {s!r}")
        return cls(ring, star)

    @property
    def scalar_field(self):
        return self.ring.scalar_field

    @property
    def dimension(self):
        return self.ring.algebra_dimension

    def basis(self):
        return self.ring.basis()

    @property
    def level(self):
        return self.ring.level if isinstance(self.ring, CayleyRing) else None

    def describe(self):
        return f"({self.ring.describe()}, *={self.star.describe()})"


def _scalar_probes(field):
    one = field._one()
    two = field._add(one, one)
    return [one, two, field._neg(one)]


def _tower_data(ring):
    if isinstance(ring, CayleyRing):
        return ring.field, ring.mus
    if ring.is_field:
        return ring, ()
    raise NotAlgebraOverField(
        "doubling iterates over fields and Cayley towers; got " + ring.describe()
    )


def quotient_extension(algebra, mu):
    """The flipped extension of the algebra with X^2 = mu imposed."""
    field = algebra.scalar_field
    if not isinstance(mu, RingElement):
        mu = field.element(mu)
    if not mu:
        raise ZeroParameter("Cayley parameter must be nonzero")
    return Extension(algebra.ring, algebra.star, mode="flipped", mu=mu)


def pair_product_via_quotient(ext, u, v):
    """Multiply (a, b) ~ a + bX and (c, d) ~ c + dX through the quotient."""
    a, b = u
    c, d = v
    p = ext.poly([a, b])
    q = ext.poly([c, d])
    prod = p * q
    return (prod.coefficient(0), prod.coefficient(1))


def cayley_double(algebra, mu):
    """Double a *-algebra; the result is again an involutive algebra.

    Every basis-pair product of the doubled ring is computed through the
    flipped quotient and compared with the closed pair form before the
    double is returned.
    """
    field, mus = _tower_data(algebra.ring)
    if not isinstance(mu, RingElement):
        mu = field.element(mu)
    if mu.ring != field:
        raise InvalidDescriptor("mu must live in the scalar field")
    if not mu:
        raise ZeroParameter("Cayley parameter must be nonzero")
    ext = quotient_extension(algebra, mu)
    doubled = CayleyRing(field, mus + (mu.payload,))
    low_basis = algebra.basis()
    zero = algebra.ring.zero
    pairs = [(e, zero) for e in low_basis] + [(zero, e) for e in low_basis]
    for u in pairs:
        for v in pairs:
            via_quotient = pair_product_via_quotient(ext, u, v)
            native = doubled.element(
                doubled._mul(
                    (_lift(algebra.ring, u[0]), _lift(algebra.ring, u[1])),
                    (_lift(algebra.ring, v[0]), _lift(algebra.ring, v[1])),
                )
            )
            if native.payload != (
                _lift(algebra.ring, via_quotient[0]),
                _lift(algebra.ring, via_quotient[1]),
            ):
                raise InvalidDescriptor(
                    "quotient product disagrees with the closed pair form at "
                    f"{u!r} * {v!r}"
                )  # pragma: no cover - the derivation fixes the convention
    return InvolutiveAlgebra.create(doubled, ConjugationMap(doubled))


def _lift(ring, elem):
    """Payload of an element of the level below, as seen by the double."""
    return elem.payload


def pair_to_element(doubled_ring, pair):
    """(a, b) with a, b one level down -> element of the doubled ring."""
    return doubled_ring.element((pair[0].payload, pair[1].payload))


def cayley_tower(field, mus):
    """Levels 0..len(mus) with property summaries per level."""
    mus = tuple(mus)
    base_ring = CayleyRing(field, ())
    levels = [
        TowerLevel.from_algebra(
            InvolutiveAlgebra.create(base_ring, IdentityMap(base_ring)), 0
        )
    ]
    for i, mu in enumerate(mus):
        nxt = cayley_double(levels[-1].algebra, mu)
        levels.append(TowerLevel.from_algebra(nxt, i + 1))
    return levels


@dataclass
class TowerLevel:
    algebra: InvolutiveAlgebra
    level: int
    commutative: bool
    associative: bool
    commutator_witness: tuple | None
    associator_witness: tuple | None

    @classmethod
    def from_algebra(cls, algebra, level):
        basis = algebra.basis()
        comm, comm_w = True, None
        for a in basis:
            for b in basis:
                if a * b != b * a:
                    comm, comm_w = False, (a, b)
                    break
            if not comm:
                break
        assoc, assoc_w = True, None
        for a in basis:
            for b in basis:
                for c in basis:
                    if (a * b) * c != a * (b * c):
                        assoc, assoc_w = False, (a, b, c)
                        break
                if not assoc:
                    break
            if not assoc:
                break
        return cls(algebra, level, comm, assoc, comm_w, assoc_w)

    def machine_lines(self):
        lines = [
            f"level.{self.level}.ring={self.algebra.ring.describe()}",
            f"level.{self.level}.dimension={self.algebra.dimension}",
            f"level.{self.level}.commutative={'yes' if self.commutative else 'no'}",
            f"level.{self.level}.associative={'yes' if self.associative else 'no'}",
        ]
        if self.commutator_witness:
            a, b = self.commutator_witness
            lines.append(f"level.{self.level}.commutator_witness={a!r},{b!r}")
        if self.associator_witness:
            a, b, c = self.associator_witness
            lines.append(
                f"level.{self.level}.associator_witness={a!r},{b!r},{c!r}"
            )
        return lines


def cayley_norm(elem):
    """The doubling norm N(a, b) = N(a) - mu N(b), seeded with N(q) = q^2.

    At mu = -1 this is the sum of squared coordinates; it is multiplicative
    on towers of level <= 3 (composition-algebra range).
    """
    ring = elem.ring
    if not isinstance(ring, CayleyRing):
        raise InvalidDescriptor("norms are defined on Cayley tower elements")
    field = ring.field

    def rec(level, pay):
        if level == 0:
            return field._mul(pay, pay)
        mu = ring.mus[level - 1]
        na = rec(level - 1, pay[0])
        nb = rec(level - 1, pay[1])
        return field._add(na, field._neg(field._mul(mu, nb)))

    return field.element(rec(ring.level, elem.payload))


def basis_labels(level):
    if level == 0:
        return ["1"]
    if level == 1:
        return ["1", "i"]
    if level == 2:
        return ["1", "i", "j", "k"]
    return [f"e{i}" for i in range(2**level)]


def multiplication_table(algebra):
    """Rows of formatted basis products; +/- basis elements print as
    signed labels, anything else as a full literal."""
    ring = algebra.ring
    basis = algebra.basis()
    labels = basis_labels(algebra.level if algebra.level is not None else 0)
    named = {}
    for e, lab in zip(basis, labels):
        named[e.payload] = lab
        named[(-e).payload] = "-" + lab
    table = []
    for a in basis:
        row = []
        for b in basis:
            prod = a * b
            row.append(named.get(prod.payload, repr(prod)))
        table.append(row)
    return labels, table
