"""Constructive one-sided Euclidean division and coefficient-ideal membership.

Membership in a one-sided ideal of a (possibly nonassociative) coefficient
ring is decided by saturation: the additive span of the generators is closed
under one-sided multiplication (by all elements on small finite rings, by
basis elements on finite-dimensional algebras, via gcd arithmetic on Z and
on single-variable polynomials over a field) until the target appears or the
span stabilizes.  A stabilized span is a proof of non-membership; hitting
the depth bound is only bound-limited evidence.

Division steps produce certificates: the degree-dropping element together
with its nested-product representation over the generators, whose degrees
add exactly (degree-additivity).  Certificates re-evaluate, so every result
can be checked independently.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import (
    HypothesisViolated,
    InvalidDescriptor,
    LeadingCoeffNotInIdeal,
    OwnerMismatch,
    PreconditionDegree,
    PreimageUnavailable,
    UnsupportedRingClass,
)
from .linalg import RowSpace
from .maps import SampleBudget, sigma_power_preimage, try_invert_map
from .ore import NEG_INF, Extension, OrePoly, deg_lc
from .rings import IntegerRing, PolynomialRing, RingElement

_FINITE_ENGINE_LIMIT = 1024


# ---------------------------------------------------------------------------
# Membership witnesses
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class WitnessTerm:
    """One nested product: generator index plus ordered ring multipliers."""

    gen_index: int
    multipliers: tuple

    def evaluate(self, gens, side):
        v = gens[self.gen_index]
        for r in self.multipliers:
            v = (v * r) if side == "right" else (r * v)
        return v


@dataclass
class MembershipWitness:
    target: RingElement
    side: str
    terms: tuple
    depth: int

    def evaluate(self, gens):
        total = self.target.ring.zero
        for t in self.terms:
            total = total + t.evaluate(gens, self.side)
        return total

    def verify(self, gens):
        return self.evaluate(gens) == self.target


@dataclass
class NotMember:
    """Negative result; ``proof`` is True when the span stabilized."""

    proof: bool
    rounds: int
    span_size: int
    detail: str = ""


def _pad_terms(terms, one):
    out = []
    for t in terms:
        if t.multipliers:
            out.append(t)
        else:
            out.append(WitnessTerm(t.gen_index, (one,)))
    return tuple(out)


class _AdditiveSpan:
    """Additive closure of values in a small finite ring, with provenance."""

    def __init__(self, ring):
        self.ring = ring
        self.members = {}  # payload -> tuple[WitnessTerm]

    def insert(self, payload, terms):
        if payload in self.members:
            return False
        frontier = [(payload, terms)]
        grew = False
        while frontier:
            v, t = frontier.pop()
            if v in self.members:
                continue
            self.members[v] = t
            grew = True
            for w, tw in list(self.members.items()):
                s = self.ring._add(v, w)
                if s not in self.members:
                    frontier.append((s, t + tw))
        return grew


def _finite_membership(ring, side, gens, b, depth_bound):
    elems = [e for e in ring.elements() if e]
    span = _AdditiveSpan(ring)
    atoms = []
    for idx, g in enumerate(gens):
        term = WitnessTerm(idx, ())
        span.insert(g.payload, (term,))
        atoms.append((g, term))
    if b.payload in span.members:
        return span, atoms, 0, True
    for depth in range(1, depth_bound + 1):
        new_atoms = []
        for v, term in atoms:
            for r in elems:
                if r == ring.one:
                    continue
                nv = (v * r) if side == "right" else (r * v)
                nterm = WitnessTerm(term.gen_index, term.multipliers + (r,))
                if span.insert(nv.payload, (nterm,)):
                    new_atoms.append((nv, nterm))
        if b.payload in span.members:
            return span, atoms, depth, True
        if not new_atoms:
            return span, atoms, depth, False  # stable: proof
        atoms = atoms + new_atoms
    return span, atoms, depth_bound, None  # bound-limited


def _algebra_membership(ring, side, gens, b, depth_bound):
    fld = ring.scalar_field
    dim = ring.algebra_dimension
    space = RowSpace(fld, dim)
    atoms = []  # aligned with RowSpace insertion indices
    frontier = []
    for idx, g in enumerate(gens):
        term = WitnessTerm(idx, ())
        grew = space.insert(list(ring.coordinates(g)))
        atoms.append((g, term))
        if grew:
            frontier.append((g, term))
    bvec = list(ring.coordinates(b))
    combo = space.solve(bvec)
    if combo is not None:
        return space, atoms, combo, 0, True
    basis = ring.basis()
    for depth in range(1, depth_bound + 1):
        new_frontier = []
        for v, term in frontier:
            for be in basis:
                nv = (v * be) if side == "right" else (be * v)
                nterm = WitnessTerm(term.gen_index, term.multipliers + (be,))
                grew = space.insert(list(ring.coordinates(nv)))
                atoms.append((nv, nterm))
                if grew:
                    new_frontier.append((nv, nterm))
        combo = space.solve(bvec)
        if combo is not None:
            return space, atoms, combo, depth, True
        if not new_frontier:
            return space, atoms, None, depth, False
        frontier = new_frontier
    return space, atoms, None, depth_bound, None


def _pid_membership(ring, gens, b):
    """Z and K[Y] are commutative principal ideal domains: membership is
    divisibility by the generator gcd, witnesses come from Bezout data."""
    if isinstance(ring, IntegerRing):
        g = 0
        cof = []
        for x in gens:
            gn, u, v = _int_xgcd(g, x.payload)
            cof = [c * u for c in cof]
            cof.append(v)
            g = gn
        if g == 0 or b.payload % g != 0:
            return None
        q = b.payload // g
        return [ring.element(q * c) for c in cof]
    poly = ring
    g = poly._zero()
    cof = []
    for x in gens:
        gn, u, v = poly.xgcd_payload(g, x.payload)
        cof = [poly._mul(c, u) for c in cof]
        cof.append(v)
        g = gn
    if not g:
        return None
    q, r = poly.divmod_payload(b.payload, g)
    if r:
        return None
    return [RingElement(poly, poly._mul(q, c)) for c in cof]


def _int_xgcd(a, b):
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def coeff_ideal_membership(ring, side, gens, b, depth_bound=8):
    """Decide b in the one-sided ideal generated by gens.

    side="right" closes under right multipliers (right ideal), side="left"
    under left multipliers.  Returns a MembershipWitness whose nested
    products re-evaluate to b, or NotMember.
    """
    if side not in ("left", "right"):
        raise InvalidDescriptor(f"side must be left or right, got {side!r}")
    if depth_bound < 1:
        raise InvalidDescriptor("depth_bound must be >= 1")
    ring._own(b)
    gens = [ring._own(g) for g in gens]
    nonzero = [g for g in gens if g]
    index_map = [i for i, g in enumerate(gens) if g]
    if not b:
        return MembershipWitness(b, side, (), 0)
    if not nonzero:
        return NotMember(proof=True, rounds=0, span_size=1, detail="all generators are zero")

    def remap(terms):
        return tuple(
            WitnessTerm(index_map[t.gen_index], t.multipliers) for t in terms
        )

    card = ring.cardinality
    if card is not None and card <= _FINITE_ENGINE_LIMIT:
        span, atoms, rounds, found = _finite_membership(
            ring, side, nonzero, b, depth_bound
        )
        if found:
            terms = _pad_terms(remap(span.members[b.payload]), ring.one)
            witness = MembershipWitness(
                b, side, terms, max(len(t.multipliers) for t in terms)
            )
            assert witness.verify(gens)
            return witness
        return NotMember(
            proof=found is False,
            rounds=rounds,
            span_size=len(span.members),
            detail="span stabilized" if found is False else "depth bound reached",
        )
    if ring.is_algebra_over_field and ring.algebra_dimension is not None:
        space, atoms, combo, rounds, found = _algebra_membership(
            ring, side, nonzero, b, depth_bound
        )
        if found:
            fld = ring.scalar_field
            terms = []
            for idx in sorted(combo):
                c = combo[idx]
                v, term = atoms[idx]
                mults = term.multipliers
                if c != fld._one():
                    mults = mults + (ring.embed_scalar(c),)
                terms.append(WitnessTerm(term.gen_index, mults))
            terms = _pad_terms(remap(terms), ring.one)
            witness = MembershipWitness(
                b, side, terms, max(len(t.multipliers) for t in terms)
            )
            assert witness.verify(gens)
            return witness
        return NotMember(
            proof=found is False,
            rounds=rounds,
            span_size=space.rank,
            detail="span stabilized" if found is False else "depth bound reached",
        )
    if isinstance(ring, (PolynomialRing, IntegerRing)):
        # one-sided = two-sided in these commutative PIDs
        cof = _pid_membership(ring, nonzero, b)
        if cof is None:
            return NotMember(proof=True, rounds=1, span_size=1, detail="gcd does not divide")
        terms = []
        for j, c in enumerate(cof):
            if not c:
                continue
            terms.append(WitnessTerm(index_map[j], (c,)))
        witness = MembershipWitness(
            b, side, tuple(terms), 1 if terms else 0
        )
        assert witness.verify(gens)
        return witness
    raise UnsupportedRingClass(
        f"membership engine does not support {ring.describe()}"
    )


def independent_closure(ring, side, gens):
    """Brute-force fixpoint closure (no provenance), for cross-checking
    NotMember proofs on small finite rings."""
    if ring.cardinality is None or ring.cardinality > _FINITE_ENGINE_LIMIT:
        raise UnsupportedRingClass("independent closure needs a small finite ring")
    elems = list(ring.elements())
    current = {ring.zero.payload}
    for g in gens:
        current.add(g.payload)
    while True:
        nxt = set(current)
        items = [RingElement(ring, p) for p in current]
        for u in items:
            for v in items:
                nxt.add((u + v).payload)
            for r in elems:
                nxt.add(((u * r) if side == "right" else (r * u)).payload)
        if nxt == current:
            return current
        current = nxt


# ---------------------------------------------------------------------------
# Division certificates
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GeneratorSet:
    ext: Extension
    side: str
    gens: tuple

    def __post_init__(self):
        if self.side not in ("left", "right"):
            raise InvalidDescriptor(f"side must be left or right, got {self.side!r}")
        if not self.gens:
            raise InvalidDescriptor("generator set must be nonempty")
        for g in self.gens:
            if not isinstance(g, OrePoly) or g.ext != self.ext:
                raise OwnerMismatch("generators must belong to the extension")
            if g.is_zero():
                raise InvalidDescriptor("generators must be nonzero")


@dataclass(frozen=True)
class CertTerm:
    """One product tree: generator tag plus ordered polynomial multipliers,
    nested per the certificate side."""

    gen_index: int
    multipliers: tuple

    def evaluate(self, gens, side):
        v = gens[self.gen_index]
        for m in self.multipliers:
            v = (v * m) if side == "left" else (m * v)
        return v

    def render(self, side):
        acc = f"g{self.gen_index + 1}"
        for m in self.multipliers:
            acc = f"({acc} * {m!r})" if side == "left" else f"({m!r} * {acc})"
        return acc


@dataclass
class DivisionCertificate:
    side: str
    element: OrePoly
    terms: tuple
    claimed_degree: object  # int, or -inf for the empty certificate

    def evaluate(self, gens):
        total = self.element.ext.zero_poly()
        for t in self.terms:
            total = total + t.evaluate(gens, self.side)
        return total

    def degree_additivity_holds(self, gens):
        """deg s = max_i (deg p_i + max_j sum_k deg s_ijk), on the
        certificate's side, with the claimed degree."""
        if not self.terms:
            return self.element.is_zero()
        best = NEG_INF
        for t in self.terms:
            d = deg_lc(gens[t.gen_index], self.side)[0]
            for m in t.multipliers:
                d = d + deg_lc(m, self.side)[0]
            best = max(best, d)
        return (
            best == self.claimed_degree
            and deg_lc(self.element, self.side)[0] == self.claimed_degree
        )

    def verify(self, gens):
        return self.evaluate(gens) == self.element and self.degree_additivity_holds(
            gens
        )

    def serialize(self):
        lines = [
            f"certificate.side={self.side}",
            f"certificate.element={self.element!r}",
            f"certificate.degree={self.claimed_degree}",
            f"certificate.terms={len(self.terms)}",
        ]
        for i, t in enumerate(self.terms):
            lines.append(f"certificate.term.{i}={t.render(self.side)}")
        return lines


def _lift_chain(sigma, d_i, chain):
    """sigma^{-d_i} preimages of every ring multiplier in the chain."""
    out = []
    for r in chain:
        s = sigma_power_preimage(sigma, d_i, r)
        if s is None:
            raise PreimageUnavailable(
                f"{r!r} has no sigma^{d_i} preimage; the construction needs a surjective sigma"
            )
        out.append(s)
    return out


def _multipliers_to_polys(ext, ring_mults, tail_power):
    """Embed ring multipliers, drop units, append the X tail; never empty."""
    out = [ext.embed(s) for s in ring_mults if s != ext.ring.one]
    if tail_power > 0:
        out.append(ext.x_power(tail_power))
    if not out:
        out = [ext.one_poly()]
    return tuple(out)


def left_divide_step(gens, q, depth_bound=8):
    """One step of the left division algorithm.

    Returns a degree-additive certificate for s with deg(q - s) < deg q and
    lc(s) = lc(q); the element is built exactly as in the constructive
    existence proof: coefficient witness for lc(q) over the generator
    leading coefficients, multipliers lifted through sigma^{-deg p_i}, and a
    right monomial factor X^(deg q - deg p_i) per term.
    """
    if gens.side != "left":
        raise InvalidDescriptor("left_divide_step needs a left-side generator set")
    ext = gens.ext
    if not isinstance(q, OrePoly) or q.ext != ext:
        raise OwnerMismatch("target must belong to the generators' extension")
    if q.is_zero():
        raise PreconditionDegree("target must be nonzero")
    d = q.deg
    degs = [p.deg for p in gens.gens]
    if d < max(degs):
        raise PreconditionDegree(
            f"deg q = {d} is below the maximal generator degree {max(degs)}"
        )
    lcs = [p.lc for p in gens.gens]
    member = coeff_ideal_membership(ext.ring, "right", lcs, q.lc, depth_bound)
    if isinstance(member, NotMember):
        raise LeadingCoeffNotInIdeal(
            f"lc(q) = {q.lc!r} is outside the right ideal of the generator "
            f"leading coefficients ({member.detail})",
            evidence=member,
        )
    terms = []
    for wt in member.terms:
        i = wt.gen_index
        lifted = _lift_chain(ext.sigma, degs[i], wt.multipliers)
        terms.append(CertTerm(i, _multipliers_to_polys(ext, lifted, d - degs[i])))
    cert = DivisionCertificate("left", ext.zero_poly(), tuple(terms), d)
    element = cert.evaluate(gens.gens)
    cert.element = element
    rem = q - element
    if not (rem.deg < d and element.lc == q.lc):
        raise HypothesisViolated(
            "left division step failed to drop the degree; the extension "
            "violates the construction's hypotheses"
        )  # pragma: no cover - guarded by construction
    return cert


def right_divide_step(gens, q, depth_bound=8):
    """Mirror step for right degrees: left-nested multipliers (forward
    sigma^{deg p_i} images of the coefficient witness) and a left monomial
    factor; requires sigma to be a ring automorphism."""
    if gens.side != "right":
        raise InvalidDescriptor("right_divide_step needs a right-side generator set")
    ext = gens.ext
    if not isinstance(q, OrePoly) or q.ext != ext:
        raise OwnerMismatch("target must belong to the generators' extension")
    if q.is_zero():
        raise PreconditionDegree("target must be nonzero")
    if try_invert_map(ext.sigma) is None:
        raise PreimageUnavailable("right division requires an invertible sigma")
    d, b = deg_lc(q, "right")
    rdegs = []
    rlcs = []
    for p in gens.gens:
        dd, ll = deg_lc(p, "right")
        rdegs.append(dd)
        rlcs.append(ll)
    if d < max(rdegs):
        raise PreconditionDegree(
            f"right degree {d} is below the maximal generator right degree {max(rdegs)}"
        )
    member = coeff_ideal_membership(ext.ring, "left", rlcs, b, depth_bound)
    if isinstance(member, NotMember):
        raise LeadingCoeffNotInIdeal(
            f"lc_r(q) = {b!r} is outside the left ideal of the generator "
            f"right leading coefficients ({member.detail})",
            evidence=member,
        )
    terms = []
    for wt in member.terms:
        i = wt.gen_index
        forward = []
        for r in wt.multipliers:
            v = r
            for _ in range(rdegs[i]):
                v = ext.sigma(v)
            forward.append(v)
        terms.append(CertTerm(i, _multipliers_to_polys(ext, forward, d - rdegs[i])))
    cert = DivisionCertificate("right", ext.zero_poly(), tuple(terms), d)
    element = cert.evaluate(gens.gens)
    cert.element = element
    rem_deg, _ = deg_lc(q - element, "right")
    elem_deg, elem_lc = deg_lc(element, "right")
    if not (rem_deg < d and elem_lc == b):
        raise HypothesisViolated(
            "right division step failed to drop the right degree; sigma is "
            "likely not a ring automorphism here"
        )
    return cert


def left_reduce(gens, q, depth_bound=8):
    """Iterate left division until the remainder is 0, drops below every
    generator degree, or its leading coefficient leaves the ideal.

    Returns (remainder, combined certificate); q = remainder + element and
    every iteration strictly decreases the degree, so at most deg q + 1
    iterations run.
    """
    ext = gens.ext
    remainder = q
    all_terms = []
    claimed = None
    while not remainder.is_zero():
        rd = remainder.deg
        usable = [(i, p) for i, p in enumerate(gens.gens) if p.deg <= rd]
        if not usable:
            break
        sub = GeneratorSet(ext, "left", tuple(p for _, p in usable))
        try:
            cert = left_divide_step(sub, remainder, depth_bound)
        except LeadingCoeffNotInIdeal:
            break
        if claimed is None:
            claimed = cert.claimed_degree
        for t in cert.terms:
            all_terms.append(CertTerm(usable[t.gen_index][0], t.multipliers))
        remainder = remainder - cert.element
    element = q - remainder
    combined = DivisionCertificate(
        "left",
        element,
        tuple(all_terms),
        claimed if claimed is not None else NEG_INF,
    )
    return remainder, combined


def right_reduce(gens, q, depth_bound=8):
    """Mirror of left_reduce for right degrees."""
    ext = gens.ext
    remainder = q
    all_terms = []
    claimed = None
    while not remainder.is_zero():
        rd = deg_lc(remainder, "right")[0]
        usable = [(i, p) for i, p in enumerate(gens.gens) if deg_lc(p, "right")[0] <= rd]
        if not usable:
            break
        sub = GeneratorSet(ext, "right", tuple(p for _, p in usable))
        try:
            cert = right_divide_step(sub, remainder, depth_bound)
        except LeadingCoeffNotInIdeal:
            break
        if claimed is None:
            claimed = cert.claimed_degree
        for t in cert.terms:
            all_terms.append(CertTerm(usable[t.gen_index][0], t.multipliers))
        remainder = remainder - cert.element
    element = q - remainder
    combined = DivisionCertificate(
        "right",
        element,
        tuple(all_terms),
        claimed if claimed is not None else NEG_INF,
    )
    return remainder, combined


# ---------------------------------------------------------------------------
# Module generation (right closure of the monomials x^0..x^m)
# ---------------------------------------------------------------------------


@dataclass
class ModuleGenReport:
    ext: Extension
    m: int
    exhaustive: bool
    checked: int
    failures: list = field(default_factory=list)

    @property
    def passed(self):
        return not self.failures

    def machine_lines(self):
        lines = [
            f"extension={self.ext.describe()}",
            f"m={self.m}",
            f"exhaustive={'yes' if self.exhaustive else 'no'}",
            f"checked={self.checked}",
            f"failures={len(self.failures)}",
            f"verdict={'pass' if self.passed else 'fail'}",
        ]
        for i, (poly, reason) in enumerate(self.failures[:10]):
            lines.append(f"failure.{i}={poly!r}: {reason}")
        return lines


def module_generation_check(ext, m, budget=None):
    """Check that every polynomial of degree <= m is a sum of right
    multiples x^k . t_k, by running the inductive division construction
    (divide by x^(deg q), recurse) and re-evaluating the decomposition."""
    import random

    budget = budget or SampleBudget()
    card = ext.ring.cardinality
    exhaustive = card is not None and card ** (m + 1) <= 4096
    if exhaustive:
        polys = list(ext.enumerate_polys(m))
    else:
        rng = random.Random(budget.seed)
        polys = [ext.sample_poly(rng, m) for _ in range(budget.samples)]
    report = ModuleGenReport(ext, m, exhaustive, 0)
    for q in polys:
        report.checked += 1
        if q.is_zero():
            continue
        work = q
        pieces = []
        try:
            while not work.is_zero():
                k = work.deg
                gens = GeneratorSet(ext, "left", (ext.x_power(k),))
                cert = left_divide_step(gens, work)
                pieces.append(cert.element)
                work = work - cert.element
        except Exception as exc:  # noqa: BLE001 - report, never hide
            report.failures.append((q, f"{type(exc).__name__}: {exc}"))
            continue
        total = ext.zero_poly()
        for piece in pieces:
            total = total + piece
        if total != q:
            report.failures.append((q, "decomposition does not re-evaluate"))
    return report
