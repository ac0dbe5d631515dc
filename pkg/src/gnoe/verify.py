"""Executable classification probes and bounded-degree chain experiments.

Nothing here claims an infinitary property: reports state only what was
checked at the stated budget, every negative verdict carries a concrete
witness that re-evaluates, and chain strictness is either an exact
arithmetic proof (fractional corner ideals) or explicitly bound-limited
(span saturation inside a truncated bidegree box).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import (
    BoundTooSmall,
    HypothesisViolated,
    InvalidDescriptor,
    NotRightRepresentable,
    OrientationFailure,
    PreimageUnavailable,
    UndecidableAtBound,
)
from .linalg import RowSpace
from .maps import (
    ComposeMap,
    IdentityMap,
    SampleBudget,
    SubstitutionMap,
    ZeroMap,
    check_map_laws,
    try_invert_map,
    try_preimage,
)
from .ore import Extension, to_right_form
from .rings import (
    IntegerModRing,
    IntegerRing as IntegerRing_,
    PolynomialRing,
    TriangularRing,
)


@dataclass
class ProbeWitness:
    """A failed identity: inputs plus both evaluated sides."""

    description: str
    inputs: tuple
    lhs: object
    rhs: object

    def render(self):
        ins = "; ".join(repr(x) for x in self.inputs)
        return f"{self.description}: [{ins}] lhs={self.lhs!r} rhs={self.rhs!r}"


# ---------------------------------------------------------------------------
# Classification
# ---------------------------------------------------------------------------

_VERDICT_ORDER = (
    "ring_extension",
    "x_power_associative",
    "free_left_module",
    "degree_subadditive",
    "x_middle_nucleus",
    "x_right_nucleus",
    "fully_associative",
    "flipped_relations",
    "right_basis_exists",
)


@dataclass
class ClassificationReport:
    ext: Extension
    bound: int
    samples: int
    seed: int
    verdicts: dict = field(default_factory=dict)
    witnesses: dict = field(default_factory=dict)

    @property
    def classification(self):
        v = self.verdicts
        if v.get("fully_associative"):
            return "ore_extension"
        if v.get("x_middle_nucleus") and v.get("x_right_nucleus"):
            return "nonassociative_ore_extension"
        if v.get("x_power_associative") and v.get("degree_subadditive"):
            return "left_gnoe"
        return "unclassified"

    def machine_lines(self):
        lines = [
            f"extension={self.ext.describe()}",
            f"bound={self.bound}",
            f"samples={self.samples}",
            f"seed={self.seed}",
        ]
        for key in _VERDICT_ORDER:
            if key not in self.verdicts:
                continue
            val = self.verdicts[key]
            text = "undecided" if val is None else ("yes" if val else "no")
            lines.append(f"{key}={text}")
            if key in self.witnesses:
                lines.append(f"{key}.witness={self.witnesses[key].render()}")
        lines.append(f"classification={self.classification}")
        return lines

    def human(self):
        out = [f"classification of {self.ext.describe()}"]
        for line in self.machine_lines()[4:]:
            out.append("  " + line.replace("=", ": ", 1))
        return "\n".join(out)


def classify_extension(ext, bound=3, samples=60, seed=0):
    """Probe the axiom families at a budget and report verdicts with
    witnesses for every negative one."""
    rng = random.Random(seed)
    report = ClassificationReport(ext, bound, samples, seed)
    v, w = report.verdicts, report.witnesses

    # ring extension and free left module hold by the representation itself
    v["ring_extension"] = True
    v["free_left_module"] = True

    ok = True
    for total in range(2, min(10, 2 * bound + 2) + 1):
        for m in range(1, total):
            lhs = ext.x_power(m) * ext.x_power(total - m)
            rhs = ext.x_power(total)
            if lhs != rhs:
                ok = False
                w["x_power_associative"] = ProbeWitness(
                    "x^m * x^n != x^(m+n)", (m, total - m), lhs, rhs
                )
                break
        if not ok:
            break
    v["x_power_associative"] = ok

    ok = True
    for _ in range(samples):
        p = ext.sample_poly(rng, bound)
        q = ext.sample_poly(rng, bound)
        prod = p * q
        if prod.deg > p.deg + q.deg:
            ok = False
            w["degree_subadditive"] = ProbeWitness(
                "deg(pq) > deg p + deg q", (p, q), prod.deg, p.deg + q.deg
            )
            break
    v["degree_subadditive"] = ok

    x = ext.x_power(1)
    ok_mid = True
    ok_right = True
    for _ in range(samples):
        p = ext.sample_poly(rng, bound)
        q = ext.sample_poly(rng, bound)
        if ok_mid:
            lhs, rhs = (p * x) * q, p * (x * q)
            if lhs != rhs:
                ok_mid = False
                w["x_middle_nucleus"] = ProbeWitness("(p,X,q) != 0", (p, q), lhs, rhs)
        if ok_right:
            lhs, rhs = (p * q) * x, p * (q * x)
            if lhs != rhs:
                ok_right = False
                w["x_right_nucleus"] = ProbeWitness("(p,q,X) != 0", (p, q), lhs, rhs)
        if not ok_mid and not ok_right:
            break
    v["x_middle_nucleus"] = ok_mid
    v["x_right_nucleus"] = ok_right

    ok = True
    for _ in range(samples):
        p = ext.sample_poly(rng, bound)
        q = ext.sample_poly(rng, bound)
        s = ext.sample_poly(rng, bound)
        lhs, rhs = (p * q) * s, p * (q * s)
        if lhs != rhs:
            ok = False
            w["fully_associative"] = ProbeWitness(
                "(pq)s != p(qs)", (p, q, s), lhs, rhs
            )
            break
    v["fully_associative"] = ok

    if ext.mode == "flipped":
        ok = True
        for _ in range(samples):
            r = ext.ring.sample(rng)
            s = ext.ring.sample(rng)
            lhs = ext.x_power(1) * ext.embed(r)
            rhs = ext.embed(ext.delta(r)) + ext.x_power(1, coeff=ext.sigma(r))
            if lhs != rhs:
                ok = False
                w["flipped_relations"] = ProbeWitness(
                    "x r != sigma(r) x + delta(r)", (r,), lhs, rhs
                )
                break
            n = rng.randrange(bound + 1)
            tau = r * s if n % 2 == 0 else s * r
            lhs = ext.embed(r) * ext.x_power(n, coeff=s)
            rhs = ext.x_power(n, coeff=tau)
            if lhs != rhs:
                ok = False
                w["flipped_relations"] = ProbeWitness(
                    "r (s x^n) != tau_n(r, s) x^n", (r, s, n), lhs, rhs
                )
                break
        v["flipped_relations"] = ok

    basis_ok = True
    try:
        for _ in range(min(samples, 25)):
            p = ext.sample_poly(rng, bound)
            rf = to_right_form(p)
            if rf.to_left() != p:
                basis_ok = False
                w["right_basis_exists"] = ProbeWitness(
                    "right form fails to round-trip", (p,), rf.to_left(), p
                )
                break
    except NotRightRepresentable as exc:
        basis_ok = False
        w["right_basis_exists"] = ProbeWitness(
            "no right representation", (exc.witness,), exc.witness, None
        )
    except PreimageUnavailable:
        basis_ok = None
    v["right_basis_exists"] = basis_ok

    return report


# ---------------------------------------------------------------------------
# GNOE <=> bijective sigma
# ---------------------------------------------------------------------------


@dataclass
class GnoeReport:
    ext: Extension
    verdict: str  # "gnoe" | "not_gnoe"
    witness: object
    checked: int
    exhaustive: bool
    degree_agreement: bool
    bound: int
    seed: int

    def machine_lines(self):
        lines = [
            f"extension={self.ext.describe()}",
            f"bound={self.bound}",
            f"seed={self.seed}",
            f"checked={self.checked}",
            f"exhaustive={'yes' if self.exhaustive else 'no'}",
            f"degree_agreement={'yes' if self.degree_agreement else 'no'}",
            f"verdict={self.verdict}",
        ]
        if self.witness is not None:
            lines.append(f"witness={self.witness!r}")
        return lines

    def human(self):
        out = [f"two-sided basis check for {self.ext.describe()}"]
        for line in self.machine_lines()[1:]:
            out.append("  " + line.replace("=", ": ", 1))
        return "\n".join(out)


def check_gnoe_bijective(ext, bound=3, samples=40, seed=0):
    """When sigma inverts: right forms must round-trip and both degrees
    agree.  When sigma is provably not onto: produce a witness coefficient
    whose monomial has no right representation."""
    inv = try_invert_map(ext.sigma)
    if inv is not None:
        card = ext.ring.cardinality
        exhaustive = card is not None and card ** (bound + 1) <= 4096
        if exhaustive:
            polys = list(ext.enumerate_polys(bound))
        else:
            rng = random.Random(seed)
            polys = [ext.sample_poly(rng, bound) for _ in range(samples)]
        agree = True
        for p in polys:
            rf = to_right_form(p)
            if rf.to_left() != p:
                raise AssertionError("right form failed to round-trip")  # pragma: no cover
            if p.coeffs and rf.deg != p.deg:
                agree = False
        return GnoeReport(ext, "gnoe", None, len(polys), exhaustive, agree, bound, seed)

    witness = _missing_from_image(ext, bound, samples, seed)
    if witness is None:
        raise UndecidableAtBound(
            f"sigma on {ext.ring.describe()} has no inverse kind and no witness "
            f"was found at the bound"
        )
    try:
        to_right_form(ext.x_power(1, coeff=witness))
        raise AssertionError("witness unexpectedly right-representable")  # pragma: no cover
    except NotRightRepresentable:
        pass
    return GnoeReport(ext, "not_gnoe", witness, 1, False, False, bound, seed)


def _missing_from_image(ext, bound, samples, seed):
    sigma = ext.sigma
    ring = ext.ring
    if isinstance(sigma, SubstitutionMap) and sigma.k >= 2:
        return ring.var()
    if ring.cardinality is not None and ring.cardinality <= 4096:
        image = {sigma(e).payload for e in ring.elements()}
        for e in ring.elements():
            if e.payload not in image:
                return e
        return None
    rng = random.Random(seed)
    for _ in range(samples):
        r = ring.sample(rng)
        try:
            if try_preimage(sigma, r) is None:
                return r
        except PreimageUnavailable:
            return None
    return None


# ---------------------------------------------------------------------------
# Flipped-square embedding
# ---------------------------------------------------------------------------


@dataclass
class EmbeddingReport:
    source: Extension
    target: Extension
    checked: int
    exhaustive: bool
    sigma_squared_invertible: bool
    failures: list = field(default_factory=list)

    @property
    def passed(self):
        return not self.failures

    def machine_lines(self):
        lines = [
            f"source={self.source.describe()}",
            f"target={self.target.describe()}",
            f"checked={self.checked}",
            f"exhaustive={'yes' if self.exhaustive else 'no'}",
            f"sigma_squared_invertible={'yes' if self.sigma_squared_invertible else 'no'}",
            f"failures={len(self.failures)}",
            f"verdict={'pass' if self.passed else 'fail'}",
        ]
        for i, wprobe in enumerate(self.failures[:10]):
            lines.append(f"failure.{i}={wprobe.render()}")
        return lines

    def human(self):
        out = ["even-power embedding check"]
        for line in self.machine_lines():
            out.append("  " + line.replace("=", ": ", 1))
        return "\n".join(out)


def embed_even_powers(src_poly, target):
    """sum r_i Y^i  ->  sum r_i X^(2i)."""
    coeffs = []
    for r in src_poly.coeffs:
        coeffs.append(r)
        coeffs.append(r.ring.zero)
    if coeffs:
        coeffs.pop()
    out = []
    for i, r in enumerate(src_poly.coeffs):
        out.extend([target.ring.zero] * (2 * i - len(out)))
        out.append(r)
    return target.poly(out)


def check_flipped_embedding(ring, sigma, delta, bound=2, samples=50, seed=0):
    """The even-power map from R[Y; sigma^2, delta^2] into the flipped
    extension must be additive and multiplicative; hypotheses: sigma
    anticommutes with delta (checked, violation raises) and sigma^2
    inverts (recorded)."""
    law = check_map_laws(
        sigma, delta, "anticommute", SampleBudget(seed=seed, samples=samples)
    )
    if not law.passed:
        raise HypothesisViolated(
            f"sigma delta + delta sigma != 0: {law.violations[:1]}"
        )
    sigma2 = ComposeMap([sigma, sigma])
    delta2 = ComposeMap([delta, delta])
    source = Extension(ring, sigma2, delta2, "standard")
    target = Extension(ring, sigma, delta, "flipped")
    inv_ok = try_invert_map(sigma2) is not None

    dim = ring.algebra_dimension
    pairs = []
    exhaustive = False
    if dim is not None and dim * (bound + 1) <= 40:
        exhaustive = True
        singles = [
            source.x_power(i, coeff=b)
            for i in range(bound + 1)
            for b in ring.basis()
        ]
        pairs = [(f, g) for f in singles for g in singles]
    else:
        rng = random.Random(seed)
        pairs = [
            (source.sample_poly(rng, bound), source.sample_poly(rng, bound))
            for _ in range(samples)
        ]
    report = EmbeddingReport(source, target, 0, exhaustive, inv_ok)
    for f, g in pairs:
        report.checked += 1
        lhs = embed_even_powers(f * g, target)
        rhs = embed_even_powers(f, target) * embed_even_powers(g, target)
        if lhs != rhs:
            report.failures.append(
                ProbeWitness("image(fg) != image(f) image(g)", (f, g), lhs, rhs)
            )
        lhs = embed_even_powers(f + g, target)
        rhs = embed_even_powers(f, target) + embed_even_powers(g, target)
        if lhs != rhs:
            report.failures.append(
                ProbeWitness("image(f+g) != image(f) + image(g)", (f, g), lhs, rhs)
            )
    return report


# ---------------------------------------------------------------------------
# Chain experiments
# ---------------------------------------------------------------------------


@dataclass
class ChainStrictness:
    index: int  # ideal index i: witness shows ideal i+1 strictly above ideal i
    witness: object
    membership_detail: str
    nonmembership_proof: bool
    nonmembership_detail: str
    strict: bool
    scope: str = ""  # distinguishes coefficient-level (I) from lifted (J) chains


@dataclass
class ChainReport:
    kind: str
    params: dict
    ideals: list
    strictness: list
    probes: dict
    bound: object
    seed: int
    notes: list = field(default_factory=list)

    @property
    def all_strict(self):
        return all(s.strict for s in self.strictness)

    def machine_lines(self):
        lines = [f"kind={self.kind}"]
        for k in sorted(self.params):
            lines.append(f"param.{k}={self.params[k]}")
        lines.append(f"bound={self.bound}")
        lines.append(f"seed={self.seed}")
        lines.append(f"ideals={len(self.ideals)}")
        for i, gens in enumerate(self.ideals):
            gtext = "; ".join(repr(g) for g in gens)
            lines.append(f"ideal.{i + 1}.gens={gtext}")
        for s in self.strictness:
            key = f"strict.{s.scope}{s.index}"
            lines.append(f"{key}={'yes' if s.strict else 'no'}")
            lines.append(f"{key}.witness={s.witness!r}")
            lines.append(f"{key}.membership={s.membership_detail}")
            lines.append(
                f"{key}.nonmembership="
                f"{'proof' if s.nonmembership_proof else 'bound-limited'}: "
                f"{s.nonmembership_detail}"
            )
        for k in sorted(self.probes):
            lines.append(f"probe.{k}={self.probes[k]}")
        for i, n in enumerate(self.notes):
            lines.append(f"note.{i}={n}")
        lines.append(f"all_strict={'yes' if self.all_strict else 'no'}")
        return lines

    def human(self):
        out = [f"chain experiment ({self.kind})"]
        for line in self.machine_lines()[1:]:
            out.append("  " + line.replace("=", ": ", 1))
        return "\n".join(out)


def chain_experiment(kind, params=None, n=3, bound=None, seed=0):
    """Produce n one-sided ideals with strictness witnesses per step.

    kind="skew_endo": left ideals of F_p[Y][X; Y -> Y^2, 0], strictness by
    span saturation in a truncated (X-degree, Y-degree) box; the candidate
    chain itself is validated by the same oracle.

    kind="flipped": right-ideal chain of fractional corner matrices in a
    mixed triangular ring (orientation selected by testing), lifted to left
    ideals I_i X + S X^2 of the flipped extension.
    """
    params = dict(params or {})
    if kind == "skew_endo":
        return _skew_endo_chain(params, n, bound or (6, 16), seed)
    if kind == "flipped":
        return _flipped_chain(params, n, seed)
    raise InvalidDescriptor(f"unknown chain experiment kind {kind!r}")


def _skew_endo_chain(params, n, bound, seed):
    p = int(params.get("p", 2))
    dx, dy = bound
    if dx < n + 1:
        raise BoundTooSmall(
            f"X-degree bound {dx} cannot hold a chain of length {n} plus witnesses"
        )
    base = IntegerModRing(p)
    R = PolynomialRing(base)
    sigma = SubstitutionMap(R, 2)
    ext = Extension(R, sigma, ZeroMap(R), "standard")
    y = R.var()
    gens = [ext.x_power(i, coeff=y) for i in range(1, n + 2)]  # Y X^i, i = 1..n+1
    ideals = [gens[:j] for j in range(1, n + 1)]

    def vectorize(poly):
        vec = [base._zero()] * ((dx + 1) * (dy + 1))
        for b, coeff in enumerate(poly.coeffs):
            if not coeff:
                continue
            if b > dx or R.degree(coeff.payload) > dy:
                return None
            for a, c in enumerate(coeff.payload):
                vec[b * (dy + 1) + a] = c
        return vec

    def span_of(ideal_gens):
        space = RowSpace(base, (dx + 1) * (dy + 1))
        for g in ideal_gens:
            gdeg = g.deg
            for b in range(dx - gdeg + 1):
                for a in range(dy + 1):
                    mono = ext.x_power(b, coeff=R.element(_y_power(R, a)))
                    prod = mono * g
                    vec = vectorize(prod)
                    if vec is not None:
                        space.insert(vec)
        return space

    strictness = []
    for j in range(1, n):
        witness = gens[j]  # Y X^(j+1), the new generator of I_(j+1)
        space = span_of(ideals[j - 1])
        wvec = vectorize(witness)
        if wvec is None:
            raise BoundTooSmall("witness does not fit the bidegree box")
        inside = space.contains(wvec)
        strictness.append(
            ChainStrictness(
                index=j,
                witness=witness,
                membership_detail=f"generator {j + 1} of ideal {j + 1}",
                nonmembership_proof=False,
                nonmembership_detail=(
                    f"outside the rank-{space.rank} span of ideal {j} truncated "
                    f"at X-degree {dx}, Y-degree {dy}"
                ),
                strict=not inside,
            )
        )
    return ChainReport(
        kind="skew_endo",
        params={"p": p, "sigma": "Substitution(Y->Y^2)"},
        ideals=ideals,
        strictness=strictness,
        probes={},
        bound=(dx, dy),
        seed=seed,
        notes=[
            "left ideals of " + ext.describe(),
            "non-membership is bound-limited: products truncated at the box",
        ],
    )


def _y_power(R, a):
    z = R.base._zero()
    return R._trim([z] * a + [R.base._one()])


def _corner_membership(R, g_fraction, elem):
    """Exact membership of elem in the right ideal of corner(g): right
    multiplication scales the corner by the lower-right diagonal entry, so
    the ideal is corner(g * D) for D the lower-right diagonal ring."""
    a, b, d = elem.payload
    if a != 0 or d != 0:
        return False
    ratio = Fraction(b) / g_fraction
    if isinstance(R.diag2, IntegerRing_):
        return ratio.denominator == 1
    return True


def _flipped_chain(params, n, seed):
    orientation = params.get("orientation", "auto")
    candidates = ("ZQ", "QZ") if orientation == "auto" else (orientation,)
    tested = []
    chosen = None
    for orient in candidates:
        R = TriangularRing(orient)
        # the right ideal of corner(q) collects corner(q * d) over diagonal
        # entries d; it sits strictly below corner(q/2)'s ideal exactly when
        # the lower-right diagonal is Z, so test that by division
        g = Fraction(1)
        half = R.corner(g / 2)
        strict = not _corner_membership(R, g, half)
        tested.append(f"{orient}:{'strict' if strict else 'collapses'}")
        if strict and chosen is None:
            chosen = orient
    if chosen is None:
        raise OrientationFailure(
            "no orientation admits a strictly ascending right-ideal chain: "
            + ", ".join(tested)
        )

    R = TriangularRing(chosen)
    fractions = [Fraction(1, 2 ** (i - 1)) for i in range(1, n + 1)]
    gens = [R.corner(q) for q in fractions]
    ideals = [[g] for g in gens]

    rng = random.Random(seed)
    sigma = IdentityMap(R)
    ext = Extension(R, sigma, ZeroMap(R), "flipped")

    strictness = []
    for i in range(1, n):
        w = gens[i]  # corner(2^-i) = generator of I_(i+1)
        in_lower = _corner_membership(R, fractions[i - 1], w)
        strictness.append(
            ChainStrictness(
                index=i,
                witness=w,
                membership_detail=(
                    f"generator of ideal {i + 1}: corner({fractions[i]}) * 1"
                ),
                nonmembership_proof=True,
                nonmembership_detail=(
                    f"{fractions[i]} / {fractions[i - 1]} = "
                    f"{fractions[i] / fractions[i - 1]} is not an integer"
                ),
                strict=not in_lower,
                scope="I",
            )
        )

    # the lifted left ideals J_i = I_i X + S X^2: closure probes
    probes = {}
    failures = 0
    checked = 0
    for i, q in enumerate(fractions):
        for _ in range(20):
            k = rng.randrange(-8, 9)
            tail = [R.sample(rng) for _ in range(rng.randrange(3))]
            v = ext.poly([R.zero, gens[i] * R.diagonal(R.diag1._one(), k)])
            v = v + _times_x_squared(ext, tail)
            p_poly = ext.sample_poly(rng, 3)
            prod = p_poly * v
            checked += 1
            if not _in_lifted_ideal(R, prod, q):
                failures += 1
    probes["left_ideal_closure.checked"] = checked
    probes["left_ideal_closure.failures"] = failures

    # J-level strictness mirrors the coefficient chain exactly
    j_strict = []
    for i in range(1, n):
        wx = ext.poly([R.zero, gens[i]])
        member_upper = _in_lifted_ideal(R, wx, fractions[i])
        member_lower = _in_lifted_ideal(R, wx, fractions[i - 1])
        j_strict.append(
            ChainStrictness(
                index=i,
                witness=wx,
                membership_detail=(
                    f"degree-1 coefficient corner({fractions[i]}) generates the "
                    f"X part of ideal J_{i + 1}" + ("" if member_upper else " [FAILED]")
                ),
                nonmembership_proof=True,
                nonmembership_detail=(
                    f"every element of J_{i} has its degree-1 coefficient in "
                    f"I_{i}, and corner({fractions[i]}) is not in I_{i}"
                ),
                strict=member_upper and not member_lower,
                scope="J",
            )
        )

    return ChainReport(
        kind="flipped",
        params={"orientation": chosen, "orientations_tested": ",".join(tested)},
        ideals=ideals,
        strictness=strictness + j_strict,
        probes=probes,
        bound="exact",
        seed=seed,
        notes=[
            "right ideals I_i = corner(2^(1-i)) R in " + R.describe(),
            "left ideals J_i = I_i X + S X^2 in " + ext.describe(),
        ],
    )


def _times_x_squared(ext, coeffs):
    """sum coeffs[i] X^(2 + i)."""
    R = ext.ring
    return ext.poly([R.zero, R.zero] + list(coeffs))


def _in_lifted_ideal(R, poly, g_fraction):
    """poly in I X + S X^2 for I = the corner(g) right ideal: the constant
    term must vanish and the degree-1 coefficient must lie in I."""
    if poly.coefficient(0):
        return False
    c1 = poly.coefficient(1)
    if not c1:
        return True
    return _corner_membership(R, g_fraction, c1)
