from fractions import Fraction

import pytest

from gnoe import (
    Extension,
    FrobeniusMap,
    GaloisField,
    IdentityMap,
    IntegerModRing,
    InvalidDescriptor,
    MatrixRing,
    NotRightRepresentable,
    OwnerMismatch,
    PolynomialRing,
    QQ,
    QuotientNotConfigured,
    RestrictionViolated,
    SubstitutionMap,
    ZeroMap,
    ZeroParameter,
    deg_lc,
    inner_derivation,
    poly_mul,
    quotient_reduce,
    to_right_form,
)
from gnoe.ore import NEG_INF


def test_extension_validates_unital():
    f4 = GaloisField(2, 2)
    with pytest.raises(InvalidDescriptor):
        Extension(f4, ZeroMap(f4))  # sigma(1) != 1
    delta = inner_derivation(f4, f4.element((0, 1)))  # zero map: commutative
    Extension(f4, IdentityMap(f4), delta)  # fine


def test_degree_zero_embedding_both_modes(quaternions, rng):
    ring = quaternions.ring
    for mode in ("standard", "flipped"):
        ext = Extension(ring, quaternions.star, mode=mode)
        for _ in range(15):
            r, s = ring.sample(rng), ring.sample(rng)
            assert ext.embed(r) * ext.embed(s) == ext.embed(r * s)


def test_x_times_r_relation(m2f2, rng):
    c = m2f2.element((0, 1, 0, 0))
    delta = inner_derivation(m2f2, c)
    ext = Extension(m2f2, IdentityMap(m2f2), delta)
    x = ext.x_power(1)
    for r in m2f2.elements():
        expected = ext.embed(delta(r)) + ext.x_power(1, coeff=r)
        assert x * ext.embed(r) == expected


def test_flipped_tau_one_reverses(quaternions):
    ring = quaternions.ring
    ext = Extension(ring, quaternions.star, mode="flipped")
    b = quaternions.basis()
    i, j = b[1], b[2]
    # r (s X) = (s r) X in flipped mode
    assert ext.embed(i) * ext.x_power(1, coeff=j) == ext.x_power(1, coeff=j * i)


def test_f4_monomial_square(f4_frobenius_ext, f4):
    t = f4.element((0, 1))
    tX = f4_frobenius_ext.x_power(1, coeff=t)
    assert tX * tX == f4_frobenius_ext.x_power(2)


def test_deg_lc_conventions(f4_frobenius_ext, f4):
    zero = f4_frobenius_ext.zero_poly()
    assert deg_lc(zero, "left") == (NEG_INF, f4.zero)
    assert deg_lc(zero, "right") == (NEG_INF, f4.zero)
    t = f4.element((0, 1))
    p = f4_frobenius_ext.poly([f4.one, f4.zero, f4.zero, t])
    assert deg_lc(p, "left") == (3, t)


def test_right_form_identity_sigma(ordinary_f2_ext, rng):
    for _ in range(20):
        p = ordinary_f2_ext.sample_poly(rng, 4)
        rf = to_right_form(p)
        assert rf.coeffs == p.coeffs


def test_right_form_frobenius(f4_frobenius_ext, f4):
    t = f4.element((0, 1))
    p = f4_frobenius_ext.x_power(1, coeff=t * t)
    rf = to_right_form(p)
    assert rf.coeffs == (f4.zero, t)
    assert rf.to_left() == p


def test_right_form_unrepresentable(subst_ext, poly_f2):
    y = poly_f2.var()
    with pytest.raises(NotRightRepresentable) as err:
        to_right_form(subst_ext.x_power(1, coeff=y))
    assert err.value.witness == y


def test_degree_subadditivity_with_equality(f4_frobenius_ext, rng):
    for _ in range(60):
        p = f4_frobenius_ext.sample_poly(rng, 4)
        q = f4_frobenius_ext.sample_poly(rng, 4)
        prod = p * q
        assert prod.deg <= p.deg + q.deg
        if not p.is_zero() and not q.is_zero():
            # field coefficients, injective sigma: always equality
            assert prod.deg == p.deg + q.deg


def test_monomial_expansion_consistency(quaternions, f4_frobenius_ext, rng):
    ring = quaternions.ring
    flip = Extension(ring, quaternions.star, mode="flipped")
    for ext in (f4_frobenius_ext, flip):
        for _ in range(10):
            r = ext.ring.sample(rng)
            for m in range(1, 6):
                direct = ext.x_power(m) * ext.embed(r)
                nested = ext.x_power(1) * (ext.x_power(m - 1) * ext.embed(r))
                assert direct == nested


def test_x_power_associativity(f4_frobenius_ext, quaternions):
    flip = Extension(quaternions.ring, quaternions.star, mode="flipped")
    for ext in (f4_frobenius_ext, flip):
        for total in range(2, 11):
            for m in range(1, total):
                assert ext.x_power(m) * ext.x_power(total - m) == ext.x_power(total)


def test_standard_mode_nucleus(f4_frobenius_ext, octonions, rng):
    oct_ext = Extension(octonions.ring, IdentityMap(octonions.ring))
    for ext in (f4_frobenius_ext, oct_ext):
        x = ext.x_power(1)
        for _ in range(25):
            p = ext.sample_poly(rng, 3)
            q = ext.sample_poly(rng, 3)
            assert (p * x) * q == p * (x * q)
            assert (p * q) * x == p * (q * x)


def test_associativity_transfer(f4_frobenius_ext, m2f2, rng):
    c = m2f2.element((0, 1, 0, 0))
    inner_ext = Extension(m2f2, IdentityMap(m2f2), inner_derivation(m2f2, c))
    for ext in (f4_frobenius_ext, inner_ext):
        for _ in range(40):
            p = ext.sample_poly(rng, 3)
            q = ext.sample_poly(rng, 3)
            s = ext.sample_poly(rng, 3)
            assert (p * q) * s == p * (q * s)


def test_right_form_round_trip_f8(f8, rng):
    ext = Extension(f8, FrobeniusMap(f8, 1))
    for _ in range(60):
        p = ext.sample_poly(rng, 3)
        rf = to_right_form(p)
        assert rf.to_left() == p
        if not p.is_zero():
            assert rf.deg == p.deg


def test_quotient_reduce_basics(quaternions):
    ring = quaternions.ring
    ext = Extension(
        ring, quaternions.star, mode="flipped", mu=Fraction(-1)
    )
    twin = ext.unquotiented()
    x2 = twin.x_power(2)
    assert quotient_reduce(x2, ext) == ext.embed(-ring.one)
    r = ring.basis()[1]
    rx3 = twin.x_power(3, coeff=r)
    assert quotient_reduce(rx3, ext) == ext.x_power(1, coeff=-r)


def test_quotient_closed_form(quaternions, rng):
    ring = quaternions.ring
    ext = Extension(ring, quaternions.star, mode="flipped", mu=Fraction(-1))
    star = quaternions.star
    mu = ring.embed_scalar(Fraction(-1))
    for _ in range(30):
        a, b, c, d = (ring.sample(rng) for _ in range(4))
        prod = ext.poly([a, b]) * ext.poly([c, d])
        first = a * c + mu * (star(d) * b)
        second = d * a + b * star(c)
        assert prod.coefficient(0) == first
        assert prod.coefficient(1) == second


def test_quotient_restrictions():
    f4 = GaloisField(2, 2)
    with pytest.raises(RestrictionViolated):
        Extension(f4, IdentityMap(f4), mode="standard", mu=1)
    ring = PolynomialRing(QQ)
    with pytest.raises(RestrictionViolated):
        # delta != 0 under a quotient is out of scope
        Extension(
            ring,
            IdentityMap(ring),
            __import__("gnoe").DerivativeMap(ring),
            "flipped",
            Fraction(1),
        )
    with pytest.raises(ZeroParameter):
        Extension(ring, IdentityMap(ring), None, "flipped", Fraction(0))


def test_quotient_not_configured(f4_frobenius_ext):
    with pytest.raises(QuotientNotConfigured):
        quotient_reduce(f4_frobenius_ext.one_poly(), f4_frobenius_ext)


def test_poly_mul_rejects_quotient_owner(quaternions):
    ring = quaternions.ring
    ext = Extension(ring, quaternions.star, mode="flipped", mu=Fraction(-1))
    p = ext.poly([ring.one, ring.one])
    with pytest.raises(RestrictionViolated):
        poly_mul(p, p)
    # the operator route reduces instead
    assert (p * p).deg <= 1


def test_owner_mismatch_between_extensions(f4_frobenius_ext, ordinary_f2_ext):
    with pytest.raises(OwnerMismatch):
        f4_frobenius_ext.one_poly() + ordinary_f2_ext.one_poly()


def test_zero_polynomial_normalization(f4_frobenius_ext, f4):
    p = f4_frobenius_ext.poly([f4.zero, f4.zero])
    assert p.is_zero()
    assert p.coeffs == ()
    assert p.deg == NEG_INF
