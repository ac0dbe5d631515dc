"""Exact arithmetic in twisted, possibly nonassociative polynomial rings.

The package builds coefficient rings (gnoe.rings), additive twist maps and
the pi composition calculus (gnoe.maps), standard and flipped extensions
with their division algorithms (gnoe.ore, gnoe.euclid), classification
probes and chain experiments (gnoe.verify), Cayley doubling towers
(gnoe.cayley), and a text grammar plus CLI (gnoe.textio, gnoe.cli).
"""

from .errors import (
    AlgebraError,
    BoundTooSmall,
    HypothesisViolated,
    InvalidDescriptor,
    LeadingCoeffNotInIdeal,
    NotAlgebraOverField,
    NotInvertible,
    NotRightRepresentable,
    OrientationFailure,
    OwnerMismatch,
    PreconditionDegree,
    PreimageUnavailable,
    QuotientNotConfigured,
    RestrictionViolated,
    UndecidableAtBound,
    UndefinedForKind,
    UnsupportedRingClass,
    ZeroParameter,
)
from .rings import (
    CayleyRing,
    GaloisField,
    IntegerModRing,
    IntegerRing,
    MatrixRing,
    PolynomialRing,
    QQ,
    RationalField,
    RingElement,
    TriangularRing,
    ZZ,
    associator,
    commutator,
    make_ring,
    ring_arith,
)
from .maps import (
    AdditiveMap,
    ComposeMap,
    ConjugationMap,
    DerivativeMap,
    FrobeniusMap,
    IdentityMap,
    NegateMap,
    PowerMap,
    SampleBudget,
    SubstitutionMap,
    SumMap,
    TableMap,
    ZeroMap,
    apply_map,
    check_map_laws,
    inner_derivation,
    invert_map,
    make_map,
    pi_map,
    pi_words,
    try_invert_map,
    try_preimage,
)
from .ore import (
    Extension,
    OrePoly,
    RightForm,
    deg_lc,
    poly_mul,
    quotient_reduce,
    to_right_form,
)
from .euclid import (
    DivisionCertificate,
    GeneratorSet,
    MembershipWitness,
    NotMember,
    coeff_ideal_membership,
    left_divide_step,
    left_reduce,
    module_generation_check,
    right_divide_step,
    right_reduce,
)
from .cayley import (
    InvolutiveAlgebra,
    cayley_double,
    cayley_norm,
    cayley_tower,
    multiplication_table,
)
from .verify import (
    chain_experiment,
    check_flipped_embedding,
    check_gnoe_bijective,
    classify_extension,
)
from .textio import (
    ExtensionConfig,
    format_poly,
    format_ring_element,
    load_config,
    load_config_text,
    parse_map_expression,
    parse_poly,
    parse_ring_expression,
)

__version__ = "0.1.0"
