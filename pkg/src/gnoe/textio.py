"""Text grammar for polynomials, ring/map expressions, and config files.

Polynomial grammar (whitespace-insensitive, X is the reserved extension
variable, Y is reserved for polynomial coefficients):

    poly := ["-"] term {("+" | "-") term}
    term := coeff ["X" ["^" nat]] | "X" ["^" nat]
    coeff := atomic literal (integer or fraction), or a ring literal in
             parentheses when compound ("(Y^2+1)", "(t+1)"), or a
             self-delimited literal ("[[1,0],[0,1]]", "(1,0|0,1)")

Formatting is deterministic: ascending powers, terms joined with " + " /
" - ", unit coefficients elided except at degree 0, and parse(format(p))
reproduces p exactly.
"""

from __future__ import annotations

import configparser
import re
from dataclasses import dataclass, field

from .errors import (
    CoefficientParseError,
    ConfigError,
    PolySyntaxError,
)
from .maps import (
    ComposeMap,
    ConjugationMap,
    DerivativeMap,
    FrobeniusMap,
    IdentityMap,
    NegateMap,
    PowerMap,
    SubstitutionMap,
    SumMap,
    ZeroMap,
)
from .ore import Extension, OrePoly
from .rings import (
    CayleyRing,
    GaloisField,
    IntegerModRing,
    IntegerRing,
    MatrixRing,
    PolynomialRing,
    RationalField,
    TriangularRing,
    literal_is_atomic,
)

_ATOMIC_RE = re.compile(r"\d+(/\d+)?")


# ---------------------------------------------------------------------------
# Polynomial formatting
# ---------------------------------------------------------------------------


def _term_literal(ring, coeff):
    lit = ring.format_payload(coeff.payload)
    if literal_is_atomic(lit):
        return lit
    return f"({lit})"


def format_poly(p):
    """Deterministic ascending-power left form."""
    if p.is_zero():
        return "0"
    ring = p.ext.ring
    one = ring.one
    minus_one = -one
    terms = []
    for i, c in enumerate(p.coeffs):
        if not c:
            continue
        body = "" if i == 0 else ("X" if i == 1 else f"X^{i}")
        if body and c == one:
            terms.append(body)
        elif body and c == minus_one and minus_one != one:
            terms.append("-" + body)
        elif body:
            terms.append(_term_literal(ring, c) + body)
        else:
            terms.append(_term_literal(ring, c))
    out = terms[0]
    for t in terms[1:]:
        if t.startswith("-"):
            out += " - " + t[1:]
        else:
            out += " + " + t
    return out


def format_ring_element(elem):
    return elem.ring.format_payload(elem.payload)


# ---------------------------------------------------------------------------
# Polynomial parsing
# ---------------------------------------------------------------------------


def _scan_balanced(s, pos, opener, closer):
    depth = 0
    for j in range(pos, len(s)):
        if s[j] == opener:
            depth += 1
        elif s[j] == closer:
            depth -= 1
            if depth == 0:
                return j
    raise PolySyntaxError("unbalanced delimiter", position=pos, expected=closer)


def parse_poly(text, ext):
    """Parse the polynomial grammar for the extension's coefficient ring.

    Repeated powers merge additively; the result is canonical.
    """
    ring = ext.ring
    s = text
    n = len(s)
    pos = 0
    acc = {}

    def skip_ws(p):
        while p < n and s[p].isspace():
            p += 1
        return p

    pos = skip_ws(pos)
    if pos == n:
        raise PolySyntaxError("empty polynomial", position=0, expected="a term")
    first = True
    while pos < n:
        sign = 1
        pos = skip_ws(pos)
        if pos < n and s[pos] in "+-":
            sign = -1 if s[pos] == "-" else 1
            pos += 1
        elif not first:
            raise PolySyntaxError(
                "expected term separator", position=pos, expected="'+' or '-'"
            )
        first = False
        pos = skip_ws(pos)
        if pos >= n:
            raise PolySyntaxError("dangling sign", position=pos, expected="a term")

        coeff = None
        if s[pos] == "(":
            j = _scan_balanced(s, pos, "(", ")")
            raw = s[pos : j + 1] if isinstance(ring, CayleyRing) and ring.level else s[pos + 1 : j]
            try:
                coeff = ring.element(ring.parse_payload(raw))
            except CoefficientParseError as exc:
                raise CoefficientParseError(f"{exc} (at position {pos})") from exc
            pos = j + 1
        elif s[pos] == "[":
            j = _scan_balanced(s, pos, "[", "]")
            try:
                coeff = ring.element(ring.parse_payload(s[pos : j + 1]))
            except CoefficientParseError as exc:
                raise CoefficientParseError(f"{exc} (at position {pos})") from exc
            pos = j + 1
        else:
            m = _ATOMIC_RE.match(s, pos)
            if m:
                try:
                    coeff = ring.element(ring.parse_payload(m.group(0)))
                except CoefficientParseError as exc:
                    raise CoefficientParseError(f"{exc} (at position {pos})") from exc
                pos = m.end()

        exp = 0
        pos = skip_ws(pos)
        if pos < n and s[pos] == "X":
            pos = skip_ws(pos + 1)
            exp = 1
            if pos < n and s[pos] == "^":
                start = skip_ws(pos + 1)
                m = re.compile(r"\d+").match(s, start)
                if not m:
                    raise PolySyntaxError(
                        "missing exponent", position=pos, expected="a natural number"
                    )
                exp = int(m.group(0))
                pos = m.end()
        elif coeff is None:
            raise PolySyntaxError(
                f"unexpected character {s[pos]!r}",
                position=pos,
                expected="a coefficient or X",
            )
        if coeff is None:
            coeff = ring.one
        if sign < 0:
            coeff = -coeff
        acc[exp] = acc.get(exp, ring.zero) + coeff
        pos = skip_ws(pos)
    degree = max(acc) if acc else -1
    return ext.poly([acc.get(i, ring.zero) for i in range(degree + 1)])


# ---------------------------------------------------------------------------
# Ring and map expressions
# ---------------------------------------------------------------------------


def _split_args(text):
    parts = []
    depth = 0
    current = []
    for ch in text:
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(current).strip())
            current = []
        else:
            current.append(ch)
    tail = "".join(current).strip()
    if tail or parts:
        parts.append(tail)
    return parts


def _head_args(text, what):
    s = text.strip()
    m = re.match(r"([A-Za-z_][A-Za-z_0-9]*)\s*(\((.*)\))?\Z", s, re.S)
    if not m:
        raise ConfigError(f"malformed {what} expression: {text!r}")
    head = m.group(1)
    args = m.group(3)
    return head, args


def parse_ring_expression(text):
    """Integers | Rationals | IntegersMod(n) | FiniteField(p,k) |
    PolyOverField(ring) | Matrix2(ring) | MixedTriangular2(ZQ|QZ) |
    CayleyLevel(field; mu, ...).  Z, Q and GF(p,k) are accepted aliases."""
    head, args = _head_args(text, "ring")
    if head in ("Integers", "Z"):
        return IntegerRing()
    if head in ("Rationals", "Q"):
        return RationalField()
    if head == "IntegersMod":
        return IntegerModRing(int(_one_arg(args, head)))
    if head in ("FiniteField", "GF"):
        parts = _split_args(args or "")
        if len(parts) != 2:
            raise ConfigError(f"{head} needs (p, k)")
        return GaloisField(int(parts[0]), int(parts[1]))
    if head == "PolyOverField":
        return PolynomialRing(parse_ring_expression(_one_arg(args, head)))
    if head == "Matrix2":
        return MatrixRing(parse_ring_expression(_one_arg(args, head)))
    if head == "MixedTriangular2":
        return TriangularRing(_one_arg(args, head))
    if head == "CayleyLevel":
        if args is None or ";" not in args:
            raise ConfigError("CayleyLevel needs (field; mu1, mu2, ...)")
        field_text, mu_text = args.split(";", 1)
        fld = parse_ring_expression(field_text)
        mus = [fld.parse_payload(m.strip()) for m in mu_text.split(",") if m.strip()]
        return CayleyRing(fld, mus)
    raise ConfigError(f"unknown ring kind {head!r}")


def _one_arg(args, head):
    if args is None or not args.strip():
        raise ConfigError(f"{head} needs an argument")
    return args.strip()


def parse_map_expression(text, ring):
    """Identity | Zero | FrobeniusPower(e) | Substitution(k) |
    FormalDerivative | Conjugation | Negate(m) | Sum(m, ...) |
    Compose(m, ...) | IteratedPower(m, n)."""
    head, args = _head_args(text, "map")
    if head == "Identity":
        return IdentityMap(ring)
    if head == "Zero":
        return ZeroMap(ring)
    if head == "FrobeniusPower":
        return FrobeniusMap(ring, int(_one_arg(args, head)))
    if head == "Substitution":
        return SubstitutionMap(ring, int(_one_arg(args, head)))
    if head == "FormalDerivative":
        return DerivativeMap(ring)
    if head == "Conjugation":
        return ConjugationMap(ring)
    if head == "Negate":
        return NegateMap(parse_map_expression(_one_arg(args, head), ring))
    if head in ("Sum", "Compose"):
        parts = [
            parse_map_expression(t, ring) for t in _split_args(args or "") if t
        ]
        if not parts:
            raise ConfigError(f"{head} needs at least one map")
        return SumMap(parts) if head == "Sum" else ComposeMap(parts)
    if head == "IteratedPower":
        parts = _split_args(args or "")
        if len(parts) != 2:
            raise ConfigError("IteratedPower needs (map, n)")
        return PowerMap(parse_map_expression(parts[0], ring), int(parts[1]))
    raise ConfigError(f"unknown map kind {head!r}")


# ---------------------------------------------------------------------------
# Extension configuration files
# ---------------------------------------------------------------------------


@dataclass
class ExtensionConfig:
    extension: Extension
    experiment: dict = field(default_factory=dict)

    @property
    def seed(self):
        return int(self.experiment.get("seed", 0))

    @property
    def bound(self):
        return int(self.experiment.get("degree_bound", 3))

    @property
    def samples(self):
        return int(self.experiment.get("samples", 60))


def load_config_text(text):
    """Parse and validate a configuration document.

    All descriptor invariants (including sigma(1) = 1 and delta(1) = 0) are
    checked here, before any computation runs.
    """
    cp = configparser.ConfigParser()
    try:
        cp.read_string(text)
    except configparser.Error as exc:
        raise ConfigError(f"malformed config: {exc}") from exc
    if "ring" not in cp or "kind" not in cp["ring"]:
        raise ConfigError("config needs a [ring] section with a kind")
    ring = parse_ring_expression(cp["ring"]["kind"])
    if "sigma" not in cp or "kind" not in cp["sigma"]:
        raise ConfigError("config needs a [sigma] section with a kind")
    sigma = parse_map_expression(cp["sigma"]["kind"], ring)
    if "delta" in cp and "kind" in cp["delta"]:
        delta = parse_map_expression(cp["delta"]["kind"], ring)
    else:
        delta = ZeroMap(ring)
    mode = "standard"
    if "mode" in cp and "value" in cp["mode"]:
        mode = cp["mode"]["value"].strip()
    mu = None
    if "quotient" in cp and "mu" in cp["quotient"]:
        fld = ring.scalar_field
        if fld is None:
            raise ConfigError("quotient mu needs an algebra over a field")
        mu = fld.element(fld.parse_payload(cp["quotient"]["mu"].strip()))
    ext = Extension(ring, sigma, delta, mode, mu)
    experiment = dict(cp["experiment"]) if "experiment" in cp else {}
    return ExtensionConfig(ext, experiment)


def load_config(path):
    with open(path, "r", encoding="utf-8") as fh:
        return load_config_text(fh.read())
