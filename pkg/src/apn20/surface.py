"""The surface polynomial of a univariate f and its exact identity suite.

For f over GF(2^n) the quotient

    (f(x) + f(y) + f(z) + f(x+y+z)) / ((x+y)(x+z)(y+z))

is always a polynomial; it vanishes exactly when f is q-affine, and its
divisibility structure drives the degree-20 classification.  This module
builds the quotient, converts symmetric polynomials to the elementary
symmetric basis e1 = x+y+z, e2 = xy+xz+yz, e3 = xyz, and checks a table of
named divisibility and factorization identities by exact arithmetic.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

from .fields import Field, field_make, _find_one_root
from .polys import NotDivisible, TriPoly, UniPoly, embed_tripoly, exact_div, _grlex

# -- field-independent monomial patterns ----------------------------------------
#
# (x+y+z)^e over GF(2) keeps exactly the monomials x^i y^j z^k whose
# exponents add to e without binary carries.  Powers and products of
# e1, e2, e3 likewise have all coefficients 0 or 1, so every pattern is
# cached once as a monomial tuple and instantiated with coefficient 1 in
# whatever field asks.

_S1_PATTERN: dict[int, tuple] = {}
_S_MONOMIAL_PATTERN: dict[tuple, tuple] = {}


def _sym_power_pattern(e: int) -> tuple:
    cached = _S1_PATTERN.get(e)
    if cached is not None:
        return cached
    monos = []
    for i in _submasks(e):
        rest = e ^ i
        for j in _submasks(rest):
            monos.append((i, j, rest ^ j))
    pattern = tuple(monos)
    _S1_PATTERN[e] = pattern
    return pattern


def _submasks(m: int):
    s = m
    while True:
        yield s
        if s == 0:
            return
        s = (s - 1) & m


def _pat_mul(p, q):
    out = {}
    for i1, j1, k1 in p:
        for i2, j2, k2 in q:
            m = (i1 + i2, j1 + j2, k1 + k2)
            if m in out:
                del out[m]
            else:
                out[m] = None
    return tuple(out)


def _pat_pow(p, k):
    result = ((0, 0, 0),)
    while k:
        if k & 1:
            result = _pat_mul(result, p)
        k >>= 1
        if k:
            p = tuple((2 * i, 2 * j, 2 * k_) for i, j, k_ in p)
    return result


def _s_monomial_pattern(exps: tuple) -> tuple:
    """Monomials of e1^a * e2^b * e3^c over GF(2)."""
    cached = _S_MONOMIAL_PATTERN.get(exps)
    if cached is not None:
        return cached
    a, b, c = exps
    pat = _pat_pow(((1, 0, 0), (0, 1, 0), (0, 0, 1)), a)
    if b:
        pat = _pat_mul(pat, _pat_pow(((1, 1, 0), (1, 0, 1), (0, 1, 1)), b))
    if c:
        pat = _pat_mul(pat, ((c, c, c),))
    _S_MONOMIAL_PATTERN[exps] = pat
    return pat


# -- the quotient construction ----------------------------------------------------

_PLANE_CACHE: dict[tuple, TriPoly] = {}
_MONOMIAL_CACHE: dict[tuple, TriPoly] = {}


def plane_product(field: Field) -> TriPoly:
    """(x+y)(x+z)(y+z), the product of the three diagonal planes."""
    key = (field.n, field.modulus)
    cached = _PLANE_CACHE.get(key)
    if cached is None:
        cached = TriPoly(
            field,
            {(2, 1, 0): 1, (2, 0, 1): 1, (1, 2, 0): 1, (0, 2, 1): 1, (1, 0, 2): 1, (0, 1, 2): 1},
        )
        _PLANE_CACHE[key] = cached
    return cached


def surface_numerator(f: UniPoly) -> TriPoly:
    """f(x) + f(y) + f(z) + f(x+y+z) as a trivariate polynomial."""
    out: dict = {}
    for e, c in f.terms.items():
        for m in ((e, 0, 0), (0, e, 0), (0, 0, e)):
            if m in out:
                v = out[m] ^ c
                if v:
                    out[m] = v
                else:
                    del out[m]
            else:
                out[m] = c
        for m in _sym_power_pattern(e):
            if m in out:
                v = out[m] ^ c
                if v:
                    out[m] = v
                else:
                    del out[m]
            else:
                out[m] = c
    return TriPoly(f.field, out)


def surface_poly(f: UniPoly) -> TriPoly:
    """The exact quotient of the four-point sum by the plane product."""
    num = surface_numerator(f)
    if not num:
        return TriPoly.zero(f.field)
    q = exact_div(num, plane_product(f.field))
    if isinstance(q, NotDivisible):
        raise AssertionError("four-point numerator must vanish on the diagonals")
    return q


def surface_monomial(d: int, field: Field) -> TriPoly:
    """The surface polynomial of x^d; memoized per field."""
    if d < 0:
        raise ValueError("negative exponent")
    key = (d, field.n, field.modulus)
    cached = _MONOMIAL_CACHE.get(key)
    if cached is None:
        cached = surface_poly(UniPoly.monomial(field, d))
        _MONOMIAL_CACHE[key] = cached
    return cached


# -- symmetric basis ----------------------------------------------------------------


class NotSymmetric:
    """Conversion failure: the polynomial is not S3-invariant."""

    __slots__ = ("witness",)

    def __init__(self, witness):
        self.witness = witness

    def __repr__(self):
        return f"NotSymmetric({self.witness})"

    def __bool__(self):
        return False


class SymPoly:
    """Polynomial in the elementary symmetric functions e1, e2, e3."""

    __slots__ = ("field", "terms")

    def __init__(self, field: Field, terms=None):
        self.field = field
        clean = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for m, c in items:
                if c:
                    clean[m] = clean.get(m, 0) ^ c
                    if not clean[m]:
                        del clean[m]
        self.terms = clean

    @classmethod
    def monomial(cls, field, a, b, c, coeff=1):
        return cls(field, {(a, b, c): coeff})

    def __eq__(self, other):
        return (
            isinstance(other, SymPoly)
            and self.field == other.field
            and self.terms == other.terms
        )

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other):
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m, 0) ^ c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return SymPoly(self.field, out)

    def __mul__(self, other):
        mul = self.field.mul
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = (m1[0] + m2[0], m1[1] + m2[1], m1[2] + m2[2])
                v = out.get(m, 0) ^ mul(c1, c2)
                if v:
                    out[m] = v
                else:
                    del out[m]
        return SymPoly(self.field, out)

    def scale(self, c):
        mul = self.field.mul
        return SymPoly(self.field, {m: mul(c, v) for m, v in self.terms.items()})

    def expand(self) -> TriPoly:
        """Substitute e1, e2, e3 and return the trivariate expansion."""
        out: dict = {}
        for exps, c in self.terms.items():
            for m in _s_monomial_pattern(exps):
                v = out.get(m, 0) ^ c
                if v:
                    out[m] = v
                else:
                    del out[m]
        return TriPoly(self.field, out)

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms, key=_grlex, reverse=True):
            c = self.terms[m]
            factors = [f"e{i}" + (f"^{e}" if e > 1 else "") for i, e in zip((1, 2, 3), m) if e]
            if c != 1 or not factors:
                factors.insert(0, f"0x{c:x}")
            parts.append("*".join(factors))
        return "+".join(parts)


_POWER_SUM_PATTERNS: list[dict] = []


def power_sum(i: int, field: Field | None = None) -> SymPoly:
    """x^i + y^i + z^i in the symmetric basis, via the Newton-style recurrence."""
    if i < 0:
        raise ValueError("negative power sum index")
    if not _POWER_SUM_PATTERNS:
        _POWER_SUM_PATTERNS.extend(
            [{(0, 0, 0): 1}, {(1, 0, 0): 1}, {(2, 0, 0): 1}]
        )
    while len(_POWER_SUM_PATTERNS) <= i:
        k = len(_POWER_SUM_PATTERNS)
        prev = [_POWER_SUM_PATTERNS[k - 1], _POWER_SUM_PATTERNS[k - 2], _POWER_SUM_PATTERNS[k - 3]]
        shifts = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
        out: dict = {}
        for p, (da, db, dc) in zip(prev, shifts):
            for (a, b, c), v in p.items():
                m = (a + da, b + db, c + dc)
                if m in out:
                    del out[m]
                else:
                    out[m] = 1
        _POWER_SUM_PATTERNS.append(out)
    if field is None:
        field = field_make(1)
    return SymPoly(field, dict(_POWER_SUM_PATTERNS[i]))


def to_symmetric(p: TriPoly):
    """Rewrite an S3-invariant TriPoly in the symmetric basis, else NotSymmetric."""
    r = dict(p.terms)
    out = {}
    while r:
        lm = max(r, key=_grlex)
        a, b, c = lm
        if not (a >= b >= c):
            return NotSymmetric(lm)
        exps = (a - b, b - c, c)
        coeff = r[lm]
        out[exps] = coeff
        for m in _s_monomial_pattern(exps):
            v = r.get(m, 0) ^ coeff
            if v:
                r[m] = v
            else:
                r.pop(m, None)
    return SymPoly(p.field, out)


def sym_expr(field: Field, terms) -> TriPoly:
    """Expand {(a, b, c): coeff} in e1, e2, e3 into a TriPoly."""
    return SymPoly(field, terms).expand()


# -- named identities ----------------------------------------------------------------


@dataclass(frozen=True)
class NamedIdentity:
    """A single decidable statement about trivariate polynomials.

    kind is "eq" (lhs == rhs), "divides" (rhs | lhs) or "not_divides".
    """

    name: str
    kind: str
    lhs: TriPoly
    rhs: TriPoly

    def check(self):
        if self.kind == "eq":
            diff = self.lhs + self.rhs
            if diff:
                return False, format_monomial(diff.leading_monomial())
            return True, None
        q = exact_div(self.lhs, self.rhs)
        if self.kind == "divides":
            if isinstance(q, NotDivisible):
                return False, format_monomial(q.leading_monomial)
            return True, None
        if self.kind == "not_divides":
            if isinstance(q, NotDivisible):
                return True, None
            return False, format_monomial(self.lhs.leading_monomial())
        raise ValueError(f"unknown identity kind {self.kind!r}")


def format_monomial(m) -> str:
    if m is None:
        return "1"
    parts = [v + (f"^{e}" if e > 1 else "") for v, e in zip("xyz", m) if e]
    return "*".join(parts) if parts else "1"


@dataclass(frozen=True)
class IdentityReport:
    name: str
    holds: bool
    witness: str | None
    elapsed: float


def _with_quartic_subfield(field: Field):
    """A field containing both the given one and GF(4), with the lift map."""
    if field.n % 2 == 0:
        return field, lambda p: p
    big = field_make(2 * field.n)
    return big, lambda p: embed_tripoly(p, big)


def _quartic_generator(field: Field) -> int:
    # a root of t^2+t+1, i.e. an element of multiplicative order 3
    return _find_one_root(0b111, field)


def _id_even_degree_split(field, d=20, e=5, j=2):
    if d != e << j or e % 2 == 0:
        raise ValueError(f"need d = e * 2^j with e odd, got d={d}, e={e}, j={j}")
    lhs = surface_monomial(d, field)
    rhs = (surface_monomial(e, field) ** (1 << j)) * (plane_product(field) ** ((1 << j) - 1))
    return [NamedIdentity(f"even-degree-split[d={d}]", "eq", lhs, rhs)]


def _id_quintic_factorization(field):
    big, lift = _with_quartic_subfield(field)
    alpha = _quartic_generator(big)
    x = TriPoly.variable(big, "x")
    y = TriPoly.variable(big, "y")
    z = TriPoly.variable(big, "z")
    a = TriPoly.constant(big, alpha)
    a2 = TriPoly.constant(big, big.sqr(alpha))
    lhs = lift(surface_monomial(5, field))
    rhs = (x + a * y + a2 * z) * (x + a2 * y + a * z)
    return [NamedIdentity("quintic-factorization", "eq", lhs, rhs)]


def _id_plane_coprime_odd(field):
    A = plane_product(field)
    return [
        NamedIdentity(f"plane-coprime-odd[{i}]", "not_divides", surface_monomial(i, field), A)
        for i in range(3, 20, 2)
    ]


def _id_deg9_quintic_plane(field):
    lhs = surface_monomial(9, field) ** 2 + surface_monomial(5, field) ** 6
    rhs = plane_product(field) ** 4
    return [NamedIdentity("deg9-quintic-plane", "eq", lhs, rhs)]


def _id_deg17_combination(field):
    s5 = surface_monomial(5, field)
    lhs = surface_monomial(17, field) + s5 ** 7
    rhs = (plane_product(field) ** 2) * s5 * surface_monomial(9, field)
    return [NamedIdentity("deg17-combination", "eq", lhs, rhs)]


def _id_deg18_split(field):
    lhs = surface_monomial(18, field)
    rhs = plane_product(field) * surface_monomial(9, field) ** 2
    return [NamedIdentity("deg18-split", "eq", lhs, rhs)]


def _id_deg14_split(field):
    lhs = surface_monomial(14, field)
    inner = surface_monomial(5, field) ** 4 + sym_expr(field, {(2, 0, 2): 1})
    rhs = plane_product(field) * inner
    return [NamedIdentity("deg14-split", "eq", lhs, rhs)]


def _id_deg15_plane_coprime(field):
    lhs = surface_monomial(15, field) + surface_monomial(5, field) ** 6
    return [NamedIdentity("deg15-plane-coprime", "not_divides", lhs, plane_product(field))]


def _id_quintic_divisibility(field):
    s5 = surface_monomial(5, field)
    out = [
        NamedIdentity("quintic-divides[17]", "divides", surface_monomial(17, field), s5)
    ]
    for i in (19, 18, 15, 11):
        out.append(
            NamedIdentity(
                f"quintic-coprime[{i}]", "not_divides", surface_monomial(i, field), s5
            )
        )
    return out


def _id_plane_coprime_mixed(field):
    A = plane_product(field)
    first = sym_expr(field, {(2, 0, 2): 1})
    second = sym_expr(field, {(4, 0, 2): 1, (3, 2, 1): 1, (2, 1, 2): 1, (1, 0, 3): 1})
    return [
        NamedIdentity("plane-coprime-mixed[e1^2*e3^2]", "not_divides", first, A),
        NamedIdentity("plane-coprime-mixed[deg10]", "not_divides", second, A),
    ]


BUILTIN_IDENTITIES = {
    "even-degree-split": _id_even_degree_split,
    "quintic-factorization": _id_quintic_factorization,
    "plane-coprime-odd": _id_plane_coprime_odd,
    "deg9-quintic-plane": _id_deg9_quintic_plane,
    "deg17-combination": _id_deg17_combination,
    "deg18-split": _id_deg18_split,
    "deg14-split": _id_deg14_split,
    "deg15-plane-coprime": _id_deg15_plane_coprime,
    "quintic-divisibility": _id_quintic_divisibility,
    "plane-coprime-mixed": _id_plane_coprime_mixed,
}

IDENTITY_NAMES = tuple(BUILTIN_IDENTITIES)


def check_identity(ident, field: Field | None = None, **params) -> IdentityReport:
    """Check one identity: a NamedIdentity, or a built-in referenced by name."""
    start = time.perf_counter()
    if isinstance(ident, NamedIdentity):
        holds, witness = ident.check()
        return IdentityReport(ident.name, holds, witness, time.perf_counter() - start)
    if ident not in BUILTIN_IDENTITIES:
        raise ValueError(f"unknown identity {ident!r}; known: {', '.join(IDENTITY_NAMES)}")
    if field is None:
        raise ValueError("built-in identities need a field")
    for clause in BUILTIN_IDENTITIES[ident](field, **params):
        holds, witness = clause.check()
        if not holds:
            return IdentityReport(
                ident, False, f"{clause.name}: {witness}", time.perf_counter() - start
            )
    return IdentityReport(ident, True, None, time.perf_counter() - start)


def run_identity_suite(field: Field, names=None) -> list[IdentityReport]:
    """Check every requested built-in identity over the field."""
    return [check_identity(name, field) for name in (names or IDENTITY_NAMES)]
