"""Sparse exact polynomials over binary fields.

UniPoly is univariate, TriPoly is trivariate in x, y, z.  Terms are dicts
from exponent (or exponent triple) to a nonzero coefficient bitvector; the
owning Field travels with the polynomial.  Division of trivariate
polynomials is multivariate reduction under graded lex order x > y > z and
is exact-or-fails: a NotDivisible result carries the leading monomial of
the offending remainder.
"""

from __future__ import annotations

import re

from .fields import Field, FieldElem, find_embedding

PERMUTATION_CAP = 1 << 24


def _bits(c) -> int:
    return c.bits if isinstance(c, FieldElem) else c


def _check_same_field(a, b):
    if a.field != b.field:
        raise ValueError(f"field mismatch: {a.field} vs {b.field}")


class UniPoly:
    """Univariate polynomial with coefficients in a binary field."""

    __slots__ = ("field", "terms")

    def __init__(self, field: Field, terms=None):
        self.field = field
        clean = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for e, c in items:
                c = _bits(c)
                if c:
                    clean[e] = clean.get(e, 0) ^ c
                    if not clean[e]:
                        del clean[e]
        self.terms = clean

    @classmethod
    def zero(cls, field):
        return cls(field)

    @classmethod
    def monomial(cls, field, e, c=1):
        return cls(field, {e: _bits(c)})

    @classmethod
    def x(cls, field):
        return cls(field, {1: 1})

    @property
    def degree(self) -> int:
        """Degree, or -1 for the zero polynomial."""
        return max(self.terms) if self.terms else -1

    def coeff(self, e: int) -> int:
        return self.terms.get(e, 0)

    def coeff_elem(self, e: int) -> FieldElem:
        return FieldElem(self.terms.get(e, 0), self.field)

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return (
            isinstance(other, UniPoly)
            and self.field == other.field
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.field, tuple(sorted(self.terms.items()))))

    def __add__(self, other):
        _check_same_field(self, other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) ^ c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return UniPoly(self.field, out)

    __sub__ = __add__

    def __mul__(self, other):
        _check_same_field(self, other)
        mul = self.field.mul
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = e1 + e2
                v = out.get(e, 0) ^ mul(c1, c2)
                if v:
                    out[e] = v
                else:
                    del out[e]
        return UniPoly(self.field, out)

    def scale(self, c) -> "UniPoly":
        c = _bits(c)
        mul = self.field.mul
        return UniPoly(self.field, {e: mul(c, v) for e, v in self.terms.items()})

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result = UniPoly(self.field, {0: 1})
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def compose(self, other: "UniPoly") -> "UniPoly":
        """self(other(x))."""
        _check_same_field(self, other)
        out = UniPoly.zero(self.field)
        cur = UniPoly(self.field, {0: 1})
        cur_e = 0
        for e in sorted(self.terms):
            while cur_e < e:
                cur = cur * other
                cur_e += 1
            out = out + cur.scale(self.terms[e])
        return out

    def eval_bits(self, xb: int) -> int:
        f = self.field
        acc = 0
        for e, c in self.terms.items():
            acc ^= f.mul(c, f.pow_(xb, e))
        return acc

    def __call__(self, a: FieldElem) -> FieldElem:
        if a.field != self.field:
            raise ValueError(f"field mismatch: {self.field} vs {a.field}")
        return FieldElem(self.eval_bits(a.bits), self.field)

    def is_qaffine(self) -> bool:
        """True iff every exponent is 0 or a power of two."""
        return all(e == 0 or (e & (e - 1)) == 0 for e in self.terms)

    def qaffine_part(self) -> "UniPoly":
        return UniPoly(
            self.field,
            {e: c for e, c in self.terms.items() if e == 0 or (e & (e - 1)) == 0},
        )

    def core_part(self) -> "UniPoly":
        """The terms whose exponents are not powers of two (and not constant)."""
        return UniPoly(
            self.field,
            {e: c for e, c in self.terms.items() if e != 0 and (e & (e - 1)) != 0},
        )

    def map_coeffs(self, fn, field: Field) -> "UniPoly":
        return UniPoly(field, {e: fn(c) for e, c in self.terms.items()})

    def __repr__(self):
        return format_unipoly(self)


def is_qaffine(f: UniPoly) -> bool:
    return f.is_qaffine()


def embed_unipoly(f: UniPoly, target: Field) -> UniPoly:
    """Carry f into target through the canonical subfield embedding."""
    if f.field == target:
        return f
    if f.field.n == 1:
        return UniPoly(target, dict(f.terms))
    emb = find_embedding(f.field, target)
    return f.map_coeffs(emb.map_bits, target)


def is_permutation(f: UniPoly, field: Field) -> bool:
    """Exhaustively decide whether x -> f(x) permutes the field."""
    if field.order > PERMUTATION_CAP:
        raise ValueError(f"{field} is above the exhaustive permutation cap 2^24")
    g = embed_unipoly(f, field)
    seen = bytearray(field.order)
    for x in range(field.order):
        v = g.eval_bits(x)
        if seen[v]:
            return False
        seen[v] = 1
    return True


# -- trivariate polynomials -----------------------------------------------------


def _grlex(key):
    i, j, k = key
    return (i + j + k, i, j)


class TriPoly:
    """Trivariate polynomial in x, y, z with coefficients in a binary field."""

    __slots__ = ("field", "terms")

    def __init__(self, field: Field, terms=None):
        self.field = field
        clean = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for m, c in items:
                c = _bits(c)
                if c:
                    clean[m] = clean.get(m, 0) ^ c
                    if not clean[m]:
                        del clean[m]
        self.terms = clean

    @classmethod
    def zero(cls, field):
        return cls(field)

    @classmethod
    def constant(cls, field, c):
        return cls(field, {(0, 0, 0): _bits(c)})

    @classmethod
    def variable(cls, field, name: str):
        m = {"x": (1, 0, 0), "y": (0, 1, 0), "z": (0, 0, 1)}[name]
        return cls(field, {m: 1})

    @property
    def total_degree(self) -> int:
        return max(i + j + k for i, j, k in self.terms) if self.terms else -1

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return (
            isinstance(other, TriPoly)
            and self.field == other.field
            and self.terms == other.terms
        )

    def __add__(self, other):
        _check_same_field(self, other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m, 0) ^ c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return TriPoly(self.field, out)

    __sub__ = __add__

    def __mul__(self, other):
        _check_same_field(self, other)
        mul = self.field.mul
        out = {}
        for (i1, j1, k1), c1 in self.terms.items():
            for (i2, j2, k2), c2 in other.terms.items():
                m = (i1 + i2, j1 + j2, k1 + k2)
                v = out.get(m, 0) ^ mul(c1, c2)
                if v:
                    out[m] = v
                else:
                    del out[m]
        return TriPoly(self.field, out)

    def scale(self, c) -> "TriPoly":
        c = _bits(c)
        mul = self.field.mul
        return TriPoly(self.field, {m: mul(c, v) for m, v in self.terms.items()})

    def _sqr(self) -> "TriPoly":
        sqr = self.field.sqr
        return TriPoly(
            self.field,
            {(2 * i, 2 * j, 2 * k): sqr(c) for (i, j, k), c in self.terms.items()},
        )

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result = TriPoly.constant(self.field, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base._sqr()
        return result

    def leading_monomial(self):
        return max(self.terms, key=_grlex) if self.terms else None

    def homogeneous_part(self, d: int) -> "TriPoly":
        return TriPoly(
            self.field,
            {m: c for m, c in self.terms.items() if m[0] + m[1] + m[2] == d},
        )

    def map_coeffs(self, fn, field: Field) -> "TriPoly":
        return TriPoly(field, {m: fn(c) for m, c in self.terms.items()})

    def __repr__(self):
        return format_tripoly(self)


def embed_tripoly(p: TriPoly, target: Field) -> TriPoly:
    if p.field == target:
        return p
    if p.field.n == 1:
        return TriPoly(target, dict(p.terms))
    emb = find_embedding(p.field, target)
    return p.map_coeffs(emb.map_bits, target)


class NotDivisible:
    """Failed exact division; carries the remainder's leading monomial."""

    __slots__ = ("leading_monomial",)

    def __init__(self, leading_monomial):
        self.leading_monomial = leading_monomial

    def __repr__(self):
        return f"NotDivisible({self.leading_monomial})"

    def __bool__(self):
        return False


def exact_div(num: TriPoly, den: TriPoly):
    """num / den under graded lex reduction; TriPoly on success, else NotDivisible.

    A successful quotient is re-verified by multiplication.
    """
    if not den.terms:
        raise ZeroDivisionError("division by the zero polynomial")
    _check_same_field(num, den)
    field = num.field
    mul = field.mul
    dl = den.leading_monomial()
    dinv = field.inv(den.terms[dl])
    r = dict(num.terms)
    q = {}
    while r:
        rl = max(r, key=_grlex)
        mi, mj, mk = rl[0] - dl[0], rl[1] - dl[1], rl[2] - dl[2]
        if mi < 0 or mj < 0 or mk < 0:
            return NotDivisible(rl)
        c = mul(r[rl], dinv)
        q[(mi, mj, mk)] = c
        for (di, dj, dk), dc in den.terms.items():
            m = (mi + di, mj + dj, mk + dk)
            v = r.get(m, 0) ^ mul(c, dc)
            if v:
                r[m] = v
            else:
                r.pop(m, None)
    quotient = TriPoly(field, q)
    if quotient * den != num:
        raise AssertionError("exact division verification failed")
    return quotient


# -- text grammar ----------------------------------------------------------------
#
# terms joined by "+"; term = [0xHEX "*"] var factors like x^2*y*z; the
# coefficient defaults to 1.  Parsing and printing round-trip bit-exactly.


class PolyParseError(ValueError):
    """Parse failure with the character position of the offending token."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


_FACTOR_RE = re.compile(r"^([xyz])(?:\^(\d+))?$")


def _parse_terms(text: str, field: Field):
    """Yield (coeff_bits, {var: exp}) per '+'-separated term, tracking offsets."""
    pos = 0
    out = []
    for chunk in text.split("+"):
        stripped = chunk.strip()
        offset = pos + chunk.index(stripped) if stripped else pos
        pos += len(chunk) + 1
        if not stripped:
            raise PolyParseError("empty term", offset)
        coeff = 1
        exps: dict[str, int] = {}
        for piece in stripped.split("*"):
            piece = piece.strip()
            if piece == "1":
                continue
            if piece.lower().startswith("0x"):
                try:
                    value = int(piece, 16)
                except ValueError:
                    raise PolyParseError(f"bad coefficient {piece!r}", offset)
                if value >= field.order:
                    raise PolyParseError(
                        f"coefficient {piece} out of range for {field}", offset
                    )
                coeff = field.mul(coeff, value)
                continue
            m = _FACTOR_RE.match(piece)
            if not m:
                raise PolyParseError(f"bad factor {piece!r}", offset)
            var, exp = m.group(1), int(m.group(2) or 1)
            exps[var] = exps.get(var, 0) + exp
        out.append((coeff, exps))
    return out


def parse_unipoly(text: str, field: Field) -> UniPoly:
    terms = []
    for coeff, exps in _parse_terms(text, field):
        bad = [v for v in exps if v != "x"]
        if bad:
            raise PolyParseError(f"variable {bad[0]!r} in a univariate polynomial", 0)
        terms.append((exps.get("x", 0), coeff))
    return UniPoly(field, terms)


def parse_tripoly(text: str, field: Field) -> TriPoly:
    terms = []
    for coeff, exps in _parse_terms(text, field):
        terms.append(((exps.get("x", 0), exps.get("y", 0), exps.get("z", 0)), coeff))
    return TriPoly(field, terms)


def _format_factor(var: str, e: int) -> str:
    return var if e == 1 else f"{var}^{e}"


def format_unipoly(p: UniPoly) -> str:
    if not p.terms:
        return "0x0"
    parts = []
    for e in sorted(p.terms, reverse=True):
        c = p.terms[e]
        factors = [] if e == 0 else [_format_factor("x", e)]
        if c != 1 or not factors:
            factors.insert(0, f"0x{c:x}")
        parts.append("*".join(factors))
    return "+".join(parts)


def format_tripoly(p: TriPoly) -> str:
    if not p.terms:
        return "0x0"
    parts = []
    for m in sorted(p.terms, key=_grlex, reverse=True):
        c = p.terms[m]
        factors = [
            _format_factor(v, e) for v, e in zip("xyz", m) if e
        ]
        if c != 1 or not factors:
            factors.insert(0, f"0x{c:x}")
        parts.append("*".join(factors))
    return "+".join(parts)
