"""Exact arithmetic in GF(2^n) and cubic towers GF(2^n) < GF(2^{3n}).

Field elements are bitvectors packed into ints: bit i holds the coefficient
of t^i in the polynomial basis, so zero and one are always the ints 0 and 1.
Field and TowerField objects are immutable and safe to share between
workers; FieldElem is a small value wrapper used at API boundaries, while
inner loops work on raw ints through the Field methods.
"""

from __future__ import annotations

MAX_FIELD_DEGREE = 24

# log/exp tables are built for fields up to this degree; they must agree
# bit for bit with the generic shift-and-reduce path.
_TABLE_MAX_DEGREE = 16


def _deg(v: int) -> int:
    return v.bit_length() - 1


def _gf2_mod(v, m):
    dm = _deg(m)
    dv = _deg(v)
    while dv >= dm:
        v ^= m << (dv - dm)
        dv = _deg(v)
    return v


def _gf2_mul(a, b):
    r = 0
    while b:
        if b & 1:
            r ^= a
        a <<= 1
        b >>= 1
    return r


def _gf2_sqr(v):
    # squaring over GF(2) spreads the bits out
    r = 0
    i = 0
    while v:
        if v & 1:
            r |= 1 << (2 * i)
        v >>= 1
        i += 1
    return r


def _gf2_gcd(a, b):
    while b:
        a, b = b, _gf2_mod(a, b)
    return a


def _prime_factors(n):
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def _frobenius_power(k, m):
    """t^(2^k) reduced mod m, everything over GF(2)."""
    v = _gf2_mod(0b10, m)
    for _ in range(k):
        v = _gf2_mod(_gf2_sqr(v), m)
    return v


def poly_str(m: int) -> str:
    """Render a GF(2)[t] bitvector like t^4+t+1, for diagnostics."""
    if m == 0:
        return "0"
    parts = []
    for i in range(_deg(m), -1, -1):
        if m >> i & 1:
            parts.append("1" if i == 0 else ("t" if i == 1 else f"t^{i}"))
    return "+".join(parts)


def is_irreducible(m: int) -> bool:
    """Rabin's criterion for a GF(2)[t] bitvector of degree >= 1."""
    n = _deg(m)
    if n < 1:
        return False
    if n == 1:
        return True
    t = _gf2_mod(0b10, m)
    if _frobenius_power(n, m) != t:
        return False
    for p in _prime_factors(n):
        if _gf2_gcd(m, _frobenius_power(n // p, m) ^ t) != 1:
            return False
    return True


def smallest_factor(m: int) -> int:
    """An irreducible factor of m of lowest degree (m reducible, degree >= 1)."""
    if m & 1 == 0:
        return 0b10
    n = _deg(m)
    t = _gf2_mod(0b10, m)
    v = t
    for d in range(1, n // 2 + 1):
        v = _gf2_mod(_gf2_sqr(v), m)
        g = _gf2_gcd(m, v ^ t)
        if g != 1:
            # every factor of g has degree exactly d (smaller d gave gcd 1)
            if _deg(g) == d:
                return g
            for cand in range(1 << d, 1 << (d + 1)):
                if _gf2_mod(g, cand) == 0:
                    return cand
    raise ValueError(f"{poly_str(m)} has no small factor; it is irreducible")


_SMALLEST_IRREDUCIBLE: dict[int, int] = {}


def smallest_irreducible(n: int) -> int:
    """The irreducible degree-n polynomial with smallest integer bit pattern."""
    cached = _SMALLEST_IRREDUCIBLE.get(n)
    if cached is not None:
        return cached
    if n == 1:
        m = 0b10
    else:
        # constant term must be 1 or t divides
        m = next(c for c in range((1 << n) + 1, 1 << (n + 1), 2) if is_irreducible(c))
    _SMALLEST_IRREDUCIBLE[n] = m
    return m


class FieldElem:
    """Element of a Field; operators require both operands in the same field."""

    __slots__ = ("bits", "field")

    def __init__(self, bits: int, field: "Field"):
        if not 0 <= bits < field.order:
            raise ValueError(f"element 0x{bits:x} out of range for {field}")
        self.bits = bits
        self.field = field

    def _same(self, other):
        if not isinstance(other, FieldElem):
            raise TypeError(f"expected FieldElem, got {type(other).__name__}")
        if other.field != self.field:
            raise ValueError(f"field mismatch: {self.field} vs {other.field}")
        return other

    def __add__(self, other):
        return FieldElem(self.bits ^ self._same(other).bits, self.field)

    __sub__ = __add__

    def __mul__(self, other):
        return FieldElem(self.field.mul(self.bits, self._same(other).bits), self.field)

    def __truediv__(self, other):
        return FieldElem(
            self.field.mul(self.bits, self.field.inv(self._same(other).bits)),
            self.field,
        )

    def __pow__(self, e: int):
        return FieldElem(self.field.pow_(self.bits, e), self.field)

    def inv(self):
        return FieldElem(self.field.inv(self.bits), self.field)

    def __eq__(self, other):
        return (
            isinstance(other, FieldElem)
            and self.bits == other.bits
            and self.field == other.field
        )

    def __hash__(self):
        return hash((self.bits, self.field.n, self.field.modulus))

    def __bool__(self):
        return self.bits != 0

    def __repr__(self):
        return f"0x{self.bits:x}"


class Field:
    """GF(2^n) presented as GF(2)[t]/(modulus).

    The modulus must be irreducible of degree exactly n; when omitted the
    irreducible polynomial with smallest bit pattern is used, so field
    labels are reproducible across runs.
    """

    __slots__ = ("n", "modulus", "order", "_exp", "_log")

    def __init__(self, n: int, modulus: int | None = None):
        if not 1 <= n <= MAX_FIELD_DEGREE:
            raise ValueError(f"extension degree {n} out of range 1..{MAX_FIELD_DEGREE}")
        if modulus is None:
            modulus = smallest_irreducible(n)
        else:
            if _deg(modulus) != n:
                raise ValueError(
                    f"modulus {poly_str(modulus)} has degree {_deg(modulus)}, expected {n}"
                )
            if not is_irreducible(modulus):
                f = smallest_factor(modulus)
                raise ValueError(
                    f"modulus {poly_str(modulus)} is reducible: divisible by {poly_str(f)}"
                )
        self.n = n
        self.modulus = modulus
        self.order = 1 << n
        self._exp = None
        self._log = None
        if n <= _TABLE_MAX_DEGREE:
            self._build_tables()

    def __eq__(self, other):
        return (
            isinstance(other, Field)
            and self.n == other.n
            and self.modulus == other.modulus
        )

    def __hash__(self):
        return hash((self.n, self.modulus))

    def __repr__(self):
        return f"GF(2^{self.n})"

    def spec(self) -> str:
        return f"{self.n}:0x{self.modulus:x}"

    # -- int-level arithmetic ------------------------------------------------

    def mul_generic(self, a: int, b: int) -> int:
        return _gf2_mod(_gf2_mul(a, b), self.modulus)

    def _pow_generic(self, a: int, e: int) -> int:
        r = 1
        while e:
            if e & 1:
                r = self.mul_generic(r, a)
            a = self.mul_generic(a, a)
            e >>= 1
        return r

    def _build_tables(self):
        q1 = self.order - 1
        factors = _prime_factors(q1) if q1 > 1 else []
        gen = 1
        for cand in range(2, self.order):
            if all(self._pow_generic(cand, q1 // p) != 1 for p in factors):
                gen = cand
                break
        exp = [1] * (2 * q1 if q1 > 1 else 2)
        log = [0] * self.order
        cur = 1
        for i in range(q1):
            exp[i] = cur
            exp[i + q1] = cur
            log[cur] = i
            cur = self.mul_generic(cur, gen)
        self._exp = exp
        self._log = log

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self._exp is not None:
            return self._exp[self._log[a] + self._log[b]]
        return self.mul_generic(a, b)

    def sqr(self, a: int) -> int:
        return self.mul(a, a)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError(f"inverse of 0 in {self}")
        if self._exp is not None:
            return self._exp[self.order - 1 - self._log[a]]
        return self._pow_generic(a, self.order - 2)

    def pow_(self, a: int, e: int) -> int:
        if a == 0:
            if e == 0:
                return 1
            if e < 0:
                raise ZeroDivisionError(f"0**{e} in {self}")
            return 0
        q1 = self.order - 1
        if self._exp is not None:
            return self._exp[(self._log[a] * e) % q1]
        if e < 0:
            a = self.inv(a)
            e = -e
        return self._pow_generic(a, e % q1)

    # -- element-level helpers -----------------------------------------------

    def elem(self, bits: int) -> FieldElem:
        return FieldElem(bits, self)

    @property
    def zero(self) -> FieldElem:
        return FieldElem(0, self)

    @property
    def one(self) -> FieldElem:
        return FieldElem(1, self)

    def elements(self):
        return (FieldElem(b, self) for b in range(self.order))


def field_make(n: int, modulus: int | None = None) -> Field:
    """Build GF(2^n), defaulting to the smallest irreducible modulus."""
    return Field(n, modulus)


def parse_field_spec(s: str) -> Field:
    """Parse a field spec "n" or "n:0xHEX" (bit i of HEX = coefficient of t^i)."""
    text = s.strip()
    head, sep, tail = text.partition(":")
    try:
        n = int(head)
    except ValueError:
        raise ValueError(f"bad field spec {s!r}: degree {head!r} is not an integer")
    modulus = None
    if sep:
        try:
            modulus = int(tail, 16)
        except ValueError:
            raise ValueError(f"bad field spec {s!r}: modulus {tail!r} is not hex")
    return Field(n, modulus)


def parse_elem(s: str, field: Field) -> FieldElem:
    """Parse an element literal "0xHEX"."""
    try:
        bits = int(s, 16)
    except ValueError:
        raise ValueError(f"bad element literal {s!r}")
    return field.elem(bits)


# -- embeddings ----------------------------------------------------------------
#
# Subfield embeddings GF(2^m) -> GF(2^n) (m | n) send t to a root of the
# base modulus in the big field.  Any root gives a field homomorphism; the
# root with the smallest bit pattern is chosen so embeddings are
# deterministic.  Roots are found by trace splitting, which only needs
# small dense polynomials over the big field.


def _pnorm(p):
    while p and p[-1] == 0:
        p.pop()
    return p


def _padd(p, q):
    if len(p) < len(q):
        p, q = q, p
    out = list(p)
    for i, c in enumerate(q):
        out[i] ^= c
    return _pnorm(out)


def _pmonic(p, K):
    inv = K.inv(p[-1])
    if inv == 1:
        return list(p)
    return _pnorm([K.mul(inv, c) for c in p])


def _pmod(p, m, K):
    # m monic
    r = list(p)
    dm = len(m) - 1
    while len(r) - 1 >= dm and r:
        c = r[-1]
        shift = len(r) - 1 - dm
        for i, mc in enumerate(m):
            if mc:
                r[i + shift] ^= K.mul(c, mc)
        _pnorm(r)
    return r


def _pgcd(a, b, K):
    a, b = list(a), list(b)
    while b:
        b = _pmonic(b, K)
        a, b = b, _pmod(a, b, K)
    return a


def _psqr(p, K):
    out = [0] * (2 * len(p))
    for i, c in enumerate(p):
        if c:
            out[2 * i] = K.sqr(c)
    return _pnorm(out)


def _split_deltas(K: Field):
    # single bits first: any two distinct roots are separated by some basis
    # functional, so a proper split arrives within K.n probes
    for i in range(K.n):
        yield 1 << i
    for v in range(1, K.order):
        if v & (v - 1):
            yield v


def _find_one_root(mbits: int, K: Field) -> int:
    """One root in K of an irreducible GF(2)[t] polynomial whose degree divides K.n."""
    h = [(mbits >> i) & 1 for i in range(mbits.bit_length())]
    while len(h) - 1 > 1:
        for delta in _split_deltas(K):
            # T(X) = sum of (delta*X)^(2^i) mod h; T(r) is a GF(2) trace value,
            # so gcd(h, T) and gcd(h, T+1) split the roots by trace.
            s = _pmod([0, delta], h, K)
            acc = list(s)
            for _ in range(K.n - 1):
                s = _pmod(_psqr(s, K), h, K)
                acc = _padd(acc, s)
            for probe in (acc, _padd(list(acc), [1])):
                if not probe:
                    continue
                g = _pgcd(h, probe, K)
                if 0 < len(g) - 1 < len(h) - 1:
                    h = _pmonic(g, K)
                    break
            else:
                continue
            break
        else:
            raise RuntimeError(f"root splitting failed for {poly_str(mbits)} in {K}")
    return K.mul(h[0], K.inv(h[1]))


class Embedding:
    """Field homomorphism GF(2^m) -> GF(2^n) determined by the image of t."""

    __slots__ = ("base", "ext", "beta", "_pows", "_inverse")

    def __init__(self, base: Field, ext: Field, beta: int):
        self.base = base
        self.ext = ext
        self.beta = beta
        pows = [1] * base.n
        for i in range(1, base.n):
            pows[i] = ext.mul(pows[i - 1], beta)
        self._pows = pows
        self._inverse = None

    def map_bits(self, bits: int) -> int:
        out = 0
        i = 0
        while bits:
            if bits & 1:
                out ^= self._pows[i]
            bits >>= 1
            i += 1
        return out

    def __call__(self, a) -> FieldElem:
        bits = a.bits if isinstance(a, FieldElem) else a
        return FieldElem(self.map_bits(bits), self.ext)

    def inverse_bits(self, bits: int) -> int:
        if self._inverse is None:
            self._inverse = {self.map_bits(b): b for b in range(self.base.order)}
        try:
            return self._inverse[bits]
        except KeyError:
            raise ValueError(
                f"0x{bits:x} is not in the embedded image of {self.base} in {self.ext}"
            )


_EMBED_CACHE: dict[tuple, Embedding] = {}


def find_embedding(base: Field, ext: Field) -> Embedding:
    """The deterministic embedding of base into ext (base.n must divide ext.n)."""
    if ext.n % base.n != 0:
        raise ValueError(f"no embedding: {base} does not embed in {ext}")
    key = (base.n, base.modulus, ext.n, ext.modulus)
    cached = _EMBED_CACHE.get(key)
    if cached is not None:
        return cached
    if base == ext:
        beta = _gf2_mod(0b10, base.modulus)
    else:
        r = _find_one_root(base.modulus, ext)
        best = r
        for _ in range(base.n - 1):
            r = ext.sqr(r)
            if r < best:
                best = r
        beta = best
    emb = Embedding(base, ext, beta)
    _EMBED_CACHE[key] = emb
    return emb


class TowerField:
    """GF(2^n) inside GF(2^{3n}) with the q-power Frobenius as generator.

    frobenius() generates the degree-3 Galois group; trace and norm are the
    usual orbit sum and product and always land in the embedded base field.
    """

    __slots__ = ("base", "ext", "embedding")

    def __init__(self, base: Field, ext: Field | None = None):
        if ext is None:
            ext = Field(3 * base.n)
        if ext.n != 3 * base.n:
            raise ValueError(
                f"tower needs extension degree {3 * base.n}, got {ext.n}"
            )
        self.base = base
        self.ext = ext
        self.embedding = find_embedding(base, ext)

    def __repr__(self):
        return f"Tower({self.base!r} < {self.ext!r})"

    def __eq__(self, other):
        return (
            isinstance(other, TowerField)
            and self.base == other.base
            and self.ext == other.ext
        )

    def __hash__(self):
        return hash((self.base, self.ext))

    # -- int-level paths -------------------------------------------------------

    def embed_bits(self, bits: int) -> int:
        return self.embedding.map_bits(bits)

    def frob_bits(self, b: int) -> int:
        for _ in range(self.base.n):
            b = self.ext.sqr(b)
        return b

    def trace_bits(self, b: int) -> int:
        f = self.frob_bits(b)
        return b ^ f ^ self.frob_bits(f)

    def norm_bits(self, b: int) -> int:
        f = self.frob_bits(b)
        return self.ext.mul(b, self.ext.mul(f, self.frob_bits(f)))

    def is_base_bits(self, b: int) -> bool:
        return self.frob_bits(b) == b

    def to_base_bits(self, b: int) -> int:
        return self.embedding.inverse_bits(b)

    def _orbit(self, b: int):
        f = self.frob_bits(b)
        return (b, f, self.frob_bits(f))

    def q1_bits(self, c: int) -> int:
        mul = self.ext.mul
        c0, c1, c2 = self._orbit(c)
        return mul(c0, c1) ^ mul(c0, c2) ^ mul(c1, c2)

    def q4_bits(self, a: int, b: int) -> int:
        mul = self.ext.mul
        a0, a1, a2 = self._orbit(a)
        b0, b1, b2 = self._orbit(b)
        return mul(a0, mul(a1, b2)) ^ mul(a0, mul(b1, a2)) ^ mul(b0, mul(a1, a2))

    def q5_bits(self, a: int, b: int) -> int:
        mul = self.ext.mul
        a0, a1, a2 = self._orbit(a)
        b0, b1, b2 = self._orbit(b)
        return (
            mul(a0, b1 ^ b2)
            ^ mul(b0, a1 ^ a2)
            ^ mul(a1, b2)
            ^ mul(b1, a2)
        )

    def q6_bits(self, c: int, b: int, d: int) -> int:
        # The full six-term conjugate orbit: one product per assignment of
        # the three Frobenius powers to the three arguments.  This is the
        # unique symmetric, Galois-stable trilinear form of this shape;
        # variants that drop or repeat one of the six products are not
        # fixed by the Frobenius.
        mul = self.ext.mul
        co = self._orbit(c)
        bo = self._orbit(b)
        do = self._orbit(d)
        out = 0
        for i, j, k in ((0, 1, 2), (0, 2, 1), (1, 0, 2), (1, 2, 0), (2, 0, 1), (2, 1, 0)):
            out ^= mul(co[i], mul(bo[j], do[k]))
        return out

    # -- element-level API -------------------------------------------------------

    def _ext_elem(self, a) -> int:
        if isinstance(a, FieldElem):
            if a.field != self.ext:
                raise ValueError(f"element of {a.field} is not in {self.ext}")
            return a.bits
        return FieldElem(a, self.ext).bits

    def embed(self, a) -> FieldElem:
        bits = a.bits if isinstance(a, FieldElem) else a
        return FieldElem(self.embed_bits(bits), self.ext)

    def frobenius(self, a) -> FieldElem:
        return FieldElem(self.frob_bits(self._ext_elem(a)), self.ext)

    def trace_norm(self, a) -> tuple[FieldElem, FieldElem]:
        b = self._ext_elem(a)
        return FieldElem(self.trace_bits(b), self.ext), FieldElem(self.norm_bits(b), self.ext)

    def q1(self, c) -> FieldElem:
        return FieldElem(self.q1_bits(self._ext_elem(c)), self.ext)

    def q4(self, a, b) -> FieldElem:
        return FieldElem(self.q4_bits(self._ext_elem(a), self._ext_elem(b)), self.ext)

    def q5(self, a, b) -> FieldElem:
        return FieldElem(self.q5_bits(self._ext_elem(a), self._ext_elem(b)), self.ext)

    def q6(self, c, b, d) -> FieldElem:
        return FieldElem(
            self.q6_bits(self._ext_elem(c), self._ext_elem(b), self._ext_elem(d)),
            self.ext,
        )


def q_form(kind: str, args, tower: TowerField) -> FieldElem:
    """Dispatch the conjugate symmetric forms q1, q4, q5, q6 by name."""
    arity = {"q1": 1, "q4": 2, "q5": 2, "q6": 3}
    if kind not in arity:
        raise ValueError(f"unknown form {kind!r}")
    if len(args) != arity[kind]:
        raise ValueError(f"{kind} takes {arity[kind]} argument(s), got {len(args)}")
    return getattr(tower, kind)(*args)
