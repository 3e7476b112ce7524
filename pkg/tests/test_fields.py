import pytest

from apn20.fields import (
    Field,
    FieldElem,
    TowerField,
    field_make,
    find_embedding,
    is_irreducible,
    parse_elem,
    parse_field_spec,
    q_form,
    smallest_irreducible,
)


def brute_force_irreducible(m: int) -> bool:
    """Oracle: trial divide by every smaller-degree polynomial."""
    n = m.bit_length() - 1
    if n < 1:
        return False
    for d in range(1, n):
        for cand in range(1 << d, 1 << (d + 1)):
            r = m
            while r.bit_length() - 1 >= d:
                r ^= cand << (r.bit_length() - 1 - d)
            if r == 0:
                return False
    return True


def test_default_moduli():
    assert field_make(2).modulus == 0b111
    assert field_make(3).modulus == 0b1011


def test_smallest_irreducible_matches_brute_force():
    for n in range(1, 11):
        m = smallest_irreducible(n)
        assert brute_force_irreducible(m)
        # nothing smaller of the same degree is irreducible
        for c in range(1 << n, m):
            assert not brute_force_irreducible(c)


def test_rabin_matches_brute_force_exhaustively():
    for m in range(2, 1 << 9):
        if m.bit_length() - 1 >= 1:
            assert is_irreducible(m) == brute_force_irreducible(m), bin(m)


def test_explicit_modulus_accepted():
    f = field_make(4, 0b11001)  # t^4 + t^3 + 1
    assert f.modulus == 0b11001


def test_reducible_modulus_rejected_with_factor():
    with pytest.raises(ValueError, match="divisible by"):
        field_make(4, 0b10001)  # t^4+1 = (t+1)^4
    with pytest.raises(ValueError, match="degree"):
        field_make(4, 0b1011)


def test_gf4_multiplication():
    F = field_make(2)
    assert F.mul(0b10, 0b10) == 0b11  # t*t = t+1


def test_char2_addition():
    F = field_make(5)
    for a in range(F.order):
        assert a ^ a == 0
        assert (F.elem(a) + F.elem(a)).bits == 0


def test_gf8_inverse():
    F = field_make(3)
    g = 0b10
    assert F.inv(g) == 0b101
    assert F.mul(g, 0b101) == 1
    for a in range(1, F.order):
        assert F.mul(a, F.inv(a)) == 1


def test_inverse_of_zero_rejected():
    F = field_make(3)
    with pytest.raises(ZeroDivisionError):
        F.inv(0)


def test_field_mismatch_detected():
    a = field_make(3).elem(1)
    b = field_make(4).elem(1)
    with pytest.raises(ValueError, match="mismatch"):
        a + b
    with pytest.raises(ValueError, match="mismatch"):
        a * b


def test_pow_matches_repeated_multiplication():
    F = field_make(4)
    for a in range(F.order):
        acc = 1
        for e in range(10):
            assert F.pow_(a, e) == acc
            acc = F.mul(acc, a)


def test_table_path_matches_generic_path():
    F = field_make(6)
    assert F._exp is not None
    for a in range(F.order):
        for b in range(F.order):
            assert F.mul(a, b) == F.mul_generic(a, b)


def test_generic_only_field_agrees_with_table_field():
    # degree above the table threshold forces the generic path
    small = field_make(8)
    big = Field(17)
    assert big._exp is None
    assert small._exp is not None


def test_elem_operators():
    F = field_make(3)
    g = F.elem(0b10)
    assert (g * g.inv()).bits == 1
    assert (g / g).bits == 1
    assert (g ** 7).bits == 1
    assert (g ** -1) == g.inv()
    assert g ** 0 == F.one


def test_field_spec_roundtrip():
    f = parse_field_spec("4:0x13")
    assert f.n == 4 and f.modulus == 0x13
    assert parse_field_spec(f.spec()) == f
    assert parse_field_spec("3").modulus == 0b1011
    with pytest.raises(ValueError):
        parse_field_spec("x")
    with pytest.raises(ValueError):
        parse_field_spec("4:zz")
    e = parse_elem("0x5", f)
    assert e.bits == 5


# -- towers ----------------------------------------------------------------------


@pytest.fixture(scope="module")
def tower_1_3():
    return TowerField(field_make(1))


@pytest.fixture(scope="module")
def tower_2_6():
    return TowerField(field_make(2))


@pytest.fixture(scope="module")
def tower_3_9():
    return TowerField(field_make(3))


def test_frobenius_generates_order_three(tower_2_6):
    tw = tower_2_6
    for b in range(tw.ext.order):
        assert tw.frob_bits(tw.frob_bits(tw.frob_bits(b))) == b


def test_frobenius_is_field_automorphism(tower_2_6):
    tw = tower_2_6
    import random

    rng = random.Random(7)
    for _ in range(200):
        a = rng.randrange(tw.ext.order)
        b = rng.randrange(tw.ext.order)
        assert tw.frob_bits(a ^ b) == tw.frob_bits(a) ^ tw.frob_bits(b)
        assert tw.frob_bits(tw.ext.mul(a, b)) == tw.ext.mul(
            tw.frob_bits(a), tw.frob_bits(b)
        )


def test_base_is_fixed_field(tower_2_6):
    tw = tower_2_6
    image = {tw.embed_bits(b) for b in range(tw.base.order)}
    fixed = {b for b in range(tw.ext.order) if tw.frob_bits(b) == b}
    assert image == fixed


def test_embedding_is_homomorphism(tower_3_9):
    tw = tower_3_9
    for a in range(tw.base.order):
        for b in range(tw.base.order):
            assert tw.embed_bits(tw.base.mul(a, b)) == tw.ext.mul(
                tw.embed_bits(a), tw.embed_bits(b)
            )
            assert tw.embed_bits(a ^ b) == tw.embed_bits(a) ^ tw.embed_bits(b)
    assert tw.embed_bits(1) == 1


def test_gf8_frobenius_example(tower_1_3):
    tw = tower_1_3
    assert tw.frob_bits(0b10) == tw.ext.sqr(0b10)


def test_trace_norm_values(tower_1_3):
    tw = tower_1_3
    tr, nm = tw.trace_norm(tw.ext.elem(0b10))
    assert (tr.bits, nm.bits) == (0, 1)
    tr1, nm1 = tw.trace_norm(tw.ext.elem(1))
    assert (tr1.bits, nm1.bits) == (1, 1)
    tr0, nm0 = tw.trace_norm(tw.ext.elem(0))
    assert (tr0.bits, nm0.bits) == (0, 0)


def test_trace_additive_norm_multiplicative(tower_1_3, tower_2_6):
    for tw in (tower_1_3, tower_2_6):
        q = tw.ext.order
        for a in range(q):
            for b in range(q):
                assert tw.trace_bits(a ^ b) == tw.trace_bits(a) ^ tw.trace_bits(b)
                assert tw.norm_bits(tw.ext.mul(a, b)) == tw.ext.mul(
                    tw.norm_bits(a), tw.norm_bits(b)
                )


def test_orbit_forms_are_galois_stable(tower_1_3, tower_2_6, tower_3_9):
    # single-argument forms exhaustively over every tower up to 2^15,
    # multi-argument forms on seeded samples
    import random

    rng = random.Random(11)
    towers = (tower_1_3, tower_2_6, tower_3_9, TowerField(field_make(4)), TowerField(field_make(5)))
    for tw in towers:
        for a in range(tw.ext.order):
            assert tw.frob_bits(tw.trace_bits(a)) == tw.trace_bits(a)
            assert tw.frob_bits(tw.norm_bits(a)) == tw.norm_bits(a)
            assert tw.frob_bits(tw.q1_bits(a)) == tw.q1_bits(a)
        for _ in range(40):
            a = rng.randrange(tw.ext.order)
            b = rng.randrange(tw.ext.order)
            c = rng.randrange(tw.ext.order)
            for v in (tw.q4_bits(a, b), tw.q5_bits(a, b), tw.q6_bits(a, b, c)):
                assert tw.frob_bits(v) == v


def test_frobenius_order_three_exhaustive_up_to_2_15():
    for n in (3, 4, 5):
        tw = TowerField(field_make(n))
        for b in range(tw.ext.order):
            f = tw.frob_bits(b)
            assert tw.frob_bits(tw.frob_bits(f)) == b


def test_q_form_special_values(tower_2_6):
    tw = tower_2_6
    ext = tw.ext
    import random

    rng = random.Random(3)
    assert tw.q1_bits(0) == 0
    for _ in range(50):
        a = rng.randrange(ext.order)
        assert tw.q4_bits(a, 0) == 0
        assert tw.q4_bits(a, a) == tw.norm_bits(a)
        assert tw.q5_bits(a, a) == 0


def test_q6_symmetric_in_arguments(tower_1_3):
    tw = tower_1_3
    import itertools

    for a, b, c in itertools.product(range(8), repeat=3):
        vals = {tw.q6_bits(*perm) for perm in itertools.permutations((a, b, c))}
        assert len(vals) == 1


def test_q_form_dispatch(tower_1_3):
    tw = tower_1_3
    g = tw.ext.elem(0b10)
    assert q_form("q1", [g], tw) == tw.q1(g)
    assert q_form("q4", [g, g], tw) == tw.q4(g, g)
    with pytest.raises(ValueError, match="argument"):
        q_form("q4", [g], tw)
    with pytest.raises(ValueError, match="unknown"):
        q_form("q9", [g], tw)


def test_quartic_product_coefficients(tower_1_3, tower_2_6):
    # x (x+c)(x+c^q)(x+c^{q^2}) = x^4 + tr(c) x^3 + q1(c) x^2 + N(c) x
    for tw in (tower_1_3, tower_2_6):
        ext = tw.ext
        for c in range(ext.order):
            c1 = tw.frob_bits(c)
            c2 = tw.frob_bits(c1)
            # elementary symmetric functions of the three conjugates
            e1 = c ^ c1 ^ c2
            e2 = ext.mul(c, c1) ^ ext.mul(c, c2) ^ ext.mul(c1, c2)
            e3 = ext.mul(c, ext.mul(c1, c2))
            assert e1 == tw.trace_bits(c)
            assert e2 == tw.q1_bits(c)
            assert e3 == tw.norm_bits(c)
            if tw.trace_bits(c) == 0:
                assert tw.is_base_bits(e2) and tw.is_base_bits(e3)


def test_to_base_rejects_non_fixed(tower_1_3):
    tw = tower_1_3
    moving = next(b for b in range(tw.ext.order) if tw.frob_bits(b) != b)
    with pytest.raises(ValueError, match="image"):
        tw.to_base_bits(moving)


def test_general_embedding_tower():
    base = field_make(4)
    ext = field_make(12)
    emb = find_embedding(base, ext)
    for a in (0, 1, 5, 9, 15):
        for b in (0, 1, 7, 11):
            assert emb.map_bits(base.mul(a, b)) == ext.mul(
                emb.map_bits(a), emb.map_bits(b)
            )
    with pytest.raises(ValueError, match="embed"):
        find_embedding(field_make(3), field_make(4))
