import random

import pytest

from apn20.apn import (
    CapExceeded,
    apn_scan,
    diff_count,
    differential_uniformity,
    invariance_check,
    value_table,
)
from apn20.fields import field_make
from apn20.polys import UniPoly, parse_unipoly

F2 = field_make(1)
F8 = field_make(3)
F16 = field_make(4)
F32 = field_make(5)

X3 = UniPoly.monomial(F2, 3)
X5 = UniPoly.monomial(F2, 5)


def test_linearized_derivative_is_constant():
    f = parse_unipoly("x^2", F2)
    a = F16.elem(0b10)
    assert diff_count(f, a, a * a) == F16.order
    assert diff_count(f, a, F16.one) == 0


def test_gold_counts_on_gf8():
    counts = {
        diff_count(X3, F8.elem(a), F8.elem(b)) for a in range(1, 8) for b in range(8)
    }
    assert counts == {0, 2}


def test_counts_always_even():
    rng = random.Random(1)
    f = UniPoly(F8, {e: rng.randrange(8) for e in range(7)})
    for a in range(1, 8):
        for b in range(8):
            assert diff_count(f, F8.elem(a), F8.elem(b)) % 2 == 0


def test_zero_direction_rejected():
    with pytest.raises(ValueError, match="nonzero"):
        diff_count(X3, F8.zero, F8.one)


def test_row_sums_equal_field_size():
    rep = differential_uniformity(parse_unipoly("x^6+x^3+x", F8), F8, keep_ddt=True)
    for row in rep.ddt:
        assert sum(row) == F8.order


def test_delta_even_and_at_least_two():
    rng = random.Random(2)
    for _ in range(10):
        f = UniPoly(F16, {e: rng.randrange(16) for e in range(8)})
        rep = differential_uniformity(f, F16)
        assert rep.delta >= 2 and rep.delta % 2 == 0


def test_worst_pair_attains_delta_and_is_smallest():
    f = parse_unipoly("x^6+x^5", F8)
    rep = differential_uniformity(f, F8)
    assert diff_count(f, rep.worst_a, rep.worst_b) == rep.delta
    for a in range(1, rep.worst_a.bits):
        for b in range(F8.order):
            assert diff_count(f, F8.elem(a), F8.elem(b)) < rep.delta
    for b in range(rep.worst_b.bits):
        assert diff_count(f, rep.worst_a, F8.elem(b)) < rep.delta


def test_known_apn_verdicts():
    assert differential_uniformity(X3, F16).is_apn
    assert not differential_uniformity(X5, F16).is_apn
    assert differential_uniformity(X5, F32).is_apn
    assert differential_uniformity(UniPoly.monomial(F2, 13), F32).is_apn


def test_scan_gold_and_quintic():
    rows = apn_scan(X5, range(2, 9))
    assert {r.n for r in rows if r.is_apn} == {3, 5, 7}
    rows20 = apn_scan(UniPoly.monomial(F2, 20), range(2, 9))
    assert [(r.n, r.is_apn) for r in rows20] == [(r.n, r.is_apn) for r in rows]


def test_scan_quintic_plus_cubic_fails_somewhere_odd():
    rows = apn_scan(parse_unipoly("x^5+x^3", F2), range(2, 10))
    assert any(not r.is_apn for r in rows if r.n % 2 == 1)


def test_scan_skips_unembeddable_degrees():
    f = UniPoly.monomial(field_make(2), 3)
    rows = apn_scan(f, range(2, 7))
    skipped = {r.n for r in rows if r.skipped}
    assert skipped == {3, 5}
    assert all(r.reason for r in rows if r.skipped)
    assert all(r.delta is not None for r in rows if not r.skipped)


def test_value_table_embeds_coefficients():
    vt = value_table(X3, F8)
    assert vt == [F8.pow_(x, 3) for x in range(8)]


def test_cap_enforced():
    with pytest.raises(CapExceeded):
        differential_uniformity(X3, field_make(21))
    with pytest.raises(CapExceeded):
        differential_uniformity(X3, field_make(11), keep_ddt=True)


def test_invariance_add_qaffine():
    assert invariance_check(X3, "add_qaffine", parse_unipoly("x^2+x+1", F2), F16)
    rng = random.Random(3)
    f = parse_unipoly("x^20+x^10+x^5", F2)
    for _ in range(10):
        g = UniPoly(F32, {1 << e: rng.randrange(32) for e in range(5)})
        g = g + UniPoly(F32, {0: rng.randrange(32)})
        assert invariance_check(f, "add_qaffine", g, F32)


def test_invariance_composition():
    assert invariance_check(X5, "pre_compose", parse_unipoly("x^2", F2), F32)
    assert invariance_check(X5, "pre_compose", parse_unipoly("x^4+x^2+x", F2), F32)
    assert invariance_check(X5, "post_compose", parse_unipoly("x^4+x^2+x", F2), F32)


def test_invariance_rejections():
    with pytest.raises(ValueError, match="q-affine"):
        invariance_check(X5, "add_qaffine", parse_unipoly("x^3", F2), F32)
    with pytest.raises(ValueError, match="permutation"):
        invariance_check(X5, "pre_compose", parse_unipoly("x^4+x^2+x", F2), F8)
    with pytest.raises(ValueError, match="transform"):
        invariance_check(X5, "conjugate", X3, F8)


def test_scan_results_independent_of_partitioning():
    # per-degree work is pure, so splitting the range and concatenating
    # must reproduce the single-pass report exactly
    f = parse_unipoly("x^20+x^5", F2)
    whole = apn_scan(f, range(2, 9))
    split = apn_scan(f, range(2, 5)) + apn_scan(f, range(5, 9))
    assert [
        (r.n, r.delta, r.is_apn, r.worst_a, r.worst_b) for r in whole
    ] == [(r.n, r.delta, r.is_apn, r.worst_a, r.worst_b) for r in split]


def test_composition_preserves_delta_for_linear_permutations():
    f = parse_unipoly("x^20+x^10+x^5", F2)
    base = differential_uniformity(f, F32).delta
    for L in (parse_unipoly("x^2", F2), parse_unipoly("x^4+x^2+x", F2)):
        from apn20.polys import embed_unipoly

        fe = embed_unipoly(f, F32)
        le = embed_unipoly(L, F32)
        assert differential_uniformity(fe.compose(le), F32).delta == base
        assert differential_uniformity(le.compose(fe), F32).delta == base
