"""Exact coefficient arithmetic: rationals, residues, truncated polynomials."""

import math
from itertools import permutations

import pytest
from hypothesis import given, strategies as st

from formalbrauer.coefficients import (
    QQ,
    Prime,
    Residue,
    ResidueRing,
    TruncPoly,
    TruncPolyRing,
    is_prime,
    multinomial,
    rat,
    reduce_mod,
    val_p,
)
from formalbrauer.errors import NonIntegral, NotAUnit, RingMismatch


# ---------------------------------------------------------------------------
# primes
# ---------------------------------------------------------------------------


def test_is_prime_small_table():
    primes_below_60 = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43,
                       47, 53, 59]
    assert [n for n in range(60) if is_prime(n)] == primes_below_60


def test_prime_wrapper_rejects_two_and_composites():
    assert Prime(3).p == 3
    assert int(Prime(229)) == 229
    with pytest.raises(ValueError):
        Prime(2)
    with pytest.raises(ValueError):
        Prime(9)
    with pytest.raises(ValueError):
        Prime(1)


# ---------------------------------------------------------------------------
# valuations
# ---------------------------------------------------------------------------


def test_val_p_frozen_values():
    assert val_p(rat(24, 5), 3) == 1
    assert val_p(rat(5, 9), 3) == -2
    assert val_p(rat(1), 7) == 0
    assert val_p(45, 3) == 2
    assert val_p(0, 3) == math.inf


@given(st.integers(min_value=-200, max_value=200).filter(bool),
       st.integers(min_value=1, max_value=200),
       st.sampled_from([3, 5, 7]))
def test_val_p_is_additive(num, den, p):
    a = rat(num, den)
    b = rat(den, num)
    assert val_p(a * b, p) == val_p(a, p) + val_p(b, p)


# ---------------------------------------------------------------------------
# multinomials
# ---------------------------------------------------------------------------


def _multinomial_by_enumeration(parts):
    """Count distinct arrangements of the multiset directly."""
    seq = []
    for i, k in enumerate(parts):
        seq.extend([i] * k)
    return len(set(permutations(seq)))


@given(st.lists(st.integers(min_value=0, max_value=3), min_size=1,
                max_size=4).filter(lambda parts: sum(parts) <= 8))
def test_multinomial_matches_enumeration(parts):
    n = sum(parts)
    assert multinomial(n, parts) == _multinomial_by_enumeration(parts)


def test_multinomial_frozen_values():
    assert multinomial(4, (1, 1, 1, 1)) == 24
    assert multinomial(8, (2, 2, 2, 2)) == 2520
    assert multinomial(12, (3, 3, 3, 3)) == 369600
    assert multinomial(0, ()) == 1


def test_multinomial_rejects_mismatched_total():
    with pytest.raises(ValueError):
        multinomial(5, (1, 1, 1, 1))


# ---------------------------------------------------------------------------
# the rational field object
# ---------------------------------------------------------------------------


def test_rational_field_basics():
    assert QQ.coerce(3) == rat(3)
    assert QQ.div_int(rat(3), 2) == rat(3, 2)
    assert QQ.is_unit(rat(-5, 7))
    assert not QQ.is_unit(rat(0))
    assert QQ.invert(rat(3, 4)) == rat(4, 3)
    with pytest.raises(NotAUnit):
        QQ.invert(rat(0))


# ---------------------------------------------------------------------------
# residue rings Z/p^M
# ---------------------------------------------------------------------------


def test_residue_ring_mod_9():
    rng = ResidueRing(Prime(3), 2)
    assert rng.modulus == 9
    a = rng.from_int(7)
    assert a == 16          # compared mod 9
    assert (a * a).v == 4
    assert (a + rng.from_int(2)).v == 0
    assert (-a).v == 2
    assert a ** 2 == rng.from_int(4)
    assert rng.is_unit(a)
    assert not rng.is_unit(rng.from_int(3))
    assert rng.invert(rng.from_int(2)).v == 5
    with pytest.raises(NotAUnit):
        rng.invert(rng.from_int(3))


def test_residues_from_different_rings_do_not_mix():
    a = ResidueRing(Prime(3), 1).from_int(1)
    b = ResidueRing(Prime(5), 1).from_int(1)
    with pytest.raises(RingMismatch):
        a + b


def test_reduce_mod_frozen_and_guarded():
    rng = ResidueRing(Prime(3), 2)
    assert reduce_mod(rat(24, 5), rng) == 3
    assert reduce_mod(rat(-1), rng) == 8
    assert reduce_mod(7, rng) == 7
    with pytest.raises(NonIntegral):
        reduce_mod(rat(1, 3), rng)


@given(st.integers(min_value=-50, max_value=50),
       st.integers(min_value=1, max_value=50))
def test_reduce_mod_is_a_ring_map_on_integral_inputs(num, den):
    rng = ResidueRing(Prime(5), 2)
    if den % 5 == 0:
        return
    x = rat(num, den)
    y = rat(den, 3) if den % 3 else rat(den, 7)
    got = reduce_mod(x * y, rng)
    expected = (reduce_mod(x, rng) * reduce_mod(y, rng)) % 25
    assert got == expected


# ---------------------------------------------------------------------------
# truncated polynomials
# ---------------------------------------------------------------------------


def test_truncpoly_arithmetic_and_repr():
    R = TruncPolyRing(("t", "u"), 4)
    t, u = R.var("t"), R.var("u")
    x = R.one + t * 2
    assert repr(x) == "1 + 2*t"
    sq = (t + u) * (t + u)
    assert sq.terms == {(2, 0): rat(1), (1, 1): rat(2), (0, 2): rat(1)}
    assert not sq.truncated
    assert (t ** 4).terms == {(4, 0): rat(1)}
    assert x.constant_term() == rat(1)
    assert (t * u).total_degree() == 2


def test_truncation_flag_is_sticky():
    R = TruncPolyRing(("t", "u"), 4)
    t, u = R.var("t"), R.var("u")
    hi = (t + u) ** 5            # everything above the cap vanished
    assert hi.truncated
    assert hi == R.zero          # equality ignores the flag, values agree
    assert (hi + t).truncated    # and the flag survives later arithmetic
    assert (hi * t).truncated
    assert not ((t + u) ** 2).truncated


def test_truncpoly_inversion_is_geometric():
    R = TruncPolyRing(("t",), 4)
    t = R.var("t")
    inv = R.invert(R.one - t)
    assert inv.terms == {(0,): rat(1), (1,): rat(1), (2,): rat(1),
                         (3,): rat(1), (4,): rat(1)}
    assert ((R.one - t) * inv).constant_term() == rat(1)
    with pytest.raises(NotAUnit):
        R.invert(t)


def test_truncpoly_ring_coerce_and_monomial():
    R = TruncPolyRing(("t",), 6)
    assert R.coerce(rat(2, 3)).terms == {(0,): rat(2, 3)}
    m = R.monomial((3,), 5)
    assert m.terms == {(3,): rat(5)}
    other = TruncPolyRing(("u",), 6)
    with pytest.raises(RingMismatch):
        R.coerce(other.var("u"))


@given(st.lists(st.tuples(st.integers(min_value=0, max_value=3),
                          st.integers(min_value=-4, max_value=4)),
                min_size=1, max_size=5),
       st.lists(st.tuples(st.integers(min_value=0, max_value=3),
                          st.integers(min_value=-4, max_value=4)),
                min_size=1, max_size=5))
def test_truncpoly_mul_commutes_and_distributes(aterms, bterms):
    R = TruncPolyRing(("t",), 5)
    a = sum((R.monomial((d,), c) for d, c in aterms), R.zero)
    b = sum((R.monomial((d,), c) for d, c in bterms), R.zero)
    assert a * b == b * a
    assert a * (b + R.one) == a * b + a
