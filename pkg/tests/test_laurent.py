import random

import pytest
from hypothesis import given, strategies as st

from ccsym.errors import NotAUnit, NotRegular, PrecisionExhausted
from ccsym.laurent import (LaurentRing, LaurentSeries, default_precision,
                           format_series, iterated_ring, nest, reduce_mod_t,
                           unit_decompose)
from ccsym.rings import ArtinianLocal, GaloisField, PrimeField

F3, F5 = PrimeField(3), PrimeField(5)
A32 = ArtinianLocal(F3, 2)
A53 = ArtinianLocal(F5, 3)

BASES = [PrimeField(2), F5, PrimeField(7), GaloisField(2, 2), GaloisField(3, 2),
         A32, A53, ArtinianLocal(GaloisField(3, 2), 2)]


def random_series(base, rng, low=-3, high=5, prec=None):
    ring = LaurentRing(base, "t")
    return ring.random(rng, low=low, high=high, prec=prec)


class TestArithmetic:
    def test_addition_merges_precision(self):
        R = LaurentRing(F5, "t")
        a = (R.one() + R.gen()).truncate(4)
        b = R.gen(2).truncate(7)
        assert (a + b).prec == 4

    def test_multiplication_precision_uses_lowest_terms(self):
        R = LaurentRing(F5, "t")
        a = R.gen(-2) + R.gen(0)          # low -2, exact
        b = (R.one() + R.gen()).truncate(5)
        # min(low(a)+prec(b), low(b)+prec(a)) = min(-2+5, n/a) = 3
        assert (a * b).prec == 3

    def test_exact_times_exact_stays_exact(self):
        R = LaurentRing(F3, "t")
        assert ((R.one() + R.gen()) * R.gen(-4)).prec is None

    def test_coeff_beyond_precision_raises(self):
        R = LaurentRing(F5, "t")
        f = R.one().truncate(3)
        with pytest.raises(PrecisionExhausted):
            f.coeff(3)

    def test_valuation_needs_a_unit_coefficient(self):
        RA = LaurentRing(A32, "t")
        nil = RA.gen(-1).scale(A32.eps())
        with pytest.raises(NotAUnit):
            nil.valuation()

    def test_valuation_skips_nilpotent_tail(self):
        RA = LaurentRing(A32, "t")
        f = RA.one() + RA.gen(-2).scale(A32.eps())
        assert f.valuation() == 0
        assert f.is_unit()

    def test_reduce_mod_t(self):
        R = LaurentRing(F5, "t")
        assert reduce_mod_t(R.one() + R.gen(3)) == F5.one()
        with pytest.raises(NotRegular):
            reduce_mod_t(R.gen(1) + R.gen(2))       # positive valuation
        with pytest.raises(NotRegular):
            reduce_mod_t(R.gen(-1) + R.one())       # genuine pole
        RA = LaurentRing(A32, "t")
        with pytest.raises(NotRegular):
            # nilpotent pole still blocks reduction
            reduce_mod_t(RA.one() + RA.gen(-1).scale(A32.eps()))


class TestInverse:
    def test_monomial_inverse_is_exact(self):
        R = LaurentRing(F5, "t")
        m = R.gen(-3).scale(F5.from_int(2))
        assert m.inv().prec is None
        assert (m * m.inv()).agrees_with(1)

    def test_plain_series(self):
        R = LaurentRing(F5, "t")
        f = (R.gen() ** 2) * (1 + R.gen())
        assert (f * f.inv()).agrees_with(1)

    def test_nilpotent_pole_inverse_is_exact_value(self):
        RA = LaurentRing(A32, "t")
        f = RA.one() - RA.gen(-1).scale(A32.eps())
        assert f.inv().agrees_with(RA.one() + RA.gen(-1).scale(A32.eps()))

    def test_truncated_input_honest_output_precision(self):
        RA = LaurentRing(A32, "t")
        f = (RA.one() - RA.gen(-1).scale(A32.eps())).truncate(10)
        fi = f.inv()
        # N - 2*nu - 2*(L-1)*pole = 10 - 0 - 2*1*1
        assert fi.prec == 8
        assert (f * fi).agrees_with(1)

    def test_non_unit_inverse_raises(self):
        RA = LaurentRing(A32, "t")
        with pytest.raises(NotAUnit):
            RA.gen(2).scale(A32.eps()).inv()

    @pytest.mark.parametrize("seed", range(6))
    def test_random_inverses(self, seed):
        rng = random.Random(seed)
        for base in BASES:
            for _ in range(12):
                f = random_series(base, rng)
                if not f.is_unit():
                    continue
                try:
                    fi = f.inv()
                except PrecisionExhausted:
                    continue
                assert (f * fi).agrees_with(1), (base, f, fi)


class TestUnitDecompose:
    def test_nilpotent_tail_example(self):
        RA = LaurentRing(A32, "t")
        eps = A32.eps()
        f = RA.one() - RA.gen(-2).scale(eps)
        d = unit_decompose(f)
        assert d.nu == 0 and d.lead.is_one()
        assert d.neg == {-2: eps} and d.pos == {}

    def test_composite(self):
        A52 = ArtinianLocal(F5, 2)
        R = LaurentRing(A52, "t")
        t, eps = R.gen(), A52.eps()
        f = (t ** 3) * (2 + t) * (R.one() - R.gen(-1).scale(eps))
        d = unit_decompose(f)
        assert d.nu == 3
        assert d.lead == A52.from_int(2)
        assert d.neg == {-1: eps}
        assert d.pos == {1: A52.from_int(2)}   # (2+t) = 2*(1 - 2 t) over F5

    def test_field_coefficients_have_no_negative_factors(self, rng):
        for _ in range(40):
            f = random_series(F5, rng, low=-4, high=4)
            if not f.is_unit():
                continue
            d = unit_decompose(f)
            assert d.neg == {}
            assert min(f.coeffs) == d.nu

    def test_non_unit_rejected(self):
        RA = LaurentRing(A32, "t")
        with pytest.raises(NotAUnit):
            unit_decompose(RA.gen(1).scale(A32.eps()))

    @pytest.mark.parametrize("seed", range(8))
    def test_round_trip_below_guaranteed_bound(self, seed):
        rng = random.Random(seed)
        for base in BASES:
            for _ in range(10):
                f = random_series(base, rng)
                if not f.is_unit():
                    continue
                d = unit_decompose(f)
                assert d.reconstruct().agrees_with(f, upto=d.reconstruct_bound()), (base, f, d)

    @pytest.mark.parametrize("seed", range(4))
    def test_factors_stable_under_wider_cutoff(self, seed):
        rng = random.Random(100 + seed)
        for base in BASES:
            f = random_series(base, rng)
            if not f.is_unit():
                continue
            d1 = unit_decompose(f)
            d2 = unit_decompose(f, positive_cutoff=d1.cutoff + 6)
            assert (d1.nu, d1.lead, d1.neg) == (d2.nu, d2.lead, d2.neg)
            assert all(d2.pos.get(i) == a for i, a in d1.pos.items())

    def test_negative_exponents_bounded_by_nilpotency(self, rng):
        # factors below t^-((L-1)*pole) cannot occur
        for _ in range(40):
            f = random_series(A53, rng, low=-3, high=3)
            if not f.is_unit():
                continue
            d = unit_decompose(f)
            pole = max(0, d.nu - min(f.coeffs))
            L = A53.nil_bound
            assert all(-(L - 1) * pole <= i < 0 for i in d.neg), (f, d)
            assert all(a.is_nilpotent() for a in d.neg.values())


class TestNestedTowers:
    def test_two_level_arithmetic(self):
        T = iterated_ring(F3, ["t1", "t2"])
        s = nest(T, {0: {1: 1}, 1: {0: 1}})       # t1 + t2
        assert reduce_mod_t(s) == T.base.gen()
        assert (s * s.inv()).agrees_with(1)

    def test_nested_decomposition(self):
        T = iterated_ring(F5, ["t1", "t2"])
        s = nest(T, {0: {1: 1}, 1: {0: 1}})
        d = unit_decompose(s)
        assert d.nu == 0
        assert d.lead == T.base.gen()             # leading coefficient t1
        assert d.reconstruct().agrees_with(s, upto=d.reconstruct_bound())

    def test_depth(self):
        T = iterated_ring(F3, ["t1", "t2", "t3"])
        assert T.depth() == 3
        assert T.var == "t3"


class TestFormatting:
    def test_ascending_with_tail(self):
        R = LaurentRing(F5, "t")
        f = (R.gen(-2).scale(F5.from_int(3)) + R.one()).truncate(4)
        assert format_series(f) == "3*t^-2 + 1 + O(t^4)"

    def test_composite_coefficients_parenthesized(self):
        RA = LaurentRing(A32, "t")
        f = RA.one() + RA.gen(1).scale(A32.eps())
        assert format_series(f) == "1 + e*t"
        g = RA.gen(1).scale(A32.one() + A32.eps())
        assert format_series(g) == "(1 + e)*t"

    def test_zero(self):
        R = LaurentRing(F5, "t")
        assert format_series(R.zero()) == "0"
        assert format_series(R.zero(prec=3)) == "O(t^3)"


@given(st.integers(min_value=0, max_value=10_000))
def test_mul_commutes_and_distributes(seed):
    rng = random.Random(seed)
    base = BASES[seed % len(BASES)]
    f = random_series(base, rng)
    g = random_series(base, rng)
    h = random_series(base, rng)
    assert (f * g).agrees_with(g * f)
    lhs = f * (g + h)
    rhs = f * g + f * h
    assert lhs.agrees_with(rhs)


@given(st.integers(min_value=0, max_value=10_000))
def test_valuation_additive_on_units(seed):
    rng = random.Random(seed)
    base = BASES[seed % len(BASES)]
    f, g = random_series(base, rng), random_series(base, rng)
    if not (f.is_unit() and g.is_unit()):
        return
    assert (f * g).valuation() == f.valuation() + g.valuation()


@given(st.integers(min_value=0, max_value=10_000))
def test_default_precision_covers_poles(seed):
    rng = random.Random(seed)
    base = BASES[seed % len(BASES)]
    f = random_series(base, rng, low=-5, high=2)
    n = default_precision(f)
    pole = -min(min(f.coeffs), 0) if f.coeffs else 0
    assert n >= pole * base.nil_bound + 8
