"""Places, local expansions, plane functions and flag expansions."""

import pytest

from ccsym.errors import (NonUnitLeadingCoefficient, ZeroFunction, ZeroOnCurve)
from ccsym.geometry import (BivarPoly, BivarRational, Place, RationalFunction,
                            SurfaceFlag, flag_expand, flag_ring,
                            leading_unit_guard, local_expand, residue_extension,
                            support_places)
from ccsym.laurent import format_series
from ccsym.poly import Poly
from ccsym.reciprocity import _divmod_by_curve
from ccsym.rings import ArtinianLocal, GaloisField, PrimeField

F5 = PrimeField(5)
F9 = GaloisField(3, 2)
A52 = ArtinianLocal(F5, 2)


def rf(ring, num, den=None):
    return RationalFunction(Poly(ring, num),
                            Poly(ring, den) if den is not None else None)


# -- rational functions ---------------------------------------------------------

def test_rational_function_reduces_over_field():
    f = rf(F5, [0, 1, 1], [0, 1])        # t(t+1)/t
    assert f.num == Poly(F5, [1, 1])
    assert f.den.is_one()


def test_rational_function_keeps_artinian_fraction():
    eps = A52.eps()
    f = RationalFunction(Poly(A52, [eps, A52.one()]) * Poly.x(A52), Poly.x(A52))
    # no gcd cancellation over the artinian ring
    assert f.num.degree() == 2
    assert f.den.degree() == 1


def test_rational_arithmetic():
    t = RationalFunction.variable(F5)
    one = RationalFunction.constant(F5.one())
    expr = (t + one) * (t - one) / t
    assert expr.num == Poly(F5, [-1, 0, 1])
    assert expr.den == Poly(F5, [0, 1])
    assert expr * expr.inv() == one
    assert (t ** -2).den == Poly(F5, [0, 0, 1])


def test_zero_denominator_rejected():
    with pytest.raises(ZeroFunction):
        RationalFunction(Poly.one(F5), Poly.zero(F5))
    with pytest.raises(ZeroFunction):
        RationalFunction(Poly.zero(F5)).inv()


# -- places and support ----------------------------------------------------------

def test_support_places_field():
    f = rf(F5, [0, 1])          # t
    g = rf(F5, [1, -1])         # 1 - t
    places = support_places(f, g)
    labels = [p.label() for p in places]
    assert labels == ["t", "4 + t", "infinity"]
    assert [p.degree() for p in places] == [1, 1, 1]


def test_support_includes_degree_two_place():
    f = rf(F5, [2, 0, 1])       # t^2 + 2 irreducible
    places = support_places(f)
    assert [p.label() for p in places] == ["2 + t^2", "infinity"]
    assert places[0].degree() == 2


def test_support_keeps_shared_residue_factor():
    # num and den share the residue factor t: it must stay in the support,
    # the nilpotent discrepancy pairs nontrivially there
    eps = A52.eps()
    f = RationalFunction(Poly(A52, [eps, A52.one()]),        # t + eps
                         Poly(A52, [A52.zero(), A52.one()]))  # t
    labels = [p.label() for p in support_places(f)]
    assert "t" in labels


def test_support_rejects_zero():
    with pytest.raises(ZeroFunction):
        support_places(RationalFunction(Poly.zero(F5)))


def test_residue_extension_rings():
    assert residue_extension(F5, 1) == F5
    assert residue_extension(F5, 2) == GaloisField(5, 2)
    assert residue_extension(F9, 2) == GaloisField(3, 4)
    assert residue_extension(A52, 3) == ArtinianLocal(GaloisField(5, 3), 2)


# -- local expansion --------------------------------------------------------------

def test_expand_at_rational_place():
    f = rf(F5, [0, 1])                       # t at place t - 1
    place = Place(Poly(F5, [-1, 1]))
    s = local_expand(f, place)
    assert s.coeff(0) == F5.one()
    assert s.coeff(1) == F5.one()


def test_expand_at_degree_two_place_uses_pinned_root():
    f = rf(F5, [2, 0, 1])
    place = support_places(f)[0]
    s = local_expand(f, place)
    B = s.ring.base
    assert B == GaloisField(5, 2)
    assert s.valuation() == 1
    # t^2 + 2 = 2 alpha u + u^2 at the pinned root alpha (encoding-smallest)
    alpha = None
    from ccsym.poly import roots_in
    alpha = roots_in(Poly(F5, [2, 0, 1]).map_coefficients(
        lambda c: __import__("ccsym.rings", fromlist=["embed"]).embed(c, B), B), B)[0]
    assert s.coeff(1) == alpha + alpha
    assert s.coeff(2) == B.one()


def test_expand_at_infinity():
    f = rf(F5, [0, 0, 1], [1, 1])            # t^2/(1+t)
    s = local_expand(f, Place(None))
    assert s.valuation() == -1               # ord_infinity = deg den - deg num
    assert s.coeff(-1) == F5.one()


def test_expand_artinian_keeps_nilpotent_shift():
    eps = A52.eps()
    f = RationalFunction(Poly(A52, [-eps, A52.one()]))   # t - eps
    s = local_expand(f, Place(Poly(F5, [0, 1])))
    assert s.coeff(0) == -eps
    assert s.coeff(1) == A52.one()
    assert s.valuation() == 1                # unit part starts at u


def test_expand_zero_function_rejected():
    with pytest.raises(ZeroFunction):
        local_expand(RationalFunction(Poly.zero(F5)), Place(None))


def test_leading_unit_guard():
    eps = A52.eps()
    good = RationalFunction(Poly(A52, [eps, A52.one()]))
    bad = RationalFunction(Poly(A52, [A52.one(), eps]))
    leading_unit_guard(good)
    with pytest.raises(NonUnitLeadingCoefficient):
        leading_unit_guard(good, bad)


# -- plane functions and flags -----------------------------------------------------

def test_bivar_poly_arithmetic():
    p = BivarPoly(F5, {(1, 0): 1, (0, 1): 1})      # t1 + t2
    q = BivarPoly(F5, {(1, 0): 1, (0, 1): -1})     # t1 - t2
    prod = p * q
    assert prod == BivarPoly(F5, {(2, 0): 1, (0, 2): -1})
    assert (p + q) == BivarPoly(F5, {(1, 0): 2})
    assert p.evaluate(F5.from_int(2), F5.from_int(3)).raw == 0
    assert (p ** 2).coeffs[(1, 1)] == F5.from_int(2)


def test_bivar_substitutions():
    p = BivarPoly(F5, {(1, 1): 1, (0, 0): 3})      # t1 t2 + 3
    phi = Poly(F5, [0, 2])                          # t2 = 2 t1
    assert p.substitute_t2(phi) == Poly(F5, [3, 0, 2])
    assert p.substitute_t1(F5.from_int(2)) == Poly(F5, [3, 2])


def test_divmod_by_curve_identity(rng):
    for _ in range(25):
        poly = BivarPoly(F5, {(rng.randrange(3), rng.randrange(3)):
                              rng.randrange(5) for _ in range(4)})
        for flag in (SurfaceFlag.vertical(F5.from_int(2), F5.zero()),
                     SurfaceFlag.graph(Poly(F5, [1, 3]), F5.zero()),
                     SurfaceFlag.graph(Poly(F5, [0, 0, 1]), F5.one())):
            quot, rem = _divmod_by_curve(poly, flag)
            eq = flag.curve_equation()
            assert quot * eq + rem == poly
            # remainder has no transverse variable left
            if flag.kind == "vertical":
                assert all(i == 0 for i, _ in rem.coeffs)
            else:
                assert all(j == 0 for _, j in rem.coeffs)


def test_flag_expand_coordinates():
    N2 = flag_ring(F5)
    t1 = BivarRational.t1(F5)
    t2 = BivarRational.t2(F5)
    diag = SurfaceFlag.graph(Poly(F5, [0, 1]), F5.zero())   # t2 = t1 at origin
    e1 = flag_expand(t1, diag)
    e2 = flag_expand(t2, diag)
    # t1 = z1 (inner variable), t2 = z1 + z2
    assert e1.ring == N2
    assert format_series(e1) == "z1"
    assert format_series(e2) == "z1 + z2"
    vert = SurfaceFlag.vertical(F5.zero(), F5.zero())
    assert format_series(flag_expand(t1, vert)) == "z2"
    assert format_series(flag_expand(t2, vert)) == "z1"


def test_flag_expand_divides():
    f = BivarRational.t1(F5) / BivarRational.t2(F5)
    diag = SurfaceFlag.graph(Poly(F5, [0, 1]), F5.zero())
    s = flag_expand(f, diag)
    # t1/t2 = z1/(z1+z2): valuation 0 in z2, leading z2-coefficient 1 + O(z1)
    assert s.valuation() == 0
    inner = s.coeff(0)
    assert inner.coeff(0).is_one()


def test_flag_expand_zero_rejected():
    with pytest.raises(ZeroOnCurve):
        flag_expand(BivarRational(BivarPoly.zero(F5)),
                    SurfaceFlag.vertical(F5.zero(), F5.zero()))


def test_flag_labels():
    fl = SurfaceFlag.graph(Poly(F5, [0, 1]), F5.zero())
    assert "t2" in fl.label() and "point" in fl.label()
