"""Rational functions on the projective line and on the affine plane, local
expansions at places and at surface flags.

A finite place of the line over a finite field k is a monic irreducible
polynomial pi; its residue field is the extension of k of degree deg(pi),
realized as the pinned GaloisField of that degree with the lexicographically
smallest root of pi as the expansion point.  The place at infinity expands in
u = 1/t.  Over an artinian coefficient ring A = k[e]/e^m places are read off
the residue reduction and the expansions live over B = K[e]/e^m with K the
residue field of the place.

A surface flag is a curve through a marked point: either the graph
t2 = phi(t1) with point t1 = a, or the vertical line t1 = c with point
t2 = b.  Expansion at a flag produces an iterated series in
k((z1))((z2)) with z2 the transverse coordinate of the curve (outer
variable) and z1 the coordinate along the curve at the point.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (AlgebraError, NonUnitLeadingCoefficient, UnsupportedArgument,
                     ZeroFunction, ZeroOnCurve)
from .laurent import LaurentRing, LaurentSeries, laurent_inv
from .poly import Poly, factor, roots_in
from .rings import (ArtinianLocal, GaloisField, PrimeField, RingValue, embed)
from .toeplitz import residue_field, residue_value


# -- rational functions on the line ---------------------------------------------

class RationalFunction:
    """Quotient of polynomials over a field or artinian local ring.

    Over a field the representation is reduced (gcd cancelled, denominator
    monic); over an artinian ring the denominator is normalized monic when
    its leading coefficient is a unit and the fraction is kept as given.
    """

    __slots__ = ("ring", "num", "den")

    def __init__(self, num: Poly, den: Poly = None):
        ring = num.ring
        if den is None:
            den = Poly.one(ring)
        if den.ring != ring:
            raise AlgebraError("numerator and denominator rings differ")
        if den.is_zero():
            raise ZeroFunction("denominator is the zero polynomial")
        if ring.is_field and not num.is_zero():
            from .poly import poly_gcd
            g = poly_gcd(num, den)
            if g.degree() > 0:
                num, den = num // g, den // g
        if den.lead().is_unit():
            c = den.lead().inv()
            num, den = num.scale(c), den.scale(c)
        self.ring = ring
        self.num = num
        self.den = den

    @classmethod
    def variable(cls, ring):
        return cls(Poly.x(ring))

    @classmethod
    def constant(cls, value: RingValue):
        return cls(Poly.constant(value))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __eq__(self, other):
        return (isinstance(other, RationalFunction) and self.ring == other.ring
                and (self.num * other.den) == (other.num * self.den))

    def __hash__(self):
        raise TypeError("rational functions are not hashable")

    def __repr__(self):
        if self.den.is_one():
            return repr(self.num)
        return f"({self.num!r})/({self.den!r})"

    def __add__(self, other):
        return RationalFunction(self.num * other.den + other.num * self.den,
                                self.den * other.den)

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        return RationalFunction(self.num * other.num, self.den * other.den)

    def inv(self) -> "RationalFunction":
        if self.num.is_zero():
            raise ZeroFunction("cannot invert the zero function")
        return RationalFunction(self.den, self.num)

    def __truediv__(self, other):
        return self * other.inv()

    def __pow__(self, e: int):
        if e < 0:
            return self.inv() ** (-e)
        return RationalFunction(self.num ** e, self.den ** e)


# -- places ----------------------------------------------------------------------

@dataclass(frozen=True)
class Place:
    """A closed point of the projective line: a monic irreducible polynomial
    over the residue field, or the point at infinity (poly None)."""

    poly: Poly | None

    @property
    def is_infinity(self) -> bool:
        return self.poly is None

    def degree(self) -> int:
        return 1 if self.poly is None else self.poly.degree()

    def label(self) -> str:
        return "infinity" if self.poly is None else repr(self.poly)

    def __repr__(self):
        return f"Place({self.label()})"


def _residue_pair(f: RationalFunction) -> tuple[Poly, Poly]:
    """Residue-field reductions of numerator and denominator, kept unreduced.

    Cancelling a shared factor here would be wrong over an artinian ring: at
    a place dividing both reductions the function still carries nilpotent
    pole atoms that pair nontrivially under the Contou-Carrere symbol.
    """
    if f.ring.is_field:
        return f.num, f.den
    k = residue_field(f.ring)
    num = f.num.map_coefficients(residue_value, k)
    den = f.den.map_coefficients(residue_value, k)
    if num.is_zero():
        raise ZeroFunction("numerator vanishes modulo the maximal ideal")
    return num, den


def support_places(*functions: RationalFunction) -> list[Place]:
    """Places where some of the functions can contribute to a symbol product:
    the irreducible factors of all numerator/denominator residue reductions,
    plus infinity when some degree mismatch makes it relevant.  Everywhere
    else every function expands to a regular series with unit constant term,
    and such series pair trivially."""
    seen = {}
    include_infinity = False
    for f in functions:
        if f.is_zero():
            raise ZeroFunction("the zero function has no divisor")
        num, den = _residue_pair(f)
        for poly in (num, den):
            if poly.degree() > 0:
                for irr, _ in factor(poly)[1]:
                    seen.setdefault(irr.encoding(), irr)
        if num.degree() != den.degree():
            include_infinity = True
    places = [Place(p) for _, p in sorted(seen.items())]
    if include_infinity:
        places.append(Place(None))
    return places


def residue_extension(scalar_ring, degree: int):
    """The coefficient ring of expansions at a place of the given degree."""
    k = residue_field(scalar_ring)
    if degree == 1:
        big = k
    else:
        p = k.char
        e = k.d if isinstance(k, GaloisField) else 1
        big = GaloisField(p, e * degree)
    if isinstance(scalar_ring, ArtinianLocal):
        return ArtinianLocal(big, scalar_ring.m)
    return big


def local_expand(f: RationalFunction, place: Place, prec: int = None,
                 var: str = "u") -> LaurentSeries:
    """Laurent expansion of f at the place, over its residue ring.

    At a finite place pi the substitution is t = alpha + u with alpha the
    pinned (smallest-encoding) root of pi in the residue field; at infinity
    it is t = 1/u.  `prec` is the absolute output precision (defaulted from
    the pole depth and the nilpotency bound).
    """
    if f.is_zero():
        raise ZeroFunction("cannot expand the zero function")
    S = f.ring
    B = residue_extension(S, place.degree())
    R = LaurentRing(B, var)
    if place.is_infinity:
        num_s = _poly_at_inverse(f.num, R)
        den_s = _poly_at_inverse(f.den, R)
    else:
        k = residue_field(S)
        pin = place.poly.map_coefficients(lambda c: embed(c, _base_field(B)), _base_field(B))
        roots = roots_in(pin, _base_field(B))
        if not roots:
            raise AlgebraError(f"{place.label()} has no root in the residue field"
                               " (is it irreducible over the right field?)")
        alpha = embed(roots[0], B)
        sub = R.constant(alpha) + R.gen()
        num_s = _poly_at_series(f.num, sub, B)
        den_s = _poly_at_series(f.den, sub, B)
    if den_s.is_one():
        return num_s if prec is None else num_s.truncate(prec)
    if prec is None:
        nil = B.nil_bound
        nu_n, nu_d = num_s.valuation(), den_s.valuation()
        tail = (nu_n - num_s.low) + (nu_d - den_s.low)
        prec = (abs(nu_n - nu_d) + tail) * nil + 8
    inv_den = laurent_inv(den_s, prec - num_s.low)
    return (num_s * inv_den).truncate(prec)


def _base_field(ring):
    return ring.base if isinstance(ring, ArtinianLocal) else ring


def _poly_at_series(poly: Poly, sub: LaurentSeries, B) -> LaurentSeries:
    R = sub.ring
    acc = R.coerce(0)
    for c in reversed(poly.coeffs):
        acc = acc * sub + R.constant(embed(c, B))
    return acc


def _poly_at_inverse(poly: Poly, R: LaurentRing) -> LaurentSeries:
    """poly(1/u) as an exact Laurent series."""
    B = R.base
    return LaurentSeries(R, {-i: embed(c, B) for i, c in enumerate(poly.coeffs)
                             if not c.is_zero()}, None)


def leading_unit_guard(*functions: RationalFunction):
    """Reciprocity over an artinian ring needs unit leading coefficients so
    that degrees and places are read off the residue reduction faithfully."""
    for f in functions:
        for poly, role in ((f.num, "numerator"), (f.den, "denominator")):
            if poly.is_zero():
                continue
            if not poly.lead().is_unit():
                raise NonUnitLeadingCoefficient(
                    f"{role} {poly!r} has a non-unit leading coefficient")


# -- the affine plane: bivariate functions and flags ------------------------------

class BivarPoly:
    """Polynomial in two variables t1, t2; sparse {(i, j): coefficient}."""

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring, coeffs: dict):
        self.ring = ring
        self.coeffs = {ij: (c if isinstance(c, RingValue) else ring.from_int(c))
                       for ij, c in coeffs.items()}
        self.coeffs = {ij: c for ij, c in self.coeffs.items() if not c.is_zero()}

    @classmethod
    def zero(cls, ring):
        return cls(ring, {})

    @classmethod
    def one(cls, ring):
        return cls(ring, {(0, 0): ring.one()})

    @classmethod
    def constant(cls, value: RingValue):
        return cls(value.ring, {(0, 0): value})

    @classmethod
    def t1(cls, ring):
        return cls(ring, {(1, 0): ring.one()})

    @classmethod
    def t2(cls, ring):
        return cls(ring, {(0, 1): ring.one()})

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return set(self.coeffs) <= {(0, 0)}

    def __eq__(self, other):
        return (isinstance(other, BivarPoly) and self.ring == other.ring
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.ring, tuple(sorted((ij, c.raw)
                                             for ij, c in self.coeffs.items()))))

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for (i, j), c in sorted(self.coeffs.items()):
            factors = []
            if not c.is_one() or (i, j) == (0, 0):
                factors.append(str(c))
            if i:
                factors.append("t1" if i == 1 else f"t1^{i}")
            if j:
                factors.append("t2" if j == 1 else f"t2^{j}")
            parts.append("*".join(factors))
        return " + ".join(parts)

    def __add__(self, other):
        out = dict(self.coeffs)
        for ij, c in other.coeffs.items():
            s = out.get(ij)
            out[ij] = c if s is None else s + c
        return BivarPoly(self.ring, out)

    def __neg__(self):
        return BivarPoly(self.ring, {ij: -c for ij, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, RingValue):
            return BivarPoly(self.ring, {ij: c * other
                                         for ij, c in self.coeffs.items()})
        out = {}
        for (i1, j1), c1 in self.coeffs.items():
            for (i2, j2), c2 in other.coeffs.items():
                ij = (i1 + i2, j1 + j2)
                p = c1 * c2
                s = out.get(ij)
                out[ij] = p if s is None else s + p
        return BivarPoly(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise UnsupportedArgument("negative power of a polynomial")
        result = BivarPoly.one(self.ring)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def evaluate(self, a: RingValue, b: RingValue) -> RingValue:
        acc = self.ring.zero()
        for (i, j), c in self.coeffs.items():
            acc = acc + c * a ** i * b ** j
        return acc

    def substitute_t2(self, phi: Poly) -> Poly:
        """The univariate polynomial self(t1, phi(t1))."""
        out = Poly.zero(self.ring)
        for (i, j), c in self.coeffs.items():
            out = out + (Poly.constant(c).shift_up(i)) * phi ** j
        return out

    def substitute_t1(self, value: RingValue) -> Poly:
        """The univariate polynomial self(value, t2)."""
        out = Poly.zero(self.ring)
        for (i, j), c in self.coeffs.items():
            term = Poly.constant(c * value ** i).shift_up(j)
            out = out + term
        return out


class BivarRational:
    """Quotient of bivariate polynomials (kept unreduced)."""

    __slots__ = ("ring", "num", "den")

    def __init__(self, num: BivarPoly, den: BivarPoly = None):
        ring = num.ring
        if den is None:
            den = BivarPoly.one(ring)
        if den.is_zero():
            raise ZeroFunction("denominator is the zero polynomial")
        self.ring = ring
        self.num = num
        self.den = den

    @classmethod
    def t1(cls, ring):
        return cls(BivarPoly.t1(ring))

    @classmethod
    def t2(cls, ring):
        return cls(BivarPoly.t2(ring))

    @classmethod
    def constant(cls, value):
        return cls(BivarPoly.constant(value))

    def is_zero(self):
        return self.num.is_zero()

    def __repr__(self):
        if self.den.is_constant() and self.den.coeffs.get((0, 0), self.ring.zero()).is_one():
            return repr(self.num)
        return f"({self.num!r})/({self.den!r})"

    def __add__(self, other):
        return BivarRational(self.num * other.den + other.num * self.den,
                             self.den * other.den)

    def __neg__(self):
        return BivarRational(-self.num, self.den)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        return BivarRational(self.num * other.num, self.den * other.den)

    def inv(self):
        if self.num.is_zero():
            raise ZeroFunction("cannot invert the zero function")
        return BivarRational(self.den, self.num)

    def __truediv__(self, other):
        return self * other.inv()

    def __pow__(self, e: int):
        if e < 0:
            return self.inv() ** (-e)
        return BivarRational(self.num ** e, self.den ** e)


@dataclass(frozen=True)
class SurfaceFlag:
    """A curve through a marked point on the affine plane.

    kind "graph":    curve t2 = phi(t1), point at t1 = a;
    kind "vertical": curve t1 = c,       point at t2 = b.

    Local coordinates: z1 along the curve at the point, z2 transverse
    (z2 = t2 - phi(t1), resp. z2 = t1 - c); expansions are iterated series
    with z2 as the outer variable.
    """

    kind: str
    data: tuple
    point: tuple

    @classmethod
    def graph(cls, phi: Poly, a: RingValue):
        return cls("graph", (phi,), (a, phi.evaluate(a)))

    @classmethod
    def vertical(cls, c: RingValue, b: RingValue):
        return cls("vertical", (c,), (c, b))

    def curve_equation(self) -> BivarPoly:
        ring = self.point[0].ring
        if self.kind == "vertical":
            c = self.data[0]
            return BivarPoly(ring, {(1, 0): ring.one(), (0, 0): -c})
        phi = self.data[0]
        eq = BivarPoly.t2(ring)
        for i, coef in enumerate(phi.coeffs):
            eq = eq - BivarPoly(ring, {(i, 0): coef})
        return eq

    def label(self) -> str:
        a, b = self.point
        return f"({self.curve_equation()!r} = 0; point ({a}, {b}))"


def flag_ring(scalar_ring, inner: str = "z1", outer: str = "z2") -> LaurentRing:
    return LaurentRing(LaurentRing(scalar_ring, inner), outer)


def flag_expand(f: BivarRational, flag: SurfaceFlag, prec: int = None,
                inner_prec: int = None) -> LaurentSeries:
    """Iterated expansion of f at the flag, in k((z1))((z2)) (z2 outer)."""
    if f.num.is_zero():
        raise ZeroOnCurve("the zero function has no expansion along a curve")
    ring = f.ring
    N2 = flag_ring(ring)
    N1 = N2.base
    z1 = N2.constant(N1.gen())
    z2 = N2.gen()
    if flag.kind == "graph":
        phi = flag.data[0]
        a = flag.point[0]
        t1_s = N2.constant(N1.constant(a)) + z1
        phi_s = _poly_at_nested(phi, t1_s, N2)
        t2_s = phi_s + z2
    elif flag.kind == "vertical":
        c, b = flag.point
        t1_s = N2.constant(N1.constant(c)) + z2
        t2_s = N2.constant(N1.constant(b)) + z1
    else:  # pragma: no cover
        raise UnsupportedArgument(f"unknown flag kind {flag.kind!r}")
    num_s = _bivar_at(f.num, t1_s, t2_s, N2)
    den_s = _bivar_at(f.den, t1_s, t2_s, N2)
    if den_s.is_zero() or num_s.is_zero():  # pragma: no cover
        raise ZeroOnCurve("function degenerates along the curve")
    if den_s.is_one():
        out = num_s if prec is None else num_s.truncate(prec)
    else:
        if prec is None:
            prec = 2 * max(1, abs(den_s.valuation()), abs(num_s.valuation())) + 6
        inv_den = laurent_inv(den_s, prec - num_s.low)
        out = (num_s * inv_den).truncate(prec)
    if inner_prec is not None:
        out = LaurentSeries(N2, {e: c.truncate(inner_prec)
                                 for e, c in out.coeffs.items()}, out.prec)
    return out


def _poly_at_nested(poly: Poly, sub: LaurentSeries, N2: LaurentRing) -> LaurentSeries:
    acc = N2.coerce(0)
    for c in reversed(poly.coeffs):
        acc = acc * sub + N2.constant(N2.base.constant(c))
    return acc


def _bivar_at(poly: BivarPoly, t1_s, t2_s, N2: LaurentRing) -> LaurentSeries:
    # Horner in t2 with inner Horner in t1
    by_j: dict[int, dict[int, RingValue]] = {}
    for (i, j), c in poly.coeffs.items():
        by_j.setdefault(j, {})[i] = c
    acc = N2.coerce(0)
    for j in range(max(by_j, default=0), -1, -1):
        acc = acc * t2_s
        row = by_j.get(j)
        if row:
            inner = N2.coerce(0)
            for i in range(max(row), -1, -1):
                inner = inner * t1_s
                c = row.get(i)
                if c is not None:
                    inner = inner + N2.constant(N2.base.constant(c))
            acc = acc + inner
    return acc
