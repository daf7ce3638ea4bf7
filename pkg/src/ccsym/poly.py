"""Univariate polynomials over the scalar rings, with factorization over
finite fields (squarefree split, distinct-degree split, Cantor-Zassenhaus
equal-degree split; the randomized stage is deterministically seeded from the
polynomial so runs are reproducible).
"""

from __future__ import annotations

import random

from .errors import AlgebraError, NotAUnit, UnsupportedArgument
from .rings import GaloisField, RingDescriptor, RingValue, embed


class Poly:
    """Dense univariate polynomial; coefficients low to high, no trailing
    zeros.  The zero polynomial has an empty coefficient tuple and degree -1.
    """

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring: RingDescriptor, coeffs):
        vals = [c if isinstance(c, RingValue) else ring.from_int(c)
                for c in coeffs]
        while vals and vals[-1].is_zero():
            vals.pop()
        self.ring = ring
        self.coeffs = tuple(vals)

    @classmethod
    def zero(cls, ring):
        return cls(ring, ())

    @classmethod
    def one(cls, ring):
        return cls(ring, (ring.one(),))

    @classmethod
    def x(cls, ring):
        return cls(ring, (ring.zero(), ring.one()))

    @classmethod
    def constant(cls, value: RingValue):
        return cls(value.ring, (value,))

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def lead(self) -> RingValue:
        if not self.coeffs:
            raise AlgebraError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def coeff(self, i: int) -> RingValue:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return self.ring.zero()

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def is_one(self) -> bool:
        return len(self.coeffs) == 1 and self.coeffs[0].is_one()

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1].is_one()

    def __eq__(self, other):
        return (isinstance(other, Poly) and self.ring == other.ring
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.ring, self.coeffs))

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            ctext = str(c)
            if i == 0:
                parts.append(ctext)
                continue
            power = "t" if i == 1 else f"t^{i}"
            if c.is_one():
                parts.append(power)
            elif any(ch in ctext for ch in " +*/^"):
                parts.append(f"({ctext})*{power}")
            else:
                parts.append(f"{ctext}*{power}")
        return " + ".join(parts)

    # -- arithmetic -----------------------------------------------------------
    def __add__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(self.ring, [self.coeff(i) + other.coeff(i)
                                for i in range(n)])

    def __neg__(self):
        return Poly(self.ring, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, RingValue):
            return Poly(self.ring, [c * other for c in self.coeffs])
        if self.is_zero() or other.is_zero():
            return Poly.zero(self.ring)
        out = [self.ring.zero()] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return Poly(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise UnsupportedArgument("negative power of a polynomial")
        result = Poly.one(self.ring)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def scale(self, value: RingValue) -> "Poly":
        return Poly(self.ring, [c * value for c in self.coeffs])

    def shift_up(self, k: int) -> "Poly":
        """Multiply by t^k."""
        if self.is_zero():
            return self
        return Poly(self.ring, [self.ring.zero()] * k + list(self.coeffs))

    def divmod(self, other: "Poly"):
        if other.is_zero():
            raise AlgebraError("division by the zero polynomial")
        if not other.lead().is_unit():
            raise NotAUnit("divisor needs a unit leading coefficient")
        inv_lead = other.lead().inv()
        rem = list(self.coeffs)
        dn, dd = len(rem) - 1, other.degree()
        if dn < dd:
            return Poly.zero(self.ring), self
        quot = [self.ring.zero()] * (dn - dd + 1)
        for k in range(dn - dd, -1, -1):
            c = rem[k + dd] * inv_lead
            if c.is_zero():
                continue
            quot[k] = c
            for j, b in enumerate(other.coeffs):
                rem[k + j] = rem[k + j] - c * b
        return Poly(self.ring, quot), Poly(self.ring, rem[:dd])

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        return self.scale(self.lead().inv())

    def derivative(self) -> "Poly":
        return Poly(self.ring, [self.coeffs[i] * self.ring.from_int(i)
                                for i in range(1, len(self.coeffs))])

    def evaluate(self, x: RingValue) -> RingValue:
        acc = x.ring.zero()
        for c in reversed(self.coeffs):
            acc = acc * x + embed(c, x.ring)
        return acc

    def map_coefficients(self, fn, target: RingDescriptor) -> "Poly":
        return Poly(target, [fn(c) for c in self.coeffs])

    def encoding(self) -> tuple:
        """Stable integer encoding, used for deterministic seeds and order."""
        return tuple(_value_encoding(c) for c in self.coeffs)


def _value_encoding(c: RingValue) -> int:
    raw = c.raw
    return _raw_encoding(raw, c.ring)


def _raw_encoding(raw, ring) -> int:
    if isinstance(raw, int):
        return raw
    # tuple raw: GaloisField (ints) or ArtinianLocal (nested raws)
    base = getattr(ring, "base", None)
    size = base.size if base is not None else ring.char
    acc = 0
    for part in reversed(raw):
        acc = acc * size + (_raw_encoding(part, base) if base is not None
                            else part)
    return acc


def random_poly(ring, rng, degree: int, monic: bool = False) -> Poly:
    coeffs = [ring.random(rng) for _ in range(degree + 1)]
    if monic:
        coeffs[-1] = ring.one()
    elif degree >= 0:
        coeffs[-1] = ring.random_unit(rng)
    return Poly(ring, coeffs)


# -- gcd and factorization over finite fields ----------------------------------

def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd over a field."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic() if not a.is_zero() else a


def _field_power(field) -> tuple[int, int]:
    p = field.char
    e = field.d if isinstance(field, GaloisField) else 1
    return p, e


def _pth_root(f: Poly) -> Poly:
    """Inverse Frobenius on a polynomial in x^p (over a perfect field)."""
    field = f.ring
    p, e = _field_power(field)
    coeffs = []
    for i in range(0, f.degree() + 1, p):
        c = f.coeff(i)
        coeffs.append(c ** (p ** (e - 1)))
    return Poly(field, coeffs)


def squarefree_decomposition(f: Poly) -> list[tuple[Poly, int]]:
    """Pairs (g_i, m_i) with f monic = prod g_i^{m_i}, the g_i squarefree and
    pairwise coprime."""
    p, _ = _field_power(f.ring)
    out: dict[Poly, int] = {}

    def accumulate(g: Poly, mult: int):
        if g.degree() > 0:
            out[g] = out.get(g, 0) + mult

    def run(f: Poly, e: int):
        while f.degree() > 0:
            df = f.derivative()
            if df.is_zero():
                f = _pth_root(f)
                e *= p
                continue
            g = poly_gcd(f, df)
            w = f // g
            i = 1
            while w.degree() > 0:
                y = poly_gcd(w, g)
                accumulate(w // y, i * e)
                w = y
                g = g // y
                i += 1
            if g.degree() > 0:
                run(_pth_root(g), e * p)
            return

    run(f.monic(), 1)
    merged: dict[Poly, int] = {}
    for g, m in out.items():
        merged[g] = merged.get(g, 0) + m
    return sorted(merged.items(), key=lambda it: (it[1], it[0].encoding()))


def _pow_mod(base: Poly, e: int, modulus: Poly) -> Poly:
    result = Poly.one(base.ring)
    base = base % modulus
    while e:
        if e & 1:
            result = (result * base) % modulus
        base = (base * base) % modulus
        e >>= 1
    return result


def distinct_degree_decomposition(f: Poly) -> list[tuple[Poly, int]]:
    """Pairs (g, d): g the product of the irreducible factors of degree d of
    a squarefree monic f."""
    field = f.ring
    q = field.size
    out = []
    x = Poly.x(field)
    h = x
    d = 0
    while f.degree() > 0:
        d += 1
        if 2 * d > f.degree():
            out.append((f, f.degree()))
            break
        h = _pow_mod(h, q, f)
        g = poly_gcd(h - x, f)
        if g.degree() > 0:
            out.append((g, d))
            f = f // g
            if f.degree() == 0:
                break
            h = h % f
    return out


def _equal_degree_split(f: Poly, d: int, rng) -> Poly:
    """A proper monic factor of f (squarefree, all irreducible factors of
    degree d, at least two of them)."""
    field = f.ring
    p = field.char
    q = field.size
    n = f.degree()
    while True:
        r = random_poly(field, rng, rng.randrange(1, n))
        g = poly_gcd(r, f)
        if 0 < g.degree() < n:
            return g
        if p == 2:
            _, e = _field_power(field)
            h = Poly.zero(field)
            acc = r % f
            for _ in range(e * d):
                h = h + acc
                acc = (acc * acc) % f
        else:
            h = _pow_mod(r, (q ** d - 1) // 2, f) - Poly.one(field)
        g = poly_gcd(h, f)
        if 0 < g.degree() < n:
            return g


def equal_degree_factorization(f: Poly, d: int, rng) -> list[Poly]:
    if f.degree() == d:
        return [f]
    g = _equal_degree_split(f, d, rng)
    return (equal_degree_factorization(g, d, rng)
            + equal_degree_factorization(f // g, d, rng))


def factor(f: Poly) -> tuple[RingValue, list[tuple[Poly, int]]]:
    """Full factorization over a finite field: leading unit and sorted
    (monic irreducible, multiplicity) pairs."""
    if f.is_zero():
        raise AlgebraError("cannot factor the zero polynomial")
    if not f.ring.is_field:
        raise UnsupportedArgument("factorization needs field coefficients")
    lead = f.lead()
    seed = f.ring.size
    for c in f.encoding():
        seed = seed * 1000003 + c + 1
    rng = random.Random(seed)
    factors: list[tuple[Poly, int]] = []
    for g, mult in squarefree_decomposition(f):
        for h, d in distinct_degree_decomposition(g):
            for irr in equal_degree_factorization(h, d, rng):
                factors.append((irr.monic(), mult))
    factors.sort(key=lambda it: (it[0].degree(), it[0].encoding()))
    return lead, factors


_ROOTS_CACHE: dict = {}


def roots_in(f: Poly, target_field) -> list[RingValue]:
    """All roots of f in `target_field`, sorted by the pinned integer
    encoding (smallest first), found by scanning the field."""
    key = (f.ring, f.encoding(), target_field)
    cached = _ROOTS_CACHE.get(key)
    if cached is None:
        roots = []
        for x in target_field.elements():
            if f.evaluate(x).is_zero():
                roots.append(x)
        roots.sort(key=_value_encoding)
        cached = _ROOTS_CACHE[key] = tuple(roots)
    return list(cached)


def is_irreducible(f: Poly) -> bool:
    if f.degree() <= 0:
        return False
    _, factors = factor(f)
    return len(factors) == 1 and factors[0][1] == 1 and \
        factors[0][0].degree() == f.degree()
