"""Scalar coefficient rings: prime fields, Galois fields, artinian local rings.

Every descriptor is a small immutable object that knows how to do exact
arithmetic on raw payloads; `RingValue` is a thin operator-overloading wrapper
around (descriptor, payload).  Payload conventions:

  * PrimeField(p)        -- int in [0, p)
  * GaloisField(p, d)    -- tuple of d ints, coordinates w.r.t. 1, g, ..., g^(d-1)
  * ArtinianLocal(k, m)  -- tuple of m field payloads, coordinates of e^0..e^(m-1)

The Galois generator g is pinned once per (p, d): its minimal polynomial is the
first monic polynomial x^d + c_{d-1}x^{d-1} + ... + c_0 (enumerated by the
integer sum(c_i * p^i) ascending) that is irreducible and whose root x is a
multiplicative generator.  This choice is recorded in the README; F_4 gets
x^2+x+1, F_8 gets x^3+x+1 and F_9 gets x^2+x+2.

All rings here are local: every element is a unit or nilpotent, so valuations
of Laurent series over them are well defined.
"""

from __future__ import annotations

import math

from .errors import AlgebraError, DescriptorMismatch, DivisionByNonUnit


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    k = 2
    while k * k <= n:
        if n % k == 0:
            return False
        k += 1
    return True


def _factor(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    k = 2
    while k * k <= n:
        while n % k == 0:
            out[k] = out.get(k, 0) + 1
            n //= k
        k += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


# ---------------------------------------------------------------------------
# descriptors


class RingDescriptor:
    """Base class; concrete rings implement raw-payload arithmetic."""

    kind = "abstract"
    is_field = False
    char = 0
    #: smallest L with m^L = 0 for the maximal ideal m (1 for fields)
    nil_bound = 1

    # -- payload arithmetic, provided by subclasses ------------------------
    def _add(self, a, b):
        raise NotImplementedError

    def _neg(self, a):
        raise NotImplementedError

    def _mul(self, a, b):
        raise NotImplementedError

    def _inv(self, a):
        raise NotImplementedError

    def _is_unit(self, a) -> bool:
        raise NotImplementedError

    def _is_nilpotent(self, a) -> bool:
        raise NotImplementedError

    def _zero_raw(self):
        raise NotImplementedError

    def _one_raw(self):
        raise NotImplementedError

    def _from_int_raw(self, n: int):
        raise NotImplementedError

    # -- uniform element API ----------------------------------------------
    def zero(self) -> "RingValue":
        return RingValue(self, self._zero_raw())

    def one(self) -> "RingValue":
        return RingValue(self, self._one_raw())

    def from_int(self, n: int) -> "RingValue":
        return RingValue(self, self._from_int_raw(n))

    def elements(self):
        """Iterate all elements (finite rings only)."""
        raise NotImplementedError

    def units(self):
        for x in self.elements():
            if x.is_unit():
                yield x

    def random(self, rng) -> "RingValue":
        raise NotImplementedError

    def random_unit(self, rng) -> "RingValue":
        while True:
            x = self.random(rng)
            if x.is_unit():
                return x

    def coerce(self, x) -> "RingValue":
        if isinstance(x, RingValue):
            if x.ring != self:
                raise DescriptorMismatch(f"cannot coerce {x.ring} value into {self}")
            return x
        if isinstance(x, int):
            return self.from_int(x)
        raise DescriptorMismatch(f"cannot coerce {x!r} into {self}")

    def __eq__(self, other):
        return type(self) is type(other) and self._key() == other._key()

    def __hash__(self):
        return hash((type(self).__name__, self._key()))

    def _key(self):
        raise NotImplementedError


class PrimeField(RingDescriptor):
    kind = "prime-field"
    is_field = True

    def __init__(self, p: int):
        if not _is_prime(p):
            raise AlgebraError(f"{p} is not prime")
        self.p = p
        self.char = p
        self.degree = 1
        self.size = p

    def _key(self):
        return (self.p,)

    def __repr__(self):
        return f"F{self.p}"

    def _add(self, a, b):
        return (a + b) % self.p

    def _neg(self, a):
        return (-a) % self.p

    def _mul(self, a, b):
        return (a * b) % self.p

    def _inv(self, a):
        if a % self.p == 0:
            raise DivisionByNonUnit(f"0 is not invertible in {self}")
        return pow(a, self.p - 2, self.p)

    def _is_unit(self, a):
        return a % self.p != 0

    def _is_nilpotent(self, a):
        return a % self.p == 0

    def _zero_raw(self):
        return 0

    def _one_raw(self):
        return 1 % self.p

    def _from_int_raw(self, n):
        return n % self.p

    def elements(self):
        for a in range(self.p):
            yield RingValue(self, a)

    def random(self, rng):
        return RingValue(self, rng.randrange(self.p))


_MINPOLY_CACHE: dict[tuple[int, int], tuple[int, ...]] = {}


def _poly_is_irreducible(coeffs: tuple[int, ...], p: int, d: int) -> bool:
    # x^(p^k) mod f for k = 1..d: f irreducible over F_p of degree d iff
    # x^(p^d) = x mod f and gcd-degree checks pass for proper divisors of d.
    def polymulmod(a, b):
        res = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    res[i + j] = (res[i + j] + ai * bj) % p
        # reduce by x^d = -(c_{d-1}x^{d-1}+...+c_0)
        for i in range(len(res) - 1, d - 1, -1):
            c = res[i]
            if c:
                res[i] = 0
                for j in range(d):
                    res[i - d + j] = (res[i - d + j] - c * coeffs[j]) % p
        while len(res) < d:
            res.append(0)
        return res[:d]

    def xpow(e):
        base = [0, 1] if d > 1 else [(-coeffs[0]) % p]
        while len(base) < d:
            base.append(0)
        result = [1] + [0] * (d - 1)
        while e:
            if e & 1:
                result = polymulmod(result, base)
            base = polymulmod(base, base)
            e >>= 1
        return result

    x = [0, 1] + [0] * (d - 2) if d > 1 else [(-coeffs[0]) % p]
    if xpow(p ** d) != x:
        return False
    full = list(coeffs) + [1]
    for q in _factor(d):
        # Rabin: gcd(x^(p^(d/q)) - x, f) must be constant, else f has an
        # irreducible factor whose degree divides d/q
        h = xpow(p ** (d // q))
        diff = [(hc - xc) % p for hc, xc in zip(h, x)]
        if not _fp_gcd_is_constant(diff, full, p):
            return False
    return True


def _fp_polymod(a: list, b: list, p: int) -> list:
    """a mod b over F_p; inputs low-to-high, b trimmed and nonzero."""
    a = list(a)
    inv = pow(b[-1] % p, p - 2, p)
    while len(a) >= len(b):
        c = a[-1] * inv % p
        if c:
            offset = len(a) - len(b)
            for i, bc in enumerate(b[:-1]):
                a[offset + i] = (a[offset + i] - c * bc) % p
        a.pop()
        while a and a[-1] % p == 0:
            a.pop()
    return a


def _fp_gcd_is_constant(a: list, b: list, p: int) -> bool:
    a = [c % p for c in a]
    b = [c % p for c in b]
    while a and a[-1] == 0:
        a.pop()
    while b and b[-1] == 0:
        b.pop()
    while b:
        a, b = b, _fp_polymod(a, b, p)
    return len(a) == 1


def _minpoly(p: int, d: int) -> tuple[int, ...]:
    """Pinned minimal polynomial of the F_{p^d} generator (see module docstring)."""
    key = (p, d)
    if key in _MINPOLY_CACHE:
        return _MINPOLY_CACHE[key]
    for enc in range(p ** d):
        coeffs = tuple((enc // p ** i) % p for i in range(d))
        if not _poly_is_irreducible(coeffs, p, d):
            continue
        gf = GaloisField.__new__(GaloisField)
        gf.p, gf.d, gf.minpoly = p, d, coeffs
        gf.char, gf.size, gf.degree = p, p ** d, d
        g = tuple([0, 1] + [0] * (d - 2)) if d > 1 else ((-coeffs[0]) % p,)
        order = gf.size - 1
        ok = True
        for q in _factor(order):
            if gf._pow(g, order // q) == gf._one_raw():
                ok = False
                break
        if ok:
            _MINPOLY_CACHE[key] = coeffs
            return coeffs
    raise AlgebraError(f"no primitive polynomial found for F_{p}^{d}")  # pragma: no cover


class GaloisField(RingDescriptor):
    kind = "galois-field"
    is_field = True

    def __init__(self, p: int, d: int):
        if d < 2:
            raise AlgebraError("use PrimeField for degree 1")
        self.p = p
        self.d = d
        self.char = p
        self.degree = d
        self.size = p ** d
        self.minpoly = _minpoly(p, d)

    def _key(self):
        return (self.p, self.d)

    def __repr__(self):
        return f"F{self.size}"

    def generator(self) -> "RingValue":
        return RingValue(self, tuple([0, 1] + [0] * (self.d - 2)))

    def _add(self, a, b):
        return tuple((x + y) % self.p for x, y in zip(a, b))

    def _neg(self, a):
        return tuple((-x) % self.p for x in a)

    def _mul(self, a, b):
        p, d, mp = self.p, self.d, self.minpoly
        res = [0] * (2 * d - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    res[i + j] = (res[i + j] + ai * bj) % p
        for i in range(2 * d - 2, d - 1, -1):
            c = res[i]
            if c:
                res[i] = 0
                for j in range(d):
                    res[i - d + j] = (res[i - d + j] - c * mp[j]) % p
        return tuple(res[:d])

    def _pow(self, a, e: int):
        result = self._one_raw()
        base = a
        while e:
            if e & 1:
                result = self._mul(result, base)
            base = self._mul(base, base)
            e >>= 1
        return result

    def _inv(self, a):
        if not any(a):
            raise DivisionByNonUnit(f"0 is not invertible in {self}")
        return self._pow(a, self.size - 2)

    def _is_unit(self, a):
        return any(a)

    def _is_nilpotent(self, a):
        return not any(a)

    def _zero_raw(self):
        return (0,) * self.d

    def _one_raw(self):
        return tuple([1] + [0] * (self.d - 1))

    def _from_int_raw(self, n):
        return tuple([n % self.p] + [0] * (self.d - 1))

    def elements(self):
        for enc in range(self.size):
            yield RingValue(self, tuple((enc // self.p ** i) % self.p for i in range(self.d)))

    def random(self, rng):
        return RingValue(self, tuple(rng.randrange(self.p) for _ in range(self.d)))


class ArtinianLocal(RingDescriptor):
    """k[e]/(e^m) for a finite field k; elements sum_{i<m} a_i e^i."""

    kind = "artinian-local"
    is_field = False

    def __init__(self, base: RingDescriptor, m: int):
        if not base.is_field or isinstance(base, ArtinianLocal):
            raise AlgebraError("artinian coefficients must sit over a field")
        if m < 2:
            raise AlgebraError("nilpotency order m must be at least 2")
        self.base = base
        self.m = m
        self.char = base.char
        self.nil_bound = m

    def _key(self):
        return (self.base, self.m)

    def __repr__(self):
        return f"{self.base}[e]/e^{self.m}"

    def _add(self, a, b):
        return tuple(self.base._add(x, y) for x, y in zip(a, b))

    def _neg(self, a):
        return tuple(self.base._neg(x) for x in a)

    def _mul(self, a, b):
        m, base = self.m, self.base
        res = [base._zero_raw()] * m
        for i, ai in enumerate(a):
            if base._is_unit(ai) or ai != base._zero_raw():
                for j in range(m - i):
                    res[i + j] = base._add(res[i + j], base._mul(ai, b[j]))
        return tuple(res)

    def _inv(self, a):
        if not self.base._is_unit(a[0]):
            raise DivisionByNonUnit(f"constant term of {a} is not a unit in {self}")
        # invert the unit part, then Neumann series against the nilpotent tail
        c = self.base._inv(a[0])
        zero = self.base._zero_raw()
        minus_tail = tuple(self.base._neg(self.base._mul(c, x)) if i else zero
                           for i, x in enumerate(a))
        acc = self._one_raw()
        term = self._one_raw()
        for _ in range(self.m - 1):
            term = self._mul(term, minus_tail)
            acc = self._add(acc, term)
        return tuple(self.base._mul(c, x) for x in acc)

    def _is_unit(self, a):
        return self.base._is_unit(a[0])

    def _is_nilpotent(self, a):
        return not self.base._is_unit(a[0])

    def _zero_raw(self):
        z = self.base._zero_raw()
        return (z,) * self.m

    def _one_raw(self):
        z = self.base._zero_raw()
        return tuple([self.base._one_raw()] + [z] * (self.m - 1))

    def _from_int_raw(self, n):
        z = self.base._zero_raw()
        return tuple([self.base._from_int_raw(n)] + [z] * (self.m - 1))

    def eps(self) -> "RingValue":
        z = self.base._zero_raw()
        raw = [z] * self.m
        raw[1] = self.base._one_raw()
        return RingValue(self, tuple(raw))

    def elements(self):
        def rec(i):
            if i == self.m:
                yield ()
                return
            for rest in rec(i + 1):
                for x in self.base.elements():
                    yield (x.raw,) + rest
        for raw in rec(0):
            yield RingValue(self, raw)

    def random(self, rng):
        return RingValue(self, tuple(self.base.random(rng).raw for _ in range(self.m)))


# ---------------------------------------------------------------------------
# values


class RingValue:
    __slots__ = ("ring", "raw")

    def __init__(self, ring: RingDescriptor, raw):
        self.ring = ring
        self.raw = raw

    def _lift(self, other) -> "RingValue":
        return self.ring.coerce(other)

    def __add__(self, other):
        o = self._lift(other)
        return RingValue(self.ring, self.ring._add(self.raw, o.raw))

    __radd__ = __add__

    def __neg__(self):
        return RingValue(self.ring, self.ring._neg(self.raw))

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        o = self._lift(other)
        return RingValue(self.ring, self.ring._mul(self.raw, o.raw))

    __rmul__ = __mul__

    def inv(self) -> "RingValue":
        return RingValue(self.ring, self.ring._inv(self.raw))

    def __truediv__(self, other):
        return self * self._lift(other).inv()

    def __pow__(self, e: int):
        if e < 0:
            return self.inv() ** (-e)
        result = self.ring.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def is_unit(self) -> bool:
        return self.ring._is_unit(self.raw)

    def is_nilpotent(self) -> bool:
        return self.ring._is_nilpotent(self.raw)

    def is_zero(self) -> bool:
        return self.raw == self.ring._zero_raw()

    def is_one(self) -> bool:
        return self.raw == self.ring._one_raw()

    def nilpotency_index(self):
        """Least k with self**k = 0, or math.inf for non-nilpotent elements."""
        if not self.is_nilpotent():
            return math.inf
        acc = self
        for k in range(1, self.ring.nil_bound + 1):
            if acc.is_zero():
                return k
            acc = acc * self
        return self.ring.nil_bound  # pragma: no cover (m^nil_bound = 0 by construction)

    def norm(self, sub_degree: int = 1) -> "RingValue":
        return relative_norm(self, sub_degree)

    def __eq__(self, other):
        if isinstance(other, int):
            try:
                other = self.ring.from_int(other)
            except Exception:
                return NotImplemented
        if not isinstance(other, RingValue):
            return NotImplemented
        return self.ring == other.ring and self.raw == other.raw

    def __hash__(self):
        return hash((self.ring, self.raw))

    def __repr__(self):
        return format_value(self)


# ---------------------------------------------------------------------------
# formatting (the expression printer reuses this for scalar coefficients)


def _fmt_poly(coords, sym: str, fmt_coeff, coeff_is_composite) -> str:
    terms = []
    for i, c in enumerate(coords):
        if c is None:
            continue
        body = fmt_coeff(c)
        if body == "0":
            continue
        if i == 0:
            terms.append(body)
            continue
        power = sym if i == 1 else f"{sym}^{i}"
        if body == "1":
            terms.append(power)
        elif coeff_is_composite(c):
            terms.append(f"({body})*{power}")
        else:
            terms.append(f"{body}*{power}")
    return " + ".join(terms) if terms else "0"


def format_value(x: RingValue) -> str:
    ring = x.ring
    if isinstance(ring, PrimeField):
        return str(x.raw)
    if isinstance(ring, GaloisField):
        return _fmt_poly(x.raw, "g", str, lambda c: False)
    if isinstance(ring, ArtinianLocal):
        base = ring.base

        def fmt_coeff(raw):
            return format_value(RingValue(base, raw))

        def composite(raw):
            return " + " in fmt_coeff(raw)

        return _fmt_poly(x.raw, "e", fmt_coeff, composite)
    raise AlgebraError(f"cannot format value over {ring}")  # pragma: no cover


# ---------------------------------------------------------------------------
# embeddings and norms between scalar rings

_EMBED_CACHE: dict[tuple, tuple] = {}


def _fp_solve(matrix, rhs, p):
    """Solve matrix @ x = rhs over F_p; matrix is a list of rows."""
    rows = [list(r) + [v] for r, v in zip(matrix, rhs)]
    n, m = len(rows), len(rows[0]) - 1
    piv_cols = []
    r = 0
    for c in range(m):
        piv = next((i for i in range(r, n) if rows[i][c] % p), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c], p - 2, p)
        rows[r] = [(v * inv) % p for v in rows[r]]
        for i in range(n):
            if i != r and rows[i][c] % p:
                f = rows[i][c]
                rows[i] = [(a - f * b) % p for a, b in zip(rows[i], rows[r])]
        piv_cols.append(c)
        r += 1
        if r == n:
            break
    for i in range(r, n):
        if rows[i][m] % p:
            raise AlgebraError("inconsistent linear system over F_p")
    x = [0] * m
    for i, c in enumerate(piv_cols):
        x[c] = rows[i][m]
    return x


def _field_of(desc: RingDescriptor) -> RingDescriptor:
    return desc.base if isinstance(desc, ArtinianLocal) else desc


def _field_degree(desc: RingDescriptor) -> int:
    f = _field_of(desc)
    return f.d if isinstance(f, GaloisField) else 1


def _coords(x_raw, desc) -> list[int]:
    """F_p coordinates of a field element."""
    return list(x_raw) if isinstance(desc, GaloisField) else [x_raw]


def _pinned_subfield_generator(sub: GaloisField, big: GaloisField) -> RingValue:
    """The pinned image of sub's generator inside big: the root of sub.minpoly
    with lexicographically smallest payload tuple."""
    key = ("root", sub.p, sub.d, big.d)
    if key in _EMBED_CACHE:
        return RingValue(big, _EMBED_CACHE[key])
    mp = sub.minpoly
    best = None
    for cand in big.elements():
        acc = big.zero()
        power = big.one()
        for c in mp:
            acc = acc + power * big.from_int(c)
            power = power * cand
        acc = acc + power  # monic leading term
        if acc.is_zero() and (best is None or cand.raw < best):
            best = cand.raw
    if best is None:
        raise AlgebraError(f"{sub} does not embed into {big}")
    _EMBED_CACHE[key] = best
    return RingValue(big, best)


def _field_embed(x: RingValue, target) -> RingValue:
    src, dst = x.ring, target
    if src == dst:
        return x
    if isinstance(src, PrimeField):
        if src.p != dst.char:
            raise DescriptorMismatch(f"characteristic mismatch {src} -> {dst}")
        return dst.from_int(x.raw)
    if not isinstance(dst, GaloisField) or dst.d % src.d != 0:
        raise DescriptorMismatch(f"{src} does not embed into {dst}")
    ghat = _pinned_subfield_generator(src, dst)
    acc = dst.zero()
    power = dst.one()
    for c in x.raw:
        acc = acc + power * dst.from_int(c)
        power = power * ghat
    return acc


def embed(x: RingValue, target: RingDescriptor) -> RingValue:
    """Canonical embedding between scalar rings (field into field of divisible
    degree, field into artinian, artinian into artinian of the same order m)."""
    if x.ring == target:
        return x
    if isinstance(target, ArtinianLocal):
        if isinstance(x.ring, ArtinianLocal):
            if x.ring.m != target.m:
                raise DescriptorMismatch("artinian orders differ")
            raws = tuple(_field_embed(RingValue(x.ring.base, c), target.base).raw
                         for c in x.raw)
            return RingValue(target, raws)
        lifted = _field_embed(x, target.base)
        z = target.base._zero_raw()
        return RingValue(target, tuple([lifted.raw] + [z] * (target.m - 1)))
    if isinstance(x.ring, ArtinianLocal):
        raise DescriptorMismatch("cannot embed artinian ring into a field")
    return _field_embed(x, target)


def _subfield_coords(y: RingValue, sub) -> RingValue:
    """Express y (known to lie in the pinned copy of `sub`) as a `sub` element."""
    big = y.ring
    if isinstance(sub, PrimeField):
        basis = [big.one()]
        e = 1
    else:
        ghat = _pinned_subfield_generator(sub, big)
        e = sub.d
        basis = []
        power = big.one()
        for _ in range(e):
            basis.append(power)
            power = power * ghat
    matrix = [[_coords(b.raw, big)[i] for b in basis] for i in range(big.d)]
    sol = _fp_solve(matrix, _coords(y.raw, big), big.p)
    if isinstance(sub, PrimeField):
        return RingValue(sub, sol[0])
    return RingValue(sub, tuple(sol))


def subfield_descriptor(field, degree: int):
    if degree == 1:
        return PrimeField(field.char)
    return GaloisField(field.char, degree)


def relative_norm(x: RingValue, sub_degree: int = 1) -> RingValue:
    """Norm down to the degree-`sub_degree` subfield.

    For a field value in F_{p^D} this is x^((p^D-1)/(p^e-1)) pulled back to
    F_{p^e} coordinates (with norm(0) = 0).  For an artinian value over
    F_{p^D} it is the determinant of multiplication by x on the free module
    over F_{p^e}[e]/(e^m), which restricts to the field formula.
    """
    ring = x.ring
    if isinstance(ring, ArtinianLocal):
        return _artinian_norm(x, sub_degree)
    if isinstance(ring, PrimeField):
        if sub_degree != 1:
            raise DescriptorMismatch("prime field only norms to itself")
        return x
    D = ring.d
    if D % sub_degree != 0:
        raise DescriptorMismatch(f"no degree-{sub_degree} subfield of {ring}")
    sub = subfield_descriptor(ring, sub_degree)
    if sub_degree == D:
        return x
    if x.is_zero():
        return sub.zero()
    e = (ring.size - 1) // (ring.char ** sub_degree - 1)
    y = x ** e
    return _subfield_coords(y, sub)


def _module_basis(big_field: GaloisField, rel_rank: int) -> list[RingValue]:
    g = big_field.generator()
    basis = []
    power = big_field.one()
    for _ in range(rel_rank):
        basis.append(power)
        power = power * g
    return basis


def _artinian_norm(x: RingValue, sub_degree: int) -> RingValue:
    ring = x.ring
    big = ring.base
    D = _field_degree(ring)
    if D % sub_degree != 0:
        raise DescriptorMismatch(f"no degree-{sub_degree} subfield of {ring}")
    if sub_degree == D:
        return x
    if not isinstance(big, GaloisField):
        raise DescriptorMismatch("artinian norm needs a Galois base field")
    sub_field = subfield_descriptor(big, sub_degree)
    target = ArtinianLocal(sub_field, ring.m)
    r = D // sub_degree
    basis = _module_basis(big, r)

    # F_p-linear decomposition of F_{p^D} as sub_field^r, cached per pair
    key = ("module", big.p, big.d, sub_degree)
    if key not in _EMBED_CACHE:
        if isinstance(sub_field, PrimeField):
            sub_basis = [big.one()]
        else:
            ghat = _pinned_subfield_generator(sub_field, big)
            sub_basis = []
            power = big.one()
            for _ in range(sub_degree):
                sub_basis.append(power)
                power = power * ghat
        cols = []
        for b in basis:
            for s in sub_basis:
                cols.append(_coords((s * b).raw, big))
        matrix = [[cols[j][i] for j in range(len(cols))] for i in range(big.d)]
        _EMBED_CACHE[key] = (matrix, len(sub_basis))
    matrix, e = _EMBED_CACHE[key]

    def decompose(y: RingValue) -> list[RingValue]:
        sol = _fp_solve(matrix, _coords(y.raw, big), big.p)
        out = []
        for i in range(r):
            chunk = sol[i * e:(i + 1) * e]
            out.append(RingValue(sub_field, chunk[0] if e == 1 else tuple(chunk)))
        return out

    # matrix of multiplication by x over the target ring, in basis `basis`
    rows = [[None] * r for _ in range(r)]
    for j, b in enumerate(basis):
        xb = x * embed(b, ring)
        for slot in range(r):
            rows[slot][j] = target.zero()
        for k in range(ring.m):
            piece = RingValue(big, xb.raw[k])
            for slot, coord in enumerate(decompose(piece)):
                z = sub_field._zero_raw()
                raw = [z] * ring.m
                raw[k] = coord.raw
                rows[slot][j] = rows[slot][j] + RingValue(target, tuple(raw))
    return _det_small(rows, target)


def _det_small(rows, ring) -> RingValue:
    n = len(rows)
    if n == 1:
        return rows[0][0]
    acc = ring.zero()
    for j in range(n):
        minor = [[rows[i][k] for k in range(n) if k != j] for i in range(1, n)]
        term = rows[0][j] * _det_small(minor, ring)
        acc = acc + term if j % 2 == 0 else acc - term
    return acc


def frobenius_conjugate_product(x: RingValue, sub_degree: int = 1) -> RingValue:
    """Independent norm oracle: product of x^(q^i) over the Galois orbit,
    q = p^sub_degree.  Returns a value still expressed in the big field."""
    ring = x.ring
    q = ring.char ** sub_degree
    r = _field_degree(ring) // sub_degree
    acc = ring.one()
    y = x
    for _ in range(r):
        acc = acc * y
        y = y ** q
    return acc
