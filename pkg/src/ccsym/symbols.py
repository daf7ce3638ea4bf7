"""Tame, Contou-Carrere, and higher symbols on iterated Laurent rings.

The Contou-Carrere symbol of two units of A((t)) is computed through the
canonical factorization and a finite pairing table on elementary factors
(writing T for the uniformizer t, C_a for a constant unit a, P_i(a) for
1 - a t^i with i > 0, and N_j(b) for 1 - b t^-j with j > 0, b nilpotent):

    (T, T)           = -1
    (C_a, T)         = a            (T, C_b)        = b^-1
    (P_i(a), N_j(b)) = (1 - a^(j/d) b^(i/d))^d,     d = gcd(i, j)
    (N_j(b), P_i(a)) = (1 - b^(i/d) a^(j/d))^-d
    every other combination = 1

extended bimultiplicatively.  Over a field base no N factors exist and the
symbol collapses to the tame symbol.

Higher symbols of n+1 arguments on A((t1))...((tn)) follow the
`boundary-composite/v1` orientation: expand every argument into elementary
factors of the outermost variable, use multilinearity, kill terms with no
uniformizer (an all-units tuple has trivial boundary) or with a P factor
(its reduction is 1), merge repeated uniformizers through (t, t) = (-1, t)
with one sign flip per adjacent transposition, move the surviving uniformizer
last, and recurse on the reduced tuple one level down.  The base case of the
recursion is the Contou-Carrere symbol.  No global sign is applied on top of
the transposition bookkeeping.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import (DescriptorMismatch, NotAUnit, PrecisionExhausted,
                     UnsupportedArgument)
from .laurent import LaurentRing, LaurentSeries, reduce_mod_t, unit_decompose

CONVENTION = "boundary-composite/v1"


def _common_ring(*series):
    ring = None
    for s in series:
        if isinstance(s, LaurentSeries):
            if ring is None:
                ring = s.ring
            elif s.ring != ring:
                raise DescriptorMismatch("symbol arguments live in different rings")
    if ring is None:
        raise DescriptorMismatch("symbol needs at least one Laurent series argument")
    return ring


def _sign_value(ring_base, parity: int):
    return ring_base.from_int(-1) if parity % 2 else ring_base.one()


def tame_symbol(f, g):
    """(-1)^(v(f)v(g)) * (f^v(g) / g^v(f)) evaluated at t = 0.

    Defined whenever the quotient is regular at 0 (always over a field base);
    NotRegular signals a nilpotent pole that only the Contou-Carrere symbol
    can absorb.
    """
    ring = _common_ring(f, g)
    f, g = ring.coerce(f), ring.coerce(g)
    nu_f, nu_g = f.valuation(), g.valuation()
    prod = (f ** nu_g) * (g ** (-nu_f))
    value = reduce_mod_t(prod)
    return _sign_value(ring.base, nu_f * nu_g) * value


def _pair_factors(kind_a, payload_a, kind_b, payload_b, base):
    """Pairing table on elementary factors; returns a unit of `base`."""
    if kind_a == "uniformizer" and kind_b == "uniformizer":
        return _sign_value(base, payload_a * payload_b)
    if kind_a == "constant" and kind_b == "uniformizer":
        return payload_a ** payload_b
    if kind_a == "uniformizer" and kind_b == "constant":
        return payload_b ** (-payload_a)
    if kind_a == "positive" and kind_b == "negative":
        i, a = payload_a
        j, b = payload_b
        d = math.gcd(i, j)
        return (base.one() - a ** (j // d) * b ** (i // d)) ** d
    if kind_a == "negative" and kind_b == "positive":
        j, b = payload_a
        i, a = payload_b
        d = math.gcd(i, j)
        return (base.one() - b ** (i // d) * a ** (j // d)) ** (-d)
    return base.one()


def _decomposition_atoms(dec):
    """Elementary factors as (kind, payload); negative indices normalized."""
    atoms = []
    if dec.nu:
        atoms.append(("uniformizer", dec.nu))
    if not dec.lead.is_one():
        atoms.append(("constant", dec.lead))
    for i in sorted(dec.pos):
        atoms.append(("positive", (i, dec.pos[i])))
    for i in sorted(dec.neg, reverse=True):
        atoms.append(("negative", (-i, dec.neg[i])))
    return atoms


def cc_symbol(f, g):
    """Contou-Carrere symbol of two units of A((t)), valued in A.

    Over a field base this equals the tame symbol and is computed directly
    from leading coefficients.  Over a base with nilpotents the canonical
    factorizations of both arguments are paired factor by factor; positive
    factors are only needed up to (L-1)*J + 1 where L bounds nilpotency and
    J is the deepest pole on the other side, so the computation is finite.
    PrecisionExhausted signals that a truncated argument does not determine
    the factors that the other argument's poles can see.
    """
    ring = _common_ring(f, g)
    f, g = ring.coerce(f), ring.coerce(g)
    if not f.is_unit() or not g.is_unit():
        raise NotAUnit("Contou-Carrere symbol needs unit arguments")
    base = ring.base
    L = ring.nil_bound
    nu_f, nu_g = f.valuation(), g.valuation()
    if L == 1:
        # field-like coefficients: no nilpotent tails, symbol = tame formula
        a = f.coeffs[nu_f]
        b = g.coeffs[nu_g]
        return (_sign_value(base, nu_f * nu_g) * (a ** nu_g)) * (b ** (-nu_f))
    probe_f = unit_decompose(f, positive_cutoff=1)
    probe_g = unit_decompose(g, positive_cutoff=1)
    j_f = probe_f.max_pole()
    j_g = probe_g.max_pole()
    cut_f = (L - 1) * j_g + 1
    cut_g = (L - 1) * j_f + 1
    for x, nu, cut in ((f, nu_f, cut_f), (g, nu_g, cut_g)):
        if x.prec is not None and nu + cut > x.prec:
            raise PrecisionExhausted(
                f"need {x!r} modulo t^{nu + cut} to pair against the other "
                f"argument's poles")
    dec_f = unit_decompose(f, positive_cutoff=cut_f)
    dec_g = unit_decompose(g, positive_cutoff=cut_g)
    out = base.one()
    for kind_a, payload_a in _decomposition_atoms(dec_f):
        for kind_b, payload_b in _decomposition_atoms(dec_g):
            out = out * _pair_factors(kind_a, payload_a, kind_b, payload_b, base)
    return out


@dataclass(frozen=True)
class SymbolTerm:
    """One term of the multilinear expansion of a higher symbol.

    `atoms` holds one elementary factor per argument slot, tagged like
    UnitDecomposition.factors(); `exponent` is the product of the chosen
    uniformizer multiplicities.
    """
    exponent: int
    atoms: tuple


def steinberg_expand(args, keep_trivial=False):
    """Multilinear expansion of a higher-symbol tuple in its outermost
    variable.

    Every argument is factored as t^nu * lead * prod(1 - a_i t^i); choosing
    one factor per slot and multiplying the choices' multiplicities gives the
    terms.  Terms that provably evaluate to 1 (no uniformizer chosen, or any
    1 - a t^i factor chosen, whose reduction at t = 0 is 1) are dropped
    unless keep_trivial is set.  Negative factors in the expansion variable
    are outside the supported domain of higher symbols.
    """
    ring = _common_ring(*args)
    args = [ring.coerce(a) for a in args]
    decs = []
    for a in args:
        dec = unit_decompose(a, positive_cutoff=1 if not keep_trivial else None)
        if dec.neg:
            raise UnsupportedArgument(
                "argument has a nilpotent pole in a non-innermost variable; "
                "higher symbols are only defined without such poles")
        decs.append(dec)
    choices = []
    for dec in decs:
        opts = []
        if dec.nu:
            opts.append((dec.nu, ("uniformizer", dec.nu)))
        opts.append((1, ("constant", dec.lead)))
        if keep_trivial:
            for i in sorted(dec.pos):
                opts.append((1, ("positive", (i, dec.pos[i]))))
        choices.append(opts)
    terms = []
    stack = [(0, 1, [])]
    while stack:
        k, mult, picked = stack.pop()
        if k == len(choices):
            atoms = tuple(picked)
            has_uniformizer = any(kind == "uniformizer" for kind, _ in atoms)
            has_positive = any(kind == "positive" for kind, _ in atoms)
            if keep_trivial or (has_uniformizer and not has_positive):
                terms.append(SymbolTerm(mult, atoms))
            continue
        for m, atom in choices[k]:
            stack.append((k + 1, mult * m, picked + [atom]))
    return terms


def _evaluate_term(term: SymbolTerm, ring: LaurentRing):
    """Merge uniformizers, move the survivor last, reduce, recurse."""
    atoms = list(term.atoms)
    positions = [k for k, (kind, _) in enumerate(atoms) if kind == "uniformizer"]
    swaps = 0
    lower = ring.base
    while len(positions) >= 2:
        i, j = positions[-2], positions[-1]
        swaps += (j - 1) - i
        atom = atoms.pop(i)
        atoms.insert(j - 1, atom)
        atoms[j - 1] = ("constant", lower.from_int(-1))
        positions = positions[:-2] + [j]
    i = positions[0]
    swaps += (len(atoms) - 1) - i
    atoms.append(atoms.pop(i))
    reduced = []
    for kind, payload in atoms[:-1]:
        if kind == "constant":
            reduced.append(payload)
        elif kind == "positive":
            reduced.append(lower.one() if isinstance(lower, LaurentRing)
                           else lower.one())
        else:  # pragma: no cover
            raise UnsupportedArgument(f"cannot reduce factor {kind}")
    sign = -1 if swaps % 2 else 1
    value = higher_symbol(reduced)
    return value ** (sign * term.exponent)


def higher_symbol(args):
    """Higher symbol of n+1 units on an n-fold iterated Laurent ring.

    Orientation: `boundary-composite/v1` (see module docstring).  With two
    arguments this is exactly the Contou-Carrere symbol.
    """
    ring = _common_ring(*args)
    args = [ring.coerce(a) for a in args]
    if not isinstance(ring, LaurentRing):
        raise DescriptorMismatch("higher symbols need Laurent series arguments")
    depth = ring.depth()
    if len(args) != depth + 1:
        raise UnsupportedArgument(
            f"{depth}-fold iterated Laurent ring pairs {depth + 1} arguments, "
            f"got {len(args)}")
    for a in args:
        if not a.is_unit():
            raise NotAUnit("higher symbol needs unit arguments")
    if depth == 1:
        return cc_symbol(args[0], args[1])
    scalar_ring = ring
    while isinstance(scalar_ring, LaurentRing):
        scalar_ring = scalar_ring.base
    out = scalar_ring.one()
    for term in steinberg_expand(args):
        out = out * _evaluate_term(term, ring)
    return out


def higher_tame(args):
    """Higher symbol over a field base (all coefficients invertible)."""
    return higher_symbol(args)


def higher_cc(args):
    """Higher symbol over an artinian local base; nilpotent poles are only
    supported in the innermost variable."""
    return higher_symbol(args)
