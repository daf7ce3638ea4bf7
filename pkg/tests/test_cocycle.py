import random

import pytest
from hypothesis import given, strategies as st

from ccsym.cocycle import (Cocycle2, bicharacter_cocycle, coboundary,
                           extension_commutator, homs_to_cyclic,
                           random_cocycle, trivial_cocycle)
from ccsym.errors import InvalidCocycle, NonCommutingPair
from ccsym.groups import (cyclic, dicyclic, dihedral, direct_product,
                          group_catalog)
from ccsym.rings import ArtinianLocal, GaloisField, PrimeField

F3, F5 = PrimeField(3), PrimeField(5)
RINGS = [F3, F5, GaloisField(2, 2), ArtinianLocal(F5, 2)]


class TestValidation:
    def test_trivial_is_valid(self):
        trivial_cocycle(cyclic(4), F5)._validate()

    def test_nontrivial_class_on_c2(self):
        # sigma(1,1) = 2 (a nonsquare mod 5) is a valid cocycle whose class
        # in H^2(C2, F5*) is nontrivial
        tbl = [[F5.one(), F5.one()], [F5.one(), F5.from_int(2)]]
        Cocycle2(cyclic(2), tbl)

    def test_broken_identity_rejected(self):
        bad = [[F5.from_int(2), F5.one()], [F5.one(), F5.one()]]
        with pytest.raises(InvalidCocycle):
            Cocycle2(cyclic(2), bad)

    def test_non_unit_value_rejected(self):
        tbl = [[F5.one(), F5.one()], [F5.one(), F5.zero()]]
        with pytest.raises(InvalidCocycle):
            Cocycle2(cyclic(2), tbl)

    def test_non_hom_grading_rejected(self):
        with pytest.raises(InvalidCocycle):
            trivial_cocycle(cyclic(3), F5, grading=(0, 1, 0))._validate()

    def test_random_cocycles_are_valid(self):
        rng = random.Random(5)
        for k, (_, g) in enumerate(group_catalog(max_order=8)):
            sigma = random_cocycle(g, RINGS[k % len(RINGS)], rng)
            Cocycle2(g, sigma.table)   # full validation


class TestCommutatorPairing:
    def test_requires_commuting_elements(self):
        d4 = dihedral(4)
        sigma = trivial_cocycle(d4, F5)
        noncomm = next((i, j) for i in d4.elements() for j in d4.elements()
                       if not d4.commutes(i, j))
        with pytest.raises(NonCommutingPair):
            sigma.commutator(*noncomm)

    def test_grading_sign(self):
        c2 = cyclic(2)
        sigma = trivial_cocycle(c2, F5, grading=(0, 1))
        assert sigma.commutator(1, 1) == F5.from_int(-1)
        assert sigma.commutator(0, 1).is_one()
        ungraded = trivial_cocycle(c2, F5)
        assert ungraded.commutator(1, 1).is_one()

    def test_coboundary_invariance_catalog(self):
        rng = random.Random(7)
        for k, (name, g) in enumerate(group_catalog()):
            ring = RINGS[k % len(RINGS)]
            sigma = random_cocycle(g, ring, rng)
            beta = [ring.random_unit(rng) for _ in range(g.n)]
            shifted = sigma.with_coboundary(beta)
            pairs = [(i, j) for i in g.elements() for j in g.elements()
                     if g.commutes(i, j)]
            for i, j in random.Random(k).choices(pairs, k=min(10, len(pairs))):
                assert shifted.commutator(i, j) == sigma.commutator(i, j), \
                    (name, i, j)

    def test_extension_group_oracle_catalog(self):
        rng = random.Random(9)
        for k, (name, g) in enumerate(group_catalog()):
            ring = RINGS[(k + 1) % len(RINGS)]
            sigma = random_cocycle(g, ring, rng)
            pairs = [(i, j) for i in g.elements() for j in g.elements()
                     if g.commutes(i, j)]
            for i, j in random.Random(k).choices(pairs, k=min(8, len(pairs))):
                assert extension_commutator(sigma, i, j) == \
                    sigma.commutator(i, j), (name, i, j)

    def test_bilinearity_on_commuting_triples(self):
        rng = random.Random(13)
        for k, (name, g) in enumerate(group_catalog()):
            ring = RINGS[k % len(RINGS)]
            sigma = random_cocycle(g, ring, rng)
            found = 0
            for _ in range(60):
                i, j, l = (rng.randrange(g.n) for _ in range(3))
                ij = g.mul(i, j)
                if not (g.commutes(i, l) and g.commutes(j, l)
                        and g.commutes(ij, l)):
                    continue
                assert sigma.commutator(ij, l) == \
                    sigma.commutator(i, l) * sigma.commutator(j, l), \
                    (name, i, j, l)
                found += 1
            assert found > 0

    def test_pairing_antisymmetric(self):
        rng = random.Random(17)
        g = direct_product(cyclic(4), cyclic(2))
        sigma = random_cocycle(g, F5, rng)
        for i in g.elements():
            for j in g.elements():
                assert (sigma.commutator(i, j) * sigma.commutator(j, i)).is_one()


class TestBicharacters:
    def test_hom_count_elementary_abelian(self):
        v = direct_product(cyclic(2), cyclic(2))
        assert len(homs_to_cyclic(v, 2)) == 4

    def test_hom_count_with_commutators_killed(self):
        q8 = dicyclic(2)
        # abelianization of Q8 is C2 x C2
        assert len(homs_to_cyclic(q8, 2)) == 4
        assert len(homs_to_cyclic(q8, 3)) == 1

    def test_bicharacter_is_cocycle(self):
        g = direct_product(cyclic(2), cyclic(2))
        homs = [h for h in homs_to_cyclic(g, 2) if any(h)]
        omega = F5.from_int(-1)
        sigma = bicharacter_cocycle(g, homs[0], homs[1], omega)
        Cocycle2(g, sigma.table)

    def test_coboundary_constructor(self):
        g = cyclic(6)
        rng = random.Random(3)
        beta = [F5.random_unit(rng) for _ in range(g.n)]
        sigma = coboundary(g, beta)
        Cocycle2(g, sigma.table)
        # trivial class: every commutator pairing is 1
        for i in g.elements():
            for j in g.elements():
                assert sigma.commutator(i, j).is_one()


@given(st.integers(min_value=0, max_value=500))
def test_pairing_depends_only_on_class(seed):
    rng = random.Random(seed)
    cat = group_catalog(max_order=12)
    _, g = cat[seed % len(cat)]
    ring = RINGS[seed % len(RINGS)]
    sigma = random_cocycle(g, ring, rng)
    beta = [ring.random_unit(rng) for _ in range(g.n)]
    shifted = sigma.with_coboundary(beta)
    i = rng.randrange(g.n)
    j = rng.randrange(g.n)
    if g.commutes(i, j):
        assert shifted.commutator(i, j) == sigma.commutator(i, j)
