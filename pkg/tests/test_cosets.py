from fractions import Fraction

import pytest

from modmult.cosets import (CuspDatum, NonPositiveArea, Signature,
                            area_constant_c, coset_action,
                            signature_from_action, subgroup_signature)
from modmult.dimensions import dims, quasi_period
from modmult.sl2 import SubgroupSpec, enumerate_sl2, realize


def group(kind, n):
    return realize(SubgroupSpec(kind, n))


def compose(p, q):
    # permutation acting after q then p... here: apply q, then p
    return tuple(p[q[i]] for i in range(len(q)))


class TestCosetAction:
    def test_trivial_level(self):
        act = coset_action(group("full", 1))
        assert act.size == 1
        assert act.sigma_S == act.sigma_T == (0,)

    def test_gamma0_5(self):
        act = coset_action(group("gamma0", 5))
        assert act.size == 6
        assert sum(1 for i, j in enumerate(act.sigma_S) if i == j) == 2

    def test_gamma1_4(self):
        act = coset_action(group("gamma1", 4))
        assert act.size == 6
        cycles = cycle_lengths(act.sigma_T)
        assert sorted(cycles) == [1, 1, 4]
        assert act.sl_sigma_T is not None
        assert len(act.sl_sigma_T) == 12

    @pytest.mark.parametrize("kind,n", [("gamma0", 11), ("gamma1", 5),
                                        ("gamma", 3), ("gamma0", 24)])
    def test_projective_relations(self, kind, n):
        act = coset_action(group(kind, n))
        ident = tuple(range(act.size))
        assert compose(act.sigma_S, act.sigma_S) == ident
        st3 = compose(act.sigma_ST, compose(act.sigma_ST, act.sigma_ST))
        assert st3 == ident


def cycle_lengths(perm):
    seen, out = set(), []
    for i in range(len(perm)):
        if i in seen:
            continue
        x, n = i, 0
        while x not in seen:
            seen.add(x)
            x = perm[x]
            n += 1
        out.append(n)
    return out


class TestSignatures:
    def test_sl2z(self):
        sig = subgroup_signature(group("full", 1))
        assert (sig.genus, sig.nu2, sig.nu3, sig.t, sig.mu_proj) == (0, 1, 1, 1, 1)
        assert sig.minus_I
        assert sig.cusps == (CuspDatum(1, True),)

    def test_gamma0_11(self):
        sig = subgroup_signature(group("gamma0", 11))
        assert sig.genus == 1
        assert sig.elliptic_orders == ()
        assert sig.t == 2
        assert sig.mu_proj == 12

    def test_gamma1_4(self):
        sig = subgroup_signature(group("gamma1", 4))
        assert sig.genus == 0
        assert sig.elliptic_orders == ()
        assert sorted((c.width, c.regular) for c in sig.cusps) == \
            [(1, False), (1, True), (4, True)]
        assert sig.mu_proj == 6
        assert not sig.minus_I

    def test_gamma_2(self):
        sig = subgroup_signature(group("gamma", 2))
        assert sig.genus == 0
        assert sig.elliptic_orders == ()
        assert [c.width for c in sig.cusps] == [2, 2, 2]
        assert sig.mu_proj == 6
        assert sig.minus_I


class TestAreaConstant:
    def test_examples(self):
        assert area_constant_c(subgroup_signature(group("full", 1))) == Fraction(1, 12)
        assert area_constant_c(subgroup_signature(group("gamma0", 5))) == Fraction(1, 2)
        assert area_constant_c(subgroup_signature(group("gamma", 2))) == Fraction(1, 2)

    def test_nonpositive_area(self):
        # a torus signature has zero area
        sig = Signature(genus=1, elliptic_orders=(), cusps=(), minus_I=True)
        with pytest.raises(NonPositiveArea):
            area_constant_c(sig)


class TestFamilyInvariants:
    @pytest.mark.parametrize("kind", ["gamma0", "gamma1", "gamma"])
    @pytest.mark.parametrize("n", range(1, 26))
    def test_pipeline_consistency(self, kind, n):
        if kind == "gamma" and n > 12:
            return  # keep the suite quick; lower levels already cover it
        sig = subgroup_signature(group(kind, n))
        assert sig.genus >= 0
        assert sum(c.width for c in sig.cusps) == sig.mu_proj
        if not sig.minus_I:
            assert sig.nu2 == 0
        else:
            assert all(c.regular for c in sig.cusps)
        assert sig.mu_sl == (sig.mu_proj if sig.minus_I else 2 * sig.mu_proj)

    @pytest.mark.parametrize("n", range(5, 26))
    def test_gamma1_regular_above_4(self, n):
        sig = subgroup_signature(group("gamma1", n))
        assert all(c.regular for c in sig.cusps)

    @pytest.mark.parametrize("n", [2, 3, 5, 7, 8, 11])
    def test_area_multiplicative_in_covering_degree(self, n):
        sig0 = subgroup_signature(group("gamma0", n))
        sig1 = subgroup_signature(group("gamma1", n))
        degree = Fraction(sig1.mu_proj, sig0.mu_proj)
        assert area_constant_c(sig1) == area_constant_c(sig0) * degree

    @pytest.mark.parametrize("kind,n", [("full", 1), ("gamma0", 5),
                                        ("gamma1", 4), ("gamma", 2),
                                        ("gamma0", 11)])
    def test_finite_k_slope_equals_c(self, kind, n):
        sig = subgroup_signature(group(kind, n))
        c = area_constant_c(sig)
        P = quasi_period(sig)
        for k in range(4, 4 + 2 * P, 2):
            diff = dims(sig, k + P).dim_M - dims(sig, k).dim_M
            assert Fraction(diff, P) == c
