"""Fuchsian signatures of preimages in SL2(Z) of subgroups K of SL2(Z/N),
computed from the permutation action of S and T on cosets, including
regular/irregular cusp classification and the area constant c.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .sl2 import (FiniteSubgroup, Mat, S_MAT, T_MAT, identity_mat, mat_mul,
                  minus_identity, reduce_mat, sl2_group_order)


class NonIntegralGenus(Exception):
    """Internal inconsistency: the Euler-characteristic genus is not a
    non-negative integer.  Must never fire on pipeline-produced actions."""


class NonPositiveArea(ValueError):
    pass


@dataclass(frozen=True)
class PermutationAction:
    """Right-multiplication action of S and T on cosets of K in SL2(Z/N)."""

    size: int                      # number of projective cosets
    sigma_S: tuple[int, ...]
    sigma_T: tuple[int, ...]
    sigma_ST: tuple[int, ...]
    sl_sigma_T: tuple[int, ...] | None   # only when -I not in K
    sl_to_proj: tuple[int, ...] | None
    minus_I: bool
    sl_size: int


@dataclass(frozen=True)
class CuspDatum:
    width: int
    regular: bool


@dataclass(frozen=True)
class Signature:
    """Geometric data of a Fuchsian group of the first kind.

    mu_proj / mu_sl are indices in PSL2(Z) / SL2(Z) when the signature comes
    from the congruence pipeline; user-supplied signatures may leave them None.
    """

    genus: int
    elliptic_orders: tuple[int, ...]
    cusps: tuple[CuspDatum, ...]
    minus_I: bool
    mu_proj: int | None = None
    mu_sl: int | None = None

    @property
    def nu2(self) -> int:
        return sum(1 for e in self.elliptic_orders if e == 2)

    @property
    def nu3(self) -> int:
        return sum(1 for e in self.elliptic_orders if e == 3)

    @property
    def t(self) -> int:
        return len(self.cusps)

    @property
    def eps_reg(self) -> int:
        return sum(1 for c in self.cusps if c.regular)

    @property
    def eps_irr(self) -> int:
        return sum(1 for c in self.cusps if not c.regular)

    def __post_init__(self):
        if self.genus < 0:
            raise ValueError("genus must be non-negative")
        if any(e < 2 for e in self.elliptic_orders):
            raise ValueError("elliptic orders must be >= 2")
        if self.minus_I and any(not c.regular for c in self.cusps):
            raise ValueError("irregular cusps require -I absent")


def _coset_table(subgroup: frozenset, n: int):
    """Right cosets H\\G explored by right multiplication by S and T.

    Returns (reps, elt_to_coset); works because S, T generate SL2(Z/N).
    """
    ident = identity_mat(n)
    elt_to_coset: dict[Mat, int] = {}
    reps = [ident]
    for h in subgroup:
        elt_to_coset[mat_mul(h, ident, n)] = 0
    queue = [0]
    while queue:
        i = queue.pop()
        for g in (S_MAT, T_MAT):
            img = mat_mul(reps[i], reduce_mat(g, n), n)
            if img not in elt_to_coset:
                idx = len(reps)
                reps.append(img)
                for h in subgroup:
                    elt_to_coset[mat_mul(h, img, n)] = idx
                queue.append(idx)
    return reps, elt_to_coset


def _perm(reps, elt_to_coset, g: Mat, n: int) -> tuple[int, ...]:
    return tuple(elt_to_coset[mat_mul(r, g, n)] for r in reps)


def coset_action(K: FiniteSubgroup) -> PermutationAction:
    """Permutations of S, T and ST on projective cosets of K, plus the
    SL-level T-permutation when -I is not in K."""
    n = K.level
    minus_i = K.contains_minus_I
    s = reduce_mat(S_MAT, n)
    t = reduce_mat(T_MAT, n)
    st = mat_mul(s, t, n)

    if minus_i:
        kp = K.element_set
    else:
        mi = minus_identity(n)
        kp = K.element_set | frozenset(mat_mul(mi, x, n) for x in K.elements)

    proj_reps, proj_lut = _coset_table(kp, n)
    sigma_S = _perm(proj_reps, proj_lut, s, n)
    sigma_T = _perm(proj_reps, proj_lut, t, n)
    sigma_ST = _perm(proj_reps, proj_lut, st, n)

    sl_sigma_T = sl_to_proj = None
    sl_size = sl2_group_order(n) // K.order
    if not minus_i:
        sl_reps, sl_lut = _coset_table(K.element_set, n)
        sl_sigma_T = _perm(sl_reps, sl_lut, t, n)
        sl_to_proj = tuple(proj_lut[r] for r in sl_reps)

    return PermutationAction(
        size=len(proj_reps), sigma_S=sigma_S, sigma_T=sigma_T,
        sigma_ST=sigma_ST, sl_sigma_T=sl_sigma_T, sl_to_proj=sl_to_proj,
        minus_I=minus_i, sl_size=sl_size,
    )


def _cycles(perm: tuple[int, ...]):
    seen = [False] * len(perm)
    out = []
    for i in range(len(perm)):
        if seen[i]:
            continue
        cyc = []
        x = i
        while not seen[x]:
            seen[x] = True
            cyc.append(x)
            x = perm[x]
        out.append(cyc)
    return out


def signature_from_action(act: PermutationAction, K: FiniteSubgroup) -> Signature:
    """Signature of the preimage in SL2(Z) of K."""
    nu2 = sum(1 for i, j in enumerate(act.sigma_S) if i == j)
    nu3 = sum(1 for i, j in enumerate(act.sigma_ST) if i == j)
    t_cycles = _cycles(act.sigma_T)

    cusps = []
    for cyc in sorted(t_cycles, key=lambda c: (len(c), c)):
        width = len(cyc)
        regular = True
        if not act.minus_I:
            # regular iff the SL-level preimage splits into two width-cycles
            start = act.sl_to_proj.index(cyc[0])
            x = start
            for _ in range(width):
                x = act.sl_sigma_T[x]
            regular = (x == start)
        cusps.append(CuspDatum(width=width, regular=regular))

    mu = act.size
    t = len(cusps)
    g = Fraction(1) + Fraction(mu, 12) - Fraction(nu2, 4) - Fraction(nu3, 3) - Fraction(t, 2)
    if g.denominator != 1 or g < 0:
        raise NonIntegralGenus(f"genus {g} from mu={mu}, nu2={nu2}, nu3={nu3}, t={t}")

    return Signature(
        genus=int(g),
        elliptic_orders=(2,) * nu2 + (3,) * nu3,
        cusps=tuple(cusps),
        minus_I=act.minus_I,
        mu_proj=mu,
        mu_sl=act.sl_size,
    )


def subgroup_signature(K: FiniteSubgroup) -> Signature:
    return signature_from_action(coset_action(K), K)


def area_constant_c(sig: Signature) -> Fraction:
    """c = area(Gamma\\H)/4pi via Gauss-Bonnet, as an exact rational."""
    c = Fraction(1, 2) * (2 * sig.genus - 2 + sig.t
                          + sum(Fraction(e - 1, e) for e in sig.elliptic_orders))
    if c <= 0:
        raise NonPositiveArea(f"signature has non-positive area: c = {c}")
    return c
