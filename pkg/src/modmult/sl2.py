"""Finite matrix groups mod N: enumeration of SL2(Z/N), realization of the
classical congruence families, and quotient groups Gamma/Gamma1 with their
conjugacy classes, cyclic subgroups and Galois power-maps.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from math import gcd, lcm

Mat = tuple[int, int, int, int]

DEFAULT_LEVEL_CAP = 30


class LevelTooLarge(ValueError):
    pass


class NotAGroup(ValueError):
    pass


class NotASubgroup(ValueError):
    pass


class NotNormal(ValueError):
    pass


def mat_mul(x: Mat, y: Mat, n: int) -> Mat:
    a, b, c, d = x
    e, f, g, h = y
    return ((a * e + b * g) % n, (a * f + b * h) % n,
            (c * e + d * g) % n, (c * f + d * h) % n)


def mat_inv(x: Mat, n: int) -> Mat:
    a, b, c, d = x
    return (d % n, (-b) % n, (-c) % n, a % n)


def identity_mat(n: int) -> Mat:
    return (1 % n, 0, 0, 1 % n)


def minus_identity(n: int) -> Mat:
    return ((-1) % n, 0, 0, (-1) % n)


S_MAT: Mat = (0, -1, 1, 0)
T_MAT: Mat = (1, 1, 0, 1)


def reduce_mat(x, n: int) -> Mat:
    a, b, c, d = x
    m = (a % n, b % n, c % n, d % n)
    if (m[0] * m[3] - m[1] * m[2]) % n != 1 % n:
        raise NotAGroup(f"matrix {x} has determinant != 1 mod {n}")
    return m


def sl2_group_order(n: int) -> int:
    if n == 1:
        return 1
    order = n ** 3
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            order = order // (p * p) * (p * p - 1)
            while m % p == 0:
                m //= p
        p += 1
    if m > 1:
        order = order // (m * m) * (m * m - 1)
    return order


@dataclass(frozen=True)
class FiniteSubgroup:
    """A subgroup of SL2(Z/N) given by its full (sorted) element list."""

    level: int
    elements: tuple[Mat, ...]

    @cached_property
    def element_set(self) -> frozenset:
        return frozenset(self.elements)

    @cached_property
    def contains_minus_I(self) -> bool:
        return minus_identity(self.level) in self.element_set

    @property
    def order(self) -> int:
        return len(self.elements)


@lru_cache(maxsize=None)
def _sl2_elements(n: int) -> tuple[Mat, ...]:
    if n == 1:
        return ((0, 0, 0, 0),)
    out = []
    for a in range(n):
        g = gcd(a, n)
        for b in range(n):
            for c in range(n):
                m = (1 + b * c) % n
                if m % g:
                    continue
                step = n // g
                d0 = (m // g) * pow(a // g, -1, step) % step if step > 1 else 0
                for t in range(g):
                    out.append((a, b, c, d0 + t * step))
    out.sort()
    return tuple(out)


def enumerate_sl2(n: int, level_cap: int = DEFAULT_LEVEL_CAP) -> FiniteSubgroup:
    """All of SL2(Z/N)."""
    if n < 1:
        raise ValueError("level must be positive")
    if n > level_cap:
        raise LevelTooLarge(f"level {n} exceeds cap {level_cap}")
    return FiniteSubgroup(n, _sl2_elements(n))


@dataclass(frozen=True)
class SubgroupSpec:
    """Specification of a finite-index subgroup of SL2(Z) by congruence data.

    kind is one of "full" (all of SL2(Z)), "gamma0", "gamma1", "gamma"
    (principal), or "custom" (generated closure of explicit matrices).
    """

    kind: str
    level: int = 1
    generators: tuple[Mat, ...] = ()

    def __post_init__(self):
        if self.kind not in ("full", "gamma0", "gamma1", "gamma", "custom"):
            raise ValueError(f"unknown subgroup kind {self.kind!r}")
        if self.level < 1:
            raise ValueError("level must be positive")

    def label(self) -> str:
        if self.kind == "full":
            return "SL2Z"
        if self.kind == "custom":
            return f"custom:{self.level}"
        return f"{self.kind}:{self.level}"


def realize(spec: SubgroupSpec, at_level: int | None = None,
            level_cap: int = DEFAULT_LEVEL_CAP) -> FiniteSubgroup:
    """The mod-M image of the subgroup, M a multiple of the spec level."""
    m = at_level if at_level is not None else spec.level
    if m % spec.level:
        raise ValueError("realization level must be a multiple of the spec level")
    ambient = enumerate_sl2(m, level_cap)
    n = spec.level
    if spec.kind == "full":
        return ambient
    if spec.kind == "gamma0":
        elems = [x for x in ambient.elements if x[2] % n == 0]
    elif spec.kind == "gamma1":
        elems = [x for x in ambient.elements
                 if x[2] % n == 0 and x[0] % n == 1 % n and x[3] % n == 1 % n]
    elif spec.kind == "gamma":
        elems = [x for x in ambient.elements
                 if x[0] % n == 1 % n and x[3] % n == 1 % n
                 and x[1] % n == 0 and x[2] % n == 0]
    else:  # custom: generated closure
        gens = [reduce_mat(g, m) for g in spec.generators]
        closure = {identity_mat(m)}
        frontier = list(closure)
        while frontier:
            x = frontier.pop()
            for g in gens:
                y = mat_mul(x, g, m)
                if y not in closure:
                    closure.add(y)
                    frontier.append(y)
        elems = sorted(closure)
    return FiniteSubgroup(m, tuple(sorted(elems)))


@dataclass(frozen=True)
class QuotientGroup:
    """The finite quotient G = Gamma/Gamma1 on canonical coset representatives."""

    level: int
    elements: tuple[Mat, ...]
    mul: tuple[tuple[int, ...], ...]
    inv: tuple[int, ...]
    identity: int
    classes: tuple[tuple[int, ...], ...]
    class_of: tuple[int, ...]
    iota: int | None
    iota_trivial: bool
    ambient: FiniteSubgroup
    normal: FiniteSubgroup

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def mu_sl(self) -> int:
        return self.order

    @property
    def mu_proj(self) -> int:
        if self.iota is None or self.iota_trivial:
            return self.order
        return self.order // 2

    def power(self, i: int, m: int) -> int:
        result = self.identity
        base = i
        m = m % self.element_order(i) if m >= 0 else m
        if m < 0:
            base = self.inv[i]
            m = -m
        while m:
            if m & 1:
                result = self.mul[result][base]
            base = self.mul[base][base]
            m >>= 1
        return result

    @cached_property
    def _orders(self) -> tuple[int, ...]:
        out = []
        for i in range(self.order):
            m, x = 1, i
            while x != self.identity:
                x = self.mul[x][i]
                m += 1
            out.append(m)
        return tuple(out)

    def element_order(self, i: int) -> int:
        return self._orders[i]

    @cached_property
    def exponent(self) -> int:
        return lcm(*self._orders) if self._orders else 1

    @cached_property
    def is_abelian(self) -> bool:
        n = self.order
        return all(self.mul[i][j] == self.mul[j][i]
                   for i in range(n) for j in range(i + 1, n))

    @cached_property
    def _coset_index(self) -> dict:
        lut = {}
        n = self.level
        for idx, rep in enumerate(self.elements):
            for h in self.normal.elements:
                lut[mat_mul(h, rep, n)] = idx
        return lut

    def coset_index(self, mat) -> int:
        m = reduce_mat(mat, self.level)
        try:
            return self._coset_index[m]
        except KeyError:
            raise NotASubgroup(f"matrix {mat} is not in the ambient group") from None


def quotient(gamma: FiniteSubgroup, gamma1: FiniteSubgroup) -> QuotientGroup:
    """Build Gamma/Gamma1 with conjugacy classes and the coset of -I located."""
    if gamma.level != gamma1.level:
        raise NotASubgroup("subgroups live at different levels")
    n = gamma.level
    if not gamma1.element_set <= gamma.element_set:
        raise NotASubgroup("gamma1 is not contained in gamma")
    # normality check
    h_set = gamma1.element_set
    for g in gamma.elements:
        gi = mat_inv(g, n)
        for h in gamma1.elements:
            if mat_mul(mat_mul(g, h, n), gi, n) not in h_set:
                raise NotNormal("gamma1 is not normal in gamma")

    # cosets: canonical representative = minimal element of gamma1 * g
    rep_of: dict[Mat, Mat] = {}
    reps = []
    for g in gamma.elements:
        if g in rep_of:
            continue
        coset = sorted(mat_mul(h, g, n) for h in gamma1.elements)
        r = coset[0]
        for x in coset:
            rep_of[x] = r
        reps.append(r)
    reps.sort()
    index = {r: i for i, r in enumerate(reps)}
    size = len(reps)

    mul = tuple(tuple(index[rep_of[mat_mul(reps[i], reps[j], n)]]
                      for j in range(size)) for i in range(size))
    identity = index[rep_of[identity_mat(n)]]
    inv = tuple(index[rep_of[mat_inv(reps[i], n)]] for i in range(size))

    # conjugacy classes
    seen = [False] * size
    raw_classes = []
    for i in range(size):
        if seen[i]:
            continue
        cls = set()
        for g in range(size):
            x = mul[mul[g][i]][inv[g]]
            cls.add(x)
        for x in cls:
            seen[x] = True
        raw_classes.append(tuple(sorted(cls)))

    def order_of(i: int) -> int:
        m, x = 1, i
        while x != identity:
            x = mul[x][i]
            m += 1
        return m

    raw_classes.sort(key=lambda cls: (len(cls), order_of(cls[0]),
                                      tuple(reps[i] for i in cls)))
    classes = tuple(raw_classes)
    class_of = [0] * size
    for ci, cls in enumerate(classes):
        for i in cls:
            class_of[i] = ci

    mi = minus_identity(n)
    iota = index[rep_of[mi]] if mi in gamma.element_set else None
    iota_trivial = mi in gamma1.element_set

    return QuotientGroup(
        level=n, elements=tuple(reps), mul=mul, inv=inv, identity=identity,
        classes=classes, class_of=tuple(class_of), iota=iota,
        iota_trivial=iota_trivial, ambient=gamma, normal=gamma1,
    )


def cyclic_subgroups_up_to_conjugacy(G: QuotientGroup):
    """All cyclic subgroups of G, one per conjugacy class of subgroups.

    Returns a deterministically ordered list of (generator index, frozenset
    of element indices), the trivial subgroup first.
    """
    gens: dict[frozenset, int] = {}
    for i in range(G.order):
        sub = set()
        x = i
        while x not in sub:
            sub.add(x)
            x = G.mul[x][i]
        fs = frozenset(sub)
        if fs not in gens or i < gens[fs]:
            gens[fs] = min(gens.get(fs, i), i)
    # fuse conjugate subgroups
    remaining = set(gens)
    out = []
    while remaining:
        sub = min(remaining, key=lambda s: (len(s), tuple(sorted(s))))
        orbit = set()
        for g in range(G.order):
            conj = frozenset(G.mul[G.mul[g][x]][G.inv[g]] for x in sub)
            orbit.add(conj)
        remaining -= orbit
        out.append((gens[sub], sub))
    out.sort(key=lambda pair: (len(pair[1]), tuple(sorted(pair[1]))))
    return out


def galois_class_orbits(G: QuotientGroup) -> tuple[tuple[int, ...], ...]:
    """Partition of conjugacy-class indices under g -> g^a, gcd(a, exp G) = 1."""
    e = G.exponent
    parent = list(range(len(G.classes)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for a in range(1, e + 1):
        if gcd(a, e) != 1:
            continue
        for ci, cls in enumerate(G.classes):
            cj = G.class_of[G.power(cls[0], a)]
            ri, rj = find(ci), find(cj)
            if ri != rj:
                parent[max(ri, rj)] = min(ri, rj)
    cells: dict[int, list[int]] = {}
    for ci in range(len(G.classes)):
        cells.setdefault(find(ci), []).append(ci)
    return tuple(tuple(sorted(v)) for _, v in sorted(cells.items()))
