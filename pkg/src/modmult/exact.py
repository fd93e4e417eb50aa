"""Exact arithmetic layer: number-theoretic helpers, integer polynomials,
cyclotomic values, and an exact rational linear solver.

Everything here works over arbitrary-precision integers and
``fractions.Fraction``; no floating point anywhere.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm


class InconsistentSystem(Exception):
    """Raised when a linear system A x = b has no solution."""


def _prime_factors(n: int) -> list[int]:
    ps = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            ps.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        ps.append(n)
    return ps


def mobius(n: int) -> int:
    """Moebius function mu(n)."""
    if n < 1:
        raise ValueError("n must be positive")
    result = 1
    for p in _prime_factors(n):
        if n % (p * p) == 0:
            return 0
        result = -result
    return result


def euler_phi(n: int) -> int:
    """Euler totient phi(n)."""
    if n < 1:
        raise ValueError("n must be positive")
    result = n
    for p in _prime_factors(n):
        result = result // p * (p - 1)
    return result


# ---------------------------------------------------------------------------
# Integer polynomials, stored as tuples of coefficients in ascending degree.
# The zero polynomial is the empty tuple.

def poly_trim(coeffs) -> tuple[int, ...]:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def poly_mul(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return poly_trim(out)


def poly_divmod_exact(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    """Divide a by monic-up-to-sign b over Z, requiring zero remainder."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if abs(b[-1]) != 1:
        raise ValueError("divisor must have leading coefficient +-1")
    rem = list(a)
    q = [0] * max(len(a) - len(b) + 1, 0)
    lead = b[-1]
    for i in range(len(rem) - len(b), -1, -1):
        coef = rem[i + len(b) - 1]
        if coef % lead:
            raise ValueError("division not exact")
        f = coef // lead
        q[i] = f
        if f:
            for j, y in enumerate(b):
                rem[i + j] -= f * y
    if any(rem):
        raise ValueError("division not exact")
    return poly_trim(q)


def _divisors(n: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """The n-th cyclotomic polynomial, by exact division of x^n - 1."""
    if n < 1:
        raise ValueError("n must be positive")
    num = tuple([-1] + [0] * (n - 1) + [1])  # x^n - 1
    den = (1,)
    for d in _divisors(n):
        if d < n:
            den = poly_mul(den, cyclotomic_poly(d))
    return poly_divmod_exact(num, den)


# ---------------------------------------------------------------------------
# Cyclotomic values: exact elements of Q(zeta_n).

class CycloValue:
    """An exact element of Q(zeta_n), stored as sum_j coeffs[j] * zeta_n^j.

    Equality is decided by canonical reduction modulo the n-th cyclotomic
    polynomial, never by raw coefficient comparison.
    """

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs=None):
        if order < 1:
            raise ValueError("order must be positive")
        self.order = order
        d: dict[int, Fraction] = {}
        if coeffs:
            for j, c in coeffs.items():
                c = Fraction(c)
                if c:
                    jj = j % order
                    d[jj] = d.get(jj, Fraction(0)) + c
        self.coeffs = {j: c for j, c in d.items() if c}

    @classmethod
    def root_of_unity(cls, order: int, exp: int = 1) -> "CycloValue":
        return cls(order, {exp: Fraction(1)})

    @classmethod
    def from_rational(cls, q) -> "CycloValue":
        return cls(1, {0: Fraction(q)})

    def lift(self, m: int) -> "CycloValue":
        """Rewrite in Q(zeta_m) for a multiple m of the current order."""
        if m % self.order:
            raise ValueError("can only lift to a multiple of the order")
        f = m // self.order
        return CycloValue(m, {j * f: c for j, c in self.coeffs.items()})

    def _pair(self, other):
        if not isinstance(other, CycloValue):
            other = CycloValue.from_rational(other)
        m = lcm(self.order, other.order)
        return self.lift(m), other.lift(m)

    def __add__(self, other):
        a, b = self._pair(other)
        out = dict(a.coeffs)
        for j, c in b.coeffs.items():
            out[j] = out.get(j, Fraction(0)) + c
        return CycloValue(a.order, out)

    __radd__ = __add__

    def __neg__(self):
        return CycloValue(self.order, {j: -c for j, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other if isinstance(other, CycloValue)
                       else CycloValue.from_rational(-Fraction(other)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, CycloValue):
            q = Fraction(other)
            return CycloValue(self.order, {j: c * q for j, c in self.coeffs.items()})
        a, b = self._pair(other)
        out: dict[int, Fraction] = {}
        for i, x in a.coeffs.items():
            for j, y in b.coeffs.items():
                k = (i + j) % a.order
                out[k] = out.get(k, Fraction(0)) + x * y
        return CycloValue(a.order, out)

    __rmul__ = __mul__

    def conj(self) -> "CycloValue":
        return CycloValue(self.order, {(-j) % self.order: c for j, c in self.coeffs.items()})

    def galois(self, a: int) -> "CycloValue":
        if gcd(a, self.order) != 1:
            raise ValueError("twist exponent must be coprime to the order")
        return CycloValue(self.order, {(a * j) % self.order: c for j, c in self.coeffs.items()})

    def reduced(self) -> tuple[Fraction, ...]:
        """Coordinates in the power basis 1, zeta, ..., zeta^(phi(n)-1)."""
        phi = cyclotomic_poly(self.order)
        deg = len(phi) - 1
        rem = [Fraction(0)] * max(self.order, deg)
        for j, c in self.coeffs.items():
            rem[j] += c
        for i in range(len(rem) - 1, deg - 1, -1):
            f = rem[i]
            if f:
                rem[i] = Fraction(0)
                for t in range(deg):
                    rem[i - deg + t] -= f * phi[t]
        return tuple(rem[:deg])

    def rational_part(self) -> Fraction | None:
        """The value as a Fraction if it is rational, else None."""
        r = self.reduced()
        if any(r[1:]):
            return None
        return r[0]

    def is_zero(self) -> bool:
        return not any(self.reduced())

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = CycloValue.from_rational(other)
        if not isinstance(other, CycloValue):
            return NotImplemented
        a, b = self._pair(other)
        return a.reduced() == b.reduced()

    __hash__ = None

    def __repr__(self):
        if not self.coeffs:
            return "CycloValue(0)"
        terms = " + ".join(f"{c}*z{self.order}^{j}" for j, c in sorted(self.coeffs.items()))
        return f"CycloValue({terms})"


# ---------------------------------------------------------------------------
# Exact linear solver.

def solve_linear_exact(A, b, column_order=None):
    """Solve A x = b exactly over the rationals.

    Returns one solution (free variables are set to 0); raises
    InconsistentSystem when none exists.  ``column_order`` controls the
    pivot-column order, which selects among solutions of underdetermined
    systems.
    """
    r = len(A)
    s = len(A[0]) if r else 0
    if len(b) != r:
        raise ValueError("dimension mismatch")
    M = [[Fraction(x) for x in row] + [Fraction(b[i])] for i, row in enumerate(A)]
    if any(len(row) != s + 1 for row in M):
        raise ValueError("ragged matrix")
    cols = list(range(s)) if column_order is None else list(column_order)
    if sorted(cols) != list(range(s)):
        raise ValueError("column_order must be a permutation of the columns")

    pivots = []
    prow = 0
    for col in cols:
        sel = next((i for i in range(prow, r) if M[i][col]), None)
        if sel is None:
            continue
        M[prow], M[sel] = M[sel], M[prow]
        pv = M[prow][col]
        M[prow] = [x / pv for x in M[prow]]
        for i in range(r):
            if i != prow and M[i][col]:
                f = M[i][col]
                M[i] = [x - f * y for x, y in zip(M[i], M[prow])]
        pivots.append((prow, col))
        prow += 1
        if prow == r:
            break
    for i in range(prow, r):
        if M[i][s]:
            raise InconsistentSystem("no exact solution")
    x = [Fraction(0)] * s
    for row, col in pivots:
        x[col] = M[row][s]
    return x
