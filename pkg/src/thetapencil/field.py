"""Exact scalars: Q and the cyclotomic fields Q(zeta_m).

A CycloNum is a residue class in Q[x]/(Phi_m), stored densely as phi(m)
rational coefficients of 1, z, ..., z^(phi(m)-1).  Arithmetic between two
CycloNum values requires equal conductors; plain integers, Fractions and
conductor-1 values coerce silently into any Q(zeta_m), every other mixing
must go through embed().  All values are immutable.
"""
from __future__ import annotations

from fractions import Fraction
from functools import cache

from . import _core
from .errors import ConductorMismatch, DivisionByZero

Rational = Fraction

_MASK64 = (1 << 64) - 1


def _exact_div_int(num: list[int], den: tuple[int, ...]) -> list[int]:
    # Synthetic division by a monic integer polynomial; remainder must vanish.
    num = list(num)
    dd = len(den) - 1
    out = [0] * (len(num) - dd)
    for k in range(len(out) - 1, -1, -1):
        c = num[k + dd]
        out[k] = c
        if c:
            for i in range(dd + 1):
                num[k + i] -= c * den[i]
    if any(num):
        raise ArithmeticError("division was not exact")
    return out


@cache
def cyclotomic_polynomial(m: int) -> tuple[int, ...]:
    """Coefficients of Phi_m, constant term first, monic of degree phi(m).

    Computed by the defining exact division
    Phi_m(x) = (x^m - 1) / prod of Phi_d(x) over proper divisors d of m.
    """
    if m < 1:
        raise ValueError("conductor must be positive")
    if m == 1:
        return (-1, 1)
    num = [-1] + [0] * (m - 1) + [1]
    for d in range(1, m):
        if m % d == 0:
            num = _exact_div_int(num, cyclotomic_polynomial(d))
    return tuple(num)


def euler_phi(m: int) -> int:
    return len(cyclotomic_polynomial(m)) - 1


class _Context:
    """Per-conductor data: Phi_m and reduction rows for powers of z."""

    __slots__ = ("m", "deg", "phi_coeffs", "red", "_powers")

    def __init__(self, m: int):
        self.m = m
        self.phi_coeffs = cyclotomic_polynomial(m)
        deg = len(self.phi_coeffs) - 1
        self.deg = deg
        # red[k] = x^(deg+k) mod Phi_m for 0 <= k <= deg-2, as Fraction rows;
        # that range covers every overflow of a schoolbook product.
        rows = []
        base = tuple(Fraction(-c) for c in self.phi_coeffs[:deg])
        row = base
        for _ in range(max(deg - 1, 0)):
            rows.append(row)
            top = row[deg - 1]
            shifted = [Fraction(0)] + list(row[: deg - 1])
            if top:
                shifted = [s + top * b for s, b in zip(shifted, base)]
            row = tuple(shifted)
        self.red = tuple(rows)
        self._powers = None  # filled lazily for large powers (embeddings)

    def power(self, k: int) -> tuple[Fraction, ...]:
        """x^k mod Phi_m as a coefficient row."""
        deg = self.deg
        if k < deg:
            return tuple(Fraction(int(i == k)) for i in range(deg))
        if self._powers is None:
            base = tuple(Fraction(-c) for c in self.phi_coeffs[:deg])
            self._powers = [base]
        powers = self._powers
        while len(powers) < k - deg + 1:
            row = powers[-1]
            top = row[deg - 1]
            shifted = [Fraction(0)] + list(row[: deg - 1])
            if top:
                base = powers[0]
                shifted = [s + top * b for s, b in zip(shifted, base)]
            powers.append(tuple(shifted))
        return powers[k - deg]


@cache
def _ctx(m: int) -> _Context:
    return _Context(m)


def _poly_divmod(a: list[Fraction], b: list[Fraction]):
    # Dense division over Q, coefficients low to high, b nonzero.
    a = list(a)
    while a and not a[-1]:
        a.pop()
    db = len(b) - 1
    inv_lead = 1 / b[db]
    q = [Fraction(0)] * max(len(a) - db, 0)
    while len(a) - 1 >= db and a:
        c = a[-1] * inv_lead
        k = len(a) - 1 - db
        q[k] = c
        for i in range(db + 1):
            a[k + i] -= c * b[i]
        while a and not a[-1]:
            a.pop()
    return q, a


class CycloNum:
    """An element of Q(zeta_m)."""

    __slots__ = ("m", "coeffs")

    def __init__(self, m: int, coeffs):
        ctx = _ctx(m)
        vec = tuple(Fraction(c) for c in coeffs)
        if len(vec) != ctx.deg:
            raise ValueError(
                f"conductor {m} needs {ctx.deg} coefficients, got {len(vec)}"
            )
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "coeffs", vec)

    def __setattr__(self, *a):
        raise AttributeError("CycloNum is immutable")

    @staticmethod
    def _raw(m: int, vec: tuple) -> "CycloNum":
        out = object.__new__(CycloNum)
        object.__setattr__(out, "m", m)
        object.__setattr__(out, "coeffs", vec)
        return out

    @classmethod
    def from_rational(cls, value, m: int = 1) -> "CycloNum":
        deg = _ctx(m).deg
        vec = (Fraction(value),) + (Fraction(0),) * (deg - 1)
        return cls._raw(m, vec)

    @classmethod
    def zero(cls, m: int = 1) -> "CycloNum":
        return cls.from_rational(0, m)

    @classmethod
    def one(cls, m: int = 1) -> "CycloNum":
        return cls.from_rational(1, m)

    # -- coercion ---------------------------------------------------------

    def _pair(self, other):
        if isinstance(other, CycloNum):
            if other.m == self.m:
                return self, other
            if other.m == 1:
                return self, other.embed(self.m)
            if self.m == 1:
                return self.embed(other.m), other
            raise ConductorMismatch(
                f"conductors {self.m} and {other.m}; use embed() explicitly"
            )
        if isinstance(other, (int, Fraction)):
            return self, CycloNum.from_rational(other, self.m)
        return self, None

    # -- predicates and views ----------------------------------------------

    def __bool__(self):
        return any(self.coeffs)

    @property
    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def rational_value(self) -> Fraction:
        if not self.is_rational:
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0]

    def embed(self, n: int) -> "CycloNum":
        """Image under zeta_m -> zeta_n^(n/m); requires m | n."""
        if n == self.m:
            return self
        if n % self.m:
            raise ConductorMismatch(f"{self.m} does not divide {n}")
        ctx = _ctx(n)
        step = n // self.m
        vec = [Fraction(0)] * ctx.deg
        for k, c in enumerate(self.coeffs):
            if c:
                row = ctx.power(k * step)
                for i in range(ctx.deg):
                    if row[i]:
                        vec[i] += c * row[i]
        return CycloNum._raw(n, tuple(vec))

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        a, b = self._pair(other)
        if b is None:
            return NotImplemented
        return CycloNum._raw(a.m, _core.cv_add(a.coeffs, b.coeffs))

    __radd__ = __add__

    def __sub__(self, other):
        a, b = self._pair(other)
        if b is None:
            return NotImplemented
        return CycloNum._raw(a.m, _core.cv_sub(a.coeffs, b.coeffs))

    def __rsub__(self, other):
        a, b = self._pair(other)
        if b is None:
            return NotImplemented
        return CycloNum._raw(a.m, _core.cv_sub(b.coeffs, a.coeffs))

    def __neg__(self):
        return CycloNum._raw(self.m, _core.cv_neg(self.coeffs))

    def __mul__(self, other):
        a, b = self._pair(other)
        if b is None:
            return NotImplemented
        return CycloNum._raw(a.m, _core.cv_mul(a.coeffs, b.coeffs, _ctx(a.m).red))

    __rmul__ = __mul__

    def inv(self) -> "CycloNum":
        """Multiplicative inverse via extended Euclid against Phi_m."""
        if not self:
            raise DivisionByZero("inverse of zero")
        ctx = _ctx(self.m)
        # Maintain r = u * self (mod Phi_m); Bezout for the Phi side not needed.
        r0 = [Fraction(c) for c in ctx.phi_coeffs]
        r1 = list(self.coeffs)
        u0: list[Fraction] = [Fraction(0)]
        u1: list[Fraction] = [Fraction(1)]
        while True:
            while r1 and not r1[-1]:
                r1.pop()
            if len(r1) == 1:
                c = 1 / r1[0]
                vec = [x * c for x in u1] + [Fraction(0)] * ctx.deg
                out = CycloNum._raw(self.m, tuple(vec[: ctx.deg]))
                # Degree can exceed phi(m)-1 transiently; reduce by one mul.
                if len(vec) > ctx.deg and any(vec[ctx.deg :]):
                    out = CycloNum(self.m, _reduce_list(vec, ctx))
                return out
            q, rem = _poly_divmod(r0, r1)
            new_u = _poly_sub(u0, _poly_mul_dense(q, u1))
            r0, r1 = r1, rem
            u0, u1 = u1, new_u

    def __truediv__(self, other):
        a, b = self._pair(other)
        if b is None:
            return NotImplemented
        return a * b.inv()

    def exact_div(self, other):
        # Field division is always exact; named so CycloNum and MultiPoly
        # satisfy the same protocol in fraction-free elimination.
        return self / other

    def __rtruediv__(self, other):
        a, b = self._pair(other)
        if b is None:
            return NotImplemented
        return b * a.inv()

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return self.inv() ** (-exponent)
        result = CycloNum.one(self.m)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational and self.coeffs[0] == other
        if isinstance(other, CycloNum):
            if self.m == other.m:
                return self.coeffs == other.coeffs
            if self.is_rational and other.is_rational:
                return self.coeffs[0] == other.coeffs[0]
            if other.m % self.m == 0:
                return self.embed(other.m) == other
            if self.m % other.m == 0:
                return self == other.embed(self.m)
            raise ConductorMismatch(
                f"cannot compare conductors {self.m} and {other.m}"
            )
        return NotImplemented

    def __hash__(self):
        if self.is_rational:
            return hash(self.coeffs[0])
        return hash((self.m, self.coeffs))

    # -- rendering -----------------------------------------------------------

    def __str__(self):
        if self.is_rational:
            return str(self.coeffs[0])
        parts = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            if k == 0:
                parts.append(str(c))
            else:
                zk = "z" if k == 1 else f"z^{k}"
                if c == 1:
                    parts.append(zk)
                elif c == -1:
                    parts.append(f"-{zk}")
                else:
                    parts.append(f"{c}*{zk}")
        body = " + ".join(parts).replace("+ -", "- ")
        return f"({body})"

    def __repr__(self):
        return f"CycloNum({self.m}, {str(self)})"


def _poly_sub(a, b):
    n = max(len(a), len(b))
    a = list(a) + [Fraction(0)] * (n - len(a))
    for i, c in enumerate(b):
        a[i] -= c
    return a


def _poly_mul_dense(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _reduce_list(vec, ctx):
    out = list(vec[: ctx.deg])
    for k in range(ctx.deg, len(vec)):
        c = vec[k]
        if c:
            row = ctx.power(k)
            for i in range(ctx.deg):
                out[i] += c * row[i]
    return tuple(out)


def zeta(m: int, power: int = 1) -> CycloNum:
    """zeta_m^power as a CycloNum of conductor m."""
    ctx = _ctx(m)
    return CycloNum._raw(m, ctx.power(power % m if m > 1 else 0))


def to_conductor(x, m: int) -> CycloNum:
    """Coerce an int, Fraction or CycloNum into Q(zeta_m)."""
    if isinstance(x, CycloNum):
        return x.embed(m)
    return CycloNum.from_rational(x, m)


class ScalarStream:
    """Deterministic scalar source (splitmix64); explicit state, no globals.

    The same seed always yields the same stream, independent of platform and
    interpreter version, which is what makes reports reproducible.
    """

    __slots__ = ("_state",)

    def __init__(self, seed: int):
        self._state = seed & _MASK64

    def _next64(self) -> int:
        self._state = (self._state + 0x9E3779B97F4A7C15) & _MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def integer(self, bound: int) -> int:
        """Uniform-ish integer in [-bound, bound]."""
        if bound < 1:
            raise ValueError("bound must be positive")
        return self._next64() % (2 * bound + 1) - bound

    def nonzero_integer(self, bound: int) -> int:
        while True:
            v = self.integer(bound)
            if v:
                return v

    def rational(self, bound: int) -> Fraction:
        return Fraction(self.integer(bound))

    def point(self, n: int, bound: int, conductor: int = 1):
        """A tuple of n random rational scalars embedded in Q(zeta_conductor)."""
        return tuple(
            CycloNum.from_rational(self.integer(bound), conductor) for _ in range(n)
        )


def random_scalar(seed: int, bound: int) -> Fraction:
    """First value of the seeded stream; same seed, same value."""
    return ScalarStream(seed).rational(bound)
