"""Exact coefficient arithmetic: F_p and the rational function field F_p(c).

Three coefficient domains are supported, all exposing the same field
interface over opaque scalar values:

  * ``PrimeField(p, c)``      -- scalars are ints in [0, p); the deformation
                                 parameter c is a fixed residue mod p.
  * ``RationalFunctionField(p)`` -- "generic c": scalars are reduced fractions
                                 num/den of univariate polynomials in c over
                                 F_p, denominator monic, gcd(num, den) = 1.
  * ``EvaluatedField(p, seed)`` -- Schwartz-Zippel mode: c is evaluated at a
                                 random element of F_{p^k} with p^k >= 2^40.
                                 Fast, but NOT certifying; identities that
                                 hold here hold generically only with high
                                 probability.

Univariate polynomials over F_2 are packed into Python ints (bit i is the
coefficient of c^i), so that addition is XOR and multiplication is a
carryless shift-and-xor.  Over odd p they are tuples of ints with no
trailing zeros, () being the zero polynomial.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Any


class DomainMismatchError(ValueError):
    """Operands belong to different coefficient domains."""


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


# ---------------------------------------------------------------------------
# Univariate polynomial rings over F_p (internal coefficient carriers)
# ---------------------------------------------------------------------------


class GF2X:
    """Polynomials over F_2 packed into ints: bit i <-> coefficient of c^i."""

    p = 2
    zero = 0
    one = 1

    @staticmethod
    def from_coeffs(coeffs) -> int:
        v = 0
        for i, a in enumerate(coeffs):
            if a % 2:
                v |= 1 << i
        return v

    @staticmethod
    def coeffs(v: int) -> tuple[int, ...]:
        if v == 0:
            return ()
        return tuple((v >> i) & 1 for i in range(v.bit_length()))

    @staticmethod
    def deg(v: int) -> int:
        return v.bit_length() - 1  # deg(0) == -1

    @staticmethod
    def add(a: int, b: int) -> int:
        return a ^ b

    sub = add

    @staticmethod
    def neg(a: int) -> int:
        return a

    @staticmethod
    def mul(a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if a.bit_length() > b.bit_length():
            a, b = b, a
        r = 0
        while a:
            low = a & -a
            r ^= b * low  # single-bit multiple: plain shift, no carries
            a ^= low
        return r

    @staticmethod
    def divmod(a: int, b: int) -> tuple[int, int]:
        if b == 0:
            raise ZeroDivisionError("polynomial division by zero")
        db = b.bit_length()
        q = 0
        while a.bit_length() >= db:
            sh = a.bit_length() - db
            q |= 1 << sh
            a ^= b << sh
        return q, a

    @classmethod
    def gcd(cls, a: int, b: int) -> int:
        while b:
            a, b = b, cls.divmod(a, b)[1]
        return a

    @staticmethod
    def monic(v: int) -> int:
        return v  # every nonzero F_2[c] polynomial is already monic

    @staticmethod
    def scalar_to_int(v: int) -> int:
        """Constant polynomial -> residue; only valid when deg <= 0."""
        return v


class GFPX:
    """Polynomials over F_p (odd p) as trailing-zero-free tuples."""

    def __init__(self, p: int):
        self.p = p
        self.zero: tuple[int, ...] = ()
        self.one: tuple[int, ...] = (1,)

    def from_coeffs(self, coeffs) -> tuple[int, ...]:
        c = [a % self.p for a in coeffs]
        while c and c[-1] == 0:
            c.pop()
        return tuple(c)

    @staticmethod
    def coeffs(v) -> tuple[int, ...]:
        return v

    @staticmethod
    def deg(v) -> int:
        return len(v) - 1

    def add(self, a, b):
        p = self.p
        if len(a) < len(b):
            a, b = b, a
        c = list(a)
        for i, x in enumerate(b):
            c[i] = (c[i] + x) % p
        while c and c[-1] == 0:
            c.pop()
        return tuple(c)

    def neg(self, a):
        p = self.p
        return tuple((p - x) % p for x in a)

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if not a or not b:
            return ()
        p = self.p
        c = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    c[i + j] = (c[i + j] + x * y) % p
        while c and c[-1] == 0:
            c.pop()
        return tuple(c)

    def divmod(self, a, b):
        if not b:
            raise ZeroDivisionError("polynomial division by zero")
        p = self.p
        inv_lead = pow(b[-1], p - 2, p)
        r = list(a)
        q = [0] * max(0, len(a) - len(b) + 1)
        while len(r) >= len(b):
            coef = (r[-1] * inv_lead) % p
            sh = len(r) - len(b)
            q[sh] = coef
            for i, x in enumerate(b):
                r[sh + i] = (r[sh + i] - coef * x) % p
            while r and r[-1] == 0:
                r.pop()
        while q and q[-1] == 0:
            q.pop()
        return tuple(q), tuple(r)

    def gcd(self, a, b):
        while b:
            a, b = b, self.divmod(a, b)[1]
        return self.monic(a)

    def monic(self, v):
        if not v or v[-1] == 1:
            return v
        inv = pow(v[-1], self.p - 2, self.p)
        return tuple((x * inv) % self.p for x in v)


def poly_ring(p: int):
    return GF2X if p == 2 else GFPX(p)


# ---------------------------------------------------------------------------
# Coefficient domains
# ---------------------------------------------------------------------------


class CoeffDomain:
    """Base class; concrete domains implement exact field ops on raw values."""

    p: int
    c_mode: str

    # -- constructors -------------------------------------------------------

    @staticmethod
    def prime(p: int, c: int = 1) -> "PrimeField":
        return PrimeField(p, c)

    @staticmethod
    def generic(p: int) -> "RationalFunctionField":
        return RationalFunctionField(p)

    @staticmethod
    def evaluated(p: int, seed: int = 0) -> "EvaluatedField":
        return EvaluatedField(p, seed)

    # -- interface ----------------------------------------------------------

    def from_int(self, k: int):
        raise NotImplementedError

    def add(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a) -> bool:
        raise NotImplementedError

    def c_scalar(self):
        """The deformation parameter c as a scalar of this domain."""
        raise NotImplementedError

    def fmt(self, a) -> str:
        raise NotImplementedError

    @property
    def zero(self):
        return self.from_int(0)

    @property
    def one(self):
        return self.from_int(1)

    def __eq__(self, other):
        return (
            type(self) is type(other)
            and self.p == other.p
            and getattr(self, "_key", None) == getattr(other, "_key", None)
        )

    def __hash__(self):
        return hash((type(self).__name__, self.p, getattr(self, "_key", None)))


class PrimeField(CoeffDomain):
    """F_p with c fixed to a residue; scalars are plain ints in [0, p)."""

    c_mode = "value"

    def __init__(self, p: int, c: int = 1):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.c_value = c % p
        self._key = self.c_value

    def __repr__(self):
        return f"PrimeField(p={self.p}, c={self.c_value})"

    def from_int(self, k: int) -> int:
        return k % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero in F_p")
        return pow(a, self.p - 2, self.p)

    def is_zero(self, a) -> bool:
        return a % self.p == 0

    def c_scalar(self):
        return self.c_value

    def fmt(self, a) -> str:
        return str(a % self.p)


class RationalFunctionField(CoeffDomain):
    """F_p(c): reduced fractions of univariate polynomials in c over F_p.

    Scalar values are pairs (num, den) of ring elements with den monic and
    gcd(num, den) = 1; zero is canonically (0, 1).
    """

    c_mode = "generic"

    def __init__(self, p: int):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.ring = poly_ring(p)
        self._key = None

    def __repr__(self):
        return f"RationalFunctionField(p={self.p})"

    def make(self, num, den):
        """Normalize an arbitrary num/den pair to canonical reduced form."""
        R = self.ring
        if den == R.zero:
            raise ZeroDivisionError("zero denominator in F_p(c)")
        if num == R.zero:
            return (R.zero, R.one)
        g = R.gcd(num, den)
        if R.deg(g) > 0 or g != R.monic(g):
            num = R.divmod(num, g)[0]
            den = R.divmod(den, g)[0]
        if self.p != 2:
            lead = den[-1]
            if lead != 1:
                inv = pow(lead, self.p - 2, self.p)
                num = R.mul(num, (inv,))
                den = R.mul(den, (inv,))
        return (num, den)

    def from_int(self, k: int):
        R = self.ring
        v = R.from_coeffs((k,))
        return (v, R.one)

    def from_c_poly(self, coeffs):
        """Polynomial in c given by an integer coefficient sequence."""
        return (self.ring.from_coeffs(coeffs), self.ring.one)

    def add(self, a, b):
        R = self.ring
        na, da = a
        nb, db = b
        if da == R.one and db == R.one:
            return (R.add(na, nb), R.one)
        return self.make(R.add(R.mul(na, db), R.mul(nb, da)), R.mul(da, db))

    def neg(self, a):
        return (self.ring.neg(a[0]), a[1])

    def mul(self, a, b):
        R = self.ring
        na, da = a
        nb, db = b
        if na == R.zero or nb == R.zero:
            return (R.zero, R.one)
        if da == R.one and db == R.one:
            return (R.mul(na, nb), R.one)
        return self.make(R.mul(na, nb), R.mul(da, db))

    def inv(self, a):
        if a[0] == self.ring.zero:
            raise ZeroDivisionError("inverse of zero in F_p(c)")
        return self.make(a[1], a[0])

    def is_zero(self, a) -> bool:
        return a[0] == self.ring.zero

    def c_scalar(self):
        return (self.ring.from_coeffs((0, 1)), self.ring.one)

    def is_polynomial(self, a) -> bool:
        return a[1] == self.ring.one

    def c_coefficients(self, a) -> tuple[int, ...]:
        """Integer coefficient sequence of a polynomial scalar (den == 1)."""
        if not self.is_polynomial(a):
            raise ValueError("scalar has a nontrivial denominator")
        return self.ring.coeffs(a[0])

    def fmt(self, a) -> str:
        num, den = a
        s = _fmt_cpoly(self.ring.coeffs(num))
        if den == self.ring.one:
            return s
        return f"({s})/({_fmt_cpoly(self.ring.coeffs(den))})"


def _fmt_cpoly(coeffs: tuple[int, ...]) -> str:
    if not coeffs:
        return "0"
    parts = []
    for e in range(len(coeffs) - 1, -1, -1):
        a = coeffs[e]
        if a == 0:
            continue
        if e == 0:
            parts.append(str(a))
        elif e == 1:
            parts.append("c" if a == 1 else f"{a}*c")
        else:
            parts.append(f"c^{e}" if a == 1 else f"{a}*c^{e}")
    return "+".join(parts)


class EvaluatedField(CoeffDomain):
    """F_{p^k} with c bound to a pseudorandom point; Schwartz-Zippel mode.

    k is chosen so that p^k >= 2^40.  Results match generic-c computations
    only with high probability; this domain never certifies anything.
    """

    c_mode = "evaluated"

    def __init__(self, p: int, seed: int = 0):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.seed = seed
        self.ring = poly_ring(p)
        k = 1
        size = p
        while size < 2**40:
            size *= p
            k += 1
        self.ext_degree = k
        self.modulus = self._find_irreducible(k, seed)
        rng = random.Random(f"point-{p}-{seed}")
        while True:
            pt = self.ring.from_coeffs([rng.randrange(p) for _ in range(k)])
            if pt != self.ring.zero and pt != self.ring.one:
                break
        self.point = pt
        self._key = (seed,)

    def __repr__(self):
        return f"EvaluatedField(p={self.p}, k={self.ext_degree}, seed={self.seed})"

    def _find_irreducible(self, k: int, seed: int):
        R = self.ring
        rng = random.Random(f"modulus-{self.p}-{k}-{seed}")
        x = R.from_coeffs([0, 1])
        while True:
            coeffs = [rng.randrange(self.p) for _ in range(k)] + [1]
            g = R.from_coeffs(coeffs)
            # irreducible iff x^(p^k) == x mod g and gcd(x^(p^d)-x, g)=1
            # for every maximal proper divisor degree d of k
            if self._powmod_frobenius(x, k, g) != R.divmod(x, g)[1]:
                continue
            ok = True
            for d in range(1, k):
                if k % d == 0 and is_prime(k // d):
                    xd = self._powmod_frobenius(x, d, g)
                    if R.gcd(R.sub(xd, x), g) != R.one:
                        ok = False
                        break
            if ok:
                return g

    def _powmod_frobenius(self, x, times: int, g):
        R = self.ring
        v = R.divmod(x, g)[1]
        for _ in range(times):
            v = self._powmod(v, self.p, g)
        return v

    def _powmod(self, base, e: int, g):
        R = self.ring
        result = R.one
        base = R.divmod(base, g)[1]
        while e:
            if e & 1:
                result = R.divmod(R.mul(result, base), g)[1]
            base = R.divmod(R.mul(base, base), g)[1]
            e >>= 1
        return result

    def from_int(self, k: int):
        return self.ring.from_coeffs((k,))

    def add(self, a, b):
        return self.ring.add(a, b)

    def neg(self, a):
        return self.ring.neg(a)

    def sub(self, a, b):
        return self.ring.sub(a, b)

    def mul(self, a, b):
        return self.ring.divmod(self.ring.mul(a, b), self.modulus)[1]

    def inv(self, a):
        R = self.ring
        if a == R.zero:
            raise ZeroDivisionError("inverse of zero in F_{p^k}")
        # extended Euclid on (a, modulus)
        r0, r1 = a, self.modulus
        s0, s1 = R.one, R.zero
        while r1 != R.zero:
            q, rem = R.divmod(r0, r1)
            r0, r1 = r1, rem
            s0, s1 = s1, R.sub(s0, R.mul(q, s1))
        # r0 is a unit constant
        if R.deg(r0) != 0:
            raise ArithmeticError("modulus not irreducible")
        if self.p == 2:
            unit_inv = R.one
        else:
            unit_inv = (pow(r0[0], self.p - 2, self.p),)
        return R.divmod(R.mul(s0, unit_inv), self.modulus)[1]

    def is_zero(self, a) -> bool:
        return a == self.ring.zero

    def c_scalar(self):
        return self.point

    def fmt(self, a) -> str:
        return _fmt_cpoly(self.ring.coeffs(a)).replace("c", "w")


# ---------------------------------------------------------------------------
# Tagged scalars (public arithmetic surface with domain checking)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Scalar:
    """A domain-tagged field element; arithmetic checks domain compatibility."""

    domain: CoeffDomain
    value: Any

    def _check(self, other: "Scalar"):
        if not isinstance(other, Scalar):
            raise TypeError("expected a Scalar")
        if self.domain != other.domain:
            raise DomainMismatchError(
                f"domains differ: {self.domain!r} vs {other.domain!r}"
            )

    def __add__(self, other):
        self._check(other)
        return Scalar(self.domain, self.domain.add(self.value, other.value))

    def __sub__(self, other):
        self._check(other)
        return Scalar(self.domain, self.domain.sub(self.value, other.value))

    def __neg__(self):
        return Scalar(self.domain, self.domain.neg(self.value))

    def __mul__(self, other):
        self._check(other)
        return Scalar(self.domain, self.domain.mul(self.value, other.value))

    def __truediv__(self, other):
        self._check(other)
        if self.domain.is_zero(other.value):
            raise ZeroDivisionError("division by zero scalar")
        return Scalar(self.domain, self.domain.div(self.value, other.value))

    def is_zero(self) -> bool:
        return self.domain.is_zero(self.value)

    def __str__(self):
        return self.domain.fmt(self.value)


def scalar_arith(a: Scalar, b: Scalar, op: str) -> Scalar:
    """Exact field arithmetic on tagged scalars: op in {add, mul, div}."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown op {op!r}")
