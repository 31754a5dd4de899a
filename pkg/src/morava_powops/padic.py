"""Truncated p-adic integers, Hensel lifting and the K(1)-local Rezk logarithm.

A :class:`PAdicInt` is an integer known modulo ``p**precision``.  Precision is
carried per value: sums and products keep the smaller precision of their
inputs, and exact division by ``p`` loses one digit.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

DEFAULT_PRECISION = 12

#: returned by :func:`val` when a value is zero to its known precision
ZERO_TO_PRECISION = math.inf


class PrecisionError(ArithmeticError):
    pass


@dataclass(frozen=True)
class PAdicInt:
    prime: int
    residue: int
    precision: int = DEFAULT_PRECISION

    def __post_init__(self):
        if self.prime < 2:
            raise ValueError(f"prime must be >= 2, got {self.prime}")
        if self.precision < 0:
            raise ValueError("precision must be non-negative")
        object.__setattr__(self, "residue", self.residue % self.modulus)

    @property
    def modulus(self) -> int:
        return self.prime ** self.precision

    def _coerce(self, other) -> "PAdicInt":
        if isinstance(other, PAdicInt):
            if other.prime != self.prime:
                raise ValueError("mixing different primes")
            return other
        if isinstance(other, int):
            return PAdicInt(self.prime, other, self.precision)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n = min(self.precision, other.precision)
        return PAdicInt(self.prime, self.residue + other.residue, n)

    __radd__ = __add__

    def __neg__(self):
        return PAdicInt(self.prime, -self.residue, self.precision)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n = min(self.precision, other.precision)
        return PAdicInt(self.prime, self.residue * other.residue, n)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return PAdicInt(self.prime, pow(self.residue, k, self.modulus), self.precision)

    def is_unit(self) -> bool:
        return self.precision > 0 and self.residue % self.prime != 0

    def inverse(self) -> "PAdicInt":
        if not self.is_unit():
            raise ZeroDivisionError(f"{self} is not a p-adic unit")
        return PAdicInt(self.prime, pow(self.residue, -1, self.modulus), self.precision)

    def divide_by_p(self) -> "PAdicInt":
        """Exact division by p; one digit of precision is lost."""
        if self.precision == 0:
            raise PrecisionError("no digits left to divide")
        if self.residue % self.prime:
            raise ArithmeticError(f"{self.residue} is not divisible by {self.prime}")
        return PAdicInt(self.prime, self.residue // self.prime, self.precision - 1)

    def __eq__(self, other):
        if isinstance(other, int):
            other = PAdicInt(self.prime, other, self.precision)
        if not isinstance(other, PAdicInt):
            return NotImplemented
        n = min(self.precision, other.precision)
        q = self.prime ** n
        return self.prime == other.prime and (self.residue - other.residue) % q == 0

    def __hash__(self):
        # equality is congruence at the common precision
        return hash(self.prime)

    def __int__(self):
        return self.residue

    def __repr__(self):
        return f"{self.residue} (mod {self.prime}^{self.precision})"


def val(x: PAdicInt):
    """Largest v with p**v dividing x, or ZERO_TO_PRECISION."""
    if x.residue == 0:
        return ZERO_TO_PRECISION
    v, r = 0, x.residue
    while r % x.prime == 0:
        r //= x.prime
        v += 1
    return v


def _ilog(p: int, k: int) -> int:
    """floor(log_p k) for k >= 1, in exact integer arithmetic."""
    e = 0
    while k >= p:
        k //= p
        e += 1
    return e


def hensel_unit_root(p: int, k: int, b, precision: int = DEFAULT_PRECISION) -> PAdicInt:
    """Find a unit c with (1 + p*c)**(p**(k-1)) == 1 + b*p**k to the given precision.

    Proceeds by induction on k: solve (1 + x*p**(k-1))**p = 1 + b*p**k for a
    unit x by Newton iteration, then recurse on (x, k-1).  Only c modulo
    p**(precision-k) is determined by the congruence; the returned residue is
    the one produced by the iteration.
    """
    if p == 2:
        raise ValueError("hensel_unit_root requires an odd prime")
    if p < 2 or any(p % d == 0 for d in range(2, math.isqrt(p) + 1)):
        raise ValueError(f"{p} is not prime")
    if k < 1:
        raise ValueError("k must be >= 1")
    b = b.residue if isinstance(b, PAdicInt) else int(b)
    if b % p == 0:
        raise ValueError(f"b = {b} is not a p-adic unit")
    # work with extra digits so every division below stays exact
    work = precision + k + 1
    q = p ** work
    b %= q
    for level in range(k, 1, -1):
        b = _unit_pth_root_step(p, level, b, q)
    return PAdicInt(p, b, precision)


def _unit_pth_root_step(p: int, k: int, b: int, q: int) -> int:
    # g(x) = ((1 + x p^{k-1})^p - 1) / p^k - b = x - b + p*h(x)
    coeffs = [0] * (p + 1)
    for j in range(1, p + 1):
        num = math.comb(p, j) * p ** (j * (k - 1))
        assert num % p ** k == 0
        coeffs[j] = num // p ** k
    coeffs[0] = -b

    def g(x):
        return sum(c * pow(x, j, q) for j, c in enumerate(coeffs)) % q

    def dg(x):
        return sum(j * c * pow(x, j - 1, q) for j, c in enumerate(coeffs) if j) % q

    x = b
    # g'(x) = 1 mod p, so Newton doubles the number of correct digits
    for _ in range(q.bit_length()):
        step = g(x) * pow(dg(x), -1, q) % q
        if step == 0:
            break
        x = (x - step) % q
    assert g(x) == 0
    return x


def theta(x: PAdicInt) -> PAdicInt:
    """(x - x**p) / p, with precision reduced by one."""
    return (x - x ** x.prime).divide_by_p()


def rezk_log(x: PAdicInt) -> PAdicInt:
    """Rezk's logarithm sum_{k>=1} (-1)^k p^(k-1)/k (theta(x)/x^p)^k.

    Requires p odd and x = 1 mod p.  The result has precision
    ``x.precision - 1``.
    """
    p = x.prime
    if p == 2:
        raise ValueError("rezk_log is only defined here for odd primes")
    if x.precision < 2:
        raise PrecisionError("need at least two digits of precision")
    if x.residue % p != 1 % p:
        raise ValueError("rezk_log requires x = 1 mod p")
    y = theta(x) * (x ** p).inverse()
    out = y.precision
    q = p ** out
    vy = val(y)
    if vy == ZERO_TO_PRECISION:
        return PAdicInt(p, 0, out)

    total = 0
    k, run = 0, 0
    while run < p:
        k += 1
        if k * (vy + 1) - 1 - _ilog(p, k) >= out:
            run += 1
            continue
        run = 0
        e = 0
        u = k
        while u % p == 0:
            u //= p
            e += 1
        shift = k - 1 - e
        term = pow(y.residue, k, q) * p ** shift * pow(u, -1, q)
        total += -term if k % 2 else term
    return PAdicInt(p, total, out)
