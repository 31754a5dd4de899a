from fractions import Fraction

from morava_powops.derive import Ideal


def congruent(ideal: Ideal, s, t) -> bool:
    """Every z-coefficient of s - t lies in the ideal."""
    return all(ideal.contains(c) for c in (s - t).coeffs)


def ideal_of(spec, *gens) -> Ideal:
    return Ideal(spec, [spec(g) for g in gens])


def classical_log_oracle(x: int, p: int, digits: int) -> int:
    """(1 - 1/p) * sum (-1)^(k+1) (x-1)^k / k, reduced mod p^digits.

    Summed in exact rationals until the remaining terms vanish mod p^(digits+1).
    """
    if x == 1:
        return 0
    t, vt = x - 1, 0
    while t % p == 0:
        t //= p
        vt += 1
    total = Fraction(0)
    k = 1
    # v((x-1)^k / k) >= k*vt - log_p(k); log_p(k) <= log_2(k)
    while k * vt - k.bit_length() <= digits + 2:
        total += Fraction((-1) ** (k + 1) * (x - 1) ** k, k)
        k += 1
    value = total * Fraction(p - 1, p)
    q = p ** digits
    return value.numerator * pow(value.denominator, -1, q) % q
