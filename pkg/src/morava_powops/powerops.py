"""The total power operation P and the transfer on the coefficient ring.

Only three structural relations are used, together with the presentation
data tr(1) and P(a):

    P(x y) = P(x) P(y)
    tr(x + y) = tr(x) + tr(y)
    P(x + y) = P(x) + P(y) + tr(x y)

Coefficients are lifted to the symmetric residue range before P is applied;
P is not additive, so P(x) mod p^N depends on the integer lift of x, and
the symmetric lift is the one the negation identity
P(-x) = x^2 tr(1) - P(x) produces.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

from .rings import (
    CoeffElem,
    ETheoryPresentation,
    SigmaElem,
    decode_sigma,
    reduce_z_power,
    window_matrix,
)


class PresentationError(ValueError):
    """The presentation data contradicts a structural identity."""


def transfer(pres: ETheoryPresentation, x) -> SigmaElem:
    return pres.tr1 * pres.spec(x)


def power_of_integer(pres: ETheoryPresentation, c: int) -> SigmaElem:
    """P(c) for an integer c, from P(0) = 0, P(1) = 1 and the sum rule.

    Doubling uses P(2v) = 2 P(v) + v^2 tr(1) and increments use
    P(v + 1) = P(v) + 1 + v tr(1); negative c goes through the negation
    identity.
    """
    if c < 0:
        return pres.tr1 * (c * c) - power_of_integer(pres, -c)
    ring = pres.ring
    result, v = ring.zero(), 0
    for bit in bin(c)[2:] if c else "":
        result = result * 2 + pres.tr1 * (v * v)
        v *= 2
        if bit == "1":
            result = result + 1 + pres.tr1 * v
            v += 1
    return result


@lru_cache(maxsize=None)
def _p_of_a_power(pres: ETheoryPresentation, i: int) -> SigmaElem:
    if i == 0:
        return pres.ring.one()
    return _p_of_a_power(pres, i - 1) * pres.p_of_a


def power_of_monomial(pres: ETheoryPresentation, c: int, i: int) -> SigmaElem:
    """P(c a^i) = P(c) P(a)^i for an integer c."""
    if i and pres.p_of_a is None:
        raise PresentationError("presentation has no deformation parameter a")
    base = power_of_integer(pres, c)
    return base if i == 0 else base * _p_of_a_power(pres, i)


def power(pres: ETheoryPresentation, x, order: Sequence[int] | None = None) -> SigmaElem:
    """Total power operation P(x) in E0[z]/f.

    ``x`` is split into monomials c_i a^i (ascending a-degree unless
    ``order`` lists the degrees) and the pieces are combined with the sum
    rule.
    """
    x = pres.spec(x)
    lifted = x.lift()
    degrees = [i for i in range(len(lifted)) if lifted[i]] if order is None else order
    spec = pres.spec
    acc, result = spec.zero(), pres.ring.zero()
    for i in degrees:
        c = lifted[i]
        if not c:
            continue
        mono = CoeffElem(spec, [0] * i + [c])
        result = result + power_of_monomial(pres, c, i) + pres.tr1 * (acc * mono)
        acc = acc + mono
    return result


def pbar_coeffs(pres: ETheoryPresentation, x) -> tuple[CoeffElem, ...]:
    """(p_1, ..., p_r), the z-coefficients of P(x) - x^2, for x in the maximal ideal."""
    x = pres.spec(x)
    if not x.in_maximal_ideal():
        raise ValueError(f"{x} is not in the maximal ideal")
    px = power(pres, x)
    if px.at_zero() != x * x:
        raise PresentationError(f"z^0-coefficient of P({x}) is {px.at_zero()}, not x^2")
    return px.coeffs[1:]


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class PresentationReport:
    name: str
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name: str, passed: bool, detail: str = "") -> None:
        self.checks.append(Check(name, bool(passed), detail))

    def as_dict(self) -> dict:
        return {
            "presentation": self.name,
            "passed": self.passed,
            "checks": [{"name": c.name, "passed": c.passed, "detail": c.detail} for c in self.checks],
        }


def check_presentation(pres: ETheoryPresentation, max_power: int = 12) -> PresentationReport:
    """Verify the structural invariants and stored reduction fixtures."""
    report = PresentationReport(pres.name or "presentation")
    spec = pres.spec
    report.add("deg f = p^h", pres.degree == spec.p ** pres.height, f"deg f = {pres.degree}")
    report.add("f monic", pres.f[-1] == 1)
    report.add("f(0) = 0", not pres.f[0], f"f(0) = {pres.f[0]}")
    report.add("tr(1)(0) = 2", pres.tr1.at_zero() == 2, f"tr(1)(0) = {pres.tr1.at_zero()}")
    if pres.p_of_a is not None:
        a = spec.gen()
        report.add("P(a)(0) = a^2", pres.p_of_a.at_zero() == a * a, f"P(a)(0) = {pres.p_of_a.at_zero()}")

    consistent = all(
        reduce_z_power(pres, i) * reduce_z_power(pres, j) == reduce_z_power(pres, i + j)
        for i in range(1, max_power + 1)
        for j in range(1, max_power + 1 - i)
    )
    report.add("z-power table multiplicative", consistent)
    identity = window_matrix(pres, 0)
    r = pres.rank
    report.add(
        "window(0) = identity",
        all(identity[i, j] == int(i == j) for i in range(r) for j in range(r)),
    )
    for k, terms in sorted(pres.fixtures.get("z_powers", {}).items(), key=lambda kv: int(kv[0])):
        expected = decode_sigma(pres, terms)
        got = reduce_z_power(pres, int(k))
        report.add(f"z^{k} fixture", got == expected, f"z^{k} = {got}")
    return report

