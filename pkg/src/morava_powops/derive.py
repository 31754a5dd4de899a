"""Relation saturation over the truncated coefficient ring.

Given x = 0 in pi_0(R) for an E_n-algebra R, the image of P(x) - x^2 under
the dual window map must factor through the window: p = M u for some
unknown vector u over pi_0(R).  The unknowns are never solved for.  Each
left syzygy v (v M = 0 modulo the known relations) turns the existence
statement into the relation v . p = 0, and :func:`saturate` feeds these
back until nothing new appears.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

from .howell import Pivot, howell_form, in_span, left_kernel
from .powerops import pbar_coeffs
from .rings import CoeffElem, CoeffRingSpec, ETheoryPresentation, WindowMatrix, window_matrix


class CertificationError(AssertionError):
    """A derived relation failed its independent re-check."""


class Ideal:
    """A finitely generated ideal of Z/p^N[a]/(a^K).

    The Z/p^N-span of {a^i g} is kept in Howell form, so membership is a
    single reduction.
    """

    def __init__(self, spec: CoeffRingSpec, generators: Iterable = ()):
        self.spec = spec
        self.generators: list[CoeffElem] = []
        self._pivots: list[Pivot] = []
        for g in generators:
            self.add(g)

    def _shifts(self, g: CoeffElem) -> list[list[int]]:
        K = self.spec.K
        return [[0] * i + list(g.coeffs[: K - i]) for i in range(K)]

    def contains(self, x) -> bool:
        x = self.spec(x)
        return in_span(self._pivots, x.coeffs, self.spec.p, self.spec.N)

    __contains__ = contains

    def add(self, g) -> bool:
        """Insert a generator; returns whether the ideal grew."""
        g = self.spec(g)
        if self.contains(g):
            return False
        rows = [p.row for p in self._pivots] + self._shifts(g)
        self._pivots = howell_form(rows, self.spec.p, self.spec.N, self.spec.K)
        self.generators.append(g)
        return True

    def is_trivial(self) -> bool:
        return self.contains(1)

    def in_ideal_entrywise(self, xs: Iterable) -> bool:
        return all(self.contains(x) for x in xs)

    @property
    def basis(self) -> list[CoeffElem]:
        return [CoeffElem(self.spec, p.row) for p in self._pivots]

    def basis_key(self) -> tuple:
        return tuple(tuple(p.row) for p in self._pivots)

    def copy(self) -> "Ideal":
        other = Ideal(self.spec)
        other.generators = list(self.generators)
        other._pivots = [Pivot(p.col, p.exp, list(p.row)) for p in self._pivots]
        return other

    def same_as(self, other: "Ideal") -> bool:
        return self.spec == other.spec and self.basis_key() == other.basis_key()

    def reduced_to(self, spec: CoeffRingSpec) -> "Ideal":
        """Image of this ideal in a smaller truncation."""
        return Ideal(spec, [g.reduce_to(spec) for g in self.generators])

    def sorted_generators(self) -> list[CoeffElem]:
        return sorted(self.generators, key=CoeffElem.sort_key)

    def __repr__(self):
        gens = ", ".join(str(g) for g in self.sorted_generators())
        return f"Ideal({gens}) in {self.spec.describe()}"


def contains(ideal: Ideal, x) -> bool:
    return ideal.contains(x)


def is_trivial(ideal: Ideal) -> bool:
    return ideal.is_trivial()


def row_times_matrix(v: Sequence[CoeffElem], M: WindowMatrix) -> list[CoeffElem]:
    r = M.size
    out = []
    for j in range(r):
        acc = v[0] * M[0, j]
        for i in range(1, r):
            acc = acc + v[i] * M[i, j]
        out.append(acc)
    return out


def dot(v: Sequence[CoeffElem], w: Sequence[CoeffElem]) -> CoeffElem:
    acc = v[0] * w[0]
    for x, y in zip(v[1:], w[1:]):
        acc = acc + x * y
    return acc


@lru_cache(maxsize=4096)
def _syzygy_rows(M: WindowMatrix, spec: CoeffRingSpec, basis_key: tuple) -> tuple:
    r, K = M.size, spec.K
    images = []
    for i in range(r):
        for s in range(K):
            row = []
            for l in range(r):
                entry = M[i, l]
                row.extend([0] * s + list(entry.coeffs[: K - s]))
            images.append(row)
    relations = []
    for l in range(r):
        for b in basis_key:
            relations.append([0] * (l * K) + list(b) + [0] * ((r - l - 1) * K))
    kernel = left_kernel(images, relations, spec.p, spec.N)
    return tuple(tuple(row) for row in kernel)


def syzygies(M: WindowMatrix, ideal: Ideal) -> list[tuple[CoeffElem, ...]]:
    """Generators of the left kernel {v : v M = 0 entrywise modulo the ideal}.

    The zero vector is omitted, so an empty list means the kernel is zero.
    """
    spec = ideal.spec
    K = spec.K
    out = []
    for row in _syzygy_rows(M, spec, ideal.basis_key()):
        if any(row):
            out.append(tuple(CoeffElem(spec, row[i * K:(i + 1) * K]) for i in range(M.size)))
    return out


@dataclass(frozen=True)
class Derivation:
    """One application of the window rule: relation = v . pbar(x)."""

    x: CoeffElem
    loop_level: int
    v: tuple
    relation: CoeffElem

    def as_dict(self) -> dict:
        return {
            "x": str(self.x),
            "loop_level": self.loop_level,
            "syzygy": [str(c) for c in self.v],
            "relation": str(self.relation),
        }


def window_shift(n: int) -> int:
    return n // 2


def apply_rule(pres: ETheoryPresentation, n: int, ideal: Ideal, x) -> list[Derivation]:
    """Relations forced on pi_0(R) by x = 0 in an E_n-algebra R, not already in the ideal.

    Each emitted relation's syzygy is re-checked by direct expansion.
    """
    x = pres.spec(x)
    if n < 2:
        raise ValueError("loop level must be at least 2")
    if not ideal.contains(x):
        raise ValueError(f"{x} is not in the ideal")
    pbar = pbar_coeffs(pres, x)
    M = window_matrix(pres, window_shift(n))
    out = []
    seen = set()
    for v in syzygies(M, ideal):
        rel = dot(v, pbar)
        if rel in seen or ideal.contains(rel):
            continue
        if not ideal.in_ideal_entrywise(row_times_matrix(v, M)):
            raise CertificationError(f"v = {[str(c) for c in v]} is not a syzygy")
        seen.add(rel)
        out.append(Derivation(x, n, v, rel))
    return out


@dataclass
class Limits:
    max_passes: int = 64
    max_rows: int = 4096


@dataclass
class SaturationReport:
    presentation: str
    spec: CoeffRingSpec
    loop_level: int
    initial: list[CoeffElem]
    ideal: Ideal
    trace: list[Derivation]
    passes: int
    fixpoint: bool
    limit_hit: str | None = None
    mode: str = "generators"

    @property
    def generators(self) -> list[CoeffElem]:
        return self.ideal.sorted_generators()

    @property
    def trivial(self) -> bool:
        return self.ideal.is_trivial()

    @property
    def modulus(self) -> str:
        s = self.spec
        return f"{s.p}^{s.N}" if s.K == 1 else f"{s.p}^{s.N}, a^{s.K}"

    def as_dict(self) -> dict:
        return {
            "presentation": self.presentation,
            "ring": self.spec.describe(),
            "modulus": self.modulus,
            "loop_level": self.loop_level,
            "mode": self.mode,
            "initial": [str(g) for g in self.initial],
            "generators": [str(g) for g in self.generators],
            "trivial": self.trivial,
            "fixpoint": self.fixpoint,
            "passes": self.passes,
            "limit_hit": self.limit_hit,
            "trace": [d.as_dict() for d in self.trace],
        }

    def to_text(self) -> str:
        d = self.as_dict()
        lines = [
            f"presentation: {d['presentation']}",
            f"ring:         {d['ring']}",
            f"loop level:   {d['loop_level']}  (mode: {d['mode']})",
            f"initial:      {', '.join(d['initial'])}  (mod {d['modulus']})",
            f"generators:   {', '.join(d['generators'])}  (mod {d['modulus']})",
            f"trivial:      {d['trivial']}",
            f"fixpoint:     {d['fixpoint']}",
            f"passes:       {d['passes']}",
        ]
        if self.limit_hit:
            lines.append(f"limit hit:    {self.limit_hit}")
        lines.append("trace:")
        for k, t in enumerate(d["trace"], 1):
            v = ", ".join(t["syzygy"])
            lines.append(f"  {k}. x = {t['x']}, E_{t['loop_level']}, v = ({v}) => {t['relation']} = 0")
        return "\n".join(lines)


def admissible_levels(n: int) -> list[int]:
    """Even loop levels 2 <= n' <= n; an E_n-algebra is an E_n'-algebra."""
    return list(range(2, n + 1, 2))


def _candidates(ideal: Ideal, exhaustive: bool) -> list[CoeffElem]:
    cands = list(ideal.generators)
    if exhaustive:
        a = ideal.spec.gen()
        extra = [g * a ** i for g in ideal.generators for i in range(1, ideal.spec.K)]
        extra += ideal.basis
        seen = set(cands)
        for c in extra:
            if c and c not in seen:
                seen.add(c)
                cands.append(c)
    return [c for c in cands if c.in_maximal_ideal()]


def saturate(pres: ETheoryPresentation, n: int, initial: Iterable,
             limits: Limits | None = None, exhaustive: bool = False) -> SaturationReport:
    """Close the initial relations under the window rule at every even level <= n."""
    limits = limits or Limits()
    spec = pres.spec
    initial = [spec(x) for x in initial]
    for x in initial:
        if not x.in_maximal_ideal():
            raise ValueError(f"initial relation {x} is not in the maximal ideal")
    ideal = Ideal(spec, initial)
    trace: list[Derivation] = []
    levels = admissible_levels(n)
    r = pres.rank
    passes, fixpoint, limit_hit = 0, False, None

    while not ideal.is_trivial():
        if passes >= limits.max_passes:
            limit_hit = f"max_passes={limits.max_passes}"
            break
        passes += 1
        grew = False
        for x in _candidates(ideal, exhaustive):
            for level in levels:
                rows = r * spec.K * (1 + len(ideal.basis))
                if rows > limits.max_rows:
                    limit_hit = f"max_rows={limits.max_rows}"
                    break
                for d in apply_rule(pres, level, ideal, x):
                    if ideal.add(d.relation):
                        trace.append(d)
                        grew = True
                if ideal.is_trivial() or limit_hit:
                    break
            if ideal.is_trivial() or limit_hit:
                break
        if limit_hit:
            break
        if not grew:
            fixpoint = True
            break
    if ideal.is_trivial():
        fixpoint = True

    return SaturationReport(
        presentation=pres.name,
        spec=spec,
        loop_level=n,
        initial=initial,
        ideal=ideal,
        trace=trace,
        passes=passes,
        fixpoint=fixpoint,
        limit_hit=limit_hit,
        mode="exhaustive" if exhaustive else "generators",
    )


def verify_fixpoint(pres: ETheoryPresentation, report: SaturationReport) -> bool:
    """Re-run the rule on every generator at every level; True if nothing new appears."""
    if report.trivial:
        return True
    ideal = report.ideal
    for x in _candidates(ideal, report.mode == "exhaustive"):
        for level in admissible_levels(report.loop_level):
            if apply_rule(pres, level, ideal, x):
                return False
    return True


def verify_trace(pres: ETheoryPresentation, report: SaturationReport) -> bool:
    """Replay the trace: each relation must equal v . pbar(x) with v M in the ideal known so far."""
    ideal = Ideal(report.spec, report.initial)
    for d in report.trace:
        if not ideal.contains(d.x):
            return False
        M = window_matrix(pres, window_shift(d.loop_level))
        if not ideal.in_ideal_entrywise(row_times_matrix(d.v, M)):
            return False
        if dot(d.v, pbar_coeffs(pres, d.x)) != d.relation:
            return False
        ideal.add(d.relation)
    return ideal.same_as(report.ideal)
