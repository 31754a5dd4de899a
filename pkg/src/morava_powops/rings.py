"""Truncated coefficient rings and the quotient ring E0[z]/f(z).

The coefficient ring is ``Z/p^N`` (``K == 1``, height one) or
``Z/2^N[a]/(a^K)`` (height two).  Elements are stored canonically: integer
residues in ``[0, p^N)`` and ``a``-degree below ``K``, so equality is a tuple
comparison.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from importlib import resources
from pathlib import Path
from typing import Iterable, Sequence


@dataclass(frozen=True)
class CoeffRingSpec:
    p: int
    N: int
    K: int = 1

    def __post_init__(self):
        if self.p < 2 or self.N < 1 or self.K < 1:
            raise ValueError(f"invalid ring parameters {self}")
        if self.K > 1 and self.p != 2:
            raise ValueError("a-adic truncation is only supported at p = 2")

    @cached_property
    def modulus(self) -> int:
        return self.p ** self.N

    def __call__(self, value) -> "CoeffElem":
        if isinstance(value, CoeffElem):
            if value.spec != self:
                raise ValueError("element belongs to a different ring")
            return value
        if isinstance(value, int):
            return CoeffElem(self, (value,))
        return CoeffElem(self, tuple(value))

    def zero(self) -> "CoeffElem":
        return CoeffElem(self, ())

    def one(self) -> "CoeffElem":
        return CoeffElem(self, (1,))

    def gen(self) -> "CoeffElem":
        """The deformation parameter a (zero when K == 1)."""
        return CoeffElem(self, (0, 1))

    def describe(self) -> str:
        if self.K == 1:
            return f"Z/{self.p}^{self.N}"
        return f"Z/{self.p}^{self.N}[a]/(a^{self.K})"


class CoeffElem:
    """An element sum c_i a^i of the truncated coefficient ring."""

    __slots__ = ("spec", "coeffs")

    def __init__(self, spec: CoeffRingSpec, coeffs: Sequence[int] = ()):
        q, K = spec.modulus, spec.K
        cs = [0] * K
        for i, c in enumerate(coeffs[:K]):
            cs[i] = c % q
        self.spec = spec
        self.coeffs = tuple(cs)

    def _coerce(self, other):
        if isinstance(other, CoeffElem):
            if other.spec != self.spec:
                raise ValueError("mixing elements of different rings")
            return other
        if isinstance(other, int):
            return CoeffElem(self.spec, (other,))
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return CoeffElem(self.spec, [x + y for x, y in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return CoeffElem(self.spec, [-x for x in self.coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return CoeffElem(self.spec, [x - y for x, y in zip(self.coeffs, other.coeffs)])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        K = self.spec.K
        out = [0] * K
        for i, x in enumerate(self.coeffs):
            if x:
                for j in range(K - i):
                    y = other.coeffs[j]
                    if y:
                        out[i + j] += x * y
        return CoeffElem(self.spec, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not supported")
        result, base = self.spec.one(), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.spec, self.coeffs))

    def __bool__(self):
        return any(self.coeffs)

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i]

    @property
    def degree(self) -> int:
        """Highest a-degree with a nonzero coefficient, -1 for zero."""
        for i in range(len(self.coeffs) - 1, -1, -1):
            if self.coeffs[i]:
                return i
        return -1

    def lift(self) -> list[int]:
        """Coefficients as integers in the symmetric range (-q/2, q/2]."""
        q = self.spec.modulus
        return [c - q if c > q // 2 else c for c in self.coeffs]

    def is_unit(self) -> bool:
        return self.coeffs[0] % self.spec.p != 0

    def in_maximal_ideal(self) -> bool:
        return not self.is_unit()

    def sort_key(self):
        """Graded by a-degree, then by residues from the top coefficient down."""
        return (self.degree, tuple(reversed(self.coeffs)))

    def reduce_to(self, spec: CoeffRingSpec) -> "CoeffElem":
        """Image under the truncation map to a smaller ring."""
        if spec.p != self.spec.p or spec.N > self.spec.N or spec.K > self.spec.K:
            raise ValueError(f"{spec.describe()} is not a quotient of {self.spec.describe()}")
        return CoeffElem(spec, self.coeffs)

    def __str__(self):
        if self.spec.K == 1:
            return str(self.coeffs[0])
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                mono = "a" if i == 1 else f"a^{i}"
                terms.append(mono if c == 1 else f"{c}*{mono}")
        return " + ".join(terms) if terms else "0"

    def __repr__(self):
        return f"CoeffElem({self}, {self.spec.describe()})"


@dataclass(frozen=True)
class SigmaRing:
    """E0[z]/f(z) for a monic f with zero constant term."""

    spec: CoeffRingSpec
    f: tuple  # CoeffElem coefficients, low degree first, f[-1] == 1

    @property
    def degree(self) -> int:
        return len(self.f) - 1

    def __call__(self, coeffs) -> "SigmaElem":
        if isinstance(coeffs, SigmaElem):
            return coeffs
        if isinstance(coeffs, (int, CoeffElem)):
            coeffs = [coeffs]
        return SigmaElem(self, [self.spec(c) for c in coeffs])

    def zero(self) -> "SigmaElem":
        return SigmaElem(self, [])

    def one(self) -> "SigmaElem":
        return SigmaElem(self, [self.spec.one()])

    def z(self) -> "SigmaElem":
        return SigmaElem(self, [self.spec.zero(), self.spec.one()])

    def reduce(self, coeffs: list) -> list:
        """Euclidean reduction of a z-polynomial modulo the monic f."""
        d = self.degree
        coeffs = list(coeffs)
        for top in range(len(coeffs) - 1, d - 1, -1):
            c = coeffs[top]
            if c:
                for i in range(d):
                    if self.f[i]:
                        coeffs[top - d + i] = coeffs[top - d + i] - c * self.f[i]
            coeffs[top] = self.spec.zero()
        return coeffs[:d]


class SigmaElem:
    """An element sum s_j z^j of E0[z]/f(z) with z-degree below deg f."""

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring: SigmaRing, coeffs: Sequence[CoeffElem]):
        coeffs = list(coeffs)
        if len(coeffs) > ring.degree:
            coeffs = ring.reduce(coeffs)
        zero = ring.spec.zero()
        coeffs += [zero] * (ring.degree - len(coeffs))
        self.ring = ring
        self.coeffs = tuple(coeffs)

    def _coerce(self, other):
        if isinstance(other, SigmaElem):
            if other.ring != self.ring:
                raise ValueError("mixing elements of different rings")
            return other
        if isinstance(other, (int, CoeffElem)):
            return self.ring(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return SigmaElem(self.ring, [x + y for x, y in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return SigmaElem(self.ring, [-x for x in self.coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return SigmaElem(self.ring, [x - y for x, y in zip(self.coeffs, other.coeffs)])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, CoeffElem)):
            return SigmaElem(self.ring, [x * other for x in self.coeffs])
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        zero = self.ring.spec.zero()
        out = [zero] * (2 * self.ring.degree - 1)
        for i, x in enumerate(self.coeffs):
            if x:
                for j, y in enumerate(other.coeffs):
                    if y:
                        out[i + j] = out[i + j] + x * y
        return SigmaElem(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        result, base = self.ring.one(), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __getitem__(self, j: int) -> CoeffElem:
        return self.coeffs[j]

    def at_zero(self) -> CoeffElem:
        """Evaluation z = 0, a ring map because f(0) = 0."""
        return self.coeffs[0]

    def __str__(self):
        terms = []
        for j, c in enumerate(self.coeffs):
            if not c:
                continue
            s = str(c)
            if j == 0:
                terms.append(s)
                continue
            mono = "z" if j == 1 else f"z^{j}"
            if s == "1":
                terms.append(mono)
            elif " + " in s:
                terms.append(f"({s})*{mono}")
            else:
                terms.append(f"{s}*{mono}")
        return " + ".join(terms) if terms else "0"

    def __repr__(self):
        return f"SigmaElem({self})"


@dataclass(frozen=True, eq=False)
class ETheoryPresentation:
    """Power-operation data (p, h, f, tr(1), P(a)) for one E-theory."""

    spec: CoeffRingSpec
    height: int
    f: tuple
    tr1: SigmaElem
    p_of_a: SigmaElem | None
    name: str = ""
    fixtures: dict = field(default_factory=dict)

    @property
    def ring(self) -> SigmaRing:
        return self.tr1.ring

    @property
    def degree(self) -> int:
        return len(self.f) - 1

    @property
    def rank(self) -> int:
        """Rank r = deg f - 1 of the module z E0[z]/f."""
        return self.degree - 1


@lru_cache(maxsize=None)
def reduce_z_power(pres: ETheoryPresentation, k: int) -> SigmaElem:
    """Canonical representative of z**k modulo f."""
    if k < 0:
        raise ValueError("k must be non-negative")
    ring = pres.ring
    if k == 0:
        return ring.one()
    if k < ring.degree:
        return SigmaElem(ring, [ring.spec.zero()] * k + [ring.spec.one()])
    # shift the previous reduction up by one and re-reduce
    return SigmaElem(ring, (ring.spec.zero(),) + reduce_z_power(pres, k - 1).coeffs)


@dataclass(frozen=True)
class WindowMatrix:
    """M[i][j] = coefficient of z^(i+1) in z^(j+1+shift) mod f, 0-indexed."""

    shift: int
    entries: tuple

    @property
    def size(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __matmul__(self, other: "WindowMatrix") -> "WindowMatrix":
        r = self.size
        rows = []
        for i in range(r):
            row = []
            for j in range(r):
                acc = self.entries[i][0] * other.entries[0][j]
                for k in range(1, r):
                    acc = acc + self.entries[i][k] * other.entries[k][j]
                row.append(acc)
            rows.append(tuple(row))
        return WindowMatrix(self.shift + other.shift, tuple(rows))

    def dual_images(self) -> list[list[tuple[CoeffElem, int]]]:
        """For each delta_{z^i}, the list of (coefficient, exponent) of its image."""
        return [
            [(c, j + 1 + self.shift) for j, c in enumerate(row) if c]
            for row in self.entries
        ]


@lru_cache(maxsize=None)
def window_matrix(pres: ETheoryPresentation, m: int) -> WindowMatrix:
    if m < 0:
        raise ValueError("shift must be non-negative")
    r = pres.rank
    cols = [reduce_z_power(pres, j + m) for j in range(1, r + 1)]
    entries = tuple(tuple(cols[j][i] for j in range(r)) for i in range(1, r + 1))
    return WindowMatrix(m, entries)


# presentation files -------------------------------------------------------

DATA_PACKAGE = "morava_powops.data"


def encode_poly(elem: SigmaElem) -> list:
    return [[j, list(c.lift())] for j, c in enumerate(elem.coeffs) if c]


def _decode_terms(terms: Iterable, spec: CoeffRingSpec) -> dict[int, CoeffElem]:
    out: dict[int, CoeffElem] = {}
    for exponent, coeffs in terms:
        if isinstance(coeffs, int):
            coeffs = [coeffs]
        if any(c and i >= spec.K for i, c in enumerate(coeffs)):
            raise ValueError(f"a-degree of {coeffs} exceeds truncation K={spec.K}")
        out[int(exponent)] = out.get(int(exponent), spec.zero()) + spec(coeffs)
    return out


def _dense(terms: dict[int, CoeffElem], spec: CoeffRingSpec) -> list[CoeffElem]:
    top = max(terms, default=-1)
    return [terms.get(j, spec.zero()) for j in range(top + 1)]


def resolve_presentation_path(name: str | Path) -> Path:
    path = Path(name)
    if path.exists():
        return path
    bundled = resources.files(DATA_PACKAGE).joinpath(path.name)
    if bundled.is_file():
        return Path(str(bundled))
    raise FileNotFoundError(f"no presentation file {name!r}")


def parse_presentation(data: dict, N: int | None = None, K: int | None = None) -> ETheoryPresentation:
    """Build a presentation from decoded file contents.

    ``f`` may be given with any unit leading coefficient; it is rescaled to
    be monic.
    """
    p, h = int(data["prime"]), int(data["height"])
    N = int(N if N is not None else data["N"])
    K = int(K if K is not None else data.get("K", 1))
    spec = CoeffRingSpec(p, N, K)
    f = _dense(_decode_terms(data["f"], spec), spec)
    if len(f) - 1 != p ** h:
        raise ValueError(f"deg f = {len(f) - 1}, expected p^h = {p ** h}")
    lead = f[-1]
    if not lead.is_unit() or lead.degree > 0:
        raise ValueError("leading coefficient of f must be an integer unit")
    inv = pow(lead[0], -1, spec.modulus)
    f = tuple(c * inv for c in f)
    ring = SigmaRing(spec, f)
    tr1 = ring(_dense(_decode_terms(data["tr1"], spec), spec))
    p_of_a = None
    if data.get("p_of_a") is not None:
        if K == 1:
            raise ValueError("P(a) given but the coefficient ring has no a")
        p_of_a = ring(_dense(_decode_terms(data["p_of_a"], spec), spec))
    elif K > 1:
        raise ValueError("height-two presentation needs P(a)")
    return ETheoryPresentation(
        spec=spec,
        height=h,
        f=f,
        tr1=tr1,
        p_of_a=p_of_a,
        name=data.get("name", ""),
        fixtures=data.get("fixtures", {}),
    )


def load_presentation(name: str | Path, N: int | None = None, K: int | None = None) -> ETheoryPresentation:
    """Load a presentation file by path or by bundled name (``height2.pres``)."""
    path = resolve_presentation_path(name)
    with open(path) as fh:
        data = json.load(fh)
    return parse_presentation(data, N=N, K=K)


def decode_sigma(pres: ETheoryPresentation, terms) -> SigmaElem:
    spec = pres.spec
    return pres.ring(_dense(_decode_terms(terms, spec), spec))
