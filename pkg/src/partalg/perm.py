"""Permutations, integer partitions and class functions of symmetric groups.

Composition convention
----------------------
Products are read left to right: ``(p * q)(x) == q(p(x))``.  This is the
order in which diagrams are stacked: the diagram of ``p`` joins top dot ``i``
to bottom dot ``p(i)``, and stacking the diagram of ``p`` on top of the
diagram of ``q`` gives the diagram of ``p * q``.  With this convention the
embedding of the symmetric group into the partition algebra and the
propagating-line permutation of a diagram are both multiplicative.
"""

from __future__ import annotations

import itertools
import math
import re
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

from .errors import DomainError, ResourceLimitError

Partition = tuple  # weakly decreasing tuple of positive ints

MAX_GROUP_DEGREE = 12
MAX_ENUMERATED_ORDER = 100_000


@dataclass(frozen=True, order=True)
class Permutation:
    """A permutation of ``{1..degree}`` in one-line notation (1-based images)."""

    images: tuple

    def __post_init__(self):
        if sorted(self.images) != list(range(1, len(self.images) + 1)):
            raise DomainError(f"{self.images} is not a permutation in one-line notation")

    @property
    def degree(self) -> int:
        return len(self.images)

    @classmethod
    def identity(cls, degree: int) -> Permutation:
        return cls(tuple(range(1, degree + 1)))

    @classmethod
    def from_cycles(cls, degree: int, *cycles: Sequence[int]) -> Permutation:
        images = list(range(1, degree + 1))
        seen = set()
        for cyc in cycles:
            for a in cyc:
                if not 1 <= a <= degree or a in seen:
                    raise DomainError(f"bad cycle {cyc} for degree {degree}")
                seen.add(a)
            for a, b in zip(cyc, cyc[1:] + type(cyc)(cyc[:1])):
                images[a - 1] = b
        return cls(tuple(images))

    @classmethod
    def transposition(cls, degree: int, a: int, b: int) -> Permutation:
        return cls.from_cycles(degree, (a, b))

    @classmethod
    def parse(cls, text: str, degree: int) -> Permutation:
        """Parse cycle notation such as ``(1 3 2)(4,5)``; ``()`` is the identity."""
        stripped = text.strip()
        if not re.fullmatch(r"(\(\s*(\d+([\s,]+\d+)*)?\s*\)\s*)*", stripped):
            raise DomainError(f"cannot parse permutation {text!r}")
        result = cls.identity(degree)
        for body in re.findall(r"\(([^)]*)\)", stripped):
            pts = [int(t) for t in re.split(r"[\s,]+", body.strip()) if t]
            if len(pts) > 1:
                result = result * cls.from_cycles(degree, tuple(pts))
        return result

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __mul__(self, other: Permutation) -> Permutation:
        if not isinstance(other, Permutation):
            return NotImplemented
        if other.degree != self.degree:
            raise DomainError(f"degree mismatch {self.degree} vs {other.degree}")
        img = other.images
        return Permutation(tuple(img[x - 1] for x in self.images))

    def inverse(self) -> Permutation:
        inv = [0] * self.degree
        for i, x in enumerate(self.images, start=1):
            inv[x - 1] = i
        return Permutation(tuple(inv))

    def __pow__(self, k: int) -> Permutation:
        base = self if k >= 0 else self.inverse()
        result = Permutation.identity(self.degree)
        for _ in range(abs(k)):
            result = result * base
        return result

    def is_identity(self) -> bool:
        return all(x == i for i, x in enumerate(self.images, start=1))

    def cycles(self) -> list[tuple[int, ...]]:
        seen = set()
        out = []
        for start in range(1, self.degree + 1):
            if start in seen:
                continue
            cyc = [start]
            seen.add(start)
            x = self(start)
            while x != start:
                cyc.append(x)
                seen.add(x)
                x = self(x)
            out.append(tuple(cyc))
        return out

    def cycle_type(self) -> Partition:
        return tuple(sorted((len(c) for c in self.cycles()), reverse=True))

    def sign(self) -> int:
        return -1 if sum(len(c) - 1 for c in self.cycles()) % 2 else 1

    def extend(self, degree: int, offset: int = 0) -> Permutation:
        """Embed into ``Sym(degree)`` acting on ``offset+1 .. offset+self.degree``."""
        if offset + self.degree > degree:
            raise DomainError("extension does not fit")
        images = list(range(1, degree + 1))
        for i, x in enumerate(self.images, start=1):
            images[offset + i - 1] = offset + x
        return Permutation(tuple(images))

    def restrict(self, points: Sequence[int]) -> Permutation:
        """Restriction to an invariant run of points, relabelled to ``1..len(points)``."""
        index = {p: k for k, p in enumerate(points, start=1)}
        try:
            return Permutation(tuple(index[self(p)] for p in points))
        except KeyError:
            raise DomainError(f"{self} does not preserve {tuple(points)}") from None

    def __str__(self) -> str:
        parts = ["(" + " ".join(map(str, c)) + ")" for c in self.cycles() if len(c) > 1]
        return "".join(parts) or "()"

    def __repr__(self) -> str:
        return f"Permutation({self.images})"


def all_permutations(degree: int) -> list[Permutation]:
    """``Sym(degree)`` in lexicographic order of one-line notation."""
    return [Permutation(p) for p in itertools.permutations(range(1, degree + 1))]


def adjacent_transpositions(degree: int, points: Sequence[int] | None = None) -> list[Permutation]:
    pts = list(points) if points is not None else list(range(1, degree + 1))
    return [Permutation.transposition(degree, a, b) for a, b in zip(pts, pts[1:])]


# ---------------------------------------------------------------------------
# Schreier-Sims


def _sift(base, transversals, g, start=0):
    for i in range(start, len(base)):
        beta = g(base[i])
        u = transversals[i].get(beta)
        if u is None:
            return g, i
        g = g * u.inverse()
    return g, len(base)


def _orbit_transversal(point, gens, degree):
    trans = {point: Permutation.identity(degree)}
    queue = deque([point])
    while queue:
        beta = queue.popleft()
        for s in gens:
            gamma = s(beta)
            if gamma not in trans:
                trans[gamma] = trans[beta] * s
                queue.append(gamma)
    return trans


def _first_moved(g):
    return next(i for i in range(1, g.degree + 1) if g(i) != i)


def schreier_sims(generators: Sequence[Permutation], degree: int):
    """Base and transversals of a stabilizer chain for ``<generators>``."""
    if degree > MAX_GROUP_DEGREE:
        raise ResourceLimitError(f"degree {degree} exceeds the cap {MAX_GROUP_DEGREE}")
    gens = [g for g in generators if not g.is_identity()]
    base: list[int] = []
    for g in gens:
        if all(g(b) == b for b in base):
            base.append(_first_moved(g))
    strong = [[g for g in gens if all(g(b) == b for b in base[:i])] for i in range(len(base))]
    trans = [_orbit_transversal(base[i], strong[i], degree) for i in range(len(base))]
    i = len(base) - 1
    while i >= 0:
        extended = False
        for beta in list(trans[i]):
            for s in strong[i]:
                h = trans[i][beta] * s * trans[i][s(beta)].inverse()
                y, j = _sift(base, trans, h, i + 1)
                if y.is_identity():
                    continue
                if j == len(base):
                    base.append(_first_moved(y))
                    strong.append([])
                    trans.append({})
                for lv in range(i + 1, j + 1):
                    strong[lv].append(y)
                    trans[lv] = _orbit_transversal(base[lv], strong[lv], degree)
                i = j
                extended = True
                break
            if extended:
                break
        if not extended:
            i -= 1
    return base, trans


def group_order(generators: Sequence[Permutation], degree: int) -> int:
    _, trans = schreier_sims(generators, degree)
    return math.prod(len(t) for t in trans)


def group_contains(generators: Sequence[Permutation], degree: int, g: Permutation) -> bool:
    base, trans = schreier_sims(generators, degree)
    residue, _ = _sift(base, trans, g)
    return residue.is_identity()


def enumerate_group(generators: Sequence[Permutation], degree: int) -> list[Permutation]:
    """All elements, sorted lexicographically; refuses groups above the enumeration cap."""
    order = group_order(generators, degree)
    if order > MAX_ENUMERATED_ORDER:
        raise ResourceLimitError(f"group of order {order} is too large to enumerate")
    identity = Permutation.identity(degree)
    seen = {identity}
    queue = deque([identity])
    while queue:
        x = queue.popleft()
        for g in generators:
            y = x * g
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return sorted(seen)


def word_search(generators: Sequence[Permutation], degree: int) -> dict[Permutation, tuple[int, ...]]:
    """Shortest words: element -> generator indices ``w`` with element = g[w0]*g[w1]*...

    Breadth-first, so the result is deterministic for a fixed generator list.
    """
    identity = Permutation.identity(degree)
    words = {identity: ()}
    queue = deque([identity])
    while queue:
        x = queue.popleft()
        for k, g in enumerate(generators):
            y = x * g
            if y not in words:
                words[y] = words[x] + (k,)
                queue.append(y)
    return words


# ---------------------------------------------------------------------------
# Integer partitions


@lru_cache(maxsize=None)
def partitions(n: int) -> tuple[Partition, ...]:
    """Partitions of n in reverse lexicographic order, ``(n)`` first."""
    if n == 0:
        return ((),)

    def gen(m, largest):
        if m == 0:
            yield ()
            return
        for k in range(min(m, largest), 0, -1):
            for rest in gen(m - k, k):
                yield (k,) + rest

    return tuple(gen(n, n))


def partitions_with_length(n: int, k: int) -> list[Partition]:
    return [p for p in partitions(n) if len(p) == k]


def conjugate(lam: Partition) -> Partition:
    if not lam:
        return ()
    return tuple(sum(1 for part in lam if part > i) for i in range(lam[0]))


def parse_partition(text: str) -> Partition:
    body = text.strip().strip("()[]")
    if not body:
        return ()
    parts = [int(t) for t in re.split(r"[\s,]+", body) if t]
    if any(p <= 0 for p in parts) or parts != sorted(parts, reverse=True):
        raise DomainError(f"{text!r} is not a partition")
    return tuple(parts)


def format_partition(lam: Partition) -> str:
    return "(" + ",".join(map(str, lam)) + ")"


def z_value(mu: Partition) -> int:
    """Order of the centralizer of an element of cycle type mu."""
    out = 1
    for part, mult in _multiplicities(mu).items():
        out *= part ** mult * math.factorial(mult)
    return out


def class_size(mu: Partition) -> int:
    return math.factorial(sum(mu)) // z_value(mu)


def _multiplicities(mu):
    counts: dict[int, int] = {}
    for part in mu:
        counts[part] = counts.get(part, 0) + 1
    return counts


def cycle_type_representative(mu: Partition) -> Permutation:
    n = sum(mu)
    cycles = []
    start = 1
    for part in mu:
        cycles.append(tuple(range(start, start + part)))
        start += part
    return Permutation.from_cycles(n, *cycles)


def hook_length_dimension(lam: Partition) -> int:
    """Number of standard Young tableaux of shape lam."""
    n = sum(lam)
    conj = conjugate(lam)
    hooks = 1
    for i, row in enumerate(lam):
        for j in range(row):
            hooks *= row - j + conj[j] - i - 1
    return math.factorial(n) // hooks


def standard_tableaux(lam: Partition) -> list[tuple[tuple[int, ...], ...]]:
    """Standard Young tableaux of shape lam, rows as tuples, in a fixed order."""
    n = sum(lam)
    out = []

    def place(k, rows):
        if k > n:
            out.append(tuple(tuple(r) for r in rows))
            return
        for i in range(len(lam)):
            if len(rows[i]) < lam[i] and (i == 0 or len(rows[i - 1]) > len(rows[i])):
                rows[i].append(k)
                place(k + 1, rows)
                rows[i].pop()

    place(1, [[] for _ in lam])
    return out


# ---------------------------------------------------------------------------
# Class functions


@dataclass
class ClassFunction:
    """A class function on Sym(degree), keyed by cycle type, exact rational values."""

    degree: int
    values: dict = field(default_factory=dict)

    def __post_init__(self):
        self.values = {tuple(mu): Fraction(self.values.get(tuple(mu), 0)) for mu in partitions(self.degree)}

    @classmethod
    def from_callable(cls, degree: int, fn) -> ClassFunction:
        return cls(degree, {mu: fn(mu) for mu in partitions(degree)})

    @classmethod
    def trivial(cls, degree: int) -> ClassFunction:
        return cls(degree, {mu: 1 for mu in partitions(degree)})

    def __call__(self, mu) -> Fraction:
        return self.values[tuple(mu)]

    def __add__(self, other: ClassFunction) -> ClassFunction:
        self._check(other)
        return ClassFunction(self.degree, {mu: self.values[mu] + other.values[mu] for mu in self.values})

    def __sub__(self, other: ClassFunction) -> ClassFunction:
        self._check(other)
        return ClassFunction(self.degree, {mu: self.values[mu] - other.values[mu] for mu in self.values})

    def scale(self, c) -> ClassFunction:
        return ClassFunction(self.degree, {mu: c * v for mu, v in self.values.items()})

    def inner(self, other: ClassFunction) -> Fraction:
        self._check(other)
        total = Fraction(0)
        for mu, v in self.values.items():
            total += Fraction(v * other.values[mu], z_value(mu))
        return total

    def dimension(self) -> Fraction:
        return self.values[(1,) * self.degree] if self.degree else self.values[()]

    def _check(self, other):
        if other.degree != self.degree:
            raise DomainError(f"class functions of degrees {self.degree} and {other.degree}")

    def __eq__(self, other):
        return isinstance(other, ClassFunction) and self.degree == other.degree and self.values == other.values


def iter_splits(mu: Partition, k: int) -> Iterator[tuple[Partition, Partition, int]]:
    """Ways to split the cycles of mu into a part of weight k and the rest.

    Yields ``(mu1, mu2, c)`` where ``c = z(mu) / (z(mu1) z(mu2))``.
    """
    mult = sorted(_multiplicities(mu).items(), reverse=True)

    def rec(idx, remaining, left, right, coeff):
        if idx == len(mult):
            if remaining == 0:
                yield tuple(left), tuple(right), coeff
            return
        part, m = mult[idx]
        for take in range(m + 1):
            if take * part > remaining:
                break
            yield from rec(
                idx + 1,
                remaining - take * part,
                left + [part] * take,
                right + [part] * (m - take),
                coeff * math.comb(m, take),
            )

    yield from rec(0, k, [], [], 1)


def induce_from_subgroup(elements: Iterable[Permutation], values, degree: int) -> ClassFunction:
    """Induce a class function given on an explicit subgroup ``H`` of Sym(degree).

    ``values`` maps each element of ``H`` to the character value there.
    Uses ``Ind(mu) = z(mu)/|H| * sum_{h in H of type mu} chi(h)``.
    """
    elements = list(elements)
    sums: dict = {}
    for h in elements:
        mu = h.cycle_type()
        sums[mu] = sums.get(mu, 0) + Fraction(values[h])
    order = len(elements)
    return ClassFunction(degree, {mu: Fraction(z_value(mu), order) * s for mu, s in sums.items()})
