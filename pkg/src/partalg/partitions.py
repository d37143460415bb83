"""Set-partition diagrams, partial diagrams and the symmetric-group action on them.

A diagram on ``r`` dots per row is a set partition of ``{1..2r}``: dot ``i``
(``1 <= i <= r``) is top-row dot ``i`` and dot ``r + i`` is bottom-row dot
``i'``.  Blocks are stored sorted, and sorted by their least element, so
equality of diagrams is equality of the stored tuples.
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import DomainError, MalformedPartitionError, ResourceLimitError
from .perm import Permutation, partitions, partitions_with_length

DEFAULT_MAX_R = 5


def max_r() -> int:
    return int(os.environ.get("PARTITION_ALG_MAX_R", DEFAULT_MAX_R))


@dataclass(frozen=True, order=True)
class SetPartitionDiagram:
    r: int
    blocks: tuple

    def top_dots(self):
        return range(1, self.r + 1)

    def block_of(self, dot: int) -> tuple:
        for b in self.blocks:
            if dot in b:
                return b
        raise DomainError(f"dot {dot} not in diagram")

    def __str__(self) -> str:
        return format_blocks(self.blocks, self.r)


@dataclass(frozen=True, order=True)
class PartialDiagram:
    """One row of ``r`` dots; ``labelled[k]`` flags ``blocks[k]``."""

    r: int
    blocks: tuple
    labelled: tuple

    @property
    def n(self) -> int:
        return sum(self.labelled)

    def labelled_blocks(self) -> list[tuple]:
        return [b for b, lab in zip(self.blocks, self.labelled) if lab]

    def unlabelled_blocks(self) -> list[tuple]:
        return [b for b, lab in zip(self.blocks, self.labelled) if not lab]

    def in_V(self, n: int, l: int | None = None) -> bool:
        if self.n != n:
            return False
        if l is None:
            return True
        fat = set(range(l, self.r + 1))
        return any(fat <= set(b) for b in self.blocks)

    def effective_blocks(self, l: int) -> list[tuple]:
        """Blocks on ``{1..l}`` with dots ``l..r`` merged into dot ``l``."""
        return [tuple(sorted({min(x, l) for x in b})) for b in self.blocks]

    def __str__(self) -> str:
        return " ".join(
            "[" + ",".join(map(str, b)) + "]" + ("*" if lab else "")
            for b, lab in zip(self.blocks, self.labelled)
        )


@dataclass(frozen=True)
class ClassSignature:
    """Counts of labelled (``alpha``) and unlabelled (``beta``) parts by effective size.

    ``alpha[i-1]`` is the number of labelled parts of size ``i``.
    """

    alpha: tuple
    beta: tuple
    l: int

    @property
    def n(self) -> int:
        return sum(self.alpha)

    @property
    def l1(self) -> int:
        return sum(i * a for i, a in enumerate(self.alpha, start=1))

    @property
    def l2(self) -> int:
        return sum(i * b for i, b in enumerate(self.beta, start=1))

    def labelled_sizes(self) -> list[int]:
        return [i for i, a in enumerate(self.alpha, start=1) for _ in range(a)]

    def unlabelled_sizes(self) -> list[int]:
        return [i for i, b in enumerate(self.beta, start=1) for _ in range(b)]

    def __str__(self) -> str:
        return f"alpha={self.alpha} beta={self.beta}"


# ---------------------------------------------------------------------------
# Construction and text format


def canonicalize(blocks: Iterable[Iterable[int]], r: int) -> SetPartitionDiagram:
    """Validate and normalize a raw collection of blocks into a diagram."""
    if r < 1:
        raise DomainError("r must be positive")
    seen: set[int] = set()
    out = []
    for raw in blocks:
        b = sorted(raw)
        if not b:
            raise MalformedPartitionError("empty block")
        for x in b:
            if not 1 <= x <= 2 * r:
                raise MalformedPartitionError(f"dot {_dot_name(x, r)} out of range for r={r}", x)
            if x in seen:
                raise MalformedPartitionError(f"dot {_dot_name(x, r)} occurs in two blocks", x)
            seen.add(x)
        out.append(tuple(b))
    for x in range(1, 2 * r + 1):
        if x not in seen:
            raise MalformedPartitionError(f"dot {_dot_name(x, r)} is missing", x)
    return SetPartitionDiagram(r, tuple(sorted(out)))


def make_partial(r: int, blocks: Iterable[Iterable[int]], labelled: Iterable[Iterable[int]] = ()) -> PartialDiagram:
    """Build a partial diagram; ``labelled`` lists the labelled blocks themselves."""
    bl = sorted(tuple(sorted(b)) for b in blocks)
    flat = sorted(x for b in bl for x in b)
    if flat != list(range(1, r + 1)):
        raise MalformedPartitionError(f"blocks {bl} do not partition 1..{r}")
    lab = {tuple(sorted(b)) for b in labelled}
    if not lab <= set(bl):
        raise MalformedPartitionError(f"labelled blocks {sorted(lab)} are not blocks")
    return PartialDiagram(r, tuple(bl), tuple(b in lab for b in bl))


def _dot_name(x: int, r: int) -> str:
    return str(x) if x <= r else f"{x - r}'"


def format_blocks(blocks, r: int) -> str:
    return ",".join("{" + ",".join(_dot_name(x, r) for x in b) + "}" for b in blocks)


_BLOCK_RE = re.compile(r"\{([^{}]*)\}")


def parse_diagram(text: str, r: int | None = None) -> SetPartitionDiagram:
    """Parse ``{1,2'},{3},{4,4'}``; r defaults to the largest label present."""
    compact = re.sub(r"\s+", "", text)
    if not re.fullmatch(r"\{[^{}]*\}(,\{[^{}]*\})*", compact):
        raise MalformedPartitionError(f"cannot parse diagram {text!r}")
    raw = []
    for body in _BLOCK_RE.findall(compact):
        raw.append([(int(t[:-1]), True) if t.endswith("'") else (int(t), False) for t in body.split(",") if t])
    if r is None:
        r = max(v for b in raw for v, _ in b)
    return canonicalize([[v + r if primed else v for v, primed in b] for b in raw], r)


def parse_partial(text: str, r: int | None = None) -> PartialDiagram:
    """Parse ``[1,3]* [2,4]`` where ``*`` marks labelled blocks."""
    items = re.findall(r"\[([^\]]*)\]\s*(\*?)", text)
    if not items:
        raise MalformedPartitionError(f"cannot parse partial diagram {text!r}")
    blocks = [[int(t) for t in re.split(r"[\s,]+", body.strip()) if t] for body, _ in items]
    lab = [b for b, (_, star) in zip(blocks, items) if star]
    if r is None:
        r = max(max(b) for b in blocks)
    return make_partial(r, blocks, lab)


def identity_diagram(r: int) -> SetPartitionDiagram:
    return SetPartitionDiagram(r, tuple((i, r + i) for i in range(1, r + 1)))


# ---------------------------------------------------------------------------
# Enumeration


def restricted_growth_strings(m: int) -> Iterator[tuple[int, ...]]:
    """All restricted growth strings of length m, lexicographically."""
    if m == 0:
        yield ()
        return
    a = [0] * m
    mx = [0] * m

    def rec(i):
        if i == m:
            yield tuple(a)
            return
        for v in range(mx[i - 1] + 2):
            a[i] = v
            mx[i] = max(mx[i - 1], v)
            yield from rec(i + 1)

    yield from rec(1)


def set_partitions(points: Sequence[int]) -> Iterator[list[tuple[int, ...]]]:
    for rgs in restricted_growth_strings(len(points)):
        blocks: list[list[int]] = [[] for _ in range(max(rgs, default=-1) + 1)]
        for p, k in zip(points, rgs):
            blocks[k].append(p)
        yield [tuple(b) for b in blocks]


def enumerate_diagrams(r: int, ceiling: int | None = None) -> list[SetPartitionDiagram]:
    """Every diagram on r dots per row, in restricted-growth-string order."""
    cap = max_r() if ceiling is None else ceiling
    if r < 1:
        raise DomainError("r must be positive")
    if r > cap:
        raise ResourceLimitError(f"r={r} exceeds the enumeration ceiling {cap} (Bell({2 * r}) diagrams)")
    return [SetPartitionDiagram(r, tuple(blocks)) for blocks in set_partitions(range(1, 2 * r + 1))]


def bell_number(m: int) -> int:
    """Bell numbers by the Bell triangle."""
    row = [1]
    for _ in range(m):
        nxt = [row[-1]]
        for x in row:
            nxt.append(nxt[-1] + x)
        row = nxt
    return row[0]


# ---------------------------------------------------------------------------
# Rows and propagating data


def propagating_number(d: SetPartitionDiagram) -> int:
    r = d.r
    return sum(1 for b in d.blocks if b[0] <= r < b[-1])


def rows_and_permutation(d: SetPartitionDiagram) -> tuple[PartialDiagram, PartialDiagram, Permutation]:
    """``top(d)``, ``bottom(d)`` and the propagating-line permutation.

    The permutation sends the index of a propagating part in the top row
    (counted left to right by leftmost dot) to the index of the same part
    in the bottom row.
    """
    r = d.r
    top, top_lab, bot, bot_lab = [], [], [], []
    prop = []
    for b in d.blocks:
        t = tuple(x for x in b if x <= r)
        s = tuple(x - r for x in b if x > r)
        if t:
            top.append(t)
            top_lab.append(bool(s))
        if s:
            bot.append(s)
            bot_lab.append(bool(t))
        if t and s:
            prop.append((t[0], s[0]))
    top_pd = _sorted_partial(r, top, top_lab)
    bot_pd = _sorted_partial(r, bot, bot_lab)
    top_order = sorted(t for t, _ in prop)
    bot_order = sorted(s for _, s in prop)
    t_index = {t: i for i, t in enumerate(top_order, start=1)}
    b_index = {s: i for i, s in enumerate(bot_order, start=1)}
    images = [0] * len(prop)
    for t, s in prop:
        images[t_index[t] - 1] = b_index[s]
    return top_pd, bot_pd, Permutation(tuple(images))


def _sorted_partial(r, blocks, flags):
    pairs = sorted(zip(blocks, flags))
    return PartialDiagram(r, tuple(b for b, _ in pairs), tuple(f for _, f in pairs))


def top_row(d: SetPartitionDiagram) -> PartialDiagram:
    return rows_and_permutation(d)[0]


def diagram_from_rows(top: PartialDiagram, bottom: PartialDiagram, pi: Permutation) -> SetPartitionDiagram:
    """Join the i-th labelled part of ``top`` to the ``pi(i)``-th labelled part of ``bottom``."""
    r = top.r
    tl, bl = top.labelled_blocks(), bottom.labelled_blocks()
    if len(tl) != len(bl) or pi.degree != len(tl):
        raise DomainError("labelled part counts disagree with the permutation degree")
    blocks = [b for b in top.unlabelled_blocks()]
    blocks += [tuple(x + r for x in b) for b in bottom.unlabelled_blocks()]
    for i, t in enumerate(tl, start=1):
        blocks.append(t + tuple(x + r for x in bl[pi(i) - 1]))
    return SetPartitionDiagram(r, tuple(sorted(tuple(sorted(b)) for b in blocks)))


def flip(d: SetPartitionDiagram) -> SetPartitionDiagram:
    """Turn a diagram upside down."""
    r = d.r
    swap = lambda x: x + r if x <= r else x - r  # noqa: E731
    return SetPartitionDiagram(r, tuple(sorted(tuple(sorted(swap(x) for x in b)) for b in d.blocks)))


# ---------------------------------------------------------------------------
# Partial diagrams in V_n^l and the action of Sym(l)


def _require_in_V(v: PartialDiagram, l: int):
    if not 1 <= l <= v.r:
        raise DomainError(f"l={l} outside 1..{v.r}")
    if not v.in_V(v.n, l):
        raise DomainError(f"{v} does not have dots {l}..{v.r} in a common part")


def _expand(blocks_eff, flags, l, r) -> PartialDiagram:
    tail = tuple(range(l + 1, r + 1))
    full = [tuple(sorted(b + tail)) if l in b else b for b in blocks_eff]
    return _sorted_partial(r, full, list(flags))


def act_on_partial(pi: Permutation, v: PartialDiagram, l: int) -> PartialDiagram:
    """``pi v``: the top row of the embedded ``pi`` stacked on ``v``.

    A block ``B`` (on effective dots) becomes ``pi^{-1}(B)``; labels travel
    with their blocks.
    """
    _require_in_V(v, l)
    if pi.degree != l:
        raise DomainError(f"permutation of degree {pi.degree} cannot act with l={l}")
    inv = pi.inverse()
    eff = v.effective_blocks(l)
    moved = [tuple(sorted(inv(x) for x in b)) for b in eff]
    return _expand(moved, v.labelled, l, v.r)


def class_signature(v: PartialDiagram, l: int) -> ClassSignature:
    _require_in_V(v, l)
    eff = v.effective_blocks(l)
    alpha: dict[int, int] = {}
    beta: dict[int, int] = {}
    for b, lab in zip(eff, v.labelled):
        target = alpha if lab else beta
        target[len(b)] = target.get(len(b), 0) + 1
    return ClassSignature(_counts(alpha), _counts(beta), l)


def _counts(d):
    if not d:
        return ()
    return tuple(d.get(i, 0) for i in range(1, max(d) + 1))


def canonical_representative(sig: ClassSignature, r: int) -> PartialDiagram:
    """Labelled parts first then unlabelled, sizes increasing, consecutive dots."""
    sizes = [(s, True) for s in sig.labelled_sizes()] + [(s, False) for s in sig.unlabelled_sizes()]
    blocks, flags = [], []
    start = 1
    for s, lab in sizes:
        blocks.append(tuple(range(start, start + s)))
        flags.append(lab)
        start += s
    if start - 1 != sig.l:
        raise DomainError(f"signature {sig} does not have weight l={sig.l}")
    return _expand(blocks, flags, sig.l, r)


def enumerate_classes(r: int, l: int, n: int) -> list[PartialDiagram]:
    """One canonical representative per class of ``V_n^l`` under Sym(l)."""
    if not 0 <= n <= l <= r:
        raise DomainError(f"need 0 <= n <= l <= r, got n={n}, l={l}, r={r}")
    reps = []
    for l1 in range(n, l + 1):
        if n == 0 and l1 > 0:
            break
        for lab in partitions_with_length(l1, n) if n else [()]:
            for unlab in partitions(l - l1):
                alpha = _counts({s: lab.count(s) for s in set(lab)})
                beta = _counts({s: unlab.count(s) for s in set(unlab)})
                reps.append(canonical_representative(ClassSignature(alpha, beta, l), r))
    return reps


def enumerate_partial(r: int, l: int, n: int) -> list[PartialDiagram]:
    """Every partial diagram in ``V_n^l`` (brute force), sorted."""
    if not 0 <= n <= l <= r:
        raise DomainError(f"need 0 <= n <= l <= r, got n={n}, l={l}, r={r}")
    out = []
    for eff in set_partitions(range(1, l + 1)):
        k = len(eff)
        if k < n:
            continue
        for mask in _choose(k, n):
            flags = [i in mask for i in range(k)]
            out.append(_expand(eff, flags, l, r))
    return sorted(out)


def _choose(k, n):
    from itertools import combinations

    return [set(c) for c in combinations(range(k), n)]


def is_canonical_representative(v: PartialDiagram, l: int) -> bool:
    return canonical_representative(class_signature(v, l), v.r) == v


def transporter(v: PartialDiagram, w: PartialDiagram, l: int) -> Permutation:
    """Some ``tau`` in Sym(l) with ``act_on_partial(tau, v, l) == w``.

    Matches parts of equal flag and size in left-to-right order and maps
    dots order-preservingly.
    """
    if class_signature(v, l) != class_signature(w, l):
        raise DomainError(f"{v} and {w} are not equivalent")
    groups_v: dict = {}
    groups_w: dict = {}
    for b, lab in zip(v.effective_blocks(l), v.labelled):
        groups_v.setdefault((lab, len(b)), []).append(b)
    for b, lab in zip(w.effective_blocks(l), w.labelled):
        groups_w.setdefault((lab, len(b)), []).append(b)
    images = [0] * l
    for key, bv in groups_v.items():
        for src, dst in zip(groups_w[key], bv):
            for a, b in zip(src, dst):
                images[a - 1] = b
    tau = Permutation(tuple(images))
    return tau


def build_d_v(v: PartialDiagram) -> SetPartitionDiagram:
    """The diagram with top row v, bottom row that of e_n, and identity propagating permutation."""
    r, n = v.r, v.n
    if n == 0:
        bottom = PartialDiagram(r, (tuple(range(1, r + 1)),), (False,))
    else:
        blocks = tuple((i,) for i in range(1, n)) + (tuple(range(n, r + 1)),)
        bottom = PartialDiagram(r, blocks, (True,) * n)
    return diagram_from_rows(v, bottom, Permutation.identity(n))


def e_n_bottom(r: int, n: int) -> PartialDiagram:
    """Bottom row of the idempotent e_n (all parts labelled, n >= 1)."""
    blocks = tuple((i,) for i in range(1, n)) + (tuple(range(n, r + 1)),)
    return PartialDiagram(r, blocks, (True,) * n)


def effective_label_blocks(v: PartialDiagram, l: int) -> tuple[list[tuple], list[tuple]]:
    """Labelled and unlabelled blocks of ``v`` on the effective dots ``1..l``, in order."""
    _require_in_V(v, l)
    eff = v.effective_blocks(l)
    lab = [b for b, f in zip(eff, v.labelled) if f]
    unlab = [b for b, f in zip(eff, v.labelled) if not f]
    return lab, unlab
