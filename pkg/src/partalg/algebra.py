"""The partition algebra P_k(r, delta): multiplication, idempotents, embeddings."""

from __future__ import annotations

import json
import re
import dataclasses
from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError, NotInvertibleError
from .fields import Q
from .partitions import (
    SetPartitionDiagram,
    canonicalize,
    diagram_from_rows,
    e_n_bottom,
    enumerate_partial,
    format_blocks,
    identity_diagram,
    parse_diagram,
    propagating_number,
)
from .perm import Permutation, all_permutations


def compose_diagrams(d1: SetPartitionDiagram, d2: SetPartitionDiagram) -> tuple[int, SetPartitionDiagram]:
    """Stack ``d1`` on top of ``d2``; return (number of closed loops, product diagram).

    Nodes ``0..r-1`` are the top of d1, ``r..2r-1`` the identified middle
    row, ``2r..3r-1`` the bottom of d2.
    """
    r = d1.r
    if d2.r != r:
        raise DomainError(f"cannot compose diagrams with r={d1.r} and r={d2.r}")
    parent = list(range(3 * r))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union_block(nodes):
        root = find(nodes[0])
        for x in nodes[1:]:
            rx = find(x)
            if rx != root:
                parent[rx] = root

    for b in d1.blocks:
        union_block([x - 1 for x in b])
    for b in d2.blocks:
        union_block([r + x - 1 for x in b])

    groups: dict[int, list[int]] = {}
    outer_roots = set()
    for node in range(3 * r):
        root = find(node)
        if node < r:
            groups.setdefault(root, []).append(node + 1)
            outer_roots.add(root)
        elif node >= 2 * r:
            groups.setdefault(root, []).append(node - r + 1)
            outer_roots.add(root)
    loops = len({find(x) for x in range(r, 2 * r)} - outer_roots)
    product = SetPartitionDiagram(r, tuple(sorted(tuple(g) for g in groups.values())))
    return loops, product


@dataclass
class AlgebraElement:
    """A finite linear combination of diagrams in P_k(r, delta)."""

    r: int
    delta: object
    field: object = Q
    terms: dict = dataclasses.field(default_factory=dict)

    def __post_init__(self):
        self.delta = self.field(self.delta)
        cleaned = {}
        for d, c in self.terms.items():
            if d.r != self.r:
                raise DomainError(f"diagram with r={d.r} in element with r={self.r}")
            c = self.field(c)
            if c:
                cleaned[d] = c
        self.terms = dict(sorted(cleaned.items()))

    @classmethod
    def from_diagram(cls, d: SetPartitionDiagram, delta, field=Q, coeff=1) -> AlgebraElement:
        return cls(d.r, delta, field, {d: coeff})

    @classmethod
    def unit(cls, r: int, delta, field=Q) -> AlgebraElement:
        return cls.from_diagram(identity_diagram(r), delta, field)

    def _check(self, other: AlgebraElement):
        if other.r != self.r:
            raise DomainError(f"r mismatch: {self.r} vs {other.r}")
        if other.field != self.field:
            raise DomainError(f"field mismatch: {self.field} vs {other.field}")
        if other.delta != self.delta:
            raise DomainError("cannot combine elements with different delta")

    def __add__(self, other: AlgebraElement) -> AlgebraElement:
        self._check(other)
        terms = dict(self.terms)
        for d, c in other.terms.items():
            terms[d] = terms.get(d, self.field.zero) + c
        return AlgebraElement(self.r, self.delta, self.field, terms)

    def __neg__(self) -> AlgebraElement:
        return self.scale(-1)

    def __sub__(self, other: AlgebraElement) -> AlgebraElement:
        return self + (-other)

    def scale(self, c) -> AlgebraElement:
        c = self.field(c)
        return AlgebraElement(self.r, self.delta, self.field, {d: c * v for d, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            return multiply(self, other)
        return self.scale(other)

    __rmul__ = scale

    def __eq__(self, other):
        return (
            isinstance(other, AlgebraElement)
            and self.r == other.r
            and self.field == other.field
            and self.delta == other.delta
            and self.terms == other.terms
        )

    def is_zero(self) -> bool:
        return not self.terms

    def drop_below(self, n: int) -> AlgebraElement:
        """Image modulo the span of diagrams with fewer than n propagating parts."""
        return AlgebraElement(
            self.r, self.delta, self.field, {d: c for d, c in self.terms.items() if propagating_number(d) >= n}
        )

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"{self.field.format(c)} * {format_blocks(d.blocks, self.r)}" for d, c in self.terms.items())

    def to_json(self) -> dict:
        return {
            "r": self.r,
            "delta": self.field.format(self.delta),
            "field": self.field.name,
            "terms": [{"coeff": self.field.format(c), "blocks": [list(b) for b in d.blocks]} for d, c in self.terms.items()],
        }

    @classmethod
    def from_json(cls, data: dict, field) -> AlgebraElement:
        r = data["r"]
        terms = {}
        for t in data["terms"]:
            d = canonicalize(t["blocks"], r)
            terms[d] = terms.get(d, field.zero) + field.parse(str(t["coeff"]))
        return cls(r, field.parse(str(data["delta"])), field, terms)


_TERM_RE = re.compile(r"^(?:([\d/]+)\s*\*\s*)?(\{.*\})$")


def parse_element(text: str, r: int, delta, field=Q) -> AlgebraElement:
    """Parse ``3/2 * {1,1'},{2,2'} + 1 * {1,2,1',2'}``."""
    terms: dict = {}
    pieces, depth, cur = [], 0, ""
    for ch in text:
        if ch == "{":
            depth += 1
        elif ch == "}":
            depth -= 1
        if depth == 0 and ch in "+-" and cur.strip():
            pieces.append(cur)
            cur = ch
            continue
        cur += ch
    if cur.strip():
        pieces.append(cur)
    for piece in pieces:
        body = piece.strip()
        sign = 1
        while body[:1] in ("+", "-"):
            sign = -sign if body[0] == "-" else sign
            body = body[1:].strip()
        m = _TERM_RE.match(body)
        if not m:
            raise DomainError(f"cannot parse term {piece.strip()!r}")
        d = parse_diagram(m.group(2), r)
        coeff = sign * Fraction(m.group(1) or "1")
        terms[d] = terms.get(d, field.zero) + field(coeff)
    return AlgebraElement(r, delta, field, terms)


def multiply(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    a._check(b)
    field_ = a.field
    out: dict = {}
    powers = {0: field_.one}
    for d1, c1 in a.terms.items():
        for d2, c2 in b.terms.items():
            loops, prod = compose_diagrams(d1, d2)
            if loops not in powers:
                powers[loops] = a.delta ** loops
            out[prod] = out.get(prod, field_.zero) + c1 * c2 * powers[loops]
    return AlgebraElement(a.r, a.delta, field_, out)


def e_diagram(n: int, r: int) -> SetPartitionDiagram:
    if n == 0:
        return SetPartitionDiagram(r, (tuple(range(1, r + 1)), tuple(range(r + 1, 2 * r + 1))))
    if not 1 <= n <= r:
        raise DomainError(f"e_n needs 0 <= n <= r, got n={n}, r={r}")
    blocks = tuple((i, r + i) for i in range(1, n)) + (tuple(range(n, r + 1)) + tuple(range(r + n, 2 * r + 1)),)
    return SetPartitionDiagram(r, blocks)


def idempotent_e(n: int, r: int, delta, field=Q) -> AlgebraElement:
    """The idempotent e_n; e_0 carries the coefficient 1/delta."""
    delta = field(delta)
    if n == 0:
        if not delta:
            raise NotInvertibleError("e_0 needs delta != 0")
        return AlgebraElement.from_diagram(e_diagram(0, r), delta, field, field.one / delta)
    return AlgebraElement.from_diagram(e_diagram(n, r), delta, field)


def embed_perm(pi: Permutation, l: int, r: int) -> SetPartitionDiagram:
    """Sym(l) inside P(r): l-1 single dots then one fat dot ``{l..r}`` per row.

    Top part ``i`` is joined to bottom part ``pi(i)``.
    """
    if not 1 <= l <= r:
        raise DomainError(f"need 1 <= l <= r, got l={l}, r={r}")
    if pi.degree != l:
        raise DomainError(f"permutation of degree {pi.degree} does not lie in Sym({l})")

    def part(i):
        return (i,) if i < l else tuple(range(l, r + 1))

    blocks = [part(i) + tuple(r + x for x in part(pi(i))) for i in range(1, l + 1)]
    return SetPartitionDiagram(r, tuple(sorted(blocks)))


def quotient_bimodule_basis(r: int, l: int, n: int) -> list[SetPartitionDiagram]:
    """Diagram basis of e_l (A / J_{n-1}) e_n, sorted canonically.

    These are the diagrams whose top row lies in V_n^l, whose bottom row is
    that of e_n, and whose n propagating parts join the two.
    """
    if not 1 <= n <= l <= r:
        raise DomainError(f"need 1 <= n <= l <= r, got n={n}, l={l}, r={r}")
    bottom = e_n_bottom(r, n)
    out = [diagram_from_rows(v, bottom, eta) for v in enumerate_partial(r, l, n) for eta in all_permutations(n)]
    return sorted(out)


def element_json_dumps(x: AlgebraElement) -> str:
    return json.dumps(x.to_json(), sort_keys=True)
