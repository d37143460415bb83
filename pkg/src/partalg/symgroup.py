"""Symmetric-group machinery: stabilizers, transversals, characters, Specht matrices."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .errors import DomainError, InternalConsistencyError, NotACharacterError
from .fields import Q
from .linalg import BasedModule, GroupAction, Matrix, action_character
from .partitions import PartialDiagram, effective_label_blocks, is_canonical_representative
from .perm import (
    ClassFunction,
    Permutation,
    adjacent_transpositions,
    all_permutations,
    conjugate,
    enumerate_group,
    format_partition,
    group_contains,
    group_order,
    hook_length_dimension,
    iter_splits,
    partitions,
    standard_tableaux,
)


@dataclass
class SubgroupSpec:
    """A subgroup of Sym(degree) given by generators."""

    degree: int
    generators: list
    name: str = ""

    def __post_init__(self):
        self.generators = [g for g in self.generators if not g.is_identity()]
        for g in self.generators:
            if g.degree != self.degree:
                raise DomainError(f"generator {g} has degree {g.degree}, expected {self.degree}")
        self._order = None

    @property
    def order(self) -> int:
        if self._order is None:
            self._order = group_order(self.generators, self.degree) if self.generators else 1
        return self._order

    def elements(self) -> list[Permutation]:
        if not self.generators:
            return [Permutation.identity(self.degree)]
        return enumerate_group(self.generators, self.degree)

    def contains(self, g: Permutation) -> bool:
        if not self.generators:
            return g.is_identity()
        return group_contains(self.generators, self.degree, g)


def young_subgroup(parts, degree: int | None = None) -> SubgroupSpec:
    """Sym(parts[0]) x Sym(parts[1]) x ... on consecutive points."""
    total = sum(parts)
    degree = total if degree is None else degree
    gens, start = [], 1
    for p in parts:
        gens += adjacent_transpositions(degree, range(start, start + p))
        start += p
    return SubgroupSpec(degree, gens, f"young{tuple(parts)}")


def _block_swap(degree: int, a: tuple, b: tuple) -> Permutation:
    images = list(range(1, degree + 1))
    for x, y in zip(a, b):
        images[x - 1], images[y - 1] = y, x
    return Permutation(tuple(images))


def block_system_stabilizer(degree: int, blocks, swap: bool = True) -> SubgroupSpec:
    """Permutations of each block, plus swaps of adjacent equal-size blocks if ``swap``."""
    gens = []
    for b in blocks:
        gens += adjacent_transpositions(degree, b)
    if swap:
        for a, b in zip(blocks, blocks[1:]):
            if len(a) == len(b):
                gens.append(_block_swap(degree, a, b))
    return SubgroupSpec(degree, gens)


def wreath_stabilizer(v: PartialDiagram, l: int) -> tuple[SubgroupSpec, SubgroupSpec, SubgroupSpec]:
    """Generators of the labelled-part stabilizer, the unlabelled-part stabilizer,
    and the within-labelled-block subgroup, all inside Sym(l).

    ``v`` must be a canonical class representative, so equal-size blocks of
    the same flag sit next to each other.
    """
    if not is_canonical_representative(v, l):
        raise DomainError(f"{v} is not a canonical class representative; normalize it first")
    lab, unlab = effective_label_blocks(v, l)
    pi_alpha = block_system_stabilizer(l, lab)
    pi_beta = block_system_stabilizer(l, unlab)
    sigma_gamma = block_system_stabilizer(l, lab, swap=False)
    pi_alpha.name, pi_beta.name, sigma_gamma.name = "labelled", "unlabelled", "within-labelled"
    return pi_alpha, pi_beta, sigma_gamma


def coset_transversal(degree: int, H: SubgroupSpec, side: str = "left") -> list[Permutation]:
    """Lexicographically least element of each coset ``gH`` (left) or ``Hg`` (right)."""
    if side not in ("left", "right"):
        raise DomainError(f"side must be left or right, got {side!r}")
    if H.degree != degree:
        raise DomainError(f"subgroup of Sym({H.degree}) used in Sym({degree})")
    elems = H.elements()
    seen: set = set()
    reps = []
    for g in all_permutations(degree):
        if g in seen:
            continue
        reps.append(g)
        seen.update(g * h for h in elems) if side == "left" else seen.update(h * g for h in elems)
    return reps


# ---------------------------------------------------------------------------
# Characters


def _beta_to_partition(beta: list[int]) -> tuple:
    k = len(beta)
    lam = [b - (k - 1 - i) for i, b in enumerate(sorted(beta, reverse=True))]
    return tuple(x for x in lam if x > 0)


@lru_cache(maxsize=None)
def _mn(lam: tuple, mu: tuple) -> int:
    if not mu:
        return 1
    k, rest = mu[0], mu[1:]
    beta = [p + len(lam) - 1 - i for i, p in enumerate(lam)]
    present = set(beta)
    total = 0
    for b in beta:
        c = b - k
        if c < 0 or c in present:
            continue
        height = sum(1 for x in beta if c < x < b)
        new = [c if x == b else x for x in beta]
        total += (-1) ** height * _mn(_beta_to_partition(new), rest)
    return total


def mn_character(lam, mu) -> int:
    """Irreducible character value chi^lam on cycle type mu (Murnaghan-Nakayama)."""
    lam = tuple(sorted((x for x in lam if x), reverse=True))
    mu = tuple(sorted((x for x in mu if x), reverse=True))
    if sum(lam) != sum(mu):
        raise DomainError(f"weight mismatch: |{format_partition(lam)}| != |{format_partition(mu)}|")
    return _mn(lam, mu)


@lru_cache(maxsize=None)
def irreducible_character(lam: tuple) -> ClassFunction:
    n = sum(lam)
    return ClassFunction(n, {mu: mn_character(lam, mu) for mu in partitions(n)})


def character_table_csv(n: int) -> str:
    """Rows indexed by partitions of n, columns by cycle types, both in reverse-lex order."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    classes = partitions(n)
    writer.writerow(["lambda"] + [format_partition(mu) for mu in classes])
    for lam in classes:
        writer.writerow([format_partition(lam)] + [mn_character(lam, mu) for mu in classes])
    return buf.getvalue()


# ---------------------------------------------------------------------------
# Specht modules


def _tabloid(tableau) -> tuple:
    """Row index of each entry 1..n."""
    n = sum(len(row) for row in tableau)
    rows = [0] * n
    for i, row in enumerate(tableau):
        for x in row:
            rows[x - 1] = i
    return tuple(rows)


def _polytabloid(tableau) -> dict:
    """Signed sum of tabloids over the column group of ``tableau``."""
    cols = [[row[j] for row in tableau if j < len(row)] for j in range(len(tableau[0]))]
    out: dict = {}

    def rec(j, mapping, sign):
        if j == len(cols):
            key = _tabloid([[mapping.get(x, x) for x in row] for row in tableau])
            out[key] = out.get(key, 0) + sign
            return
        col = cols[j]
        for p in _perm_tuples(len(col)):
            m = dict(mapping)
            for idx, x in enumerate(col):
                m[x] = col[p[idx] - 1]
            rec(j + 1, m, sign * Permutation(p).sign())

    rec(0, {}, 1)
    return {k: v for k, v in out.items() if v}


@lru_cache(maxsize=None)
def _perm_tuples(k: int):
    return tuple(p.images for p in all_permutations(k))


def _relabel(tableau, g: Permutation):
    return tuple(tuple(g(x) for x in row) for row in tableau)


@lru_cache(maxsize=None)
def _specht_integer_matrices(lam: tuple) -> tuple:
    """Integer matrices of adjacent transpositions on the standard polytabloid basis."""
    n = sum(lam)
    tabs = standard_tableaux(lam)
    basis_vecs = [_polytabloid(t) for t in tabs]
    leading = [_tabloid(t) for t in tabs]
    square = Matrix(len(tabs), len(tabs), [{i: vec.get(key, 0) for i, key in enumerate(leading)} for vec in basis_vecs])
    solve = square.inverse()
    mats = []
    for s in adjacent_transpositions(n):
        cols = []
        for t in tabs:
            image = _polytabloid(_relabel(t, s))
            cols.append(solve.apply({i: image.get(key, 0) for i, key in enumerate(leading) if image.get(key, 0)}))
        mats.append(cols)
    return tuple(tabs), tuple(mats)


def specht_representation(lam, dual: bool = False, field=Q) -> GroupAction:
    """Matrices of s_1..s_{n-1} on the Specht module of shape ``lam``.

    The basis is the standard polytabloids, labelled by standard tableaux;
    ``dual=True`` gives the contragredient action (transposed matrices,
    since each s_i is an involution).
    """
    lam = tuple(lam)
    n = sum(lam)
    if n < 1:
        raise DomainError("Specht modules need n >= 1")
    tabs, cols_list = _specht_integer_matrices(lam)
    module = BasedModule(field, list(tabs))
    gens = []
    for s, cols in zip(adjacent_transpositions(n), cols_list):
        m = Matrix(len(tabs), len(tabs), cols, field)
        gens.append((s, m.transpose() if dual else m))
    if n == 1:
        gens = []
    return GroupAction(module, gens, "left")


def representation_character(rep: GroupAction, degree: int) -> ClassFunction:
    if degree <= 1:
        return ClassFunction(degree, {mu: rep.module.dim for mu in partitions(degree)})
    return action_character(rep, degree)


# ---------------------------------------------------------------------------
# Multiplicities


@dataclass
class MultiplicityTable:
    """Multiplicities of irreducible characters, keyed by partitions of ``l``."""

    l: int
    entries: dict = field(default_factory=dict)
    label_convention: str = "specht"

    def __post_init__(self):
        self.entries = {tuple(k): int(v) for k, v in sorted(self.entries.items(), reverse=True) if v}

    def dimension(self) -> int:
        return sum(m * hook_length_dimension(lam) for lam, m in self.entries.items())

    def character(self) -> ClassFunction:
        total = ClassFunction(self.l, {})
        for lam, m in self.entries.items():
            label = conjugate(lam) if self.label_convention == "dual-specht-transposed" else lam
            total = total + irreducible_character(label).scale(m)
        return total

    def __add__(self, other: MultiplicityTable) -> MultiplicityTable:
        if other.l != self.l or other.label_convention != self.label_convention:
            raise DomainError("tables are not comparable")
        out = dict(self.entries)
        for k, v in other.entries.items():
            out[k] = out.get(k, 0) + v
        return MultiplicityTable(self.l, out, self.label_convention)

    def scale(self, h: int) -> MultiplicityTable:
        return MultiplicityTable(self.l, {k: h * v for k, v in self.entries.items()}, self.label_convention)

    def transposed_labels(self) -> MultiplicityTable:
        """Relabel each partition by its conjugate."""
        return MultiplicityTable(self.l, {conjugate(k): v for k, v in self.entries.items()}, "dual-specht-transposed")

    def to_json(self) -> dict:
        return {",".join(map(str, k)) if k else "": v for k, v in self.entries.items()}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    def __eq__(self, other):
        return (
            isinstance(other, MultiplicityTable)
            and self.l == other.l
            and self.label_convention == other.label_convention
            and self.entries == other.entries
        )


def decompose_class_function(chi: ClassFunction) -> MultiplicityTable:
    """Multiplicities of each irreducible in ``chi``; refuses anything that is not a character."""
    n = chi.degree
    entries = {}
    for lam in partitions(n):
        m = chi.inner(irreducible_character(lam))
        if m.denominator != 1 or m < 0:
            raise NotACharacterError(f"multiplicity of {format_partition(lam)} is {m}")
        entries[lam] = int(m)
    table = MultiplicityTable(n, entries)
    if table.character() != chi:
        raise InternalConsistencyError("reconstruction from multiplicities does not reproduce the class function")
    return table


def induce_product(chi1: ClassFunction, chi2: ClassFunction) -> ClassFunction:
    """Induce the outer product from Sym(l1) x Sym(l2) to Sym(l1 + l2)."""
    l1, l2 = chi1.degree, chi2.degree
    values = {}
    for mu in partitions(l1 + l2):
        total = Fraction(0)
        for mu1, mu2, c in iter_splits(mu, l1):
            total += c * chi1(mu1) * chi2(mu2)
        values[mu] = total
    return ClassFunction(l1 + l2, values)


def induce_from_young(chi: ClassFunction, degree: int) -> ClassFunction:
    """Induce from Sym(k) (acting on the first k points) to Sym(degree)."""
    return induce_product(chi, ClassFunction.trivial(degree - chi.degree)) if degree > chi.degree else chi


def coinvariant_dim(rep: GroupAction, H: SubgroupSpec) -> int:
    """Dimension of the H-coinvariants of a Sym(n)-module, by rank and (in char 0) by characters."""
    n = H.degree
    dim = rep.module.dim
    fieldk = rep.module.field
    if not H.generators or dim == 0:
        by_rank = dim
    else:
        one = Matrix.identity(dim, fieldk)
        rows = []
        for h in H.generators:
            diff = rep.matrix_of(h) - one
            rows.extend(diff.cols)
        # coinvariants: quotient by the column span of (rho(h) - 1)
        by_rank = dim - len(_span_rank(rows))
    if fieldk.characteristic == 0:
        chi = representation_character(rep, n)
        total = sum((chi(h.cycle_type()) for h in H.elements()), Fraction(0))
        by_char = total / H.order
        if by_char != by_rank:
            raise InternalConsistencyError(f"coinvariant dimension: rank gives {by_rank}, characters give {by_char}")
    return by_rank


def _span_rank(vectors):
    from .linalg import row_reduce

    return row_reduce(vectors)


def restrict_to_subgroup_character(chi: ClassFunction, H: SubgroupSpec) -> dict:
    return {h: chi(h.cycle_type()) for h in H.elements()}


def permutation_character(degree: int, fixed_points) -> ClassFunction:
    """Class function from a fixed-point counting callable on cycle-type representatives."""
    from .perm import cycle_type_representative

    return ClassFunction.from_callable(degree, lambda mu: fixed_points(cycle_type_representative(mu)))
