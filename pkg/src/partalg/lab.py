"""Bimodules attached to one orbit of partial diagrams, and certified isomorphisms.

Every construction is concrete: modules are :class:`BasedModule` objects,
maps are exact matrices, and each isomorphism comes with a
:class:`Certificate` recording well-definedness on relations, bijectivity and
equivariance for every generator on both sides.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from itertools import permutations as _orderings

from .algebra import compose_diagrams, embed_perm
from .errors import DomainError, HypothesisViolationError, InternalConsistencyError, LemmaViolationError, ResourceLimitError
from .fields import Q
from .linalg import (
    BasedModule,
    Certificate,
    GroupAction,
    LinearMap,
    Matrix,
    TensorQuotient,
    check_equivariance,
    kron,
    tensor_over_subgroup,
)
from .partitions import (
    PartialDiagram,
    SetPartitionDiagram,
    build_d_v,
    class_signature,
    e_n_bottom,
    effective_label_blocks,
    is_canonical_representative,
    propagating_number,
    rows_and_permutation,
    top_row,
    transporter,
)
from .perm import Permutation, adjacent_transpositions, all_permutations
from .symgroup import SubgroupSpec, coset_transversal, wreath_stabilizer, young_subgroup

FOULKES_DIM_CAP = 200_000


def propagating_permutation(d: SetPartitionDiagram) -> Permutation:
    return rows_and_permutation(d)[2]


def regular_module(degree: int, field=Q) -> BasedModule:
    return BasedModule(field, all_permutations(degree))


def trivial_module(field=Q) -> BasedModule:
    return BasedModule(field, ["1"])


def left_mult(module: BasedModule, g: Permutation) -> Matrix:
    """``t -> g * t`` on a regular module."""
    return Matrix.from_images([module.index[g * t] for t in module.basis], module.field)


def right_mult(module: BasedModule, g: Permutation) -> Matrix:
    """``t -> t * g`` on a regular module."""
    return Matrix.from_images([module.index[t * g] for t in module.basis], module.field)


def _identities(dim: int, count: int, field) -> list[Matrix]:
    return [Matrix.identity(dim, field) for _ in range(count)]


def _shift(vec: dict, offset: int) -> dict:
    return {k + offset: v for k, v in vec.items()}


def _kron_vec(a: dict, b: dict, dim_b: int) -> dict:
    return {i * dim_b + j: x * y for i, x in a.items() for j, y in b.items()}


def _plain_map(target_dim: int, source_dim: int, column, field) -> Matrix:
    return Matrix(target_dim, source_dim, [column(c) for c in range(source_dim)], field)


# ---------------------------------------------------------------------------
# Per-orbit data


@dataclass
class ClassData:
    """A canonical partial diagram together with its stabilizers and d_v."""

    v: PartialDiagram
    r: int
    l: int
    n: int
    field: object = Q

    def __post_init__(self):
        if not 1 <= self.n <= self.l <= self.r:
            raise DomainError(f"need 1 <= n <= l <= r, got n={self.n}, l={self.l}, r={self.r}")
        if self.v.r != self.r or self.v.n != self.n:
            raise DomainError(f"{self.v} is not in V_{self.n} for r={self.r}")
        if not is_canonical_representative(self.v, self.l):
            raise DomainError(f"{self.v} is not a canonical class representative")
        self.d = build_d_v(self.v)
        self.signature = class_signature(self.v, self.l)
        self.pi_alpha, self.pi_beta, self.sigma_gamma = wreath_stabilizer(self.v, self.l)
        self.labelled, self.unlabelled = effective_label_blocks(self.v, self.l)

    @property
    def l1(self) -> int:
        return self.signature.l1

    @property
    def l2(self) -> int:
        return self.signature.l2

    def left_embed(self, g: Permutation) -> SetPartitionDiagram:
        return embed_perm(g, self.l, self.r)

    def right_embed(self, g: Permutation) -> SetPartitionDiagram:
        return embed_perm(g, self.n, self.r)

    def sandwich(self, tau: Permutation, eta: Permutation) -> SetPartitionDiagram:
        """The diagram ``tau d_v eta``; asserts that no closed loop appears."""
        loops1, x = compose_diagrams(self.left_embed(tau), self.d)
        loops2, y = compose_diagrams(x, self.right_embed(eta))
        if loops1 or loops2:
            raise InternalConsistencyError(f"closed loop while forming {tau} d {eta}")
        return y

    def twist(self, zeta: Permutation) -> Permutation:
        """The permutation of labelled parts induced by ``zeta`` (in the labelled stabilizer)."""
        return propagating_permutation(self.sandwich(zeta, Permutation.identity(self.n)))

    @cached_property
    def sigma_alpha(self) -> SubgroupSpec:
        return SubgroupSpec(self.n, [self.twist(g) for g in self.pi_alpha.generators], "labelled-image")

    def lift(self, zeta: Permutation) -> Permutation:
        """A preimage of ``zeta`` under :meth:`twist`: moves labelled block a onto block zeta(a)."""
        images = list(range(1, self.l + 1))
        for a, src in enumerate(self.labelled, start=1):
            dst = self.labelled[zeta(a) - 1]
            if len(dst) != len(src):
                raise InternalConsistencyError(f"{zeta} moves labelled parts of different sizes")
            for x, y in zip(src, dst):
                images[x - 1] = y
        hat = Permutation(tuple(images))
        if self.twist(hat) != zeta:
            raise InternalConsistencyError(f"lift of {zeta} does not map back to it")
        return hat

    def restrict_labelled(self, g: Permutation) -> Permutation:
        return g.restrict(range(1, self.l1 + 1))

    def restrict_unlabelled(self, g: Permutation) -> Permutation:
        return g.restrict(range(self.l1 + 1, self.l + 1))

    def dimension_formula(self) -> int:
        return math.factorial(self.n) * math.factorial(self.l) // (self.pi_alpha.order * self.pi_beta.order)


def class_data(v: PartialDiagram, r: int, l: int, n: int, field=Q) -> ClassData:
    return ClassData(v, r, l, n, field)


@dataclass
class LemmaResult:
    """An explicit map between two bimodules and its certificate."""

    which: str
    source: BasedModule
    target: BasedModule
    forward: LinearMap
    backward: LinearMap | None
    certificate: Certificate
    source_left: list = field(default_factory=list)
    source_right: list = field(default_factory=list)
    target_left: list = field(default_factory=list)
    target_right: list = field(default_factory=list)
    extra: dict = field(default_factory=dict)

    def recheck(self, matrix: Matrix) -> Certificate:
        """Certify a replacement matrix against the same actions (used for negative controls)."""
        f = LinearMap(self.source, self.target, matrix)
        left = [(f"s{k + 1}", a, b) for k, (a, b) in enumerate(zip(self.source_left, self.target_left))]
        right = [(f"s{k + 1}", a, b) for k, (a, b) in enumerate(zip(self.source_right, self.target_right))]
        return check_equivariance(f, left, right, self.certificate.require_bijective)


def _certify(result_name, forward, src_left, tgt_left, src_right, tgt_right, checks, strict, require_bijective=True):
    left = [(f"s{k + 1}", a, b) for k, (a, b) in enumerate(zip(src_left, tgt_left))]
    right = [(f"s{k + 1}", a, b) for k, (a, b) in enumerate(zip(src_right, tgt_right))]
    cert = check_equivariance(forward, left, right, require_bijective)
    cert.checks.update(checks)
    if strict and not cert.passed:
        raise LemmaViolationError(f"{result_name} failed certification: {cert.dumps()}", cert)
    return cert


def _identity_check(a: Matrix, b: Matrix) -> bool:
    return a @ b == Matrix.identity(a.nrows, a.field)


# ---------------------------------------------------------------------------
# U_v


@dataclass
class SummandUv:
    data: ClassData
    module: BasedModule
    left: GroupAction
    right: GroupAction

    @property
    def dim(self) -> int:
        return self.module.dim


def build_U(v: PartialDiagram, r: int, l: int, n: int, field=Q) -> SummandUv:
    """Close ``{d_v}`` under left Sym(l) and right Sym(n) multiplication."""
    data = class_data(v, r, l, n, field)
    left_gens = adjacent_transpositions(l)
    right_gens = adjacent_transpositions(n)
    left_emb = [data.left_embed(s) for s in left_gens]
    right_emb = [data.right_embed(s) for s in right_gens]

    def step(x):
        for e in left_emb:
            loops, y = compose_diagrams(e, x)
            if loops:
                raise InternalConsistencyError("closed loop under left multiplication by a permutation")
            yield y
        for e in right_emb:
            loops, y = compose_diagrams(x, e)
            if loops:
                raise InternalConsistencyError("closed loop under right multiplication by a permutation")
            yield y

    seen = {data.d}
    frontier = [data.d]
    while frontier:
        nxt = []
        for x in frontier:
            for y in step(x):
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    module = BasedModule(field, sorted(seen))
    lefts = [(s, Matrix.from_images([module.index[compose_diagrams(e, b)[1]] for b in module.basis], field))
             for s, e in zip(left_gens, left_emb)]
    rights = [(s, Matrix.from_images([module.index[compose_diagrams(b, e)[1]] for b in module.basis], field))
              for s, e in zip(right_gens, right_emb)]
    return SummandUv(data, module, GroupAction(module, lefts, "left"), GroupAction(module, rights, "right"))


def check_summand(U: SummandUv) -> bool:
    """Every basis diagram has top in the orbit of v, bottom that of e_n, and n propagating parts."""
    data = U.data
    bottom = e_n_bottom(data.r, data.n)
    for b in U.module.basis:
        top, bot, _ = rows_and_permutation(b)
        if propagating_number(b) != data.n or bot != bottom:
            return False
        if class_signature(top, data.l) != data.signature:
            return False
    return True


# ---------------------------------------------------------------------------
# psi: twisted tensor product -> U_v


@dataclass
class TwistedTensor:
    """``k Sym(l) (x)_H k Sym(n)`` for H = labelled x unlabelled stabilizers, with the twist."""

    data: ClassData
    quotient: TensorQuotient
    sym_l: BasedModule
    sym_n: BasedModule

    @property
    def module(self) -> BasedModule:
        return self.quotient.module

    def left_matrices(self) -> list[Matrix]:
        return [self.quotient.induce_left(left_mult(self.sym_l, s)) for s in adjacent_transpositions(self.data.l)]

    def right_matrices(self) -> list[Matrix]:
        return [self.quotient.induce_right(right_mult(self.sym_n, s)) for s in adjacent_transpositions(self.data.n)]


def twisted_tensor(data: ClassData) -> TwistedTensor:
    f = data.field
    sym_l = regular_module(data.l, f)
    sym_n = regular_module(data.n, f)
    rights, lefts = [], []
    for h in data.pi_alpha.generators:
        rights.append(right_mult(sym_l, h))
        lefts.append(left_mult(sym_n, data.twist(h)))
    for h in data.pi_beta.generators:
        rights.append(right_mult(sym_l, h))
        lefts.append(Matrix.identity(sym_n.dim, f))
    return TwistedTensor(data, tensor_over_subgroup(sym_l, rights, sym_n, lefts), sym_l, sym_n)


def build_psi(v: PartialDiagram, r: int, l: int, n: int, field=Q, strict: bool = True) -> LemmaResult:
    """``tau (x) eta -> tau d_v eta`` from the twisted tensor product onto U_v."""
    U = build_U(v, r, l, n, field)
    data = U.data
    T = twisted_tensor(data)
    q = T.quotient
    nd = T.sym_n.dim

    def column(c):
        i, j = divmod(c, nd)
        return {U.module.index[data.sandwich(T.sym_l.basis[i], T.sym_n.basis[j])]: 1}

    plain = _plain_map(U.dim, q.plain_dim, column, field)
    forward = LinearMap(q.module, U.module, q.restrict_to_reps(plain))

    back_cols = []
    for b in U.module.basis:
        tau = transporter(v, top_row(b), l)
        pi_tau_d = propagating_permutation(data.sandwich(tau, Permutation.identity(n)))
        eta = pi_tau_d.inverse() * propagating_permutation(b)
        back_cols.append(q.project_pure(T.sym_l.index[tau], T.sym_n.index[eta]))
    backward = LinearMap(U.module, q.module, Matrix(q.dim, U.dim, back_cols, field))

    src_left, src_right = T.left_matrices(), T.right_matrices()
    checks = {
        "well_defined": q.kills_relations(plain),
        "forward_backward_identity": _identity_check(forward.matrix, backward.matrix),
        "backward_forward_identity": _identity_check(backward.matrix, forward.matrix),
        "dimension_formula": q.dim == U.dim == data.dimension_formula(),
    }
    cert = _certify("psi", forward, src_left, U.left.matrices, src_right, U.right.matrices, checks, strict)
    return LemmaResult("psi", q.module, U.module, forward, backward, cert,
                       src_left, src_right, U.left.matrices, U.right.matrices, {"data": data, "U": U, "tensor": T})


# ---------------------------------------------------------------------------
# theta: split the twisted tensor over the Young subgroup Sym(l1) x Sym(l2)


@dataclass
class Factors:
    """``A = k Sym(l1) (x)_{labelled} k Sym(n)`` and ``B = k Sym(l2) (x)_{unlabelled} k``."""

    A: TensorQuotient
    B: TensorQuotient
    sym_l1: BasedModule
    sym_l2: BasedModule
    sym_n: BasedModule


def labelled_factor(data: ClassData) -> tuple[TensorQuotient, BasedModule, BasedModule]:
    f = data.field
    sym_l1 = regular_module(data.l1, f)
    sym_n = regular_module(data.n, f)
    rights = [right_mult(sym_l1, data.restrict_labelled(h)) for h in data.pi_alpha.generators]
    lefts = [left_mult(sym_n, data.twist(h)) for h in data.pi_alpha.generators]
    return tensor_over_subgroup(sym_l1, rights, sym_n, lefts), sym_l1, sym_n


def unlabelled_factor(data: ClassData) -> tuple[TensorQuotient, BasedModule]:
    f = data.field
    sym_l2 = regular_module(data.l2, f)
    rights = [right_mult(sym_l2, data.restrict_unlabelled(h)) for h in data.pi_beta.generators]
    return tensor_over_subgroup(sym_l2, rights, trivial_module(f), _identities(1, len(rights), f)), sym_l2


def build_factors(data: ClassData) -> Factors:
    A, sym_l1, sym_n = labelled_factor(data)
    B, sym_l2 = unlabelled_factor(data)
    return Factors(A, B, sym_l1, sym_l2, sym_n)


def _coset_lookup(degree: int, H: SubgroupSpec, side: str) -> tuple[list[Permutation], dict]:
    reps = coset_transversal(degree, H, side)
    elems = H.elements()
    owner = {}
    for i, w in enumerate(reps):
        for h in elems:
            owner[w * h if side == "left" else h * w] = i
    return reps, owner


def build_theta(v: PartialDiagram, r: int, l: int, n: int, field=Q, strict: bool = True) -> LemmaResult:
    """Twisted tensor -> ``k Sym(l) (x)_{Sym(l1) x Sym(l2)} (A boxtimes B)``."""
    data = class_data(v, r, l, n, field)
    T = twisted_tensor(data)
    src = T.quotient
    fac = build_factors(data)
    A, B = fac.A, fac.B
    l1, l2 = data.l1, data.l2
    dim_b = B.dim
    AB = BasedModule(field, [(a, b) for a in A.module.basis for b in B.module.basis])

    young_gens, young_on_ab = [], []
    for s in adjacent_transpositions(l1):
        young_gens.append(s.extend(l))
        young_on_ab.append(kron(A.induce_left(left_mult(fac.sym_l1, s)), Matrix.identity(dim_b, field)))
    for s in adjacent_transpositions(l2):
        young_gens.append(s.extend(l, l1))
        young_on_ab.append(kron(Matrix.identity(A.dim, field), B.induce_left(left_mult(fac.sym_l2, s))))
    sym_l = T.sym_l
    tgt = tensor_over_subgroup(sym_l, [right_mult(sym_l, y) for y in young_gens], AB, young_on_ab)

    omegas, owner = _coset_lookup(l, young_subgroup((l1, l2)), "left")
    nd = T.sym_n.dim

    def forward_column(c):
        i, j = divmod(c, nd)
        tau = sym_l.basis[i]
        omega = omegas[owner[tau]]
        rest = omega.inverse() * tau
        a_vec = A.project_pure(fac.sym_l1.index[data.restrict_labelled(rest)], j)
        b_vec = B.project_pure(fac.sym_l2.index[data.restrict_unlabelled(rest)], 0)
        inner = _kron_vec(a_vec, b_vec, dim_b)
        return tgt.project({sym_l.index[omega] * AB.dim + k: x for k, x in inner.items()})

    plain = _plain_map(tgt.dim, src.plain_dim, forward_column, field)
    forward = LinearMap(src.module, tgt.module, src.restrict_to_reps(plain))

    def backward_column(c):
        i, k = divmod(c, AB.dim)
        ia, ib = divmod(k, dim_b)
        th_i, eta_j = A.rep_pair(ia)
        up_i, _ = B.rep_pair(ib)
        theta = fac.sym_l1.basis[th_i].extend(l)
        upsilon = fac.sym_l2.basis[up_i].extend(l, l1)
        return src.project_pure(sym_l.index[sym_l.basis[i] * theta * upsilon], eta_j)

    back_plain = _plain_map(src.dim, tgt.plain_dim, backward_column, field)
    backward = LinearMap(tgt.module, src.module, tgt.restrict_to_reps(back_plain))

    tgt_left = [tgt.induce_left(left_mult(sym_l, s)) for s in adjacent_transpositions(l)]
    tgt_right = [tgt.induce_right(kron(A.induce_right(right_mult(fac.sym_n, s)), Matrix.identity(dim_b, field)))
                 for s in adjacent_transpositions(n)]
    checks = {
        "well_defined": src.kills_relations(plain),
        "inverse_well_defined": tgt.kills_relations(back_plain),
        "forward_backward_identity": _identity_check(forward.matrix, backward.matrix),
        "backward_forward_identity": _identity_check(backward.matrix, forward.matrix),
        "dimension_product": len(omegas) * A.dim * B.dim == data.dimension_formula() == tgt.dim,
    }
    cert = _certify("theta", forward, T.left_matrices(), tgt_left, T.right_matrices(), tgt_right, checks, strict)
    return LemmaResult("theta", src.module, tgt.module, forward, backward, cert,
                       T.left_matrices(), T.right_matrices(), tgt_left, tgt_right,
                       {"data": data, "transversal": omegas, "A": A, "B": B})


# ---------------------------------------------------------------------------
# phi: the labelled factor as a tensor induced module


def build_phi(v: PartialDiagram, r: int, l: int, n: int, field=Q, strict: bool = True) -> LemmaResult:
    """``A -> direct sum over Sym(n)/Sigma_alpha of k Sym(l1) (x)_{within-block} k``."""
    data = class_data(v, r, l, n, field)
    A, sym_l1, sym_n = labelled_factor(data)
    l1 = data.l1
    C = tensor_over_subgroup(
        sym_l1,
        [right_mult(sym_l1, data.restrict_labelled(g)) for g in data.sigma_gamma.generators],
        trivial_module(field),
        _identities(1, len(data.sigma_gamma.generators), field),
    )
    sigmas, owner = _coset_lookup(n, data.sigma_alpha, "right")
    s = len(sigmas)
    cd = C.dim
    target = BasedModule(field, [(i, lab) for i in range(s) for lab in C.module.basis])

    def lift_l1(zeta):
        return data.restrict_labelled(data.lift(zeta))

    def forward_column(c):
        i, j = divmod(c, sym_n.dim)
        tau, eta = sym_l1.basis[i], sym_n.basis[j]
        k = owner[eta]
        zeta = eta * sigmas[k].inverse()
        return _shift(C.project_pure(sym_l1.index[tau * lift_l1(zeta)], 0), k * cd)

    plain = _plain_map(target.dim, A.plain_dim, forward_column, field)
    forward = LinearMap(A.module, target, A.restrict_to_reps(plain))

    back_cols = []
    for i in range(s):
        for q in range(cd):
            t_i, _ = C.rep_pair(q)
            back_cols.append(A.project_pure(t_i, sym_n.index[sigmas[i]]))
    backward = LinearMap(target, A.module, Matrix(A.dim, target.dim, back_cols, field))

    tgt_left = []
    for g in adjacent_transpositions(l1):
        block = C.induce_left(left_mult(sym_l1, g))
        cols = [_shift(col, i * cd) for i in range(s) for col in block.cols]
        tgt_left.append(Matrix(target.dim, target.dim, cols, field))
    tgt_right = []
    for g in adjacent_transpositions(n):
        cols = []
        for i in range(s):
            moved = sigmas[i] * g
            j = owner[moved]
            hat = lift_l1(moved * sigmas[j].inverse())
            for q in range(cd):
                t_i, _ = C.rep_pair(q)
                cols.append(_shift(C.project_pure(sym_l1.index[sym_l1.basis[t_i] * hat], 0), j * cd))
        tgt_right.append(Matrix(target.dim, target.dim, cols, field))
    src_left = [A.induce_left(left_mult(sym_l1, g)) for g in adjacent_transpositions(l1)]
    src_right = [A.induce_right(right_mult(sym_n, g)) for g in adjacent_transpositions(n)]
    checks = {
        "well_defined": A.kills_relations(plain),
        "forward_backward_identity": _identity_check(forward.matrix, backward.matrix),
        "backward_forward_identity": _identity_check(backward.matrix, forward.matrix),
        "transversal_size": s * data.sigma_alpha.order == math.factorial(n),
    }
    cert = _certify("phi", forward, src_left, tgt_left, src_right, tgt_right, checks, strict)
    return LemmaResult("phi", A.module, target, forward, backward, cert, src_left, src_right, tgt_left, tgt_right,
                       {"data": data, "copies": s, "within_block": C, "transversal": sigmas})


# ---------------------------------------------------------------------------
# Foulkes modules


def _foulkes_count(a: int, m: int) -> int:
    return math.factorial(a * m) // (math.factorial(a) ** m * math.factorial(m))


def equal_block_partitions(points, a: int) -> list[tuple]:
    """Set partitions of ``points`` into blocks of size ``a``, canonical and sorted."""
    points = tuple(sorted(points))
    if not points:
        return [()]
    first, rest = points[0], points[1:]
    out = []
    from itertools import combinations

    for others in combinations(rest, a - 1):
        block = (first,) + others
        remaining = [x for x in rest if x not in others]
        for tail in equal_block_partitions(remaining, a):
            out.append((block,) + tail)
    return sorted(out)


def act_on_blocks(g: Permutation, blocks: tuple, ordered: bool = False) -> tuple:
    """Left action on (ordered or unordered) block systems: each block B goes to g^{-1}(B)."""
    inv = g.inverse()
    moved = tuple(tuple(sorted(inv(x) for x in b)) for b in blocks)
    return moved if ordered else tuple(sorted(moved))


@dataclass
class FoulkesModule:
    a: int
    m: int
    module: BasedModule
    action: GroupAction

    @property
    def dim(self) -> int:
        return self.module.dim

    def standard_point(self) -> tuple:
        return tuple(tuple(range(k * self.a + 1, (k + 1) * self.a + 1)) for k in range(self.m))


def _block_action(module: BasedModule, degree: int, ordered: bool) -> GroupAction:
    gens = []
    for s in adjacent_transpositions(degree):
        images = [module.index[act_on_blocks(s, b, ordered)] for b in module.basis]
        gens.append((s, Matrix.from_images(images, module.field)))
    return GroupAction(module, gens, "left")


def build_foulkes(a: int, m: int, field=Q) -> FoulkesModule:
    """Permutation module on set partitions of ``{1..am}`` into m blocks of size a."""
    if a < 1 or m < 1:
        raise DomainError(f"need a, m >= 1, got a={a}, m={m}")
    if _foulkes_count(a, m) > FOULKES_DIM_CAP:
        raise ResourceLimitError(f"Foulkes module ({a}^{m}) has dimension above {FOULKES_DIM_CAP}")
    module = BasedModule(field, equal_block_partitions(range(1, a * m + 1), a))
    return FoulkesModule(a, m, module, _block_action(module, a * m, ordered=False))


def build_tabloids(a: int, m: int, field=Q) -> tuple[BasedModule, GroupAction]:
    """Permutation module on ordered rows, the tabloids of shape ``(a^m)``."""
    count = math.factorial(a * m) // math.factorial(a) ** m
    if count > FOULKES_DIM_CAP:
        raise ResourceLimitError(f"tabloid module ({a}^{m}) has dimension above {FOULKES_DIM_CAP}")
    basis = sorted({tuple(order) for p in equal_block_partitions(range(1, a * m + 1), a) for order in _orderings(p)})
    module = BasedModule(field, basis)
    return module, _block_action(module, a * m, ordered=True)


@dataclass
class FoulkesSplit:
    foulkes: FoulkesModule
    tabloids: BasedModule
    forget: LinearMap
    symmetrize: LinearMap
    certificate: Certificate


def build_foulkes_split(a: int, m: int, field=Q, strict: bool = True) -> FoulkesSplit:
    """Forgetting row order splits, with section the row-order average."""
    p = field.characteristic
    if 0 < p <= m:
        raise HypothesisViolationError(f"averaging over row orders needs char 0 or char > {m}; got char {p}")
    H = build_foulkes(a, m, field)
    M, M_action = build_tabloids(a, m, field)
    forget = Matrix(H.dim, M.dim, [{H.module.index[tuple(sorted(t))]: 1} for t in M.basis], field)
    weight = field.one / field(math.factorial(m))
    sym_cols = [{M.index[t]: weight for t in _orderings(P)} for P in H.module.basis]
    symmetrize = Matrix(M.dim, H.dim, sym_cols, field)
    Phi = LinearMap(M, H.module, forget)
    Psi = LinearMap(H.module, M, symmetrize)
    proj = symmetrize @ forget
    one_m = Matrix.identity(M.dim, field)
    cert = check_equivariance(Phi, [(f"s{k + 1}", x, y) for k, (x, y) in enumerate(zip(M_action.matrices, H.action.matrices))],
                              require_bijective=False)
    psi_cert = check_equivariance(Psi, [(f"s{k + 1}", y, x) for k, (x, y) in enumerate(zip(M_action.matrices, H.action.matrices))],
                                  require_bijective=False)
    for res in psi_cert.residuals:
        cert.residuals.append({**res, "generator": "section:" + res["generator"]})
    rank_proj = proj.rank()
    cert.checks.update({
        "forget_surjective": cert.rank == H.dim,
        "forget_after_section_identity": forget @ symmetrize == Matrix.identity(H.dim, field),
        "projector_idempotent": proj @ proj == proj,
        "projector_rank": rank_proj == H.dim,
        "exact_splitting": rank_proj + (one_m - proj).rank() == M.dim,
    })
    if strict and not cert.passed:
        raise LemmaViolationError(f"Foulkes split ({a}^{m}) failed: {cert.dumps()}", cert)
    return FoulkesSplit(H, M, Phi, Psi, cert)


# ---------------------------------------------------------------------------
# The unlabelled factor as a product of Foulkes modules


def unlabelled_segments(data: ClassData) -> list[tuple[int, int, int]]:
    """``(block size, block count, offset)`` for each run of equal-size unlabelled blocks, in Sym(l2) coordinates."""
    out, offset = [], 0
    sizes = data.signature.unlabelled_sizes()
    for size in sorted(set(sizes)):
        count = sizes.count(size)
        out.append((size, count, offset))
        offset += size * count
    return out


def build_foulkes_factorization(v: PartialDiagram, r: int, l: int, n: int, field=Q, strict: bool = True) -> LemmaResult:
    """``k Sym(l2) (x)_{unlabelled} k`` -> induced product of Foulkes modules, as left modules."""
    data = class_data(v, r, l, n, field)
    l2 = data.l2
    B, sym_l2 = unlabelled_factor(data)
    segments = unlabelled_segments(data)
    factors = [build_foulkes(size, count, field) for size, count, _ in segments]
    dims = [f.dim for f in factors]
    prod_dim = math.prod(dims)
    labels = [()]
    for f in factors:
        labels = [x + (b,) for x in labels for b in f.module.basis]
    N = BasedModule(field, labels)

    def factor_index(idx):
        out = 0
        for k, i in enumerate(idx):
            out = out * dims[k] + i
        return out

    young_gens, young_on_n = [], []
    for k, (size, count, offset) in enumerate(segments):
        for s_local, mat in factors[k].action.generators:
            young_gens.append(s_local.extend(l2, offset))
            left = Matrix.identity(math.prod(dims[:k]), field)
            right = Matrix.identity(math.prod(dims[k + 1:]), field)
            young_on_n.append(kron(kron(left, mat), right))
    parts = tuple(size * count for size, count, _ in segments)
    tgt = tensor_over_subgroup(sym_l2, [right_mult(sym_l2, y) for y in young_gens], N, young_on_n)
    eps, owner = _coset_lookup(l2, young_subgroup(parts), "left")

    def forward_column(c):
        tau = sym_l2.basis[c]
        e = eps[owner[tau]]
        rest = e.inverse() * tau
        idx = []
        for k, (size, count, offset) in enumerate(segments):
            local = rest.restrict(range(offset + 1, offset + size * count + 1))
            point = act_on_blocks(local, factors[k].standard_point())
            idx.append(factors[k].module.index[point])
        return tgt.project_pure(sym_l2.index[e], factor_index(idx))

    plain = _plain_map(tgt.dim, B.plain_dim, forward_column, field)
    forward = LinearMap(B.module, tgt.module, B.restrict_to_reps(plain))
    src_left = [B.induce_left(left_mult(sym_l2, s)) for s in adjacent_transpositions(l2)]
    tgt_left = [tgt.induce_left(left_mult(sym_l2, s)) for s in adjacent_transpositions(l2)]
    checks = {
        "well_defined": B.kills_relations(plain),
        "dimension_product": len(eps) * prod_dim == B.dim == tgt.dim,
    }
    cert = _certify("foulkes-product", forward, src_left, tgt_left, [], [], checks, strict)
    return LemmaResult("foulkes-product", B.module, tgt.module, forward, None, cert, src_left, [], tgt_left, [],
                       {"data": data, "cosets": len(eps), "factor_dims": dims})
