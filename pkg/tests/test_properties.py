"""Randomized properties, driven by hypothesis."""

from hypothesis import given, settings
from hypothesis import strategies as st

from partalg.algebra import AlgebraElement, compose_diagrams, multiply
from partalg.fields import Q, PrimeField
from partalg.linalg import Matrix
from partalg.partitions import (
    act_on_partial,
    canonicalize,
    class_signature,
    enumerate_partial,
    flip,
    parse_diagram,
    propagating_number,
    rows_and_permutation,
    diagram_from_rows,
)
from partalg.perm import ClassFunction, Permutation, partitions
from partalg.symgroup import decompose_class_function, induce_product, irreducible_character


@st.composite
def diagrams(draw, r):
    labels = draw(st.lists(st.integers(0, 2 * r - 1), min_size=2 * r, max_size=2 * r))
    blocks = {}
    for dot, lab in enumerate(labels, start=1):
        blocks.setdefault(lab, []).append(dot)
    return canonicalize(blocks.values(), r)


@st.composite
def perms(draw, degree):
    return Permutation(tuple(draw(st.permutations(range(1, degree + 1)))))


@st.composite
def characters(draw, degree):
    chi = ClassFunction(degree, {})
    for lam in partitions(degree):
        chi = chi + irreducible_character(lam).scale(draw(st.integers(0, 2)))
    return chi


@given(st.integers(1, 4).flatmap(lambda r: st.tuples(diagrams(r), diagrams(r), diagrams(r))))
@settings(max_examples=60, deadline=None)
def test_diagram_product_associates(triple):
    a, b, c = triple
    la, ab = compose_diagrams(a, b)
    lb, left = compose_diagrams(ab, c)
    lc, bc = compose_diagrams(b, c)
    ld, right = compose_diagrams(a, bc)
    assert left == right and la + lb == lc + ld


@given(st.integers(1, 3).flatmap(lambda r: st.tuples(diagrams(r), diagrams(r))), st.sampled_from([Q, PrimeField(7)]))
@settings(max_examples=40, deadline=None)
def test_flip_is_anti_homomorphism(pair, fieldk):
    a, b = pair
    x = AlgebraElement.from_diagram(a, 2, fieldk)
    y = AlgebraElement.from_diagram(b, 2, fieldk)
    xy = multiply(x, y)
    flipped = multiply(AlgebraElement.from_diagram(flip(b), 2, fieldk), AlgebraElement.from_diagram(flip(a), 2, fieldk))
    assert {flip(d): c for d, c in xy.terms.items()} == flipped.terms


@given(st.integers(1, 4).flatmap(diagrams))
@settings(max_examples=80, deadline=None)
def test_rows_round_trip(d):
    top, bottom, pi = rows_and_permutation(d)
    assert diagram_from_rows(top, bottom, pi) == d
    assert parse_diagram(str(d), d.r) == d
    assert propagating_number(d) == pi.degree


@given(st.integers(2, 5).flatmap(lambda l: st.tuples(st.just(l), perms(l), perms(l), st.integers(0, l))))
@settings(max_examples=50, deadline=None)
def test_partial_action_is_a_left_action(args):
    l, p, q, n = args
    r = l + 1
    for v in enumerate_partial(r, l, n)[:10]:
        assert act_on_partial(p * q, v, l) == act_on_partial(p, act_on_partial(q, v, l), l)
        assert class_signature(act_on_partial(p, v, l), l) == class_signature(v, l)


@given(st.integers(1, 3).flatmap(lambda a: st.tuples(characters(a), characters(4 - a))))
@settings(max_examples=30, deadline=None)
def test_induce_product_commutes(pair):
    x, y = pair
    assert induce_product(x, y) == induce_product(y, x)


@given(characters(1), characters(2), characters(3))
@settings(max_examples=20, deadline=None)
def test_induce_product_associates(x, y, z):
    assert induce_product(induce_product(x, y), z) == induce_product(x, induce_product(y, z))


@given(characters(5))
@settings(max_examples=30, deadline=None)
def test_decomposition_round_trip(chi):
    table = decompose_class_function(chi)
    assert table.character() == chi
    assert table.dimension() == chi.dimension()


@given(st.lists(st.lists(st.integers(-4, 4), min_size=4, max_size=4), min_size=4, max_size=4),
       st.sampled_from([Q, PrimeField(5)]))
@settings(max_examples=60, deadline=None)
def test_rank_nullity_and_inverse(rows, fieldk):
    m = Matrix.from_dense(rows, fieldk)
    rank = m.rank()
    assert rank == m.transpose().rank()
    if rank == 4:
        assert m @ m.inverse() == Matrix.identity(4, fieldk)

