import itertools
from fractions import Fraction

import pytest

from partalg.algebra import (
    AlgebraElement,
    compose_diagrams,
    e_diagram,
    element_json_dumps,
    embed_perm,
    idempotent_e,
    multiply,
    parse_element,
    quotient_bimodule_basis,
)
from partalg.errors import DomainError, NotInvertibleError
from partalg.fields import Q, PrimeField
from partalg.partitions import canonicalize, enumerate_diagrams, parse_diagram, propagating_number
from partalg.perm import all_permutations


def stack_oracle(d1, d2):
    """Stack d1 over d2 with a tiny union-find on 3r labelled nodes."""
    r = d1.r
    parent = {}

    def find(x):
        parent.setdefault(x, x)
        while parent[x] != x:
            x = parent[x]
        return x

    def node(layer, x):
        # layer 0 = top of d1, 1 = middle, 2 = bottom of d2
        return (layer, x)

    for blk in d1.blocks:
        ns = [node(0, x) if x <= r else node(1, x - r) for x in blk]
        for a in ns[1:]:
            parent[find(a)] = find(ns[0])
    for blk in d2.blocks:
        ns = [node(1, x) if x <= r else node(2, x - r) for x in blk]
        for a in ns[1:]:
            parent[find(a)] = find(ns[0])
    comps = {}
    for layer in range(3):
        for x in range(1, r + 1):
            comps.setdefault(find(node(layer, x)), []).append((layer, x))
    loops, blocks = 0, []
    for members in comps.values():
        outer = [x if layer == 0 else x + r for layer, x in members if layer != 1]
        if outer:
            blocks.append(outer)
        else:
            loops += 1
    return loops, canonicalize(blocks, r)


def test_worked_product():
    x = parse_diagram("{1,2',3'},{2},{3,4,5,5',6'},{6,4'},{1'}", 6)
    y = parse_diagram("{1},{2,2',3'},{3,4},{5,5'},{6},{1'},{4',6'}", 6)
    loops, xy = compose_diagrams(x, y)
    assert loops == 1
    assert xy == parse_diagram("{1,6,2',3'},{2},{3,4,5,5'},{1'},{4',6'}", 6)
    elt = multiply(AlgebraElement.from_diagram(x, 5), AlgebraElement.from_diagram(y, 5))
    assert elt.terms == {xy: Fraction(5)}


def test_compose_matches_oracle_on_all_pairs_r2():
    ds = enumerate_diagrams(2)
    for a, b in itertools.product(ds, ds):
        assert compose_diagrams(a, b) == stack_oracle(a, b)


def test_propagating_number_never_increases():
    ds = enumerate_diagrams(2)
    for a, b in itertools.product(ds, ds):
        p = propagating_number(compose_diagrams(a, b)[1])
        assert p <= min(propagating_number(a), propagating_number(b))


def test_associativity_exhaustive_r2():
    ds = enumerate_diagrams(2)
    delta = 3
    for a, b, c in itertools.product(ds, repeat=3):
        la, ab = compose_diagrams(a, b)
        lb, abc = compose_diagrams(ab, c)
        lc, bc = compose_diagrams(b, c)
        ld, abc2 = compose_diagrams(a, bc)
        assert abc == abc2
        assert delta ** (la + lb) == delta ** (lc + ld)


@pytest.mark.parametrize("fieldk,delta", [(Q, Fraction(2, 3)), (PrimeField(5), 2)])
def test_unit_is_two_sided(fieldk, delta):
    one = AlgebraElement.unit(3, delta, fieldk)
    for d in enumerate_diagrams(3)[::7]:
        x = AlgebraElement.from_diagram(d, delta, fieldk, 2)
        assert multiply(one, x) == x == multiply(x, one)


def test_idempotents():
    for r in range(1, 5):
        for n in range(r + 1):
            e = idempotent_e(n, r, 2)
            assert multiply(e, e) == e
            if n:
                assert propagating_number(e_diagram(n, r)) == n
        assert idempotent_e(r, r, 2) == AlgebraElement.unit(r, 2)
    for r in range(1, 4):
        e0 = idempotent_e(0, r, 7)
        assert multiply(e0, e0) == e0


def test_e0_needs_invertible_delta():
    with pytest.raises(NotInvertibleError):
        idempotent_e(0, 2, 0)
    with pytest.raises(NotInvertibleError):
        idempotent_e(0, 2, 5, PrimeField(5))


def test_embedding_is_multiplicative():
    for l, r in [(2, 3), (3, 3), (3, 5)]:
        for p in all_permutations(l):
            for q in all_permutations(l):
                assert compose_diagrams(embed_perm(p, l, r), embed_perm(q, l, r)) == (0, embed_perm(p * q, l, r))
    with pytest.raises(DomainError):
        embed_perm(all_permutations(3)[0], 3, 2)


def test_quotient_basis_small_cases():
    assert len(quotient_bimodule_basis(3, 2, 1)) == 3
    for n in (1, 2, 3):
        basis = quotient_bimodule_basis(n, n, n)
        assert sorted(basis) == sorted(embed_perm(p, n, n) for p in all_permutations(n))


def test_element_parse_and_json():
    x = parse_element("3/2 * {1,1'},{2,2'} - {1,2,1',2'}", 2, 1)
    assert len(x.terms) == 2
    assert x.terms[parse_diagram("{1,1'},{2,2'}", 2)] == Fraction(3, 2)
    assert '"coeff": "-1"' in element_json_dumps(x)
    with pytest.raises(DomainError):
        parse_element("2 * nonsense", 2, 1)


def test_mixed_parameters_are_rejected():
    a = AlgebraElement.unit(2, 1)
    with pytest.raises(DomainError):
        multiply(a, AlgebraElement.unit(2, 2))
    with pytest.raises(DomainError):
        multiply(a, AlgebraElement.unit(3, 1))
