import itertools
import math
from fractions import Fraction

import pytest

from partalg.errors import DomainError, NotACharacterError
from partalg.fields import PrimeField
from partalg.partitions import act_on_partial, enumerate_classes
from partalg.perm import (
    ClassFunction,
    Permutation,
    all_permutations,
    class_size,
    conjugate,
    cycle_type_representative,
    hook_length_dimension,
    partitions,
)
from partalg.symgroup import (
    MultiplicityTable,
    block_system_stabilizer,
    character_table_csv,
    coinvariant_dim,
    coset_transversal,
    decompose_class_function,
    induce_product,
    irreducible_character,
    mn_character,
    representation_character,
    specht_representation,
    wreath_stabilizer,
    young_subgroup,
)


def test_trivial_and_sign_characters():
    for n in range(1, 7):
        for mu in partitions(n):
            assert mn_character((n,), mu) == 1
            sign = (-1) ** (n - len(mu))
            assert mn_character((1,) * n, mu) == sign


def test_weight_mismatch():
    with pytest.raises(DomainError):
        mn_character((2, 1), (2,))


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_specht_traces_match_mn(n):
    for lam in partitions(n):
        rep = specht_representation(lam)
        assert rep.module.dim == hook_length_dimension(lam)
        chi = representation_character(rep, n)
        for mu in partitions(n):
            assert chi(mu) == mn_character(lam, mu)
        assert rep.check_coxeter()
        assert specht_representation(lam, dual=True).check_coxeter()


def test_dual_specht_has_same_character():
    for lam in partitions(4):
        a = representation_character(specht_representation(lam), 4)
        b = representation_character(specht_representation(lam, dual=True), 4)
        assert a == b


def test_specht_over_prime_field_satisfies_relations():
    for lam in partitions(4):
        assert specht_representation(lam, field=PrimeField(3)).check_coxeter()


def test_two_one_values():
    rep = specht_representation((2, 1))
    chi = representation_character(rep, 3)
    assert (chi((1, 1, 1)), chi((2, 1)), chi((3,))) == (2, 0, -1)


@pytest.mark.parametrize("n", range(1, 7))
def test_orthogonality(n):
    parts = partitions(n)
    for mu, nu in itertools.product(parts, parts):
        col = sum(mn_character(lam, mu) * mn_character(lam, nu) for lam in parts)
        expected = math.factorial(n) // class_size(mu) if mu == nu else 0
        assert col == expected
    for a, b in itertools.product(parts, parts):
        assert irreducible_character(a).inner(irreducible_character(b)) == (1 if a == b else 0)


def test_character_table_csv_layout():
    text = character_table_csv(3)
    lines = text.strip().splitlines()
    assert lines[0] == 'lambda,(3),"(2,1)","(1,1,1)"'
    assert lines[2] == '"(2,1)",-1,0,2'


def lr_bruteforce(chi1, chi2):
    """Induce from the Young subgroup by summing over explicit elements."""
    l1, l2 = chi1.degree, chi2.degree
    n = l1 + l2
    values = {}
    for mu in partitions(n):
        g = cycle_type_representative(mu)
        total = Fraction(0)
        for x in all_permutations(n):
            h = x.inverse() * g * x
            if all(h(i) <= l1 for i in range(1, l1 + 1)):
                a = Permutation(tuple(h(i) for i in range(1, l1 + 1))) if l1 else None
                b = Permutation(tuple(h(i) - l1 for i in range(l1 + 1, n + 1))) if l2 else None
                va = chi1(a.cycle_type()) if a else 1
                vb = chi2(b.cycle_type()) if b else 1
                total += va * vb
        values[mu] = total / (math.factorial(l1) * math.factorial(l2))
    return ClassFunction(n, values)


@pytest.mark.parametrize("l1,l2", [(1, 1), (2, 1), (2, 2), (3, 2), (1, 4)])
def test_induce_product_against_bruteforce(l1, l2):
    for a in partitions(l1):
        for b in partitions(l2):
            chi1, chi2 = irreducible_character(a), irreducible_character(b)
            assert induce_product(chi1, chi2) == lr_bruteforce(chi1, chi2)


def test_pieri_and_permutation_character():
    t = induce_product(irreducible_character((1,)), irreducible_character((1,)))
    assert decompose_class_function(t).entries == {(2,): 1, (1, 1): 1}
    perm = induce_product(ClassFunction.trivial(2), ClassFunction.trivial(2))
    assert decompose_class_function(perm).entries == {(4,): 1, (3, 1): 1, (2, 2): 1}


def test_decompositions():
    regular = ClassFunction(3, {(1, 1, 1): 6})
    assert decompose_class_function(regular).entries == {(3,): 1, (2, 1): 2, (1, 1, 1): 1}
    from partalg.pipeline import wreath_trivial_character

    assert decompose_class_function(wreath_trivial_character(2, 2)).entries == {(4,): 1, (2, 2): 1}
    with pytest.raises(NotACharacterError):
        decompose_class_function(ClassFunction(3, {(1, 1, 1): 1}))


def test_table_labels_and_dimension():
    t = MultiplicityTable(3, {(2, 1): 2, (3,): 1})
    assert t.dimension() == 5
    assert t.to_json() == {"3": 1, "2,1": 2}
    tt = t.transposed_labels()
    assert tt.entries == {(1, 1, 1): 1, (2, 1): 2}
    assert tt.character() == t.character()


def test_transversals():
    assert coset_transversal(4, young_subgroup((4,))) == [Permutation.identity(4)]
    H = young_subgroup((2, 2))
    for side in ("left", "right"):
        reps = coset_transversal(4, H, side)
        assert len(reps) == 6
        for a, b in itertools.combinations(reps, 2):
            quotient = a.inverse() * b if side == "left" else b * a.inverse()
            assert not H.contains(quotient)
    W = block_system_stabilizer(4, [(1, 2), (3, 4)])
    assert W.order == 8 and len(coset_transversal(4, W)) == 3


@pytest.mark.parametrize("l", [1, 2, 3, 4, 5, 6])
def test_wreath_stabilizer_matches_bruteforce(l):
    r = l + 1
    for n in range(0, l + 1):
        for v in enumerate_classes(r, l, n):
            pa, pb, _ = wreath_stabilizer(v, l)
            if l <= 5:
                stab = {g for g in all_permutations(l) if act_on_partial(g, v, l) == v}
                assert len(stab) == pa.order * pb.order
                assert all(act_on_partial(g, v, l) == v for g in pa.elements() + pb.elements())
            else:
                count = sum(1 for g in all_permutations(l) if act_on_partial(g, v, l) == v)
                assert count == pa.order * pb.order


def test_sign_and_trivial_coinvariants():
    H = young_subgroup((2, 1))
    assert coinvariant_dim(specht_representation((3,)), H) == 1
    assert coinvariant_dim(specht_representation((1, 1, 1)), H) == 0
    assert coinvariant_dim(specht_representation((2, 1)), young_subgroup((3,))) == 0
    assert coinvariant_dim(specht_representation((2, 1)), young_subgroup((1, 1, 1))) == 2


def test_conjugate_labels_swap_trivial_and_sign():
    for n in range(1, 6):
        sign = irreducible_character((1,) * n)
        for lam in partitions(n):
            prod = ClassFunction(n, {mu: irreducible_character(lam)(mu) * sign(mu) for mu in partitions(n)})
            assert prod == irreducible_character(conjugate(lam))
