import pytest

from partalg.algebra import e_diagram, embed_perm
from partalg.errors import DomainError, MalformedPartitionError
from partalg.partitions import (
    act_on_partial,
    build_d_v,
    canonicalize,
    class_signature,
    enumerate_classes,
    enumerate_diagrams,
    enumerate_partial,
    flip,
    identity_diagram,
    is_canonical_representative,
    make_partial,
    parse_diagram,
    parse_partial,
    propagating_number,
    rows_and_permutation,
    top_row,
    transporter,
)
from partalg.perm import Permutation, all_permutations
from partalg.symgroup import wreath_stabilizer

X = "{1,2',3'},{2},{3,4,5,5',6'},{6,4'},{1'}"


def bell_triangle(m):
    """Bell numbers from the Aitken triangle."""
    row = [1]
    for _ in range(m):
        nxt = [row[-1]]
        for x in row:
            nxt.append(nxt[-1] + x)
        row = nxt
    return row[0]


def test_bell_oracle_sanity():
    assert [bell_triangle(m) for m in range(7)] == [1, 1, 2, 5, 15, 52, 203]


@pytest.mark.parametrize("r", [1, 2, 3])
def test_enumeration_counts_against_bell_triangle(r):
    ds = enumerate_diagrams(r)
    assert len(ds) == len(set(ds)) == bell_triangle(2 * r)


def test_canonicalize_sorts():
    assert canonicalize([[2, 1], [4, 3]], 2).blocks == ((1, 2), (3, 4))
    assert identity_diagram(3).blocks == ((1, 4), (2, 5), (3, 6))


def test_two_drawings_agree():
    again = parse_diagram("{1'},{6,4'},{5',3,6',4,5},{2},{3',2',1}", 6)
    assert again == parse_diagram(X, 6)


@pytest.mark.parametrize(
    "blocks,r",
    [([[1, 2], [2, 3, 4]], 2), ([[1, 2], [3]], 2), ([[1, 2, 3, 4, 5]], 2), ([[], [1, 2, 3, 4]], 2)],
)
def test_canonicalize_errors(blocks, r):
    with pytest.raises(MalformedPartitionError):
        canonicalize(blocks, r)


def test_round_trip_text():
    for d in enumerate_diagrams(2):
        assert parse_diagram(str(d), 2) == d


def test_propagating_numbers():
    assert propagating_number(identity_diagram(4)) == 4
    assert propagating_number(e_diagram(2, 5)) == 2
    assert propagating_number(parse_diagram(X, 6)) == 3


def test_rows_and_permutation_inverts_construction():
    for d in enumerate_diagrams(3):
        top, bottom, pi = rows_and_permutation(d)
        assert top.n == bottom.n == pi.degree == propagating_number(d)
    _, _, pi = rows_and_permutation(identity_diagram(3))
    assert pi.is_identity()


def test_reconstructed_example_permutation():
    b = parse_diagram("{1,2,3',4',5',6',7'},{3,1'},{4,5,6,7,2'}", 7)
    assert rows_and_permutation(b)[2] == Permutation.from_cycles(3, (1, 3, 2))


def test_flip_swaps_rows():
    x = parse_diagram(X, 6)
    by_hand = parse_diagram("{1',2,3},{2'},{3',4',5',5,6},{6',4},{1}", 6)
    assert flip(x) == by_hand
    assert flip(flip(x)) == x
    assert flip(identity_diagram(3)) == identity_diagram(3)
    assert flip(e_diagram(2, 4)) == e_diagram(2, 4)


def test_action_example():
    v = parse_partial("[1,3]* [2,4,6,7] [5]*", 7)
    moved = act_on_partial(Permutation.from_cycles(6, (5, 6)), v, 6)
    assert moved == parse_partial("[1,3]* [2,4,5] [6,7]*", 7)
    assert act_on_partial(Permutation.identity(6), v, 6) == v


def test_signatures_of_examples():
    v = make_partial(12, [[1, 2], [3, 4], [5, 6], [7], [8, 9], [10, 11, 12]], [[1, 2], [3, 4], [5, 6]])
    sig = class_signature(v, 11)
    assert (sig.alpha, sig.beta) == ((0, 3), (1, 2))
    w = parse_partial("[1,3]* [2,4,6,7] [5]*", 7)
    sig = class_signature(w, 6)
    assert (sig.alpha, sig.beta) == ((1, 1), (0, 0, 1))


def test_example_stabilizer_orders():
    v = make_partial(12, [[1, 2], [3, 4], [5, 6], [7], [8, 9], [10, 11, 12]], [[1, 2], [3, 4], [5, 6]])
    pa, pb, _ = wreath_stabilizer(v, 11)
    assert (pa.order, pb.order) == (48, 8)


def test_classes_partition_V_brute_force():
    for r in range(1, 6):
        for l in range(1, min(r, 5) + 1):
            for n in range(0, l + 1):
                reps = enumerate_classes(r, l, n)
                sigs = [class_signature(v, l) for v in reps]
                assert len(set(sigs)) == len(sigs)
                assert all(is_canonical_representative(v, l) for v in reps)
                seen = {class_signature(w, l) for w in enumerate_partial(r, l, n)}
                assert seen == set(sigs)


def test_small_class_lists():
    assert len(enumerate_classes(3, 3, 3)) == 1
    assert len(enumerate_classes(3, 3, 1)) == 4
    sigs = {(s.alpha, s.beta) for s in (class_signature(v, 4) for v in enumerate_classes(4, 4, 2))}
    assert sigs == {((2,), (0, 1)), ((2,), (2,)), ((1, 1), (1,)), ((1, 0, 1), ()), ((0, 2), ())}


def test_transporter_and_orbits():
    l, r, n = 4, 5, 2
    for w in enumerate_partial(r, l, n):
        v = next(u for u in enumerate_classes(r, l, n) if class_signature(u, l) == class_signature(w, l))
        tau = transporter(v, w, l)
        assert act_on_partial(tau, v, l) == w


def test_transporter_rejects_inequivalent():
    a, b = enumerate_classes(3, 3, 1)[:2]
    with pytest.raises(DomainError):
        transporter(a, b, 3)


def test_d_v_properties():
    for v in enumerate_classes(4, 3, 2):
        d = build_d_v(v)
        assert top_row(d) == v
        assert rows_and_permutation(d)[2].is_identity()
    singles = make_partial(3, [[1], [2], [3]], [[1], [2], [3]])
    assert build_d_v(singles) == identity_diagram(3)
    assert build_d_v(top_row(e_diagram(2, 4))) == e_diagram(2, 4)


def test_embedding_top_row_action():
    """The top row of embed(pi) * d_v equals pi acting on v."""
    from partalg.algebra import compose_diagrams

    r, l, n = 4, 3, 1
    for v in enumerate_partial(r, l, n):
        d = build_d_v(v)
        for pi in all_permutations(l):
            _, prod = compose_diagrams(embed_perm(pi, l, r), d)
            assert top_row(prod) == act_on_partial(pi, v, l)
