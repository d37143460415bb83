import json
from pathlib import Path

import pytest

from partalg.errors import DomainError, StratificationError
from partalg.fields import PrimeField
from partalg.perm import parse_partition, partitions
from partalg.pipeline import (
    SCHEMA_VERSION,
    check_lower_ideal_annihilates,
    coinvariant_scaled_table,
    drop_class_audit,
    hypothesis_bound,
    multiplicities_bruteforce,
    multiplicities_structural,
    restricted_cell_module,
    structural_breakdown,
    verify_theorem,
)
from partalg.algebra import quotient_bimodule_basis
from partalg.symgroup import MultiplicityTable

GOLDEN = json.loads((Path(__file__).parent / "golden" / "restriction_tables.json").read_text())


def golden_cases():
    for entry in GOLDEN["tables"]:
        yield pytest.param(entry, id=f"{entry['r']}-{entry['l']}-{entry['n']}-{entry['nu']}")


@pytest.mark.parametrize("entry", list(golden_cases()))
def test_tables_match_golden(entry):
    r, l, n = entry["r"], entry["l"], entry["n"]
    nu = parse_partition(entry["nu"])
    report = verify_theorem(r, l, n, nu)
    assert report.verdict == "pass"
    assert report.module_dim == entry["module_dim"]
    assert report.table_bruteforce.to_json() == entry["table"]
    assert report.table_structural.to_json() == entry["table"]


@pytest.mark.parametrize("n", [1, 2, 3])
def test_top_layer_is_the_specht_module(n):
    for nu in partitions(n):
        module = restricted_cell_module(n, n, n, nu)
        assert multiplicities_bruteforce(module).entries == {nu: 1}
        assert multiplicities_structural(n, n, n, nu).entries == {nu: 1}


def test_smallest_module():
    module = restricted_cell_module(3, 2, 1, (1,))
    assert module.dim == 3
    assert multiplicities_bruteforce(module) == MultiplicityTable(2, {(2,): 2, (1, 1): 1})


@pytest.mark.parametrize("r,l,n,nu,delta", [(3, 2, 1, (1,), 1), (4, 3, 2, (1, 1), 2), (4, 4, 2, (2,), 1)])
def test_verify_examples(r, l, n, nu, delta):
    report = verify_theorem(r, l, n, nu, delta)
    assert report.verdict == "pass"
    assert all(report.audits.values())


def test_hypothesis_reporting():
    report = verify_theorem(4, 4, 2, (2,), 1)
    assert report.bound == 0 and report.hypothesis_holds
    data = report.to_json()
    assert data["hypothesis"]["bound"] == 0
    assert hypothesis_bound(5, 1) == 1 and hypothesis_bound(7, 1) == 2


def test_class_additivity_and_drop_control():
    classes = structural_breakdown(4, 4, 2, (2,))
    module = restricted_cell_module(4, 4, 2, (2,))
    assert sum(c.dim_tensor for c in classes) == module.dim
    for k, c in enumerate(classes):
        shortfall, expected = drop_class_audit(4, 4, 2, (2,), k)
        assert shortfall == expected == c.dim_tensor > 0


def test_sign_representation_coinvariants_vanish_on_swapping_classes():
    r, l, n, nu = 4, 4, 2, (1, 1)
    for c in structural_breakdown(r, l, n, nu):
        if c.sigma_alpha_order > 1:
            assert c.h == 0
            assert c.dim_tensor > 0
        else:
            assert c.h == 1


def test_coinvariant_scaled_table_miscounts():
    """Scaling a nu-independent module by the coinvariant dimension is not the restriction."""
    brute = multiplicities_bruteforce(restricted_cell_module(4, 4, 2, (2,)))
    naive = coinvariant_scaled_table(4, 4, 2, (2,))
    assert naive != brute
    assert naive.dimension() != brute.dimension()
    # with no labelled symmetry the two agree
    assert coinvariant_scaled_table(3, 2, 1, (1,)) == multiplicities_bruteforce(restricted_cell_module(3, 2, 1, (1,)))


def test_zero_delta_is_rejected():
    with pytest.raises(StratificationError):
        restricted_cell_module(3, 2, 1, (1,), delta=0)
    with pytest.raises(StratificationError):
        verify_theorem(3, 2, 1, (1,), 7, PrimeField(7))


def test_parameter_validation():
    with pytest.raises(DomainError):
        verify_theorem(3, 2, 1, (2,))
    with pytest.raises(DomainError):
        verify_theorem(3, 4, 1, (1,))


def test_prime_field_module_has_same_dimension():
    report = verify_theorem(4, 3, 2, (2,), 2, PrimeField(5))
    assert report.extra_checks["positive_characteristic_dimension"]
    assert report.verdict == "pass"
    with pytest.raises(DomainError):
        multiplicities_bruteforce(restricted_cell_module(4, 3, 2, (2,), 1, PrimeField(5)))


def test_lower_ideal_annihilates_exhaustively():
    for r, l, n in [(3, 2, 1), (3, 3, 2), (3, 2, 2)]:
        assert check_lower_ideal_annihilates(quotient_bimodule_basis(r, l, n), r, n)


def test_report_serialization():
    report = verify_theorem(4, 3, 2, (2,))
    data = json.loads(report.dumps())
    assert data["schema_version"] == SCHEMA_VERSION
    assert set(data) >= {"params", "classes", "brute", "structural", "verdict"}
    assert all({"signature", "dims", "h"} <= set(c) for c in data["classes"])
    dual = json.loads(report.dumps(dual_labels=True))
    assert dual["label_convention"] == "dual-specht-transposed"
    assert dual["brute"] == {"1,1,1": 2, "2,1": 2}
    assert report.to_csv().splitlines()[0] == "schema_version,lambda,bruteforce,structural"


def test_route_agreement_sweep():
    failures = []
    for r in range(1, 6):
        for l in range(1, min(r, 4) + 1):
            for n in range(1, l + 1):
                for nu in partitions(n):
                    if verify_theorem(r, l, n, nu).verdict != "pass":
                        failures.append((r, l, n, nu))
    assert not failures


@pytest.mark.parametrize("nu", partitions(3))
def test_route_agreement_five_strands(nu):
    assert verify_theorem(5, 5, 3, nu).verdict == "pass"
