"""Acceptance criteria as plain functions, shared by ``selftest`` and the test suite.

Each runner returns a :class:`CriterionResult`; none of them prints timing
information, so a report is a pure function of the code and the seed.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

from .algebra import AlgebraElement, compose_diagrams, embed_perm, idempotent_e, multiply, quotient_bimodule_basis
from .fields import Q, PrimeField
from .lab import build_foulkes_split, build_phi, build_psi, build_theta, propagating_permutation
from .linalg import Matrix
from .partitions import (
    act_on_partial,
    bell_number,
    build_d_v,
    e_n_bottom,
    enumerate_classes,
    enumerate_diagrams,
    parse_diagram,
    parse_partial,
    propagating_number,
    rows_and_permutation,
    top_row,
)
from .perm import Permutation, partitions
from .pipeline import drop_class_audit, verify_theorem
from .symgroup import wreath_stabilizer

LEMMA_CASES = [(3, 2, 1), (3, 3, 2), (4, 3, 2), (4, 4, 2), (4, 4, 3), (5, 4, 2)]
ROUTE_CASES = LEMMA_CASES + [(4, 3, 3)]
FOULKES_CASES = [(1, 3), (2, 2), (3, 2), (2, 3)]


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    detail: str

    def line(self) -> str:
        label = f"criterion {self.number}" if self.number else "extra check"
        return f"{label} [{'PASS' if self.passed else 'FAIL'}] {self.title}: {self.detail}"


def _smallest_prime_above(m: int) -> int:
    p = m + 1
    while any(p % q == 0 for q in range(2, int(p ** 0.5) + 1)):
        p += 1
    return p


def worked_examples() -> CriterionResult:
    x = parse_diagram("{1,2',3'},{2},{3,4,5,5',6'},{6,4'},{1'}", 6)
    y = parse_diagram("{1},{2,2',3'},{3,4},{5,5'},{6},{1'},{4',6'}", 6)
    loops, xy = compose_diagrams(x, y)
    expected = parse_diagram("{1,6,2',3'},{2},{3,4,5,5'},{1'},{4',6'}", 6)
    ok_product = loops == 1 and xy == expected

    v = parse_partial("[1,3]* [2,4,6,7] [5]*", 7)
    moved = act_on_partial(Permutation.from_cycles(6, (5, 6)), v, 6)
    ok_action = moved == parse_partial("[1,3]* [2,4,5] [6,7]*", 7)

    b = parse_diagram("{1,2,3',4',5',6',7'},{3,1'},{4,5,6,7,2'}", 7)
    w = parse_partial("[1,3]* [2,4,6,7]* [5]*", 7)
    pi_b = propagating_permutation(b)
    tau = Permutation.from_cycles(6, (2, 3, 5, 4))
    ok_b = pi_b == Permutation.from_cycles(3, (1, 3, 2)) and top_row(b) == act_on_partial(tau, w, 6)
    d = build_d_v(w)
    _, tau_d = compose_diagrams(embed_perm(tau, 6, 7), d)
    eta = propagating_permutation(tau_d).inverse() * pi_b
    ok_b = ok_b and compose_diagrams(tau_d, embed_perm(eta, 3, 7))[1] == b
    passed = ok_product and ok_action and ok_b
    detail = f"product loops={loops} match={ok_product}; action match={ok_action}; reconstruction match={ok_b}"
    return CriterionResult(1, "worked examples", passed, detail)


def _filtered_count(r: int, l: int, n: int) -> int:
    """Diagrams with n propagating parts, bottom row of e_n, and top dots l..r in one part."""
    if n == 0:
        bottom_block = tuple(range(r + 1, 2 * r + 1))
    fat = set(range(l, r + 1))
    count = 0
    for d in enumerate_diagrams(r):
        if propagating_number(d) != n:
            continue
        top, bottom, _ = rows_and_permutation(d)
        if n == 0:
            if bottom_block not in d.blocks:
                continue
        elif bottom != e_n_bottom(r, n):
            continue
        if any(fat <= set(blk) for blk in top.blocks):
            count += 1
    return count


def dimension_audits() -> CriterionResult:
    bell_ok = all(len(enumerate_diagrams(r)) == bell_number(2 * r) for r in (1, 2, 3))
    bad = []
    checked = 0
    for r in range(1, 5):
        for l in range(1, r + 1):
            for n in range(0, l + 1):
                formula = 0
                for v in enumerate_classes(r, l, n):
                    pa, pb, _ = wreath_stabilizer(v, l)
                    formula += math.factorial(n) * math.factorial(l) // (pa.order * pb.order)
                direct = _filtered_count(r, l, n)
                built = len(quotient_bimodule_basis(r, l, n)) if n else direct
                checked += 1
                if not formula == direct == built:
                    bad.append((r, l, n, formula, direct, built))
    detail = f"Bell(2r) r=1..3 ok={bell_ok}; {checked} (r,l,n) triples, mismatches={bad}"
    return CriterionResult(2, "dimension audits", bell_ok and not bad, detail)


def idempotent_laws() -> CriterionResult:
    settings = [(Q, 1), (Q, 2), (Q, -1), (PrimeField(7), 3)]
    failures = []
    checked = 0
    for fieldk, delta in settings:
        for r in range(1, 5):
            es = [idempotent_e(n, r, delta, fieldk) for n in range(r + 1)]
            for n in range(r + 1):
                if multiply(es[n], es[n]) != es[n]:
                    failures.append((fieldk.name, delta, r, n, n))
                for m in range(n + 1):
                    checked += 1
                    if not (multiply(es[n], es[m]) == es[m] == multiply(es[m], es[n])):
                        failures.append((fieldk.name, delta, r, n, m))
    return CriterionResult(3, "idempotent laws", not failures, f"{checked} pairs checked, failures={failures}")


def lemma_certificates() -> CriterionResult:
    count, failures, worst = 0, [], 0
    for r, l, n in LEMMA_CASES:
        for k, v in enumerate(enumerate_classes(r, l, n)):
            for builder in (build_psi, build_theta, build_phi):
                cert = builder(v, r, l, n, Q, strict=False).certificate
                count += 1
                worst = max([worst] + [res["max_abs_numerator"] for res in cert.residuals])
                if not cert.passed:
                    failures.append((builder.__name__, r, l, n, k))
    detail = f"{count} certificates, max residual={worst}, failures={failures}"
    return CriterionResult(4, "lemma certificates", not failures, detail)


def foulkes_splits() -> CriterionResult:
    failures, count = [], 0
    for a, m in FOULKES_CASES:
        for fieldk in (Q, PrimeField(_smallest_prime_above(m))):
            count += 1
            cert = build_foulkes_split(a, m, fieldk, strict=False).certificate
            if not cert.passed:
                failures.append((a, m, fieldk.name))
    return CriterionResult(5, "Foulkes split", not failures, f"{count} splits certified, failures={failures}")


def route_agreement() -> CriterionResult:
    failures, count = [], 0
    for r, l, n in ROUTE_CASES:
        for nu in partitions(n):
            count += 1
            report = verify_theorem(r, l, n, nu)
            if report.verdict != "pass":
                failures.append((r, l, n, nu))
    return CriterionResult(6, "route agreement", not failures, f"{count} (r,l,n,nu) cases, failures={failures}")


def negative_controls() -> CriterionResult:
    r, l, n = 4, 3, 2
    v = enumerate_classes(r, l, n)[0]
    res = build_psi(v, r, l, n)
    cols = [dict(c) for c in res.forward.matrix.cols]
    cols[0][0] = cols[0].get(0, 0) + 1
    bad = Matrix(res.forward.matrix.nrows, res.forward.matrix.ncols, cols, Q)
    cert = res.recheck(bad)
    named = [f"{x['side']}:{x['generator']}" for x in cert.failures()]
    ok_psi = cert.verdict == "fail" and bool(named)
    drops = []
    for k in range(len(enumerate_classes(r, l, n))):
        shortfall, expected = drop_class_audit(r, l, n, (2,), k)
        drops.append(shortfall == expected > 0)
    passed = ok_psi and all(drops)
    detail = f"corrupted map flagged at {named}; dropped-class shortfalls exact for {sum(drops)}/{len(drops)} orbits"
    return CriterionResult(7, "negative controls", passed, detail)


def seeded_associativity(seed: int, trials: int = 5) -> CriterionResult:
    """Random triple products in P(3) over Q associate; a seeded sanity check, not a numbered criterion."""
    rng = random.Random(seed)
    diagrams = enumerate_diagrams(3)
    ok = True
    for _ in range(trials):
        elems = []
        for _ in range(3):
            terms = {rng.choice(diagrams): rng.randint(-3, 3) for _ in range(3)}
            elems.append(AlgebraElement(3, 2, Q, terms))
        a, b, c = elems
        ok = ok and multiply(multiply(a, b), c) == multiply(a, multiply(b, c))
    return CriterionResult(0, "seeded associativity", ok, f"seed={seed}, trials={trials}")


RUNNERS = [worked_examples, dimension_audits, idempotent_laws, lemma_certificates, foulkes_splits,
           route_agreement, negative_controls]


def selftest_report(seed: int = 42) -> tuple[bool, str]:
    results = [run() for run in RUNNERS]
    results.append(seeded_associativity(seed))
    lines = [f"selftest seed={seed}"] + [res.line() for res in results]
    passed = all(res.passed for res in results)
    lines.append(f"overall: {'PASS' if passed else 'FAIL'}")
    return passed, "\n".join(lines) + "\n"
