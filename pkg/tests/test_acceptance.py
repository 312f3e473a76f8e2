"""Acceptance gate: every exact identity at its stated tolerance.

Each criterion runs over N in {3, 5, 7} with >= 50 seeded random admissible
samples (per relation, per N) and prints one pass/fail line; run with
`pytest tests/test_acceptance.py -v -s` to see the lines.
"""

import json

import numpy as np
import pytest

from cyclic6j.context import make_context
from cyclic6j.harness import run_all, run_relation
from cyclic6j.specfun import asymptotic_ratio

NS = (3, 5, 7)
SAMPLES = 50
SEED = 2024


def _check(name, reports):
    worst = max(max(r.residuals) for r in reports)
    ok = all(r.passed for r in reports)
    print(f"{'PASS' if ok else 'FAIL'}  {name}: max residual {worst:.3e} "
          f"(tolerances {sorted({r.tolerance for r in reports})})")
    assert ok, f"{name} failed with max residual {worst:.3e}"


def _runs(relation, tol=None, samples=SAMPLES, ns=NS):
    return [run_relation(relation, N, samples=samples, seed=SEED, tol=tol)
            for N in ns]


def test_criterion_01_ocg_duality():
    _check("1. OCG duality < 1e-10", _runs("ocg-duality", 1e-10))


def test_criterion_02_intertwining():
    _check("2. intertwining (E and D) < 1e-10", _runs("intertwining", 1e-10))


def test_criterion_03_factorization():
    _check("3. R = Upsilon Psi with default h < 1e-10", _runs("factorization", 1e-10))


def test_criterion_04_cg_decomposition():
    _check("4. CG decomposition < 1e-9", _runs("cg-decomposition", 1e-9))


def test_criterion_05_pentagon():
    reports = _runs("pentagon", 1e-8)
    _check("5. pentagon + factorized sub-checks < 1e-8", reports)
    for r in reports:
        for key in ("pentagon", "upsilon_pentagon", "cyclic_dilog_eq"):
            assert r.details[key]["max"] < 1e-8


def test_criterion_06_cyclic_dilog():
    _check("6a. functional identity < 1e-10", _runs("cyclic-dilog-424", 1e-10))
    reports = _runs("thm410", 1e-8)
    _check("6b. five-term identity after det fix < 1e-8", reports)
    for r in reports:
        assert r.details["det"]["max"] < 1e-8


def test_criterion_07_normal_reps():
    _check("7. Heisenberg-double relations at q = w^{-1} < 1e-12",
           _runs("heisenberg-relations", 1e-12))


def test_criterion_08_special_functions():
    for rel in ("eq28", "lemma62", "lemma63", "lemma61", "lemma34", "eq9-log"):
        _check(f"8. {rel} < 1e-9", _runs(rel, 1e-9))
    _check("8. |g(1)| = sqrt(N) < 1e-12", _runs("g1-norm", 1e-12, samples=1))


def test_criterion_09_asymptotics():
    ctx = make_context(3)
    for x in (0.1, 0.2, 0.3):
        e1 = abs(asymptotic_ratio(ctx, x, 0.2) - 1)
        e2 = abs(asymptotic_ratio(ctx, x, 0.1) - 1)
        factor = e1 / e2
        assert 1.5 <= factor <= 2.5, f"x={x}: factor {factor}"
    print("PASS  9. first-order asymptotics: error(0.2)/error(0.1) in [1.5, 2.5]")


def test_criterion_10_charged_layer():
    _check("10a. operator form, exhaustive charges at N=3 < 1e-10",
           _runs("lemma68", 1e-10))
    _check("10b. commutation relations C1-C3 < 1e-10", _runs("commutations", 1e-10))
    reports = _runs("symmetries", 1e-8)
    _check("10c. tetrahedral symmetries < 1e-8", reports)
    winners = {w for r in reports for w in r.details.get("winners", [])}
    print(f"      zeta candidate satisfying all three relations: {sorted(winners)}")
    assert winners == {"omega^{1/8}"}
    _check("10d. conjugation < 1e-10", _runs("conjugation", 1e-10))
    _check("10e. extended pentagon with random charges < 1e-8",
           _runs("extended-pentagon", 1e-8))
    _check("10f. orthogonality < 1e-9", _runs("orthogonality", 1e-9))


def test_criterion_11_tetra_layer():
    from cyclic6j.tetra import (DecoratedTetrahedron, IntegralCharge,
                                cocycle_from_generators, evaluate_xi,
                                make_branching, reps_from_cocycle)
    from cyclic6j.weylrep import BorelElement, psi_param
    from cyclic6j.specfun import rel_residual

    rng = np.random.default_rng(SEED)
    worst_scale = worst_psi = 0.0
    for N in NS:
        ctx = make_context(N)
        for _ in range(10):
            def rc():
                return complex(rng.uniform(0.5, 2) * np.exp(2j * np.pi * rng.uniform()))
            z = cocycle_from_generators(BorelElement(rc(), rc()),
                                        BorelElement(rc(), rc()),
                                        BorelElement(rc(), rc()))
            charge = IntegralCharge.make({"e01": 0, "e23": 0, "e12": 0, "e03": 0,
                                          "e02": 1, "e13": 1})
            state = tuple(int(v) for v in rng.integers(0, N, 4))
            tet = DecoratedTetrahedron(1, make_branching((0, 1, 2, 3)), z, charge, state)
            tri = reps_from_cocycle(ctx, tet)
            plain = evaluate_xi(ctx, tet, use_charges=False)
            twisted = evaluate_xi(ctx, tet, use_charges=True)
            scale = (tri.rho_mu.y * tri.mu_nu.y) ** ctx.P
            worst_scale = max(worst_scale,
                              abs(twisted - scale * plain) / max(abs(scale * plain), 1e-12))
            if (state[2] + state[0] - state[1]) % N != 0:
                assert plain == 0 and twisted == 0
            prod = (psi_param(ctx, tri.rho) * psi_param(ctx, tri.mu)).matrix()
            worst_psi = max(worst_psi, rel_residual(prod, z["e02"].matrix()))
    assert worst_scale < 1e-12
    assert worst_psi < 1e-10
    print(f"PASS  11. tetra layer: charge scaling {worst_scale:.2e} (tol 1e-12), "
          f"structural zeros exact, psi multiplicativity {worst_psi:.2e} (tol 1e-10)")


def test_criterion_12_determinism():
    docs = []
    for _ in range(2):
        reports = run_all(3, samples=3, seed=99)
        docs.append(json.dumps([r.to_json() for r in reports], sort_keys=True))
    assert docs[0] == docs[1]
    print("PASS  12. verify-all reports byte-identical for a fixed seed")
