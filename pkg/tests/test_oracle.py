import random

import pytest

from defsets.cnf import CnfFormula, PartialAssignment
from defsets.colordefs import DefsetColorInstance, min_defining_coloring_set
from defsets.graphs import Coloring, Graph, enumerate_colorings
from defsets.oracle import (OracleCapExceeded, enumerate_small_formulas,
                            first_proper_partial, oracle_min_defset_coloring,
                            oracle_min_defset_sat, random_3cnf,
                            random_chi3_graph, small_clause_universe,
                            verify_reduction)
from defsets.satdefs import DefsetSatInstance, min_defining_set

PA = PartialAssignment.of


def test_oracle_sat_examples():
    unique = DefsetSatInstance(CnfFormula.of(2, [(1,), (-1, 2)]),
                               PA({1: True, 2: True}))
    assert oracle_min_defset_sat(unique) == 0
    xor = DefsetSatInstance(CnfFormula.of(2, [(1, 2), (-1, -2)]),
                            PA({1: True, 2: False}))
    assert oracle_min_defset_sat(xor) == 1


def test_oracle_sat_cap():
    f = CnfFormula.of(20, [(v,) for v in range(1, 21)])
    inst = DefsetSatInstance(f, PA({v: True for v in f.variables}))
    with pytest.raises(OracleCapExceeded):
        oracle_min_defset_sat(inst)


def test_oracle_coloring_examples():
    tri = Graph.of(3, [(0, 1), (1, 2), (0, 2)])
    assert oracle_min_defset_coloring(
        DefsetColorInstance(tri, Coloring((0, 1, 2)))) == 2
    star = Graph.of(4, [(0, 1), (0, 2), (0, 3)])
    assert oracle_min_defset_coloring(
        DefsetColorInstance(star, Coloring((0, 1, 1, 1)))) == 1


def test_oracle_coloring_cap():
    g = Graph.of(15, [])
    with pytest.raises(OracleCapExceeded):
        oracle_min_defset_coloring(DefsetColorInstance(g, Coloring((0,) * 15)))


def test_solver_agrees_with_oracle_sat_seeded():
    rng = random.Random(11)
    checked = 0
    while checked < 60:
        f = random_3cnf(rng, rng.randint(2, 5), rng.randint(1, 6))
        anchor = first_proper_partial(f, tuple(f.variables))
        if anchor is None:
            continue
        inst = DefsetSatInstance(f, anchor)
        assert min_defining_set(inst)[0] == oracle_min_defset_sat(inst)
        checked += 1


def test_solver_agrees_with_oracle_coloring_seeded():
    rng = random.Random(12)
    for _ in range(20):
        g, c = random_chi3_graph(rng, max_vertices=6)
        inst = DefsetColorInstance(g, c)
        assert min_defining_coloring_set(inst)[0] == \
            oracle_min_defset_coloring(inst)


def test_small_clause_universe():
    u1 = small_clause_universe(1)
    # over one variable: (1,1,1) and (-1,-1,-1) are the only non-tautologies
    assert u1 == [(-1, -1, -1), (1, 1, 1)]
    assert all(not any(-l in c for l in c) for c in small_clause_universe(2))


def test_enumerate_small_formulas():
    formulas = list(enumerate_small_formulas(1, 1))
    assert CnfFormula.of(1, []) in formulas
    assert len(formulas) == 3  # empty, each unit-ish clause
    distinct = list(enumerate_small_formulas(2, 1, distinct_vars_only=True))
    assert all(len({abs(l) for l in c}) == len(c)
               for f in distinct for c in f.clauses)


def test_first_proper_partial():
    f = CnfFormula.of(2, [(-1, 2, 2)])
    t = first_proper_partial(f, (1, 2))
    assert t == PA({1: False, 2: False})
    unsat = CnfFormula.of(1, [(1, 1, 1), (-1, -1, -1)])
    assert first_proper_partial(unsat, (1,)) is None


def test_random_chi3_graph_contract():
    from defsets.graphs import chromatic_number, is_proper
    rng = random.Random(3)
    for _ in range(10):
        g, c = random_chi3_graph(rng, max_vertices=6)
        assert chromatic_number(g) == 3
        assert is_proper(g, c.as_dict())


def test_verify_reduction_dispatch_and_determinism():
    r1 = verify_reduction("q2", count=30, seed=5)
    r2 = verify_reduction("q2", count=30, seed=5)
    assert r1.ok and r2.ok
    assert r1.instances == 30
    assert r1.text() == r2.text()  # timing excluded from the body
    assert "mismatches=0" in r1.summary_line()


def test_verify_reduction_unknown_name():
    with pytest.raises(ValueError, match="unknown reduction"):
        verify_reduction("nope")


def test_verify_cprime_tally():
    report = verify_reduction("cprime")
    assert report.ok
    assert any("unique=15" in n and "none=1" in n for n in report.notes)


def test_verify_mu_exhaustive():
    report = verify_reduction("mu")
    assert report.ok and report.instances > 100
