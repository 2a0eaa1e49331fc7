import itertools

import pytest

from defsets.cnf import ContractViolation
from defsets.colordefs import (CapExceeded, DefsetColorInstance,
                               family_has_defining_coloring_within,
                               forced_defining_vertices,
                               has_defining_coloring_within,
                               is_defining_coloring_set,
                               min_defining_coloring_family,
                               min_defining_coloring_set,
                               min_defining_coloring_set_forced)
from defsets.graphs import Coloring, Graph, enumerate_colorings

TRIANGLE = Graph.of(3, [(0, 1), (1, 2), (0, 2)])
STAR = Graph.of(4, [(0, 1), (0, 2), (0, 3)])


def test_instance_validation():
    with pytest.raises(ContractViolation, match="proper"):
        DefsetColorInstance(TRIANGLE, Coloring((0, 0, 1)))
    with pytest.raises(ContractViolation, match="cover"):
        DefsetColorInstance(TRIANGLE, Coloring((0, 1)))
    with pytest.raises(ContractViolation, match="palette"):
        DefsetColorInstance(Graph.of(2, [(0, 1)]), Coloring((0, 2)))


def test_is_defining_coloring_set_examples():
    inst = DefsetColorInstance(TRIANGLE, Coloring((0, 1, 2)))
    # any two vertices of a 3-clique pin the third
    assert is_defining_coloring_set(inst, {0: 0, 1: 1})
    assert not is_defining_coloring_set(inst, {0: 0})
    assert not is_defining_coloring_set(inst, {})
    with pytest.raises(ContractViolation, match="conflicts"):
        is_defining_coloring_set(inst, {0: 1})


def test_min_defining_set_triangle():
    inst = DefsetColorInstance(TRIANGLE, Coloring((0, 1, 2)))
    assert min_defining_coloring_set(inst) == (2, {0: 0, 1: 1})


def test_min_defining_set_star_center_suffices():
    # fixing the hub of a star forces every leaf to the other color
    inst = DefsetColorInstance(STAR, Coloring((0, 1, 1, 1)))
    assert min_defining_coloring_set(inst) == (1, {0: 0})


def test_min_defining_set_single_vertex():
    inst = DefsetColorInstance(Graph.of(1, []), Coloring((0,)))
    assert min_defining_coloring_set(inst) == (0, {})


def test_empty_set_never_defines_with_two_colors():
    # swapping the two palette colors yields a second optimal coloring
    for g in (Graph.of(2, [(0, 1)]), STAR, TRIANGLE):
        anchor = enumerate_colorings(g)[0]
        inst = DefsetColorInstance(g, anchor)
        assert not is_defining_coloring_set(inst, {})
        assert min_defining_coloring_set(inst)[0] >= 1


def test_monotone_supersets_still_define():
    inst = DefsetColorInstance(TRIANGLE, Coloring((0, 1, 2)))
    size, witness = min_defining_coloring_set(inst)
    bigger = dict(witness)
    bigger[2] = 2
    assert is_defining_coloring_set(inst, bigger)


def test_family_min_examples():
    assert min_defining_coloring_family(Graph.of(1, []))[0] == 0
    size, anchor, witness = min_defining_coloring_family(STAR)
    assert size == 1
    assert is_defining_coloring_set(DefsetColorInstance(STAR, anchor), witness)


def test_family_min_bounded_by_every_pair_min():
    g = Graph.of(4, [(0, 1), (1, 2), (2, 3), (0, 3)])  # C4
    fam = min_defining_coloring_family(g)[0]
    for anchor in enumerate_colorings(g):
        assert fam <= min_defining_coloring_set(
            DefsetColorInstance(g, anchor))[0]


def test_forced_vertices_sound():
    for g in (STAR, TRIANGLE, Graph.of(4, [(0, 1), (1, 2), (2, 3)])):
        for anchor in enumerate_colorings(g):
            inst = DefsetColorInstance(g, anchor)
            forced = forced_defining_vertices(inst)
            size, witness = min_defining_coloring_set(inst)
            # every forced vertex appears in every defining set, in particular
            # the canonical minimum-size witness
            for size2 in range(g.num_vertices + 1):
                for combo in itertools.combinations(range(g.num_vertices),
                                                    size2):
                    cand = {v: anchor.value(v) for v in combo}
                    if is_defining_coloring_set(inst, cand):
                        assert set(forced) <= set(combo)
            restricted = min_defining_coloring_set_forced(inst, forced)
            assert restricted[0] == size


def test_decision_forms_agree_with_minimum():
    inst = DefsetColorInstance(TRIANGLE, Coloring((0, 1, 2)))
    assert not has_defining_coloring_within(inst, 1)
    assert has_defining_coloring_within(inst, 2)
    assert not family_has_defining_coloring_within(TRIANGLE, 1)
    assert family_has_defining_coloring_within(TRIANGLE, 2)
    assert family_has_defining_coloring_within(Graph.of(1, []), 0)


def test_family_decision_with_required_vertices():
    # hub of the star lies in every defining set of every anchor
    assert family_has_defining_coloring_within(STAR, 1, required=(0,))
    assert not family_has_defining_coloring_within(STAR, 0, required=(0,))


def test_cap_enforced():
    g = Graph.of(30, [])
    inst = DefsetColorInstance(g, Coloring((0,) * 30))
    with pytest.raises(CapExceeded):
        min_defining_coloring_set(inst)
    assert min_defining_coloring_set(inst, cap=30) == (0, {})


def test_parallel_matches_sequential():
    g = Graph.of(5, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)])
    anchor = enumerate_colorings(g)[0]
    inst = DefsetColorInstance(g, anchor)
    assert min_defining_coloring_set(inst, jobs=1) == \
        min_defining_coloring_set(inst, jobs=4)


def test_oracle_agreement_small():
    from defsets.oracle import oracle_min_defset_coloring, random_chi3_graph
    import random
    rng = random.Random(7)
    for _ in range(15):
        g, _coloring = random_chi3_graph(rng, max_vertices=6)
        anchor = enumerate_colorings(g)[0]
        inst = DefsetColorInstance(g, anchor)
        assert min_defining_coloring_set(inst)[0] == \
            oracle_min_defset_coloring(inst)
