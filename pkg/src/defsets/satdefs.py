"""Defining-set decision procedures and minimizers over satisfying assignments.

The three questions, for the family of all satisfying (total) assignments of a
CNF and a distinguished member S:

  Q1  is a given restriction D of S a defining set (S the unique extension)?
  Q2  what is the smallest defining set of (family, S)?
  Q3  what is the smallest defining set over all choices of S?

All search is exhaustive with a configurable variable cap; this is desk-scale
machinery, not a SAT solver.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from .cnf import (CnfFormula, ContractViolation, Eval, PartialAssignment,
                  count_extensions, enumerate_proper, evaluate,
                  is_proper_partial)

DEFAULT_VAR_CAP = 24


class CapExceeded(Exception):
    """Instance is above the configured desk-scale cap."""


@dataclass(frozen=True)
class DefsetSatInstance:
    """A formula with a total satisfying anchor assignment and optional budget."""

    formula: CnfFormula
    anchor: PartialAssignment
    budget: Optional[int] = None

    def __post_init__(self):
        if set(self.anchor.support) != set(self.formula.variables):
            raise ContractViolation("anchor is not a total assignment")
        if evaluate(self.formula, self.anchor) is not Eval.SATISFIED:
            raise ContractViolation("anchor does not satisfy the formula")
        if self.budget is not None and self.budget < 0:
            raise ContractViolation("budget must be nonnegative")


@dataclass(frozen=True)
class QuantifiedSplit:
    """A formula with its variables split into an outer x-block and inner
    y-block, optionally carrying a proper partial anchor over the y-block."""

    formula: CnfFormula
    x_vars: Tuple[int, ...]
    y_vars: Tuple[int, ...]
    anchor_t: Optional[PartialAssignment] = None

    def __post_init__(self):
        allvars = set(self.formula.variables)
        if set(self.x_vars) | set(self.y_vars) != allvars or \
                set(self.x_vars) & set(self.y_vars):
            raise ContractViolation("x/y blocks must partition the variables")
        if self.anchor_t is not None:
            if set(self.anchor_t.support) != set(self.y_vars):
                raise ContractViolation("anchor support must equal the y-block")
            if not is_proper_partial(self.formula, self.anchor_t):
                raise ContractViolation("anchor is not a proper partial assignment")


def _check_cap(num_vars: int, cap: int) -> None:
    if num_vars > cap:
        raise CapExceeded(
            f"instance has {num_vars} variables, above the cap of {cap}; "
            f"raise the cap explicitly if you really want this")


def is_defining_set(instance: DefsetSatInstance, candidate: PartialAssignment,
                    cap: int = DEFAULT_VAR_CAP) -> bool:
    """True iff the anchor is the unique satisfying extension of candidate."""
    _check_cap(instance.formula.num_vars, cap)
    if not instance.anchor.extends(candidate):
        raise ContractViolation("candidate is not a restriction of the anchor")
    models = enumerate_proper(instance.formula, candidate, limit=2)
    return len(models) == 1


def _subsets_of_size(variables: Sequence[int], size: int):
    # itertools.combinations over a sorted sequence is already lexicographic
    return itertools.combinations(sorted(variables), size)


def _min_witness_of_size(instance: DefsetSatInstance, size: int,
                         jobs: int) -> Optional[PartialAssignment]:
    """Lexicographically smallest defining subset of the anchor with the given
    cardinality, or None.  Parallel workers only propose candidates; the
    reducer picks the canonical one."""
    anchor = instance.anchor.as_dict()
    combos = list(_subsets_of_size(list(anchor), size))

    def check(combo: Tuple[int, ...]) -> Optional[Tuple[int, ...]]:
        cand = PartialAssignment.of({v: anchor[v] for v in combo})
        if count_extensions(instance.formula, cand, limit=2) == 1:
            return combo
        return None

    if jobs <= 1:
        for combo in combos:
            if check(combo) is not None:
                return PartialAssignment.of({v: anchor[v] for v in combo})
        return None
    hits: List[Tuple[int, ...]] = []
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        for result in pool.map(check, combos, chunksize=64):
            if result is not None:
                hits.append(result)
    if not hits:
        return None
    best = min(hits)
    return PartialAssignment.of({v: anchor[v] for v in best})


def min_defining_set(instance: DefsetSatInstance, cap: int = DEFAULT_VAR_CAP,
                     jobs: int = 1) -> Tuple[int, PartialAssignment]:
    """Smallest defining set of (family, anchor): size and the canonical
    (lexicographically smallest by sorted index vector) witness.

    Increasing-cardinality subset sweep with an inner uniqueness check that
    stops at the second model."""
    _check_cap(instance.formula.num_vars, cap)
    for size in range(instance.formula.num_vars + 1):
        witness = _min_witness_of_size(instance, size, jobs)
        if witness is not None:
            return size, witness
    raise AssertionError("anchor itself must be a defining set")  # unreachable


def min_defining_set_family(formula: CnfFormula, cap: int = DEFAULT_VAR_CAP,
                            jobs: int = 1
                            ) -> Tuple[int, PartialAssignment, PartialAssignment]:
    """Minimum of min_defining_set over all satisfying anchors.
    Ties broken lexicographically on (witness index vector, anchor vector)."""
    _check_cap(formula.num_vars, cap)
    anchors = enumerate_proper(formula)
    if not anchors:
        raise ContractViolation("formula is unsatisfiable: no anchor exists")
    best: Optional[Tuple[int, Tuple, Tuple, PartialAssignment, PartialAssignment]] = None
    for anchor in anchors:
        size, witness = min_defining_set(
            DefsetSatInstance(formula, anchor), cap=cap, jobs=jobs)
        key = (size, witness.bindings, anchor.bindings)
        if best is None or key < best[:3]:
            best = (size, witness.bindings, anchor.bindings, witness, anchor)
        if best[0] == 0:
            break
    size, _, _, witness, anchor = best
    return size, anchor, witness


def has_defining_set_within(instance: DefsetSatInstance, k: int,
                            cap: int = DEFAULT_VAR_CAP, jobs: int = 1) -> bool:
    """Decision form of Q2: does a defining set of size at most k exist?"""
    _check_cap(instance.formula.num_vars, cap)
    for size in range(min(k, instance.formula.num_vars) + 1):
        if _min_witness_of_size(instance, size, jobs) is not None:
            return True
    return False


def family_has_defining_set_within(formula: CnfFormula, k: int,
                                   cap: int = DEFAULT_VAR_CAP) -> bool:
    """Decision form of Q3: does any member of the family have a defining set
    of size at most k?  Sweeps partial assignments directly: a subset with
    exactly one satisfying total extension is a defining set of that
    extension."""
    _check_cap(formula.num_vars, cap)
    for size in range(min(k, formula.num_vars) + 1):
        for combo in _subsets_of_size(list(formula.variables), size):
            for bits in itertools.product([False, True], repeat=size):
                cand = PartialAssignment.of(dict(zip(combo, bits)))
                if count_extensions(formula, cand, limit=2) == 1:
                    return True
    return False


def exists_forall_check(split: QuantifiedSplit, cap: int = DEFAULT_VAR_CAP) -> bool:
    """Does some x-assignment admit no satisfying completion on the y-block?
    Brute force over both blocks."""
    if split.anchor_t is not None:
        raise ContractViolation("exists_forall_check takes a split without anchor")
    _check_cap(split.formula.num_vars, cap)
    for xbits in itertools.product([False, True], repeat=len(split.x_vars)):
        fixed = PartialAssignment.of(dict(zip(split.x_vars, xbits)))
        if count_extensions(split.formula, fixed, limit=1) == 0:
            return True
    return False


def exists_uniqueexists_check(split: QuantifiedSplit,
                              cap: int = DEFAULT_VAR_CAP) -> bool:
    """Does some x-assignment make (anchor on y) the unique satisfying
    assignment agreeing with it on the x-block?"""
    if split.anchor_t is None:
        raise ContractViolation("exists_uniqueexists_check needs the y-anchor")
    _check_cap(split.formula.num_vars, cap)
    for xbits in itertools.product([False, True], repeat=len(split.x_vars)):
        fixed = PartialAssignment.of(dict(zip(split.x_vars, xbits)))
        models = enumerate_proper(split.formula, fixed, limit=2)
        if len(models) == 1 and models[0].extends(split.anchor_t):
            return True
    return False
