"""Defining-set checkers and exact minimizers over optimal graph colorings.

Mirrors the SAT-side solvers: the family is the set of all chi(G)-colorings
(labeled, so color permutations are distinct members), the anchor is one of
them, and candidates are restrictions of the anchor.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from .cnf import ContractViolation
from .graphs import (Coloring, Graph, chromatic_number, count_colorings,
                     enumerate_colorings, is_proper)

DEFAULT_VERTEX_CAP = 24


class CapExceeded(Exception):
    """Instance is above the configured desk-scale cap."""


@dataclass(frozen=True)
class DefsetColorInstance:
    graph: Graph
    anchor: Coloring
    budget: Optional[int] = None

    def __post_init__(self):
        if len(self.anchor.colors) != self.graph.num_vertices:
            raise ContractViolation("anchor does not cover the vertex set")
        if not is_proper(self.graph, self.anchor.as_dict()):
            raise ContractViolation("anchor coloring is not proper")
        chi = chromatic_number(self.graph)
        if self.anchor.colors and max(self.anchor.colors) >= chi:
            raise ContractViolation(
                f"anchor uses colors outside the optimal palette [0,{chi - 1}]")
        if min(self.anchor.colors, default=0) < 0:
            raise ContractViolation("negative color in anchor")

    @property
    def chi(self) -> int:
        return chromatic_number(self.graph)


def _check_cap(n: int, cap: int) -> None:
    if n > cap:
        raise CapExceeded(
            f"graph has {n} vertices, above the cap of {cap}; "
            f"raise the cap explicitly if you really want this")


def is_defining_coloring_set(instance: DefsetColorInstance,
                             candidate: Dict[int, int],
                             cap: int = DEFAULT_VERTEX_CAP) -> bool:
    """True iff the anchor is the unique optimal coloring extending candidate."""
    _check_cap(instance.graph.num_vertices, cap)
    if not instance.anchor.extends(candidate):
        raise ContractViolation("candidate conflicts with the anchor")
    hits = enumerate_colorings(instance.graph, candidate, limit=2,
                               chi=instance.chi)
    return len(hits) == 1


def _min_witness_of_size(instance: DefsetColorInstance, size: int, chi: int,
                         jobs: int) -> Optional[Dict[int, int]]:
    anchor = instance.anchor.as_dict()
    combos = list(itertools.combinations(range(instance.graph.num_vertices), size))

    def check(combo: Tuple[int, ...]) -> Optional[Tuple[int, ...]]:
        cand = {v: anchor[v] for v in combo}
        if count_colorings(instance.graph, cand, limit=2, chi=chi) == 1:
            return combo
        return None

    if jobs <= 1:
        for combo in combos:
            if check(combo) is not None:
                return {v: anchor[v] for v in combo}
        return None
    hits: List[Tuple[int, ...]] = []
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        for result in pool.map(check, combos, chunksize=64):
            if result is not None:
                hits.append(result)
    if not hits:
        return None
    return {v: anchor[v] for v in min(hits)}


def min_defining_coloring_set(instance: DefsetColorInstance,
                              cap: int = DEFAULT_VERTEX_CAP,
                              jobs: int = 1) -> Tuple[int, Dict[int, int]]:
    """Smallest defining set of (colorings, anchor): size plus the canonical
    witness (lexicographically smallest vertex subset of that size)."""
    _check_cap(instance.graph.num_vertices, cap)
    chi = instance.chi
    for size in range(instance.graph.num_vertices + 1):
        witness = _min_witness_of_size(instance, size, chi, jobs)
        if witness is not None:
            return size, witness
    raise AssertionError("the anchor itself is always defining")  # unreachable


def forced_defining_vertices(instance: DefsetColorInstance) -> Tuple[int, ...]:
    """Vertices provably in every defining set of (family, anchor): those for
    which a second optimal coloring agrees with the anchor everywhere else.
    Fixing all other vertices then still leaves two extensions."""
    chi = instance.chi
    anchor = instance.anchor.as_dict()
    forced = []
    for v in range(instance.graph.num_vertices):
        rest = {u: c for u, c in anchor.items() if u != v}
        if count_colorings(instance.graph, rest, limit=2, chi=chi) > 1:
            forced.append(v)
    return tuple(forced)


def min_defining_coloring_set_forced(instance: DefsetColorInstance,
                                     forced: Tuple[int, ...],
                                     cap: int = DEFAULT_VERTEX_CAP
                                     ) -> Tuple[int, Dict[int, int]]:
    """Exact minimum defining set restricted to supersets of `forced`.
    Equals the unrestricted minimum whenever every member of `forced` lies in
    every defining set (as established by forced_defining_vertices)."""
    _check_cap(instance.graph.num_vertices, cap)
    chi = instance.chi
    anchor = instance.anchor.as_dict()
    rest = [v for v in range(instance.graph.num_vertices) if v not in forced]
    for extra in range(len(rest) + 1):
        for combo in itertools.combinations(rest, extra):
            verts = tuple(sorted(forced + combo))
            cand = {v: anchor[v] for v in verts}
            if count_colorings(instance.graph, cand, limit=2, chi=chi) == 1:
                return len(verts), cand
    raise AssertionError("the anchor itself is always defining")  # unreachable


def has_defining_coloring_within(instance: DefsetColorInstance, k: int,
                                 cap: int = DEFAULT_VERTEX_CAP,
                                 jobs: int = 1) -> bool:
    """Decision form of Q2 for colorings."""
    _check_cap(instance.graph.num_vertices, cap)
    chi = instance.chi
    for size in range(min(k, instance.graph.num_vertices) + 1):
        if _min_witness_of_size(instance, size, chi, jobs) is not None:
            return True
    return False


def family_has_defining_coloring_within(g: Graph, k: int,
                                        cap: int = DEFAULT_VERTEX_CAP,
                                        required: Tuple[int, ...] = (),
                                        chi: Optional[int] = None) -> bool:
    """Decision form of Q3 for colorings: sweep partial colorings directly.
    A partial coloring with exactly one proper optimal extension is a
    defining set of that extension.

    `required` names vertices known to lie in every defining set (callers
    must have verified that, e.g. by exhibiting recolorings); only subsets
    containing them are swept, which keeps padded instances tractable."""
    _check_cap(g.num_vertices, cap)
    if chi is None:
        chi = chromatic_number(g)
    req = tuple(sorted(required))
    if len(req) > k:
        return False
    rest = [v for v in range(g.num_vertices) if v not in req]
    for extra in range(min(k - len(req), len(rest)) + 1):
        for combo in itertools.combinations(rest, extra):
            verts = req + combo
            for cols in itertools.product(range(chi), repeat=len(verts)):
                cand = dict(zip(verts, cols))
                if not is_proper(g, cand):
                    continue
                if count_colorings(g, cand, limit=2, chi=chi) == 1:
                    return True
    return False


def min_defining_coloring_family(g: Graph, cap: int = DEFAULT_VERTEX_CAP,
                                 jobs: int = 1
                                 ) -> Tuple[int, Coloring, Dict[int, int]]:
    """Minimum of min_defining_coloring_set over all optimal colorings.
    Ties broken lexicographically on (witness items, anchor vector)."""
    _check_cap(g.num_vertices, cap)
    chi = chromatic_number(g)
    anchors = enumerate_colorings(g, chi=chi)
    if not anchors:
        raise ContractViolation("graph admits no optimal coloring")  # unreachable
    best = None
    for anchor in anchors:
        size, witness = min_defining_coloring_set(
            DefsetColorInstance(g, anchor), cap=cap, jobs=jobs)
        key = (size, tuple(sorted(witness.items())), anchor.colors)
        if best is None or key < best[0]:
            best = (key, anchor, witness)
        if best[0][0] == 0:
            break
    _, anchor, witness = best
    return best[0][0], anchor, witness
