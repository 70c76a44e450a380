"""Similarity measures between ground terms.

Six measures, each a pure total function of two terms returning a finite
non-negative score:

  mock          constant 1.0, turning weighted votes into plain head counts
  shared_path   total length of the distinct symbol paths shared by two trees
  forest_path   shared_path summed over the subtree forests below the roots
  termlet       sizes of bounded subterms of one term, weighted by how often
                they occur in the other
  jaccard_node  Jaccard index of the two symbol sets
  jaccard_edge  Jaccard index of the two edge sets

Argument order is irrelevant for path sharing: at every compound level all
argument pairs are explored, and mismatched symbols are skipped rather than
cutting the path short.
"""

from __future__ import annotations

from collections import Counter
from typing import TYPE_CHECKING, Optional

from .terms import (
    Atom,
    Compound,
    GroundTerm,
    Int,
    edge_set,
    node_count,
    subterm_occurrences,
    symbol_of,
    symbol_set,
)

if TYPE_CHECKING:
    from .inference import Params

MEASURES = ("mock", "termlet", "shared_path", "forest_path", "jaccard_node", "jaccard_edge")

DEFAULT_MAX_TERMLET_SIZE = 7
DEFAULT_FOREST_SPLIT_DEPTH = 1

Pathlet = tuple[str, ...]

_EMPTY_ONLY: frozenset[Pathlet] = frozenset({()})


def mock_similarity(a: GroundTerm, b: GroundTerm) -> float:
    """Every term is similar to every other term."""
    return 1.0


def _leaves_match(a: GroundTerm, b: GroundTerm) -> bool:
    # Atoms and integers never match each other, mirroring term equality.
    if isinstance(a, Atom):
        return isinstance(b, Atom) and a.name == b.name
    return isinstance(b, Int) and a.value == b.value  # type: ignore[union-attr]


def _pathlet_sets(a: GroundTerm, b: GroundTerm, memo: dict) -> frozenset[Pathlet]:
    """All paths (possibly the empty one) derivable from the pair (a, b).

    Grammar: two leaves emit their shared symbol or nothing; a leaf against a
    compound emits the leaf symbol when it names the functor, then stops; two
    compounds emit the shared functor when equal and continue into every pair
    of arguments.
    """
    key = (a, b)
    cached = memo.get(key)
    if cached is not None:
        return cached
    a_comp = isinstance(a, Compound)
    b_comp = isinstance(b, Compound)
    if not a_comp and not b_comp:
        res = frozenset({(symbol_of(a),)}) if _leaves_match(a, b) else _EMPTY_ONLY
    elif a_comp != b_comp:
        leaf, comp = (b, a) if a_comp else (a, b)
        if isinstance(leaf, Atom) and leaf.name == comp.functor:  # type: ignore[union-attr]
            res = frozenset({(leaf.name,)})
        else:
            res = _EMPTY_ONLY
    else:
        head = (a.functor,) if a.functor == b.functor else ()  # type: ignore[union-attr]
        tails: set[Pathlet] = set()
        for x in a.args:  # type: ignore[union-attr]
            for y in b.args:  # type: ignore[union-attr]
                tails.update(_pathlet_sets(x, y, memo))
        res = frozenset(head + tail for tail in tails)
    memo[key] = res
    return res


def shared_pathlets(a: GroundTerm, b: GroundTerm) -> frozenset[Pathlet]:
    """The distinct non-empty symbol paths shared by two terms."""
    return frozenset(p for p in _pathlet_sets(a, b, {}) if p)


def shared_path_similarity(a: GroundTerm, b: GroundTerm) -> float:
    """Sum of the lengths of all distinct shared pathlets."""
    return float(sum(len(p) for p in _pathlet_sets(a, b, {})))


def _forest(t: GroundTerm, depth: int) -> list[GroundTerm]:
    """Subtrees found below the top `depth` levels; leaves above that vanish."""
    level = [t]
    for _ in range(depth):
        level = [arg for x in level if isinstance(x, Compound) for arg in x.args]
    return level


def forest_path_similarity(
    a: GroundTerm, b: GroundTerm, forest_split_depth: int = DEFAULT_FOREST_SPLIT_DEPTH
) -> float:
    """shared_path_similarity summed over all forest subtree pairs.

    Splitting off the top levels avoids rewarding boilerplate shared near
    the root.
    """
    fa = _forest(a, forest_split_depth)
    fb = _forest(b, forest_split_depth)
    memo: dict = {}
    total = 0
    for x in fa:
        for y in fb:
            total += sum(len(p) for p in _pathlet_sets(x, y, memo))
    return float(total)


def termlet_similarity(
    a: GroundTerm, b: GroundTerm, max_termlet_size: int = DEFAULT_MAX_TERMLET_SIZE
) -> float:
    """Sizes of a's subterm occurrences shared with b, weighted by b's counts.

    Every subterm position of `a` no larger than the cap contributes its node
    count once per structurally equal position in `b`.
    """
    if max_termlet_size < 1:
        raise ValueError("max_termlet_size must be at least 1")
    b_counts = Counter(subterm_occurrences(b))
    total = 0
    for t in subterm_occurrences(a):
        size = node_count(t)
        if size <= max_termlet_size:
            count = b_counts.get(t)
            if count:
                total += size * count
    return float(total)


def jaccard_node_similarity(a: GroundTerm, b: GroundTerm) -> float:
    """Jaccard index of the symbol sets; always well defined."""
    sa = symbol_set(a)
    sb = symbol_set(b)
    return len(sa & sb) / len(sa | sb)


def jaccard_edge_similarity(a: GroundTerm, b: GroundTerm) -> float:
    """Jaccard index of the edge sets; two edgeless terms score 0.0."""
    ea = edge_set(a)
    eb = edge_set(b)
    union = len(ea | eb)
    if union == 0:
        return 0.0
    return len(ea & eb) / union


def check_measure(name: str) -> str:
    if name not in MEASURES:
        raise ValueError(f"unknown similarity measure {name!r}; choose from {', '.join(MEASURES)}")
    return name


def score(measure: str, a: GroundTerm, b: GroundTerm, params: Optional["Params"] = None) -> float:
    """Score a pair with the named measure, forwarding sizing knobs."""
    if measure == "mock":
        return mock_similarity(a, b)
    if measure == "shared_path":
        return shared_path_similarity(a, b)
    if measure == "forest_path":
        depth = params.forest_split_depth if params is not None else DEFAULT_FOREST_SPLIT_DEPTH
        return forest_path_similarity(a, b, depth)
    if measure == "termlet":
        cap = params.max_termlet_size if params is not None else DEFAULT_MAX_TERMLET_SIZE
        return termlet_similarity(a, b, cap)
    if measure == "jaccard_node":
        return jaccard_node_similarity(a, b)
    if measure == "jaccard_edge":
        return jaccard_edge_similarity(a, b)
    raise ValueError(f"unknown similarity measure {measure!r}; choose from {', '.join(MEASURES)}")
