"""Closed-form predictions for peeling over random erasure patterns.

The central object is the exact (r, t)-tree: the minimal layered tree whose
presence in an erasure pattern defeats r rounds of capability-t peeling.
Its root has t+1 children, every internal vertex below the root has t
children, and leaves sit at depth r.  Everything here reduces to counting
that tree: its edge count fixes the decodability threshold, and its
automorphism count fixes the constant in the asymptotic success law.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

from .graph import BipartiteGraph

__all__ = [
    "AT_THRESHOLD",
    "ChernoffBounds",
    "DECODABLE_ONE_ROUND",
    "TreeStats",
    "UNDECODABLE_ALL_ROUNDS",
    "asymptotic_success",
    "build_exact_tree",
    "chernoff_upper",
    "expected_tree_count",
    "linear_regime_prediction",
    "threshold_p",
    "tree_stats",
]

DECODABLE_ONE_ROUND = "DECODABLE_ONE_ROUND"
UNDECODABLE_ALL_ROUNDS = "UNDECODABLE_ALL_ROUNDS"
AT_THRESHOLD = "AT_THRESHOLD"


@dataclass(frozen=True)
class TreeStats:
    """Exact counts for the exact (r, t)-tree.

    edges/vertices/left_vertices/right_vertices and automorphisms are exact
    integers (automorphisms grows very fast); log_automorphisms is the
    natural log computed in log space, safe far beyond float range.
    """

    r: int
    t: int
    edges: int
    vertices: int
    left_vertices: int
    right_vertices: int
    automorphisms: int
    log_automorphisms: float


def _check_rt(r: int, t: int):
    if not isinstance(r, int) or r < 1:
        raise ValueError(f"r must be an integer >= 1, got {r!r}")
    if not isinstance(t, int) or t < 1:
        raise ValueError(f"t must be an integer >= 1, got {t!r}")


def _level_sizes(r: int, t: int) -> list[int]:
    # Depth 0 holds the root; depth i holds (t+1) * t**(i-1) vertices.
    return [1] + [(t + 1) * t ** (i - 1) for i in range(1, r + 1)]


def tree_stats(r: int, t: int) -> TreeStats:
    """Exact size and symmetry counts for the exact (r, t)-tree."""
    _check_rt(r, t)
    sizes = _level_sizes(r, t)
    vertices = sum(sizes)
    edges = vertices - 1
    left = sum(sizes[i] for i in range(0, r + 1, 2))
    right = vertices - left
    if t == 1:
        autos = 2
        log_autos = math.log(2.0)
    else:
        # One (t+1)! for the root's subtrees, one t! per internal non-root vertex.
        internal_non_root = (t + 1) * (t ** (r - 1) - 1) // (t - 1)
        autos = math.factorial(t + 1) * math.factorial(t) ** internal_non_root
        log_autos = math.lgamma(t + 2) + internal_non_root * math.lgamma(t + 1)
    return TreeStats(r, t, edges, vertices, left, right, autos, log_autos)


def build_exact_tree(r: int, t: int) -> BipartiteGraph:
    """Build the exact (r, t)-tree explicitly.

    The root is left vertex 0; depth-i vertices occupy consecutive indices
    on their side (even depths left, odd depths right) in breadth-first
    order.  Used by brute-force oracles and demos; tree_stats uses closed
    forms and must agree with this construction.
    """
    _check_rt(r, t)
    sizes = _level_sizes(r, t)
    next_id = {"L": 0, "R": 0}
    level_ids = []
    for depth, size in enumerate(sizes):
        side = "L" if depth % 2 == 0 else "R"
        level_ids.append(list(range(next_id[side], next_id[side] + size)))
        next_id[side] += size
    edges = []
    for depth in range(r):
        parents = level_ids[depth]
        children = level_ids[depth + 1]
        per_parent = t + 1 if depth == 0 else t
        for k, child in enumerate(children):
            parent = parents[k // per_parent]
            if depth % 2 == 0:
                edges.append((parent, child))
            else:
                edges.append((child, parent))
    return BipartiteGraph(next_id["L"], next_id["R"], edges)


def threshold_p(n: int, r: int, t: int) -> float:
    """Decodability threshold for G(n, n, p): p* = n ** -(1 + 1/e) where e is
    the exact-tree edge count.  Below p* decoding almost always succeeds,
    above it almost always fails (as n grows)."""
    _check_rt(r, t)
    if not isinstance(n, int) or n < 2:
        raise ValueError(f"n must be an integer >= 2, got {n!r}")
    e = tree_stats(r, t).edges
    return math.exp(-(1.0 + 1.0 / e) * math.log(n))


def asymptotic_success(c: float, r: int, t: int) -> float:
    """Limit success probability at p = c * threshold_p(n, r, t): the count of
    exact trees is asymptotically Poisson with mean c**e / a, so success
    tends to exp(-c**e / a)."""
    _check_rt(r, t)
    if not c > 0.0:
        raise ValueError(f"c must be positive, got {c!r}")
    s = tree_stats(r, t)
    x = s.edges * math.log(c) - s.log_automorphisms
    if x > 700.0:
        return 0.0
    return math.exp(-math.exp(x))


def expected_tree_count(n: int, p: float, r: int, t: int) -> float:
    """Expected number of exact (r, t)-tree placements in G(n, n, p).

    Each of the falling(n, v_L) * falling(n, v_R) / a ordered placements is
    present with probability p**e; evaluated in log space."""
    _check_rt(r, t)
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"n must be an integer >= 1, got {n!r}")
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must lie in [0, 1], got {p}")
    s = tree_stats(r, t)
    if s.left_vertices > n or s.right_vertices > n:
        return 0.0
    if p == 0.0:
        return 0.0
    log_mean = (
        math.lgamma(n + 1)
        - math.lgamma(n - s.left_vertices + 1)
        + math.lgamma(n + 1)
        - math.lgamma(n - s.right_vertices + 1)
        - s.log_automorphisms
        + s.edges * math.log(p)
    )
    return math.exp(log_mean)


class ChernoffBounds(NamedTuple):
    upper_tail: float
    lower_tail: float


def chernoff_upper(n: int, delta: float, mu: float, eps: float) -> ChernoffBounds:
    """Tail bounds for a sum of n independent variables, each in [0, delta],
    whose mean is mu * n: the sum exceeds (1 + eps) * mu * n with probability
    below exp(-eps^2 * mu * n / (3 delta)), and falls below (1 - eps) * mu * n
    with probability below exp(-eps^2 * mu * n / (2 delta))."""
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"n must be an integer >= 1, got {n!r}")
    if not delta > 0.0:
        raise ValueError(f"delta must be positive, got {delta!r}")
    if not mu > 0.0:
        raise ValueError(f"mu must be positive, got {mu!r}")
    if not eps > 0.0:
        raise ValueError(f"eps must be positive, got {eps!r}")
    base = eps * eps * mu * n / delta
    return ChernoffBounds(math.exp(-base / 3.0), math.exp(-base / 2.0))


def linear_regime_prediction(p: float, alpha: float) -> str:
    """Verdict when capability scales linearly, t = floor(alpha * n).

    With p below alpha a single row round almost always finishes the whole
    pattern; with p above alpha no number of rounds helps.  Comparison is
    exact; p == alpha returns AT_THRESHOLD, where this model predicts
    nothing."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must lie in [0, 1], got {p}")
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must lie in (0, 1), got {alpha}")
    if p < alpha:
        return DECODABLE_ONE_ROUND
    if p > alpha:
        return UNDECODABLE_ALL_ROUNDS
    return AT_THRESHOLD
