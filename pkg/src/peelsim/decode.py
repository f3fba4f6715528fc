"""Round-limited peeling decoder for bipartite erasure patterns.

Each round works on one side of the graph.  A row (left vertex) can be
corrected when it holds at most t erased symbols, i.e. current degree <= t;
correcting it removes all its incident edges.  Rounds alternate sides and
are scheduled backward from the last round, which always decodes rows:
with r rounds total, round i decodes rows when (r - i) is even and columns
otherwise.  Within a round every qualifying vertex is cleared against the
degrees observed at the start of the round (snapshot semantics).

Decoding succeeds when no edges remain after the final round.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import BipartiteGraph

__all__ = [
    "DecodeOutcome",
    "DecodeParams",
    "RoundRecord",
    "decode",
    "decode_fixpoint",
    "side_schedule",
]

ROWS = "rows"
COLS = "cols"

# Above this many edges the vectorized engine wins; below it, plain dicts do.
_PYTHON_ENGINE_LIMIT = 4096


@dataclass(frozen=True)
class DecodeParams:
    """rounds: total peeling rounds (r >= 0); t: per-vertex correction capability."""

    rounds: int
    t: int

    def __post_init__(self):
        if not isinstance(self.rounds, int) or self.rounds < 0:
            raise ValueError(f"rounds must be a non-negative integer, got {self.rounds!r}")
        if not isinstance(self.t, int) or self.t < 0:
            raise ValueError(f"t must be a non-negative integer, got {self.t!r}")


@dataclass(frozen=True)
class RoundRecord:
    """One executed round: which side ran, which vertices with at least one
    edge were cleared (ascending), and how many edges that removed."""

    side: str
    cleared: tuple[int, ...]
    edges_removed: int


@dataclass(frozen=True)
class DecodeOutcome:
    success: bool
    residual: BipartiteGraph
    trace: tuple[RoundRecord, ...]
    rounds_executed: int


def side_schedule(rounds: int) -> tuple[str, ...]:
    """Sides for rounds 1..rounds; the final round always decodes rows."""
    if rounds < 0:
        raise ValueError("rounds must be non-negative")
    return tuple(ROWS if (rounds - i) % 2 == 0 else COLS for i in range(1, rounds + 1))


def decode(g: BipartiteGraph, params: DecodeParams, engine: str = "auto") -> DecodeOutcome:
    """Run exactly params.rounds peeling rounds on g.

    Returns the outcome with a per-round trace; rounds_executed equals
    params.rounds.  engine selects the internal implementation ("python",
    "vector", or "auto" by edge count); all engines compute the identical
    outcome.
    """
    sides = side_schedule(params.rounds)
    residual, trace = _run_rounds(g, sides, params.t, engine)
    return DecodeOutcome(
        success=residual.edge_count == 0,
        residual=residual,
        trace=trace,
        rounds_executed=params.rounds,
    )


def decode_fixpoint(g: BipartiteGraph, t: int, engine: str = "auto") -> DecodeOutcome:
    """Peel with unlimited rounds, starting with rows, until the graph is
    empty or a full row+column double-round removes nothing.

    rounds_executed counts effective rounds: the position of the last round
    that removed an edge (0 when nothing was ever removed).  The trace keeps
    every executed round, including the final no-op ones.
    """
    if not isinstance(t, int) or t < 0:
        raise ValueError(f"t must be a non-negative integer, got {t!r}")
    if g.edge_count == 0:
        return DecodeOutcome(True, g, (), 0)
    run = _PythonEngine(g, t) if _pick_engine(g, engine) == "python" else _VectorEngine(g, t)
    trace: list[RoundRecord] = []
    while True:
        removed_pair = 0
        for side in (ROWS, COLS):
            rec = run.round(side)
            trace.append(rec)
            removed_pair += rec.edges_removed
            if run.edge_count() == 0:
                break
        if run.edge_count() == 0 or removed_pair == 0:
            break
    executed = 0
    for k, rec in enumerate(trace, start=1):
        if rec.edges_removed > 0:
            executed = k
    residual = run.residual()
    return DecodeOutcome(residual.edge_count == 0, residual, tuple(trace), executed)


def _pick_engine(g: BipartiteGraph, engine: str) -> str:
    if engine == "auto":
        return "python" if g.edge_count <= _PYTHON_ENGINE_LIMIT else "vector"
    if engine in ("python", "vector"):
        return engine
    raise ValueError(f"unknown engine {engine!r}")


def _run_rounds(g, sides, t, engine):
    run = _PythonEngine(g, t) if _pick_engine(g, engine) == "python" else _VectorEngine(g, t)
    trace = tuple(run.round(side) for side in sides)
    return run.residual(), trace


class _PythonEngine:
    """Dict-of-sets peeling; only vertices that still hold edges are tracked."""

    def __init__(self, g: BipartiteGraph, t: int):
        self.g = g
        self.t = t
        self.adj_l, self.adj_r = g.adjacency_sets()
        self._edges = g.edge_count

    def edge_count(self):
        return self._edges

    def round(self, side: str) -> RoundRecord:
        mine, other = (self.adj_l, self.adj_r) if side == ROWS else (self.adj_r, self.adj_l)
        cleared = sorted(x for x, nbrs in mine.items() if len(nbrs) <= self.t)
        removed = 0
        for x in cleared:
            nbrs = mine.pop(x)
            removed += len(nbrs)
            for y in nbrs:
                rest = other[y]
                rest.remove(x)
                if not rest:
                    del other[y]
        self._edges -= removed
        return RoundRecord(side, tuple(cleared), removed)

    def residual(self) -> BipartiteGraph:
        if self._edges == self.g.edge_count:
            return self.g
        pairs = [(i, j) for i in sorted(self.adj_l) for j in sorted(self.adj_l[i])]
        arr = np.array(pairs, dtype=np.int64).reshape(len(pairs), 2)
        return BipartiteGraph._from_sorted(self.g.n_left, self.g.n_right, arr[:, 0], arr[:, 1])


class _VectorEngine:
    """Mask-based peeling over the parallel edge arrays."""

    def __init__(self, g: BipartiteGraph, t: int):
        self.g = g
        self.t = t
        self.alive = np.ones(g.edge_count, dtype=bool)

    def edge_count(self):
        return int(self.alive.sum())

    def round(self, side: str) -> RoundRecord:
        g = self.g
        ends, n = (g.u, g.n_left) if side == ROWS else (g.v, g.n_right)
        deg = np.bincount(ends[self.alive], minlength=n)
        qualifies = (deg > 0) & (deg <= self.t)
        if not qualifies.any():
            return RoundRecord(side, (), 0)
        kill = self.alive & qualifies[ends]
        self.alive &= ~kill
        cleared = tuple(np.nonzero(qualifies)[0].tolist())
        return RoundRecord(side, cleared, int(kill.sum()))

    def residual(self) -> BipartiteGraph:
        if self.alive.all():
            return self.g
        return self.g._masked(self.alive)
