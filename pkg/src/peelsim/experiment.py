"""Monte Carlo harness for peeling over sampled erasure patterns.

Reproducibility contract: every trial's seed is derived from
(master_seed, point_index, trial_index) by SplitMix64, so results are a
pure function of the experiment spec.  Points are processed in sorted
(n, c_or_p) order and trials aggregate by commutative sums, so the output
is byte-identical no matter how many workers run the sweep.
"""

from __future__ import annotations

import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from statistics import NormalDist

from .decode import DecodeParams, decode, decode_fixpoint
from .graph import sample_bipartite
from .theory import asymptotic_success, linear_regime_prediction, threshold_p

__all__ = [
    "CONSTANT_T_SWEEP",
    "CSV_COLUMNS",
    "LINEAR_REGIME_SWEEP",
    "SINGLE_POINT",
    "ExperimentSpec",
    "PointEstimate",
    "TrialRecord",
    "load_spec",
    "run_sweep",
    "run_trial",
    "trial_seed",
    "wilson_interval",
    "write_results",
]

CONSTANT_T_SWEEP = "CONSTANT_T_SWEEP"
LINEAR_REGIME_SWEEP = "LINEAR_REGIME_SWEEP"
SINGLE_POINT = "SINGLE_POINT"

_MODES = (CONSTANT_T_SWEEP, LINEAR_REGIME_SWEEP, SINGLE_POINT)

CSV_COLUMNS = (
    "mode,n,r,t_or_alpha,c_or_p,trials,successes,"
    "p_hat,ci_low,ci_high,theory,mean_residual_edges,mean_rounds"
)

_MASK64 = 2**64 - 1
_GOLDEN = 0x9E3779B97F4A7C15


def splitmix64(x: int) -> int:
    """SplitMix64 finalizer; a bijection on 64-bit words."""
    x &= _MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK64
    return x ^ (x >> 31)


def trial_seed(master_seed: int, point_index: int, trial_index: int, trials_per_point: int) -> int:
    """Derive the per-trial 64-bit seed.

    The trial's global counter k = point_index * trials_per_point +
    trial_index is pushed through the SplitMix64 stream seeded by
    master_seed: seed_k = mix(master_seed + (k + 1) * golden).  Both the
    golden-ratio step and the mix are bijections mod 2**64, so seeds are
    collision-free within any sweep of fewer than 2**64 trials.
    """
    k = point_index * trials_per_point + trial_index
    return splitmix64(master_seed + (k + 1) * _GOLDEN)


@dataclass(frozen=True)
class TrialRecord:
    """Outcome of one sampled pattern.

    one_round_success reports whether a single row round alone would finish
    the pattern (every row within capability); fixpoint_rounds is the
    effective round count of unlimited peeling on the same pattern.
    """

    success: bool
    residual_edges: int
    edges_drawn: int
    one_round_success: bool
    fixpoint_rounds: int


@dataclass(frozen=True)
class ExperimentSpec:
    """Declarative sweep description.

    CONSTANT_T_SWEEP: fixed (r, t); each point n in n_values, c in c_values
    runs at p = c * threshold_p(n, r, t) (clamped to 1).
    LINEAR_REGIME_SWEEP: capability scales as t = floor(alpha * n); each
    point runs the raw erasure probabilities in p_values with r rounds.
    SINGLE_POINT: one n and one raw p (or one c) with fixed (r, t).
    """

    mode: str
    n_values: tuple[int, ...]
    r: int
    trials_per_point: int
    master_seed: int
    t: int | None = None
    alpha: float | None = None
    c_values: tuple[float, ...] | None = None
    p_values: tuple[float, ...] | None = None
    confidence: float = 0.95

    def __post_init__(self):
        object.__setattr__(self, "n_values", tuple(int(n) for n in self.n_values))
        if self.c_values is not None:
            object.__setattr__(self, "c_values", tuple(float(c) for c in self.c_values))
        if self.p_values is not None:
            object.__setattr__(self, "p_values", tuple(float(p) for p in self.p_values))
        if self.mode not in _MODES:
            raise ValueError(f"mode must be one of {_MODES}, got {self.mode!r}")
        if not self.n_values:
            raise ValueError("n_values must be non-empty")
        if any(n < 2 for n in self.n_values):
            raise ValueError("every n must be >= 2")
        if self.r < 0:
            raise ValueError(f"r must be >= 0, got {self.r}")
        if self.trials_per_point < 1:
            raise ValueError(f"trials_per_point must be >= 1, got {self.trials_per_point}")
        if not 0 <= self.master_seed < 2**64:
            raise ValueError("master_seed must be a 64-bit unsigned integer")
        if not 0.0 < self.confidence < 1.0:
            raise ValueError(f"confidence must lie in (0, 1), got {self.confidence}")
        if self.mode == CONSTANT_T_SWEEP:
            self._need_t()
            if not self.c_values or self.p_values is not None:
                raise ValueError("CONSTANT_T_SWEEP takes c_values (and no p_values)")
            if any(c <= 0 for c in self.c_values):
                raise ValueError("every c must be positive")
        elif self.mode == LINEAR_REGIME_SWEEP:
            if self.alpha is None or not 0.0 < self.alpha < 1.0:
                raise ValueError(f"LINEAR_REGIME_SWEEP needs alpha in (0, 1), got {self.alpha!r}")
            if self.t is not None:
                raise ValueError("LINEAR_REGIME_SWEEP derives t from alpha; do not pass t")
            if not self.p_values or self.c_values is not None:
                raise ValueError("LINEAR_REGIME_SWEEP takes p_values (and no c_values)")
            if any(not 0.0 <= p <= 1.0 for p in self.p_values):
                raise ValueError("every p must lie in [0, 1]")
        else:  # SINGLE_POINT
            self._need_t()
            if len(self.n_values) != 1:
                raise ValueError("SINGLE_POINT takes exactly one n")
            have_c = self.c_values is not None
            have_p = self.p_values is not None
            if have_c == have_p:
                raise ValueError("SINGLE_POINT takes exactly one of c_values or p_values")
            values = self.c_values if have_c else self.p_values
            if len(values) != 1:
                raise ValueError("SINGLE_POINT takes exactly one c or p value")
            if have_p and not 0.0 <= self.p_values[0] <= 1.0:
                raise ValueError("p must lie in [0, 1]")
            if have_c and self.c_values[0] <= 0:
                raise ValueError("c must be positive")

    def _need_t(self):
        if self.t is None or self.t < 0:
            raise ValueError(f"mode {self.mode} needs t >= 0, got {self.t!r}")
        if self.alpha is not None:
            raise ValueError(f"mode {self.mode} does not take alpha")


@dataclass(frozen=True)
class PointEstimate:
    """Aggregated estimate for one sweep point.

    theory carries the asymptotic success probability (constant-capability
    modes) or the linear-regime verdict string.  one_round_fraction is the
    fraction of trials a single row round would already finish; it is a
    diagnostic and is not serialized.
    """

    mode: str
    n: int
    r: int
    t_or_alpha: int | float
    c_or_p: float
    trials: int
    successes: int
    p_hat: float
    ci_low: float
    ci_high: float
    theory: float | str
    mean_residual_edges: float
    mean_rounds_to_fixpoint: float
    one_round_fraction: float


def run_trial(n: int, p: float, params: DecodeParams, seed: int) -> TrialRecord:
    """Sample G(n, n, p) with the given seed and decode it both with the
    round-limited schedule and to fixpoint."""
    g = sample_bipartite(n, n, p, seed)
    outcome = decode(g, params)
    fix = decode_fixpoint(g, params.t)
    one_round = bool(g.edge_count == 0 or g.left_degrees().max() <= params.t)
    return TrialRecord(
        success=outcome.success,
        residual_edges=outcome.residual.edge_count,
        edges_drawn=g.edge_count,
        one_round_success=one_round,
        fixpoint_rounds=fix.rounds_executed,
    )


def _point_tasks(spec: ExperimentSpec) -> list[dict]:
    tasks = []
    if spec.mode == LINEAR_REGIME_SWEEP:
        for n in spec.n_values:
            for p in spec.p_values:
                tasks.append({
                    "n": n, "r": spec.r, "t": int(math.floor(spec.alpha * n)),
                    "t_or_alpha": spec.alpha, "c_or_p": p, "p": p,
                    "theory": linear_regime_prediction(p, spec.alpha),
                })
    else:
        if spec.c_values is not None:
            for n in spec.n_values:
                for c in spec.c_values:
                    p = min(1.0, c * threshold_p(n, spec.r, spec.t))
                    tasks.append({
                        "n": n, "r": spec.r, "t": spec.t,
                        "t_or_alpha": spec.t, "c_or_p": c, "p": p,
                        "theory": asymptotic_success(c, spec.r, spec.t),
                    })
        else:
            for n in spec.n_values:
                for p in spec.p_values:
                    thr = threshold_p(n, spec.r, spec.t)
                    theory = asymptotic_success(p / thr, spec.r, spec.t) if p > 0 else 1.0
                    tasks.append({
                        "n": n, "r": spec.r, "t": spec.t,
                        "t_or_alpha": spec.t, "c_or_p": p, "p": p,
                        "theory": theory,
                    })
    tasks.sort(key=lambda d: (d["n"], d["c_or_p"]))
    for index, task in enumerate(tasks):
        task["point_index"] = index
    return tasks


def _run_point(args) -> PointEstimate:
    spec, task = args
    params = DecodeParams(rounds=task["r"], t=task["t"])
    trials = spec.trials_per_point
    successes = 0
    one_round = 0
    residual_sum = 0
    fixpoint_sum = 0
    for trial_index in range(trials):
        seed = trial_seed(spec.master_seed, task["point_index"], trial_index, trials)
        rec = run_trial(task["n"], task["p"], params, seed)
        successes += rec.success
        one_round += rec.one_round_success
        residual_sum += rec.residual_edges
        fixpoint_sum += rec.fixpoint_rounds
    ci_low, ci_high = wilson_interval(successes, trials, spec.confidence)
    return PointEstimate(
        mode=spec.mode,
        n=task["n"],
        r=task["r"],
        t_or_alpha=task["t_or_alpha"],
        c_or_p=task["c_or_p"],
        trials=trials,
        successes=successes,
        p_hat=successes / trials,
        ci_low=ci_low,
        ci_high=ci_high,
        theory=task["theory"],
        mean_residual_edges=residual_sum / trials,
        mean_rounds_to_fixpoint=fixpoint_sum / trials,
        one_round_fraction=one_round / trials,
    )


def run_sweep(spec: ExperimentSpec, workers: int = 1) -> tuple[PointEstimate, ...]:
    """Run every point of the sweep; identical output for any worker count."""
    tasks = [(spec, task) for task in _point_tasks(spec)]
    if workers <= 1:
        return tuple(_run_point(a) for a in tasks)
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return tuple(pool.map(_run_point, tasks))


def wilson_interval(successes: int, trials: int, confidence: float = 0.95) -> tuple[float, float]:
    """Wilson score interval for a binomial proportion."""
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    if not 0 <= successes <= trials:
        raise ValueError(f"successes must lie in [0, {trials}], got {successes}")
    if not 0.0 < confidence < 1.0:
        raise ValueError(f"confidence must lie in (0, 1), got {confidence}")
    z = NormalDist().inv_cdf(0.5 + confidence / 2.0)
    phat = successes / trials
    z2 = z * z
    denom = 1.0 + z2 / trials
    center = (phat + z2 / (2.0 * trials)) / denom
    margin = (z / denom) * math.sqrt(phat * (1.0 - phat) / trials + z2 / (4.0 * trials * trials))
    return max(0.0, center - margin), min(1.0, center + margin)


def _fmt(x) -> str:
    if isinstance(x, str):
        return x
    if isinstance(x, int):
        return str(x)
    return format(x, ".6g")


def write_results(results, fmt: str = "csv") -> str:
    """Serialize point estimates; CSV floats carry 6 significant digits, the
    JSON mirror keeps full precision."""
    if fmt == "csv":
        lines = [CSV_COLUMNS]
        for r in results:
            lines.append(",".join([
                r.mode, str(r.n), str(r.r), _fmt(r.t_or_alpha), _fmt(float(r.c_or_p)),
                str(r.trials), str(r.successes), _fmt(r.p_hat), _fmt(r.ci_low),
                _fmt(r.ci_high), _fmt(r.theory), _fmt(r.mean_residual_edges),
                _fmt(r.mean_rounds_to_fixpoint),
            ]))
        return "\n".join(lines) + "\n"
    if fmt == "json":
        rows = [{
            "mode": r.mode, "n": r.n, "r": r.r, "t_or_alpha": r.t_or_alpha,
            "c_or_p": r.c_or_p, "trials": r.trials, "successes": r.successes,
            "p_hat": r.p_hat, "ci_low": r.ci_low, "ci_high": r.ci_high,
            "theory": r.theory, "mean_residual_edges": r.mean_residual_edges,
            "mean_rounds": r.mean_rounds_to_fixpoint,
        } for r in results]
        return json.dumps(rows, indent=2) + "\n"
    raise ValueError(f"unknown results format {fmt!r}")


_SPEC_FIELDS = {
    "mode": str,
    "n_values": int,
    "r": int,
    "t": int,
    "alpha": float,
    "c_values": float,
    "p_values": float,
    "trials_per_point": int,
    "master_seed": int,
    "confidence": float,
}
_LIST_FIELDS = ("n_values", "c_values", "p_values")


def load_spec(text: str, overrides: dict | None = None) -> ExperimentSpec:
    """Build an ExperimentSpec from JSON or key=value text.

    key=value files take one field per line ('#' starts a comment); list
    fields are comma-separated.  Entries in overrides (same key space)
    replace file values; None overrides are ignored.  master_seed defaults
    to 0 when nothing specifies it.
    """
    stripped = text.strip()
    raw: dict = {}
    if stripped.startswith(("{", "[")):
        parsed = json.loads(stripped)
        if not isinstance(parsed, dict):
            raise ValueError("spec JSON must be an object")
        raw.update(parsed)
    elif stripped:
        for lineno, line in enumerate(stripped.splitlines(), start=1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"spec line {lineno}: expected key=value, got {line!r}")
            key, value = (part.strip() for part in line.split("=", 1))
            raw[key] = value
    if overrides:
        raw.update({k: v for k, v in overrides.items() if v is not None})
    raw.setdefault("master_seed", 0)
    kwargs = {}
    for key, value in raw.items():
        if key not in _SPEC_FIELDS:
            raise ValueError(f"unknown spec field {key!r}")
        kwargs[key] = _coerce_field(key, value)
    try:
        return ExperimentSpec(**kwargs)
    except TypeError as exc:
        raise ValueError(f"incomplete spec: {exc}") from None


def _coerce_field(key, value):
    kind = _SPEC_FIELDS[key]
    if key in _LIST_FIELDS:
        if isinstance(value, str):
            parts = [p for p in value.split(",") if p.strip()]
            return tuple(kind(p.strip()) for p in parts)
        return tuple(kind(v) for v in value)
    if kind is str:
        return str(value)
    return kind(value)
