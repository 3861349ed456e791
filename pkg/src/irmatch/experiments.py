"""Monte Carlo harness comparing empirical gaps with the theoretical bounds.

Every trial is a pure function of ``(config, trial_index)``; trials are split
into contiguous chunks, optionally run in worker processes, and concatenated
in trial order, so a report does not depend on the worker count.

Aggregates are always derived from the per-trial rows by ``aggregate``, which
tests call directly to check that a report is self-consistent.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Optional, Sequence

import numpy as np

from .decomposition import exact_internal_expectation
from .generators import NamedInstance, layered_internal_opt, long_chain_layout
from .graph import Graph
from .mechanisms import corollary1_bound, theorem1_bound, veto_mechanism
from .ownership import (OwnershipAssignment, PlayerProfile, hypothesis_flags,
                        internal_subgraph, restrict_matching, sample_ownership)
from .solver import Matching, longest_chain_dag, max_cycle_cover, opt_size

DEFAULT_TRIALS = 10_000
DEFAULT_DELTA = 0.01
DEFAULT_ALPHA = 0.01

GAP_COLUMNS = ("trial", "player", "internal_opt", "share", "gap")
VETO_COLUMNS = GAP_COLUMNS + ("accepted", "final_allocation")
APPC_COLUMNS = ("trial", "player", "good_layers", "chain_prefix",
                "internal_opt", "share", "gap")
EXACT_COLUMNS = ("player", "p", "exact", "exact_float", "p_opt", "verdict")


@dataclass(frozen=True)
class ExperimentConfig:
    instance: NamedInstance
    profile: PlayerProfile
    cycle_cap: Optional[int] = None
    trials: int = DEFAULT_TRIALS
    seed: int = 0
    delta: float = DEFAULT_DELTA
    workers: int = 1
    exact: bool = False
    fixed_owner: Optional[tuple[int, ...]] = None
    alpha: float = DEFAULT_ALPHA

    def __post_init__(self) -> None:
        if self.trials < 1:
            raise ValueError("trials must be at least 1")
        if not 0 < self.delta < 1:
            raise ValueError("delta must lie in (0, 1)")
        if self.workers < 1:
            raise ValueError("workers must be at least 1")
        if self.fixed_owner is not None:
            if len(self.fixed_owner) != self.instance.graph.vertex_count:
                raise ValueError("fixed ownership must cover every vertex")
            if any(not 0 <= o < self.profile.k for o in self.fixed_owner):
                raise ValueError("fixed ownership names an unknown player")

    @property
    def cap(self) -> int:
        return self.cycle_cap if self.cycle_cap is not None else self.instance.cycle_cap


@dataclass
class ExperimentReport:
    kind: str
    columns: tuple[str, ...]
    rows: list[tuple]
    aggregates: dict[str, Any] = field(default_factory=dict)

    def column(self, name: str) -> np.ndarray:
        j = self.columns.index(name)
        return np.array([r[j] for r in self.rows])


def instance_from_graph(g: Graph, cap: int, name: str = "graph") -> NamedInstance:
    return NamedInstance(name, g, cap, max_cycle_cover(g, cap).size)


# ---------------------------------------------------------------- trials

@dataclass(frozen=True)
class _Payload:
    graph: Graph
    pinned: Matching
    profile: PlayerProfile
    cap: int
    seed: int
    fixed_owner: Optional[tuple[int, ...]]
    extra: Any = None


def _assignment(pl: _Payload, t: int) -> OwnershipAssignment:
    if pl.fixed_owner is not None:
        return OwnershipAssignment(np.asarray(pl.fixed_owner), pl.seed, t)
    return sample_ownership(pl.graph, pl.profile, pl.seed, t)


def _gap_chunk(pl: _Payload, trials: Sequence[int]) -> list[tuple]:
    rows = []
    for t in trials:
        a = _assignment(pl, t)
        for i in range(pl.profile.k):
            sub, _ = internal_subgraph(pl.graph, a, i)
            internal = opt_size(sub, pl.cap)
            share = restrict_matching(pl.pinned, a, i)
            rows.append((t, i, internal, share, internal - share))
    return rows


def _veto_chunk(pl: _Payload, trials: Sequence[int]) -> list[tuple]:
    rows = []
    for t in trials:
        a = _assignment(pl, t)
        out = veto_mechanism(pl.graph, a, pl.cap, pl.pinned, pl.profile.k)
        for p in out.per_player:
            rows.append((t, p.player, p.internal_opt, p.share,
                         p.internal_opt - p.share, out.accepted, p.final_allocation))
    return rows


def _appc_chunk(pl: _Payload, trials: Sequence[int]) -> list[tuple]:
    altruist, chain, layers = pl.extra
    rows = []
    for t in trials:
        a = _assignment(pl, t)
        h = int(a.owner[altruist])
        owned = a.owner == h
        good = int(owned[layers].any(axis=1).sum())
        on_chain = owned[chain]
        prefix = int(np.argmin(on_chain)) if not on_chain.all() else len(chain)
        share = int(on_chain.sum())
        internal = max(good, prefix)
        rows.append((t, h, good, prefix, internal, share, internal - share))
    return rows


def _run_trials(chunk_fn: Callable, pl: _Payload, trials: int, workers: int) -> list[tuple]:
    if workers == 1:
        return chunk_fn(pl, range(trials))
    n_chunks = min(trials, workers * 4)
    bounds = np.linspace(0, trials, n_chunks + 1).astype(int)
    chunks = [range(bounds[j], bounds[j + 1]) for j in range(n_chunks)]
    rows: list[tuple] = []
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for part in pool.map(chunk_fn, [pl] * n_chunks, chunks):
            rows.extend(part)
    return rows


def _payload(cfg: ExperimentConfig, pinned: Matching, extra: Any = None) -> _Payload:
    return _Payload(cfg.instance.graph, pinned, cfg.profile, cfg.cap, cfg.seed,
                    cfg.fixed_owner, extra)


# ------------------------------------------------------------ aggregation

def hoeffding_halfwidth(trials: int, alpha: float, value_range: float = 1.0) -> float:
    """Two-sided Hoeffding half-width for the mean of ``trials`` bounded draws."""
    return value_range * math.sqrt(math.log(2 / alpha) / (2 * trials))


def _common(cfg: ExperimentConfig, opt: int) -> dict[str, Any]:
    agg: dict[str, Any] = {
        "instance": cfg.instance.name,
        "trials": cfg.trials,
        "players": cfg.profile.k,
        "probabilities": ";".join(f"{p:.12g}" for p in cfg.profile.probabilities),
        "cycle_cap": cfg.cap,
        "seed": cfg.seed,
        "delta": cfg.delta,
        "alpha": cfg.alpha,
        "opt_size": opt,
    }
    for name, flag in hypothesis_flags(cfg.profile, cfg.cap).items():
        agg[f"hyp_{name}"] = flag
    return agg


def _per_player(rows: Sequence[tuple], columns: tuple[str, ...], name: str,
                k: int) -> list[np.ndarray]:
    j, pj = columns.index(name), columns.index("player")
    return [np.array([r[j] for r in rows if r[pj] == i], dtype=float) for i in range(k)]


def _max_gap_per_trial(rows: Sequence[tuple]) -> np.ndarray:
    best: dict[int, int] = {}
    for r in rows:
        best[r[0]] = max(best.get(r[0], r[4]), r[4])
    return np.array([best[t] for t in sorted(best)], dtype=float)


def _verdict(ok: bool) -> str:
    return "OK" if ok else "VIOLATES"


def aggregate(kind: str, rows: Sequence[tuple], cfg: ExperimentConfig,
              opt: int) -> dict[str, Any]:
    """Aggregate block of a report, computed from its rows and config only."""
    agg = _common(cfg, opt)
    k, L, T = cfg.profile.k, cfg.cap, cfg.trials
    hw_freq = hoeffding_halfwidth(T, cfg.alpha)
    hw_mean = hoeffding_halfwidth(T, cfg.alpha, opt)

    if kind == "lemma1":
        agg["ci_halfwidth"] = hw_mean
        for i, x in enumerate(_per_player(rows, GAP_COLUMNS, "internal_opt", k)):
            bound = cfg.profile.probabilities[i] * opt
            mean = float(x.mean())
            agg[f"mean_internal_opt_{i}"] = mean
            agg[f"p_opt_{i}"] = bound
            agg[f"verdict_raw_{i}"] = _verdict(mean <= bound)
            agg[f"verdict_ci_{i}"] = _verdict(mean - hw_mean <= bound)

    elif kind == "concentration":
        log_term = math.log(2 * k / cfg.delta)
        target = cfg.delta / (2 * k)
        agg["tail_target"] = target
        agg["ci_halfwidth"] = hw_mean
        eps_grid = [j * L * math.sqrt(max(opt, 1)) / 2 for j in range(5)]
        for i, x in enumerate(_per_player(rows, GAP_COLUMNS, "internal_opt", k)):
            mean = float(x.mean())
            up = 2 * L * math.sqrt(opt * log_term)
            low_raw = L * math.sqrt(2 * max(mean, 0.0) * log_term)
            low_ci = L * math.sqrt(2 * max(mean - hw_mean, 0.0) * log_term)
            f_up = float(np.mean(x >= mean + up))
            f_low = float(np.mean(x <= mean - low_raw))
            f_up_ci = float(np.mean(x >= mean + hw_mean + up))
            f_low_ci = float(np.mean(x <= mean - hw_mean - low_ci))
            agg[f"mean_internal_opt_{i}"] = mean
            agg[f"upper_deviation_{i}"] = up
            agg[f"lower_deviation_{i}"] = low_raw
            agg[f"freq_upper_{i}"] = f_up
            agg[f"freq_lower_{i}"] = f_low
            agg[f"verdict_upper_raw_{i}"] = _verdict(f_up <= target)
            agg[f"verdict_lower_raw_{i}"] = _verdict(f_low <= target)
            agg[f"verdict_upper_ci_{i}"] = _verdict(f_up_ci - hw_freq <= target)
            agg[f"verdict_lower_ci_{i}"] = _verdict(f_low_ci - hw_freq <= target)
            for j, eps in enumerate(eps_grid):
                agg[f"eps_{j}"] = eps
                agg[f"emp_upper_tail_{i}_{j}"] = float(np.mean(x >= mean + eps))
                agg[f"emp_lower_tail_{i}_{j}"] = float(np.mean(x <= mean - eps))
                agg[f"eq_upper_tail_{j}"] = upper_tail_bound(eps, L, opt)
                agg[f"eq_lower_tail_{i}_{j}"] = lower_tail_bound(eps, L, mean)

    elif kind in ("theorem1", "veto"):
        gaps = _per_player(rows, GAP_COLUMNS, "gap", k)
        for i, g in enumerate(gaps):
            agg[f"mean_gap_{i}"] = float(g.mean())
            agg[f"mean_positive_gap_{i}"] = float(np.maximum(g, 0).mean())
        max_gap = _max_gap_per_trial(rows)
        bound = theorem1_bound(opt, L, k, cfg.delta)
        freq = float(np.mean(max_gap >= bound))
        agg["max_gap"] = float(max_gap.max())
        agg["max_gap_quantile"] = float(np.quantile(max_gap, 1 - cfg.delta,
                                                    method="inverted_cdf"))
        agg["theorem1_bound"] = bound
        agg["freq_gap_exceeds_bound"] = freq
        agg["verdict_theorem1_raw"] = _verdict(freq <= cfg.delta)
        agg["verdict_theorem1_ci"] = _verdict(freq - hw_freq <= cfg.delta)

        if kind == "veto":
            acc_j = VETO_COLUMNS.index("accepted")
            alloc_j = VETO_COLUMNS.index("final_allocation")
            by_trial: dict[int, list[tuple]] = {}
            for r in rows:
                by_trial.setdefault(r[0], []).append(r)
            accepted = np.array([by_trial[t][0][acc_j] for t in sorted(by_trial)])
            final = np.array([opt if by_trial[t][0][acc_j]
                              else sum(r[2] for r in by_trial[t])
                              for t in sorted(by_trial)], dtype=float)
            loss = opt - final
            ir = all(r[alloc_j] >= r[2] for r in rows)
            cbound = corollary1_bound(opt, L, k, cfg.delta)
            lfreq = float(np.mean(loss > cbound))
            agg["veto_frequency"] = float(np.mean(~accepted))
            agg["mean_final_size"] = float(final.mean())
            agg["mean_loss"] = float(loss.mean())
            agg["max_loss"] = float(loss.max())
            agg["corollary1_bound"] = cbound
            agg["freq_loss_exceeds_bound"] = lfreq
            agg["verdict_corollary1_raw"] = _verdict(lfreq <= cfg.delta)
            agg["verdict_corollary1_ci"] = _verdict(lfreq - hw_freq <= cfg.delta)
            agg["ir_all_trials"] = ir

    elif kind == "appc":
        n = cfg.instance.params["n"]
        cols = APPC_COLUMNS
        good = np.array([r[cols.index("good_layers")] for r in rows], dtype=float)
        share = np.array([r[cols.index("share")] for r in rows], dtype=float)
        gap = np.array([r[cols.index("gap")] for r in rows], dtype=float)
        agg["mean_good_layers"] = float(good.mean())
        agg["expected_good_layers"] = 7 / 8 * 2 * n / 9
        agg["mean_share"] = float(share.mean())
        agg["expected_share"] = 3 * n / 18
        agg["mean_gap"] = float(gap.mean())
        agg["linear_gap_target"] = n / 72
        agg["freq_gap_ge_target"] = float(np.mean(gap >= n / 72))
    else:
        raise ValueError(f"unknown experiment kind {kind!r}")
    return agg


def upper_tail_bound(eps: float, L: int, opt: int) -> float:
    """exp(-eps^2 / (4 L^2 |opt(G)|))."""
    if opt == 0:
        return 1.0 if eps == 0 else 0.0
    return math.exp(-eps**2 / (4 * L**2 * opt))


def lower_tail_bound(eps: float, L: int, expected: float) -> float:
    """exp(-eps^2 / (2 L^2 E|opt(H)|))."""
    if expected <= 0:
        return 1.0 if eps == 0 else 0.0
    return math.exp(-eps**2 / (2 * L**2 * expected))


# -------------------------------------------------------------- runners

def _pinned(cfg: ExperimentConfig) -> Matching:
    return max_cycle_cover(cfg.instance.graph, cfg.cap)


def _mc(kind: str, chunk_fn: Callable, columns: tuple[str, ...],
        cfg: ExperimentConfig) -> ExperimentReport:
    pinned = _pinned(cfg)
    rows = _run_trials(chunk_fn, _payload(cfg, pinned), cfg.trials, cfg.workers)
    return ExperimentReport(kind, columns, rows, aggregate(kind, rows, cfg, pinned.size))


def run_lemma1(cfg: ExperimentConfig) -> ExperimentReport:
    """E|opt(H_i)| per player against p_i |opt(G)|, by Monte Carlo or exactly."""
    if not cfg.exact:
        return _mc("lemma1", _gap_chunk, GAP_COLUMNS, cfg)
    opt = _pinned(cfg).size
    rows = []
    for i, p in enumerate(cfg.profile.probabilities):
        frac_p = Fraction(repr(p)).limit_denominator(10**6)
        value = exact_internal_expectation(cfg.instance.graph, cfg.cap, frac_p)
        bound = frac_p * opt
        rows.append((i, str(frac_p), str(value), float(value), float(bound),
                     _verdict(value <= bound)))
    agg = _common(cfg, opt)
    agg["mode"] = "exact"
    return ExperimentReport("lemma1_exact", EXACT_COLUMNS, rows, agg)


def run_concentration(cfg: ExperimentConfig) -> ExperimentReport:
    return _mc("concentration", _gap_chunk, GAP_COLUMNS, cfg)


def run_theorem1(cfg: ExperimentConfig) -> ExperimentReport:
    return _mc("theorem1", _gap_chunk, GAP_COLUMNS, cfg)


def run_veto(cfg: ExperimentConfig) -> ExperimentReport:
    return _mc("veto", _veto_chunk, VETO_COLUMNS, cfg)


def run_appc(cfg: ExperimentConfig) -> ExperimentReport:
    """Long-chain instance: the altruist's owner gains a linear amount by leaving.

    The internal optimum of the altruist's owner is the longer of the owned
    prefix of the chain arm and the number of layers holding one of their
    vertices; a path through the layered part visits at most one vertex per
    layer, and edges only run to later layers.
    """
    if cfg.instance.name != "long_chain":
        raise ValueError("run_appc needs the long_chain instance")
    if cfg.profile.k != 2:
        raise ValueError("run_appc is defined for two players")
    n = cfg.instance.params["n"]
    altruist, chain, layers = long_chain_layout(n)
    pinned_chain = longest_chain_dag(cfg.instance.graph)
    pinned = Matching((pinned_chain.vertices[1:],), cfg.cap)
    extra = (altruist, np.array(chain), np.array(layers))
    rows = _run_trials(_appc_chunk, _payload(cfg, pinned, extra), cfg.trials, cfg.workers)
    return ExperimentReport("appc", APPC_COLUMNS, rows,
                            aggregate("appc", rows, cfg, len(pinned_chain)))


RUNNERS: dict[str, Callable[[ExperimentConfig], ExperimentReport]] = {
    "lemma1": run_lemma1,
    "concentration": run_concentration,
    "theorem1": run_theorem1,
    "veto": run_veto,
    "appc": run_appc,
}


# ------------------------------------------------------ layered event study

@dataclass(frozen=True)
class LayeredEventStudy:
    n: int
    samples: int
    event_count: int
    min_conditional_gap: Optional[int]

    @property
    def frequency(self) -> float:
        return self.event_count / self.samples

    @property
    def gap_target(self) -> float:
        return math.sqrt(self.n) / 2


def layered_event_study(n: int, samples: int, seed: int = 0) -> LayeredEventStudy:
    """Sample two-player ownership of the layered graph and track the event
    c >= n/8 + sqrt(n), a, b <= n/8 - sqrt(n), d >= 3 sqrt(n) for player 0,
    recording the smallest internal-minus-share gap seen inside it.
    """
    if n % 4:
        raise ValueError("n must be a multiple of 4")
    m = n // 4
    root = math.sqrt(n)
    profile = PlayerProfile((0.5, 0.5))
    count = 0
    min_gap: Optional[int] = None
    for t in range(samples):
        owner = sample_ownership(n, profile, seed, t).owner
        a, b, c, d = (int(np.count_nonzero(owner[j * m:(j + 1) * m] == 0)) for j in range(4))
        if c >= n / 8 + root and a <= n / 8 - root and b <= n / 8 - root and d >= 3 * root:
            count += 1
            gap = layered_internal_opt(a, b, c, d) - (a + b + c)
            min_gap = gap if min_gap is None else min(min_gap, gap)
    return LayeredEventStudy(n, samples, count, min_gap)
