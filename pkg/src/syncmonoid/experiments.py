"""Monte Carlo and exact experiments on random generation of synchronizing
monoids, plus the graph explorer for maximal non-synchronizing candidates.

Reproducibility contract: every trial draws from its own substream keyed by
(seed, trial index), and results are aggregated by summation, so estimates
are byte-identical however trials are scheduled.  Within a trial the draw
order is fixed: the permutation generators first, then the endofunction
generators.
"""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import CapExceeded
from .graphs import (
    SimpleGraph,
    check_maximality_conditions,
    chromatic_number,
    clique_number,
    derived_graph,
    endomorphism_count,
    enumerate_graphs,
    hull,
    is_maximal_nonsynchronizing,
)
from .rng import derive_seed, substream
from .stats import EstimateWithCI, make_estimate
from .sync import GeneratorSet, is_synchronizing, min_rank_witness
from .transform import (
    Endofunction,
    has_unique_periodic_point,
    random_endofunction,
    random_permutation,
    rank,
)

AUDIT_EVERY = 100  # replay a min-rank certificate on 1% of synchronizing trials


@dataclass(frozen=True)
class ExperimentConfig:
    """One Monte Carlo setting: degree n, r permutation generators, s
    endofunction generators, trial count, and master seed."""

    n: int
    num_permutations: int
    num_endofunctions: int
    trials: int
    seed: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be at least 1")
        if self.num_permutations < 0 or self.num_endofunctions < 0:
            raise ValueError("generator counts must be nonnegative")
        if self.num_permutations + self.num_endofunctions < 1:
            raise ValueError("need at least one generator")
        if self.trials < 1:
            raise ValueError("trials must be at least 1")


@dataclass(frozen=True)
class ExactResult:
    """An exact probability as a reduced fraction, with a note on how it
    was obtained."""

    numerator: int
    denominator: int
    context: str

    @classmethod
    def from_fraction(cls, frac: Fraction, context: str) -> "ExactResult":
        return cls(frac.numerator, frac.denominator, context)

    @property
    def fraction(self) -> Fraction:
        return Fraction(self.numerator, self.denominator)


# ---------------------------------------------------------------------------
# fast bulk synchronization test

_PAIR_CACHE: dict[int, tuple] = {}


def _pair_arrays(n: int):
    cached = _PAIR_CACHE.get(n)
    if cached is None:
        vs, ws = [], []
        for v in range(n):
            for w in range(v + 1, n):
                vs.append(v)
                ws.append(w)
        offs = np.array(
            [v * (2 * n - v - 1) // 2 - (v + 1) for v in range(n)], dtype=np.int64
        )
        cached = (np.array(vs, dtype=np.int64), np.array(ws, dtype=np.int64), offs)
        _PAIR_CACHE[n] = cached
    return cached


def _all_pairs_collapsible(n: int, image_tables) -> bool:
    """Vectorized fixpoint on the pair automaton: sweep until the set of
    collapsible pairs stops growing.  Equivalent to the backward closure in
    sync.collapsible_pairs (property-tested against it); used in the Monte
    Carlo hot loop where per-trial Python overhead dominates."""
    if n == 1:
        return True
    pair_v, pair_w, offs = _pair_arrays(n)
    count = pair_v.shape[0]
    collapsed = np.zeros(count + 1, dtype=bool)
    collapsed[count] = True  # virtual merged state
    targets = []
    for imgs in image_tables:
        table = np.asarray(imgs, dtype=np.int64)
        a = table[pair_v]
        b = table[pair_w]
        lo = np.minimum(a, b)
        hi = np.maximum(a, b)
        t = offs[lo] + hi
        t[a == b] = count
        targets.append(t)
    known = 0
    while True:
        cur = collapsed[:count]
        new = cur.copy()
        for t in targets:
            np.logical_or(new, collapsed[t], out=new)
        total = int(new.sum())
        if total == count:
            return True
        if total == known:
            return False
        known = total
        collapsed[:count] = new


def _trial_outcome(config: ExperimentConfig, trial: int) -> tuple[bool, list]:
    """Run one trial; returns (synchronizing, drawn generators)."""
    n = config.n
    stream = substream(config.seed, trial)
    gens = [random_permutation(n, stream) for _ in range(config.num_permutations)]
    gens += [random_endofunction(n, stream) for _ in range(config.num_endofunctions)]
    if config.num_permutations == 0 and config.num_endofunctions == 1:
        # a single endofunction synchronizes iff it has one periodic point
        return has_unique_periodic_point(gens[0]), gens
    return _all_pairs_collapsible(n, [g.images for g in gens]), gens


def _audit(gens: list) -> None:
    """Replay a rank-1 certificate for a trial flagged synchronizing."""
    gen_set = GeneratorSet(gens)
    word, witness = min_rank_witness(gen_set)
    if rank(witness) != 1 or gen_set.evaluate(word) != witness:
        raise RuntimeError("synchronization certificate replay failed")


def _run_chunk(args) -> int:
    config = ExperimentConfig(*args[:5])
    lo, hi = args[5], args[6]
    successes = 0
    for trial in range(lo, hi):
        ok, gens = _trial_outcome(config, trial)
        if ok:
            successes += 1
            if trial % AUDIT_EVERY == 0:
                _audit(gens)
    return successes


def estimate_sync_probability(config: ExperimentConfig, threads: int = 1) -> EstimateWithCI:
    """Fraction of trials whose sampled generators produce a synchronizing
    monoid, with a Wilson 95% interval.  Deterministic in (config.seed,
    config.trials) regardless of ``threads``."""
    base = (
        config.n,
        config.num_permutations,
        config.num_endofunctions,
        config.trials,
        config.seed,
    )
    if threads <= 1:
        successes = _run_chunk(base + (0, config.trials))
    else:
        chunk = -(-config.trials // threads)
        jobs = [
            base + (lo, min(lo + chunk, config.trials))
            for lo in range(0, config.trials, chunk)
        ]
        with ProcessPoolExecutor(max_workers=threads) as pool:
            successes = sum(pool.map(_run_chunk, jobs))
    return make_estimate(successes, config.trials)


# ---------------------------------------------------------------------------
# exact probabilities by enumeration

ENUMERATION_GUARD = 10**8


def exact_sync_probability(n: int, r: int, s: int) -> ExactResult:
    """Exact probability that r uniform permutations and s uniform
    endofunctions (independent, with replacement) generate a synchronizing
    monoid.  The single-endofunction case has a closed form (one periodic
    point <=> a rooted tree: n^(n-1) of n^n maps); everything else is
    enumerated over all ordered generator tuples."""
    if n < 1 or r < 0 or s < 0 or r + s < 1:
        raise ValueError("need n >= 1 and at least one generator")
    if r == 0 and s == 1:
        frac = Fraction(n ** (n - 1), n**n)
        return ExactResult.from_fraction(frac, f"closed form {n}^{n - 1}/{n}^{n}")
    total = math.factorial(n) ** r * (n**n) ** s
    if total > ENUMERATION_GUARD:
        raise ValueError(
            f"{total} generator tuples is too many to enumerate; "
            "use the (r,s)=(0,1) closed form or estimate_sync_probability"
        )
    perms = [Endofunction(p) for p in itertools.permutations(range(n))]
    maps = [Endofunction(t) for t in itertools.product(range(n), repeat=n)]
    pools = [perms] * r + [maps] * s
    count = 0
    for combo in itertools.product(*pools):
        if is_synchronizing(GeneratorSet(combo)):
            count += 1
    return ExactResult.from_fraction(
        Fraction(count, total), f"enumerated {total} tuples (r={r}, s={s})"
    )


# ---------------------------------------------------------------------------
# the single-edge-graph experiment


@dataclass(frozen=True)
class EdgeGraphReport:
    n: int
    trials: int
    seed: int
    graph_count: int
    per_graph_probability: Fraction
    union_bound: Fraction
    estimate: EstimateWithCI
    sigma: float
    within_bound: bool


def _fixes_pair(imgs, v: int, w: int) -> bool:
    a, b = imgs[v], imgs[w]
    return (a == v and b == w) or (a == w and b == v)


def edge_graph_experiment(n: int, trials: int, seed: int) -> EdgeGraphReport:
    """Probability that two random maps are both endomorphisms of some
    one-edge graph, against the exact union bound.

    A map is an endomorphism of the graph with single edge {v, w} exactly
    when it permutes {v, w} onto itself, so each graph is hit with
    probability (2 n^(n-2) / n^n)^2 and the union bound is that times the
    n(n-1)/2 choices of edge.  The sampled estimate must stay below the
    bound plus three standard errors.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    if trials < 1:
        raise ValueError("trials must be at least 1")
    graph_count = n * (n - 1) // 2
    per_graph = Fraction(2 * n ** (n - 2), n**n) ** 2
    bound = graph_count * per_graph
    successes = 0
    for trial in range(trials):
        stream = substream(seed, trial)
        f = random_endofunction(n, stream).images
        g = random_endofunction(n, stream).images
        hit = False
        for v in range(n):
            for w in range(v + 1, n):
                if _fixes_pair(f, v, w) and _fixes_pair(g, v, w):
                    hit = True
                    break
            if hit:
                break
        if hit:
            successes += 1
    est = make_estimate(successes, trials)
    sigma = math.sqrt(est.estimate * (1.0 - est.estimate) / trials)
    within = est.estimate <= float(bound) + 3.0 * sigma
    return EdgeGraphReport(
        n, trials, seed, graph_count, per_graph, bound, est, sigma, within
    )


# ---------------------------------------------------------------------------
# explorer for maximal non-synchronizing endomorphism monoids


def explore_maximal_nonsync(
    n: int,
    canonical: bool = False,
    end_cap: int = 10**6,
    maximality_max_n: int = 5,
):
    """Stream one record per graph on n vertices.

    Each record carries the maximality conditions; graphs satisfying them
    get an endomorphism count and (for n small enough) the literal
    brute-force maximality verdict.  Every record also reports whether the
    derived graph differs from the graph and, if so, whether the pair would
    satisfy all four conditions for a two-graph maximal-monoid presentation
    with distinct graphs (no such pair is expected).
    Caps produce per-graph skip notes, never an abort.
    """
    for x in enumerate_graphs(n, canonical):
        cond = check_maximality_conditions(x)
        record = {
            "n": n,
            "canonical": canonical,
            "edges": [[v + 1, w + 1] for v, w in x.edges()],
            "null": x.is_null(),
            "complete": x == SimpleGraph.complete(n),
            "is_hull": cond.is_hull,
            "omega": cond.omega,
            "chi": cond.chi,
            "every_edge_in_max_clique": cond.every_edge_in_max_clique,
            "passes": cond.passes,
            "end_count": None,
            "maximal": None,
            "derived_differs": False,
            "distinct_pair_candidate": None,
            "skips": [],
        }
        if cond.passes:
            try:
                record["end_count"] = str(endomorphism_count(x, cap=end_cap))
            except CapExceeded as exc:
                record["skips"].append(f"end_count: {exc}")
            if n <= maximality_max_n:
                try:
                    record["maximal"] = is_maximal_nonsynchronizing(x, cap=end_cap)
                except CapExceeded as exc:
                    record["skips"].append(f"maximal: {exc}")
        y = derived_graph(x)
        if y != x:
            record["derived_differs"] = True
            try:
                record["distinct_pair_candidate"] = (
                    endomorphism_count(x, cap=end_cap)
                    == endomorphism_count(y, cap=end_cap)
                    and clique_number(y) == cond.omega == cond.chi == chromatic_number(y)
                    and hull(y) == x
                )
            except CapExceeded as exc:
                record["skips"].append(f"distinct_pair_candidate: {exc}")
        yield record


# ---------------------------------------------------------------------------
# batch driver


def sweep(n_values, configs, seed: int, threads: int = 1) -> list[dict]:
    """One record per (n, (r, s, trials)) combination.

    Each record gets its own derived seed (emitted in the record), so any
    row can be reproduced in isolation; rerunning the whole sweep with the
    same master seed gives byte-identical output.
    """
    records = []
    index = 0
    for n in n_values:
        for r, s, trials in configs:
            record_seed = derive_seed(seed, index)
            index += 1
            config = ExperimentConfig(n, r, s, trials, record_seed)
            est = estimate_sync_probability(config, threads=threads)
            exact = None
            if r == 0 and s == 1:
                frac = Fraction(1, n)
                exact = f"{frac.numerator}/{frac.denominator}"
            records.append(
                {
                    "experiment": "sweep",
                    "n": n,
                    "r": r,
                    "s": s,
                    "trials": trials,
                    "seed": record_seed,
                    "successes": est.successes,
                    "estimate": est.estimate,
                    "ci_low": est.ci_low,
                    "ci_high": est.ci_high,
                    "exact": exact,
                }
            )
    return records
