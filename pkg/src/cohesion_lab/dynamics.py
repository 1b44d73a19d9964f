"""Diffusion dynamics: exact spectral solutions, stepped integration,
convergence timing, and round-based switching-topology protocols.
"""

from dataclasses import dataclass, field

import numpy as np

from . import eigen
from .errors import ConvergenceError, DomainError, ValidationError
from .graphs import Graph, is_connected
from .spectra import LaplacianKind, adjacency_matrix, symmetrize, _symmetric_operator


@dataclass(frozen=True)
class Susceptibility:
    """Positive diagonal susceptibilities s_ii."""

    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        object.__setattr__(self, "values", v)
        if np.any(v <= 0) or not np.all(np.isfinite(v)):
            raise ValidationError("susceptibilities must be positive and finite")

    @classmethod
    def uniform(cls, n: int, value: float = 1.0) -> "Susceptibility":
        return cls(values=np.full(n, float(value)))


@dataclass(frozen=True)
class Trajectory:
    """Sampled positions y_t: row k of states is y at times[k]."""

    times: np.ndarray
    states: np.ndarray
    method: str
    kind: LaplacianKind = None
    coefficients: np.ndarray = None
    connected: bool = True

    @property
    def spread(self) -> np.ndarray:
        return self.states.max(axis=1) - self.states.min(axis=1)

    def to_csv(self) -> str:
        n = self.states.shape[1]
        header = "t," + ",".join(f"y_{i}" for i in range(n)) + ",spread"
        lines = [header]
        sp = self.spread
        for k, t in enumerate(self.times):
            row = ",".join(repr(float(x)) for x in self.states[k])
            lines.append(f"{float(t)!r},{row},{float(sp[k])!r}")
        return "\n".join(lines) + "\n"


def _position_vector(y0, n: int) -> np.ndarray:
    y = np.asarray(y0, dtype=float)
    if y.shape != (n,):
        raise ValidationError(f"position vector must have length {n}, got shape {y.shape}")
    if not np.all(np.isfinite(y)):
        raise ValidationError("position vector entries must be finite")
    return y


def _degree_scaling(g: Graph, kind: LaplacianKind, weighted=True, direction_policy="intersection"):
    """For the row-normalized operator: exp(-Lrw t) = D^(-1/2) exp(-Lnor t) D^(1/2)."""
    if kind is not LaplacianKind.ROW_NORMALIZED:
        return None
    a = adjacency_matrix(g, weighted=weighted)
    if g.directed:
        a = symmetrize(a, direction_policy)
    deg = a.sum(axis=1)
    if np.any(deg <= 0):
        raise DomainError("row-normalized dynamics require degree >= 1 everywhere")
    return np.sqrt(deg)


def diffuse_spectral(
    g: Graph,
    kind: LaplacianKind,
    y0,
    times,
    weighted: bool = True,
    direction_policy: str = "intersection",
) -> Trajectory:
    """Exact solution of dy/dt = -L y sampled at the given times.

    The position vector is expanded in the eigenbasis, y_t = sum_k b_k
    exp(-lambda_k t) v_k; disconnected graphs are allowed and settle to
    per-component equilibria (flagged in the result).
    """
    kind = kind if isinstance(kind, LaplacianKind) else LaplacianKind.parse(kind)
    times = np.asarray(times, dtype=float)
    if times.ndim != 1 or times.size == 0:
        raise ValidationError("times must be a non-empty 1-D sequence")
    if np.any(times < 0):
        raise DomainError("times must be non-negative")
    y = _position_vector(y0, g.n)
    m = _symmetric_operator(g, kind, weighted=weighted, direction_policy=direction_policy)
    scale = _degree_scaling(g, kind, weighted, direction_policy)
    w, v = eigen.eigh(m)
    y_in = y * scale if scale is not None else y
    b = v.T @ y_in
    decay = np.exp(-np.outer(times, w))  # (T, n)
    states = decay * b[None, :] @ v.T
    if scale is not None:
        states = states / scale[None, :]
    return Trajectory(
        times=times,
        states=states,
        method="spectral",
        kind=kind,
        coefficients=b,
        connected=is_connected(g),
    )


def diffuse_stepped(
    g: Graph,
    kind: LaplacianKind,
    s: Susceptibility,
    y0,
    t_end: float,
    dt: float,
    weighted: bool = True,
    direction_policy: str = "intersection",
) -> Trajectory:
    """Classic 4th-order Runge-Kutta integration of dy/dt = -S L y."""
    kind = kind if isinstance(kind, LaplacianKind) else LaplacianKind.parse(kind)
    if dt <= 0 or t_end <= 0:
        raise DomainError("t_end and dt must be positive")
    if s.values.shape != (g.n,):
        raise ValidationError(f"susceptibility must have length {g.n}")
    from .spectra import laplacian  # local import to avoid cycle at module load

    lap = laplacian(g, kind, weighted=weighted, direction_policy=direction_policy)
    sym = _symmetric_operator(g, kind, weighted=weighted, direction_policy=direction_policy)
    lam_max = float(eigen.eigvalsh(sym)[-1])
    s_max = float(s.values.max())
    bound = 2.0 / (s_max * lam_max) if s_max * lam_max > 0 else np.inf
    if dt >= bound:
        raise DomainError(
            f"step dt = {dt} violates the stability bound dt < {bound:.6g} "
            f"(= 2 / (max s_ii * lambda_max))"
        )
    y = _position_vector(y0, g.n)
    n_steps = max(1, int(np.ceil(t_end / dt - 1e-12)))
    h = t_end / n_steps
    m = -(s.values[:, None] * lap)
    times = np.linspace(0.0, t_end, n_steps + 1)
    states = np.empty((n_steps + 1, g.n))
    states[0] = y
    for k in range(n_steps):
        k1 = m @ y
        k2 = m @ (y + 0.5 * h * k1)
        k3 = m @ (y + 0.5 * h * k2)
        k4 = m @ (y + h * k3)
        y = y + (h / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
        states[k + 1] = y
    return Trajectory(times=times, states=states, method="stepped", kind=kind, connected=is_connected(g))


def spread_of(y) -> float:
    y = np.asarray(y, dtype=float)
    return float(y.max() - y.min())


def convergence_time(
    g: Graph,
    kind: LaplacianKind,
    y0,
    epsilon: float,
    tol: float = 1e-6,
) -> float:
    """Smallest t with spread(y_t) < epsilon, by bisection on the spectral solution."""
    if not is_connected(g):
        raise DomainError("convergence_time requires a connected graph")
    y = _position_vector(y0, g.n)
    if spread_of(y) <= epsilon:
        raise DomainError(f"spread(y0) = {spread_of(y):.6g} does not exceed epsilon = {epsilon}")
    if epsilon <= 0:
        raise DomainError("epsilon must be positive")

    def spread_at(t: float) -> float:
        return float(diffuse_spectral(g, kind, y, np.array([t])).spread[0])

    hi = 1.0
    for _ in range(80):
        if spread_at(hi) < epsilon:
            break
        hi *= 2.0
        if hi > 1e9:
            raise ConvergenceError("spread never fell below epsilon (non-convergent setup)")
    else:
        raise ConvergenceError("bracketing failed")
    lo = 0.0
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if spread_at(mid) < epsilon:
            hi = mid
        else:
            lo = mid
    return hi


# ---------------------------------------------------------------------------
# round-based protocols
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RoundSchedule:
    """Ordered interaction rounds on n nodes; each round is an edge list.

    A round that is a matching (disjoint pairs) supports the exact
    pair-average rule; arbitrary subgraphs require the exponential rule.
    """

    n: int
    rounds: tuple

    def __post_init__(self):
        norm = []
        for r, pairs in enumerate(self.rounds):
            seen_pairs = []
            for (u, v) in pairs:
                u, v = int(u), int(v)
                if u == v:
                    raise ValidationError(f"round {r}: self-pair at node {u}")
                if not (0 <= u < self.n and 0 <= v < self.n):
                    raise ValidationError(f"round {r}: node out of range in pair ({u},{v})")
                seen_pairs.append((min(u, v), max(u, v)))
            if len(set(seen_pairs)) != len(seen_pairs):
                raise ValidationError(f"round {r}: duplicate pair")
            norm.append(tuple(sorted(seen_pairs)))
        object.__setattr__(self, "rounds", tuple(norm))
        if not self.rounds:
            raise ValidationError("schedule must contain at least one round")

    def is_matching(self, r: int) -> bool:
        nodes = [x for pair in self.rounds[r] for x in pair]
        return len(nodes) == len(set(nodes))

    @classmethod
    def from_json_obj(cls, obj) -> "RoundSchedule":
        return cls(n=int(obj["n"]), rounds=tuple(tuple(tuple(p) for p in rnd) for rnd in obj["rounds"]))

    def to_json_obj(self):
        return {"n": self.n, "rounds": [[list(p) for p in rnd] for rnd in self.rounds]}


def _apply_pair_average(y: np.ndarray, pairs) -> np.ndarray:
    out = y.copy()
    for u, v in pairs:
        m = 0.5 * (out[u] + out[v])
        out[u] = m
        out[v] = m
    return out


def _apply_exponential(y: np.ndarray, pairs, n: int, t_round: float) -> np.ndarray:
    """exp(-Lrw t) on the round's subgraph; nodes without round ties keep y."""
    a = np.zeros((n, n))
    for u, v in pairs:
        a[u, v] = a[v, u] = 1.0
    deg = a.sum(axis=1)
    active = deg > 0
    out = y.copy()
    if not np.any(active):
        return out
    idx = np.where(active)[0]
    sub = a[np.ix_(idx, idx)]
    dsub = sub.sum(axis=1)
    inv_sqrt = 1.0 / np.sqrt(dsub)
    lnor = np.eye(idx.size) - (sub * inv_sqrt[:, None]) * inv_sqrt[None, :]
    w, v = eigen.eigh(lnor)
    ysub = y[idx] * np.sqrt(dsub)
    ysub = v @ (np.exp(-t_round * w) * (v.T @ ysub))
    out[idx] = ysub * inv_sqrt
    return out


def run_rounds(schedule: RoundSchedule, y0, rule="pair_average", t_round: float = 1.0) -> Trajectory:
    """Apply the schedule round by round; row k of the result is y after round k.

    rule 'pair_average' replaces both members of each matched pair by their
    mean (the long-time limit of pairwise diffusion) and requires every round
    to be a matching; rule 'exponential' diffuses for t_round on each round's
    subgraph Laplacian.
    """
    y = _position_vector(y0, schedule.n)
    if rule not in ("pair_average", "exponential"):
        raise ValidationError(f"unknown round rule {rule!r}")
    states = [y.copy()]
    for r, pairs in enumerate(schedule.rounds):
        if rule == "pair_average":
            if not schedule.is_matching(r):
                raise ValidationError(f"round {r} has overlapping pairs; pair_average needs a matching")
            y = _apply_pair_average(y, pairs)
        else:
            y = _apply_exponential(y, pairs, schedule.n, t_round)
        states.append(y.copy())
    return Trajectory(
        times=np.arange(len(states), dtype=float),
        states=np.array(states),
        method=f"rounds:{rule}",
        connected=True,
    )


# ---------------------------------------------------------------------------
# the four-cluster memory experiment
# ---------------------------------------------------------------------------

CLUSTER_COUNT = 4
CLUSTER_SIZE = 4
_N_MEMORY = CLUSTER_COUNT * CLUSTER_SIZE

#: Within-cluster round-robin: three matchings cover each 4-clique.
_WITHIN_PATTERNS = (((0, 1), (2, 3)), ((0, 2), (1, 3)), ((0, 3), (1, 2)))

#: Cross-cluster matchings keyed by style.
CROSS_MATCHINGS = {
    # clusters paired off (0<->1, 2<->3), member k with member k
    "cluster_pairing": tuple(
        (4 * a + k, 4 * b + k) for (a, b) in ((0, 1), (2, 3)) for k in range(4)
    ),
    # one pair per cluster pair, leftovers matched across
    "balanced": ((0, 4), (1, 8), (2, 12), (5, 9), (6, 13), (10, 14), (3, 7), (11, 15)),
    # ring of clusters, two members to the next cluster
    "ring": ((0, 6), (1, 7), (4, 10), (5, 11), (8, 14), (9, 15), (2, 12), (3, 13)),
}


def within_cluster_rounds():
    return tuple(
        tuple((4 * c + a, 4 * c + b) for c in range(CLUSTER_COUNT) for a, b in pat)
        for pat in _WITHIN_PATTERNS
    )


def memory_schedules(cross_style: str = "cluster_pairing"):
    """(treatment1, treatment2): cross-cluster round first vs last."""
    try:
        cross = CROSS_MATCHINGS[cross_style]
    except KeyError:
        raise DomainError(f"unknown cross-matching style {cross_style!r}") from None
    within = within_cluster_rounds()
    t1 = RoundSchedule(n=_N_MEMORY, rounds=(cross,) + within)
    t2 = RoundSchedule(n=_N_MEMORY, rounds=within + (cross,))
    return t1, t2


def four_cluster_graph() -> Graph:
    """Union of all ties the memory protocol ever activates."""
    edges = set()
    for sched in memory_schedules():
        for rnd in sched.rounds:
            edges.update(rnd)
    return Graph.from_edges(_N_MEMORY, sorted(edges))


def rep_rng(master_seed: int, rep_index: int) -> np.random.Generator:
    """Counter-based per-replication stream; invariant to worker scheduling."""
    key = np.array([master_seed & 0xFFFFFFFFFFFFFFFF, rep_index], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


@dataclass(frozen=True)
class MemoryExperimentResult:
    mean_sd_difference: float
    mc_standard_error: float
    reps: int
    seed: int
    protocol: dict = field(compare=False)


def _round_mean_sd(schedule: RoundSchedule, y0: np.ndarray, rule: str, t_round: float) -> float:
    traj = run_rounds(schedule, y0, rule=rule, t_round=t_round)
    sds = traj.states[1:].std(axis=1)  # population sd of each round output
    return float(sds.mean())


def memory_experiment(
    reps: int,
    seed: int,
    cross_style: str = "cluster_pairing",
    rule: str = "pair_average",
    t_round: float = 1.0,
) -> MemoryExperimentResult:
    """Mean convergence-score gap between the two round orderings.

    Per replication the 16 initial memories are fair coin flips shared by
    both treatments; a treatment's score is the mean population sd over its
    four round outputs (the final states alone cannot separate the
    orderings: any product of symmetric round operators has the same
    second-moment trace either way). Positive differences mean the
    cross-first ordering converged more.
    """
    if reps < 1:
        raise DomainError("reps must be >= 1")
    t1, t2 = memory_schedules(cross_style)
    diffs = np.empty(reps)
    for r in range(reps):
        rng = rep_rng(seed, r)
        y0 = rng.integers(0, 2, size=_N_MEMORY).astype(float)
        s1 = _round_mean_sd(t1, y0, rule, t_round)
        s2 = _round_mean_sd(t2, y0, rule, t_round)
        diffs[r] = s2 - s1
    se = float(diffs.std(ddof=1) / np.sqrt(reps)) if reps > 1 else float("nan")
    return MemoryExperimentResult(
        mean_sd_difference=float(diffs.mean()),
        mc_standard_error=se,
        reps=reps,
        seed=seed,
        protocol={
            "network": "four 4-cliques, cross ties from the matching rounds",
            "cross_style": cross_style,
            "rule": rule,
            "t_round": t_round if rule == "exponential" else None,
            "score": "mean population sd over the four round outputs",
            "sd_convention": "population (divide by n)",
        },
    )
