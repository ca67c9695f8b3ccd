"""Edge-addition noise: each absent vertex pair appears with probability eps/n.

Sampling draws the number of additions A ~ Binomial(complement_size, eps/n)
and then picks A distinct complement pairs uniformly, which is distributionally
identical to flipping an independent coin per pair but never scans all O(n^2)
candidates. Every trial is reproducible from (master_seed, eps, trial_index).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Sequence

import numpy as np

from rankstab.graph import Graph

_MASK64 = (1 << 64) - 1

# incremented once per generated trial; lets perturbation-free commands prove
# they never sampled (see cli predict)
TRIALS_GENERATED = 0


def splitmix64(x: int) -> int:
    """One step of the splitmix64 avalanche mixer (public domain constants)."""
    x = (x + 0x9E3779B97F4A7C15) & _MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK64
    return x ^ (x >> 31)


def derive_seed(master_seed: int, epsilon: float, trial_index: int) -> int:
    """Mix (master_seed, eps bit pattern, trial_index) into one 64-bit seed."""
    h = splitmix64(master_seed & _MASK64)
    eps_bits = int(np.float64(epsilon).view(np.uint64))
    h = splitmix64(h ^ eps_bits)
    h = splitmix64(h ^ (trial_index & _MASK64))
    return h


@dataclass
class NoiseSpec:
    """Noise level eps (expected added edges per vertex), trial count, seed."""

    epsilon: float
    trials: int = 10
    master_seed: int = 0

    def __post_init__(self):
        if self.epsilon < 0:
            raise ValueError(f"epsilon must be non-negative, got {self.epsilon}")
        if self.trials < 1:
            raise ValueError(f"trials must be >= 1, got {self.trials}")


@dataclass
class PerturbedTrial:
    graph: Graph
    added_edges: list[tuple[int, int]] = field(repr=False)
    epsilon: float = 0.0
    trial_index: int = 0
    seed: int = 0

    def additions_to(self, v: int) -> int:
        """Number of added edges incident to v."""
        return sum(1 for (a, b) in self.added_edges if a == v or b == v)


def _sample_complement_pairs(g: Graph, count: int, rng: np.random.Generator,
                             comp_size: int) -> list[tuple[int, int]]:
    if count == 0:
        return []
    n = g.n
    # rejection sampling is cheap while the draw is a small fraction of the
    # complement; otherwise enumerate and choose without replacement
    if count <= comp_size // 4:
        chosen: set[tuple[int, int]] = set()
        while len(chosen) < count:
            u = int(rng.integers(0, n))
            v = int(rng.integers(0, n))
            if u == v:
                continue
            if u > v:
                u, v = v, u
            if v in g.adj[u] or (u, v) in chosen:
                continue
            chosen.add((u, v))
        return sorted(chosen)
    pool = [(u, v) for u in range(n) for v in range(u + 1, n) if v not in g.adj[u]]
    picks = rng.choice(len(pool), size=count, replace=False)
    return sorted(pool[int(i)] for i in picks)


def perturb(g: Graph, spec: NoiseSpec, trial_index: int) -> PerturbedTrial:
    """One independent edge-addition trial; deterministic in (spec, index)."""
    global TRIALS_GENERATED
    n = g.n
    if not 0 <= spec.epsilon <= n:
        raise ValueError(f"epsilon={spec.epsilon} outside [0, {n}]")
    seed = derive_seed(spec.master_seed, spec.epsilon, trial_index)
    rng = np.random.default_rng(seed)
    comp_size = n * (n - 1) // 2 - g.m
    p = spec.epsilon / n
    n_add = int(rng.binomial(comp_size, p)) if comp_size > 0 and p > 0 else 0
    added = _sample_complement_pairs(g, n_add, rng, comp_size)
    TRIALS_GENERATED += 1

    perturbed = Graph(n, list(g.edges()) + added, labels=g.labels)
    return PerturbedTrial(graph=perturbed, added_edges=added,
                          epsilon=spec.epsilon, trial_index=trial_index, seed=seed)


def expected_additions_per_vertex(g: Graph, v: int, epsilon: float) -> float:
    """(eps/n) * (n - 1 - deg(v)): mean new edges landing on v per trial."""
    if not 0 <= v < g.n:
        raise ValueError(f"unknown vertex id {v}")
    return (epsilon / g.n) * (g.n - 1 - g.degree(v))


def sweep(g: Graph, epsilons: Sequence[float], template: NoiseSpec) -> Iterator[PerturbedTrial]:
    """All trials for every noise level, seeded independently per (eps, trial)."""
    if not epsilons:
        raise ValueError("epsilons must be non-empty")
    for eps in epsilons:
        spec = NoiseSpec(epsilon=eps, trials=template.trials,
                         master_seed=template.master_seed)
        for t in range(spec.trials):
            yield perturb(g, spec, t)
