"""Randomized search for maximally deviating subspaces.

Hill climbing on the Grassmannian: perturb the current basis with
Gaussian noise, keep strict improvements of the deviation target, shrink
the step on every rejection.  The accumulation loop restarts from uniform
samples and collects one representative per symmetry class of the
extremal subspaces it reaches; a subspace beating the arccos(1/sqrt(n))
bound would be returned as a distinguished violation result.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .numeric import (
    RankDeficientError,
    Subspace,
    match_sign_diagonal,
    orthonormalize,
    principal_angles,
    target,
)


@dataclass(frozen=True)
class SearchConfig:
    """Knobs for the optimizer and the accumulation loop."""

    attempts: int = 200          # consecutive fruitless restarts before stopping
    eps: float = 1e-4            # extremality tolerance, cosine scale
    init_magnitude: float = 0.5
    decay: float = 0.99          # slower decay buys the accuracy the eps gate needs
    max_steps: int = 100_000
    min_magnitude: float = 1e-7
    seed: int = 0
    dedup_tol: float = 1e-3      # principal-angle tolerance for class identity

    def __post_init__(self):
        if self.attempts < 1:
            raise ValueError("attempts must be at least 1")
        if not 0.0 < self.eps < 1.0:
            raise ValueError("eps must lie in (0, 1)")
        if self.init_magnitude <= 0.0:
            raise ValueError("init_magnitude must be positive")
        if not 0.0 < self.decay < 1.0:
            raise ValueError("decay must lie in (0, 1)")


@dataclass
class ViolationReport:
    """A subspace deviating beyond arccos(1/sqrt(n)); never observed."""

    subspace: Subspace
    deviation_cos: float
    subset: tuple


@dataclass
class SearchResult:
    """Accumulated classes (subspace plus its float profile key)."""

    classes: list
    violation: ViolationReport | None
    restarts: int
    config: SearchConfig


def sample_uniform(n: int, k: int, rng) -> Subspace:
    """Uniform draw on the Grassmannian: orthonormalized Gaussian matrix."""
    if not n > k > 0:
        raise ValueError("need n > k > 0")
    return orthonormalize(rng.standard_normal((n, k)))


def perturb(sub: Subspace, magnitude: float, rng) -> Subspace:
    """Gaussian bump of the basis, re-orthonormalized."""
    while True:
        bumped = sub.basis + magnitude * rng.standard_normal(sub.basis.shape)
        try:
            return orthonormalize(bumped)
        except RankDeficientError:
            continue  # measure-zero degeneracy; draw again


def optimize(sub: Subspace, cfg: SearchConfig, rng=None) -> Subspace:
    """Accept-improving random walk; shrinks the step on every rejection."""
    if rng is None:
        rng = np.random.default_rng(cfg.seed)
    angle, _ = target(sub)
    magnitude = cfg.init_magnitude
    for _ in range(cfg.max_steps):
        if magnitude < cfg.min_magnitude:
            break
        candidate = perturb(sub, magnitude, rng)
        candidate_angle, _ = target(candidate)
        if candidate_angle > angle:
            sub, angle = candidate, candidate_angle
        else:
            magnitude *= cfg.decay
    return sub


def projection_profile(sub: Subspace) -> np.ndarray:
    """Sorted row norms of the orthogonal projector; invariant under signed
    coordinate permutations."""
    P = sub.basis @ sub.basis.T
    return np.sort(np.linalg.norm(P, axis=1))


def symmetry_equivalent(a: Subspace, b: Subspace, tol: float = 1e-3) -> bool:
    """Does some signed coordinate permutation carry col(a) onto col(b)?

    Matches projector row norms first, then backtracks over permutations
    pruned by |projector| consistency; a candidate permutation is accepted
    when the sign-resolved basis lands within tol (largest principal
    angle) of b.
    """
    if (a.ambient, a.dim) != (b.ambient, b.dim):
        return False
    n = a.ambient
    Pa = a.basis @ a.basis.T
    Pb = b.basis @ b.basis.T
    ra = np.linalg.norm(Pa, axis=1)
    rb = np.linalg.norm(Pb, axis=1)
    if np.max(np.abs(np.sort(ra) - np.sort(rb))) > tol:
        return False

    perm = [-1] * n
    used = [False] * n

    def aligns() -> bool:
        basis = np.zeros_like(a.basis)
        for i in range(n):
            basis[perm[i], :] = a.basis[i, :]
        signs = match_sign_diagonal(Pb, basis @ basis.T, tol)
        if signs is None:
            return False
        moved = Subspace(a.ambient, a.dim, signs[:, None] * basis)
        return principal_angles(moved, b)[-1] <= tol

    def place(i: int) -> bool:
        if i == n:
            return aligns()
        for j in range(n):
            if used[j] or abs(ra[i] - rb[j]) > tol:
                continue
            if any(abs(abs(Pa[i, t]) - abs(Pb[j, perm[t]])) > tol for t in range(i)):
                continue
            perm[i] = j
            used[j] = True
            if place(i + 1):
                return True
            used[j] = False
            perm[i] = -1
        return False

    return place(0)


def accumulate(n: int, k: int, cfg: SearchConfig) -> SearchResult:
    """Restart until the class set plateaus or the bound breaks.

    Each restart draws a uniform subspace, optimizes it, and scores it in
    cosine scale.  A score below 1/sqrt(n) - eps disproves the bound and
    returns immediately as a violation; scores within eps of the bound
    join the set when not symmetric to a known member, resetting the
    attempt budget.  Per-restart generators are derived from the seed, so
    results are reproducible.
    """
    if not n > k > 0:
        raise ValueError("need n > k > 0")
    bound = 1.0 / math.sqrt(n)
    members: list[tuple[Subspace, np.ndarray]] = []
    budget = cfg.attempts
    restarts = 0
    while budget > 0:
        rng = np.random.default_rng(
            np.random.SeedSequence(entropy=cfg.seed, spawn_key=(restarts,)))
        restarts += 1
        sub = optimize(sample_uniform(n, k, rng), cfg, rng)
        angle, subset = target(sub)
        score = math.cos(angle)
        if score < bound - cfg.eps:
            return SearchResult(list(members),
                                ViolationReport(sub, score, subset),
                                restarts, cfg)
        if abs(score - bound) <= cfg.eps and not any(
                symmetry_equivalent(sub, member, cfg.dedup_tol)
                for member, _ in members):
            members.append((sub, projection_profile(sub)))
            budget = cfg.attempts
        else:
            budget -= 1
    return SearchResult(members, None, restarts, cfg)
