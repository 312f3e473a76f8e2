"""Deterministic rejection samplers for the verification harness.

All randomness flows from numpy's seed-sequence construction
default_rng([seed, relation_id, sample_index]), so a (seed, relation, index)
triple fully determines every draw; magnitudes are uniform in [0.5, 2] with
uniform phase, and samples whose derived arguments sit within 0.05 of a pole
or cut ray are rejected and redrawn.
"""

from __future__ import annotations

import cmath
import math

import numpy as np

from .context import BranchSearchError, Context, DomainError
from .intertwine import PentagonData, pentagon_branch_assignment
from .weylrep import FusedTriple, StandardRep, fuse_triple_admissible, is_regular_pair

MARGIN = 0.05


def rng_for(seed: int, relation_id: int, sample_index: int) -> np.random.Generator:
    return np.random.default_rng([seed, relation_id, sample_index])


def annulus(rng: np.random.Generator, lo: float = 0.5, hi: float = 2.0) -> complex:
    return rng.uniform(lo, hi) * cmath.exp(2j * math.pi * rng.uniform())


def sample_rep(ctx: Context, rng: np.random.Generator) -> StandardRep:
    return StandardRep.make(ctx, annulus(rng), annulus(rng))


def sample_regular_pair(ctx: Context, rng: np.random.Generator,
                        max_tries: int = 200) -> tuple[StandardRep, StandardRep]:
    for _ in range(max_tries):
        rho, mu = sample_rep(ctx, rng), sample_rep(ctx, rng)
        if is_regular_pair(ctx, rho, mu):
            s = rho.a ** ctx.N * mu.y ** ctx.N + rho.y ** ctx.N / mu.a ** ctx.N
            t1 = abs(rho.a ** ctx.N * mu.y ** ctx.N)
            if abs(s) >= MARGIN * t1:
                return rho, mu
    raise BranchSearchError("could not sample a regular pair")


def sample_admissible_pair(ctx: Context, rng: np.random.Generator,
                           max_tries: int = 500) -> tuple[StandardRep, StandardRep, StandardRep]:
    """(rho, mu, fused) with pole margins and conditioning floors."""
    from .weylrep import fuse
    for _ in range(max_tries):
        rho, mu = sample_regular_pair(ctx, rng)
        rho_mu = fuse(ctx, rho, mu, int(rng.integers(ctx.N)))
        x, z = rho.a * mu.y, rho_mu.y
        scale = max(abs(x), abs(z))
        if min(abs(z - x * ctx.omega_pow(j)) for j in range(1, ctx.N)) < MARGIN * scale:
            continue
        if abs(z - x) < 2e-4 * scale:
            continue
        lam = z / x
        if min(abs(1 - lam * ctx.omega_pow(j)) for j in range(1, ctx.N)) < 2e-4:
            continue
        return rho, mu, rho_mu
    raise BranchSearchError("could not sample an admissible pair")


def sample_admissible_triple(ctx: Context, rng: np.random.Generator,
                             max_tries: int = 500,
                             require_window: bool = False) -> FusedTriple:
    for _ in range(max_tries):
        try:
            reps = [sample_rep(ctx, rng) for _ in range(3)]
            return fuse_triple_admissible(ctx, *reps, margin=MARGIN,
                                          require_window=require_window)
        except (BranchSearchError, DomainError):
            continue
    raise BranchSearchError("could not sample an admissible triple")


def sample_pentagon_data(ctx: Context, rng: np.random.Generator,
                         max_tries: int = 500) -> PentagonData:
    for _ in range(max_tries):
        try:
            reps = [sample_rep(ctx, rng) for _ in range(4)]
            return pentagon_branch_assignment(ctx, *reps, margin=MARGIN)
        except (BranchSearchError, DomainError):
            continue
    raise BranchSearchError("could not sample pentagon data")


def sample_offcut(ctx: Context, rng: np.random.Generator, lo: float, hi: float,
                  margin: float = MARGIN, with_inverse: bool = False,
                  max_tries: int = 1000) -> complex:
    """Complex point in the annulus at distance >= margin from every cut ray."""
    from .context import dist_to_cut_rays
    for _ in range(max_tries):
        x = annulus(rng, lo, hi)
        if dist_to_cut_rays(ctx, x) < margin:
            continue
        if with_inverse and dist_to_cut_rays(ctx, 1 / x) < margin:
            continue
        return x
    raise BranchSearchError("could not sample off the cut rays")


def sample_bracket_window(ctx: Context, rng: np.random.Generator,
                          lo: float = 0.1, hi: float = 0.9,
                          margin: float = MARGIN, max_tries: int = 2000) -> complex:
    """Point of the h(1/x) h(x) x^P = [x] window: |arg x| < 2 pi/N, off cuts."""
    for _ in range(max_tries):
        r = rng.uniform(lo, hi)
        phi = rng.uniform(-2 * math.pi / ctx.N + margin, 2 * math.pi / ctx.N - margin)
        x = r * cmath.exp(1j * phi)
        from .context import dist_to_cut_rays
        if dist_to_cut_rays(ctx, x) >= margin and dist_to_cut_rays(ctx, 1 / x) >= margin \
                and abs(x - 1) >= margin:
            return x
    raise BranchSearchError("could not sample the bracket window")


def sample_fermat_triple(ctx: Context, rng: np.random.Generator,
                         max_tries: int = 500):
    """Generic Fermat triple with z away from the poles x omega^j."""
    from .context import principal_nth_root
    from .specfun import FermatTriple
    for _ in range(max_tries):
        x, y = annulus(rng), annulus(rng)
        z = principal_nth_root(ctx, x ** ctx.N + y ** ctx.N, int(rng.integers(ctx.N)))
        scale = max(abs(x), abs(z))
        if min(abs(z - x * ctx.omega_pow(j)) for j in range(1, ctx.N + 1)) < MARGIN * scale:
            continue
        return FermatTriple.make(ctx, x, y, z)
    raise BranchSearchError("could not sample a Fermat triple")
