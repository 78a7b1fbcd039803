"""Insert-and-evict stochastic local search for strong DNA codes.

Each move draws an admissible word, evicts every member it conflicts with and
keeps the result with probability ``f(#evicted)``, where ``f`` is 1 for 0 or 1
evictions, ``alpha * exp(-x / beta)`` for 2 or 3, and 0 beyond.  The library
therefore satisfies all distance constraints at every step.  The run stops when
the target size is reached or after ``max_stagnation`` moves without a new best.

Randomness comes from one :class:`random.Random` (MT19937) per run, seeded with
the run's integer seed, so a run is a pure function of its parameters.
"""

from __future__ import annotations

import math
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Callable

from .codeset import CodeParams, CodeSet
from .errors import InvalidParams
from .seqcore import DEFAULT_MAX_ATTEMPTS, Sequence, low_mask, sample_admissible_code

DEFAULT_ALPHA = 6.5e-5
DEFAULT_BETA = 1.45
DEFAULT_MAX_STAGNATION = 10**6


def acceptance_probability(x: int, alpha: float = DEFAULT_ALPHA, beta: float = DEFAULT_BETA) -> float:
    if alpha <= 0 or beta <= 0:
        raise InvalidParams(f"alpha and beta must be positive (got {alpha}, {beta})")
    if x < 0:
        raise InvalidParams(f"cost must be non-negative, got {x}")
    if x <= 1:
        return 1.0
    if x <= 3:
        return min(1.0, alpha * math.exp(-x / beta))
    return 0.0


@dataclass(frozen=True)
class SlsParams:
    code_params: CodeParams
    target: int | None = None
    max_stagnation: int = DEFAULT_MAX_STAGNATION
    alpha: float = DEFAULT_ALPHA
    beta: float = DEFAULT_BETA
    seed: int = 0
    sample_attempts: int = DEFAULT_MAX_ATTEMPTS

    def __post_init__(self) -> None:
        if self.max_stagnation < 1:
            raise InvalidParams("max_stagnation must be >= 1")
        if self.alpha <= 0 or self.beta <= 0:
            raise InvalidParams("alpha and beta must be positive")
        if self.target is not None and self.target < 1:
            raise InvalidParams("target must be >= 1")
        if self.sample_attempts < 1:
            raise InvalidParams("sample_attempts must be >= 1")


@dataclass(frozen=True)
class MoveRecord:
    sigma: Sequence
    cost: int
    accepted: bool


@dataclass
class SlsState:
    """Mutable search state.  ``current`` maps packed code -> packed reverse complement."""

    params: SlsParams
    rng: random.Random
    current: dict[int, int] = field(default_factory=dict)
    best: tuple[int, ...] = ()
    bestsize: int = 0
    iterations: int = 0
    accepted: int = 0
    rejected: int = 0

    @classmethod
    def fresh(cls, params: SlsParams) -> SlsState:
        return cls(params=params, rng=random.Random(params.seed))

    @property
    def moves(self) -> int:
        return self.accepted + self.rejected

    def current_code(self) -> CodeSet:
        p = self.params.code_params
        return CodeSet(p, (Sequence(p.n, c) for c in self.current))

    def best_code(self) -> CodeSet:
        p = self.params.code_params
        return CodeSet(p, (Sequence(p.n, c) for c in self.best))


def step(state: SlsState, params: SlsParams | None = None) -> MoveRecord:
    """One move: sample, compute the eviction set, accept with ``f(cost)``."""
    params = params or state.params
    n, d, w = params.code_params.n, params.code_params.d, params.code_params.w
    code, rc = sample_admissible_code(n, d, w, state.rng, params.sample_attempts)
    low = low_mask(n)
    evict = []
    for t in state.current:
        x = code ^ t
        y = rc ^ t
        if ((x | (x >> 1)) & low).bit_count() < d or ((y | (y >> 1)) & low).bit_count() < d:
            evict.append(t)
    cost = len(evict)
    u = state.rng.random()
    accepted = u < acceptance_probability(cost, params.alpha, params.beta)
    if accepted:
        cur = state.current
        for t in evict:
            del cur[t]
        cur[code] = rc
        state.accepted += 1
        if len(cur) > state.bestsize:
            state.best = tuple(cur)
            state.bestsize = len(cur)
            state.iterations = 0
    else:
        state.rejected += 1
    state.iterations += 1
    return MoveRecord(Sequence(n, code), cost, accepted)


@dataclass(frozen=True)
class SlsOutcome:
    code: CodeSet
    reached_target: bool
    total_moves: int
    stagnation_at_stop: int
    seed: int
    params: SlsParams

    @property
    def size(self) -> int:
        return len(self.code)

    def to_record(self) -> dict:
        p = self.params
        cp = p.code_params
        return {
            "n": cp.n,
            "d": cp.d,
            "w": cp.w,
            "target": p.target,
            "max_stagnation": p.max_stagnation,
            "alpha": p.alpha,
            "beta": p.beta,
            "seed": self.seed,
            "size": self.size,
            "reached_target": self.reached_target,
            "total_moves": self.total_moves,
            "code": self.code.strings(),
        }


def run(params: SlsParams, on_move: Callable[[SlsState, MoveRecord], None] | None = None) -> SlsOutcome:
    """Run the search to the target size or to stagnation and return the best code."""
    state = SlsState.fresh(params)
    target = params.target if params.target is not None else math.inf
    limit = params.max_stagnation
    while len(state.current) != target and state.iterations <= limit:
        rec = step(state, params)
        if on_move is not None:
            on_move(state, rec)
    best = state.best_code()
    return SlsOutcome(
        code=best,
        reached_target=params.target is not None and len(best) == params.target,
        total_moves=state.moves,
        stagnation_at_stop=state.iterations,
        seed=params.seed,
        params=params,
    )


def run_multi(params: SlsParams, runs: int, workers: int = 1) -> SlsOutcome:
    """Independent runs with seeds ``seed, seed+1, ...``; the largest code wins,
    ties going to the lowest seed."""
    if runs < 1:
        raise InvalidParams("runs must be >= 1")
    plist = [replace(params, seed=params.seed + k) for k in range(runs)]
    if workers > 1 and runs > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(run, plist))
    else:
        outcomes = [run(p) for p in plist]
    return max(outcomes, key=lambda o: (o.size, -o.seed))
