"""Adaptive adversaries that choose feedback instead of fixing a live set.

An adversary tracks a knowledge state: the family of live sets still
consistent with every answer given so far, plus the stations already revealed
by single transmissions.  Any answer it gives must keep at least one
candidate alive, so a completed game always has a witness live set that would
have produced the same transcript verbatim.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Callable

from .channel import (
    Feedback,
    GameConfig,
    StationSet,
    Transcript,
    evaluate_query,
    format_station_set,
)
from .errors import BudgetExceeded, CapExceeded, Inconsistent, InvalidQuery
from .strategies import Strategy

DEFAULT_ENUMERATION_BUDGET = 10**6


@dataclass(frozen=True)
class KnowledgeState:
    """Surviving candidate family (sorted by mask) plus revealed stations."""

    config: GameConfig
    candidates: tuple[StationSet, ...]
    transmitted: StationSet


def initial_state(config: GameConfig, *, budget: int = DEFAULT_ENUMERATION_BUDGET) -> KnowledgeState:
    """Knowledge state before any round: every size-d subset of 1..n."""
    total = math.comb(config.n, config.d)
    if total > budget:
        raise BudgetExceeded(
            f"C({config.n},{config.d}) = {total} candidate live sets exceed budget {budget}"
        )
    candidates = sorted(
        StationSet.from_ids(ids) for ids in combinations(range(1, config.n + 1), config.d)
    )
    return KnowledgeState(config, tuple(candidates), StationSet())


def _feedback_partition(
    state: KnowledgeState, query: StationSet
) -> dict[Feedback, tuple[StationSet, ...]]:
    groups: dict[Feedback, list[StationSet]] = {}
    for candidate in state.candidates:
        groups.setdefault(evaluate_query(query, candidate), []).append(candidate)
    return {feedback: tuple(family) for feedback, family in groups.items()}


def refine(state: KnowledgeState, query: StationSet, feedback: Feedback) -> KnowledgeState:
    """Filter the candidate family by one observed round."""
    survivors = tuple(
        candidate
        for candidate in state.candidates
        if evaluate_query(query, candidate) == feedback
    )
    if not survivors:
        raise Inconsistent(
            f"feedback {feedback} on query {format_station_set(query)} eliminates every candidate"
        )
    transmitted = state.transmitted
    if feedback.is_single:
        transmitted = transmitted | StationSet.singleton(feedback.station)  # type: ignore[arg-type]
    return KnowledgeState(state.config, survivors, transmitted)


def _preference(feedback: Feedback) -> tuple[int, int]:
    # Fixed tie-break order: collision, then silence, then singles by id.
    if feedback.tag.value == "collision":
        return (0, 0)
    if feedback.tag.value == "silence":
        return (1, 0)
    return (2, feedback.station or 0)


def greedy_answer(state: KnowledgeState, query: StationSet) -> Feedback:
    """Feedback keeping the largest surviving family (ties by preference)."""
    groups = _feedback_partition(state, query)
    return min(groups, key=lambda fb: (-len(groups[fb]), _preference(fb)))


def _forced_rounds(state: KnowledgeState, strategy: Strategy, transcript: Transcript) -> int:
    """Rounds the strategy can still be forced to play from this position."""
    config = state.config
    if len(state.transmitted) >= config.d:
        return 0
    action = strategy.next_action(config, transcript)
    if action is None:
        return 0
    if len(transcript.rounds) >= 4 * config.n + 16:
        raise CapExceeded(f"strategy {strategy.name!r} exceeded {4 * config.n + 16} rounds")
    if not action.issubset(config.all_stations):
        raise InvalidQuery(
            f"strategy {strategy.name!r} queried {format_station_set(action - config.all_stations)} beyond n={config.n}"
        )
    worst = 0
    for feedback, survivors in _feedback_partition(state, action).items():
        transmitted = state.transmitted
        if feedback.is_single:
            transmitted = transmitted | StationSet.singleton(feedback.station)  # type: ignore[arg-type]
        child = KnowledgeState(config, survivors, transmitted)
        worst = max(worst, 1 + _forced_rounds(child, strategy, transcript.extend(action, feedback)))
    return worst


def exact_answer(
    state: KnowledgeState,
    query: StationSet,
    strategy: Strategy,
    transcript: Transcript,
) -> Feedback:
    """Feedback maximizing how long the given strategy still has to run.

    The strategy's future moves are fixed by replaying it on the extended
    transcript, so the adversary simply maximizes over feedback branches.
    ``transcript`` must be the rounds that produced ``state``.
    """
    groups = _feedback_partition(state, query)
    best_feedback: Feedback | None = None
    best_length = -1
    for feedback in sorted(groups, key=_preference):
        child = refine(state, query, feedback)
        length = 1 + _forced_rounds(child, strategy, transcript.extend(query, feedback))
        if length > best_length:
            best_feedback, best_length = feedback, length
    if best_feedback is None:
        raise Inconsistent(f"query {format_station_set(query)} admits no feedback at all")
    return best_feedback


# An adversary as the engine sees it: (state, query, transcript) -> feedback.
Adversary = Callable[[KnowledgeState, StationSet, Transcript], Feedback]


def greedy_adversary(state: KnowledgeState, query: StationSet, transcript: Transcript) -> Feedback:
    return greedy_answer(state, query)


def make_exact_adversary(strategy: Strategy) -> Adversary:
    """Worst-case foil for one specific strategy."""

    def answer(state: KnowledgeState, query: StationSet, transcript: Transcript) -> Feedback:
        return exact_answer(state, query, strategy, transcript)

    return answer
