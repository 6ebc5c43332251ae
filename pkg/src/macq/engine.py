"""Game engine: run strategies against fixed live sets or adversaries.

The engine owns the stop rule: a game ends as soon as d distinct stations
have transmitted alone, whether or not the strategy would keep querying, or
earlier if the strategy itself stops.  A round cap (default 4n + 16) turns
non-terminating strategies into errors instead of hangs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

from .adversary import (
    DEFAULT_ENUMERATION_BUDGET,
    Adversary,
    initial_state,
    refine,
)
from .channel import (
    GameConfig,
    StationSet,
    Transcript,
    evaluate_query,
    format_station_set,
    transcript_to_doc,
    transmitted_set,
)
from .errors import BudgetExceeded, CapExceeded, DomainError, Inconsistent, InvalidQuery
from .errors import AdversaryInconsistent
from .strategies import Strategy


@dataclass(frozen=True)
class GameResult:
    """One finished game: its transcript plus summary fields."""

    transcript: Transcript
    rounds_used: int
    completed: bool
    witness_live: StationSet


def default_round_cap(config: GameConfig) -> int:
    return 4 * config.n + 16


def _checked_query(strategy: Strategy, config: GameConfig, transcript: Transcript,
                   cap: int) -> StationSet | None:
    action = strategy.next_action(config, transcript)
    if action is None:
        return None
    if len(transcript.rounds) >= cap:
        raise CapExceeded(
            f"strategy {strategy.name!r} still querying after {cap} rounds (n={config.n}, d={config.d})"
        )
    if not action.issubset(config.all_stations):
        raise InvalidQuery(
            f"strategy {strategy.name!r} queried stations "
            f"{format_station_set(action - config.all_stations)} beyond n={config.n}"
        )
    return action


def run_fixed(
    strategy: Strategy,
    config: GameConfig,
    live: StationSet,
    round_cap: int | None = None,
) -> GameResult:
    """Play one game against a fixed hidden live set."""
    if not live.issubset(config.all_stations):
        raise DomainError(f"live set {format_station_set(live)} exceeds n={config.n}")
    if len(live) != config.d:
        raise DomainError(f"live set must have exactly d={config.d} stations, got {len(live)}")
    cap = default_round_cap(config) if round_cap is None else round_cap
    transcript = Transcript(config)
    while len(transmitted_set(transcript)) < config.d:
        action = _checked_query(strategy, config, transcript, cap)
        if action is None:
            break
        transcript = transcript.extend(action, evaluate_query(action, live))
    completed = transmitted_set(transcript) == live
    return GameResult(transcript, len(transcript.rounds), completed, live)


def worst_case_rounds(
    strategy: Strategy,
    config: GameConfig,
    round_cap: int | None = None,
    *,
    budget: int = DEFAULT_ENUMERATION_BUDGET,
) -> tuple[int, StationSet]:
    """Maximum rounds_used over every size-d live set, with a witness.

    Live sets are enumerated in ascending id order and the first maximum is
    kept, so the witness is deterministic.
    """
    total = math.comb(config.n, config.d)
    if total > budget:
        raise BudgetExceeded(
            f"C({config.n},{config.d}) = {total} live sets exceed budget {budget}"
        )
    worst = -1
    witness = StationSet()
    for ids in combinations(range(1, config.n + 1), config.d):
        live = StationSet.from_ids(ids)
        result = run_fixed(strategy, config, live, round_cap)
        if result.rounds_used > worst:
            worst, witness = result.rounds_used, live
    return worst, witness


def run_adversarial(
    strategy: Strategy,
    adversary: Adversary,
    config: GameConfig,
    round_cap: int | None = None,
) -> GameResult:
    """Play one game with feedback chosen by an adversary.

    The witness is the least surviving candidate; replaying it as a fixed
    live set reproduces the same transcript round for round.
    """
    cap = default_round_cap(config) if round_cap is None else round_cap
    state = initial_state(config)
    transcript = Transcript(config)
    while len(state.transmitted) < config.d:
        action = _checked_query(strategy, config, transcript, cap)
        if action is None:
            break
        feedback = adversary(state, action, transcript)
        try:
            state = refine(state, action, feedback)
        except Inconsistent as exc:
            raise AdversaryInconsistent(str(exc)) from exc
        transcript = transcript.extend(action, feedback)
    witness = min(state.candidates)
    completed = transmitted_set(transcript) == witness
    return GameResult(transcript, len(transcript.rounds), completed, witness)


def game_result_to_doc(result: GameResult) -> dict[str, object]:
    """Transcript document extended with the engine's summary fields."""
    doc = transcript_to_doc(result.transcript, result.witness_live)
    doc["rounds_used"] = result.rounds_used
    doc["completed"] = result.completed
    doc["witness_live"] = list(result.witness_live)
    return doc
