"""Side-by-side report: measured strategy costs, exact optima, claimed bounds.

One row per instance (n, d); flags mark rows where a claimed bound exceeds
the exact optimum (CLAIM_EXCEEDS_OPT) or where the outcome-counting lower
bound does (LB_VIOLATION, which genuinely occurs for d = 1, n >= 4).
"""

from __future__ import annotations

from dataclasses import dataclass

from .bounds import (
    GrowthFactor,
    claimed_bound_analytic,
    claimed_bound_combinatorial,
    info_lower_bound,
)
from .channel import GameConfig
from .engine import worst_case_rounds
from .errors import BudgetExceeded, DomainError
from .oracle import DEFAULT_ORACLE_CAP, exact_optimal_rounds
from .strategies import LINEAR_SCAN, TREE_SPLIT

CSV_HEADER = (
    "n,d,oracle_opt,tree_worst,linear_worst,info_lb,"
    "claimed_factorial,claimed_power,claimed_analytic,flags"
)

FLAG_CLAIM_EXCEEDS_OPT = "CLAIM_EXCEEDS_OPT"
FLAG_LB_VIOLATION = "LB_VIOLATION"


@dataclass(frozen=True)
class ReportRow:
    n: int
    d: int
    oracle_opt: int | None
    tree_worst: int
    linear_worst: int
    info_lb: int
    claimed_factorial: int
    claimed_power: int
    claimed_analytic: int
    flags: tuple[str, ...]
    notes: tuple[str, ...] = ()


def _build_row(config: GameConfig, oracle_cap: tuple[int, int]) -> ReportRow:
    notes: list[str] = []
    try:
        oracle_opt: int | None = exact_optimal_rounds(config, cap=oracle_cap)
    except BudgetExceeded as exc:
        oracle_opt = None
        notes.append(f"oracle_opt absent: BudgetExceeded: {exc}")
    tree_worst = worst_case_rounds(TREE_SPLIT, config)[0]
    linear_worst = worst_case_rounds(LINEAR_SCAN, config)[0]
    info_lb = info_lower_bound(config.n, config.d)
    claimed_factorial = claimed_bound_combinatorial(config.n, config.d, GrowthFactor.FACTORIAL)
    claimed_power = claimed_bound_combinatorial(config.n, config.d, GrowthFactor.POWER)
    claimed_analytic = claimed_bound_analytic(config.n, config.d)
    flags: list[str] = []
    if oracle_opt is not None:
        claims = (claimed_factorial, claimed_power, claimed_analytic)
        if any(claim > oracle_opt for claim in claims):
            flags.append(FLAG_CLAIM_EXCEEDS_OPT)
        if info_lb > oracle_opt:
            flags.append(FLAG_LB_VIOLATION)
    return ReportRow(
        n=config.n,
        d=config.d,
        oracle_opt=oracle_opt,
        tree_worst=tree_worst,
        linear_worst=linear_worst,
        info_lb=info_lb,
        claimed_factorial=claimed_factorial,
        claimed_power=claimed_power,
        claimed_analytic=claimed_analytic,
        flags=tuple(flags),
        notes=tuple(notes),
    )


def generate_report(
    n_max: int,
    d_max: int,
    oracle_cap: tuple[int, int] = DEFAULT_ORACLE_CAP,
) -> list[ReportRow]:
    """Rows for every 2 <= n <= n_max, 1 <= d <= min(n, d_max).

    The grid starts at n = 2 because the analytic threshold is undefined at
    n = 1.  Per-cell oracle failures beyond the cap become absent values with
    a note; nothing aborts the grid.
    """
    if n_max < 2:
        raise DomainError(f"n_max must be at least 2, got {n_max}")
    if d_max < 1:
        raise DomainError(f"d_max must be at least 1, got {d_max}")
    rows = []
    for n in range(2, n_max + 1):
        for d in range(1, min(n, d_max) + 1):
            rows.append(_build_row(GameConfig(n, d), oracle_cap))
    return rows


def report_to_csv(rows: list[ReportRow]) -> str:
    """Deterministic CSV: absent values render empty, flags join with ';'."""
    lines = [CSV_HEADER]
    for row in rows:
        opt = "" if row.oracle_opt is None else str(row.oracle_opt)
        lines.append(
            f"{row.n},{row.d},{opt},{row.tree_worst},{row.linear_worst},{row.info_lb},"
            f"{row.claimed_factorial},{row.claimed_power},{row.claimed_analytic},"
            f"{';'.join(row.flags)}"
        )
    return "\n".join(lines) + "\n"
