"""Closed-loop window sizing: the fuzzy controller picks the psize for each
scalar multiplication of a workload, subject to a table-memory budget.

How the controller's three inputs are measured is a modelling choice made
here: storage pressure is the fraction of table memory in use, and the two
load signals are exponential moving averages of each step's share of
table-building and doubling operations.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from pathlib import Path

from .curve import CurveParams, CurvePoint
from .fuzzy import (
    DEFAULT_CONFIG,
    ControllerConfig,
    ControllerDecision,
    ControllerInputs,
    RuleBase,
    infer,
    rulebase,
    step_psize,
)
from .recoding import PSIZE_MAX, PSIZE_MIN
from .scalarmul import CostReport, WindowTable, mul_window, precompute_table


def table_bytes(psize: int, field_bytes: int) -> int:
    """Memory for the odd multiples P..(2^psize - 1)P, two coordinates each."""
    return (1 << (psize - 1)) * 2 * field_bytes


def largest_fitting_psize(capacity: int, field_bytes: int, psize: int = PSIZE_MAX) -> int | None:
    while psize >= PSIZE_MIN:
        if table_bytes(psize, field_bytes) <= capacity:
            return psize
        psize -= 1
    return None


@dataclass(frozen=True)
class SimConfig:
    capacity: int
    alpha: float = 0.2
    mode: str = "full26"
    initial_psize: int = 4
    adaptive: bool = True
    controller: ControllerConfig = DEFAULT_CONFIG

    def __post_init__(self):
        if not 0.0 < self.alpha <= 1.0:
            raise ValueError(f"alpha must lie in (0, 1], got {self.alpha}")
        if not PSIZE_MIN <= self.initial_psize <= PSIZE_MAX:
            raise ValueError(f"initial psize out of range: {self.initial_psize}")
        if self.capacity <= 0:
            raise ValueError("capacity must be positive")


@dataclass(frozen=True)
class NodeState:
    storage_capacity: int
    field_bytes: int
    table_bytes_used: int = 0
    ema_precompute_load: float = 0.0
    ema_doubling_load: float = 0.0
    current_psize: int = 4
    table: WindowTable | None = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        if self.table_bytes_used > self.storage_capacity:
            raise ValueError("table memory exceeds capacity")
        for name in ("ema_precompute_load", "ema_doubling_load"):
            object.__setattr__(self, name, min(1.0, max(0.0, getattr(self, name))))


def fresh_state(config: SimConfig, E: CurveParams) -> NodeState:
    fb = E.field.byte_length
    if largest_fitting_psize(config.capacity, fb) is None:
        raise ValueError(
            f"capacity {config.capacity} B cannot hold even a psize-{PSIZE_MIN} table "
            f"({table_bytes(PSIZE_MIN, fb)} B)"
        )
    return NodeState(config.capacity, fb, current_psize=config.initial_psize)


def derive_inputs(state: NodeState) -> ControllerInputs:
    # larger storage input = less room left (the Min state means little pressure)
    return ControllerInputs(
        storage_room=state.table_bytes_used / state.storage_capacity,
        pre_computing=state.ema_precompute_load,
        doubling=state.ema_doubling_load,
    )


@dataclass
class StepRecord:
    k: int
    psize: int
    cost: CostReport
    table_cost: CostReport | None
    inputs: ControllerInputs
    decision: ControllerDecision | None
    forced: bool = False


@dataclass
class AdaptiveReport:
    records: list[StepRecord] = field(default_factory=list)

    @property
    def totals(self) -> dict[str, int]:
        t = dict(doublings=0, additions=0, table_doublings=0, table_additions=0, rebuilds=0)
        for r in self.records:
            t["doublings"] += r.cost.doublings
            t["additions"] += r.cost.additions
            if r.table_cost is not None:
                t["table_doublings"] += r.table_cost.doublings
                t["table_additions"] += r.table_cost.additions
                t["rebuilds"] += 1
        return t

    def trajectory(self) -> list[int]:
        return [r.psize for r in self.records]


def _ema(old: float, sample: float, alpha: float) -> float:
    return (1 - alpha) * old + alpha * sample


def step(
    state: NodeState,
    k: int,
    P: CurvePoint,
    E: CurveParams,
    rb: RuleBase | None,
    alpha: float = 0.2,
    controller: ControllerConfig = DEFAULT_CONFIG,
) -> tuple[CurvePoint, NodeState, StepRecord]:
    """One multiplication. ``rb=None`` keeps the current psize (controller off)."""
    inputs = derive_inputs(state)
    decision = None
    psize = state.current_psize
    if rb is not None:
        decision = infer(rb, inputs, controller)
        psize = step_psize(psize, decision.action)
    fit = largest_fitting_psize(state.storage_capacity, state.field_bytes, psize)
    if fit is None:
        raise ValueError("capacity cannot hold any table")
    forced = fit < psize
    psize = fit

    table, table_cost = state.table, None
    if table is None or table.psize != psize or table.base != P:
        table, table_cost = precompute_table(P, psize, E)
    Q, cost = mul_window(k, P, psize, E, table)

    table_ops = table_cost.group_ops if table_cost else 0
    total = table_ops + cost.group_ops
    pre_share = table_ops / total if total else 0.0
    dbl_share = cost.doublings / total if total else 0.0
    new_state = replace(
        state,
        table_bytes_used=table_bytes(psize, state.field_bytes),
        ema_precompute_load=_ema(state.ema_precompute_load, pre_share, alpha),
        ema_doubling_load=_ema(state.ema_doubling_load, dbl_share, alpha),
        current_psize=psize,
        table=table,
    )
    return Q, new_state, StepRecord(k, psize, cost, table_cost, inputs, decision, forced)


def simulate(
    workload: list[int],
    P: CurvePoint,
    E: CurveParams,
    config: SimConfig,
    rules: RuleBase | None = None,
) -> tuple[list[CurvePoint], AdaptiveReport, NodeState]:
    """Run the workload; ``rules`` overrides the rule base named by ``config.mode``."""
    rb = None
    if config.adaptive:
        rb = rules if rules is not None else rulebase(config.mode)
    state = fresh_state(config, E)
    report = AdaptiveReport()
    points = []
    for k in workload:
        Q, state, rec = step(state, k, P, E, rb, config.alpha, config.controller)
        points.append(Q)
        report.records.append(rec)
    return points, report, state


def parse_workload(text: str) -> list[int]:
    """One scalar per line, decimal or 0x-prefixed hex; '#' comments allowed."""
    out = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            k = int(line, 16) if line.lower().startswith("0x") else int(line, 10)
        except ValueError:
            raise ValueError(f"line {lineno}: not an integer: {line!r}") from None
        if k < 0:
            raise ValueError(f"line {lineno}: negative scalar")
        out.append(k)
    return out


def load_workload(path: str | Path) -> list[int]:
    return parse_workload(Path(path).read_text())
