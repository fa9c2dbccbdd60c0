"""Mamdani controller that nudges the window size up, down, or leaves it.

Three inputs on [0, 1] (storage room, pre-computing load, doubling load),
each with Min / Intermediate / Max triangles; one output on [-1, 1] with
Down / Stay / Up triangles. Rule strength is weight * min(antecedent
memberships), rule outputs are combined with max, and the crisp value is the
centroid of the aggregate.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field, replace
from enum import Enum
from importlib import resources
from pathlib import Path
from typing import Iterable, Sequence

INPUT_NAMES = ("storage_room", "pre_computing", "doubling")
PSIZE_MIN, PSIZE_MAX = 2, 12


class State(Enum):
    MIN = "Mi"
    INTERMEDIATE = "I"
    MAX = "Mx"


class Action(Enum):
    DOWN = "D"
    STAY = "S"
    UP = "U"


@dataclass(frozen=True)
class MembershipFunction:
    left: float
    peak: float
    right: float

    def __post_init__(self):
        if not self.left <= self.peak <= self.right:
            raise ValueError(f"need left <= peak <= right, got {self}")

    def __call__(self, x: float) -> float:
        return membership_eval(self, x)

    def breakpoints(self) -> tuple[float, float, float]:
        return self.left, self.peak, self.right


def membership_eval(mf: MembershipFunction, x: float) -> float:
    if x == mf.peak:
        return 1.0
    if x <= mf.left or x >= mf.right:
        return 0.0
    if x < mf.peak:
        return (x - mf.left) / (mf.peak - mf.left)
    return (mf.right - x) / (mf.right - mf.peak)


INPUT_SETS = {
    State.MIN: MembershipFunction(-0.5, 0.0, 0.5),
    State.INTERMEDIATE: MembershipFunction(0.0, 0.5, 1.0),
    State.MAX: MembershipFunction(0.5, 1.0, 1.5),
}
OUTPUT_SETS = {
    Action.DOWN: MembershipFunction(-2.0, -1.0, 0.0),
    Action.STAY: MembershipFunction(-1.0, 0.0, 1.0),
    Action.UP: MembershipFunction(0.0, 1.0, 2.0),
}
OUTPUT_RANGE = (-1.0, 1.0)


def _clamp01(v: float) -> float:
    return min(1.0, max(0.0, float(v)))


@dataclass(frozen=True)
class ControllerInputs:
    storage_room: float = 0.0
    pre_computing: float = 0.0
    doubling: float = 0.0

    def __post_init__(self):
        for name in INPUT_NAMES:
            object.__setattr__(self, name, _clamp01(getattr(self, name)))

    def as_tuple(self) -> tuple[float, float, float]:
        return self.storage_room, self.pre_computing, self.doubling


@dataclass(frozen=True)
class FuzzyRule:
    # None in the storage slot means "any"
    antecedent: tuple[State | None, State | None, State | None]
    consequent: Action
    weight: float = 1.0
    printed: str = ""

    def __post_init__(self):
        if not 0.0 < self.weight <= 1.0:
            raise ValueError(f"rule weight must lie in (0, 1], got {self.weight}")
        if len(self.antecedent) != 3:
            raise ValueError("a rule needs three antecedent slots")

    def strength(self, inputs: ControllerInputs) -> float:
        mu = 1.0
        for state, x in zip(self.antecedent, inputs.as_tuple()):
            if state is not None:
                mu = min(mu, INPUT_SETS[state](x))
        return self.weight * mu

    def to_line(self) -> str:
        toks = ["any" if s is None else s.value for s in self.antecedent]
        line = f"{' '.join(toks)} -> {self.consequent.value}"
        if self.weight != 1.0:
            line += f" {self.weight:g}"
        return line


@dataclass(frozen=True)
class RuleBase:
    rules: tuple[FuzzyRule, ...]
    mode: str = "custom"

    def __len__(self) -> int:
        return len(self.rules)

    def with_weights(self, weights: dict[int, float]) -> RuleBase:
        """Copy with 1-based rule indices reweighted."""
        rules = list(self.rules)
        for idx, w in weights.items():
            rules[idx - 1] = replace(rules[idx - 1], weight=w)
        return RuleBase(tuple(rules), self.mode)

    def scaled(self, factor: float) -> RuleBase:
        return RuleBase(tuple(replace(r, weight=r.weight * factor) for r in self.rules), self.mode)


# The 26-rule base exactly as originally written. Three rows carry a stray third token (L, A, L); they are
# read as the only state missing from their block of three.
TABLE_I_PRINTED = (
    "Mi Mi Mi U", "Mi Mi I U", "Mi Mi Mx S",
    "Mi I Mi U", "Mi I I U", "Mi I Mx S",
    "Mi Mx L U", "Mi Mx I S", "Mi Mx Mx S",
    "I Mi Mi U", "I Mi A U", "I Mi Mx S",
    "I I L U", "I I I S", "I I Mx D",
    "I Mx I S", "I Mx Mx S",
    "Mx Mi Mi S", "Mx Mi I S", "Mx Mi Mx D",
    "Mx I Mi S", "Mx I I S", "Mx I Mx D",
    "Mx Mx Mi D", "Mx Mx I D", "Mx Mx Mx D",
)
TABLE_I_CORRECTIONS = {7: "Mi Mx Mi U", 11: "I Mi I U", 13: "I I Mi U"}

# (PreComputing, Doubling) -> WindowSize, storage ignored
DOMINANT_9 = (
    ("Mi", "Mi", "U"), ("Mi", "I", "U"), ("Mi", "Mx", "S"),
    ("I", "Mi", "U"), ("I", "I", "U"), ("I", "Mx", "S"),
    ("Mx", "Mi", "U"), ("Mx", "I", "S"), ("Mx", "Mx", "S"),
)

# rules given weight 0.5 in the reweighting experiment
HALF_WEIGHT_RULES = (1, 5, 10, 13, 14, 15, 16, 18, 20, 21, 22, 23, 25, 26)


def _state(tok: str) -> State | None:
    if tok.lower() == "any":
        return None
    try:
        return State(tok)
    except ValueError:
        raise ValueError(f"unknown state token {tok!r} (expected Mi, I, Mx or any)") from None


def full26() -> RuleBase:
    rules = []
    for i, printed in enumerate(TABLE_I_PRINTED, start=1):
        s, pc, d, act = TABLE_I_CORRECTIONS.get(i, printed).split()
        rules.append(FuzzyRule((_state(s), _state(pc), _state(d)), Action(act), 1.0, printed))
    return RuleBase(tuple(rules), "full26")


def dominant9() -> RuleBase:
    rules = tuple(
        FuzzyRule((None, State(pc), State(d)), Action(act)) for pc, d, act in DOMINANT_9
    )
    return RuleBase(rules, "dominant9")


def rulebase(mode: str) -> RuleBase:
    if mode == "full26":
        return full26()
    if mode == "dominant9":
        return dominant9()
    raise ValueError(f"unknown rule-base mode {mode!r}")


def parse_rules(text: str, mode: str = "custom") -> RuleBase:
    """One rule per line: ``<storage> <precomputing> <doubling> -> <action> [weight]``."""
    rules = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        lhs, sep, rhs = line.partition("->")
        ants, cons = lhs.split(), rhs.split()
        if not sep or len(ants) != 3 or len(cons) not in (1, 2):
            raise ValueError(f"line {lineno}: malformed rule {raw!r}")
        try:
            action = Action(cons[0])
        except ValueError:
            raise ValueError(f"line {lineno}: unknown action {cons[0]!r}") from None
        weight = float(cons[1]) if len(cons) == 2 else 1.0
        rules.append(FuzzyRule(tuple(_state(t) for t in ants), action, weight))
    return RuleBase(tuple(rules), mode)


def format_rules(rb: RuleBase) -> str:
    return "".join(r.to_line() + "\n" for r in rb.rules)


def load_rules(path: str | Path) -> RuleBase:
    path = Path(path)
    return parse_rules(path.read_text(), mode=path.stem)


def bundled_rules(mode: str) -> RuleBase:
    text = resources.files("fuzzyecc.data").joinpath(f"{mode}.rules").read_text()
    return parse_rules(text, mode)


# -- inference -------------------------------------------------------------


@dataclass(frozen=True)
class ControllerConfig:
    deadband: float = 0.15
    # "product" scales each output set by its strength; "clip" cuts it off there
    implication: str = "product"
    # None: exact centroid of the piecewise-linear aggregate; N: discrete centroid on N samples
    centroid_samples: int | None = None

    def __post_init__(self):
        if self.implication not in ("product", "clip"):
            raise ValueError(f"implication must be 'product' or 'clip', got {self.implication!r}")
        if self.centroid_samples is not None and self.centroid_samples < 2:
            raise ValueError("centroid_samples must be at least 2")
        if self.deadband < 0:
            raise ValueError("deadband must be non-negative")


DEFAULT_CONFIG = ControllerConfig()


@dataclass(frozen=True)
class ControllerDecision:
    crisp: float
    action: Action
    fired: tuple[tuple[int, float], ...] = ()
    no_activation: bool = False


def _implied(action: Action, h: float, implication: str):
    mf = OUTPUT_SETS[action]
    if implication == "product":
        return lambda x: h * mf(x)
    return lambda x: min(h, mf(x))


def _knots(action: Action, h: float, implication: str) -> list[float]:
    mf = OUTPUT_SETS[action]
    pts = list(mf.breakpoints())
    if implication == "clip" and h < 1.0:
        pts.append(mf.left + h * (mf.peak - mf.left))
        pts.append(mf.right - h * (mf.right - mf.peak))
    return pts


def _exact_centroid(funcs, knots: Iterable[float]) -> float | None:
    lo, hi = OUTPUT_RANGE
    xs = sorted({x for x in knots if lo < x < hi} | {lo, hi})
    # split further wherever two pieces cross, so max() is one line per segment
    refined = [xs[0]]
    for x0, x1 in zip(xs, xs[1:]):
        v0 = [f(x0) for f in funcs]
        v1 = [f(x1) for f in funcs]
        cuts = []
        for i in range(len(funcs)):
            for j in range(i + 1, len(funcs)):
                d0, d1 = v0[i] - v0[j], v1[i] - v1[j]
                if d0 * d1 < 0:
                    cuts.append(x0 + (x1 - x0) * d0 / (d0 - d1))
        refined.extend(sorted(cuts))
        refined.append(x1)
    area = moment = 0.0
    prev_x = refined[0]
    prev_y = max(f(prev_x) for f in funcs)
    for x in refined[1:]:
        y = max(f(x) for f in funcs)
        h = x - prev_x
        area += h * (prev_y + y) / 2
        moment += h * (prev_x * (2 * prev_y + y) + x * (prev_y + 2 * y)) / 6
        prev_x, prev_y = x, y
    if area <= 0:
        return None
    return moment / area


def _discrete_centroid(funcs, n: int) -> float | None:
    lo, hi = OUTPUT_RANGE
    num = den = 0.0
    for i in range(n):
        x = lo + (hi - lo) * i / (n - 1)
        mu = max(f(x) for f in funcs)
        num += x * mu
        den += mu
    if den <= 0:
        return None
    return num / den


def classify(crisp: float, deadband: float = DEFAULT_CONFIG.deadband) -> Action:
    if crisp > deadband:
        return Action.UP
    if crisp < -deadband:
        return Action.DOWN
    return Action.STAY


def infer(
    rb: RuleBase, inputs: ControllerInputs, config: ControllerConfig = DEFAULT_CONFIG
) -> ControllerDecision:
    fired = []
    strongest: dict[Action, float] = {}
    for idx, rule in enumerate(rb.rules, start=1):
        h = rule.strength(inputs)
        if h > 0:
            fired.append((idx, h))
            strongest[rule.consequent] = max(strongest.get(rule.consequent, 0.0), h)
    if not strongest:
        return ControllerDecision(0.0, Action.STAY, (), no_activation=True)
    # max over rules sharing a consequent only ever keeps the strongest one
    funcs = [_implied(act, h, config.implication) for act, h in strongest.items()]
    if config.centroid_samples is None:
        knots = [x for act, h in strongest.items() for x in _knots(act, h, config.implication)]
        crisp = _exact_centroid(funcs, knots)
    else:
        crisp = _discrete_centroid(funcs, config.centroid_samples)
    if crisp is None:
        return ControllerDecision(0.0, Action.STAY, tuple(fired), no_activation=True)
    return ControllerDecision(crisp, classify(crisp, config.deadband), tuple(fired))


def decide_window(
    inputs: ControllerInputs,
    current_psize: int,
    rb: RuleBase,
    config: ControllerConfig = DEFAULT_CONFIG,
) -> int:
    if not PSIZE_MIN <= current_psize <= PSIZE_MAX:
        raise ValueError(f"psize must lie in [{PSIZE_MIN}, {PSIZE_MAX}], got {current_psize}")
    return step_psize(current_psize, infer(rb, inputs, config).action)


def step_psize(current_psize: int, action: Action) -> int:
    delta = {Action.UP: 1, Action.DOWN: -1, Action.STAY: 0}[action]
    return min(PSIZE_MAX, max(PSIZE_MIN, current_psize + delta))


# -- surfaces --------------------------------------------------------------


@dataclass
class SurfaceGrid:
    x_name: str
    y_name: str
    held: tuple[str, float]
    rows: list[tuple[float, float, float]] = field(default_factory=list)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\r\n")
        w.writerow(["input1", "input2", "crisp"])
        for x, y, z in self.rows:
            w.writerow([repr(x), repr(y), repr(z)])
        return buf.getvalue()


def read_surface_csv(text: str) -> list[tuple[float, float, float]]:
    reader = csv.reader(io.StringIO(text))
    header = next(reader)
    if header != ["input1", "input2", "crisp"]:
        raise ValueError(f"unexpected surface header {header}")
    return [tuple(float(v) for v in row) for row in reader if row]


def surface_grid(
    rb: RuleBase,
    fixed: tuple[str, float] | None = None,
    resolution: int = 51,
    free: Sequence[str] | None = None,
    config: ControllerConfig = DEFAULT_CONFIG,
) -> SurfaceGrid:
    """Crisp output over the unit square of two inputs, the third held fixed
    (at 0.5 when ``fixed`` is not given)."""
    if resolution < 2:
        raise ValueError("resolution must be at least 2")
    if fixed is not None:
        name, value = fixed
        if name not in INPUT_NAMES:
            raise ValueError(f"unknown input {name!r}")
        free_names = [n for n in INPUT_NAMES if n != name]
        if free is not None and sorted(free) != sorted(free_names):
            raise ValueError("free inputs must be the two not held fixed")
        held = (name, float(value))
    else:
        free_names = list(free) if free is not None else ["storage_room", "pre_computing"]
        if len(free_names) != 2 or not set(free_names) <= set(INPUT_NAMES) or free_names[0] == free_names[1]:
            raise ValueError(f"need two distinct free inputs from {INPUT_NAMES}")
        (other,) = set(INPUT_NAMES) - set(free_names)
        held = (other, 0.5)
    xn, yn = free_names
    grid = SurfaceGrid(xn, yn, held)
    ticks = [i / (resolution - 1) for i in range(resolution)]
    for x in ticks:
        for y in ticks:
            inp = ControllerInputs(**{xn: x, yn: y, held[0]: held[1]})
            grid.rows.append((x, y, infer(rb, inp, config).crisp))
    return grid
