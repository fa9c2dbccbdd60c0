"""Instrumented scalar multiplication k*P.

Counting convention: putting the first value into the empty accumulator is
free, every doubling is one doubling, every addition or subtraction of a
point is one addition, negation is free. Table building is reported on its
own and never folded into the multiplication's counts.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .curve import (
    INFINITY,
    CurveParams,
    CurvePoint,
    NotOnCurveError,
    _add_xy,
    _double_xy,
    _neg_xy,
    from_xy,
    on_curve,
    to_xy,
)
from .recoding import (
    SignedWindowSequence,
    _check_psize,
    ones_complement_recode,
    paper_precomp,
    recode_runs,
    sliding_windows,
    table_size,
)

STRATEGIES = ("binary", "runs", "window", "ones-complement")


@dataclass
class CostReport:
    strategy: str
    doublings: int = 0
    additions: int = 0
    table_size: int = 0
    paper_precomp: int = 0
    chain: list[int] = field(default_factory=list, repr=False)

    @property
    def group_ops(self) -> int:
        return self.doublings + self.additions


@dataclass(frozen=True)
class WindowTable:
    """Odd multiples P, 3P, ..., (2^psize - 1)P; ``entries[i] == (2i+1)P``.

    Entries are kept as raw coordinates and wrapped into points on access.
    """

    base: CurvePoint
    psize: int
    curve: CurveParams = field(repr=False)
    _xy: tuple = field(repr=False, compare=False, default=())

    @property
    def entries(self) -> tuple[CurvePoint, ...]:
        return tuple(from_xy(e, self.curve) for e in self._xy)

    def odd_multiple(self, d: int) -> CurvePoint:
        if d < 1 or d % 2 == 0 or d >= 1 << self.psize:
            raise ValueError(f"{d} is not an odd multiple held by a psize-{self.psize} table")
        return from_xy(self._xy[(d - 1) // 2], self.curve)


def _check_point(P: CurvePoint, E: CurveParams) -> None:
    if not on_curve(P, E):
        raise NotOnCurveError(f"{P!r} is not on {E!r}")


def _check_scalar(k: int) -> None:
    if not isinstance(k, int) or k < 0:
        raise ValueError(f"scalar must be a non-negative integer, got {k!r}")


def mul_double_add(k: int, P: CurvePoint, E: CurveParams) -> tuple[CurvePoint, CostReport]:
    """Left-to-right binary double-and-add. The reference every other strategy is checked against."""
    _check_scalar(k)
    _check_point(P, E)
    rep = CostReport("binary")
    if k == 0:
        return INFINITY, rep
    a, p = E._a, E._p
    base = to_xy(P)
    acc, m = base, 1
    rep.chain.append(m)
    for bit in bin(k)[3:]:
        acc = _double_xy(acc, a, p)
        m *= 2
        rep.doublings += 1
        rep.chain.append(m)
        if bit == "1":
            acc = _add_xy(acc, base, a, p)
            m += 1
            rep.additions += 1
            rep.chain.append(m)
    return from_xy(acc, E), rep


def mul_runs(k: int, P: CurvePoint, E: CurveParams) -> tuple[CurvePoint, CostReport]:
    """Evaluate the run-substituted signed binary form, adding or subtracting P per digit."""
    _check_scalar(k)
    _check_point(P, E)
    rep = CostReport("runs")
    if k == 0:
        return INFINITY, rep
    a, p = E._a, E._p
    base = to_xy(P)
    minus = _neg_xy(base, p)
    digits = recode_runs(k).digits
    acc, m = base, 1
    rep.chain.append(m)
    for d in digits[1:]:
        acc = _double_xy(acc, a, p)
        m *= 2
        rep.doublings += 1
        rep.chain.append(m)
        if d:
            acc = _add_xy(acc, base if d > 0 else minus, a, p)
            m += d
            rep.additions += 1
            rep.chain.append(m)
    return from_xy(acc, E), rep


def precompute_table(P: CurvePoint, psize: int, E: CurveParams) -> tuple[WindowTable, CostReport]:
    """Build 2P once, then 3P, 5P, ... by successive additions of 2P."""
    _check_psize(psize)
    _check_point(P, E)
    a, p = E._a, E._p
    base = to_xy(P)
    rep = CostReport("precompute", table_size=table_size(psize), paper_precomp=paper_precomp(psize))
    twice = _double_xy(base, a, p)
    rep.doublings += 1
    xy = [base]
    for _ in range(table_size(psize)):
        xy.append(_add_xy(xy[-1], twice, a, p))
        rep.additions += 1
    return WindowTable(P, psize, E, tuple(xy)), rep


def run_sequence(
    seq: SignedWindowSequence, table: WindowTable, E: CurveParams, strategy: str
) -> tuple[CurvePoint, CostReport]:
    """Execute a window program against an odd-multiple table."""
    if table.psize < seq.psize:
        raise ValueError(f"table built for psize {table.psize} cannot serve psize {seq.psize}")
    a, p = E._a, E._p
    xy = table._xy

    def lookup(d):
        e = xy[(abs(d) - 1) // 2]
        return e if d > 0 else _neg_xy(e, p)

    rep = CostReport(strategy, table_size=table_size(seq.psize), paper_precomp=paper_precomp(seq.psize))
    m = seq.leading_digit
    acc = lookup(m)
    rep.chain.append(m)
    for shift, d in seq.steps:
        for _ in range(shift):
            acc = _double_xy(acc, a, p)
            m *= 2
            rep.chain.append(m)
        rep.doublings += shift
        if d:
            acc = _add_xy(acc, lookup(d), a, p)
            m += d
            rep.additions += 1
            rep.chain.append(m)
    return from_xy(acc, E), rep


def _windowed(k, P, psize, E, table, recode, strategy):
    _check_scalar(k)
    _check_psize(psize)
    if table is None:
        table, _ = precompute_table(P, psize, E)
    else:
        if table.base != P:
            raise ValueError("table was built for a different base point")
        _check_point(P, E)
    if k == 0:
        return INFINITY, CostReport(strategy, table_size=table_size(psize), paper_precomp=paper_precomp(psize))
    return run_sequence(recode(k, psize), table, E, strategy)


def mul_window(
    k: int, P: CurvePoint, psize: int, E: CurveParams, table: WindowTable | None = None
) -> tuple[CurvePoint, CostReport]:
    """Odd sliding-window multiplication. Pass a prebuilt ``table`` (of this or
    a larger psize) to amortise precomputation across calls."""
    return _windowed(k, P, psize, E, table, sliding_windows, "window")


def mul_signed_window(
    k: int, P: CurvePoint, psize: int, E: CurveParams, table: WindowTable | None = None
) -> tuple[CurvePoint, CostReport]:
    """1's-complement signed windows; negative digits use the negated table entry."""
    return _windowed(k, P, psize, E, table, ones_complement_recode, "ones-complement")


def multiply(
    k: int,
    P: CurvePoint,
    E: CurveParams,
    strategy: str = "binary",
    psize: int = 4,
    table: WindowTable | None = None,
) -> tuple[CurvePoint, CostReport]:
    if strategy == "binary":
        return mul_double_add(k, P, E)
    if strategy == "runs":
        return mul_runs(k, P, E)
    if strategy == "window":
        return mul_window(k, P, psize, E, table)
    if strategy == "ones-complement":
        return mul_signed_window(k, P, psize, E, table)
    raise ValueError(f"unknown strategy {strategy!r}; choose from {', '.join(STRATEGIES)}")
