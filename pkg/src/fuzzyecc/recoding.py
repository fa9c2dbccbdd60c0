"""Scalar recodings: plain binary, run substitution, odd sliding windows and
the 1's-complement signed windows.

All digit strings are most-significant digit first.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass

PSIZE_MIN = 2
PSIZE_MAX = 12


@dataclass(frozen=True)
class SignedDigitString:
    digits: tuple[int, ...]

    @property
    def value(self) -> int:
        v = 0
        for d in self.digits:
            v = 2 * v + d
        return v

    @property
    def weight(self) -> int:
        return sum(1 for d in self.digits if d)

    def __len__(self) -> int:
        return len(self.digits)

    def __str__(self) -> str:
        return "".join({1: "1", 0: "0", -1: "T"}[d] for d in self.digits)


@dataclass(frozen=True)
class SignedWindowSequence:
    """Horner program for k: start from ``leading_digit``; for each
    ``(shift, digit)`` step double ``shift`` times, then add ``digit``
    (a zero digit marks trailing doublings only).
    """

    leading_digit: int
    steps: tuple[tuple[int, int], ...]
    psize: int
    leading_width: int = 1
    signed: bool = False

    def evaluate(self) -> int:
        acc = self.leading_digit
        for shift, d in self.steps:
            acc = (acc << shift) + d
        return acc

    @property
    def digits(self) -> list[int]:
        """Window digits in evaluation order, leading one included."""
        return [self.leading_digit] + [d for _, d in self.steps if d]

    def chain(self) -> list[int]:
        """Accumulator multiples after every doubling and every addition."""
        acc = self.leading_digit
        out = [acc]
        for shift, d in self.steps:
            for _ in range(shift):
                acc *= 2
                out.append(acc)
            if d:
                acc += d
                out.append(acc)
        return out


@dataclass(frozen=True)
class CostPrediction:
    doublings: int
    additions: int
    table_size: int
    paper_precomp: int


def _check_k(k: int) -> None:
    if not isinstance(k, int) or k < 1:
        raise ValueError(f"scalar must be a positive integer, got {k!r}")


def _check_psize(psize: int) -> None:
    if not PSIZE_MIN <= psize <= PSIZE_MAX:
        raise ValueError(f"psize must lie in [{PSIZE_MIN}, {PSIZE_MAX}], got {psize}")


def table_size(psize: int) -> int:
    """Odd multiples 3P, 5P, ..., (2^psize - 1)P that must be stored."""
    return (1 << (psize - 1)) - 1


def paper_precomp(psize: int) -> int:
    """Pre-computation count as tabulated for the pairing strategy."""
    return (1 << psize) - 1


def binary_digits(k: int) -> SignedDigitString:
    _check_k(k)
    return SignedDigitString(tuple(map(int, bin(k)[2:])))


def _strip(digits: list[int]) -> tuple[int, ...]:
    i = 0
    while i < len(digits) - 1 and digits[i] == 0:
        i += 1
    return tuple(digits[i:])


def reduce_adjacent(digits: list[int]) -> list[int]:
    """Rewrite adjacent opposite-sign pairs (d, -d) as (0, d) until none remain.

    Each rewrite keeps the value and drops the weight by one.
    """
    out = list(digits)
    i = 0
    while i < len(out) - 1:
        # a rewrite can only create a new pair to the right, so one pass suffices
        if out[i] and out[i] == -out[i + 1]:
            out[i], out[i + 1] = 0, out[i]
        i += 1
    return out


def recode_runs(k: int) -> SignedDigitString:
    """Replace every maximal run of two or more 1-bits by 2^(top+1) - 2^bottom."""
    _check_k(k)
    n = k.bit_length()
    lsb = [0] * (n + 1)  # index = bit position
    i = 0
    while i < n:
        if not (k >> i) & 1:
            i += 1
            continue
        j = i
        while j + 1 < n and (k >> (j + 1)) & 1:
            j += 1
        if j > i:
            lsb[j + 1] = 1
            lsb[i] = -1
        else:
            lsb[i] = 1
        i = j + 1
    digits = reduce_adjacent(lsb[::-1])
    return SignedDigitString(_strip(digits))


def windows_from_digits(digits, psize: int, signed: bool = False) -> SignedWindowSequence:
    """Greedy left-to-right scan: each zero digit is a doubling; at a nonzero
    digit take the longest span of at most ``psize`` digits that ends in a
    nonzero digit, and emit its (odd) value as one window.
    """
    _check_psize(psize)
    if digits and digits[0] == 0:
        digits = _strip(list(digits))
    if not digits or digits[0] == 0:
        raise ValueError("digit string must represent a positive scalar")
    nz = [i for i, d in enumerate(digits) if d]
    steps: list[tuple[int, int]] = []
    # window j ends at the last nonzero digit within psize of its first digit i;
    # it costs (j - previous window's end) doublings, i.e. skipped zeros plus its width
    i = 0
    j = nz[bisect_right(nz, psize - 1) - 1]
    leading = 0
    for t in nz[: bisect_right(nz, j)]:
        leading += digits[t] << (j - t)
    leading_width = j + 1
    idx = bisect_right(nz, j)
    prev = j
    while idx < len(nz):
        i = nz[idx]
        end = bisect_right(nz, i + psize - 1, idx)
        j = nz[end - 1]
        val = 0
        for t in nz[idx:end]:
            val += digits[t] << (j - t)
        steps.append((j - prev, val))
        prev, idx = j, end
    if prev < len(digits) - 1:
        steps.append((len(digits) - 1 - prev, 0))
    return SignedWindowSequence(leading, tuple(steps), psize, leading_width, signed)


def sliding_windows(k: int, psize: int) -> SignedWindowSequence:
    _check_k(k)
    return windows_from_digits(binary_digits(k).digits, psize)


def ones_complement_digits(k: int) -> SignedDigitString:
    """k = 2^n - 1 - Comp with n = bitlength(k), Comp = (2^n - 1) - k, written
    as +2^n minus the binary digits of Comp + 1, then adjacent-reduced."""
    _check_k(k)
    n = k.bit_length()
    comp = (1 << n) - 1 - k
    sub = comp + 1
    lsb = [0] * (n + 1)
    lsb[n] = 1
    for pos in range(n):
        if (sub >> pos) & 1:
            lsb[pos] -= 1
    # sub <= 2^(n-1), so at most position n-1 is touched and no digit leaves {-1, 0, 1}
    return SignedDigitString(_strip(reduce_adjacent(lsb[::-1])))


def ones_complement_recode(k: int, psize: int) -> SignedWindowSequence:
    """Signed windows over the 1's-complement form of k. Falls back to plain
    sliding windows when the signed form would not save an addition."""
    _check_k(k)
    _check_psize(psize)
    plain = sliding_windows(k, psize)
    signed = windows_from_digits(ones_complement_digits(k).digits, psize, signed=True)
    if predict_cost(signed).additions >= predict_cost(plain).additions:
        return plain
    return signed


def predict_cost(seq: SignedWindowSequence) -> CostPrediction:
    return CostPrediction(
        doublings=sum(shift for shift, _ in seq.steps),
        additions=sum(1 for _, d in seq.steps if d),
        table_size=table_size(seq.psize),
        paper_precomp=paper_precomp(seq.psize),
    )


def digit_string_cost(s: SignedDigitString) -> tuple[int, int]:
    """(doublings, additions) for digit-by-digit evaluation of a signed string."""
    return len(s) - 1, s.weight - 1
