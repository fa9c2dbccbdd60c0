"""Prime-field arithmetic, plus the bit-serial repeated-subtraction modular multiply."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import gmpy2


class FieldError(ValueError):
    """Base class for field validation failures."""


class InvalidModulusError(FieldError):
    """The modulus is not an odd prime greater than 3."""


class FieldMismatchError(FieldError):
    """Operands belong to different fields."""


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Extended Euclid: return (g, s, t) with s*a + t*b == g == gcd(a, b)."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        return -old_r, -old_s, -old_t
    return old_r, old_s, old_t


@dataclass(frozen=True)
class PrimeField:
    p: int

    def __post_init__(self):
        p = self.p
        if not isinstance(p, int) or isinstance(p, bool):
            raise InvalidModulusError(f"modulus must be an integer, got {p!r}")
        if p <= 3:
            raise InvalidModulusError(f"modulus must exceed 3, got {p}")
        if p % 2 == 0:
            raise InvalidModulusError(f"modulus must be odd, got {p}")
        if not gmpy2.is_prime(p, 40):
            raise InvalidModulusError(f"modulus {p} is composite")

    def __call__(self, value: int) -> FieldElement:
        return FieldElement(value, self)

    @property
    def zero(self) -> FieldElement:
        return FieldElement(0, self)

    @property
    def one(self) -> FieldElement:
        return FieldElement(1, self)

    @property
    def byte_length(self) -> int:
        return (self.p.bit_length() + 7) // 8

    def __repr__(self) -> str:
        return f"PrimeField({self.p})"


def make_field(p: int) -> PrimeField:
    return PrimeField(p)


class FieldElement:
    """Canonical residue in [0, p). Treat as immutable."""

    __slots__ = ("value", "field")

    def __init__(self, value: int, field: PrimeField):
        self.value = value % field.p
        self.field = field

    def _check(self, other: FieldElement) -> None:
        if self.field.p != other.field.p:
            raise FieldMismatchError(f"GF({self.field.p}) vs GF({other.field.p})")

    def _coerce(self, other) -> FieldElement:
        if isinstance(other, int):
            return FieldElement(other, self.field)
        self._check(other)
        return other

    def __add__(self, other) -> FieldElement:
        return add(self, self._coerce(other))

    __radd__ = __add__

    def __sub__(self, other) -> FieldElement:
        return sub(self, self._coerce(other))

    def __rsub__(self, other) -> FieldElement:
        return sub(self._coerce(other), self)

    def __mul__(self, other) -> FieldElement:
        return mul(self, self._coerce(other))

    __rmul__ = __mul__

    def __truediv__(self, other) -> FieldElement:
        return mul(self, inv(self._coerce(other)))

    def __neg__(self) -> FieldElement:
        return neg(self)

    def __pow__(self, e: int) -> FieldElement:
        if e < 0:
            return FieldElement(pow(inv(self).value, -e, self.field.p), self.field)
        return FieldElement(pow(self.value, e, self.field.p), self.field)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            return self.value == other % self.field.p
        if isinstance(other, FieldElement):
            return self.field.p == other.field.p and self.value == other.value
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.value, self.field.p))

    def __bool__(self) -> bool:
        return self.value != 0

    def __int__(self) -> int:
        return self.value

    def __repr__(self) -> str:
        return f"FieldElement({self.value}, p={self.field.p})"


def add(a: FieldElement, b: FieldElement) -> FieldElement:
    a._check(b)
    return FieldElement(a.value + b.value, a.field)


def sub(a: FieldElement, b: FieldElement) -> FieldElement:
    a._check(b)
    return FieldElement(a.value - b.value, a.field)


def neg(a: FieldElement) -> FieldElement:
    return FieldElement(-a.value, a.field)


def mul(a: FieldElement, b: FieldElement) -> FieldElement:
    a._check(b)
    return FieldElement(a.value * b.value, a.field)


def inv(a: FieldElement) -> FieldElement:
    if a.value == 0:
        raise ZeroDivisionError(f"0 has no inverse in GF({a.field.p})")
    g, s, _ = xgcd(a.value, a.field.p)
    assert g == 1
    return FieldElement(s, a.field)


@dataclass(frozen=True)
class ModMulStep:
    bit_position: int
    bit: int
    term: int


@dataclass(frozen=True)
class ModMulTrace:
    steps: tuple[ModMulStep, ...]
    multiplier_t: int
    raw_sum: int
    reduced: FieldElement
    # number of +-p corrections a repeated-subtraction reducer would perform
    reduction_steps: int = dc_field(default=0)

    @property
    def modulus_multiple(self) -> int:
        return self.reduced.field.p * self.multiplier_t


def auto_multiplier(x: int, y: int, p: int) -> int:
    """Multiple t of p that best cancels X*Y against the zero-bit weights of Y."""
    n = y.bit_length()
    zero_weight = (1 << n) - 1 - y
    if zero_weight == 0:
        return 0
    # round-half-to-even; both neighbours give the same |raw_sum| at a tie
    t = round(x * y / (p * zero_weight))
    return max(t, 1)


def fuzzy_modmul(
    x: int, y: int, field: PrimeField, t: int | None = None
) -> tuple[FieldElement, ModMulTrace]:
    """Multiply X*Y mod p by adding X-weights for 1-bits of Y and subtracting
    (p*t)-weights for its 0-bits, then folding the small remainder into [0, p).

    Steps are listed least-significant bit first, which is the order the
    partial products are usually written out by hand.
    """
    if isinstance(x, FieldElement):
        x = x.value
    if isinstance(y, FieldElement):
        y = y.value
    if x < 0 or y < 0:
        raise ValueError("operands must be non-negative")
    p = field.p
    n = y.bit_length()
    zero_weight = (1 << n) - 1 - y
    if t is None:
        t = auto_multiplier(x, y, p)
    elif t <= 0:
        raise ValueError(f"multiplier t must be positive, got {t}")
    if zero_weight == 0:
        t = 0
    mt = p * t

    steps = []
    for pos in range(n):
        w = 1 << pos
        bit = (y >> pos) & 1
        term = w * x if bit else -w * mt
        steps.append(ModMulStep(pos, bit, term))
    raw = sum(s.term for s in steps)
    q, r = divmod(raw, p)
    trace = ModMulTrace(
        steps=tuple(steps),
        multiplier_t=t,
        raw_sum=raw,
        reduced=FieldElement(r, field),
        reduction_steps=abs(q),
    )
    return trace.reduced, trace
