"""Affine short-Weierstrass curves y^2 = x^3 + ax + b over GF(p).

The public functions take and return :class:`CurvePoint` values built from
:class:`~fuzzyecc.field.FieldElement`. Scalar multiplication loops go through
the ``_add_xy`` / ``_double_xy`` kernel below, which runs the same formulas on
bare gmpy2 integers so that a loop of a few thousand group operations does not
pay for object construction at every step.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path

from gmpy2 import invert, mpz

from .field import FieldElement, PrimeField, make_field


class CurveError(ValueError):
    pass


class SingularCurveError(CurveError):
    """4a^3 + 27b^2 vanishes in GF(p)."""


class NotOnCurveError(CurveError):
    pass


@dataclass(frozen=True)
class CurveParams:
    a: FieldElement
    b: FieldElement
    field: PrimeField

    def __post_init__(self):
        # cached kernel constants
        object.__setattr__(self, "_p", mpz(self.field.p))
        object.__setattr__(self, "_a", mpz(self.a.value))

    @property
    def p(self) -> int:
        return self.field.p

    def discriminant(self) -> FieldElement:
        return 4 * self.a**3 + 27 * self.b**2

    def point(self, x: int, y: int, validate: bool = True) -> CurvePoint:
        P = CurvePoint(self.field(x), self.field(y))
        if validate and not on_curve(P, self):
            raise NotOnCurveError(f"({x}, {y}) is not on {self}")
        return P

    def __repr__(self) -> str:
        return f"Curve(y^2 = x^3 + {self.a.value}x + {self.b.value} mod {self.p})"


def make_curve(a: int | FieldElement, b: int | FieldElement, field: PrimeField) -> CurveParams:
    a = field(int(a))
    b = field(int(b))
    E = CurveParams(a, b, field)
    if E.discriminant() == 0:
        raise SingularCurveError(f"4a^3 + 27b^2 = 0 mod {field.p} for a={a.value}, b={b.value}")
    return E


@dataclass(frozen=True)
class CurvePoint:
    """Affine point; ``x is None`` encodes the point at infinity."""

    x: FieldElement | None = None
    y: FieldElement | None = None

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    def xy(self) -> tuple[int, int] | None:
        return None if self.x is None else (self.x.value, self.y.value)

    def __repr__(self) -> str:
        if self.x is None:
            return "O"
        return f"({self.x.value}, {self.y.value})"


INFINITY = CurvePoint()


def on_curve(P: CurvePoint, E: CurveParams) -> bool:
    if P.is_infinity:
        return True
    if P.x.field.p != E.p or P.y.field.p != E.p:
        return False
    return P.y * P.y == P.x**3 + E.a * P.x + E.b


def _require(P: CurvePoint, E: CurveParams) -> None:
    if not on_curve(P, E):
        raise NotOnCurveError(f"{P!r} is not on {E!r}")


def negate(P: CurvePoint) -> CurvePoint:
    if P.is_infinity:
        return P
    return CurvePoint(P.x, -P.y)


def point_double(P: CurvePoint, E: CurveParams, validate: bool = True) -> CurvePoint:
    if validate:
        _require(P, E)
    if P.is_infinity or P.y.value == 0:
        return INFINITY
    lam = (3 * P.x * P.x + E.a) / (2 * P.y)
    x3 = lam * lam - P.x - P.x
    y3 = lam * (P.x - x3) - P.y
    return CurvePoint(x3, y3)


def point_add(P: CurvePoint, Q: CurvePoint, E: CurveParams, validate: bool = True) -> CurvePoint:
    if validate:
        _require(P, E)
        _require(Q, E)
    if P.is_infinity:
        return Q
    if Q.is_infinity:
        return P
    if P.x == Q.x:
        if P.y == Q.y:
            return point_double(P, E, validate=False)
        return INFINITY
    lam = (Q.y - P.y) / (Q.x - P.x)
    x3 = lam * lam - P.x - Q.x
    y3 = lam * (P.x - x3) - P.y
    return CurvePoint(x3, y3)


# -- integer kernel --------------------------------------------------------
# Points are (x, y) tuples of mpz, or None for infinity.


def _double_xy(P, a, p):
    if P is None:
        return None
    x, y = P
    if not y:
        return None
    lam = (3 * x * x + a) * invert(2 * y, p) % p
    x3 = (lam * lam - 2 * x) % p
    return x3, (lam * (x - x3) - y) % p


def _add_xy(P, Q, a, p):
    if P is None:
        return Q
    if Q is None:
        return P
    x1, y1 = P
    x2, y2 = Q
    if x1 == x2:
        if y1 == y2:
            return _double_xy(P, a, p)
        return None
    lam = (y2 - y1) * invert(x2 - x1, p) % p
    x3 = (lam * lam - x1 - x2) % p
    return x3, (lam * (x1 - x3) - y1) % p


def _neg_xy(P, p):
    if P is None:
        return None
    x, y = P
    return x, (-y) % p


def to_xy(P: CurvePoint):
    if P.is_infinity:
        return None
    return mpz(P.x.value), mpz(P.y.value)


def from_xy(P, E: CurveParams) -> CurvePoint:
    if P is None:
        return INFINITY
    return CurvePoint(FieldElement(int(P[0]), E.field), FieldElement(int(P[1]), E.field))


# -- enumeration (small curves only) ---------------------------------------


def enumerate_points(E: CurveParams) -> list[CurvePoint]:
    """Every point of E(GF(p)), infinity first. Brute force; keep p small."""
    p = E.p
    if p > 1 << 16:
        raise CurveError("exhaustive enumeration is limited to p < 2^16")
    squares: dict[int, list[int]] = {}
    for y in range(p):
        squares.setdefault(y * y % p, []).append(y)
    a, b = E.a.value, E.b.value
    pts = [INFINITY]
    for x in range(p):
        for y in squares.get((x * x * x + a * x + b) % p, ()):
            pts.append(E.point(x, y, validate=False))
    return pts


def point_order(P: CurvePoint, E: CurveParams, limit: int | None = None) -> int:
    """Smallest n >= 1 with n*P = O, by repeated addition."""
    limit = limit or 2 * E.p + 2
    acc, n = P, 1
    while not acc.is_infinity:
        acc = point_add(acc, P, E, validate=False)
        n += 1
        if n > limit:
            raise CurveError("order search exceeded limit")
    return n


# -- curve files -----------------------------------------------------------


@dataclass(frozen=True)
class CurveSpec:
    curve: CurveParams
    base: CurvePoint | None = None
    name: str = ""


_KV = re.compile(r"([A-Za-z_]+)\s*=\s*(-?(?:0[xX])?[0-9A-Fa-f]+)")


def parse_curve_text(text: str, name: str = "") -> CurveSpec:
    """Parse ``p=<hex> a=<hex> b=<hex> [gx=<hex> gy=<hex>]``; '#' starts a comment."""
    body = "\n".join(line.split("#", 1)[0] for line in text.splitlines())
    values: dict[str, int] = {}
    for key, raw in _KV.findall(body):
        key = key.lower()
        if key in values:
            raise CurveError(f"duplicate key {key!r}")
        values[key] = int(raw, 16)
    leftover = _KV.sub("", body).strip()
    if leftover:
        raise CurveError(f"unparseable curve text: {leftover[:40]!r}")
    missing = {"p", "a", "b"} - values.keys()
    if missing:
        raise CurveError(f"curve file missing {sorted(missing)}")
    unknown = values.keys() - {"p", "a", "b", "gx", "gy"}
    if unknown:
        raise CurveError(f"unknown keys {sorted(unknown)}")
    if ("gx" in values) != ("gy" in values):
        raise CurveError("base point needs both gx and gy")
    E = make_curve(values["a"], values["b"], make_field(values["p"]))
    G = None
    if "gx" in values:
        G = E.point(values["gx"], values["gy"])
    return CurveSpec(E, G, name)


def load_curve(path: str | Path) -> CurveSpec:
    path = Path(path)
    return parse_curve_text(path.read_text(), name=path.stem)


def format_curve(spec: CurveSpec) -> str:
    E = spec.curve
    out = f"p={E.p:x} a={E.a.value:x} b={E.b.value:x}"
    if spec.base is not None and not spec.base.is_infinity:
        out += f" gx={spec.base.x.value:x} gy={spec.base.y.value:x}"
    return out + "\n"
