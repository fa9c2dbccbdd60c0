"""Regenerate the bundled curve and rule-base files under src/fuzzyecc/data/."""

from pathlib import Path
import random

import gmpy2

from fuzzyecc.curve import CurveSpec, enumerate_points, format_curve, make_curve, point_order
from fuzzyecc.field import make_field
from fuzzyecc.fuzzy import TABLE_I_CORRECTIONS, dominant9, full26

DATA = Path(__file__).resolve().parents[1] / "src" / "fuzzyecc" / "data"

SECP160R1 = dict(
    p=0xFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFF7FFFFFFF,
    a=0xFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFF7FFFFFFC,
    b=0x1C97BEFC54BD7A8B65ACF89F81D4D4ADC565FA45,
    gx=0x4A96B5688EF573284664698968C38BB913CBFC82,
    gy=0x23A628553168947D59DCC912042351377AC5FB32,
)


def small23() -> CurveSpec:
    E = make_curve(2, 5, make_field(23))
    pts = enumerate_points(E)
    n = len(pts)
    # first point (in enumeration order) that generates the whole group
    G = next(P for P in pts[1:] if point_order(P, E) == n)
    return CurveSpec(E, G, "small23")


def demo64(seed: int = 64) -> CurveSpec:
    """A random curve over a 64-bit prime p = 3 mod 4 with a point found by square roots."""
    rng = random.Random(seed)
    while True:
        p = rng.getrandbits(64) | (1 << 63) | 3
        if gmpy2.is_prime(p, 50):
            break
    F = make_field(p)
    a, b = p - 3, rng.randrange(1, p)
    E = make_curve(a, b, F)
    while True:
        x = rng.randrange(p)
        rhs = (x**3 + a * x + b) % p
        y = pow(rhs, (p + 1) // 4, p)
        if y * y % p == rhs and y:
            return CurveSpec(E, E.point(x, y), "demo64")


def secp160r1() -> CurveSpec:
    c = SECP160R1
    E = make_curve(c["a"], c["b"], make_field(c["p"]))
    return CurveSpec(E, E.point(c["gx"], c["gy"]), "secp160r1")


def main() -> None:
    notes = {
        "small23": "# y^2 = x^3 + 2x + 5 over GF(23); base point generates all 33 points\n",
        "demo64": "# random a = -3 curve over a 64-bit prime (scripts/make_data.py, seed 64)\n",
        "secp160r1": "# SEC 2 secp160r1\n",
    }
    for spec in (small23(), demo64(), secp160r1()):
        (DATA / f"{spec.name}.curve").write_text(notes[spec.name] + format_curve(spec))

    lines = ["# StorageRoom PreComputing Doubling -> WindowSize [weight]\n"]
    for i, rule in enumerate(full26().rules, start=1):
        note = f"  # printed: {rule.printed}" if i in TABLE_I_CORRECTIONS else ""
        lines.append(rule.to_line() + note + "\n")
    (DATA / "full26.rules").write_text("".join(lines))
    lines = ["# storage ignored\n"] + [r.to_line() + "\n" for r in dominant9().rules]
    (DATA / "dominant9.rules").write_text("".join(lines))


if __name__ == "__main__":
    main()
