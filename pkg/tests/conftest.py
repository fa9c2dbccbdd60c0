import random
from importlib import resources

import pytest

from fuzzyecc.curve import CurveSpec, enumerate_points, parse_curve_text

# acceptance results collected as (criterion, passed, detail); printed at the end
ACCEPTANCE: list[tuple[str, bool, str]] = []

# accumulator multiples printed for k = 763 under each pairing size
CHAINS_763 = {
    2: [1, 2, 4, 8, 11, 22, 44, 47, 94, 95, 190, 380, 760, 763],
    3: [5, 10, 20, 40, 47, 94, 188, 376, 381, 762, 763],
    4: [11, 22, 44, 88, 95, 190, 380, 760, 763],
    5: [23, 46, 92, 184, 368, 736, 763],
    6: [47, 94, 188, 376, 752, 763],
    7: [95, 190, 380, 760, 763],
    8: [95, 190, 380, 760, 763],
    9: [381, 762, 763],
    10: [763],
}
SIGNED_CHAIN_763 = [3, 6, 12, 24, 48, 96, 192, 384, 768, 763]


def bundled(name: str) -> CurveSpec:
    text = resources.files("fuzzyecc.data").joinpath(f"{name}.curve").read_text()
    return parse_curve_text(text, name=name)


def sqrt_mod(n: int, p: int) -> int | None:
    """Tonelli-Shanks. Returns a root of n mod p or None for non-residues."""
    n %= p
    if n == 0:
        return 0
    if pow(n, (p - 1) // 2, p) != 1:
        return None
    if p % 4 == 3:
        return pow(n, (p + 1) // 4, p)
    q, s = p - 1, 0
    while q % 2 == 0:
        q, s = q // 2, s + 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(n, q, p), pow(n, (q + 1) // 2, p)
    while t != 1:
        i, tt = 0, t
        while tt != 1:
            tt, i = tt * tt % p, i + 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c, t, r = i, b * b % p, t * b * b % p, r * b % p
    return r


def random_point(spec: CurveSpec, rng: random.Random):
    """Uniform-ish finite point: random x until x^3 + ax + b is a square."""
    E = spec.curve
    p, a, b = E.p, int(E.a), int(E.b)
    while True:
        x = rng.randrange(p)
        y = sqrt_mod(x**3 + a * x + b, p)
        if y is None:
            continue
        if rng.random() < 0.5:
            y = (-y) % p
        return E.point(x, y)


@pytest.fixture(scope="session")
def small23():
    return bundled("small23")


@pytest.fixture(scope="session")
def demo64():
    return bundled("demo64")


@pytest.fixture(scope="session")
def secp160r1():
    return bundled("secp160r1")


@pytest.fixture(scope="session")
def small_points(small23):
    return enumerate_points(small23.curve)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in ACCEPTANCE:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}" + (f"  ({detail})" if detail else ""))
