import random

import pytest

from qcalt.ff import make_tower


def naive_polymul_mod(a, b, modulus, p):
    """Schoolbook product of digit vectors modulo a monic modulus over F_p."""
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = (out[i + j] + x * y) % p
    d = len(modulus) - 1
    for i in range(len(out) - 1, d - 1, -1):
        c = out[i]
        if c:
            for j in range(d + 1):
                out[i - d + j] = (out[i - d + j] - c * modulus[j]) % p
    return (out + [0] * d)[:d]


def to_digits(v, p, d):
    out = []
    for _ in range(d):
        v, r = divmod(v, p)
        out.append(r)
    return out


def from_digits(ds, p):
    return sum(c * p ** i for i, c in enumerate(ds))


@pytest.fixture
def rng():
    return random.Random(20240611)


@pytest.fixture(scope="session")
def f16_tower():
    return make_tower(2, 1, 4)


@pytest.fixture(scope="session")
def f27_tower():
    return make_tower(3, 1, 3)


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[num])
