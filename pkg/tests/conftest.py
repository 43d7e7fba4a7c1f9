import warnings

import pytest

from sturmperm import ExactReal, build_from_word, mechanical_word

SIGMA_W = ExactReal.parse("(3-sqrt(5))/2")
SIGMA_S = 1 - SIGMA_W


def fib_word(n):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return mechanical_word(SIGMA_W, SIGMA_W, n)


def sturmian_perm(N, d=None):
    """Permutation from the Fibonacci word; canonical steps, or threshold d."""
    w = fib_word(N - 1)
    if d is None:
        return build_from_word(w, SIGMA_W, 1 - SIGMA_W, SIGMA_W)
    d = ExactReal.coerce(d)
    return build_from_word(w, 1 - SIGMA_S - d, SIGMA_S + d, 0)


@pytest.fixture(scope="session")
def fib500():
    return sturmian_perm(500)


@pytest.fixture(scope="session")
def fib2000():
    return sturmian_perm(2000)


@pytest.fixture(scope="session")
def d5_3000():
    return sturmian_perm(3000, ExactReal.parse("1/5"))


ACCEPTANCE: list[str] = []


def record(number: int, title: str, checks: dict) -> bool:
    """Store one PASS/FAIL line for an acceptance criterion and return the verdict."""
    ok = all(v is True for v in checks.values())
    failed = [k for k, v in checks.items() if v is not True]
    line = f"{'PASS' if ok else 'FAIL'} criterion {number}: {title}"
    if failed:
        line += " | failed: " + "; ".join(f"{k} ({checks[k]})" if checks[k] is not False else k for k in failed)
    ACCEPTANCE.append(line)
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
