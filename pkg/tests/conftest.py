import random

import pytest

from hecketrace.algebra import S, U, U2, I, evaluate_word


@pytest.fixture
def rng():
    return random.Random(20240601)


def random_gamma(rng, length=8):
    word = [rng.choice(["S", "U", "U2"]) for _ in range(rng.randint(0, length))]
    return evaluate_word(word)


_ACCEPTANCE = {}


@pytest.fixture
def criterion():
    """Context manager recording one PASS/FAIL line per acceptance criterion."""
    from contextlib import contextmanager

    @contextmanager
    def cm(num, title):
        info = {}
        try:
            yield info
        except BaseException as e:
            msg = f"{type(e).__name__}: {e}".splitlines()[0][:160]
            _ACCEPTANCE[num] = f"criterion {num:2d} FAIL  {title}  [{msg}]"
            print(_ACCEPTANCE[num])
            raise
        extra = "  " + ", ".join(f"{k}={v}" for k, v in info.items()) if info else ""
        _ACCEPTANCE[num] = f"criterion {num:2d} PASS  {title}{extra}"
        print(_ACCEPTANCE[num])

    return cm


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for k in sorted(_ACCEPTANCE):
            terminalreporter.write_line(_ACCEPTANCE[k])
