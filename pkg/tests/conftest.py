import itertools

from hypothesis import HealthCheck, settings

settings.register_profile(
    "default", deadline=None, max_examples=100, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

# string-level oracles, independent of the packed implementation
COMP = str.maketrans("ACGT", "TGCA")


def o_rc(s: str) -> str:
    return s.translate(COMP)[::-1]


def o_ham(a: str, b: str) -> int:
    return sum(x != y for x, y in zip(a, b))


def o_gc(s: str) -> int:
    return sum(ch in "GC" for ch in s)


def o_words(n: int, w: int) -> list[str]:
    return ["".join(p) for p in itertools.product("ACGT", repeat=n) if o_gc("".join(p)) == w]


def o_admissible(n: int, d: int, w: int) -> list[str]:
    return [s for s in o_words(n, w) if o_ham(s, o_rc(s)) >= d]


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import VERDICTS
    except ImportError:
        return
    if VERDICTS:
        terminalreporter.section("acceptance criteria")
        for name in sorted(VERDICTS):
            terminalreporter.write_line(VERDICTS[name])
