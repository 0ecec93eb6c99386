import os

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from cospanfib.cospan import Cospan
from cospanfib.finset import Partition

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", max_examples=500, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

ACCEPTANCE_LINES: list[str] = []


@st.composite
def partitions(draw, max_n=6, n=None):
    n = draw(st.integers(0, max_n)) if n is None else n
    labels = draw(st.lists(st.integers(0, max(n - 1, 0)), min_size=n, max_size=n))
    return Partition.from_labels(labels)


@st.composite
def cospans(draw, a=None, b=None, max_ends=3, max_carrier=6):
    a = draw(st.integers(0, max_ends)) if a is None else a
    b = draw(st.integers(0, max_ends)) if b is None else b
    lo = 1 if a + b else 0
    carrier = draw(partitions(n=draw(st.integers(lo, max(lo, max_carrier)))))
    k = len(carrier.blocks)
    legs = draw(st.lists(st.integers(0, k - 1), min_size=a + b, max_size=a + b)) if k else []
    return Cospan(a, b, carrier, tuple(legs[:a]), tuple(legs[a:]))


@st.composite
def composable_triples(draw, max_ends=3, max_carrier=6):
    ends = [draw(st.integers(0, max_ends)) for _ in range(4)]
    return tuple(draw(cospans(ends[i], ends[i + 1], max_carrier=max_carrier)) for i in range(3))


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
