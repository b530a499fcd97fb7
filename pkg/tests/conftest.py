from fractions import Fraction

import pytest
from hypothesis import strategies as st

from pcoh.scalar import INF

F = Fraction


def scalars(allow_inf=True, cap=4):
    finite = st.builds(Fraction, st.integers(0, cap), st.integers(1, cap))
    return st.one_of(finite, st.just(INF)) if allow_inf else finite


@pytest.fixture
def data_dir():
    from pathlib import Path
    import pcoh
    return Path(pcoh.__file__).parent / "data"


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
