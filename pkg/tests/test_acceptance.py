"""End-to-end acceptance rows.

Each criterion prints its one-line verdict with the measured values so a
bare pytest run doubles as the reproduction log.
"""

import pytest

from sadicsets.acceptance import CRITERIA


@pytest.mark.parametrize(
    "name,fn", CRITERIA, ids=[name for name, _ in CRITERIA]
)
def test_criterion(name, fn, capsys):
    if "seed" in fn.__code__.co_varnames:
        result = fn(seed=0)
    else:
        result = fn()
    with capsys.disabled():
        print(result.line())
    assert result.passed, result.line()
