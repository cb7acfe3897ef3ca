"""Acceptance battery: one line per criterion, exact equality throughout."""
import pytest

from dkron.suite import CRITERIA, run_criterion

_cache = {}


@pytest.mark.parametrize("number", [n for n, _, _ in CRITERIA], ids=lambda n: f"criterion{n:02d}")
def test_criterion(number, capsys):
    res = run_criterion(number, cache=_cache)
    with capsys.disabled():
        print("\n" + res.line())
    assert res.ok, res.to_json()["detail"]
