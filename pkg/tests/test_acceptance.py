"""Release-gate suite: every numbered criterion, one pass/fail line each."""
import pytest

from gsp4local import acceptance


@pytest.mark.parametrize("number", range(1, 14))
def test_criterion(number):
    report = acceptance.run_criterion(number)
    print(acceptance.format_line(report))
    assert report["passed"], acceptance.format_line(report) + "\n" + repr(
        report["details"])
