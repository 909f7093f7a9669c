"""One test per acceptance criterion at the default bounds and time limits."""

import pytest

from vcat.acceptance import AcceptanceConfig, run_acceptance

RESULT_LINES: list[str] = []


@pytest.mark.parametrize("number", range(1, 9))
def test_criterion(number):
    (result,) = run_acceptance(AcceptanceConfig(), [number])
    line = result.line()
    RESULT_LINES.append(line)
    print(line)
    assert result.status == "pass", result.to_json()
