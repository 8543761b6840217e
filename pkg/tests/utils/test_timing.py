# tests/utils/test_timing.py
import pytest

from lyndon_bwt.utils.timing import StepTimes


def test_step_times_accumulate(mocker):
    clock = mocker.patch("lyndon_bwt.utils.timing.time.perf_counter", side_effect=[1.0, 1.5, 2.0, 4.0, 10.0, 10.25])
    times = StepTimes()
    with times.step("sa"):
        pass
    with times.step("lambda"):
        pass
    with times.step("sa"):
        pass
    assert times.seconds == {"sa": 0.75, "lambda": 2.0}
    assert times.total == 2.75
    assert clock.call_count == 6


def test_step_recorded_on_error():
    times = StepTimes()
    with pytest.raises(RuntimeError):
        with times.step("sa"):
            raise RuntimeError("boom")
    assert "sa" in times.seconds
