import numpy as np
import pytest

from aquawake import ConfigurationError, DigitalTrace, SignalUnit, Waveform


@pytest.mark.parametrize("rate", [0.0, -8.0])
def test_waveform_rejects_nonpositive_sample_rate(rate):
    with pytest.raises(ConfigurationError):
        Waveform(rate, np.zeros(4))


def test_waveform_rejects_multidim_samples():
    with pytest.raises(ConfigurationError):
        Waveform(8.0, np.zeros((2, 2)))


@pytest.mark.parametrize("bad", [np.nan, np.inf, -np.inf])
def test_waveform_rejects_nonfinite_samples(bad):
    with pytest.raises(ConfigurationError):
        Waveform(8.0, [0.0, bad, 1.0])


def test_waveform_casts_samples_to_float64():
    w = Waveform(1.0, [1, 2, 3])
    assert w.samples.dtype == np.float64
    assert w.unit is SignalUnit.VOLTS


def test_waveform_duration_times_energy():
    w = Waveform(2.0, [1.0, 2.0, 3.0])
    assert w.duration == pytest.approx(1.5)
    assert np.array_equal(w.times(), [0.0, 0.5, 1.0])
    assert w.energy() == pytest.approx((1.0 + 4.0 + 9.0) / 2.0)


def test_trace_rejects_mismatched_edge_arrays():
    with pytest.raises(ConfigurationError):
        DigitalTrace(edge_times=[0.0, 1.0], edge_levels=[True])


def test_trace_rejects_decreasing_edge_times():
    with pytest.raises(ConfigurationError):
        DigitalTrace(edge_times=[1.0, 0.5], edge_levels=[True, False])


def test_trace_partitions_rising_and_falling():
    tr = DigitalTrace(edge_times=[0.1, 0.2, 0.3], edge_levels=[True, False, True])
    assert np.array_equal(tr.rising_times(), [0.1, 0.3])
    assert np.array_equal(tr.falling_times(), [0.2])


def test_trace_level_at_applies_edges_at_their_own_timestamp():
    tr = DigitalTrace(
        edge_times=[0.1, 0.2], edge_levels=[True, False], initial_level=False
    )
    assert tr.level_at(0.0) is False
    assert tr.level_at(0.1) is True
    assert tr.level_at(0.15) is True
    assert tr.level_at(0.2) is False
    assert tr.level_at(5.0) is False


def test_trace_level_before_any_edge_is_initial_level():
    assert DigitalTrace(initial_level=True).level_at(123.0) is True
    assert DigitalTrace(initial_level=False).level_at(123.0) is False
