"""Shallow-water acoustic channel.

The link is modeled as a sparse tap line: one direct path set by boundary
coupling, power-law spreading and a constant absorption rate at the carrier,
plus a discrete echo per configured reflector, plus white Gaussian noise.
Good enough to reproduce trend-level range and multipath behavior; it does
not try to be a ray tracer.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigurationError
from .waveform import Waveform


@dataclass
class Echo:
    extra_path: float  # m traveled beyond the direct path
    gain: float  # amplitude relative to the direct arrival

    def __post_init__(self) -> None:
        if self.extra_path <= 0:
            raise ConfigurationError(f"echo extra_path must be positive, got {self.extra_path}")
        if not 0 <= self.gain < 1:
            raise ConfigurationError(f"echo gain must be in [0, 1), got {self.gain}")


@dataclass
class ChannelModel:
    distance: float = 1.0  # m, transmitter to receiver
    sound_speed: float = 1630.0  # m/s
    spreading_exponent: float = 2.0  # amplitude ~ distance**-k
    absorption_db_per_km: float = 0.0  # dB/km at the carrier
    coupling: float = 0.993  # boundary transmission coefficient, crossed twice
    echoes: list[Echo] = field(default_factory=list)
    noise_rms: float = 0.0  # additive white noise, pressure units
    rng_seed: int = 0

    def __post_init__(self) -> None:
        if self.distance <= 0:
            raise ConfigurationError(f"distance must be positive, got {self.distance}")
        if self.sound_speed <= 0:
            raise ConfigurationError("sound_speed must be positive")
        if not 0 < self.coupling <= 1:
            raise ConfigurationError(f"coupling must be in (0, 1], got {self.coupling}")
        if self.noise_rms < 0:
            raise ConfigurationError("noise_rms must be >= 0")
        self.echoes = [e if isinstance(e, Echo) else Echo(*e) for e in self.echoes]

    def direct_gain(self) -> float:
        """Amplitude factor applied to the direct arrival."""
        absorption_db = self.absorption_db_per_km * self.distance / 1000.0
        return (
            self.coupling**2
            * self.distance**-self.spreading_exponent
            * 10.0 ** (-absorption_db / 20.0)
        )


def echo_delay(extra_path: float, sound_speed: float = 1630.0) -> float:
    """Arrival lag of a reflection traveling extra_path beyond the direct ray."""
    if extra_path <= 0:
        raise ValueError(f"extra_path must be positive, got {extra_path}")
    if sound_speed <= 0:
        raise ValueError(f"sound_speed must be positive, got {sound_speed}")
    return extra_path / sound_speed


def critical_reflection_distance(bit_rate: float, sound_speed: float = 1630.0) -> float:
    """Extra path length at which an echo lags by exactly one bit period.

    Reflections with this detour land on the next bit's sampling instant and
    are the worst case for OOK decoding.
    """
    if bit_rate <= 0:
        raise ValueError(f"bit_rate must be positive, got {bit_rate}")
    if sound_speed <= 0:
        raise ValueError(f"sound_speed must be positive, got {sound_speed}")
    return sound_speed / bit_rate


def propagate(tx: Waveform, channel: ChannelModel) -> Waveform:
    """Apply the channel to a transmit waveform.

    Each path contributes a delayed, scaled copy (delays rounded to the
    nearest sample); echo gains are relative to the attenuated direct
    arrival. Output is long enough to hold the latest tap in full.
    """
    sr = tx.sample_rate
    g0 = channel.direct_gain()
    taps = [(channel.distance / channel.sound_speed, g0)]
    for e in channel.echoes:
        taps.append(
            ((channel.distance + e.extra_path) / channel.sound_speed, g0 * e.gain)
        )

    delays = [round(t * sr) for t, _ in taps]
    n = len(tx.samples) + max(delays)
    out = np.zeros(n, dtype=np.float64)
    for d, (_, gain) in zip(delays, taps):
        out[d : d + len(tx.samples)] += gain * tx.samples

    if channel.noise_rms > 0:
        rng = np.random.default_rng(channel.rng_seed)
        out += rng.normal(0.0, channel.noise_rms, size=n)

    return Waveform(sample_rate=sr, samples=out, unit=tx.unit)
