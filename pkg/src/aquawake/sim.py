"""End-to-end scenario engine.

run_scenario wires the whole receive path together on one sample clock:

    modulate -> channel -> transducer -> { rectifier -> harvester
                                         { band-pass -> rectifier -> envelope
                                           -> comparator -> decoder

The analog chain is computed vectorized over the full run; the harvester
advances on a decimated tick and gates the decoder, which only sees
comparator events while the regulated rail is up. The load steps from
listening to decoding at the first accepted sync edge and back after the
decision, mirroring how the real receiver spends its budget.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field, replace

import numpy as np

from . import decoder as dec
from .channel import ChannelModel, propagate
from .errors import ConfigurationError
from .frame import ModulationParams, WakeupFrame, modulate_frame
from .frontend import (
    DemodParams,
    RectifierModel,
    TransducerModel,
    bandpass,
    comparator,
    envelope,
    rectify,
    transduce,
)
from .power import (
    HarvesterMode,
    HarvesterParams,
    HarvesterState,
    LoadProfile,
    cap_energy,
    harvester_step,
)
from .waveform import DigitalTrace, Waveform

logger = logging.getLogger(__name__)

SWEEPABLE_PARAMETERS = (
    "distance",
    "preamble_duration",
    "bit_rate",
    "noise_rms",
    "echo_delay",
)


@dataclass
class SimOptions:
    seed: int = 0
    harvester_decimation: int = 64  # harvester tick every N samples
    input_resistance: float = 10_000.0  # ohm, harvester input equivalent
    tail_duration: float = 0.005  # s of silence appended after the frame

    def __post_init__(self) -> None:
        if self.harvester_decimation < 1:
            raise ConfigurationError("harvester_decimation must be >= 1")
        if self.input_resistance <= 0:
            raise ConfigurationError("input_resistance must be positive")
        if self.tail_duration < 0:
            raise ConfigurationError("tail_duration must be >= 0")


@dataclass
class Scenario:
    frame: WakeupFrame
    decoder: dec.DecoderConfig
    modulation: ModulationParams = field(default_factory=ModulationParams)
    channel: ChannelModel = field(default_factory=ChannelModel)
    transducer: TransducerModel = field(default_factory=TransducerModel)
    rectifier: RectifierModel = field(default_factory=RectifierModel)
    demod: DemodParams | None = None  # None: derived from frame.bit_rate
    harvester: HarvesterParams = field(default_factory=HarvesterParams)
    load: LoadProfile = field(default_factory=LoadProfile)
    sim: SimOptions = field(default_factory=SimOptions)

    def resolved_demod(self) -> DemodParams:
        return self.demod if self.demod is not None else DemodParams.for_bit_rate(
            self.frame.bit_rate
        )


@dataclass
class ScenarioResult:
    woke: bool
    decoded_uuid: int | None
    time_to_wake: float | None
    peak_v_cap: float
    harvested_energy: float
    consumed_energy: float
    vcap_times: np.ndarray
    vcap_values: np.ndarray
    mode_values: list[str]
    edge_trace: DigitalTrace
    rail_up_time: float | None
    first_sync_time: float | None
    decision_time: float | None
    seed: int


def _validate(sc: Scenario, demod: DemodParams) -> None:
    bit_period = sc.frame.bit_period
    carrier_period = 1.0 / sc.modulation.carrier_freq
    if demod.envelope_tau >= bit_period:
        raise ConfigurationError(
            f"envelope_tau {demod.envelope_tau} must sit below the bit period {bit_period}"
        )
    if demod.envelope_tau <= carrier_period:
        raise ConfigurationError(
            f"envelope_tau {demod.envelope_tau} must sit above the carrier period "
            f"{carrier_period}"
        )


def run_scenario(sc: Scenario) -> ScenarioResult:
    """Simulate one frame against one receiver; deterministic per seed."""
    demod = sc.resolved_demod()
    _validate(sc, demod)
    sr = sc.modulation.sample_rate
    channel = replace(sc.channel, rng_seed=sc.sim.seed)

    tx = modulate_frame(sc.frame, sc.modulation)
    tail = np.zeros(round(sc.sim.tail_duration * sr))
    tx = Waveform(sr, np.concatenate([tx.samples, tail]), tx.unit)
    rx = propagate(tx, channel)

    v_xdcr = transduce(rx, sc.transducer)
    v_harv = rectify(v_xdcr, sc.rectifier)
    env = envelope(rectify(bandpass(v_xdcr, demod), sc.rectifier), demod)
    trace = comparator(env, demod)

    # per-tick input stats for the harvester
    decim = sc.sim.harvester_decimation
    n = len(v_harv.samples)
    n_ticks = (n + decim - 1) // decim
    padded = np.zeros(n_ticks * decim)
    padded[:n] = v_harv.samples
    windows = padded.reshape(n_ticks, decim)
    v_in = windows.mean(axis=1)
    p_in = (windows**2).mean(axis=1) / sc.sim.input_resistance
    dt = decim / sr

    rising = trace.rising_times()
    edge_idx = 0
    dec_state = dec.DecoderState()
    state = HarvesterState()
    initial_energy = cap_energy(sc.harvester.c_store, state.v_cap)

    vcap = np.empty(n_ticks)
    modes: list[str] = []
    rail_up_time: float | None = None
    first_sync_time: float | None = None
    decision_time: float | None = None
    decided_uuid: int | None = None
    woke = False
    wake_time: float | None = None

    for i in range(n_ticks):
        t0 = i * dt
        t1 = t0 + dt
        regulating = state.mode is HarvesterMode.REGULATING

        if regulating:
            if rail_up_time is None:
                rail_up_time = t0
            while decision_time is None:
                next_edge = rising[edge_idx] if edge_idx < len(rising) else np.inf
                due = dec_state.next_sample_time
                next_sample = due if due is not None and due < t1 else np.inf
                if next_edge >= t1 and next_sample == np.inf:
                    break
                if next_edge <= next_sample:
                    dec_state = dec.decoder_feed(
                        dec_state, sc.decoder, dec.RisingEdge(float(next_edge))
                    )
                    edge_idx += 1
                else:
                    level = trace.level_at(next_sample)
                    dec_state = dec.decoder_feed(
                        dec_state, sc.decoder, dec.LevelSample(float(next_sample), level)
                    )
                if first_sync_time is None and dec_state.first_edge_time is not None:
                    first_sync_time = dec_state.first_edge_time
                if dec_state.phase is dec.DecoderPhase.DECIDED:
                    decision_time = dec_state.last_event_time
                    decided_uuid = dec_state.decoded_uuid
                    if dec.wake_output(dec_state):
                        woke = True
                        wake_time = decision_time
        else:
            # rail down: comparator events are lost and any progress is gone
            while edge_idx < len(rising) and rising[edge_idx] < t1:
                edge_idx += 1
            if dec_state.phase is not dec.DecoderPhase.AWAIT_FIRST_EDGE:
                if decision_time is None:
                    logger.debug("rail down at %.4f s, decoder reset", t0)
                    dec_state = dec.DecoderState()

        # decode draw applies while the decoder is mid-frame, listen otherwise
        if not regulating:
            load = sc.load.p_idle
        elif dec_state.phase in (
            dec.DecoderPhase.AWAIT_SECOND_EDGE,
            dec.DecoderPhase.SAMPLING,
        ):
            load = sc.load.p_decode
        else:
            load = sc.load.p_listen

        state = harvester_step(state, sc.harvester, v_in[i], p_in[i], load, dt)
        vcap[i] = state.v_cap
        modes.append(state.mode.value)

    # energy ledger must close: E0 + banked - drained == E_final
    final_energy = cap_energy(sc.harvester.c_store, state.v_cap)
    closure = initial_energy + state.harvested_energy - state.consumed_energy - final_energy
    if state.harvested_energy > 0 and abs(closure) > 1e-3 * state.harvested_energy:
        raise AssertionError(f"energy ledger violation: {closure} J unaccounted")
    if woke and decided_uuid != sc.decoder.assigned_uuid:
        raise AssertionError("wake asserted without a matching UUID")

    return ScenarioResult(
        woke=woke,
        decoded_uuid=decided_uuid,
        time_to_wake=wake_time,
        peak_v_cap=float(vcap.max()) if n_ticks else 0.0,
        harvested_energy=float(state.harvested_energy),
        consumed_energy=float(state.consumed_energy),
        vcap_times=np.arange(n_ticks) * dt + dt,
        vcap_values=vcap,
        mode_values=modes,
        edge_trace=trace,
        rail_up_time=rail_up_time,
        first_sync_time=first_sync_time,
        decision_time=decision_time,
        seed=sc.sim.seed,
    )


def _with_parameter(sc: Scenario, name: str, value: float) -> Scenario:
    if name == "distance":
        return replace(sc, channel=replace(sc.channel, distance=value))
    if name == "preamble_duration":
        return replace(sc, frame=replace(sc.frame, preamble_duration=value))
    if name == "bit_rate":
        return replace(sc, frame=replace(sc.frame, bit_rate=value))
    if name == "noise_rms":
        return replace(sc, channel=replace(sc.channel, noise_rms=value))
    if name == "echo_delay":
        if not sc.channel.echoes:
            raise ConfigurationError("echo_delay sweep needs at least one configured echo")
        echoes = list(sc.channel.echoes)
        echoes[0] = replace(echoes[0], extra_path=value * sc.channel.sound_speed)
        return replace(sc, channel=replace(sc.channel, echoes=echoes))
    raise ConfigurationError(
        f"unknown sweep parameter {name!r}; choose from {', '.join(SWEEPABLE_PARAMETERS)}"
    )


def _trial_seed(base_seed: int, value_index: int, trial: int) -> int:
    seq = np.random.SeedSequence([base_seed, value_index, trial])
    return int(seq.generate_state(1)[0])


@dataclass
class SweepResult:
    parameter: str
    rows: list[dict]  # one per (value, trial)
    aggregates: list[dict]  # one per value


def sweep(base: Scenario, parameter: str, values: list[float], trials: int = 1) -> SweepResult:
    """Run `trials` seeded runs per parameter value and tabulate outcomes."""
    if trials < 1:
        raise ConfigurationError("trials must be >= 1")
    if not values:
        raise ConfigurationError("values must be non-empty")
    rows: list[dict] = []
    aggregates: list[dict] = []
    for vi, value in enumerate(values):
        sc_v = _with_parameter(base, parameter, float(value))
        wakes = 0
        peaks = []
        times = []
        for trial in range(trials):
            seed = _trial_seed(base.sim.seed, vi, trial)
            result = run_scenario(replace(sc_v, sim=replace(sc_v.sim, seed=seed)))
            wakes += int(result.woke)
            peaks.append(result.peak_v_cap)
            if result.time_to_wake is not None:
                times.append(result.time_to_wake)
            rows.append(
                {
                    "parameter": parameter,
                    "value": float(value),
                    "trial": trial,
                    "seed": seed,
                    "woke": result.woke,
                    "decoded_uuid": result.decoded_uuid,
                    "time_to_wake": result.time_to_wake,
                    "peak_v_cap": result.peak_v_cap,
                    "harvested_energy": result.harvested_energy,
                    "consumed_energy": result.consumed_energy,
                }
            )
        aggregates.append(
            {
                "parameter": parameter,
                "value": float(value),
                "trials": trials,
                "wake_success_rate": wakes / trials,
                "mean_peak_v_cap": float(np.mean(peaks)),
                "mean_time_to_wake": float(np.mean(times)) if times else None,
            }
        )
    return SweepResult(parameter=parameter, rows=rows, aggregates=aggregates)


def calibrate_tx_amplitude(
    sc: Scenario,
    target_peak_v: float,
    rel_tol: float = 1e-3,
    max_iter: int = 60,
) -> float:
    """Fit tx_amplitude so the run's peak cap voltage hits a target.

    Peak cap voltage is monotone in drive amplitude, so a bracket-and-bisect
    on amplitude converges without derivatives.
    """

    def peak(amp: float) -> float:
        mod = replace(sc.modulation, tx_amplitude=amp)
        return run_scenario(replace(sc, modulation=mod)).peak_v_cap

    lo, hi = 0.0, 1.0
    for _ in range(max_iter):
        if peak(hi) >= target_peak_v:
            break
        lo = hi
        hi *= 4.0
    else:
        raise ConfigurationError("calibration failed to bracket the target peak")

    amp = hi
    for _ in range(max_iter):
        amp = 0.5 * (lo + hi)
        p = peak(amp)
        if abs(p - target_peak_v) <= rel_tol * target_peak_v:
            return amp
        if p < target_peak_v:
            lo = amp
        else:
            hi = amp
    return amp
