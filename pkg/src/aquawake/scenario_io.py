"""Scenario files.

A scenario is a YAML mapping with one section per subsystem; every field maps
1:1 onto the corresponding config dataclass. Only the transmitted UUID and
the receiver's assigned UUID are required, everything else defaults. Unknown
keys are rejected by name so typos fail loudly instead of silently running a
default.
"""

from __future__ import annotations

import dataclasses
from pathlib import Path
from typing import Any

import yaml

from .channel import ChannelModel, Echo
from .decoder import DecoderConfig
from .errors import ConfigurationError, SchemaError
from .frame import ModulationParams, WakeupFrame
from .frontend import DemodParams, RectifierModel, TransducerModel
from .power import HarvesterParams, LoadProfile
from .sim import Scenario, SimOptions

REQUIRED_KEYS = ("frame.uuid", "decoder.assigned_uuid")

_SECTIONS: dict[str, type] = {
    "frame": WakeupFrame,
    "modulation": ModulationParams,
    "channel": ChannelModel,
    "transducer": TransducerModel,
    "rectifier": RectifierModel,
    "demod": DemodParams,
    "harvester": HarvesterParams,
    "load": LoadProfile,
    "decoder": DecoderConfig,
    "sim": SimOptions,
}


def _section_doc(doc: dict, name: str) -> dict[str, Any]:
    data = doc.get(name) or {}
    if not isinstance(data, dict):
        raise SchemaError(f"section {name!r} must be a mapping")
    return dict(data)


def _build_section(name: str, cls: type, data: dict[str, Any]):
    known = {f.name for f in dataclasses.fields(cls)}
    for key in data:
        if key not in known:
            raise SchemaError(f"unknown key {name}.{key}")
    try:
        return cls(**data)
    except ConfigurationError as exc:
        raise SchemaError(f"invalid value in section {name!r}: {exc}") from exc
    except TypeError as exc:
        raise SchemaError(f"bad field type in section {name!r}: {exc}") from exc


def scenario_from_dict(doc: Any) -> Scenario:
    """Validate a parsed scenario document and assemble the Scenario."""
    if doc is None:
        doc = {}
    if not isinstance(doc, dict):
        raise SchemaError("scenario document must be a mapping of sections")
    for section in doc:
        if section not in _SECTIONS:
            raise SchemaError(
                f"unknown section {section!r}; expected one of {', '.join(_SECTIONS)}"
            )

    frame_doc = _section_doc(doc, "frame")
    decoder_doc = _section_doc(doc, "decoder")
    missing = []
    if "uuid" not in frame_doc:
        missing.append("frame.uuid")
    if "assigned_uuid" not in decoder_doc:
        missing.append("decoder.assigned_uuid")
    if missing:
        raise SchemaError(
            "missing required key(s): " + ", ".join(missing)
            + f" (required: {', '.join(REQUIRED_KEYS)})"
        )

    channel_doc = _section_doc(doc, "channel")
    if "echoes" in channel_doc:
        echoes_doc = channel_doc["echoes"]
        if not isinstance(echoes_doc, list):
            raise SchemaError("channel.echoes must be a list")
        echoes = []
        for i, e in enumerate(echoes_doc):
            if not isinstance(e, dict) or set(e) - {"extra_path", "gain"}:
                raise SchemaError(
                    f"channel.echoes[{i}] must be a mapping with extra_path and gain"
                )
            try:
                echoes.append(Echo(**e))
            except ConfigurationError as exc:
                raise SchemaError(f"invalid value in channel.echoes[{i}]: {exc}") from exc
        channel_doc["echoes"] = echoes

    kwargs: dict[str, Any] = {
        "frame": _build_section("frame", WakeupFrame, frame_doc),
        "decoder": _build_section("decoder", DecoderConfig, decoder_doc),
        "channel": _build_section("channel", ChannelModel, channel_doc),
    }
    for section in ("modulation", "transducer", "rectifier", "harvester", "load", "sim"):
        kwargs[section] = _build_section(section, _SECTIONS[section], _section_doc(doc, section))
    if "demod" in doc:
        demod_doc = _section_doc(doc, "demod")
        known = {f.name for f in dataclasses.fields(DemodParams)}
        for key in demod_doc:
            if key not in known:
                raise SchemaError(f"unknown key demod.{key}")
        try:
            # omitted taus still track the frame's bit rate
            kwargs["demod"] = DemodParams.for_bit_rate(
                kwargs["frame"].bit_rate, **demod_doc
            )
        except ConfigurationError as exc:
            raise SchemaError(f"invalid value in section 'demod': {exc}") from exc
    return Scenario(**kwargs)


def load_scenario(path: str | Path) -> Scenario:
    path = Path(path)
    if not path.exists():
        raise SchemaError(f"scenario file not found: {path}")
    try:
        doc = yaml.safe_load(path.read_text())
    except yaml.YAMLError as exc:
        raise SchemaError(f"scenario file {path} is not valid YAML: {exc}") from exc
    return scenario_from_dict(doc)
