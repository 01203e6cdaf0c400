"""Transcript persistence.

One JSON object per run with a fixed field order:

    protocol, params, seed, mode, adversary, <message fields>, verdict, stats

where <message fields> is ``sender_message`` for the one-shot protocol,
``ots1C``/``ots1NC``/``ots2`` for the two-round protocol, and
``sender_message`` for the skeleton.  Every byte-string is lowercase hex
(tail-padded to whole bytes; bit lengths follow from the params).  Reading
accepts hex in either case and rejects unknown fields by name.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

_FIELDS_BY_PROTOCOL = {
    "oneshot": ["protocol", "params", "seed", "mode", "adversary", "sender_message", "verdict", "stats"],
    "skeleton": ["protocol", "params", "seed", "mode", "adversary", "sender_message", "verdict", "stats"],
    "tworound": ["protocol", "params", "seed", "mode", "adversary", "ots1C", "ots1NC", "ots2", "verdict", "stats"],
}
_VERDICT_FIELDS = ["accept", "failed_step", "b", "m_b"]


class SchemaError(ValueError):
    pass


@dataclass
class Transcript:
    protocol: str
    params: dict
    seed: str
    mode: str
    adversary: str
    verdict: dict
    stats: dict = field(default_factory=dict)
    sender_message: dict | None = None
    ots1C: dict | None = None
    ots1NC: dict | None = None
    ots2: dict | None = None

    def message_fields(self) -> dict:
        if self.protocol == "tworound":
            return {"ots1C": self.ots1C, "ots1NC": self.ots1NC, "ots2": self.ots2}
        return {"sender_message": self.sender_message}


def _normalize_hex(value, path: str):
    if isinstance(value, dict):
        return {k: _normalize_hex(v, f"{path}.{k}") for k, v in value.items()}
    if isinstance(value, list):
        return [_normalize_hex(v, f"{path}[{i}]") for i, v in enumerate(value)]
    if isinstance(value, str) and value and all(c in "0123456789abcdefABCDEF" for c in value) and len(value) % 2 == 0:
        return value.lower()
    return value


def serialize_transcript(t: Transcript) -> bytes:
    if t.protocol not in _FIELDS_BY_PROTOCOL:
        raise SchemaError(f"unknown protocol {t.protocol!r}")
    ordered = {}
    for name in _FIELDS_BY_PROTOCOL[t.protocol]:
        if name == "verdict":
            verdict = t.verdict
            missing = [k for k in _VERDICT_FIELDS if k not in verdict]
            if missing:
                raise SchemaError(f"verdict missing field {missing[0]!r}")
            extra = [k for k in verdict if k not in _VERDICT_FIELDS]
            if extra:
                raise SchemaError(f"verdict has unknown field {extra[0]!r}")
            ordered[name] = {k: verdict[k] for k in _VERDICT_FIELDS}
        elif name in ("sender_message", "ots1C", "ots1NC", "ots2"):
            value = getattr(t, name)
            if value is None:
                raise SchemaError(f"missing message field {name!r} for protocol {t.protocol!r}")
            ordered[name] = value
        else:
            ordered[name] = getattr(t, name)
    ordered = _normalize_hex(ordered, "$")
    return json.dumps(ordered, separators=(",", ":"), sort_keys=False).encode()


def deserialize_transcript(data: bytes) -> Transcript:
    try:
        raw = json.loads(data.decode())
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise SchemaError(f"not valid transcript JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise SchemaError("transcript must be a JSON object")
    protocol = raw.get("protocol")
    if protocol not in _FIELDS_BY_PROTOCOL:
        raise SchemaError(f"unknown protocol {protocol!r}")
    allowed = _FIELDS_BY_PROTOCOL[protocol]
    for key in raw:
        if key not in allowed:
            raise SchemaError(f"unknown field {key!r}")
    for key in allowed:
        if key not in raw:
            raise SchemaError(f"missing field {key!r}")
    verdict = raw["verdict"]
    for key in verdict:
        if key not in _VERDICT_FIELDS:
            raise SchemaError(f"unknown field 'verdict.{key}'")
    for key in _VERDICT_FIELDS:
        if key not in verdict:
            raise SchemaError(f"missing field 'verdict.{key}'")
    raw = _normalize_hex(raw, "$")
    kwargs = {
        "protocol": raw["protocol"],
        "params": raw["params"],
        "seed": raw["seed"],
        "mode": raw["mode"],
        "adversary": raw["adversary"],
        "verdict": raw["verdict"],
        "stats": raw["stats"],
    }
    if protocol == "tworound":
        kwargs.update(ots1C=raw["ots1C"], ots1NC=raw["ots1NC"], ots2=raw["ots2"])
    else:
        kwargs.update(sender_message=raw["sender_message"])
    return Transcript(**kwargs)
