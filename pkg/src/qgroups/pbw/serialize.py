"""JSON codecs for the wire shapes in schema/pbw.schema.json."""
from __future__ import annotations

import json
from functools import cache
from pathlib import Path
from typing import Any, Callable

import jsonschema

from qgroups.pbw.bases import PBWCombo, TransitionMatrix
from qgroups.pbw.qarith import LaurentPoly, RationalFunction, UPoly
from qgroups.pbw.repmod import TensorVector
from qgroups.pbw.udot1 import UdotElement

_SCHEMA_PATH = Path(__file__).parent / "schema" / "pbw.schema.json"

_DECODERS: dict[str, Callable[[Any], Any]] = {
    "LaurentPoly": LaurentPoly.from_json,
    "RationalFunction": RationalFunction.from_json,
    "UPoly": UPoly.from_json,
    "UdotElement": UdotElement.from_json,
    "PBWCombo": PBWCombo.from_json,
    "TransitionMatrix": TransitionMatrix.from_json,
    "TensorVector": TensorVector.from_json,
}

KINDS = tuple(_DECODERS)


class DecodeError(ValueError):
    """Raised when a JSON document does not match its wire shape."""

    def __init__(self, message: str, kind: str, path: str = "") -> None:
        super().__init__(message)
        self.kind = kind
        self.path = path


@cache
def _schema() -> dict[str, Any]:
    with _SCHEMA_PATH.open() as fh:
        return json.load(fh)


def _validator(kind: str) -> jsonschema.Draft202012Validator:
    if kind not in _DECODERS:
        raise ValueError(f"unknown kind {kind!r}; expected one of {', '.join(KINDS)}")
    schema = {**_schema(), "$ref": f"#/$defs/{kind}"}
    return jsonschema.Draft202012Validator(schema)


def validate(kind: str, data: Any) -> None:
    """Check ``data`` against the ``kind`` shape.

    Raises:
        DecodeError: with the failing JSON path.
    """
    try:
        _validator(kind).validate(data)
    except jsonschema.ValidationError as exc:
        path = " > ".join(str(p) for p in exc.absolute_path)
        raise DecodeError(f"Invalid {kind}: {exc.message} (at {path or '<root>'})", kind, path) from exc


def to_data(obj: Any) -> Any:
    """Encode ``obj`` and check the result against its wire shape.

    Raises:
        DecodeError: if the encoded document does not match the schema.
        ValueError: if ``obj`` is not one of :data:`KINDS`.
    """
    kind = type(obj).__name__
    if kind not in _DECODERS:
        raise ValueError(f"cannot encode {kind}; expected one of {', '.join(KINDS)}")
    data = obj.to_json()
    validate(kind, data)
    return data


def dumps(obj: Any, indent: int | None = None) -> str:
    return json.dumps(to_data(obj), indent=indent)


def from_data(kind: str, data: Any) -> Any:
    validate(kind, data)
    try:
        return _DECODERS[kind](data)
    except (ValueError, ZeroDivisionError) as exc:
        raise DecodeError(f"Invalid {kind}: {exc}", kind) from exc


def loads(kind: str, text: str) -> Any:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DecodeError(f"Invalid JSON for {kind}: {exc.msg}", kind) from exc
    return from_data(kind, data)
