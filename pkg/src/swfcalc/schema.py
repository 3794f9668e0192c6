"""Strict JSON input format for spaces and critical-point data.

A space file is a tagged union on the "construct" field:

    rep_sphere            rtilde, quat (non-negative ints, default 0)
    unreduced_suspension  qdims, kappa, optional kappa_s1
    suspend / dualize     of (a nested space), rtilde, quat
    moy                   reducible_degree, irreducibles, g_rank, s1_rank

Validation is strict: unknown fields are rejected, every diagnostic
carries the JSON path of the offending value, and nesting is capped at
depth 32.  A moy node cannot be nested under suspend or dualize (those
operations act on spaces, not on assembled reports).
"""

from __future__ import annotations

import json
from typing import Any, Union

from .errors import InputError
from .floer import InvariantReport, MoyData, assemble_moy
from .rmodule import RMonomial
from .swfclass import (
    KappaData,
    RepDesc,
    SwfClass,
    dualize,
    from_rep_sphere,
    from_unreduced_suspension,
    suspend,
)

MAX_DEPTH = 32

_FIELDS = {
    "rep_sphere": {"construct", "rtilde", "quat"},
    "unreduced_suspension": {"construct", "qdims", "kappa", "kappa_s1"},
    "suspend": {"construct", "of", "rtilde", "quat"},
    "dualize": {"construct", "of", "rtilde", "quat"},
    "moy": {
        "construct",
        "reducible_degree",
        "irreducibles",
        "g_rank",
        "s1_rank",
    },
}

SpaceSpec = dict  # validated JSON tree; see module docstring


def _fail(path: str, message: str) -> None:
    raise InputError(f"{path}: {message}")


def _expect_object(value: Any, path: str) -> dict:
    if not isinstance(value, dict):
        _fail(path, f"expected an object, got {type(value).__name__}")
    return value


def _expect_int(value: Any, path: str, minimum: int | None = None) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        _fail(path, "must be an integer")
    if minimum is not None and value < minimum:
        if minimum == 0:
            _fail(path, "must be a non-negative integer")
        _fail(path, f"must be an integer >= {minimum}")
    return value


def _expect_int_key(key: str, path: str, minimum: int = 0) -> int:
    try:
        value = int(key, 10)
    except ValueError:
        _fail(path, f"key {key!r} is not a decimal integer")
    if str(value) != key.lstrip("+") or value < minimum:
        _fail(path, f"key {key!r} is not a non-negative decimal integer")
    return value


def _expect_bit_array(value: Any, path: str) -> tuple[int, ...]:
    if not isinstance(value, list):
        _fail(path, "must be an array of bits")
    for idx, b in enumerate(value):
        if isinstance(b, bool) or b not in (0, 1):
            _fail(f"{path}[{idx}]", "must be 0 or 1")
    return tuple(value)


def _expect_int_array(value: Any, path: str) -> tuple[int, ...]:
    if not isinstance(value, list):
        _fail(path, "must be an array of integers")
    for idx, b in enumerate(value):
        if isinstance(b, bool) or not isinstance(b, int):
            _fail(f"{path}[{idx}]", "must be an integer")
    return tuple(value)


def validate_space(node: Any, path: str = "$", depth: int = 0) -> dict:
    """Validate one node of the tagged union; returns the node unchanged."""
    if depth > MAX_DEPTH:
        _fail(path, f"nesting deeper than {MAX_DEPTH} levels")
    obj = _expect_object(node, path)
    construct = obj.get("construct")
    if construct is None:
        _fail(path, 'missing required field "construct"')
    if construct not in _FIELDS:
        _fail(
            f"{path}.construct",
            f"unknown construct {construct!r}; expected one of "
            f"{sorted(_FIELDS)}",
        )
    allowed = _FIELDS[construct]
    for key in sorted(obj):
        if key not in allowed:
            _fail(f"{path}.{key}", f'unknown field for construct "{construct}"')

    if construct == "rep_sphere":
        _expect_int(obj.get("rtilde", 0), f"{path}.rtilde", minimum=0)
        _expect_int(obj.get("quat", 0), f"{path}.quat", minimum=0)
    elif construct in ("suspend", "dualize"):
        _expect_int(obj.get("rtilde", 0), f"{path}.rtilde", minimum=0)
        _expect_int(obj.get("quat", 0), f"{path}.quat", minimum=0)
        if "of" not in obj:
            _fail(path, 'missing required field "of"')
        inner = _expect_object(obj["of"], f"{path}.of")
        if inner.get("construct") == "moy":
            _fail(
                f"{path}.of",
                f'"{construct}" acts on spaces; a moy assembly cannot be nested',
            )
        validate_space(inner, f"{path}.of", depth + 1)
    elif construct == "unreduced_suspension":
        if "qdims" not in obj:
            _fail(path, 'missing required field "qdims"')
        qdims = _expect_object(obj["qdims"], f"{path}.qdims")
        for key in sorted(qdims):
            _expect_int_key(key, f"{path}.qdims")
            _expect_int(qdims[key], f"{path}.qdims.{key}", minimum=0)
        if "kappa" not in obj:
            _fail(path, 'missing required field "kappa"')
        kappa = _expect_object(obj["kappa"], f"{path}.kappa")
        for key in sorted(kappa):
            try:
                RMonomial.parse(key)
            except InputError:
                _fail(f"{path}.kappa", f"key {key!r} is not a monomial")
            _expect_bit_array(kappa[key], f"{path}.kappa.{key}")
        if "kappa_s1" in obj:
            ks1 = _expect_object(obj["kappa_s1"], f"{path}.kappa_s1")
            for key in sorted(ks1):
                _expect_int_key(key, f"{path}.kappa_s1")
                _expect_int_array(ks1[key], f"{path}.kappa_s1.{key}")
    else:  # moy
        if "reducible_degree" not in obj:
            _fail(path, 'missing required field "reducible_degree"')
        _expect_int(obj["reducible_degree"], f"{path}.reducible_degree")
        if "irreducibles" not in obj:
            _fail(path, 'missing required field "irreducibles"')
        irr = obj["irreducibles"]
        if not isinstance(irr, list):
            _fail(f"{path}.irreducibles", "must be an array")
        for idx, entry in enumerate(irr):
            epath = f"{path}.irreducibles[{idx}]"
            entry = _expect_object(entry, epath)
            for key in sorted(entry):
                if key not in ("degree", "pairs"):
                    _fail(f"{epath}.{key}", "unknown field")
            if "degree" not in entry:
                _fail(epath, 'missing required field "degree"')
            if "pairs" not in entry:
                _fail(epath, 'missing required field "pairs"')
            _expect_int(entry["degree"], f"{epath}.degree")
            _expect_int(entry["pairs"], f"{epath}.pairs", minimum=0)
        for rank_field in ("g_rank", "s1_rank"):
            if rank_field not in obj:
                _fail(path, f'missing required field "{rank_field}"')
            value = obj[rank_field]
            if value != "auto":
                _expect_int(value, f"{path}.{rank_field}", minimum=0)
    return obj


def parse_space(data: bytes) -> SpaceSpec:
    """Decode UTF-8 JSON and validate it as a space specification."""
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise InputError(f"input is not valid UTF-8: {exc}") from None
    try:
        node = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON: {exc}") from None
    return validate_space(node)


def _kappa_from_spec(obj: dict) -> KappaData:
    qdims = {int(k, 10): v for k, v in obj["qdims"].items()}
    kappa = {RMonomial.parse(k): tuple(v) for k, v in obj["kappa"].items()}
    kappa_s1 = None
    if "kappa_s1" in obj:
        kappa_s1 = {int(k, 10): tuple(v) for k, v in obj["kappa_s1"].items()}
    return KappaData(qdims, kappa, kappa_s1)


def evaluate_space(spec: SpaceSpec) -> Union[SwfClass, InvariantReport]:
    """Evaluate a validated specification tree."""
    construct = spec["construct"]
    if construct == "rep_sphere":
        return from_rep_sphere(spec.get("rtilde", 0), spec.get("quat", 0))
    if construct == "unreduced_suspension":
        return from_unreduced_suspension(_kappa_from_spec(spec))
    if construct == "suspend":
        inner = evaluate_space(spec["of"])
        return suspend(inner, RepDesc(spec.get("rtilde", 0), spec.get("quat", 0)))
    if construct == "dualize":
        inner = evaluate_space(spec["of"])
        return dualize(inner, RepDesc(spec.get("rtilde", 0), spec.get("quat", 0)))
    data = MoyData(
        spec["reducible_degree"],
        tuple((e["degree"], e["pairs"]) for e in spec["irreducibles"]),
        spec["g_rank"],
        spec["s1_rank"],
    )
    return assemble_moy(data)


def canonical_json(value: Any) -> str:
    """Sorted-key, whitespace-free serialization used for cache keys."""
    return json.dumps(value, sort_keys=True, separators=(",", ":"))
