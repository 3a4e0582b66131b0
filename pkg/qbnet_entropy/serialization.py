"""JSON codecs for states, channels, ensembles, nets and verdicts.

Density matrices are nested lists of rows whose entries are [re, im] pairs;
plain real entries are accepted on input. Net amplitude tables and Kraus
operators are flat row-major lists of [re, im] pairs, shaped back from the
declared dimensions. Non-finite floats are written as
the strings "inf", "-inf" and "nan". Every document carries a `schema` tag.

Decoders check structure and shapes only. Density-matrix and channel
invariants are left to `qbnet_entropy.validation`, so a caller can report
how far a document is from valid instead of failing on the first problem.
"""

import json
import math
from collections.abc import Mapping, Sequence
from pathlib import Path
from typing import Any

import numpy as np

from qbnet_entropy.channels import KrausChannel
from qbnet_entropy.entropy import Ensemble, ProbDist
from qbnet_entropy.errors import FormatError, QbnetError
from qbnet_entropy.netmodel import Marking, Node, QBNet
from qbnet_entropy.tensor_core import LabeledState, SubsystemLayout
from qbnet_entropy.types import ComplexMatrix
from qbnet_entropy.verdicts import CheckVerdict, Relation

STATE_SCHEMA = "qbnet-entropy/state-v1"
CHANNEL_SCHEMA = "qbnet-entropy/channel-v1"
ENSEMBLE_SCHEMA = "qbnet-entropy/ensemble-v1"
NET_SCHEMA = "qbnet-entropy/net-v1"

_NON_FINITE = {"inf": math.inf, "-inf": -math.inf, "nan": math.nan}


def encode_float(x: float) -> float | str:
    """The float itself, or its string name when it is not finite."""
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return float(x)


def decode_float(value: object) -> float:
    """Inverse of `encode_float`.

    Raises:
        FormatError: If the value is neither a number nor a known name.
    """
    if isinstance(value, str):
        if value not in _NON_FINITE:
            msg = f"expected a number or one of {sorted(_NON_FINITE)}, got {value!r}"
            raise FormatError(msg)
        return _NON_FINITE[value]
    if isinstance(value, bool) or not isinstance(value, int | float):
        msg = f"expected a number, got {value!r}"
        raise FormatError(msg)
    return float(value)


def encode_matrix(m: ComplexMatrix) -> list[Any]:
    """Nested lists with [re, im] pairs as the innermost entries."""
    array = np.asarray(m, dtype=np.complex128)
    return np.stack([array.real, array.imag], axis=-1).tolist()


def decode_matrix(data: object, ndim: int = 2) -> ComplexMatrix:
    """Decode `encode_matrix` output, or plain real nested lists.

    Raises:
        FormatError: If the data is ragged or has the wrong rank.
    """
    try:
        array = np.asarray(data, dtype=np.float64)
    except (TypeError, ValueError) as e:
        msg = f"cannot read a numeric array: {e}"
        raise FormatError(msg) from e
    if array.ndim == ndim + 1 and array.shape[-1] == 2:  # noqa: PLR2004
        return array[..., 0] + 1j * array[..., 1]
    if array.ndim == ndim:
        return array.astype(np.complex128)
    msg = f"expected a rank-{ndim} array of [re, im] pairs, got shape {array.shape}"
    raise FormatError(msg)


def encode_pairs(m: ComplexMatrix) -> list[list[float]]:
    """Flat row-major list of [re, im] pairs."""
    flat = np.asarray(m, dtype=np.complex128).ravel()
    return np.stack([flat.real, flat.imag], axis=-1).tolist()


def decode_pairs(data: object, rows: int, what: str, cols: int | None = None) -> ComplexMatrix:
    """Read a flat row-major [re, im] pair list back into a `rows` x `cols` matrix.

    With `cols` left out, the column count is whatever the entry count gives.

    Raises:
        FormatError: If the data is not a pair list or its length does not fit.
    """
    try:
        array = np.asarray(data, dtype=np.float64)
    except (TypeError, ValueError) as e:
        msg = f"cannot read a numeric array: {e}"
        raise FormatError(msg) from e
    if array.ndim != 2 or array.shape[1] != 2:  # noqa: PLR2004
        msg = f"{what}: expected a flat list of [re, im] pairs, got shape {array.shape}"
        raise FormatError(msg)
    count = array.shape[0]
    if rows < 1 or count == 0 or count % rows or (cols is not None and count != rows * cols):
        expected = f"{rows} x {cols}" if cols is not None else f"a multiple of {rows}"
        msg = f"{what}: {count} entries do not fill {expected}"
        raise FormatError(msg)
    return (array[:, 0] + 1j * array[:, 1]).reshape(rows, count // rows)


def _field(doc: Mapping[str, Any], key: str, what: str) -> Any:  # noqa: ANN401
    if key not in doc:
        msg = f"{what} document is missing {key!r}"
        raise FormatError(msg)
    return doc[key]


def _check_schema(doc: object, schema: str) -> Mapping[str, Any]:
    if not isinstance(doc, Mapping):
        msg = f"expected a JSON object for {schema}, got {type(doc).__name__}"
        raise FormatError(msg)
    found = doc.get("schema", schema)
    if found != schema:
        msg = f"expected schema {schema!r}, got {found!r}"
        raise FormatError(msg)
    return doc


def state_to_json(state: LabeledState) -> dict[str, Any]:
    """{schema, labels, dims, matrix}."""
    return {
        "schema": STATE_SCHEMA,
        "labels": list(state.labels),
        "dims": list(state.layout.dims),
        "matrix": encode_matrix(state.matrix),
    }


def state_from_json(doc: object) -> LabeledState:
    """Decode a state document.

    Raises:
        FormatError: If the document is malformed or does not fit its layout.
    """
    body = _check_schema(doc, STATE_SCHEMA)
    try:
        layout = SubsystemLayout(
            tuple(str(x) for x in _field(body, "labels", "state")),
            tuple(int(x) for x in _field(body, "dims", "state")),
        )
        return LabeledState(layout, decode_matrix(_field(body, "matrix", "state")))
    except FormatError:
        raise
    except (QbnetError, TypeError) as e:
        msg = f"invalid state document: {e}"
        raise FormatError(msg) from e


def channel_to_json(c: KrausChannel) -> dict[str, Any]:
    """{schema, in_dim, out_dim, kraus}."""
    return {
        "schema": CHANNEL_SCHEMA,
        "in_dim": c.in_dim,
        "out_dim": c.out_dim,
        "kraus": [encode_pairs(k) for k in c.kraus],
    }


def channel_from_json(doc: object) -> KrausChannel:
    """Decode a channel document; each operator is out_dim x in_dim pairs.

    Raises:
        FormatError: If the document is malformed or an operator does not fill its dims.
    """
    body = _check_schema(doc, CHANNEL_SCHEMA)
    try:
        in_dim = int(_field(body, "in_dim", "channel"))
        out_dim = int(_field(body, "out_dim", "channel"))
        kraus = tuple(
            decode_pairs(k, out_dim, f"kraus operator {i}", in_dim)
            for i, k in enumerate(_field(body, "kraus", "channel"))
        )
        return KrausChannel(kraus)
    except FormatError:
        raise
    except (QbnetError, TypeError, ValueError) as e:
        msg = f"invalid channel document: {e}"
        raise FormatError(msg) from e


def ensemble_to_json(e: Ensemble) -> dict[str, Any]:
    """{schema, weights, states}."""
    return {
        "schema": ENSEMBLE_SCHEMA,
        "weights": e.weights.probabilities.tolist(),
        "states": [state_to_json(s) for s in e.states],
    }


def ensemble_from_json(doc: object) -> Ensemble:
    """Decode an ensemble document; member states may also be given as kets.

    A member may be a state document or {"labels", "dims", "ket"}.

    Raises:
        FormatError: If the document is malformed.
    """
    body = _check_schema(doc, ENSEMBLE_SCHEMA)
    states = []
    try:
        for member in _field(body, "states", "ensemble"):
            if isinstance(member, Mapping) and "ket" in member:
                layout = SubsystemLayout(
                    tuple(str(x) for x in member["labels"]),
                    tuple(int(x) for x in member["dims"]),
                )
                states.append(LabeledState.from_ket(layout, decode_matrix(member["ket"], 1)))
            else:
                states.append(state_from_json(member))
        weights = ProbDist.of([decode_float(w) for w in _field(body, "weights", "ensemble")])
        return Ensemble(weights, tuple(states))
    except FormatError:
        raise
    except (QbnetError, TypeError, KeyError) as e:
        msg = f"invalid ensemble document: {e}"
        raise FormatError(msg) from e


def net_to_json(net: QBNet) -> dict[str, Any]:
    """{schema, nodes: [{label, dim, parents, amplitudes, marking}]}."""
    return {
        "schema": NET_SCHEMA,
        "nodes": [
            {
                "label": node.label,
                "dim": node.state_count,
                "parents": list(node.parents),
                "amplitudes": encode_pairs(node.amplitudes),
                "marking": node.marking.value,
            }
            for node in net.nodes
        ],
    }


def net_from_json(doc: object) -> QBNet:
    """Decode a net document.

    A node's `amplitudes` hold `dim` rows (own state) of parent-assignment
    columns, flattened row-major; the column count follows from the length.

    Raises:
        FormatError: If the document is malformed or describes an invalid net.
    """
    body = _check_schema(doc, NET_SCHEMA)
    nodes = []
    try:
        for raw in _field(body, "nodes", "net"):
            label = str(raw["label"])
            nodes.append(
                Node(
                    label,
                    decode_pairs(raw["amplitudes"], int(raw["dim"]), f"node {label!r}"),
                    tuple(str(p) for p in raw.get("parents", ())),
                    Marking(raw.get("marking", Marking.VISIBLE)),
                ),
            )
        return QBNet(tuple(nodes))
    except FormatError:
        raise
    except (QbnetError, TypeError, KeyError, ValueError) as e:
        msg = f"invalid net document: {e}"
        raise FormatError(msg) from e


def verdict_to_json(v: CheckVerdict) -> dict[str, Any]:
    """{id, lhs, rhs, margin, holds, seed, dims, …}; parts only when present."""
    doc: dict[str, Any] = {
        "id": v.id,
        "label": v.label,
        "relation": v.relation.value,
        "lhs": encode_float(v.lhs),
        "rhs": encode_float(v.rhs),
        "margin": encode_float(v.margin),
        "tolerance": v.tolerance,
        "holds": v.holds,
        "expect_holds": v.expect_holds,
        "instances": v.instances,
        "seed": v.seed,
        "dims": list(v.dims),
    }
    if v.parts:
        doc["parts"] = [verdict_to_json(p) for p in v.parts]
    return doc


def verdict_from_json(doc: Mapping[str, Any]) -> CheckVerdict:
    """Inverse of `verdict_to_json`.

    Raises:
        FormatError: If a field is missing or malformed.
    """
    try:
        return CheckVerdict(
            id=str(doc["id"]),
            lhs=decode_float(doc["lhs"]),
            rhs=decode_float(doc["rhs"]),
            margin=decode_float(doc["margin"]),
            holds=bool(doc["holds"]),
            relation=Relation(doc.get("relation", Relation.AT_MOST)),
            tolerance=float(doc.get("tolerance", 0.0)),
            label=str(doc.get("label", "")),
            seed=doc.get("seed"),
            dims=tuple(int(d) for d in doc.get("dims", ())),
            parts=tuple(verdict_from_json(p) for p in doc.get("parts", ())),
            instances=int(doc.get("instances", 1)),
            expect_holds=bool(doc.get("expect_holds", True)),
        )
    except (KeyError, ValueError, TypeError) as e:
        msg = f"invalid verdict document: {e}"
        raise FormatError(msg) from e


def dumps(doc: object) -> str:
    """Deterministic JSON text: sorted keys, two-space indent, trailing newline."""
    return json.dumps(doc, sort_keys=True, indent=2, allow_nan=False) + "\n"


def load_document(path: str | Path) -> Any:  # noqa: ANN401
    """Read and parse a JSON file.

    Raises:
        FormatError: If the file cannot be read or is not JSON.
    """
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as e:
        msg = f"cannot read {path}: {e.strerror}"
        raise FormatError(msg) from e
    except json.JSONDecodeError as e:
        msg = f"{path} is not valid JSON: {e}"
        raise FormatError(msg) from e


def encode_floats(values: Sequence[float]) -> list[float | str]:
    """`encode_float` over a sequence."""
    return [encode_float(x) for x in values]
