"""Tests for the JSON codecs."""

import json
import math
from pathlib import Path

import numpy as np
import pytest

from qbnet_entropy.channels import dephasing_channel
from qbnet_entropy.errors import FormatError
from qbnet_entropy.netmodel import Marking, Node, QBNet, compile_density
from qbnet_entropy.randgen import random_density_matrix
from qbnet_entropy.serialization import (
    CHANNEL_SCHEMA,
    ENSEMBLE_SCHEMA,
    NET_SCHEMA,
    STATE_SCHEMA,
    channel_from_json,
    channel_to_json,
    decode_float,
    decode_matrix,
    dumps,
    encode_float,
    ensemble_from_json,
    load_document,
    net_from_json,
    net_to_json,
    state_from_json,
    state_to_json,
    verdict_from_json,
    verdict_to_json,
)
from qbnet_entropy.tensor_core import SubsystemLayout
from qbnet_entropy.verdicts import at_most, composite, equal


def test_state_survives_json_text() -> None:
    """Test a complex state through the full text encoding."""
    state = random_density_matrix(SubsystemLayout.of(("a", 2), ("b", 3)), None, 4)
    decoded = state_from_json(json.loads(dumps(state_to_json(state))))

    assert decoded.labels == ("a", "b")
    np.testing.assert_array_equal(decoded.matrix, state.matrix)


def test_plain_real_matrix_is_accepted() -> None:
    """Test that real entries need no [re, im] pairs and schema is optional."""
    state = state_from_json({"labels": ["q"], "dims": [2], "matrix": [[0.5, 0], [0, 0.5]]})
    np.testing.assert_allclose(state.matrix, np.eye(2) / 2)


@pytest.mark.parametrize(
    ("doc", "match"),
    [
        ([], "expected a JSON object"),
        ({"schema": CHANNEL_SCHEMA}, f"expected schema '{STATE_SCHEMA}'"),
        ({"labels": ["q"], "dims": [2]}, "missing 'matrix'"),
        ({"labels": ["q"], "dims": [2], "matrix": [[1, 0], [0]]}, "cannot read a numeric array"),
        ({"labels": ["q"], "dims": [3], "matrix": [[1, 0], [0, 0]]}, "invalid state document"),
        ({"labels": ["q"], "dims": [2], "matrix": [1, 0]}, "rank-2 array"),
    ],
)
def test_state_format_errors(doc: object, match: str) -> None:
    """Test the labeled errors for malformed state documents."""
    with pytest.raises(FormatError, match=match):
        state_from_json(doc)


def test_channel_documents() -> None:
    """Test channel decoding and the declared-dimension check."""
    doc = channel_to_json(dephasing_channel(3))
    channel = channel_from_json(doc)
    assert (channel.in_dim, channel.out_dim, len(channel.kraus)) == (3, 3, 3)

    doc["out_dim"] = 2
    with pytest.raises(FormatError, match="kraus operator 0: 9 entries do not fill 2 x 3"):
        channel_from_json(doc)


def test_channel_operators_are_flat_pairs() -> None:
    """Test a hand-written document with one flat pair list per operator."""
    doc = {
        "schema": CHANNEL_SCHEMA,
        "in_dim": 2,
        "out_dim": 2,
        "kraus": [[[1, 0], [0, 0], [0, 0], [1, 0]]],
    }
    channel = channel_from_json(doc)

    assert (channel.in_dim, channel.out_dim) == (2, 2)
    np.testing.assert_array_equal(channel.kraus[0], np.eye(2))
    assert channel_to_json(channel)["kraus"] == doc["kraus"]


def test_non_square_kraus_operator_keeps_orientation() -> None:
    """Test that an isometry 1 -> 2 is read as a 2 x 1 operator."""
    doc = {"in_dim": 1, "out_dim": 2, "kraus": [[[0, 0], [0, 1]]]}
    channel = channel_from_json(doc)

    assert (channel.in_dim, channel.out_dim) == (1, 2)
    np.testing.assert_array_equal(channel.kraus[0], [[0], [1j]])


def test_ensemble_from_kets() -> None:
    """Test ensemble members given as kets."""
    doc = {
        "schema": ENSEMBLE_SCHEMA,
        "weights": [0.25, 0.75],
        "states": [
            {"labels": ["q"], "dims": [2], "ket": [1, 0]},
            {"labels": ["q"], "dims": [2], "ket": [[0, 0], [1, 0]]},
        ],
    }
    ensemble = ensemble_from_json(doc)

    np.testing.assert_allclose(ensemble.weights.probabilities, [0.25, 0.75])
    np.testing.assert_allclose(ensemble.average_state().matrix, np.diag([0.25, 0.75]))


def test_ensemble_errors() -> None:
    """Test that bad weights and missing keys become format errors."""
    member = {"labels": ["q"], "dims": [2], "ket": [1, 0]}
    with pytest.raises(FormatError, match="invalid ensemble document"):
        ensemble_from_json({"weights": [0.5, 0.2], "states": [member, member]})
    with pytest.raises(FormatError, match="invalid ensemble document"):
        ensemble_from_json({"weights": [1.0], "states": [{"ket": [1, 0]}]})


def test_net_documents() -> None:
    """Test that a decoded net compiles to the same state."""
    net = QBNet(
        (
            Node("a", np.full(2, 2**-0.5)),
            Node("b", np.eye(2), ("a",), Marking.CLASSICAL),
        ),
    )
    decoded = net_from_json(json.loads(dumps(net_to_json(net))))

    assert decoded.node("b").marking is Marking.CLASSICAL
    np.testing.assert_allclose(compile_density(decoded).matrix, compile_density(net).matrix)


def test_net_amplitudes_are_flat_pairs() -> None:
    """Test a hand-written net: own-state major, parent-assignment minor."""
    h = 2**-0.5
    doc = {
        "schema": NET_SCHEMA,
        "nodes": [
            {"label": "a", "dim": 2, "parents": [], "amplitudes": [[h, 0], [h, 0]]},
            {
                "label": "b",
                "dim": 2,
                "parents": ["a"],
                "amplitudes": [[1, 0], [0, 0], [0, 0], [1, 0]],
                "marking": "visible",
            },
        ],
    }
    net = net_from_json(doc)

    assert net.node("a").amplitudes.shape == (2, 1)
    np.testing.assert_array_equal(net.node("b").amplitudes, np.eye(2))
    bell = np.zeros((4, 4))
    bell[np.ix_([0, 3], [0, 3])] = 0.5
    np.testing.assert_allclose(compile_density(net).matrix, bell, atol=1e-15)
    assert net_to_json(net)["nodes"][1]["amplitudes"] == doc["nodes"][1]["amplitudes"]


def test_net_table_orientation() -> None:
    """Test that a 3-state child of a qubit keeps its 3 x 2 table."""
    raw = np.arange(6.0).reshape(3, 2)
    table = raw / np.linalg.norm(raw, axis=0)
    net = QBNet((Node("a", [1.0, 0.0]), Node("b", table, ("a",))))
    doc = net_to_json(net)

    assert doc["nodes"][1]["amplitudes"][:2] == [[0.0, 0.0], [table[0, 1], 0.0]]
    np.testing.assert_array_equal(net_from_json(doc).node("b").amplitudes, table)


def test_net_errors() -> None:
    """Test the declared-dimension check and invalid nets."""
    doc = net_to_json(QBNet((Node("a", [1.0, 0.0]),)))
    doc["nodes"][0]["dim"] = 3
    with pytest.raises(FormatError, match="node 'a': 2 entries do not fill a multiple of 3"):
        net_from_json(doc)

    doc = {"nodes": [{"label": "a", "dim": 2, "amplitudes": [1, 0]}]}
    with pytest.raises(FormatError, match="node 'a': expected a flat list of"):
        net_from_json(doc)

    doc = {"nodes": [{"label": "a", "amplitudes": [[1, 0], [0, 0]]}]}
    with pytest.raises(FormatError, match="invalid net document"):
        net_from_json(doc)

    doc = {"nodes": [{"label": "a", "dim": 2, "amplitudes": [[1, 0], [0, 0]], "parents": ["z"]}]}
    with pytest.raises(FormatError, match="invalid net document"):
        net_from_json(doc)


def test_verdicts_with_infinite_values() -> None:
    """Test that infinite margins are written as names and read back."""
    verdict = composite("x", [at_most("x", 1.0, math.inf), equal("x", 0.5, 0.5)])
    doc = json.loads(dumps(verdict_to_json(verdict)))

    assert doc["parts"][0]["margin"] == "inf"
    decoded = verdict_from_json(doc)
    assert decoded.parts[0].margin == math.inf
    assert decoded.holds


def test_verdict_missing_field() -> None:
    """Test the labeled error for an incomplete verdict."""
    with pytest.raises(FormatError, match="invalid verdict document"):
        verdict_from_json({"id": "x"})


@pytest.mark.parametrize(("value", "encoded"), [(1.5, 1.5), (math.inf, "inf"), (-math.inf, "-inf")])
def test_encode_float(value: float, encoded: float | str) -> None:
    """Test float encoding."""
    assert encode_float(value) == encoded
    assert decode_float(encoded) == value


def test_nan_is_named() -> None:
    """Test that NaN is written by name."""
    assert encode_float(math.nan) == "nan"
    assert math.isnan(decode_float("nan"))


@pytest.mark.parametrize("value", ["infinity", True, None, [1.0]])
def test_decode_float_errors(value: object) -> None:
    """Test that non-numbers are refused."""
    with pytest.raises(FormatError):
        decode_float(value)


def test_decode_matrix_vector() -> None:
    """Test rank-1 decoding of [re, im] pairs."""
    np.testing.assert_array_equal(decode_matrix([[1, 2], [0, -1]], 1), [1 + 2j, -1j])


def test_dumps_is_deterministic() -> None:
    """Test sorted keys and the trailing newline."""
    assert dumps({"b": 1, "a": [1, 2]}) == '{\n  "a": [\n    1,\n    2\n  ],\n  "b": 1\n}\n'


def test_dumps_refuses_raw_infinity() -> None:
    """Test that non-finite floats must be encoded first."""
    with pytest.raises(ValueError, match="not JSON compliant"):
        dumps({"x": math.inf})


def test_load_document_errors(tmp_path: Path) -> None:
    """Test missing files and invalid JSON."""
    with pytest.raises(FormatError, match="cannot read"):
        load_document(tmp_path / "missing.json")

    broken = tmp_path / "broken.json"
    broken.write_text("{", encoding="utf-8")
    with pytest.raises(FormatError, match="is not valid JSON"):
        load_document(broken)
