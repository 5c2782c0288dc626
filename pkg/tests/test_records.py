import numpy as np
import pytest

from lemon import LemonParams
from lemon.conductance import SweepCurve
from lemon.driver import DetectionResult, IterationRecord
from lemon.records import (
    detection_record,
    param_sweep_record,
    parse_record,
    serialize_record,
    sweep_record,
)


def test_scalar_roundtrip():
    text = serialize_record(
        "demo",
        [("count", 42), ("negative", -7), ("rate", 0.123456789), ("tag", "auto")],
    )
    parsed = parse_record(text)
    assert parsed["type"] == "demo"
    assert parsed["count"] == 42 and isinstance(parsed["count"], int)
    assert parsed["negative"] == -7
    assert parsed["tag"] == "auto"
    # reals survive to 6 significant digits
    assert parsed["rate"] == pytest.approx(0.123456789, rel=5e-6)


def test_list_roundtrip_preserves_integers():
    text = serialize_record("demo", [("members", [5, 3, 1000000007]), ("phi", [0.5, 1 / 3])])
    parsed = parse_record(text)
    assert parsed["members"] == [5, 3, 1000000007]
    assert parsed["phi"][1] == pytest.approx(1 / 3, rel=1e-6)


def test_serialize_is_stable_under_reparse():
    fields = [("a", 1), ("b", [2, 3]), ("c", 0.25), ("d", "x")]
    text = serialize_record("demo", fields)
    parsed = parse_record(text)
    again = serialize_record("demo", [(k, parsed[k]) for k, _ in fields])
    assert again == text


def test_none_fields_are_omitted():
    text = serialize_record("demo", [("present", 1), ("absent", None)])
    assert "absent" not in text


def test_rejects_foreign_text():
    with pytest.raises(ValueError):
        parse_record("something else\n")


def test_detection_record_contains_iterations():
    params = LemonParams(mode="auto")
    result = DetectionResult(
        members=[4, 2, 9],
        chosen_size=3,
        iterations=[
            IterationRecord(0, 3, 3, phi_min=0.5, sweep_argmin=3, f1=0.9),
            IterationRecord(1, 5, 3, phi_min=0.4, sweep_argmin=3, f1=1.0),
        ],
        stop_reason="max_iter",
        params=params,
        chosen_iteration=1,
        rng_seed=11,
        combo=(3, 3),
    )
    parsed = parse_record(detection_record(result))
    assert parsed["members"] == [4, 2, 9]
    assert parsed["iteration_phi_min"] == [0.5, 0.4]
    assert parsed["stop_reason"] == "max_iter"
    assert parsed["rng_seed"] == 11
    assert parsed["params.mode"] == "auto"


def test_sweep_record_roundtrip():
    curve = SweepCurve(sizes=[2, 3], conductances=[0.5, 1 / 3], argmin_size=3, min_value=1 / 3)
    parsed = parse_record(sweep_record(curve))
    assert parsed["sizes"] == [2, 3]
    assert parsed["argmin_size"] == 3


def test_param_sweep_record_layout():
    parsed = parse_record(
        param_sweep_record(7, 24, [(3, 1, 0.8, 0.1), (3, 2, 0.9, 0.05)])
    )
    assert parsed["dimensions"] == [1, 2]
    assert parsed["combos"] == 2
    assert parsed["mean_f1"] == pytest.approx([0.8, 0.9])
