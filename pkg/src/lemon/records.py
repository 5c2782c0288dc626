"""Canonical text serialization for run results.

One record is a header line, a ``type`` line, then ``key: value`` lines in a
fixed order.  Values are scalars or flat space-separated lists; reals print
with 6 significant digits, integers verbatim, booleans as 0/1.  The format
round-trips every integer field exactly, which makes records diffable in
tests and greppable in batch logs.
"""

from __future__ import annotations

import re

from .conductance import SweepCurve
from .driver import DetectionResult
from .evaluation import BatchReport

__all__ = [
    "batch_record",
    "detection_record",
    "eval_record",
    "gen_record",
    "param_sweep_record",
    "parse_record",
    "serialize_record",
    "sweep_record",
]

HEADER = "lemon-record 1"
_INT_RE = re.compile(r"^[+-]?\d+$")


def _format_scalar(value) -> str:
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, (int,)):
        return str(value)
    if isinstance(value, float):
        return format(value, ".6g")
    return str(value)


def _format_value(value) -> str:
    if isinstance(value, (list, tuple)):
        return " ".join(_format_scalar(v) for v in value)
    return _format_scalar(value)


def serialize_record(kind: str, fields) -> str:
    lines = [HEADER, f"type: {kind}"]
    for key, value in fields:
        if value is None:
            continue
        lines.append(f"{key}: {_format_value(value)}")
    return "\n".join(lines) + "\n"


def _parse_token(token: str):
    if _INT_RE.match(token):
        return int(token)
    try:
        return float(token)
    except ValueError:
        return token


def parse_record(text: str) -> dict:
    lines = text.strip().splitlines()
    if not lines or lines[0] != HEADER:
        raise ValueError("not a lemon record")
    out: dict = {}
    for line in lines[1:]:
        key, _, raw = line.partition(": ")
        tokens = raw.split()
        if len(tokens) == 1:
            out[key] = _parse_token(tokens[0])
        else:
            out[key] = [_parse_token(t) for t in tokens]
    return out


def _params_fields(params) -> list:
    return [
        ("params.walk_steps", params.walk_steps),
        ("params.dimension", params.dimension),
        ("params.expansion_step", params.expansion_step),
        ("params.alpha", float(params.alpha)),
        ("params.avg_comm_size", params.avg_comm_size),
        ("params.size_min", params.size_min),
        ("params.size_max", params.size_max),
        ("params.mode", params.mode),
        ("params.max_iterations", params.max_iterations),
        ("params.degree_normalized_p0", params.degree_normalized_p0),
        ("params.max_walk_spread_steps", params.max_walk_spread_steps),
    ]


def detection_record(result: DetectionResult, members=None) -> str:
    """Serialize one detection; ``members`` overrides ids (e.g. external ids)."""
    members = result.members if members is None else list(members)
    fields = [
        ("rng_seed", result.rng_seed),
        ("combo", list(result.combo) if result.combo else None),
        *_params_fields(result.params),
        ("stop_reason", result.stop_reason),
        ("chosen_iteration", result.chosen_iteration),
        ("chosen_size", result.chosen_size),
        ("iterations", len(result.iterations)),
        ("iteration_seed_sizes", [r.seed_size for r in result.iterations]),
        ("iteration_candidate_sizes", [r.candidate_size for r in result.iterations]),
    ]
    phis = [r.phi_min for r in result.iterations]
    if all(p is not None for p in phis):
        fields.append(("iteration_phi_min", phis))
    f1s = [r.f1 for r in result.iterations]
    if all(f is not None for f in f1s):
        fields.append(("iteration_f1", f1s))
    fields.append(("members", members))
    return serialize_record("detection", fields)


def batch_record(report: BatchReport, rng_seed: int, seeding=None, extra=()) -> str:
    fields = [
        ("rng_seed", rng_seed),
        ("cases", report.cases),
        *_params_fields(report.params),
    ]
    if seeding is not None:
        fields += [
            ("seeding.strategy", seeding.strategy),
            ("seeding.count", seeding.count),
            ("seeding.ratio", float(seeding.ratio)),
            ("seeding.dataset_kind", seeding.dataset_kind),
            ("seeding.enlarge", seeding.enlarge),
        ]
    fields += list(extra)
    fields += [
        ("mean_f1", report.mean),
        ("stddev_f1", report.stddev),
        ("failed_cases", report.failed_cases),
        ("f1_scores", report.f1_scores),
        ("case_seeds", report.case_seeds),
        ("community_indices", report.community_indices),
    ]
    return serialize_record("batch", fields)


def sweep_record(curve: SweepCurve) -> str:
    fields = [
        ("argmin_size", curve.argmin_size),
        ("min_value", curve.min_value),
        ("sizes", curve.sizes),
        ("conductances", curve.conductances),
    ]
    return serialize_record("sweep", fields)


def param_sweep_record(rng_seed: int, cases: int, rows) -> str:
    """rows: iterable of (walk_steps, dimension, mean_f1, stddev_f1)."""
    rows = list(rows)
    fields = [
        ("rng_seed", rng_seed),
        ("cases", cases),
        ("combos", len(rows)),
        ("walk_steps", [r[0] for r in rows]),
        ("dimensions", [r[1] for r in rows]),
        ("mean_f1", [r[2] for r in rows]),
        ("stddev_f1", [r[3] for r in rows]),
    ]
    return serialize_record("param_sweep", fields)


def eval_record(best_scores, best_matches) -> str:
    mean = sum(best_scores) / len(best_scores) if best_scores else 0.0
    fields = [
        ("detected_count", len(best_scores)),
        ("mean_best_f1", mean),
        ("best_f1", list(best_scores)),
        ("best_match_indices", list(best_matches)),
    ]
    return serialize_record("eval", fields)


def gen_record(spec, n: int, num_edges: int, edge_file: str, truth_file: str) -> str:
    fields = [
        ("rng_seed", spec.rng_seed),
        ("vertices", n),
        ("edges", num_edges),
        ("background_p", float(spec.background_p)),
        ("group_sizes", [size for size, _ in spec.groups]),
        ("group_probabilities", [float(p) for _, p in spec.groups]),
        ("edge_file", edge_file),
        ("truth_file", truth_file),
    ]
    return serialize_record("gen", fields)
