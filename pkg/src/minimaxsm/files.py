"""JSON file formats.  Instances, matchings, and reports use 1-based agent
indices on disk; everything in memory is 0-based."""

from __future__ import annotations

import json
from pathlib import Path

from .core import Completion, Instance, Matching, TierList, ValidationError
from .generators import ReductionCertificate
from .solvers import SolveReport

REPORT_SCHEMA = 1


def instance_to_dict(inst: Instance) -> dict:
    def side(tls) -> list:
        return [[[x + 1 for x in tier] for tier in tl.tiers] for tl in tls]

    return {"n": inst.n, "men": side(inst.men), "women": side(inst.women)}


def instance_from_dict(doc: dict) -> Instance:
    try:
        n = int(doc["n"])
        raw_men = doc["men"]
        raw_women = doc["women"]
    except (KeyError, TypeError) as exc:
        raise ValidationError(f"instance document missing field: {exc}") from exc

    def side(raw, label: str) -> list[TierList]:
        if not isinstance(raw, list) or len(raw) != n:
            raise ValidationError(f"expected a list of {n} {label}")
        out = []
        for i, tiers in enumerate(raw):
            try:
                tl = TierList(tuple(tuple(int(x) - 1 for x in t) for t in tiers))
            except (TypeError, ValueError) as exc:
                raise ValidationError(f"{label[:-1]} {i + 1}: malformed tiers") from exc
            out.append(tl)
        return out

    return Instance(side(raw_men, "men"), side(raw_women, "women"))


def matching_to_dict(matching: Matching) -> dict:
    return {"pairs": [[m + 1, w + 1] for m, w in matching.pairs]}


def matching_from_dict(doc: dict) -> Matching:
    try:
        pairs = [(int(m) - 1, int(w) - 1) for m, w in doc["pairs"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise ValidationError(f"malformed matching document: {exc}") from exc
    return Matching(pairs)


def completion_to_dict(completion: Completion) -> dict:
    """Completions are stored in the instance format with singleton tiers."""
    return {
        "n": completion.n,
        "men": [[[x + 1] for x in order] for order in completion.men_orders],
        "women": [[[x + 1] for x in order] for order in completion.women_orders],
    }


def report_to_dict(report: SolveReport) -> dict:
    deleted = None
    if report.deleted_men is not None or report.deleted_women is not None:
        deleted = {
            "men": [m + 1 for m in (report.deleted_men or ())],
            "women": [w + 1 for w in (report.deleted_women or ())],
        }
    return {
        "schema": REPORT_SCHEMA,
        "algorithm": report.algorithm,
        "matching": matching_to_dict(report.matching),
        "super_blocking_pairs": [[m + 1, w + 1] for m, w in report.super_blocking_pairs],
        "obvious_blocking_pairs": [
            [m + 1, w + 1] for m, w in report.obvious_blocking_pairs
        ],
        "deleted_agents": deleted,
        "witness_completion": completion_to_dict(report.witness_completion),
    }


def certificate_to_dict(cert: ReductionCertificate, checks: list[dict]) -> dict:
    return {
        "schema": REPORT_SCHEMA,
        "graph": {
            "k": cert.graph.k,
            "edges": [[a + 1, b + 1] for a, b in cert.graph.edges],
        },
        "k0": cert.k0,
        "y": cert.y,
        "z": cert.z,
        "n": cert.n,
        "figure_verbatim": cert.figure_verbatim,
        "man_names": list(cert.man_names),
        "woman_names": list(cert.woman_names),
        "blocks": [
            {
                "edge": [block.edge[0] + 1, block.edge[1] + 1],
                "s_men": [m + 1 for m in block.s_men],
                "t_women": [w + 1 for w in block.t_women],
                "p_men": [m + 1 for m in block.p_men],
                "v_women": [w + 1 for w in block.v_women],
                "matching_1": [[m + 1, w + 1] for m, w in block.red_pairs],
                "matching_2": [[m + 1, w + 1] for m, w in block.blue_pairs],
                "check": check,
            }
            for block, check in zip(cert.blocks, checks)
        ],
    }


def write_json(path: str | Path, doc: dict) -> None:
    Path(path).write_text(
        json.dumps(doc, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )


def read_json(path: str | Path) -> dict:
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{path}: not valid JSON ({exc})") from exc


def load_instance(path: str | Path) -> Instance:
    return instance_from_dict(read_json(path))


def save_instance(inst: Instance, path: str | Path) -> None:
    write_json(path, instance_to_dict(inst))


def load_matching(path: str | Path) -> Matching:
    return matching_from_dict(read_json(path))


def save_matching(matching: Matching, path: str | Path) -> None:
    write_json(path, matching_to_dict(matching))
