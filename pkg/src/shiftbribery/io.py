"""JSON instance files and source-problem descriptions."""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any

import networkx as nx

from .decomposition import TreeDecomposition
from .election import CostFunction, InfluenceNetwork, Instance, InstanceError


class FormatError(ValueError):
    """A file could not be parsed into the expected structure."""


def _cost_to_dict(pi: CostFunction) -> dict:
    if pi.kind == "identity":
        return {"kind": "identity"}
    if pi.kind == "linear":
        return {"kind": "linear", "coefficient": pi.coefficient}
    return {"kind": "table", "values": list(pi.values)}


def _cost_from_dict(d: dict) -> CostFunction:
    kind = d.get("kind")
    if kind == "identity":
        return CostFunction.identity()
    if kind == "linear":
        return CostFunction.linear(int(d["coefficient"]))
    if kind == "table":
        return CostFunction.table(int(v) for v in d["values"])
    raise FormatError(f"unknown cost kind {kind!r}")


def _weight_from_dict(w) -> Fraction:
    if isinstance(w, dict):
        den = int(w.get("den", 1))
        if den <= 0:
            raise FormatError("weight denominator must be positive")
        return Fraction(int(w["num"]), den)
    if isinstance(w, int) and not isinstance(w, bool):
        return Fraction(w)
    raise FormatError(f"weight must be {{num, den}}, got {w!r}")


def instance_to_dict(instance: Instance, decomposition: TreeDecomposition | None = None) -> dict[str, Any]:
    metadata = dict(instance.metadata)
    metadata.pop("threshold", None)
    if instance.threshold is not None:
        metadata["threshold"] = instance.threshold
    doc: dict[str, Any] = {
        "num_candidates": instance.num_candidates,
        "preferred": instance.preferred,
        "rule": instance.rule,
        "tiebreak": list(instance.tiebreak),
        "budget": instance.budget,
        "voters": [
            {"ranking": list(r), "cost": _cost_to_dict(pi)}
            for r, pi in zip(instance.profile.rankings, instance.costs)
        ],
        "arcs": [
            {"from": j, "to": i, "weight": {"num": w.numerator, "den": w.denominator}}
            for j, i, w in instance.network.arcs
        ],
    }
    if metadata:
        doc["metadata"] = metadata
    if decomposition is not None:
        doc["tree_decomposition"] = decomposition.to_records()
    return doc


def instance_from_dict(doc: dict[str, Any]) -> tuple[Instance, TreeDecomposition | None]:
    """Parse and fully re-validate an instance document."""
    try:
        voters = doc["voters"]
        n = len(voters)
        metadata = dict(doc.get("metadata", {}))
        threshold = metadata.pop("threshold", None)
        network = InfluenceNetwork(
            n, tuple((int(a["from"]), int(a["to"]), _weight_from_dict(a["weight"])) for a in doc.get("arcs", []))
        )
        instance = Instance(
            num_candidates=int(doc["num_candidates"]),
            preferred=int(doc["preferred"]),
            profile=[tuple(int(c) for c in v["ranking"]) for v in voters],
            network=network,
            costs=[_cost_from_dict(v.get("cost", {"kind": "identity"})) for v in voters],
            budget=int(doc["budget"]),
            rule=doc.get("rule", "majority"),
            tiebreak=doc.get("tiebreak"),
            threshold=None if threshold is None else int(threshold),
            metadata=metadata,
        )
        records = doc.get("tree_decomposition")
        dec = TreeDecomposition.from_records(records) if records is not None else None
    except (KeyError, TypeError, AttributeError) as exc:
        raise FormatError(f"malformed instance document: {exc!r}") from exc
    except InstanceError:
        raise
    return instance, dec


def dumps_instance(instance: Instance, decomposition: TreeDecomposition | None = None) -> str:
    return json.dumps(instance_to_dict(instance, decomposition), indent=2) + "\n"


def save_instance(instance: Instance, path, decomposition: TreeDecomposition | None = None) -> None:
    Path(path).write_text(dumps_instance(instance, decomposition))


def read_json(path) -> Any:
    try:
        return json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: not valid JSON ({exc})") from exc


def load_instance(path) -> tuple[Instance, TreeDecomposition | None]:
    doc = read_json(path)
    if not isinstance(doc, dict):
        raise FormatError(f"{path}: expected a JSON object")
    return instance_from_dict(doc)


def load_graph(path) -> nx.Graph:
    """``{"vertices": n, "edges": [[u, v], ...]}`` with vertices 0..n-1."""
    doc = read_json(path)
    try:
        n = int(doc["vertices"])
        g = nx.Graph()
        g.add_nodes_from(range(n))
        for u, v in doc.get("edges", []):
            if not (0 <= u < n and 0 <= v < n) or u == v:
                raise FormatError(f"bad edge ({u}, {v})")
            g.add_edge(int(u), int(v))
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, FormatError):
            raise
        raise FormatError(f"{path}: malformed graph file ({exc!r})") from exc
    return g


def graph_to_dict(graph: nx.Graph) -> dict:
    nodes = sorted(graph.nodes)
    idx = {v: i for i, v in enumerate(nodes)}
    return {"vertices": len(nodes), "edges": sorted(sorted((idx[u], idx[v])) for u, v in graph.edges)}


def load_set_system(path) -> tuple[int, list[list[int]]]:
    """``{"universe": n, "sets": [[...], ...]}`` with elements 1..n."""
    doc = read_json(path)
    try:
        return int(doc["universe"]), [sorted(int(e) for e in s) for s in doc["sets"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"{path}: malformed set-system file ({exc!r})") from exc
