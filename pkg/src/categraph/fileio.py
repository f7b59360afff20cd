"""File formats: edge lists, category files, trace/log JSONL, estimate
JSON, and DOT export.

Edge files are TSV, one "u<TAB>v" pair per line with integer node ids;
lines starting with '#' are comments. Category files are TSV
"node<TAB>category_name" with exactly one line per node. External node
ids may be arbitrary integers; they are mapped to dense 0..N-1 ids (in
ascending order of the external id) at load time. Category names are
interned to ids in order of first appearance.

Traces and observation logs are JSON Lines: one meta object, then one
object per draw. All writers emit keys in a fixed order so identical
inputs produce byte-identical files.
"""
from __future__ import annotations

import json

import numpy as np

from .errors import FileFormatError
from .estimate import CategoryGraphEstimate
from .graph import CategoryGraph, CategoryPartition, Graph
from .observe import INDUCED, STAR, ObservationLog
from .sampling import SampleTrace


# ---------------------------------------------------------------------------
# graphs and partitions

def load_graph(edge_path, category_path) -> tuple[Graph, CategoryPartition]:
    """Load a graph and its category partition from TSV files.

    Every edge endpoint must appear in the category file; nodes that
    appear only there are isolated nodes.
    """
    label_by_ext: dict[int, str] = {}
    with open(category_path) as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.rstrip("\n")
            if not line or line.startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) != 2:
                raise FileFormatError(
                    f"{category_path}:{lineno}: expected 'node<TAB>category'")
            try:
                ext = int(parts[0])
            except ValueError:
                raise FileFormatError(
                    f"{category_path}:{lineno}: node id {parts[0]!r} "
                    "is not an integer") from None
            if ext in label_by_ext:
                raise FileFormatError(
                    f"{category_path}:{lineno}: node {ext} labeled twice")
            label_by_ext[ext] = parts[1]

    ext_ids = sorted(label_by_ext)
    dense = {ext: i for i, ext in enumerate(ext_ids)}
    names: list[str] = []
    name_id: dict[str, int] = {}
    labels = np.empty(len(ext_ids), dtype=np.int64)
    for ext in ext_ids:
        name = label_by_ext[ext]
        if name not in name_id:
            name_id[name] = len(names)
            names.append(name)
        labels[dense[ext]] = name_id[name]

    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    with open(edge_path) as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.rstrip("\n")
            if not line or line.startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) != 2:
                raise FileFormatError(
                    f"{edge_path}:{lineno}: expected 'u<TAB>v'")
            try:
                u_ext, v_ext = int(parts[0]), int(parts[1])
            except ValueError:
                raise FileFormatError(
                    f"{edge_path}:{lineno}: node ids must be integers") from None
            if u_ext == v_ext:
                raise FileFormatError(
                    f"{edge_path}:{lineno}: self-loop at node {u_ext}")
            for ext in (u_ext, v_ext):
                if ext not in dense:
                    raise FileFormatError(
                        f"{edge_path}:{lineno}: node {ext} has no category "
                        "label")
            u, v = dense[u_ext], dense[v_ext]
            key = (u, v) if u < v else (v, u)
            if key in seen:
                raise FileFormatError(
                    f"{edge_path}:{lineno}: duplicate edge {u_ext}-{v_ext}")
            seen.add(key)
            edges.append(key)

    g = Graph.from_edges(len(ext_ids), edges, validate=False)
    return g, CategoryPartition(labels=labels, names=tuple(names))


def save_graph(g: Graph, part: CategoryPartition, edge_path,
               category_path) -> None:
    """Write the edge list (u < v, sorted) and the category file."""
    with open(edge_path, "w") as fh:
        for u, v in g.edge_array.tolist():
            fh.write(f"{u}\t{v}\n")
    with open(category_path, "w") as fh:
        for v in range(part.node_count):
            fh.write(f"{v}\t{part.names[part.labels[v]]}\n")


# ---------------------------------------------------------------------------
# sample traces

def save_trace(trace: SampleTrace, path) -> None:
    meta = {"sampler": trace.sampler, "seed": trace.seed,
            "start": trace.start, "burn_in": trace.burn_in,
            "thin": trace.thin_interval}
    with open(path, "w") as fh:
        fh.write(json.dumps(meta) + "\n")
        for step, node, weight in zip(trace.steps.tolist(),
                                      trace.nodes.tolist(),
                                      trace.weights.tolist()):
            fh.write(json.dumps({"i": step, "v": node, "w": weight}) + "\n")


def load_trace(path) -> SampleTrace:
    with open(path) as fh:
        lines = [ln for ln in fh.read().splitlines() if ln]
    if not lines:
        raise FileFormatError(f"{path}:1: missing trace meta line")
    try:
        meta = json.loads(lines[0])
        rows = [json.loads(ln) for ln in lines[1:]]
    except json.JSONDecodeError as exc:
        raise FileFormatError(f"{path}: invalid JSON ({exc})") from None
    return SampleTrace(
        nodes=np.asarray([r["v"] for r in rows], dtype=np.int64),
        steps=np.asarray([r["i"] for r in rows], dtype=np.int64),
        weights=np.asarray([r["w"] for r in rows], dtype=float),
        sampler=meta.get("sampler", "unknown"),
        seed=meta.get("seed"), start=meta.get("start"),
        burn_in=int(meta.get("burn_in", 0)),
        thin_interval=int(meta.get("thin", 1)))


# ---------------------------------------------------------------------------
# observation logs

def save_log(log: ObservationLog, path) -> None:
    meta = {"mode": log.mode, "N": log.population_hint,
            "categories": list(log.category_names)}
    with open(path, "w") as fh:
        fh.write(json.dumps(meta) + "\n")
        for i in range(log.n):
            rec = {"v": int(log.nodes[i]), "c": int(log.categories[i]),
                   "deg": int(log.degrees[i]), "w": float(log.weights[i])}
            if log.mode == STAR:
                row = log.neighbor_counts[i]
                rec["nbr_cats"] = {str(c): int(row[c])
                                   for c in np.flatnonzero(row)}
            fh.write(json.dumps(rec) + "\n")
        if log.mode == INDUCED:
            edges = [[int(u), int(v)] for u, v in log.induced_edges.tolist()]
            fh.write(json.dumps({"induced_edges": edges}) + "\n")


def load_log(path) -> ObservationLog:
    with open(path) as fh:
        lines = [ln for ln in fh.read().splitlines() if ln]
    if not lines:
        raise FileFormatError(f"{path}:1: missing log meta line")
    try:
        meta = json.loads(lines[0])
        objs = [json.loads(ln) for ln in lines[1:]]
    except json.JSONDecodeError as exc:
        raise FileFormatError(f"{path}: invalid JSON ({exc})") from None
    mode = meta.get("mode")
    if mode not in (INDUCED, STAR):
        raise FileFormatError(f"{path}:1: unknown mode {mode!r}")
    names = tuple(meta.get("categories", ()))
    induced = None
    if mode == INDUCED:
        if not objs or "induced_edges" not in objs[-1]:
            raise FileFormatError(
                f"{path}: induced log missing trailing induced_edges block")
        induced = np.asarray(objs[-1]["induced_edges"],
                             dtype=np.int64).reshape(-1, 2)
        objs = objs[:-1]
    cats = np.asarray([r["c"] for r in objs], dtype=np.int64)
    num_categories = len(names) if names else (int(cats.max()) + 1 if len(cats) else 0)
    if not names:
        names = tuple(str(c) for c in range(num_categories))
    counts = None
    if mode == STAR:
        counts = np.zeros((len(objs), num_categories), dtype=np.int64)
        for i, r in enumerate(objs):
            for c_str, cnt in r.get("nbr_cats", {}).items():
                counts[i, int(c_str)] = cnt
    return ObservationLog(
        mode=mode,
        nodes=np.asarray([r["v"] for r in objs], dtype=np.int64),
        categories=cats,
        degrees=np.asarray([r["deg"] for r in objs], dtype=np.int64),
        weights=np.asarray([r["w"] for r in objs], dtype=float),
        num_categories=num_categories,
        category_names=names,
        population_hint=meta.get("N"),
        induced_edges=induced,
        neighbor_counts=counts)


# ---------------------------------------------------------------------------
# category graphs and estimates

def _estimate_payload(est: CategoryGraphEstimate) -> dict:
    cats = []
    for c in sorted(est.sizes):
        entry = {"id": c, "name": est.category_names[c],
                 "size": est.sizes[c]}
        if est.size_variances and c in est.size_variances:
            entry["size_var"] = est.size_variances[c]
        cats.append(entry)
    edges = []
    for a, b in sorted(est.weights):
        entry = {"a": a, "b": b, "weight": est.weights[(a, b)]}
        if est.weight_variances and (a, b) in est.weight_variances:
            entry["weight_var"] = est.weight_variances[(a, b)]
        edges.append(entry)
    return {"N_mode": est.population_mode,
            "N": est.population,
            "size_estimator": est.size_estimator,
            "weight_estimator": est.weight_estimator,
            "categories": cats,
            "edges": edges}


def _exact_as_estimate(cg: CategoryGraph,
                       names: tuple[str, ...] | None) -> CategoryGraphEstimate:
    n = sum(cg.sizes.values())
    if names is None:
        names = tuple(str(c) for c in sorted(cg.sizes))
    return CategoryGraphEstimate(
        sizes={c: float(s) for c, s in cg.sizes.items()},
        weights=dict(cg.weights),
        size_estimator="exact", weight_estimator="exact",
        population=float(n), population_mode="exact",
        category_names=names)


def save_estimate(est: CategoryGraphEstimate | CategoryGraph, path,
                  names: tuple[str, ...] | None = None) -> None:
    if isinstance(est, CategoryGraph):
        est = _exact_as_estimate(est, names)
    with open(path, "w") as fh:
        json.dump(_estimate_payload(est), fh, indent=1, sort_keys=True)
        fh.write("\n")


def load_estimate(path) -> CategoryGraphEstimate:
    with open(path) as fh:
        payload = json.load(fh)
    cats = payload["categories"]
    names_by_id = {c["id"]: c["name"] for c in cats}
    max_id = max(names_by_id) if names_by_id else -1
    names = tuple(names_by_id.get(i, str(i)) for i in range(max_id + 1))
    sizes = {c["id"]: float(c["size"]) for c in cats}
    size_var = {c["id"]: float(c["size_var"]) for c in cats if "size_var" in c}
    weights = {(e["a"], e["b"]): float(e["weight"]) for e in payload["edges"]}
    weight_var = {(e["a"], e["b"]): float(e["weight_var"])
                  for e in payload["edges"] if "weight_var" in e}
    return CategoryGraphEstimate(
        sizes=sizes, weights=weights,
        size_estimator=payload["size_estimator"],
        weight_estimator=payload["weight_estimator"],
        population=float(payload.get("N", 0.0)),
        population_mode=payload["N_mode"],
        category_names=names,
        size_variances=size_var or None,
        weight_variances=weight_var or None)


def save_dot(est: CategoryGraphEstimate | CategoryGraph, path,
             names: tuple[str, ...] | None = None) -> None:
    """DOT rendering: one node per category (label=name, size attr),
    one edge per positive-weight pair (weight attr)."""
    if isinstance(est, CategoryGraph):
        est = _exact_as_estimate(est, names)
    lines = ["graph category_graph {"]
    for c in sorted(est.sizes):
        name = est.category_names[c] if c < len(est.category_names) else str(c)
        lines.append(f'  {c} [label="{name}", size={est.sizes[c]!r}];')
    for (a, b) in sorted(est.weights):
        w = est.weights[(a, b)]
        if w > 0:
            lines.append(f"  {a} -- {b} [weight={w!r}];")
    lines.append("}")
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def export_category_graph(est: CategoryGraphEstimate | CategoryGraph,
                          fmt: str, path,
                          names: tuple[str, ...] | None = None) -> None:
    """Write an estimate (or exact category graph) as JSON or DOT."""
    if fmt == "json":
        save_estimate(est, path, names=names)
    elif fmt == "dot":
        save_dot(est, path, names=names)
    else:
        raise ValueError(f"unknown export format {fmt!r}")
