"""Text formats: JSON objects for graphs, families, congruences and
homomorphism families, plus undirected DOT export.

Plain labels serialize as strings; product vertices serialize as arrays of
component labels in index order, recursively.
"""

from __future__ import annotations

import json

from .congruences import Congruence
from .errors import FormatError
from .graphs import Graph, VertexMap, render_label
from .homtensor import HomFamily
from .products import GraphFamily


def label_to_json(label):
    if isinstance(label, tuple):
        return [label_to_json(part) for part in label]
    return label


def label_from_json(obj):
    if isinstance(obj, list):
        return tuple(label_from_json(part) for part in obj)
    if isinstance(obj, str):
        return obj
    raise FormatError(f"labels must be strings or arrays, got {obj!r}")


def graph_to_obj(g: Graph) -> dict:
    return {
        "vertices": [label_to_json(v) for v in g.vertices],
        "edges": [[label_to_json(x), label_to_json(y)] for x, y in g.edges],
        "loops_allowed": g.loops_allowed,
    }


def graph_from_obj(obj) -> Graph:
    if not isinstance(obj, dict):
        raise FormatError("a graph must be a JSON object")
    missing = {"vertices", "edges"} - set(obj)
    if missing:
        raise FormatError(f"graph object lacks {sorted(missing)}")
    vertices = [label_from_json(v) for v in obj["vertices"]]
    edges = []
    for pair in obj["edges"]:
        if not isinstance(pair, list) or len(pair) != 2:
            raise FormatError(f"an edge must be a two-element array, got {pair!r}")
        edges.append((label_from_json(pair[0]), label_from_json(pair[1])))
    return Graph(vertices, edges, loops_allowed=bool(obj.get("loops_allowed", False)))


def family_to_obj(fam: GraphFamily) -> dict:
    obj = {
        "index": list(fam.index_list),
        "factors": {i: graph_to_obj(fam.factors[i]) for i in fam.index_list},
    }
    if fam.order is not None:
        obj["order"] = list(fam.order)
    if fam.distinguished is not None:
        obj["D"] = sorted(fam.distinguished)
    return obj


def family_from_obj(obj) -> GraphFamily:
    if not isinstance(obj, dict):
        raise FormatError("a family must be a JSON object")
    if "index" not in obj or "factors" not in obj:
        raise FormatError("family object needs 'index' and 'factors'")
    index = [str(i) for i in obj["index"]]
    factors = {
        str(i): graph_from_obj(graph_obj) for i, graph_obj in obj["factors"].items()
    }
    order = [str(i) for i in obj["order"]] if "order" in obj else None
    distinguished = [str(i) for i in obj["D"]] if "D" in obj else None
    return GraphFamily(index, factors, order=order, distinguished=distinguished)


def congruence_to_obj(c: Congruence) -> dict:
    return {
        "graph": graph_to_obj(c.base),
        "classes": [[label_to_json(v) for v in cls] for cls in c.classes],
        "ehat": [[label_to_json(x), label_to_json(y)] for x, y in sorted(c.ehat)],
    }


def congruence_from_obj(obj) -> Congruence:
    if not isinstance(obj, dict) or {"graph", "classes", "ehat"} - set(obj):
        raise FormatError("congruence object needs 'graph', 'classes' and 'ehat'")
    base = graph_from_obj(obj["graph"])
    classes = [[label_from_json(v) for v in cls] for cls in obj["classes"]]
    ehat = [
        (label_from_json(pair[0]), label_from_json(pair[1])) for pair in obj["ehat"]
    ]
    return Congruence(base, classes, ehat)


def hom_family_to_obj(hf: HomFamily) -> dict:
    return {
        "index": list(hf.index_list),
        "G": family_to_obj(hf.source),
        "H": family_to_obj(hf.target),
        "homs": {
            i: {str(v): str(w) for v, w in hf.homs[i].items()}
            for i in hf.index_list
        },
    }


def hom_family_from_obj(obj) -> HomFamily:
    if not isinstance(obj, dict) or {"index", "G", "H", "homs"} - set(obj):
        raise FormatError("hom-family object needs 'index', 'G', 'H' and 'homs'")
    source = family_from_obj(obj["G"])
    target = family_from_obj(obj["H"])
    homs = {}
    for i in source.index_list:
        if str(i) not in obj["homs"]:
            raise FormatError(f"no map for index {i!r}")
        mapping = obj["homs"][str(i)]
        homs[i] = VertexMap(source.factors[i], target.factors[i], dict(mapping))
    return HomFamily(source, target, homs)


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _quote(name: str) -> str:
    return '"' + name.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(g: Graph) -> str:
    """Undirected DOT with quoted vertex names; loops as self-edges."""
    lines = ["graph {"]
    lines.extend(f"  {_quote(render_label(v))};" for v in g.vertices)
    lines.extend(
        f"  {_quote(render_label(x))} -- {_quote(render_label(y))};"
        for x, y in g.edges
    )
    lines.append("}")
    return "\n".join(lines) + "\n"
