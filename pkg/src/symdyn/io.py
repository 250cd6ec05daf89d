"""JSON interchange for subshifts and related documents."""

import json
import sys

from .errors import InputError
from .language import Subshift, builtin_oracle


def read_json(path):
    """Parse a JSON file; ``-`` reads standard input."""
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from None


def _expect_keys(doc, allowed, what):
    if not isinstance(doc, dict):
        raise InputError(f"{what} must be a JSON object")
    extra = sorted(set(doc) - set(allowed))
    if extra:
        raise InputError(f"unknown keys in {what}: {extra}")


def subshift_from_json(doc):
    _expect_keys(doc, {"kind", "alphabet", "matrix", "graph", "oracle"}, "subshift document")
    kind = doc.get("kind")
    if kind == "sft":
        if "matrix" not in doc:
            raise InputError("sft document needs 'matrix'")
        return Subshift.from_matrix(doc["matrix"], doc.get("alphabet"))
    if kind == "sofic":
        graph = doc.get("graph")
        _expect_keys(graph, {"vertices", "edges"}, "graph")
        if "alphabet" not in doc:
            raise InputError("sofic document needs 'alphabet'")
        try:
            edges = [tuple(e) for e in graph["edges"]]
            if any(len(e) != 3 for e in edges):
                raise InputError("edges must be [source, label, target] triples")
            return Subshift.from_graph(doc["alphabet"], graph["vertices"], edges)
        except (KeyError, TypeError):
            raise InputError("graph needs 'vertices' and 'edges' lists") from None
    if kind == "oracle":
        entry = doc.get("oracle")
        _expect_keys(entry, {"name", "max_reliable_length"}, "oracle")
        try:
            oracle = builtin_oracle(entry["name"], int(entry["max_reliable_length"]))
        except (KeyError, TypeError, ValueError):
            raise InputError("oracle needs 'name' and integer 'max_reliable_length'") from None
        if "alphabet" in doc and list(doc["alphabet"]) != list(oracle.alphabet.symbols):
            raise InputError(f"oracle {entry['name']} uses alphabet {list(oracle.alphabet.symbols)}")
        return Subshift.from_oracle(oracle)
    raise InputError(f"unknown subshift kind {kind!r}")


def subshift_to_json(S):
    doc = {"kind": S.kind, "alphabet": list(S.alphabet.symbols)}
    if S.kind == "sft":
        doc["matrix"] = S.matrix.tolist()
    elif S.kind == "sofic":
        g = S.graph
        doc["graph"] = {"vertices": list(g.vertices),
                        "edges": [[g.vertices[s], S.alphabet.symbols[a], g.vertices[t]]
                                  for s, a, t in g.edges]}
    else:
        doc["oracle"] = {"name": S.oracle.name,
                         "max_reliable_length": S.oracle.max_reliable_length}
    return doc


def load_subshift(path):
    return subshift_from_json(read_json(path))


def dumps(obj):
    """Deterministic JSON text with a trailing newline."""
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"
