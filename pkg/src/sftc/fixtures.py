"""The shipped fixture corpus, built in code so it can be regenerated."""

from __future__ import annotations

import json
from pathlib import Path

from . import io
from .correspondences import correspondence_new, lind_marcus_correspondence
from .coverings import cyclic_cover, full_shift
from .equivalences import ShiftEquivalenceWitness
from .graphs import Graph
from .linalg import Matrix

MATRICES = {
    "full1": [[1]],
    "full2": [[2]],
    "full3": [[3]],
    "full4": [[4]],
    "full6": [[6]],
    "cycle2": [[0, 1], [1, 0]],
    "cycle3": [[0, 1, 0], [0, 0, 1], [1, 0, 0]],
    "golden": [[1, 1], [1, 0]],
    "b02": [[0, 2], [2, 0]],
    "b22": [[2, 2], [2, 2]],
    "two_loops": [[1, 0], [0, 1]],
}

# the six graphs used for pairwise entropy and product checks
PAIR_SET = ("full2", "full3", "full4", "golden", "b02", "cycle2")


def graph(name):
    return Graph.from_matrix(Matrix(MATRICES[name]))


def double_cover():
    """full-2 => full-2 through its two-fold cyclic cover, both legs the collapse map."""
    cover = cyclic_cover(2, 2)
    return correspondence_new(cover.codomain, cover.codomain, cover.domain, cover, cover)


def engineered_pair():
    """Two correspondences full-2 => full-2 from F = [2] that are H-equivalent but not isomorphic."""
    g = full_shift(2)
    f = Matrix([[2]])
    return lind_marcus_correspondence(f, g, g, "lex"), lind_marcus_correspondence(f, g, g, "fibre")


def witnesses():
    return {
        "witness_full2": ShiftEquivalenceWitness(Matrix([[1]]), Matrix([[2]]), 1),
        "witness_full4_b22": ShiftEquivalenceWitness(Matrix([[1, 1]]), Matrix([[2], [2]]), 1),
    }


def corpus():
    """Name -> JSON-ready value for every fixture file."""
    out = {name: io.graph_to_json(graph(name)) for name in MATRICES}
    out["double_cover"] = io.correspondence_to_json(double_cover())
    lex, fibre = engineered_pair()
    out["pair_lex"] = io.correspondence_to_json(lex)
    out["pair_fibre"] = io.correspondence_to_json(fibre)
    for name, w in witnesses().items():
        out[name] = io.witness_to_json(w)
    out["f2"] = io.matrix_to_json(Matrix([[2]]))
    return out


def write_corpus(directory):
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    for name, data in corpus().items():
        (directory / f"{name}.json").write_text(json.dumps(data, indent=2) + "\n")


if __name__ == "__main__":
    write_corpus(Path(__file__).resolve().parents[2] / "fixtures")
