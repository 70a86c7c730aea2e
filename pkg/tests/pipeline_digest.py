"""Print a digest of every artefact the pipeline writes for the sweep (used to check determinism)."""
from __future__ import annotations

import hashlib
import random
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent))

from mixthin import io  # noqa: E402
from mixthin.engine import build_sequence  # noqa: E402
from mixthin.randomized import random_poset  # noqa: E402
from mixthin.render import graph_dot, matrix_dot, poset_dot  # noqa: E402
from mixthin.transduction import encode_graph_to_poset, encode_poset_to_graph  # noqa: E402
from mixthin.trisection import compute_trisection, submatrix  # noqa: E402
from mixthin.witness import PROPER_INVERSION_FREE, verify_witness  # noqa: E402

from sweep import fig6_like_poset, sweep  # noqa: E402


def artefacts():
    for inst in sweep():
        g, w = inst.graph, inst.witness
        yield io.dumps(io.trace_to_json(build_sequence(g, w)))
        if verify_witness(g, w.with_variant(PROPER_INVERSION_FREE)).accepted:
            p = encode_graph_to_poset(g, w.with_variant(PROPER_INVERSION_FREE))
            yield io.dumps(io.poset_to_json(p))
            yield poset_dot(p)
        yield graph_dot(g, w.part)
        rows, cols = w.orders[(1, 1)], w.orders[(w.k, w.k)]
        yield matrix_dot(submatrix(g, rows, cols), rows, cols, compute_trisection(g, w, 1, w.k, checked=False))
    rng = random.Random(5)
    posets = [fig6_like_poset()] + [random_poset(rng, rng.randint(1, 30), 3) for _ in range(30)]
    for p in posets:
        graph, marks, w = encode_poset_to_graph(p)
        yield io.dumps({"graph": io.graph_to_json(graph), "marks": marks, "witness": io.witness_to_json(w)})


def main() -> None:
    digest = hashlib.sha256()
    count = 0
    for text in artefacts():
        digest.update(text.encode())
        count += 1
    print(count, digest.hexdigest())


if __name__ == "__main__":
    main()
