"""The named formulas used by the two transductions.

Graph-side formulas speak about a marked poset (relation ``le``, marks ``V_i``,
``S``, ``B_i_j``, ``C_i_j``).  Poset-side formulas speak about a marked graph
(relation ``E``, marks ``O``, ``A``, ``B``, ``C_i``).  Parts are 1-based.
"""
from __future__ import annotations

import itertools

from .errors import UnknownSymbol
from .fo import (
    Eq, Exists, Forall, Formula, Implies, Mark, Not, Rel, Xor, conj, disj, exists, strictly_below,
)

LE = "le"
EDGE = "E"


class _Fresh:
    def __init__(self):
        self._count = itertools.count(1)

    def __call__(self, stem: str = "x") -> str:
        return f"{stem}{next(self._count)}"


def part_mark(i: int) -> str:
    return f"V_{i}"


def border_mark(i: int, j: int) -> str:
    return f"B_{min(i, j)}_{max(i, j)}"


def complement_mark(i: int, j: int) -> str:
    return f"C_{min(i, j)}_{max(i, j)}"


CONNECTOR_MARK = "S"


def _lt(x, y):
    return strictly_below(x, y, LE)


# ---------------------------------------------------------------- poset -> graph


def vertex(u: str, k: int) -> Formula:
    return disj(*(Mark(part_mark(i), u) for i in range(1, k + 1)))


def leq_same(u: str, v: str, i: int) -> Formula:
    return conj(Mark(part_mark(i), u), Mark(part_mark(i), v), Rel(LE, u, v))


def connect(u: str, v: str, w: str, i: int, j: int, k: int, fresh: _Fresh) -> Formula:
    """``w`` is a non-vertex element covering ``u`` (in part i) and covered by ``v`` (in part j)."""
    x1, x2 = fresh(), fresh()
    return conj(
        Mark(part_mark(i), u), Mark(part_mark(j), v), Not(vertex(w, k)),
        Rel(LE, u, w), Rel(LE, w, v),
        Not(Exists(x1, conj(_lt(u, x1), _lt(x1, w)))),
        Not(Exists(x2, conj(_lt(w, x2), _lt(x2, v)))),
    )


def succ(u: str, v: str, i: int, j: int, k: int, fresh: _Fresh) -> Formula:
    w = fresh("w")
    return Exists(w, conj(connect(u, v, w, i, j, k, fresh), Mark(CONNECTOR_MARK, w)))


def leq_prime(u: str, v: str, i: int, j: int, k: int, fresh: _Fresh) -> Formula:
    up, vm = fresh("u"), fresh("v")
    return exists([up, vm], conj(leq_same(u, up, i), leq_same(vm, v, j), succ(up, vm, i, j, k, fresh)))


def leq_pair(u: str, v: str, i: int, j: int, k: int, fresh: _Fresh) -> Formula:
    """The order on the union of parts i and j, read back from the poset.

    Within one part it is the part's own order; for ``i > j`` it is the same
    relation as for ``(j, i)``, which is the only orientation carrying connectors.
    """
    if i == j:
        return leq_same(u, v, i)
    if i > j:
        i, j = j, i
    return disj(
        leq_same(u, v, i), leq_same(u, v, j),
        conj(Mark(part_mark(i), u), Mark(part_mark(j), v), leq_prime(u, v, i, j, k, fresh)),
        conj(Mark(part_mark(j), u), Mark(part_mark(i), v), Not(leq_prime(v, u, i, j, k, fresh))),
    )


def border_pair(u: str, v: str, i: int, j: int, k: int, fresh: _Fresh) -> Formula:
    if i > j:
        i, j = j, i
    w = fresh("w")
    cases = disj(
        conj(Mark(part_mark(i), u), Mark(part_mark(i), v), connect(u, v, w, i, i, k, fresh)),
        conj(Mark(part_mark(j), u), Mark(part_mark(j), v), connect(u, v, w, j, j, k, fresh)),
        conj(Mark(part_mark(i), u), Mark(part_mark(j), v), connect(u, v, w, i, j, k, fresh)),
        conj(Mark(part_mark(j), u), Mark(part_mark(i), v), connect(v, u, w, i, j, k, fresh)),
    )
    return conj(leq_pair(u, v, i, j, k, fresh), Exists(w, conj(Mark(border_mark(i, j), w), cases)))


def psi(u: str, v: str, k: int, fresh: _Fresh) -> Formula:
    terms = []
    for i in range(1, k + 1):
        for j in range(1, k + 1):
            x, um, vp = fresh(), fresh("u"), fresh("v")
            covered = exists([um, vp], conj(
                leq_pair(um, u, i, j, k, fresh), leq_pair(v, vp, i, j, k, fresh),
                border_pair(um, vp, i, j, k, fresh),
            ))
            terms.append(conj(
                Mark(part_mark(i), u), Mark(part_mark(j), v), leq_pair(u, v, i, j, k, fresh),
                Xor(Exists(x, Mark(complement_mark(i, j), x)), covered),
            ))
    return disj(*terms)


def edge_formula(u: str, v: str, k: int, fresh: _Fresh) -> Formula:
    return conj(Not(Eq(u, v)), disj(psi(u, v, k, fresh), psi(v, u, k, fresh)))


# ---------------------------------------------------------------- graph -> poset


def chain_mark(i: int) -> str:
    return f"C_{i}"


def same_chain(u: str, v: str, k: int) -> Formula:
    return disj(*(conj(Mark(chain_mark(i), u), Mark(chain_mark(i), v)) for i in range(1, k + 1)))


def leq_internal(u: str, v: str, fresh: _Fresh) -> Formula:
    w = fresh("w")
    return Forall(w, Implies(conj(Mark("O", w), Rel(EDGE, w, u)), Rel(EDGE, w, v)))


def twins(u: str, v: str, k: int, fresh: _Fresh) -> Formula:
    return conj(same_chain(u, v, k), leq_internal(u, v, fresh), leq_internal(v, u, fresh))


def poset_domain(u: str) -> Formula:
    return Mark("A", u)


def poset_le(u: str, v: str, k: int, fresh: _Fresh) -> Formula:
    up, vp = fresh("u"), fresh("v")
    cross = exists([up, vp], conj(
        twins(u, up, k, fresh), twins(v, vp, k, fresh),
        Mark("A", up), Mark("B", vp), Rel(EDGE, up, vp),
    ))
    return conj(
        Implies(same_chain(u, v, k), leq_internal(u, v, fresh)),
        Implies(Not(same_chain(u, v, k)), cross),
    )


# ---------------------------------------------------------------- registry

_NEEDS = {
    "vertex": "k", "leq_same": "i", "connect": "ijk", "succ": "ijk", "leq_prime": "ijk",
    "leq_pair": "ijk", "border_pair": "ijk", "psi": "k", "edge": "k",
    "same_chain": "k", "leq_internal": "", "twins": "k", "poset_domain": "", "poset_le": "k",
}

FORMULA_NAMES = tuple(sorted(_NEEDS))


def formula_library(name: str, i: int | None = None, j: int | None = None, k: int | None = None) -> Formula:
    """Build a named formula with free variables ``u``, ``v`` (and ``w`` for ``connect``)."""
    if name not in _NEEDS:
        raise UnknownSymbol(f"unknown formula {name!r}; known: {', '.join(FORMULA_NAMES)}")
    params = {"i": i, "j": j, "k": k}
    for p in _NEEDS[name]:
        if params[p] is None or params[p] < 1:
            raise ValueError(f"formula {name!r} needs a positive parameter {p}")
    fresh = _Fresh()
    builders = {
        "vertex": lambda: vertex("u", k),
        "leq_same": lambda: leq_same("u", "v", i),
        "connect": lambda: connect("u", "v", "w", i, j, k, fresh),
        "succ": lambda: succ("u", "v", i, j, k, fresh),
        "leq_prime": lambda: leq_prime("u", "v", i, j, k, fresh),
        "leq_pair": lambda: leq_pair("u", "v", i, j, k, fresh),
        "border_pair": lambda: border_pair("u", "v", i, j, k, fresh),
        "psi": lambda: psi("u", "v", k, fresh),
        "edge": lambda: edge_formula("u", "v", k, fresh),
        "same_chain": lambda: same_chain("u", "v", k),
        "leq_internal": lambda: leq_internal("u", "v", fresh),
        "twins": lambda: twins("u", "v", k, fresh),
        "poset_domain": lambda: poset_domain("u"),
        "poset_le": lambda: poset_le("u", "v", k, fresh),
    }
    return builders[name]()
