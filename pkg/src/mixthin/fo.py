"""First-order formulas over finite structures with binary relations and unary marks.

Two evaluators share one AST.  ``evaluate`` is the textbook recursive semantics
and costs ``O(n^depth)``.  ``satisfying_table`` computes the whole relation
defined by a formula at once: each subformula becomes a boolean array over its
free variables, and an existential block over a conjunction is contracted with
``numpy.einsum`` so intermediate arrays stay small.
"""
from __future__ import annotations

import string
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Union

import numpy as np

from .errors import FormulaTooComplex, UnboundVariable, UnknownSymbol


@dataclass(frozen=True)
class Const:
    value: bool


@dataclass(frozen=True)
class Rel:
    name: str
    x: str
    y: str


@dataclass(frozen=True)
class Mark:
    name: str
    x: str


@dataclass(frozen=True)
class Eq:
    x: str
    y: str


@dataclass(frozen=True)
class Not:
    body: "Formula"


@dataclass(frozen=True)
class And:
    parts: tuple


@dataclass(frozen=True)
class Or:
    parts: tuple


@dataclass(frozen=True)
class Xor:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Implies:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Exists:
    var: str
    body: "Formula"


@dataclass(frozen=True)
class Forall:
    var: str
    body: "Formula"


Formula = Union[Const, Rel, Mark, Eq, Not, And, Or, Xor, Implies, Exists, Forall]

TRUE = Const(True)
FALSE = Const(False)


def conj(*parts: Formula) -> Formula:
    flat = []
    for p in parts:
        flat.extend(p.parts if isinstance(p, And) else [p])
    return flat[0] if len(flat) == 1 else And(tuple(flat))


def disj(*parts: Formula) -> Formula:
    flat = []
    for p in parts:
        flat.extend(p.parts if isinstance(p, Or) else [p])
    if not flat:
        return FALSE
    return flat[0] if len(flat) == 1 else Or(tuple(flat))


def exists(variables: Iterable[str], body: Formula) -> Formula:
    for v in reversed(list(variables)):
        body = Exists(v, body)
    return body


def strictly_below(x: str, y: str, rel: str = "le") -> Formula:
    return conj(Rel(rel, x, y), Not(Eq(x, y)))


def free_vars(f: Formula) -> frozenset:
    if isinstance(f, Const):
        return frozenset()
    if isinstance(f, (Rel, Eq)):
        return frozenset((f.x, f.y))
    if isinstance(f, Mark):
        return frozenset((f.x,))
    if isinstance(f, Not):
        return free_vars(f.body)
    if isinstance(f, (And, Or)):
        return frozenset().union(*(free_vars(p) for p in f.parts))
    if isinstance(f, (Xor, Implies)):
        return free_vars(f.left) | free_vars(f.right)
    if isinstance(f, (Exists, Forall)):
        return free_vars(f.body) - {f.var}
    raise TypeError(f"not a formula: {f!r}")


def quantifier_depth(f: Formula) -> int:
    if isinstance(f, (Const, Rel, Mark, Eq)):
        return 0
    if isinstance(f, Not):
        return quantifier_depth(f.body)
    if isinstance(f, (And, Or)):
        return max((quantifier_depth(p) for p in f.parts), default=0)
    if isinstance(f, (Xor, Implies)):
        return max(quantifier_depth(f.left), quantifier_depth(f.right))
    return 1 + quantifier_depth(f.body)


def to_sexpr(f: Formula) -> str:
    if isinstance(f, Const):
        return "true" if f.value else "false"
    if isinstance(f, Rel):
        return f"({f.name} {f.x} {f.y})"
    if isinstance(f, Mark):
        return f"({f.name} {f.x})"
    if isinstance(f, Eq):
        return f"(= {f.x} {f.y})"
    if isinstance(f, Not):
        return f"(not {to_sexpr(f.body)})"
    if isinstance(f, And):
        return "(and " + " ".join(to_sexpr(p) for p in f.parts) + ")"
    if isinstance(f, Or):
        return "(or " + " ".join(to_sexpr(p) for p in f.parts) + ")"
    if isinstance(f, Xor):
        return f"(xor {to_sexpr(f.left)} {to_sexpr(f.right)})"
    if isinstance(f, Implies):
        return f"(implies {to_sexpr(f.left)} {to_sexpr(f.right)})"
    if isinstance(f, Exists):
        return f"(exists {f.var} {to_sexpr(f.body)})"
    return f"(forall {f.var} {to_sexpr(f.body)})"


@dataclass
class Structure:
    """Finite structure on ``0..size-1`` with named binary relations and marks."""

    size: int
    relations: dict = field(default_factory=dict)
    marks: dict = field(default_factory=dict)

    def __post_init__(self):
        rels = {}
        for name, rel in self.relations.items():
            arr = np.asarray(rel) if isinstance(rel, np.ndarray) else None
            if arr is None:
                arr = np.zeros((self.size, self.size), dtype=bool)
                for a, b in rel:
                    arr[a, b] = True
            if arr.shape != (self.size, self.size):
                raise ValueError(f"relation {name} has the wrong shape")
            rels[name] = arr.astype(bool)
        self.relations = rels
        marks = {}
        for name, members in self.marks.items():
            vec = np.zeros(self.size, dtype=bool)
            vec[list(members)] = True
            marks[name] = vec
        self.marks = marks

    def relation(self, name: str) -> np.ndarray:
        try:
            return self.relations[name]
        except KeyError:
            raise UnknownSymbol(f"unknown relation {name!r}") from None

    def mark(self, name: str) -> np.ndarray:
        try:
            return self.marks[name]
        except KeyError:
            raise UnknownSymbol(f"unknown mark {name!r}") from None


def evaluate(s: Structure, f: Formula, assignment: Mapping[str, int] | None = None) -> bool:
    env = dict(assignment or {})

    def val(x):
        try:
            return env[x]
        except KeyError:
            raise UnboundVariable(f"variable {x!r} is not assigned") from None

    def ev(g) -> bool:
        if isinstance(g, Const):
            return g.value
        if isinstance(g, Rel):
            return bool(s.relation(g.name)[val(g.x), val(g.y)])
        if isinstance(g, Mark):
            return bool(s.mark(g.name)[val(g.x)])
        if isinstance(g, Eq):
            return val(g.x) == val(g.y)
        if isinstance(g, Not):
            return not ev(g.body)
        if isinstance(g, And):
            return all(ev(p) for p in g.parts)
        if isinstance(g, Or):
            return any(ev(p) for p in g.parts)
        if isinstance(g, Xor):
            return ev(g.left) != ev(g.right)
        if isinstance(g, Implies):
            return (not ev(g.left)) or ev(g.right)
        if isinstance(g, (Exists, Forall)):
            saved = env.get(g.var, None)
            had = g.var in env
            want = isinstance(g, Exists)
            result = not want
            for a in range(s.size):
                env[g.var] = a
                if ev(g.body) == want:
                    result = want
                    break
            if had:
                env[g.var] = saved
            else:
                env.pop(g.var, None)
            return result
        raise TypeError(f"not a formula: {g!r}")

    return ev(f)


# ---------------------------------------------------------------- tables


@dataclass
class Table:
    variables: tuple
    data: np.ndarray

    def aligned(self, target: tuple) -> np.ndarray:
        """View with one axis per variable of ``target`` (size-1 where absent)."""
        order = [self.variables.index(v) for v in target if v in self.variables]
        arr = np.transpose(self.data, order) if order else self.data
        shape = [arr.shape[order.index(self.variables.index(v))] if v in self.variables else 1
                 for v in target]
        return arr.reshape(shape)


def _union(tables: list[Table]) -> tuple:
    out: list[str] = []
    for t in tables:
        for v in t.variables:
            if v not in out:
                out.append(v)
    return tuple(out)


def rename(f: Formula, mapping: Mapping[str, str]) -> Formula:
    """Rename free variables (bound variables are left alone and must not clash)."""
    if isinstance(f, Const):
        return f
    if isinstance(f, Rel):
        return Rel(f.name, mapping.get(f.x, f.x), mapping.get(f.y, f.y))
    if isinstance(f, Mark):
        return Mark(f.name, mapping.get(f.x, f.x))
    if isinstance(f, Eq):
        return Eq(mapping.get(f.x, f.x), mapping.get(f.y, f.y))
    if isinstance(f, Not):
        return Not(rename(f.body, mapping))
    if isinstance(f, And):
        return And(tuple(rename(p, mapping) for p in f.parts))
    if isinstance(f, Or):
        return Or(tuple(rename(p, mapping) for p in f.parts))
    if isinstance(f, Xor):
        return Xor(rename(f.left, mapping), rename(f.right, mapping))
    if isinstance(f, Implies):
        return Implies(rename(f.left, mapping), rename(f.right, mapping))
    inner = {k: v for k, v in mapping.items() if k != f.var}
    return type(f)(f.var, rename(f.body, inner))


class TableEvaluator:
    """Evaluates formulas to boolean arrays over their free variables, with caching."""

    def __init__(self, s: Structure, cell_limit: int = 60_000_000):
        self.s = s
        self.cell_limit = cell_limit
        self._cache: dict[int, Table] = {}
        self._keys: dict[tuple, int] = {}
        self._info: dict[int, tuple] = {}

    def _intern(self, key: tuple) -> int:
        return self._keys.setdefault(key, len(self._keys))

    def info(self, f: Formula) -> tuple[int, tuple]:
        """Alpha-invariant id of ``f`` and its free variables in first-occurrence order.

        Memoised per node object, so shared subtrees are keyed once.
        """
        hit = self._info.get(id(f))
        if hit is not None:
            return hit[0], hit[1]
        if isinstance(f, Const):
            out = (self._intern(("const", f.value)), ())
        elif isinstance(f, (Rel, Eq, Mark)):
            names = (f.x,) if isinstance(f, Mark) else (f.x, f.y)
            free = tuple(dict.fromkeys(names))
            label = f.name if isinstance(f, (Rel, Mark)) else "="
            out = (self._intern((type(f).__name__, label, tuple(free.index(x) for x in names))), free)
        elif isinstance(f, (Exists, Forall)):
            tid, fv = self.info(f.body)
            free = tuple(v for v in fv if v != f.var)
            shape = tuple(-1 if v == f.var else free.index(v) for v in fv)
            out = (self._intern((type(f).__name__, tid, shape)), free)
        else:
            children = (f.body,) if isinstance(f, Not) else (
                f.parts if isinstance(f, (And, Or)) else (f.left, f.right))
            infos = [self.info(c) for c in children]
            free = tuple(dict.fromkeys(v for _, fv in infos for v in fv))
            parts = tuple((tid, tuple(free.index(v) for v in fv)) for tid, fv in infos)
            out = (self._intern((type(f).__name__, parts)), free)
        self._info[id(f)] = (out[0], out[1], f)  # keep f alive so its id stays unique
        return out

    def free(self, f: Formula) -> set:
        return set(self.info(f)[1])

    def _check(self, arity: int) -> None:
        if self.s.size ** arity > self.cell_limit:
            raise FormulaTooComplex(f"intermediate table with {arity} variables is too large")

    def table(self, f: Formula) -> Table:
        tid, free = self.info(f)
        cached = self._cache.get(tid)
        if cached is None:
            t = self._compute(f)
            cached = Table(tuple(free.index(v) for v in t.variables), t.data)
            self._cache[tid] = cached
        return Table(tuple(free[idx] for idx in cached.variables), cached.data)

    def _combine(self, tables: list[Table], op) -> Table:
        variables = _union(tables)
        self._check(len(variables))
        data = None
        for t in tables:
            arr = t.aligned(variables)
            data = arr if data is None else op(data, arr)
        full = [self.s.size] * len(variables)
        return Table(variables, np.broadcast_to(data, full).copy())

    def _compute(self, f: Formula) -> Table:
        n = self.s.size
        if isinstance(f, Const):
            return Table((), np.array(f.value))
        if isinstance(f, Mark):
            return Table((f.x,), self.s.mark(f.name).copy())
        if isinstance(f, Rel):
            rel = self.s.relation(f.name)
            if f.x == f.y:
                return Table((f.x,), np.diagonal(rel).copy())
            return Table((f.x, f.y), rel.copy())
        if isinstance(f, Eq):
            if f.x == f.y:
                return Table((f.x,), np.ones(n, dtype=bool))
            return Table((f.x, f.y), np.eye(n, dtype=bool))
        if isinstance(f, Not):
            t = self.table(f.body)
            return Table(t.variables, ~t.data)
        if isinstance(f, And):
            return self._combine([self.table(p) for p in f.parts], np.logical_and)
        if isinstance(f, Or):
            return self._combine([self.table(p) for p in f.parts], np.logical_or)
        if isinstance(f, Xor):
            return self._combine([self.table(f.left), self.table(f.right)], np.logical_xor)
        if isinstance(f, Implies):
            return self.table(Or((Not(f.left), f.right)))
        if isinstance(f, Forall):
            return self.table(Not(Exists(f.var, Not(f.body))))
        if isinstance(f, Exists):
            bound = []
            body = f
            while isinstance(body, Exists):
                bound.append(body.var)
                body = body.body
            return self._exists(tuple(bound), body)
        raise TypeError(f"not a formula: {f!r}")

    def _exists(self, bound: tuple, body: Formula) -> Table:
        n = self.s.size
        if isinstance(body, Or):
            return self._combine([self.table(exists(bound, p)) for p in body.parts], np.logical_or)
        parts = list(body.parts) if isinstance(body, And) else [body]
        # distribute over a disjunction that mentions the bound variables
        for idx, p in enumerate(parts):
            if isinstance(p, Or) and self.free(p) & set(bound):
                rest = parts[:idx] + parts[idx + 1:]
                return self._combine(
                    [self.table(exists(bound, conj(*rest, q))) for q in p.parts], np.logical_or
                )
        inner = [p for p in parts if self.free(p) & set(bound)]
        outer = [p for p in parts if not self.free(p) & set(bound)]
        tables = [self.table(p) for p in inner]
        free = tuple(v for v in _union(tables) if v not in bound)
        self._check(len(free))
        if tables:
            result = Table(free, self._contract(tables, free))
        else:
            result = Table((), np.array(True))
        if n == 0:
            result = Table((), np.array(False))
        if outer:
            result = self._combine([result] + [self.table(p) for p in outer], np.logical_and)
        return result

    def _contract(self, tables: list[Table], free: tuple) -> np.ndarray:
        """Sum out every non-free variable of a product of tables; true where positive.

        Each axis is first cut down to the elements allowed by the one-variable
        factors on it, which keeps the contractions small when marks are sparse.
        """
        n = self.s.size
        variables = _union(tables)
        support = {v: np.ones(n, dtype=bool) for v in variables}
        for t in tables:
            if len(t.variables) == 1:
                support[t.variables[0]] &= t.data
        keep = {v: np.flatnonzero(mask) for v, mask in support.items()}
        out = np.zeros([n] * len(free), dtype=bool)
        if any(len(idx) == 0 for idx in keep.values()):
            return out
        letters = {v: string.ascii_letters[idx] for idx, v in enumerate(variables)}
        spec = ",".join("".join(letters[v] for v in t.variables) for t in tables)
        spec += "->" + "".join(letters[v] for v in free)
        operands = []
        for t in tables:
            arr = t.data
            for axis, v in enumerate(t.variables):
                if len(keep[v]) < n:
                    arr = np.take(arr, keep[v], axis=axis)
            operands.append(arr.astype(np.float32))
        counts = np.asarray(np.einsum(spec, *operands, optimize="greedy")) > 0
        if free:
            out[np.ix_(*(keep[v] for v in free))] = counts
        else:
            out = counts
        return out

def satisfying_table(s: Structure, f: Formula, variables: tuple, evaluator: TableEvaluator | None = None) -> np.ndarray:
    """Boolean array indexed by ``variables`` (a superset of the free variables)."""
    missing = free_vars(f) - set(variables)
    if missing:
        raise UnboundVariable(f"variables {sorted(missing)} are not listed")
    ev = evaluator or TableEvaluator(s)
    t = ev.table(f)
    arr = t.aligned(tuple(variables))
    return np.broadcast_to(arr, [s.size] * len(variables)).copy()
