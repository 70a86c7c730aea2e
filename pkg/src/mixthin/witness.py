"""Mixed-thin witnesses and their verifier."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Sequence

from .errors import DomainMismatch, InvalidWitness
from .graph import Graph

MIXED_THIN = "mixedThin"
PROPER = "proper"
INVERSION_FREE = "inversionFree"
PROPER_INVERSION_FREE = "properInversionFree"
VARIANTS = (MIXED_THIN, PROPER, INVERSION_FREE, PROPER_INVERSION_FREE)

EQUAL, REVERSED, NEITHER = "equal", "reversed", "neither"


def is_proper(variant: str) -> bool:
    return variant in (PROPER, PROPER_INVERSION_FREE)


def is_inversion_free(variant: str) -> bool:
    return variant in (INVERSION_FREE, PROPER_INVERSION_FREE)


def weaker_variants(variant: str) -> list[str]:
    """Variants implied by ``variant`` (including itself)."""
    out = [v for v in VARIANTS if (not is_proper(v) or is_proper(variant))
           and (not is_inversion_free(v) or is_inversion_free(variant))]
    return out


@dataclass
class MixedThinWitness:
    """Partition into parts ``1..k`` with an order per part pair ``i <= j``.

    ``orders[(i, j)]`` lists the vertices of ``V_i | V_j`` in increasing order;
    pairs in ``complement_pairs`` use the complement edge set.
    """

    k: int
    part: list
    orders: dict
    complement_pairs: set = field(default_factory=set)
    variant: str = PROPER_INVERSION_FREE

    def __post_init__(self):
        self.part = list(self.part)
        self.orders = {tuple(key): list(val) for key, val in self.orders.items()}
        self.complement_pairs = {tuple(sorted(p)) for p in self.complement_pairs}

    @property
    def n(self) -> int:
        return len(self.part)

    def parts(self) -> dict[int, list[int]]:
        """Vertices of each part, in ``<=_ii`` order when available."""
        out = {}
        for i in range(1, self.k + 1):
            order = self.orders.get((i, i))
            if order is None:
                order = [v for v, p in enumerate(self.part) if p == i]
            out[i] = list(order)
        return out

    def order(self, i: int, j: int) -> list[int]:
        return self.orders[(min(i, j), max(i, j))]

    def uses_complement(self, i: int, j: int) -> bool:
        return (min(i, j), max(i, j)) in self.complement_pairs

    def pairs(self) -> Iterator[tuple[int, int]]:
        for i in range(1, self.k + 1):
            for j in range(i, self.k + 1):
                yield i, j

    def check_well_formed(self, n: int | None = None) -> None:
        if self.k < 1:
            raise InvalidWitness("k must be positive")
        if self.variant not in VARIANTS:
            raise InvalidWitness(f"unknown variant {self.variant!r}")
        if n is not None and len(self.part) != n:
            raise InvalidWitness(f"part map covers {len(self.part)} vertices, graph has {n}")
        for v, p in enumerate(self.part):
            if not (1 <= p <= self.k):
                raise InvalidWitness(f"vertex {v} has part {p} outside 1..{self.k}")
        members = {i: {v for v, p in enumerate(self.part) if p == i} for i in range(1, self.k + 1)}
        for i, j in self.pairs():
            if (i, j) not in self.orders:
                raise InvalidWitness(f"missing order for pair {i},{j}")
            order = self.orders[(i, j)]
            if len(order) != len(set(order)) or set(order) != members[i] | members[j]:
                raise InvalidWitness(f"order {i},{j} is not a permutation of V_{i} | V_{j}")
        for p in self.complement_pairs:
            if p not in self.orders:
                raise InvalidWitness(f"complement pair {p} is not a part pair")

    def with_variant(self, variant: str) -> MixedThinWitness:
        return MixedThinWitness(self.k, self.part, self.orders, self.complement_pairs, variant)


@dataclass
class VerificationReport:
    accepted: bool = True
    violations: list = field(default_factory=list)

    def add(self, tag: str, pair: tuple[int, int], witness: tuple) -> None:
        self.violations.append((tag, pair, witness))
        self.accepted = False


def alignment(o1: Sequence[int], o2: Sequence[int]) -> str:
    o1, o2 = list(o1), list(o2)
    if len(o1) != len(o2) or set(o1) != set(o2):
        raise DomainMismatch("orders are on different ground sets")
    if o1 == o2:
        return EQUAL
    if o1 == o2[::-1]:
        return REVERSED
    return NEITHER


def _restrict(order: Sequence[int], keep: set) -> list[int]:
    return [v for v in order if v in keep]


def _check_runs(order, part, i, j, adjacent, report: VerificationReport, proper: bool) -> None:
    """Scan triples of one part pair using the run characterisation.

    For each ``w``, vertices of the opposite side before ``w`` that are adjacent
    to it must form a suffix (condition b); those after must form a prefix (c).
    """
    side = [part[v] for v in order]
    for pos, w in enumerate(order):
        other = j if side[pos] == i else i
        first_nbr = None
        for v in order[:pos]:
            if part[v] != other:
                continue
            if adjacent(v, w):
                if first_nbr is None:
                    first_nbr = v
            elif first_nbr is not None:
                report.add("b", (i, j), (first_nbr, v, w))
                break
        if not proper:
            continue
        # reading right-to-left: the farthest neighbour after w must not skip a non-neighbour
        last_nbr = None
        for v in reversed(order[pos + 1:]):
            if part[v] != other:
                continue
            if adjacent(w, v):
                if last_nbr is None:
                    last_nbr = v
            elif last_nbr is not None:
                report.add("c", (i, j), (w, v, last_nbr))
                break


def verify_witness(g: Graph, w: MixedThinWitness) -> VerificationReport:
    w.check_well_formed(g.n)
    report = VerificationReport()
    adj = g.neighbors()
    proper = is_proper(w.variant)
    strict = is_inversion_free(w.variant)
    parts = {i: set(v for v, p in enumerate(w.part) if p == i) for i in range(1, w.k + 1)}
    for i, j in w.pairs():
        order = w.orders[(i, j)]
        for side in {i, j}:
            inner = w.orders[(side, side)]
            restricted = _restrict(order, parts[side])
            kind = alignment(restricted, inner)
            if kind == NEITHER or (strict and kind == REVERSED):
                tag = "a'" if strict else "a"
                report.add(tag, (i, j), tuple(restricted))
        complement = w.uses_complement(i, j)

        def adjacent(x, y, complement=complement):
            return (y in adj[x]) != complement

        _check_runs(order, w.part, i, j, adjacent, report, proper)
    return report


def brute_force_violations(g: Graph, w: MixedThinWitness) -> list[tuple[str, tuple, tuple]]:
    """Direct triple enumeration of conditions (b) and (c); used as a test oracle."""
    out = []
    proper = is_proper(w.variant)
    for i, j in w.pairs():
        order = w.orders[(i, j)]
        comp = w.uses_complement(i, j)

        def inE(x, y):
            return g.has_edge(x, y) != comp

        def split(a, b):
            pa, pb = w.part[a], w.part[b]
            return (pa == i and pb == j) or (pa == j and pb == i)

        n = len(order)
        for x in range(n):
            for y in range(x + 1, n):
                for z in range(y + 1, n):
                    u, v, t = order[x], order[y], order[z]
                    if w.part[u] == w.part[v] and split(v, t) and inE(u, t) and not inE(v, t):
                        out.append(("b", (i, j), (u, v, t)))
                    if proper and w.part[v] == w.part[t] and split(u, v) and inE(u, t) and not inE(u, v):
                        out.append(("c", (i, j), (u, v, t)))
    return out
