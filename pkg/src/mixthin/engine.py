"""Contraction sequences of red number at most 9k from a proper mixed-thin witness."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import EngineInvariantError, InvalidWitness, MalformedTrace
from .graph import (
    SYMMETRIC,
    ContractionTrace,
    Graph,
    TriMatrix,
    adjacency_trimatrix,
    contract_symmetric,
    red_number_in_mode,
)
from .trisection import Trisection, all_trisections, verify_trisection
from .witness import PROPER, MixedThinWitness, is_proper, verify_witness


def matrix_order(w: MixedThinWitness) -> list[int]:
    """Parts in index order, each listed by its own order."""
    return [v for i in range(1, w.k + 1) for v in w.orders[(i, i)]]


@dataclass
class EngineStats:
    main_steps: int = 0
    min_part_size: int | None = None
    max_merged_red: int = 0
    max_step_increment: int = 0
    max_gain_since_merge: int = 0
    red_aligned_checks: int = 0

    def to_json(self) -> dict:
        return dict(self.__dict__)


@dataclass
class EngineState:
    """Partial contraction consistent with the partition, plus boundaries per part pair."""

    k: int
    matrix: TriMatrix
    part_groups: dict
    trisections: dict
    red_after_own_merge: dict = field(default_factory=dict)

    def offsets(self) -> dict[int, int]:
        out, acc = {}, 0
        for i in range(1, self.k + 1):
            out[i] = acc
            acc += len(self.part_groups[i])
        return out

    def locate(self, q: int) -> tuple[int, int]:
        """Part and position inside the part of global matrix row ``q``."""
        for i in range(1, self.k + 1):
            size = len(self.part_groups[i])
            if q < size:
                return i, q
            q -= size
        raise IndexError("row index out of range")

    def row_horizontal(self, i: int, x: int) -> int:
        total = 0
        for j in range(1, self.k + 1):
            t: Trisection = self.trisections[(i, j)]
            line = (x + 1) if not t.rows_reversed else (t.rows - 1 - x)
            for arr in (t.lower, t.upper):
                total += arr[line] - (arr[line - 1] if line > 0 else 0)
        return total


def horizontal_value(state: EngineState, q: int) -> int:
    """Total horizontal boundary length on the grid line below matrix row ``q``."""
    i, x = state.locate(q)
    return state.row_horizontal(i, x)


def _submatrix_cells(state: EngineState, i: int, j: int) -> tuple[np.ndarray, set]:
    offs = state.offsets()
    rows = range(offs[i], offs[i] + len(state.part_groups[i]))
    cols = range(offs[j], offs[j] + len(state.part_groups[j]))
    cells = state.matrix.cells[np.ix_(list(rows), list(cols))] if rows and cols else np.zeros((len(rows), len(cols)))
    diag = {(r, r) for r in range(len(rows))} if i == j else set()
    return cells, diag


def check_red_aligned(state: EngineState) -> bool:
    for (i, j), t in state.trisections.items():
        cells, diag = _submatrix_cells(state, i, j)
        if not verify_trisection(cells, t, diag, allow_red=True):
            return False
    return True


class ContractionEngine:
    def __init__(self, g: Graph, w: MixedThinWitness, *, mode: str = SYMMETRIC, debug: bool = False):
        report = verify_witness(g, w if is_proper(w.variant) else w.with_variant(PROPER))
        if not report.accepted:
            raise InvalidWitness(f"witness rejected: {report.violations[:3]}")
        self.g, self.w, self.mode, self.debug = g, w, mode, debug
        self.order = matrix_order(w)
        self.state = EngineState(
            w.k,
            adjacency_trimatrix(g, self.order),
            {i: list(w.orders[(i, i)]) for i in range(1, w.k + 1)},
            all_trisections(g, w),
        )
        self.trace = ContractionTrace()
        self.stats = EngineStats()

    def _merge(self, a: int, b: int) -> TriMatrix:
        ids = self.state.matrix.group_ids()
        m = contract_symmetric(self.state.matrix, a, b)
        self.trace.append(min(ids[a], ids[b]), max(ids[a], ids[b]), red_number_in_mode(m, self.mode))
        return m

    def _main_step(self) -> None:
        st = self.state
        k = st.k
        part = max(range(1, k + 1), key=lambda i: (len(st.part_groups[i]), -i))
        size = len(st.part_groups[part])
        self.stats.min_part_size = size if self.stats.min_part_size is None else min(self.stats.min_part_size, size)
        if size < 9:
            raise EngineInvariantError(f"largest part has only {size} groups")
        values = [st.row_horizontal(part, x) for x in range(size)]
        q = min(range(size - 1), key=lambda x: (values[x] + values[x + 1], x))
        offset = st.offsets()[part]
        before = st.matrix.red_counts(SYMMETRIC)
        merged = self._merge(offset + q, offset + q + 1)
        after = merged.red_counts(SYMMETRIC)
        merged_id = merged.group_ids()[offset + q]
        merged_red = int(after[offset + q])
        self.stats.max_merged_red = max(self.stats.max_merged_red, merged_red)
        if merged_red > 7 * k:
            raise EngineInvariantError(f"merged row has {merged_red} > 7k red entries")
        old_ids = st.matrix.group_ids()
        survivors = [idx for idx in range(len(old_ids)) if idx not in (offset + q, offset + q + 1)]
        new_index = {gid: idx for idx, gid in enumerate(merged.group_ids())}
        st.red_after_own_merge[merged_id] = merged_red
        for idx in survivors:
            gid = old_ids[idx]
            now = int(after[new_index[gid]])
            self.stats.max_step_increment = max(self.stats.max_step_increment, now - int(before[idx]))
            gain = now - st.red_after_own_merge.get(gid, 0)
            self.stats.max_gain_since_merge = max(self.stats.max_gain_since_merge, gain)
            if gain > 2 * k:
                raise EngineInvariantError(f"row {gid} gained {gain} > 2k red entries since its last merge")
        groups = st.part_groups[part]
        groups[q:q + 2] = [merged_id]
        for j in range(1, k + 1):
            t = st.trisections[(part, j)]
            t.delete_row(q if not t.rows_reversed else t.rows - 2 - q)
        for i in range(1, k + 1):
            t = st.trisections[(i, part)]
            t.delete_col(q if not t.cols_reversed else t.cols - 2 - q)
        st.matrix = merged
        self.stats.main_steps += 1
        if self.debug:
            self.stats.red_aligned_checks += 1
            if not check_red_aligned(st):
                raise EngineInvariantError("matrix is no longer red-aligned")

    def _endgame_step(self) -> None:
        st = self.state
        ids = st.matrix.group_ids()
        candidates = []
        for i in range(1, st.k + 1):
            groups = sorted(st.part_groups[i])
            if len(groups) >= 2:
                candidates.append((groups[0], groups[1], i))
        if candidates:
            a, b, part = min(candidates)
            st.part_groups[part] = sorted(set(st.part_groups[part]) - {b})
        else:
            a, b = sorted(ids)[:2]
            part_of = {gid: i for i in st.part_groups for gid in st.part_groups[i]}
            st.part_groups[part_of[b]].remove(b)
        st.matrix = self._merge(ids.index(a), ids.index(b))

    def run(self) -> ContractionTrace:
        k = self.state.k
        while len(self.state.matrix) > 8 * k:
            self._main_step()
        while len(self.state.matrix) > 1:
            self._endgame_step()
        return self.trace


def build_sequence(g: Graph, w: MixedThinWitness, *, mode: str = SYMMETRIC, debug: bool = False,
                   stats: EngineStats | None = None) -> ContractionTrace:
    engine = ContractionEngine(g, w, mode=mode, debug=debug)
    trace = engine.run()
    if stats is not None:
        stats.__dict__.update(engine.stats.__dict__)
    return trace


def replay_sequence(g: Graph, order: list[int], trace: ContractionTrace, mode: str = SYMMETRIC) -> list[int]:
    """Red number after every merge, recomputed from scratch with ``contract_symmetric``."""
    m = adjacency_trimatrix(g, order)
    reds = []
    for step, (a, b) in enumerate(trace.steps):
        ids = m.group_ids()
        try:
            ia, ib = ids.index(a), ids.index(b)
        except ValueError:
            raise MalformedTrace(f"step {step}: no current group named {a} or {b}") from None
        if ia == ib:
            raise MalformedTrace(f"step {step}: merges group {a} with itself")
        m = contract_symmetric(m, ia, ib)
        reds.append(red_number_in_mode(m, mode))
    return reds


def verify_sequence(g: Graph, order: list[int], trace: ContractionTrace, bound: int,
                    mode: str = SYMMETRIC) -> bool:
    reds = replay_sequence(g, order, trace, mode)
    if trace.red_after_step and list(trace.red_after_step) != reds:
        return False
    return all(r <= bound for r in reds)
