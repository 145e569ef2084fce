"""Cycle decomposition of a true/candidate selection pair.

Pair the rows that a true selection and a candidate selection place in the
same measurement slot: slot i holds row ``true.picks[i]`` on the left and
row ``cand.picks[i]`` on the right of the concatenated matrix
``C = [B, B_cand]``.  Chasing "left row -> right row in the same slot ->
that row's slot on the left -> ..." partitions the slots into chains.  A
chain that closes on its starting row is a complete cycle; a chain that
ends on a row absent from the true selection is incomplete.  The number of
complete cycles governs whether the candidate can masquerade as the truth,
which makes this decomposition the main diagnostic for the exact solver.
"""

from dataclasses import dataclass

import numpy as np

from ._validation import check_matrix
from .sampling import Selection


@dataclass(frozen=True)
class Cycle:
    """One chain of row ids; ``row_ids`` includes the closing id.

    For a complete cycle the last id equals the first (a fixed point is
    stored as ``(v, v)``).  The chain occupies ``len(row_ids) - 1`` slots.
    """

    row_ids: tuple
    complete: bool

    @property
    def length(self):
        return len(self.row_ids) - 1


@dataclass(frozen=True)
class CycleDecomposition:
    cycles: tuple
    n_complete: int
    n_total: int

    def to_dict(self):
        return {
            "cycles": [
                {"row_ids": list(c.row_ids), "complete": c.complete} for c in self.cycles
            ],
            "n_complete": self.n_complete,
            "n_total": self.n_total,
        }


def _check_pair(true_sel: Selection, cand_sel: Selection):
    if len(true_sel) != len(cand_sel):
        raise ValueError(
            f"selections must have equal length, got {len(true_sel)} and {len(cand_sel)}"
        )
    if true_sel.source_rows != cand_sel.source_rows:
        raise ValueError(
            "selections must draw from the same source matrix, got "
            f"{true_sel.source_rows} and {cand_sel.source_rows} rows"
        )


def decompose(true_sel: Selection, cand_sel: Selection) -> CycleDecomposition:
    """Unique cycle decomposition of the slot pairing of two selections.

    Canonical ordering: complete cycles first, then incomplete; within each
    class cycles are sorted by their smallest row id, and a complete cycle
    starts at its smallest row id.
    """
    _check_pair(true_sel, cand_sel)
    slot_of = {row: i for i, row in enumerate(true_sel.picks)}
    # successor of a row present in the true selection = candidate row in its slot
    succ = {row: cand_sel.picks[i] for row, i in slot_of.items()}
    cand_rows = set(cand_sel.picks)

    complete, incomplete = [], []
    seen = set()

    # incomplete chains start at true rows nothing points to
    starts = [r for r in true_sel.picks if r not in cand_rows]
    for start in sorted(starts):
        chain = [start]
        cur = start
        while cur in succ:
            seen.add(cur)
            cur = succ[cur]
            chain.append(cur)
        incomplete.append(Cycle(tuple(chain), complete=False))

    # remaining rows sit on closed orbits
    for start in sorted(slot_of):
        if start in seen:
            continue
        chain = [start]
        cur = start
        while True:
            seen.add(cur)
            cur = succ[cur]
            chain.append(cur)
            if cur == start:
                break
        complete.append(Cycle(tuple(chain), complete=True))

    complete.sort(key=lambda c: min(c.row_ids))
    incomplete.sort(key=lambda c: min(c.row_ids))
    cycles = tuple(complete + incomplete)
    return CycleDecomposition(cycles, n_complete=len(complete), n_total=len(cycles))


def cycle_ordered_form(
    decomp: CycleDecomposition, true_sel: Selection, cand_sel: Selection, a
) -> np.ndarray:
    """Concatenated matrix ``[B, B_cand]`` with each cycle's rows adjacent.

    Rows follow the decomposition's canonical cycle order; within a cycle
    the k-th row is ``[a[v_k], a[v_{k+1}]]`` for the chain v_1, ..., v_n.
    """
    _check_pair(true_sel, cand_sel)
    a = check_matrix(a, "a")
    if a.shape[0] != true_sel.source_rows:
        raise ValueError(
            f"matrix has {a.shape[0]} rows, selections expect {true_sel.source_rows}"
        )
    slot_of = {row: i for i, row in enumerate(true_sel.picks)}
    n_slots = sum(c.length for c in decomp.cycles)
    if n_slots != len(true_sel):
        raise ValueError("decomposition does not cover the given selections")

    rows = []
    for cyc in decomp.cycles:
        for left, right in zip(cyc.row_ids[:-1], cyc.row_ids[1:]):
            slot = slot_of.get(left)
            if slot is None or cand_sel.picks[slot] != right:
                raise ValueError("decomposition is inconsistent with the given selections")
            rows.append(np.concatenate([a[left], a[right]]))
    return np.array(rows)
