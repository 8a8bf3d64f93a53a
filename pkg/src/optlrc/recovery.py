"""Disjoint recovery-set extraction and single-symbol local repair."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._search import DEFAULT_BUDGET, DependencySearch
from .codes import LinearCode, RecoverySet, minimal_recovery_sets
from .linalg import matmul


class LocalityViolation(ValueError):
    """A coordinate has no recovery set of the requested size."""


class RepairError(ValueError):
    pass


@dataclass(frozen=True)
class RecoveryPlan:
    code: LinearCode
    sets: tuple[RecoverySet, ...]

    @property
    def disjoint(self) -> bool:
        seen: set[int] = set()
        for rs in self.sets:
            if seen.intersection(rs.support):
                return False
            seen.update(rs.support)
        return True

    @property
    def covering(self) -> bool:
        covered = set().union(*(rs.support for rs in self.sets)) if self.sets else set()
        return covered == set(range(self.code.n))

    def set_for(self, i: int) -> RecoverySet:
        """The first set in the plan whose support contains ``i``."""
        for rs in self.sets:
            if i in rs.support:
                return rs
        raise KeyError(f"coordinate {i} is not covered by the plan")

    def to_text(self) -> str:
        lines = []
        for rs in self.sets:
            sup = " ".join(map(str, rs.support))
            wit = " ".join(map(str, rs.witness.tolist()))
            lines.append(f"{rs.coordinate} | {sup} | {wit}")
        return "\n".join(lines) + ("\n" if lines else "")


def greedy_cover(code: LinearCode, r: int, budget: int | None = DEFAULT_BUDGET) -> RecoveryPlan:
    """Cover [n] starting each step from the smallest uncovered coordinate.

    Among the minimum-size recovery sets of that coordinate, a set avoiding
    every already covered coordinate is preferred; ties go to the
    lexicographically smallest support.
    """
    f = code.field
    sets_by_coord = minimal_recovery_sets(code, max_size=r + 1, budget=budget)
    search = DependencySearch(code.generator, budget=budget) if code.k else None
    levels: dict[int, tuple[np.ndarray, np.ndarray]] = {}
    chosen: list[RecoverySet] = []
    covered = np.zeros(code.n, dtype=bool)
    for i in range(code.n):
        if covered[i]:
            continue
        rs = sets_by_coord.get(i)
        if rs is None:
            raise LocalityViolation(f"coordinate {i} has no recovery set of size <= {r + 1}")
        if covered[list(rs.support)].any() and search is not None:
            s = rs.size
            if s not in levels:
                levels[s] = search.collect(s)
            supports, coeffs = levels[s]
            mask = (supports == i).any(axis=1) & ~covered[supports].any(axis=1)
            if mask.any():
                # rows come out in arbitrary order; pick the lexicographic minimum
                cand = supports[mask]
                row = np.lexsort(cand.T[::-1])[0]
                w = np.zeros(code.n, dtype=np.int64)
                w[cand[row]] = coeffs[mask][row]
                w = f.mul(w, f.inv(int(w[i])))
                rs = RecoverySet(i, tuple(cand[row].tolist()), w)
        chosen.append(rs)
        covered[list(rs.support)] = True
    return RecoveryPlan(code, tuple(chosen))


@dataclass(frozen=True)
class DisjointifyResult:
    plan: RecoveryPlan
    removed: int
    survivor_bound: int | None = None

    @property
    def bound_met(self) -> bool | None:
        if self.survivor_bound is None:
            return None
        return len(self.plan.sets) >= self.survivor_bound


def disjointify(plan: RecoveryPlan, r: int | None = None, d: int | None = None) -> DisjointifyResult:
    """Drop every set that contains a coordinate covered more than once.

    With ``r`` and ``d`` given and ``(r+1) | n`` the result also reports the
    survivor lower bound n/(r+1) - h(3r+2), h = d-2-floor((d-2)/(r+1)).
    """
    if not plan.covering:
        raise ValueError("disjointify needs a covering plan")
    bound = None
    n = plan.code.n
    if r is not None and d is not None and n % (r + 1) == 0:
        h = d - 2 - (d - 2) // (r + 1)
        bound = n // (r + 1) - h * (3 * r + 2)
    if plan.disjoint:
        return DisjointifyResult(plan, 0, bound)
    counts: dict[int, int] = {}
    for rs in plan.sets:
        for j in rs.support:
            counts[j] = counts.get(j, 0) + 1
    keep = tuple(rs for rs in plan.sets if all(counts[j] == 1 for j in rs.support))
    return DisjointifyResult(RecoveryPlan(plan.code, keep), len(plan.sets) - len(keep), bound)


def repair(code: LinearCode, word, i: int, witness) -> int:
    """Recover ``word[i]`` from the other symbols in the witness support.

    ``word`` is a sequence with ``None`` at erased positions.
    """
    f = code.field
    w = np.asarray(witness, dtype=np.int64)
    if w[i] == 0:
        raise RepairError(f"witness does not cover coordinate {i}")
    total = 0
    for j in np.flatnonzero(w).tolist():
        if j == i:
            continue
        if word[j] is None:
            raise RepairError(f"coordinate {j} in the recovery set is also erased")
        total = f.add(total, f.mul(int(w[j]), int(word[j])))
    return f.mul(f.neg(total), f.inv(int(w[i])))


def repair_batch(code: LinearCode, words: np.ndarray, i: int, witness) -> np.ndarray:
    """Vectorised :func:`repair` of coordinate ``i`` for a stack of codewords."""
    f = code.field
    w = np.asarray(witness, dtype=np.int64).copy()
    wi = int(w[i])
    w[i] = 0
    acc = matmul(f, words, w[:, None])[:, 0]
    return f.mul(f.neg(acc), f.inv(wi))


@dataclass(frozen=True)
class SimReport:
    trials: int
    successes: int
    symbols_read: tuple[int, ...]

    @property
    def success_rate(self) -> float | None:
        return self.successes / self.trials if self.trials else None

    @property
    def mean_read(self) -> float | None:
        return sum(self.symbols_read) / self.trials if self.trials else None

    @property
    def max_read(self) -> int | None:
        return max(self.symbols_read) if self.trials else None


def erasure_sim(code: LinearCode, plan: RecoveryPlan, trials: int, rng_seed: int = 0) -> SimReport:
    """Erase one random symbol of a random codeword per trial and repair it via the plan."""
    if not (plan.disjoint and plan.covering):
        raise ValueError("erasure simulation needs a disjoint covering plan")
    rng = np.random.default_rng(rng_seed)
    if trials <= 0:
        return SimReport(0, 0, ())
    words = code.random_codewords(trials, rng)
    coords = rng.integers(0, code.n, size=trials)
    ok = 0
    reads = []
    for word, i in zip(words.tolist(), coords.tolist()):
        rs = plan.set_for(i)
        erased = list(word)
        erased[i] = None
        if repair(code, erased, i, rs.witness) == word[i]:
            ok += 1
        reads.append(int(np.count_nonzero(rs.witness)) - 1)
    return SimReport(trials, ok, tuple(reads))


def expected_set_count(n: int, r: int) -> int:
    return math.ceil(n / (r + 1))
