"""Linear codes given by a parity-check matrix: dimension, distance, locality.

Coordinates are 0-based throughout.  A recovery set for coordinate ``i``
contains ``i`` itself, so a set of size ``r + 1`` reads ``r`` other symbols.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field as dc_field
from functools import cached_property
from itertools import combinations, product
from typing import Iterable, Iterator, Sequence

import numpy as np

from ._search import DEFAULT_BUDGET, BudgetExceeded, DependencySearch
from .field import GF
from .linalg import Matrix, kernel_matrix, matmul, rank, rref, solve

ENUM_LIMIT = 1 << 24
DIRECT_LIMIT = 1 << 16


class UndefinedDistance(ValueError):
    """The code has dimension 0, so its minimum distance is undefined."""


class LocalityUndefined(ValueError):
    """Some coordinate has no recovery set at all."""


class Optimality(str, enum.Enum):
    OPTIMAL_EQ1 = "OPTIMAL_EQ1"
    OPTIMAL_DEFECT1 = "OPTIMAL_DEFECT1"
    SUBOPTIMAL = "SUBOPTIMAL"

    def __str__(self) -> str:
        return self.value


class LinearCode:
    """The kernel of a parity-check matrix ``H`` (rows may be redundant)."""

    def __init__(self, H: Matrix):
        self.H = H
        self.field: GF = H.field
        self.n: int = H.cols
        self._distance: dict[str, int] = {}
        self._min_sets: dict[int, RecoverySet] | None = None

    def __repr__(self) -> str:
        return f"LinearCode({self.field!r}, n={self.n}, k={self.k})"

    @cached_property
    def rank(self) -> int:
        return rank(self.H)

    @property
    def k(self) -> int:
        return self.n - self.rank

    @cached_property
    def generator(self) -> Matrix:
        """Generator matrix whose rows are the deterministic kernel basis of H."""
        return kernel_matrix(self.H)

    @cached_property
    def dual_basis(self) -> Matrix:
        """Nonzero rows of rref(H): a basis of the dual code."""
        R, piv = rref(self.H)
        return Matrix(self.field, R.data[: len(piv)])

    def encode(self, messages) -> np.ndarray:
        """Codewords for a message vector or a stack of them (rows)."""
        msg = np.atleast_2d(np.asarray(messages, dtype=np.int64))
        out = matmul(self.field, msg, self.generator.data)
        return out[0] if np.ndim(messages) == 1 else out

    def syndrome(self, word) -> np.ndarray:
        return self.H.apply(word)

    def contains(self, word) -> bool:
        return not self.syndrome(word).any()

    def codewords(self, chunk: int = 1 << 16) -> Iterator[np.ndarray]:
        """Yield the whole codebook in row batches."""
        f, k = self.field, self.k
        G = self.generator.data
        if k == 0:
            yield np.zeros((1, self.n), dtype=np.int64)
            return
        q = f.q
        inner = 0
        while inner < k and q ** (inner + 1) <= chunk:
            inner += 1
        inner = max(inner, 1)
        msgs = np.array(list(product(range(q), repeat=inner)), dtype=np.int64)
        base = matmul(f, msgs, G[k - inner :])
        for outer in product(range(q), repeat=k - inner):
            if outer:
                shift = matmul(f, np.array([outer], dtype=np.int64), G[: k - inner])
                yield f.add(base, shift)
            else:
                yield base

    def random_codewords(self, count: int, rng: np.random.Generator) -> np.ndarray:
        msgs = rng.integers(0, self.field.q, size=(count, self.k))
        if self.k == 0:
            return np.zeros((count, self.n), dtype=np.int64)
        return matmul(self.field, msgs, self.generator.data)


@dataclass(frozen=True)
class RecoverySet:
    """Recovery set ``support`` for ``coordinate`` with its dual-codeword witness."""

    coordinate: int
    support: tuple[int, ...]
    witness: np.ndarray = dc_field(compare=False, repr=False)

    @property
    def size(self) -> int:
        return len(self.support)


@dataclass(frozen=True)
class CodeProfile:
    n: int
    k: int
    d: int
    r: int
    optimality: Optimality
    defect: int
    reason: str = ""


# --- minimum distance ------------------------------------------------------------


def _distance_by_enumeration(code: LinearCode) -> int:
    if code.field.q**code.k > ENUM_LIMIT:
        raise BudgetExceeded(
            f"codeword enumeration needs q^k = {code.field.q}^{code.k} > 2^24 codewords"
        )
    best = code.n + 1
    for batch in code.codewords():
        w = np.count_nonzero(batch, axis=1)
        w = w[w > 0]
        if w.size:
            best = min(best, int(w.min()))
    return best


def _distance_by_columns(code: LinearCode, budget: int | None) -> int:
    search = DependencySearch(code.H, budget=budget)
    for s in range(1, code.rank + 2):
        if search.has_level(s):
            return s
    raise AssertionError("any rank+1 columns are dependent")  # pragma: no cover


def _column_cost(code: LinearCode) -> int:
    """Pessimistic cost of the column search: every level up to n - k + 1."""
    q = code.field.q
    total = 0
    for s in range(1, code.n - code.k + 2):
        t1 = (s + 1) // 2
        total += math.comb(code.n, t1) * (q - 1) ** max(t1 - 1, 0)
        if total > 1 << 62:
            break
    return total


def auto_strategy(code: LinearCode) -> str:
    """The cheaper of the two distance oracles for this code."""
    if code.field.q**code.k <= ENUM_LIMIT and code.field.q**code.k * code.n <= _column_cost(code):
        return "codeword-enum"
    return "column-subsets"


def min_distance(
    code: LinearCode, strategy: str = "auto", budget: int | None = DEFAULT_BUDGET
) -> int:
    """Exact minimum distance.

    ``strategy`` is ``"codeword-enum"``, ``"column-subsets"``, ``"auto"`` or
    ``"verify"`` (run both oracles and require agreement).  Exceeding a budget
    raises :class:`BudgetExceeded`; an approximate answer is never returned.
    """
    if code.k == 0:
        raise UndefinedDistance("minimum distance of the zero code is undefined")
    if strategy == "auto":
        strategy = auto_strategy(code)
    if strategy in code._distance:
        return code._distance[strategy]
    if strategy == "codeword-enum":
        d = _distance_by_enumeration(code)
    elif strategy == "column-subsets":
        d = _distance_by_columns(code, budget)
    elif strategy == "verify":
        a = _distance_by_enumeration(code)
        b = _distance_by_columns(code, budget)
        if a != b:
            raise AssertionError(f"distance oracles disagree: enumeration {a}, columns {b}")
        d = a
    else:
        raise ValueError(f"unknown distance strategy {strategy!r}")
    code._distance[strategy] = d
    return d


def has_independent_columns(code: LinearCode, s: int, budget: int | None = DEFAULT_BUDGET) -> bool:
    """True iff every set of at most ``s`` columns of H is linearly independent."""
    search = DependencySearch(code.H, budget=budget)
    return not any(search.has_level(t) for t in range(1, s + 1))


# --- recovery sets ---------------------------------------------------------------


def _normalize_witness(f: GF, w: np.ndarray, i: int) -> np.ndarray:
    return f.mul(w, f.inv(int(w[i])))


def is_recovery_set(code: LinearCode, i: int, R: Iterable[int]) -> tuple[bool, np.ndarray | None]:
    """Dual-codeword criterion for ``R`` being a recovery set of coordinate ``i``.

    Returns ``(True, witness)`` where the witness is a dual codeword with
    ``witness[i] == 1`` and support inside ``R``, or ``(False, None)``.
    """
    R = sorted(set(R))
    if i not in R:
        raise ValueError(f"coordinate {i} must belong to the recovery set {R}")
    if any(j < 0 or j >= code.n for j in R):
        raise ValueError(f"recovery set {R} out of range for length {code.n}")
    f = code.field
    G = code.generator.data
    others = [j for j in R if j != i]
    if code.k == 0:
        w = np.zeros(code.n, dtype=np.int64)
        w[i] = 1
        return True, w
    if not others:
        if G[:, i].any():
            return False, None
        w = np.zeros(code.n, dtype=np.int64)
        w[i] = 1
        return True, w
    x = solve(Matrix(f, G[:, others]), G[:, i])
    if x is None:
        return False, None
    w = np.zeros(code.n, dtype=np.int64)
    w[others] = x
    w[i] = f.neg(1)
    return True, _normalize_witness(f, w, i)


def is_recovery_set_direct(code: LinearCode, i: int, R: Iterable[int]) -> bool:
    """Check the projection-disjointness definition by enumerating the codebook."""
    R = sorted(set(R))
    if i not in R:
        raise ValueError(f"coordinate {i} must belong to the recovery set {R}")
    if code.field.q**code.k > DIRECT_LIMIT:
        raise BudgetExceeded(f"direct check needs q^k <= 2^16, got {code.field.q}^{code.k}")
    others = [j for j in R if j != i]
    seen: dict[bytes, int] = {}
    for batch in code.codewords():
        proj = np.ascontiguousarray(batch[:, others])
        for key, val in zip([row.tobytes() for row in proj], batch[:, i].tolist()):
            prev = seen.setdefault(key, val)
            if prev != val:
                return False
    return True


def _check_localizable(code: LinearCode) -> None:
    dual = code.dual_basis.data
    uncovered = [i for i in range(code.n) if not dual[:, i].any()]
    if uncovered:
        raise LocalityUndefined(
            f"coordinates {uncovered} lie outside the support of the dual code; "
            "they have no recovery set"
        )


def minimal_recovery_sets(
    code: LinearCode, max_size: int | None = None, budget: int | None = DEFAULT_BUDGET
) -> dict[int, RecoverySet]:
    """Smallest recovery set of every coordinate, lexicographically first among ties.

    Coordinates whose smallest set is larger than ``max_size`` are omitted.
    """
    _check_localizable(code)
    f = code.field
    cached = code._min_sets
    if cached is not None:
        return {i: rs for i, rs in cached.items() if max_size is None or rs.size <= max_size}
    found: dict[int, RecoverySet] = {}
    n = code.n
    limit = n if max_size is None else min(max_size, n)
    if code.k == 0:
        for i in range(n):
            w = np.zeros(n, dtype=np.int64)
            w[i] = 1
            found[i] = RecoverySet(i, (i,), w)
        code._min_sets = found
        return found
    search = DependencySearch(code.generator, budget=budget)
    for s in range(1, limit + 1):
        supports, coeffs = search.collect(s)
        best: dict[int, tuple[tuple[int, ...], np.ndarray]] = {}
        for sup, co in zip(supports.tolist(), coeffs):
            key = tuple(sup)
            for pos, i in enumerate(key):
                if i in found:
                    continue
                cur = best.get(i)
                if cur is None or key < cur[0]:
                    best[i] = (key, co)
        for i, (key, co) in best.items():
            w = np.zeros(n, dtype=np.int64)
            w[list(key)] = co
            found[i] = RecoverySet(i, key, _normalize_witness(f, w, i))
        if len(found) == n:
            break
    if max_size is None or len(found) == n:
        code._min_sets = found
    return found


def minimal_recovery_sets_enumerated(code: LinearCode, i: int) -> tuple[int, ...]:
    """Reference search: supports containing ``i`` in increasing size, lexicographic."""
    _check_localizable(code)
    others = [j for j in range(code.n) if j != i]
    for size in range(0, code.n):
        for T in combinations(others, size):
            R = tuple(sorted((i, *T)))
            if is_recovery_set(code, i, R)[0]:
                return R
    raise LocalityUndefined(f"coordinate {i} has no recovery set")  # pragma: no cover


def locality(code: LinearCode, budget: int | None = DEFAULT_BUDGET) -> int:
    """max over coordinates of (smallest recovery set size) - 1."""
    sets = minimal_recovery_sets(code, budget=budget)
    return max(rs.size for rs in sets.values()) - 1


# --- optimality ----------------------------------------------------------------


def singleton_rhs(n: int, k: int, r: int) -> int:
    return n - k - math.ceil(k / r) + 2


def classify_optimality(
    code: LinearCode,
    r: int | None = None,
    d: int | None = None,
    budget: int | None = DEFAULT_BUDGET,
) -> CodeProfile:
    """Classify the code against d <= n - k - ceil(k/r) + 2.

    ``r`` and ``d`` may be passed when already known; ``r`` is checked
    against the computed locality.
    """
    from .recovery import greedy_cover

    n, k = code.n, code.k
    actual_r = locality(code, budget=budget)
    if r is not None and r != actual_r:
        raise ValueError(f"passed locality {r} but the code has locality {actual_r}")
    r = actual_r
    if d is None:
        d = min_distance(code, budget=budget)
    defect = singleton_rhs(n, k, r) - d
    if defect < 0:
        raise AssertionError(f"Singleton-type bound violated: n={n} k={k} d={d} r={r}")
    if defect == 0:
        return CodeProfile(n, k, d, r, Optimality.OPTIMAL_EQ1, 0, "meets the bound with equality")
    if defect == 1:
        if d == r + 2 and n % (r + 1) == 0:
            return CodeProfile(
                n, k, d, r, Optimality.OPTIMAL_DEFECT1, 1,
                "d = r+2 with (r+1) | n: equality is impossible",
            )
        a = n % (r + 1)
        if a not in (0, 1) and (k % r >= a or k % r == 0):
            plan = greedy_cover(code, r)
            if plan.disjoint and len(plan.sets) == math.ceil(n / (r + 1)):
                return CodeProfile(
                    n, k, d, r, Optimality.OPTIMAL_DEFECT1, 1,
                    f"n = {a} mod r+1 with {len(plan.sets)} disjoint recovery sets and "
                    f"k mod r = {k % r}: equality is impossible",
                )
    return CodeProfile(n, k, d, r, Optimality.SUBOPTIMAL, defect, "no certificate for defect")


def profile(code: LinearCode, budget: int | None = DEFAULT_BUDGET) -> CodeProfile:
    return classify_optimality(code, budget=budget)


def code_from_rows(field: GF, rows: Sequence[Sequence[int]], n: int | None = None) -> LinearCode:
    return LinearCode(Matrix.from_rows(field, rows, cols=n))
