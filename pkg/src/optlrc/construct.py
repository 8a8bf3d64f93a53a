"""Block-structured parity-check constructions: Vandermonde blocks and the greedy column search.

Both constructions emit ``H`` with ``L = n/(r+1)`` block rows on top and
``D = d-2`` rows below.  Column ``(i, j)`` (block ``i``, slot ``j``, both
0-based) carries a 1 in block row ``i`` and a vector ``v`` in the lower part.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field as dc_field
from itertools import combinations, product

import numpy as np

from .codes import LinearCode
from .field import GF
from .linalg import Matrix


class ConstructionError(ValueError):
    """Parameters violate a construction's preconditions."""


class CandidateOrder(str, enum.Enum):
    LEXICOGRAPHIC = "lexicographic"
    SEEDED_RANDOM = "seeded-random"


class CheckMode(str, enum.Enum):
    STRUCTURED = "structured"
    NAIVE = "naive"


def _block_rows(L: int, r: int) -> np.ndarray:
    top = np.zeros((L, L * (r + 1)), dtype=np.int64)
    for b in range(L):
        top[b, b * (r + 1) : (b + 1) * (r + 1)] = 1
    return top


def construct_vandermonde(f: GF, n: int, d: int, r: int) -> LinearCode:
    """Block-diagonal all-one rows over a repeated (d-2) x (r+1) Vandermonde block.

    The evaluation points are the field elements 0, 1, ..., r and row e of
    the lower block holds their e-th powers, e = 1..d-2.
    """
    if d not in (3, 4):
        raise ConstructionError(f"d in {{3, 4}} required, got d={d}")
    if r < 1 or d - 2 > r:
        raise ConstructionError(f"d-2 <= r required, got d={d} r={r}")
    if n < 1 or n % (r + 1):
        raise ConstructionError(f"(r+1) | n required, got n={n} r={r}")
    if f.q < r + 1:
        raise ConstructionError(f"q >= r+1 required, got q={f.q} r={r}")
    L = n // (r + 1)
    pts = list(range(r + 1))
    A = np.array([[f.pow(x, e) for x in pts] for e in range(1, d - 1)], dtype=np.int64)
    H = np.vstack([_block_rows(L, r), np.tile(A, (1, L))])
    return LinearCode(Matrix(f, H))


@dataclass
class ConstructionConfig:
    field: GF
    n: int
    d: int
    r: int
    candidate_order: CandidateOrder = CandidateOrder.LEXICOGRAPHIC
    rng_seed: int = 0
    check_mode: CheckMode = CheckMode.STRUCTURED
    # d <= r+2 is the regime the greedy argument covers; lifting it is for experiments
    enforce_regime: bool = True

    def __post_init__(self) -> None:
        self.candidate_order = CandidateOrder(self.candidate_order)
        self.check_mode = CheckMode(self.check_mode)
        if self.d < 2 or self.r < 1:
            raise ConstructionError(f"d >= 2 and r >= 1 required, got d={self.d} r={self.r}")
        if self.enforce_regime and self.d > self.r + 2:
            raise ConstructionError(f"d <= r+2 required, got d={self.d} r={self.r}")
        if self.n < 1 or self.n % (self.r + 1):
            raise ConstructionError(f"(r+1) | n required, got n={self.n} r={self.r}")


@dataclass(frozen=True)
class TraceRecord:
    block: int
    slot: int
    rejected: int
    v: tuple[int, ...]


@dataclass
class GreedyTrace:
    records: list[TraceRecord] = dc_field(default_factory=list)
    stuck_at: tuple[int, int] | None = None

    @property
    def status(self) -> str:
        return "complete" if self.stuck_at is None else "stuck"

    @property
    def columns(self) -> int:
        return len(self.records)

    def to_text(self) -> str:
        lines = [f"{t.block} {t.slot} {t.rejected} {','.join(map(str, t.v))}" for t in self.records]
        if self.stuck_at is None:
            lines.append("# complete")
        else:
            lines.append(f"# stuck at {self.stuck_at[0]} {self.stuck_at[1]}")
        return "\n".join(lines) + "\n"


class VectorSpace:
    """F_q^D with vectors indexed by sum v_i q^(D-1-i), so index order is lexicographic."""

    def __init__(self, f: GF, D: int):
        self.f = f
        self.D = D
        self.size = f.q**D
        self.weights = f.q ** np.arange(D - 1, -1, -1, dtype=np.int64)
        idx = np.arange(self.size, dtype=np.int64)
        self.vecs = (idx[:, None] // self.weights[None, :]) % f.q

    def encode(self, V: np.ndarray) -> np.ndarray:
        return np.asarray(V, dtype=np.int64) @ self.weights

    def empty(self) -> np.ndarray:
        return np.zeros(self.size, dtype=bool)

    def zero_set(self) -> np.ndarray:
        s = self.empty()
        s[0] = True
        return s

    def sumset(self, A: np.ndarray, B: np.ndarray) -> np.ndarray:
        """{a + b : a in A, b in B} for boolean membership arrays."""
        ia, ib = np.flatnonzero(A), np.flatnonzero(B)
        out = self.empty()
        if ia.size == 0 or ib.size == 0:
            return out
        if ia.size > ib.size:
            ia, ib = ib, ia
        big = self.vecs[ib]
        step = max(1, (1 << 22) // max(1, ib.size * self.D))
        for s in range(0, ia.size, step):
            small = self.vecs[ia[s : s + step]]
            out[self.encode(self.f.add(small[:, None, :], big[None, :, :])).ravel()] = True
        return out

    def combos(self, V: np.ndarray, size: int, coef_sum: int) -> np.ndarray:
        """Membership array of sum c_l V[S_l] over all size-``size`` subsets S of the rows
        of V and nonzero coefficients with field sum ``coef_sum``."""
        f = self.f
        out = self.empty()
        if size > V.shape[0]:
            return out
        coefs = np.array(list(product(range(1, f.q), repeat=size)), dtype=np.int64).reshape(-1, size)
        coefs = coefs[f.sum(coefs, axis=1) == coef_sum]
        if coefs.size == 0:
            return out
        for S in combinations(range(V.shape[0]), size):
            terms = f.mul(coefs[:, :, None], V[list(S)][None, :, :])
            out[self.encode(f.sum(terms, axis=1))] = True
        return out


class GreedyBuilder:
    """Incremental state of the greedy column search.

    A candidate column (e_a, v) is rejected iff it lies in the span of at most
    D = d-2 earlier columns.  Matching the block rows forces the coefficients
    on block a to sum to 1 and those on every other block to sum to 0, so a
    block other than a contributes either nothing or at least two columns.
    The structured check keeps, for every t <= D, the set T[t] of lower parts
    reachable with at most t columns from finished blocks and zero-sum
    coefficients per block, and rejects the union over s of
    (sums of s current-block columns with coefficients summing to 1) + T[D-s].
    """

    def __init__(self, f: GF, d: int, r: int):
        self.f = f
        self.d = d
        self.r = r
        self.D = d - 2
        self.space = VectorSpace(f, self.D)
        self.blocks: list[list[int]] = []
        self.T = [self.space.zero_set() for _ in range(self.D + 1)]

    @property
    def position(self) -> tuple[int, int]:
        if not self.blocks or len(self.blocks[-1]) == self.r + 1:
            return len(self.blocks), 0
        return len(self.blocks) - 1, len(self.blocks[-1])

    def _current(self) -> list[int]:
        a, j = self.position
        return [] if j == 0 else self.blocks[a]

    def bad_structured(self) -> np.ndarray:
        sp = self.space
        cur = self._current()
        bad = sp.empty()
        if not cur:
            return bad
        V = sp.vecs[cur]
        for s in range(1, min(len(cur), self.D) + 1):
            A = sp.combos(V, s, 1)
            bad |= sp.sumset(A, self.T[self.D - s])
        return bad

    def bad_naive(self) -> np.ndarray:
        """Directly enumerate the span of every set of at most D earlier columns."""
        f, sp = self.f, self.space
        a, _ = self.position
        cols = []
        for b, block in enumerate(self.blocks):
            for v in block:
                top = np.zeros(a + 1, dtype=np.int64)
                top[b] = 1
                cols.append(np.concatenate([top, sp.vecs[v]]))
        bad = sp.empty()
        if not cols:
            return bad
        C = np.array(cols)
        target = np.zeros(a + 1, dtype=np.int64)
        target[a] = 1
        for s in range(1, min(self.D, len(cols)) + 1):
            coefs = np.array(list(product(range(1, f.q), repeat=s)), dtype=np.int64)
            for S in combinations(range(len(cols)), s):
                span = f.sum(f.mul(coefs[:, :, None], C[list(S)][None, :, :]), axis=1)
                hit = (span[:, : a + 1] == target).all(axis=1)
                if hit.any():
                    bad[sp.encode(span[hit, a + 1 :])] = True
        return bad

    def bad(self, mode: CheckMode = CheckMode.STRUCTURED) -> np.ndarray:
        return self.bad_naive() if CheckMode(mode) is CheckMode.NAIVE else self.bad_structured()

    def _finish_block(self, block: list[int]) -> None:
        sp = self.space
        V = sp.vecs[block]
        Z = {m: sp.combos(V, m, 0) for m in range(2, self.D + 1)}
        new = [t.copy() for t in self.T]
        for t in range(2, self.D + 1):
            for m in range(2, t + 1):
                new[t] |= sp.sumset(self.T[t - m], Z[m])
        for t in range(1, self.D + 1):
            new[t] |= new[t - 1]
        self.T = new

    def push(self, v: int) -> None:
        a, j = self.position
        if j == 0:
            self.blocks.append([v])
        else:
            self.blocks[a].append(v)
        if len(self.blocks[a]) == self.r + 1:
            self._finish_block(self.blocks[a])

    def parity_check(self) -> Matrix:
        L = len(self.blocks)
        cols = []
        for b, block in enumerate(self.blocks):
            for v in block:
                top = np.zeros(L, dtype=np.int64)
                top[b] = 1
                cols.append(np.concatenate([top, self.space.vecs[v]]))
        if not cols:
            return Matrix.zeros(self.f, L + self.D, 0)
        return Matrix(self.f, np.array(cols).T)


def construct_greedy(cfg: ConstructionConfig) -> tuple[LinearCode, GreedyTrace]:
    """Choose columns in order (0,0), (0,1), ..., each the first candidate whose
    column is independent of every set of at most d-2 earlier columns.

    On exhaustion the trace is marked stuck and the code built so far is returned.
    """
    f, r = cfg.field, cfg.r
    builder = GreedyBuilder(f, cfg.d, r)
    trace = GreedyTrace()
    rng = np.random.default_rng(cfg.rng_seed)
    size = builder.space.size
    for _ in range(cfg.n):
        a, j = builder.position
        bad = builder.bad(cfg.check_mode)
        if cfg.candidate_order is CandidateOrder.SEEDED_RANDOM:
            order = rng.permutation(size)
            ok = np.flatnonzero(~bad[order])
            pos = int(ok[0]) if ok.size else -1
            v = int(order[pos]) if ok.size else -1
        else:
            ok = np.flatnonzero(~bad)
            pos = v = int(ok[0]) if ok.size else -1
        if v < 0:
            trace.stuck_at = (a, j)
            break
        builder.push(v)
        trace.records.append(TraceRecord(a, j, pos, tuple(builder.space.vecs[v].tolist())))
    return LinearCode(builder.parity_check()), trace


def block_prefix(code: LinearCode, blocks: int, r: int, d: int) -> LinearCode:
    """The code on the first ``blocks`` blocks of a block-structured H."""
    H = code.H.data
    L = H.shape[0] - (d - 2)
    keep_rows = list(range(blocks)) + list(range(L, H.shape[0]))
    return LinearCode(Matrix(code.field, H[np.ix_(keep_rows, range(blocks * (r + 1)))]))


def eta_count(q: int, d: int, r: int, L: int) -> int:
    """Number of bad candidates the counting argument charges with L blocks."""
    return sum(
        (t * (r + 1)) ** (d - 2) * L ** (t - 1) * q ** (d - 1 - t)
        for t in range(1, (d - 1) // 2 + 1)
    )


def eta_guarantee(q: int, d: int, r: int) -> int:
    """Largest n = L(r+1) whose bad-candidate count stays below q^(d-1) - q^(d-2).

    Never less than r+1.
    """
    if d < 5 or d > r + 2:
        raise ConstructionError(f"5 <= d <= r+2 required, got d={d} r={r}")
    room = q ** (d - 1) - q ** (d - 2)
    if eta_count(q, d, r, 1) >= room:
        return r + 1
    lo, hi = 1, 2
    while eta_count(q, d, r, hi) < room:
        lo, hi = hi, hi * 2
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if eta_count(q, d, r, mid) < room:
            lo = mid
        else:
            hi = mid
    return lo * (r + 1)


def shorten(code: LinearCode, t: int, r: int | None = None) -> LinearCode:
    """Delete the last ``t`` columns of H."""
    if t < 1 or t >= code.n:
        raise ConstructionError(f"1 <= t < n required, got t={t} n={code.n}")
    if r is not None and t >= r + 1:
        raise ConstructionError(f"t < r+1 required, got t={t} r={r}")
    return LinearCode(code.H.columns(range(code.n - t)))


def block_count(n: int, r: int) -> int:
    return math.ceil(n / (r + 1))
