"""Meet-in-the-middle enumeration of small linear dependencies among columns.

A dependency of size ``s`` is a coefficient vector with exactly ``s`` nonzero
entries whose combination of columns vanishes.  Over the columns of a
parity-check matrix these are codewords; over the columns of a generator
matrix they are dual codewords.

Each column multiple ``c * col_j`` is mapped once through a random
GF(p)-linear projection into a short fingerprint.  The projection is linear,
so fingerprints of combinations are combinations of fingerprints, and
``sum_A + sum_B == 0`` can be detected with a sorted join between the two
halves.  Every fingerprint match is re-checked with exact field arithmetic,
so hash collisions can cost time but never produce a wrong answer.
"""

from __future__ import annotations

import math
from itertools import combinations, islice, product
from typing import Iterator

import numpy as np

from .field import GF
from .linalg import Matrix

DEFAULT_BUDGET = 2 * 10**9
_CHUNK_ROWS = 1 << 17
_RIGHT_TABLE_CAP = 1 << 21


class BudgetExceeded(RuntimeError):
    """An exhaustive search would exceed its configured work budget."""


class DependencySearch:
    """Enumerate dependencies of exact support size among the columns of ``M``."""

    def __init__(self, M: Matrix, budget: int | None = DEFAULT_BUDGET, seed: int = 0x1C0DE):
        f = M.field
        self.field = f
        self.cols = M.data.T.copy()  # (n, D)
        self.n, dim = self.cols.shape
        self.budget = budget
        self.work = 0
        q, p = f.q, f.p
        scaled = f.mul(np.arange(q, dtype=np.int64)[None, :, None], self.cols[:, None, :])
        bits = dim * f.m
        digits = f.to_digits(scaled).reshape(self.n, q, bits)
        rng = np.random.default_rng(seed)
        if p == 2:
            width = 62
            if bits <= width:
                packed = digits
            else:
                proj = rng.integers(0, 2, size=(bits, width))
                packed = (digits @ proj) % 2
            pw = np.left_shift(np.uint64(1), np.arange(packed.shape[-1], dtype=np.uint64))
            self._keys = (packed.astype(np.uint64) * pw).sum(axis=-1, dtype=np.uint64)
            self._width = 0
        else:
            width = max(1, int(62 / math.log2(p)))
            if bits <= width:
                hashed = digits
            else:
                proj = rng.integers(0, p, size=(bits, width))
                hashed = (digits @ proj) % p
            self._hash = hashed.astype(np.int32)  # (n, q, width)
            self._width = hashed.shape[-1]
            self._pw = (np.uint64(p) ** np.arange(self._width, dtype=np.uint64))

    # --- fingerprints -------------------------------------------------------

    def _combine(self, idx: np.ndarray, coef: np.ndarray) -> np.ndarray:
        """Fingerprints of sum_l coef[:, l] * col[idx[:, l]] for all rows of idx x coef.

        ``idx`` has shape (Nc, t) and ``coef`` shape (Nk, t); the result is the
        flattened (Nc * Nk,) key array with combos varying slowest.
        """
        nc, t = idx.shape
        nk = coef.shape[0]
        if self.field.p == 2:
            acc = np.zeros((nc, nk), dtype=np.uint64)
            for l in range(t):
                acc ^= self._keys[idx[:, l][:, None], coef[:, l][None, :]]
            return acc.reshape(-1)
        acc = np.zeros((nc, nk, self._width), dtype=np.int32)
        for l in range(t):
            acc += self._hash[idx[:, l][:, None], coef[:, l][None, :]]
        acc %= self.field.p
        return (acc.astype(np.uint64) * self._pw).sum(axis=-1, dtype=np.uint64).reshape(-1)

    def _charge(self, rows: int) -> None:
        self.work += rows
        if self.budget is not None and self.work > self.budget:
            raise BudgetExceeded(
                f"dependency search exceeded its budget of {self.budget} enumerated combinations"
            )

    # --- tables -------------------------------------------------------------

    def _coef_tuples(self, t: int, leading_one: bool) -> np.ndarray:
        nz = range(1, self.field.q)
        if t == 0:
            return np.zeros((1, 0), dtype=np.int64)
        if leading_one:
            tuples = [(1, *rest) for rest in product(nz, repeat=t - 1)]
        else:
            tuples = list(product(nz, repeat=t))
        return np.array(tuples, dtype=np.int64).reshape(-1, t)

    def level_cost(self, s: int) -> int:
        """Number of combinations enumerated to exhaust level ``s``."""
        t1, t2 = self._split(s)
        qm = self.field.q - 1
        return math.comb(self.n, t1) * qm ** max(t1 - 1, 0) + math.comb(self.n, t2) * qm**t2

    def _split(self, s: int) -> tuple[int, int]:
        qm = self.field.q - 1
        t2 = s // 2
        while t2 > 0 and math.comb(self.n, t2) * qm**t2 > _RIGHT_TABLE_CAP:
            t2 -= 1
        return s - t2, t2

    def _right_table(self, t2: int):
        f = self.field
        coef = self._coef_tuples(t2, leading_one=False)
        if t2 == 0:
            idx = np.zeros((1, 0), dtype=np.int64)
        else:
            idx = np.array(list(combinations(range(self.n), t2)), dtype=np.int64).reshape(-1, t2)
        self._charge(idx.shape[0] * coef.shape[0])
        # store fingerprints of the negated sum so that a match means sum_A + sum_B = 0
        neg = f.neg(coef) if t2 else coef
        step = max(1, _CHUNK_ROWS // coef.shape[0])
        keys = np.concatenate(
            [self._combine(idx[i : i + step], neg) for i in range(0, idx.shape[0], step)]
        )
        order = np.argsort(keys, kind="stable")
        ridx = np.repeat(idx, coef.shape[0], axis=0)
        rcoef = np.tile(coef, (idx.shape[0], 1))
        return keys[order], ridx[order], rcoef[order]

    # --- enumeration ----------------------------------------------------------

    def level(self, s: int) -> Iterator[tuple[np.ndarray, np.ndarray]]:
        """Yield ``(supports, coefficients)`` batches of all size-``s`` dependencies.

        Supports are sorted index rows; each dependency appears once, scaled so
        that the coefficient on its smallest index is 1.
        """
        if s < 1 or s > self.n:
            return
        f = self.field
        t1, t2 = self._split(s)
        rkeys, ridx, rcoef = self._right_table(t2)
        lcoef = self._coef_tuples(t1, leading_one=True)
        per_chunk = max(1, _CHUNK_ROWS // lcoef.shape[0])
        # the left half holds the t1 smallest indices of the support
        combos = combinations(range(self.n - t2), t1)
        while True:
            block = list(islice(combos, per_chunk))
            if not block:
                break
            lidx = np.array(block, dtype=np.int64)
            self._charge(lidx.shape[0] * lcoef.shape[0])
            lkeys = self._combine(lidx, lcoef)
            lo = np.searchsorted(rkeys, lkeys, side="left")
            hi = np.searchsorted(rkeys, lkeys, side="right")
            cnt = hi - lo
            total = int(cnt.sum())
            if total == 0:
                continue
            li = np.repeat(np.arange(lkeys.size), cnt)
            starts = np.repeat(lo, cnt)
            offs = np.arange(total) - np.repeat(np.cumsum(cnt) - cnt, cnt)
            ri = starts + offs
            combo_row, coef_row = np.divmod(li, lcoef.shape[0])
            a_idx = lidx[combo_row]
            b_idx = ridx[ri]
            if t2:
                keep = a_idx[:, -1] < b_idx[:, 0]
                if not keep.any():
                    continue
                a_idx, b_idx = a_idx[keep], b_idx[keep]
                coef_row, ri = coef_row[keep], ri[keep]
            supports = np.hstack([a_idx, b_idx])
            coeffs = np.hstack([lcoef[coef_row], rcoef[ri]])
            combo = f.sum(f.mul(coeffs[:, :, None], self.cols[supports]), axis=1)
            ok = ~combo.any(axis=1)
            if ok.any():
                yield supports[ok], coeffs[ok]

    def has_level(self, s: int) -> bool:
        for _ in self.level(s):
            return True
        return False

    def first(self, s: int) -> tuple[np.ndarray, np.ndarray] | None:
        for supports, coeffs in self.level(s):
            return supports[0], coeffs[0]
        return None

    def collect(self, s: int) -> tuple[np.ndarray, np.ndarray]:
        sup, co = [], []
        for a, b in self.level(s):
            sup.append(a)
            co.append(b)
        if not sup:
            empty = np.zeros((0, s), dtype=np.int64)
            return empty, empty.copy()
        return np.vstack(sup), np.vstack(co)
