"""Finite fields GF(p^m) with a canonical integer encoding of elements.

An element is an integer in ``[0, q)``; its base-``p`` digits (least
significant first) are the coefficients of the residue polynomial modulo the
field's irreducible modulus.  All arithmetic is table driven and works on
Python ints as well as on numpy integer arrays of any shape.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product

import numpy as np

MAX_ORDER = 1 << 16
_ADD_TABLE_LIMIT = 1024


def factor_int(n: int) -> dict[int, int]:
    """Trial-division factorisation, fine for the field orders we support."""
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def prime_power(q: int) -> tuple[int, int]:
    """Return ``(p, m)`` with ``q == p**m``; raise ValueError otherwise."""
    if q < 2:
        raise ValueError(f"field order must be >= 2, got {q}")
    fac = factor_int(q)
    if len(fac) != 1:
        hint = " * ".join(f"{p}^{e}" if e > 1 else str(p) for p, e in sorted(fac.items()))
        raise ValueError(f"{q} is not a prime power ({q} = {hint})")
    ((p, m),) = fac.items()
    return p, m


# --- dense polynomial helpers over GF(p), coefficient lists low-to-high -------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: list[int], b: list[int], p: int) -> list[int]:
    a = _trim(list(a))
    b = _trim(list(b))
    inv_lead = pow(b[-1], p - 2, p)
    while len(a) >= len(b):
        coef = a[-1] * inv_lead % p
        shift = len(a) - len(b)
        for i, bc in enumerate(b):
            a[shift + i] = (a[shift + i] - coef * bc) % p
        _trim(a)
    return a


def _digits(x: int, p: int, m: int) -> list[int]:
    out = []
    for _ in range(m):
        x, r = divmod(x, p)
        out.append(r)
    return out


def _undigits(ds, p: int) -> int:
    v = 0
    for c in reversed(list(ds)):
        v = v * p + int(c)
    return v


def is_irreducible(coeffs: list[int], p: int) -> bool:
    """True iff the monic polynomial ``coeffs`` (low-to-high) is irreducible over GF(p)."""
    deg = len(coeffs) - 1
    if deg <= 1:
        return deg == 1
    if coeffs[0] == 0:
        return False
    for dd in range(1, deg // 2 + 1):
        for low in product(range(p), repeat=dd):
            if not _poly_mod(coeffs, list(low) + [1], p):
                return False
    return True


def smallest_irreducible(p: int, m: int) -> tuple[int, ...]:
    """Monic irreducible of degree m whose integer encoding sum(c_i p^i) is smallest."""
    for tail in range(p**m):
        coeffs = _digits(tail, p, m) + [1]
        if is_irreducible(coeffs, p):
            return tuple(coeffs)
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


@dataclass(frozen=True)
class GF:
    """The field GF(p^m).  Build it with :func:`make_field`."""

    p: int
    m: int
    modulus: tuple[int, ...]

    @property
    def q(self) -> int:
        return self.p**self.m

    def __repr__(self) -> str:
        return f"GF({self.q})"

    def __contains__(self, a) -> bool:
        return isinstance(a, (int, np.integer)) and 0 <= a < self.q

    def elements(self) -> range:
        return range(self.q)

    def nonzero(self) -> range:
        return range(1, self.q)

    def serialize(self) -> str:
        return " ".join(str(x) for x in (self.p, self.m, *self.modulus))

    @classmethod
    def deserialize(cls, text: str) -> "GF":
        vals = [int(t) for t in text.split()]
        if len(vals) < 3:
            raise ValueError(f"bad field header {text!r}")
        p, m, coeffs = vals[0], vals[1], tuple(vals[2:])
        field = make_field(p**m)
        if field.p != p or len(coeffs) != m + 1:
            raise ValueError(f"bad field header {text!r}")
        if m > 1 and coeffs != field.modulus:
            if coeffs[-1] != 1 or not is_irreducible(list(coeffs), p):
                raise ValueError(f"modulus {coeffs} is not monic irreducible over GF({p})")
            return GF(p, m, coeffs)
        return field

    # --- scalar polynomial arithmetic (slow path, used to build tables) ------

    def _mul_scalar(self, a: int, b: int) -> int:
        if self.m == 1:
            return a * b % self.p
        prod = [0] * (2 * self.m - 1)
        da, db = _digits(a, self.p, self.m), _digits(b, self.p, self.m)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] = (prod[i + j] + x * y) % self.p
        return _undigits(_poly_mod(prod, list(self.modulus), self.p), self.p)

    def _pow_scalar(self, a: int, e: int) -> int:
        result = 1
        while e:
            if e & 1:
                result = self._mul_scalar(result, a)
            a = self._mul_scalar(a, a)
            e >>= 1
        return result

    # --- tables ---------------------------------------------------------------

    @cached_property
    def _exp_log(self) -> tuple[np.ndarray, np.ndarray]:
        q = self.q
        order = q - 1
        if q == 2:
            g = 1
        else:
            prime_divs = list(factor_int(order))
            # x (encoded as p) is tried first: multiplying by it is cheapest
            cands = [self.p] + list(range(2, q)) if self.m > 1 else range(2, q)
            for g in cands:
                if all(self._pow_scalar(g, order // ell) != 1 for ell in prime_divs):
                    break
        exp = np.zeros(4 * q, dtype=np.int64)
        log = np.zeros(q, dtype=np.int64)
        x = 1
        for i in range(order):
            exp[i] = x
            log[x] = i
            x = self._mul_scalar(x, g)
        exp[order : 2 * order] = exp[:order]
        # log(0) points into the zero tail so that any sum involving it yields 0
        log[0] = 2 * order
        return exp, log

    @cached_property
    def _digit_powers(self) -> np.ndarray:
        return self.p ** np.arange(self.m, dtype=np.int64)

    @cached_property
    def _neg_table(self) -> np.ndarray:
        e = np.arange(self.q, dtype=np.int64)
        digs = (e[:, None] // self._digit_powers) % self.p
        return ((-digs) % self.p) @ self._digit_powers

    @cached_property
    def _add_table(self) -> np.ndarray:
        e = np.arange(self.q, dtype=np.int64)
        digs = (e[:, None] // self._digit_powers) % self.p
        s = (digs[:, None, :] + digs[None, :, :]) % self.p
        return s @ self._digit_powers

    # --- vectorised arithmetic ------------------------------------------------

    def add(self, a, b):
        if self.m == 1:
            return (np.asarray(a) + b) % self.p if _is_array(a, b) else (a + b) % self.p
        if self.p == 2:
            return np.bitwise_xor(a, b) if _is_array(a, b) else a ^ b
        if self.q <= _ADD_TABLE_LIMIT:
            return self._add_table[a, b] if _is_array(a, b) else int(self._add_table[a, b])
        a, b = np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)
        out = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
        for pw in self._digit_powers:
            out += ((a // pw + b // pw) % self.p) * pw
        return out if out.ndim else int(out)

    def neg(self, a):
        if self.p == 2:
            return a
        if self.m == 1:
            return (-np.asarray(a)) % self.p if _is_array(a) else (-a) % self.p
        return self._neg_table[a] if _is_array(a) else int(self._neg_table[a])

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if self.m == 1:
            return (np.asarray(a) * b) % self.p if _is_array(a, b) else (a * b) % self.p
        exp, log = self._exp_log
        if _is_array(a, b):
            return exp[log[a] + log[b]]
        return int(exp[log[a] + log[b]])

    def inv(self, a):
        if _is_array(a):
            a = np.asarray(a)
            if np.any(a == 0):
                raise ZeroDivisionError("inverse of zero in " + repr(self))
            exp, log = self._exp_log
            return exp[(self.q - 1 - log[a]) % (self.q - 1)]
        if a == 0:
            raise ZeroDivisionError("inverse of zero in " + repr(self))
        if self.m == 1:
            return pow(int(a), -1, self.p)
        exp, log = self._exp_log
        return int(exp[(self.q - 1 - log[a]) % (self.q - 1)])

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            return 1 if e == 0 else 0
        exp, log = self._exp_log
        return int(exp[(int(log[a]) * e) % (self.q - 1)])

    def dot(self, a, b) -> int:
        """Inner product of two vectors."""
        return int(self.sum(self.mul(np.asarray(a), np.asarray(b)), axis=-1))

    def sum(self, a, axis=0):
        """Field sum of an array along ``axis``."""
        a = np.moveaxis(np.asarray(a, dtype=np.int64), axis, 0)
        if a.shape[0] == 0:
            return np.zeros(a.shape[1:], dtype=np.int64)
        if self.m == 1:
            return a.sum(axis=0) % self.p
        if self.p == 2:
            return np.bitwise_xor.reduce(a, axis=0)
        out = a[0]
        for row in a[1:]:
            out = self.add(out, row)
        return out

    def to_digits(self, a) -> np.ndarray:
        """Base-p digit expansion; appends a trailing axis of length m."""
        a = np.asarray(a, dtype=np.int64)
        return (a[..., None] // self._digit_powers) % self.p

    def from_digits(self, digits) -> np.ndarray:
        return np.asarray(digits, dtype=np.int64) @ self._digit_powers


def _is_array(*xs) -> bool:
    return any(isinstance(x, np.ndarray) for x in xs)


_CACHE: dict[int, GF] = {}


def make_field(q: int) -> GF:
    """Return GF(q) with the smallest monic irreducible modulus.

    Raises ValueError when q is not a prime power or exceeds 2**16.
    """
    q = int(q)
    if q in _CACHE:
        return _CACHE[q]
    p, m = prime_power(q)
    if q > MAX_ORDER:
        raise ValueError(f"field order {q} exceeds the supported maximum {MAX_ORDER}")
    modulus = (0, 1) if m == 1 else smallest_irreducible(p, m)
    field = GF(p, m, modulus)
    _CACHE[q] = field
    return field


def add(f: GF, a: int, b: int) -> int:
    _check(f, a, b)
    return f.add(a, b)


def mul(f: GF, a: int, b: int) -> int:
    _check(f, a, b)
    return f.mul(a, b)


def inv(f: GF, a: int) -> int:
    _check(f, a)
    return f.inv(a)


def _check(f: GF, *xs: int) -> None:
    for x in xs:
        if x not in f:
            raise ValueError(f"{x} is not an element of {f!r}")
