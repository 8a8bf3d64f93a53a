"""Closed-form LRC bounds, evaluated exactly with integers and Fractions."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction


class NotApplicable(ValueError):
    """The requested bound says nothing for these parameters."""


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def h_value(d: int, r: int) -> int:
    """Extra redundancy beyond the local parities: d - 2 - floor((d-2)/(r+1))."""
    return d - 2 - (d - 2) // (r + 1)


def singleton_type_bound(n: int, k: int, r: int) -> int:
    if k < 1 or r < 1:
        raise ValueError("need k >= 1 and r >= 1")
    return n - k - _ceil_div(k, r) + 2


def _require_divisible(n: int, r: int) -> None:
    if n % (r + 1):
        raise ValueError(f"r+1 = {r + 1} does not divide n = {n}")


def optimal_redundancy(n: int, d: int, r: int) -> int | None:
    """n - k of an optimal [n, k, d] LRC with (r+1) | n, or None when not attainable.

    The formula n/(r+1) + d - 2 - floor((d-2)/(r+1)) is necessary; it is also
    sufficient unless d - 2 = r mod (r+1), where the value is cross-checked
    against the Singleton-type bound and dropped if equality fails.
    """
    _require_divisible(n, r)
    red = n // (r + 1) + h_value(d, r)
    if (d - 2) % (r + 1) == r:
        k = n - red
        if k < 1 or singleton_type_bound(n, k, r) != d:
            return None
    return red


def disjoint_threshold(d: int, r: int) -> int:
    return h_value(d, r) * (3 * r + 2) + (d - 2) // (r + 1) + 1


def disjoint_condition(n: int, d: int, r: int) -> bool:
    _require_divisible(n, r)
    return n // (r + 1) >= disjoint_threshold(d, r)


def _iroot_ceil(x: int, k: int) -> int:
    """Smallest integer y with y**k >= x."""
    if x.bit_length() < 1000:
        y = int(round(x ** (1.0 / k)))
    else:
        y = 1 << (x.bit_length() // k + 1)
    while y**k < x:
        y += 1
    while y > 0 and (y - 1) ** k >= x:
        y -= 1
    return y


def _rational_power(q: int, num: int, den: int) -> tuple[int, bool]:
    """q**(num/den) rounded up, and whether the value is exact."""
    g = math.gcd(num, den)
    num, den = num // g, den // g
    x = q**num
    if den == 1:
        return x, True
    y = _iroot_ceil(x, den)
    return y, y**den == x


def length_upper_bound(q: int, d: int, r: int) -> Fraction:
    """Upper bound on n for an optimal LRC with d >= 5 and disjoint recovery sets.

    Write d = 4*d1 + a with 1 <= a <= 4.  For a in {1, 2}
        n <= (r+1)/r * (d-a)/(4(q-1)) * q**(4(d-2)/(d-a))
    and for a in {3, 4}
        n <= (r+1)/r * ((d-a)/(4(q-1)) * q**(4(d-3)/(d-a)) + 1).
    Non-integral powers are rounded up, so the bound never under-reports.
    """
    if d <= 4:
        raise NotApplicable("no length bound for d <= 4: such optimal LRCs have unbounded length")
    if q < 2 or r < 1:
        raise ValueError("need q >= 2 and r >= 1")
    a = (d - 1) % 4 + 1
    coef = Fraction(d - a, 4 * (q - 1))
    if a in (1, 2):
        power, _ = _rational_power(q, 4 * (d - 2), d - a)
        inner = coef * power
    else:
        power, _ = _rational_power(q, 4 * (d - 3), d - a)
        inner = coef * power + 1
    return Fraction(r + 1, r) * inner


def length_bound_is_exact(q: int, d: int) -> bool:
    a = (d - 1) % 4 + 1
    num = 4 * (d - 2) if a in (1, 2) else 4 * (d - 3)
    return _rational_power(q, num, d - a)[1]


def hamming_bound_holds(n: int, k: int, d: int, q: int) -> bool:
    t = (d - 1) // 2
    ball = sum(math.comb(n, i) * (q - 1) ** i for i in range(t + 1))
    return q**k * ball <= q**n


def distance_upper_bound(q: int, r: int) -> Fraction:
    if r < 1:
        raise ValueError("need r >= 1")
    return Fraction(q * (r * r + 2 * r + 3), r)


def nondiv_redundancy_bound(n: int, d: int, r: int) -> int:
    return _ceil_div(n, r + 1) + h_value(d, r)


def _fmt(x) -> str:
    if isinstance(x, Fraction):
        if x.denominator == 1:
            return str(x.numerator)
        return f"{x.numerator}/{x.denominator} ≈ {float(x):.2f}"
    return str(x)


@dataclass
class BoundReport:
    q: int
    d: int
    r: int
    n: int | None = None
    k: int | None = None
    singleton_rhs: int | None = None
    optimal_redundancy: int | None = None
    redundancy_identity_holds: bool | None = None
    disjoint_condition_holds: bool | None = None
    length_bound: Fraction | None = None
    distance_bound: Fraction = Fraction(0)
    verdicts: dict[str, bool | None] = field(default_factory=dict)
    lines: list[tuple[str, str, str]] = field(default_factory=list)

    @property
    def all_pass(self) -> bool:
        """No bound is violated; applicability conditions are not counted."""
        return all(v is not False for k, v in self.verdicts.items() if k != "disjoint_condition")

    def to_text(self) -> str:
        return "".join(f"{name} = {value} / {verdict}\n" for name, value, verdict in self.lines)


def _verdict(ok: bool | None, condition: bool = False) -> str:
    if condition:
        return {True: "holds", False: "does not hold", None: "n/a"}[ok]
    return {True: "pass", False: "FAIL", None: "n/a"}[ok]


def bound_report(q: int, d: int, r: int, n: int | None = None, k: int | None = None) -> BoundReport:
    """Evaluate every bound that applies to (q, d, r) and, if given, n and k."""
    rep = BoundReport(q, d, r, n, k)
    lines = rep.lines

    def add(name: str, value, ok: bool | None, condition: bool = False) -> None:
        rep.verdicts[name] = ok
        lines.append((name, _fmt(value), _verdict(ok, condition)))

    rep.distance_bound = distance_upper_bound(q, r)
    add("distance_upper_bound", rep.distance_bound, d <= rep.distance_bound)
    add("h", h_value(d, r), None)

    divisible = n is not None and n % (r + 1) == 0
    if n is not None and k is not None and k >= 1:
        rep.singleton_rhs = singleton_type_bound(n, k, r)
        add("singleton_type_bound", rep.singleton_rhs, d <= rep.singleton_rhs)
        add("nondiv_redundancy_bound", nondiv_redundancy_bound(n, d, r), None)
        add("hamming_bound", "q^k * V(n, floor((d-1)/2))", hamming_bound_holds(n, k, d, q))
    elif n is not None:
        add("nondiv_redundancy_bound", nondiv_redundancy_bound(n, d, r), None)

    if divisible:
        red = optimal_redundancy(n, d, r)
        rep.optimal_redundancy = red
        if red is None:
            add("optimal_redundancy", "not attainable", None)
        else:
            ok = None if k is None else (n - k == red)
            rep.redundancy_identity_holds = ok
            add("optimal_redundancy", red, ok)
        rep.disjoint_condition_holds = disjoint_condition(n, d, r)
        add("disjoint_condition", f"n/(r+1) >= {disjoint_threshold(d, r)}", rep.disjoint_condition_holds, True)

    if d <= 4:
        lines.append(("length_upper_bound", "not applicable (unbounded per d<=4)", "n/a"))
    else:
        rep.length_bound = length_upper_bound(q, d, r)
        ok = None
        if divisible and rep.disjoint_condition_holds:
            ok = n <= rep.length_bound
        add("length_upper_bound", rep.length_bound, ok)
    return rep
