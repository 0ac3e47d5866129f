"""Exact truncated power series and the generating functions of the toolkit.

Everything is computed with :class:`fractions.Fraction`; no floating point.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb, factorial


def binom(n: int, k: int) -> int:
    """Binomial coefficient, zero outside ``0 <= k <= n``."""
    if n < 0 or k < 0 or k > n:
        return 0
    return comb(n, k)


class UniSeries:
    """Power series in ``t`` truncated after ``t**order``."""

    __slots__ = ("order", "coeffs")

    def __init__(self, coeffs, order: int | None = None):
        coeffs = [Fraction(c) for c in coeffs]
        if order is None:
            order = len(coeffs) - 1
        coeffs = (coeffs + [Fraction(0)] * (order + 1))[: order + 1]
        self.order = order
        self.coeffs = coeffs

    @classmethod
    def zero(cls, order):
        return cls([], order)

    @classmethod
    def t(cls, order):
        return cls([0, 1], order)

    def __getitem__(self, n):
        return self.coeffs[n] if 0 <= n <= self.order else Fraction(0)

    def _coerce(self, other):
        if isinstance(other, UniSeries):
            return other
        return UniSeries([other], self.order)

    def __add__(self, other):
        other = self._coerce(other)
        n = min(self.order, other.order)
        return UniSeries([self[i] + other[i] for i in range(n + 1)], n)

    __radd__ = __add__

    def __neg__(self):
        return UniSeries([-c for c in self.coeffs], self.order)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, UniSeries):
            c = Fraction(other)
            return UniSeries([c * x for x in self.coeffs], self.order)
        n = min(self.order, other.order)
        out = [Fraction(0)] * (n + 1)
        a, b = self.coeffs, other.coeffs
        for i in range(n + 1):
            if a[i]:
                ai = a[i]
                for j in range(n + 1 - i):
                    out[i + j] += ai * b[j]
        return UniSeries(out, n)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        result = UniSeries([1], self.order)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, UniSeries):
            other = UniSeries([other], self.order)
        n = min(self.order, other.order)
        return all(self[i] == other[i] for i in range(n + 1))

    def __repr__(self):
        return f"UniSeries({[str(c) for c in self.coeffs]})"

    def valuation(self) -> int | None:
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return None

    def compose(self, inner: "UniSeries") -> "UniSeries":
        """``self(inner(t))``; ``inner`` must have no constant term."""
        if inner[0] != 0:
            raise ValueError("inner series must have zero constant term")
        n = min(self.order, inner.order)
        result = UniSeries.zero(n)
        # Horner scheme
        for c in reversed(self.coeffs[: n + 1]):
            result = result * inner + c
        return result

    def reciprocal(self) -> "UniSeries":
        if self[0] == 0:
            raise ZeroDivisionError("series has zero constant term")
        out = [Fraction(0)] * (self.order + 1)
        out[0] = 1 / self[0]
        for n in range(1, self.order + 1):
            s = sum(self[k] * out[n - k] for k in range(1, n + 1))
            out[n] = -s / self[0]
        return UniSeries(out, self.order)

    def exp(self) -> "UniSeries":
        if self[0] != 0:
            raise ValueError("exp needs zero constant term")
        result = UniSeries([1], self.order)
        term = UniSeries([1], self.order)
        for k in range(1, self.order + 1):
            term = term * self * Fraction(1, k)
            result = result + term
        return result

    def shift_down(self, k: int = 1) -> "UniSeries":
        """Exact division by ``t**k``; fails if a low coefficient is non-zero."""
        if any(self[i] for i in range(k)):
            raise ArithmeticError(f"series is not divisible by t^{k}")
        return UniSeries(self.coeffs[k:], self.order - k)


class TriSeries:
    """Series in ``t`` whose coefficients are polynomials in ``x`` and ``y``.

    ``terms[n]`` maps ``(i, j)`` to the coefficient of ``x**i y**j t**n``.
    """

    __slots__ = ("order", "terms")

    def __init__(self, terms, order: int):
        self.order = order
        self.terms = []
        for n in range(order + 1):
            d = dict(terms[n]) if n < len(terms) else {}
            self.terms.append({k: Fraction(v) for k, v in d.items() if v})

    @classmethod
    def constant(cls, c, order):
        return cls([{(0, 0): c}], order)

    def coeff(self, n: int, i: int, j: int) -> Fraction:
        return self.terms[n].get((i, j), Fraction(0))

    def __add__(self, other):
        if not isinstance(other, TriSeries):
            other = TriSeries.constant(other, self.order)
        n = min(self.order, other.order)
        out = []
        for k in range(n + 1):
            d = dict(self.terms[k])
            for key, v in other.terms[k].items():
                d[key] = d.get(key, 0) + v
            out.append(d)
        return TriSeries(out, n)

    __radd__ = __add__

    def __neg__(self):
        return TriSeries([{k: -v for k, v in d.items()} for d in self.terms], self.order)

    def __sub__(self, other):
        if not isinstance(other, TriSeries):
            other = TriSeries.constant(other, self.order)
        return self + (-other)

    def __rsub__(self, other):
        return TriSeries.constant(other, self.order) - self

    def __mul__(self, other):
        if not isinstance(other, TriSeries):
            c = Fraction(other)
            return TriSeries([{k: c * v for k, v in d.items()} for d in self.terms], self.order)
        n = min(self.order, other.order)
        out = [dict() for _ in range(n + 1)]
        for a in range(n + 1):
            for (i1, j1), v1 in self.terms[a].items():
                for b in range(n + 1 - a):
                    target = out[a + b]
                    for (i2, j2), v2 in other.terms[b].items():
                        key = (i1 + i2, j1 + j2)
                        target[key] = target.get(key, 0) + v1 * v2
        return TriSeries(out, n)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, TriSeries):
            return NotImplemented
        n = min(self.order, other.order)
        return all(self.terms[k] == other.terms[k] for k in range(n + 1))

    def __repr__(self):
        return f"TriSeries(order={self.order}, terms={self.terms})"

    def exp(self) -> "TriSeries":
        if self.terms[0]:
            raise ValueError("exp needs zero t^0 part")
        result = TriSeries.constant(1, self.order)
        term = TriSeries.constant(1, self.order)
        for k in range(1, self.order + 1):
            term = term * self * Fraction(1, k)
            result = result + term
        return result

    def reciprocal(self) -> "TriSeries":
        """Inverse of a series whose ``t**0`` part is the constant 1."""
        if self.terms[0] != {(0, 0): 1}:
            raise ValueError("reciprocal implemented for t^0 part equal to 1 only")
        tail = self - 1
        result = TriSeries.constant(1, self.order)
        power = TriSeries.constant(1, self.order)
        for _ in range(self.order):
            power = power * (-tail)
            result = result + power
        return result

    def format_term(self, n: int) -> str:
        parts = []
        for (i, j), v in sorted(self.terms[n].items()):
            parts.append(f"{v}*x^{i}*y^{j}")
        return " + ".join(parts) if parts else "0"


# ---------------------------------------------------------------------------
# generating functions


def catalan_square_coeff(n: int) -> Fraction:
    return Fraction(binom(2 * n, n) ** 2, n + 1)


@lru_cache(maxsize=None)
def _solve_r(order: int) -> UniSeries:
    t = UniSeries.t(order)
    r = t
    # each pass fixes one more coefficient since the equation reads t = R + O(R^2)
    for _ in range(order):
        acc = UniSeries.zero(order)
        power = r * r
        for n in range(1, order):
            acc = acc + power * catalan_square_coeff(n)
            power = power * r
        r = t - acc
    return r


def solve_r(order: int) -> UniSeries:
    """R(t): the compositional inverse of the base-0 pre-Q-tree series."""
    if order < 1:
        raise ValueError("order must be at least 1")
    return _solve_r(order)


def r_defining_residual(r: UniSeries) -> UniSeries:
    """sum_n C(2n,n)^2/(n+1) R^(n+1) - t, which must vanish."""
    acc = UniSeries.zero(r.order)
    power = r
    for n in range(r.order):
        acc = acc + power * catalan_square_coeff(n)
        power = power * r
    return acc - UniSeries.t(r.order)


def pre_q_count(n: int, p: int) -> int:
    """Number of pre-Q-trees with ``n`` leaves and base-length ``p``."""
    if n < 1:
        return 0
    m = n - 1
    return binom(2 * m, m) * binom(2 * m - p, m - p) // (m + 1)


def q_hat_series(p: int, order: int) -> UniSeries:
    return UniSeries([0] + [pre_q_count(n, p) for n in range(1, order + 1)], order)


@lru_cache(maxsize=None)
def _powers_of_r(order: int) -> tuple:
    r = solve_r(order)
    powers = [UniSeries([1], order)]
    for _ in range(order):
        powers.append(powers[-1] * r)
    return tuple(powers)


def q_series(p: int, order: int) -> UniSeries:
    """Generating function of Q-trees of base-length ``p``."""
    powers = _powers_of_r(order)
    acc = UniSeries.zero(order)
    for n in range(1, order + 1):
        c = pre_q_count(n, p)
        if c:
            acc = acc + powers[n] * c
    return acc


def h_series(p: int, order: int) -> UniSeries:
    """Generating function F^(p) of base-p rigid quadrangulations (= H-trees)."""
    if p >= 0:
        return q_series(p, order)
    return q_series(p, order) - q_series(p + 1, order)


f_series = h_series


def h_series_closed_form(p: int, order: int) -> UniSeries:
    """Direct sum over powers of R, independent of the Q-tree difference."""
    powers = _powers_of_r(order)
    acc = UniSeries.zero(order)
    if p == 0:
        return UniSeries.t(order)
    for n in range(0, order):
        if p > 0:
            c = Fraction(binom(2 * n, n) * binom(2 * n - p, n - p), n + 1)
        else:
            if n < 1:
                continue
            c = Fraction(binom(2 * n, n) * binom(2 * n - p - 1, n - p), n + 1)
        if c:
            acc = acc + powers[n + 1] * c
    return acc


def z_series(order: int) -> UniSeries:
    """Unbased rigid quadrangulations rooted at a convex corner."""
    f1 = h_series(1, order + 1)
    t = UniSeries.t(order + 1)
    numerator = f1 - t * t
    if any(c.numerator % 2 for c in numerator.coeffs) or any(c.denominator != 1 for c in numerator.coeffs):
        raise ArithmeticError("F1 - t^2 has a non-even coefficient")
    return (numerator * Fraction(1, 2)).shift_down(1)


def delta_hat_series(order: int) -> TriSeries:
    """The Delta sum with t in place of R."""
    t = UniSeries.t(order)
    return _delta_from_powers(order, [t ** (n + 1) for n in range(order)])


def _delta_from_powers(order, powers):
    terms = [dict() for _ in range(order + 1)]
    for n in range(order):
        rp = powers[n]
        for i in range(n + 1):
            bi = binom(2 * n - i, n)
            for j in range(n + 1):
                c = Fraction(bi * binom(2 * n - j, n), n + 1)
                if not c:
                    continue
                for m in range(order + 1):
                    if rp[m]:
                        key = (i + 1, j + 1)
                        terms[m][key] = terms[m].get(key, 0) + c * rp[m]
    return TriSeries(terms, order)


def delta_series(order: int) -> TriSeries:
    """Delta-type quadrangulations weighted by inverse degeneracy."""
    powers = _powers_of_r(order)
    return _delta_from_powers(order, [powers[n + 1] for n in range(order)])


def b_series(order: int) -> TriSeries:
    return delta_series(order).exp() - 1


def c_series(order: int) -> TriSeries:
    return 1 - (-delta_series(order)).exp()


def multiplicative_sum(m: int) -> Fraction:
    """sum over partitions 1*n1 + 2*n2 + ... = m of prod 1/(k^nk nk!)."""
    total = Fraction(0)
    for parts in _partitions(m, m):
        counts = {}
        for k in parts:
            counts[k] = counts.get(k, 0) + 1
        w = Fraction(1)
        for k, nk in counts.items():
            w /= k ** nk * factorial(nk)
        total += w
    return total


def _partitions(m, largest):
    if m == 0:
        yield ()
        return
    for k in range(min(m, largest), 0, -1):
        for rest in _partitions(m - k, k):
            yield (k,) + rest


SERIES_NAMES = ("r", "f", "h", "z", "qhat", "q", "delta", "b", "c")


def named_series(name: str, order: int, base: int | None = None):
    """Dispatch used by the command line front end."""
    if name == "r":
        return solve_r(order)
    if name in ("f", "h"):
        return h_series(base if base is not None else 1, order)
    if name == "z":
        return z_series(order)
    if name == "qhat":
        return q_hat_series(base if base is not None else 0, order)
    if name == "q":
        return q_series(base if base is not None else 0, order)
    if name == "delta":
        return delta_series(order)
    if name == "b":
        return b_series(order)
    if name == "c":
        return c_series(order)
    raise ValueError(f"unknown series {name!r}")


def series_document(name: str, order: int, base: int | None, s) -> dict:
    if isinstance(s, UniSeries):
        coeffs = [str(c) for c in s.coeffs]
    else:
        coeffs = [
            {f"{i},{j}": str(v) for (i, j), v in sorted(d.items())} for d in s.terms
        ]
    params = {} if base is None else {"base": base}
    return {"series_name": name, "params": params, "order": order, "coefficients": coeffs}
