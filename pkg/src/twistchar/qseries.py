"""Truncated formal series in fractional powers of q, multigraded by
color-exponent vectors, with exact integer coefficients.

A GradedSeries fixes a global exponent denominator `den` (the twist order of
the run), a truncation bound, and a number of colors.  Terms live in a map

    (q_num, colors) -> coeff            q-exponent = q_num / den

with q_num a non-negative integer <= trunc_num, colors a length-`num_colors`
tuple of non-negative ints, and coeff a nonzero Python int (arbitrary
precision).  Series are immutable; arithmetic returns new values, so partial
results built by independent workers can be merged in any order with +.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Mapping


def _scaled_exponent(x: Fraction, den: int, what: str) -> int:
    num = Fraction(x) * den
    if num.denominator != 1:
        raise ValueError(f"{what} {x} is not a multiple of 1/{den}")
    return int(num)


@dataclass(frozen=True)
class GradedSeries:
    den: int
    num_colors: int
    trunc_num: int  # truncation bound, scaled: keep q_num <= trunc_num
    terms: Mapping[tuple[int, tuple[int, ...]], int] = field(default_factory=dict)

    # -- constructors ---------------------------------------------------

    @staticmethod
    def zero(den: int, num_colors: int, trunc: Fraction) -> "GradedSeries":
        return GradedSeries(den, num_colors, _scaled_exponent(trunc, den, "truncation"))

    @staticmethod
    def one(den: int, num_colors: int, trunc: Fraction) -> "GradedSeries":
        s = GradedSeries.zero(den, num_colors, trunc)
        return s + GradedSeries.term(den, num_colors, trunc, Fraction(0), (0,) * num_colors, 1)

    @staticmethod
    def term(den: int, num_colors: int, trunc: Fraction, q: Fraction,
             colors: tuple[int, ...], coeff: int) -> "GradedSeries":
        """Single-term series coeff * q^q * y^colors (dropped if beyond truncation)."""
        tn = _scaled_exponent(trunc, den, "truncation")
        qn = _scaled_exponent(q, den, "exponent")
        if qn < 0:
            raise ValueError(f"negative exponent {q}")
        if len(colors) != num_colors:
            raise ValueError("color vector length mismatch")
        terms = {}
        if coeff != 0 and qn <= tn:
            terms[(qn, tuple(colors))] = coeff
        return GradedSeries(den, num_colors, tn, terms)

    @staticmethod
    def from_scaled(den: int, num_colors: int, trunc_num: int,
                    raw: dict[tuple[int, tuple[int, ...]], int]) -> "GradedSeries":
        """Wrap a raw scaled-term dict, dropping zeros and out-of-range keys."""
        terms = {k: c for k, c in raw.items() if c != 0 and 0 <= k[0] <= trunc_num}
        return GradedSeries(den, num_colors, trunc_num, terms)

    # -- arithmetic -----------------------------------------------------

    def _compatible(self, other: "GradedSeries") -> None:
        if self.den != other.den:
            raise ValueError(f"denominator mismatch: {self.den} vs {other.den}")
        if self.num_colors != other.num_colors:
            raise ValueError("color count mismatch")

    def __add__(self, other: "GradedSeries") -> "GradedSeries":
        self._compatible(other)
        tn = min(self.trunc_num, other.trunc_num)
        out = {k: c for k, c in self.terms.items() if k[0] <= tn}
        for k, c in other.terms.items():
            if k[0] > tn:
                continue
            new = out.get(k, 0) + c
            if new:
                out[k] = new
            else:
                out.pop(k, None)
        return GradedSeries(self.den, self.num_colors, tn, out)

    def __mul__(self, other: "GradedSeries") -> "GradedSeries":
        self._compatible(other)
        tn = min(self.trunc_num, other.trunc_num)
        out: dict[tuple[int, tuple[int, ...]], int] = {}
        for (q1, c1), a in self.terms.items():
            if q1 > tn:
                continue
            for (q2, c2), b in other.terms.items():
                q = q1 + q2
                if q > tn:
                    continue
                key = (q, tuple(x + y for x, y in zip(c1, c2)))
                new = out.get(key, 0) + a * b
                if new:
                    out[key] = new
                else:
                    del out[key]
        return GradedSeries(self.den, self.num_colors, tn, out)

    def __eq__(self, other) -> bool:
        if not isinstance(other, GradedSeries):
            return NotImplemented
        return (self.den == other.den and self.num_colors == other.num_colors
                and dict(self.terms) == dict(other.terms))

    # -- access ---------------------------------------------------------

    @property
    def trunc(self) -> Fraction:
        return Fraction(self.trunc_num, self.den)

    def coefficient(self, q: Fraction, colors: tuple[int, ...]) -> int:
        return self.terms.get((_scaled_exponent(q, self.den, "exponent"), tuple(colors)), 0)

    def items(self) -> Iterator[tuple[Fraction, tuple[int, ...], int]]:
        """Terms in canonical order: (q-exponent, colors) lexicographic."""
        for (qn, colors) in sorted(self.terms):
            yield Fraction(qn, self.den), colors, self.terms[(qn, colors)]

    def color_slice(self, colors: tuple[int, ...]) -> dict[Fraction, int]:
        """The q-series multiplying y^colors."""
        colors = tuple(colors)
        return {Fraction(qn, self.den): c
                for (qn, cv), c in sorted(self.terms.items()) if cv == colors}

    def specialize(self) -> dict[Fraction, int]:
        """Collapse the color grading (all y_i -> 1)."""
        out: dict[Fraction, int] = {}
        for (qn, _), c in self.terms.items():
            q = Fraction(qn, self.den)
            out[q] = out.get(q, 0) + c
        return {q: c for q, c in sorted(out.items()) if c != 0}

    def __str__(self) -> str:
        bits = []
        for q, colors, coeff in self.items():
            ys = "".join(f"*y{i + 1}^{e}" for i, e in enumerate(colors) if e)
            bits.append(f"{coeff}*q^({q}){ys}")
        return " + ".join(bits) if bits else "0"


def partition_counts(max_n: int, max_part: int) -> list[int]:
    """p(n, parts <= max_part) for n = 0..max_n, by the standard recurrence."""
    dp = [1] + [0] * max_n
    for part in range(1, max_part + 1):
        for n in range(part, max_n + 1):
            dp[n] += dp[n - part]
    return dp


def pochhammer_inverse(u: Fraction, r: int, trunc: Fraction, den: int,
                       num_colors: int) -> GradedSeries:
    """Truncated expansion of 1 / prod_{j=1}^{r} (1 - q^{j u}).

    The coefficient of q^{n u} is the number of partitions of n into parts
    <= r, which is how the expansion is computed.
    """
    if r < 0:
        raise ValueError("negative pochhammer length")
    u = Fraction(u)
    tn = _scaled_exponent(trunc, den, "truncation")
    un = _scaled_exponent(u, den, "pochhammer unit")
    if r == 0 or un == 0:
        if r != 0 and un == 0:
            raise ValueError("pochhammer unit must be positive")
        return GradedSeries.one(den, num_colors, trunc)
    counts = partition_counts(tn // un, r)
    colors0 = (0,) * num_colors
    terms = {(n * un, colors0): c for n, c in enumerate(counts) if c}
    return GradedSeries(den, num_colors, tn, terms)


def pochhammer(u: Fraction, r: int, trunc: Fraction, den: int,
               num_colors: int) -> GradedSeries:
    """prod_{j=1}^{r} (1 - q^{j u}), truncated; inverse partner of the above."""
    u = Fraction(u)
    out = GradedSeries.one(den, num_colors, trunc)
    for j in range(1, r + 1):
        factor = GradedSeries.one(den, num_colors, trunc) + GradedSeries.term(
            den, num_colors, trunc, j * u, (0,) * num_colors, -1)
        out = out * factor
    return out
