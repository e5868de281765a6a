"""Charge combinatorics of twisted quasi-particle monomials.

A monomial assigns to each color i a finite multiset of particles
(charge n, energy label m).  Particles of one color are kept in the order
p = 1, 2, ... with charges weakly decreasing, so position p = 1 always holds
the largest charge; all positional sums below follow that indexing.

A monomial is *admissible* at level k when every charge is at most k and the
energy labels satisfy the per-family cap

    m_{p,i} <= -w_i n_{p,i} + c_i sum_q min(n_{q,i-1}, n_{p,i})
                            - 2 w_i sum_{p'<p} min(n_{p,i}, n_{p',i})

together with the difference condition m_{p+1,i} <= m_{p,i} - 2 w_i n_{p,i}
whenever charges at p and p+1 coincide.  Here w_i is the color's quadratic
weight (1 Fixed, 1/2 Moved with v = 2, 1/3 Moved with v = 3) and c_i is the
cross coupling on the chain edge (i-1, i):

    A family   : 1/2 on edges among colors 1..l-1, 1 on the edge (l-1, l)
    D family   : 1 on every edge
    E6         : 1/2 on (1,2), 1 on (2,3) and (3,4)
    D4 (v = 3) : 1 on (1,2)

Admissible energy labels live in (1/d_i)Z with d_i the color's denominator;
an off-lattice energy is an input error, not a failed membership test.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .lattice import AlgebraTag, color_class


class OffLatticeError(ValueError):
    """Energy label not in the color's (1/d)Z lattice."""


Partition = tuple[int, ...]


def conjugate(parts: Partition) -> Partition:
    """Conjugate partition; parts must be weakly ordered positive ints."""
    parts = tuple(sorted(parts, reverse=True))
    if any(p <= 0 for p in parts):
        raise ValueError("parts must be positive")
    if not parts:
        return ()
    return tuple(sum(1 for p in parts if p >= s) for s in range(1, parts[0] + 1))


def min_sum_self(parts: Partition) -> int:
    """sum_p (n_p + 2 sum_{p'<p} min(n_p, n_p')); equals sum_s (conjugate_s)^2."""
    parts = tuple(parts)
    total = 0
    for p, np in enumerate(parts):
        total += np + 2 * sum(min(np, parts[q]) for q in range(p))
    return total


def min_sum_cross(parts_a: Partition, parts_b: Partition) -> int:
    """sum_{p,q} min(a_p, b_q); equals sum_s a*_s b*_s over conjugates."""
    return sum(min(a, b) for a in parts_a for b in parts_b)


def self_weight(tag: AlgebraTag, i: int) -> Fraction:
    """Quadratic weight w_i of color i."""
    cc = color_class(tag, i)
    return Fraction(1, cc.denominator) if cc.moved else Fraction(1)


def cross_coupling(tag: AlgebraTag, i: int) -> Fraction:
    """Coupling c_i on the chain edge (i-1, i), for 2 <= i <= num_colors.

    This table is the single source of truth shared by the admissibility
    bounds and the fermionic quadratic form.
    """
    if not 2 <= i <= tag.num_colors:
        raise ValueError(f"no chain edge ending at color {i}")
    if tag.family == "A2lm1_2":
        return Fraction(1) if i == tag.l else Fraction(1, 2)
    if tag.family == "E6_2":
        return Fraction(1, 2) if i == 2 else Fraction(1)
    return Fraction(1)  # D family and D4 (v = 3): every edge couples with 1


def gap(tag: AlgebraTag, i: int) -> Fraction:
    """Difference-condition step 2 w_i between equal-charge neighbours."""
    return 2 * self_weight(tag, i)


def energy_step(tag: AlgebraTag, i: int) -> Fraction:
    return color_class(tag, i).unit


ChargeType = tuple[Partition, ...]  # one weakly decreasing tuple per color


def dual_charge_type(shape: ChargeType, k: int) -> tuple[tuple[int, ...], ...]:
    """Conjugate of each color's partition, zero-padded to k rows."""
    out = []
    for parts in shape:
        if parts and parts[0] > k:
            raise ValueError(f"charge {parts[0]} exceeds level {k}")
        conj = conjugate(parts)
        out.append(conj + (0,) * (k - len(conj)))
    return tuple(out)


def shape_from_dual(dual: tuple[tuple[int, ...], ...]) -> ChargeType:
    return tuple(conjugate(tuple(r for r in rows if r)) for rows in dual)


def color_type(shape: ChargeType) -> tuple[int, ...]:
    return tuple(sum(parts) for parts in shape)


@lru_cache(maxsize=None)
def shape_bounds(tag: AlgebraTag, shape: ChargeType) -> tuple[tuple[Fraction, ...], ...]:
    """Energy caps for every position of a charge-type, independent of level."""
    out = []
    for idx, parts in enumerate(shape):
        i = idx + 1
        w = self_weight(tag, i)
        prev = shape[idx - 1] if idx > 0 else ()
        c = cross_coupling(tag, i) if idx > 0 else Fraction(0)
        bounds = []
        for p, np in enumerate(parts):
            b = -w * np
            b -= 2 * w * sum(min(np, parts[q]) for q in range(p))
            if prev:
                b += c * sum(min(nq, np) for nq in prev)
            bounds.append(b)
        out.append(tuple(bounds))
    return tuple(out)


def energy_bound(tag: AlgebraTag, k: int, shape: ChargeType, i: int, p: int) -> Fraction:
    """Upper bound for the energy label at color i, position p (both 1-based)."""
    shape = tuple(tuple(parts) for parts in shape)
    if len(shape) != tag.num_colors:
        raise ValueError("charge-type has wrong number of colors")
    for parts in shape:
        if any(n <= 0 for n in parts) or list(parts) != sorted(parts, reverse=True):
            raise ValueError("each color must be a weakly decreasing positive tuple")
        if parts and parts[0] > k:
            raise ValueError(f"charge {parts[0]} exceeds level {k}")
    if not 1 <= i <= tag.num_colors:
        raise ValueError(f"color {i} out of range")
    if not 1 <= p <= len(shape[i - 1]):
        raise ValueError(f"position {p} out of range for color {i}")
    return shape_bounds(tag, shape)[i - 1][p - 1]


@dataclass(frozen=True)
class QPMonomial:
    """Per-color particle lists ((charge, energy), ...), canonically ordered."""

    colors: tuple[tuple[tuple[int, Fraction], ...], ...]

    @staticmethod
    def make(tag: AlgebraTag, per_color) -> "QPMonomial":
        per_color = list(per_color)
        if len(per_color) != tag.num_colors:
            raise ValueError(f"expected {tag.num_colors} colors, got {len(per_color)}")
        cols = []
        for particles in per_color:
            norm = []
            for charge, energy in particles:
                if int(charge) != charge or charge < 1:
                    raise ValueError(f"charge {charge} must be a positive integer")
                norm.append((int(charge), Fraction(energy)))
            norm.sort(key=lambda cn: (-cn[0], -cn[1]))
            cols.append(tuple(norm))
        return QPMonomial(tuple(cols))

    @property
    def num_colors(self) -> int:
        return len(self.colors)

    def shape(self) -> ChargeType:
        return tuple(tuple(n for n, _ in parts) for parts in self.colors)

    def color_type(self) -> tuple[int, ...]:
        return tuple(sum(n for n, _ in parts) for parts in self.colors)

    def total_exponent(self) -> Fraction:
        """q-degree of the monomial: minus the sum of all energy labels."""
        return -sum((m for parts in self.colors for _, m in parts), Fraction(0))

    def is_empty(self) -> bool:
        return all(not parts for parts in self.colors)

    def __str__(self) -> str:
        cols = []
        for i, parts in enumerate(self.colors, start=1):
            if parts:
                cols.append(f"c{i}:" + ",".join(f"({n},{m})" for n, m in parts))
        return "{" + " ".join(cols) + "}" if cols else "{1}"


def is_admissible(tag: AlgebraTag, k: int, mono: QPMonomial) -> bool:
    """Level-k admissibility: charge cap, energy caps, difference conditions.

    Raises OffLatticeError when an energy is not in its color's (1/d)Z; that
    is malformed input, not a failed test.
    """
    if mono.num_colors != tag.num_colors:
        raise ValueError("monomial has wrong number of colors")
    for i, parts in enumerate(mono.colors, start=1):
        d = color_class(tag, i).denominator
        for _, m in parts:
            if (m * d).denominator != 1:
                raise OffLatticeError(f"energy {m} of color {i} not in (1/{d})Z")
    shape = mono.shape()
    for parts in shape:
        if parts and parts[0] > k:
            return False
    bounds = shape_bounds(tag, shape)
    for i, parts in enumerate(mono.colors, start=1):
        g = gap(tag, i)
        for p, (n, m) in enumerate(parts):
            if m > bounds[i - 1][p]:
                return False
            if p + 1 < len(parts) and parts[p + 1][0] == n:
                if parts[p + 1][1] > m - g * n:
                    return False
    return True


def compare_monomials(m1: QPMonomial, m2: QPMonomial) -> int:
    """Total preorder on monomials: -1, 0 or +1.

    Charge-types first, scanning colors from 1 and positions from p = 1; at
    the first difference the smaller charge is smaller, and a monomial whose
    color list strictly extends the other's is the smaller one.  For equal
    charge-types, energies are compared by the same scan.
    """
    if m1.num_colors != m2.num_colors:
        raise ValueError("monomials have different color counts")
    for a, b in zip(m1.colors, m2.colors):
        for u in range(max(len(a), len(b))):
            if u >= len(b):
                return -1  # m2 exhausted: m1 carries extra particles, m1 < m2
            if u >= len(a):
                return 1
            if a[u][0] != b[u][0]:
                return -1 if a[u][0] < b[u][0] else 1
    for a, b in zip(m1.colors, m2.colors):
        for (_, ma), (_, mb) in zip(a, b):
            if ma != mb:
                return -1 if ma < mb else 1
    return 0


def shift_energies(tag: AlgebraTag, mono: QPMonomial, i: int) -> QPMonomial:
    """Add one lattice unit (1 Fixed, 1/v Moved) to every color-i energy."""
    if not 1 <= i <= mono.num_colors:
        raise ValueError(f"color {i} out of range")
    step = energy_step(tag, i)
    cols = list(mono.colors)
    cols[i - 1] = tuple((n, m + step) for n, m in cols[i - 1])
    return QPMonomial(tuple(cols))


def removal_shifts(tag: AlgebraTag) -> tuple[Fraction, Fraction]:
    """Per-overlap energy shifts (on color 1, on color 2) used by removal.

    The color-1 shift is 2 w_1 and the color-2 shift is the (1,2) coupling;
    both are the projected pairings of the respective orbit averages with the
    color-1 representative.
    """
    a = 2 * self_weight(tag, 1)
    b = cross_coupling(tag, 2) if tag.num_colors >= 2 else Fraction(0)
    return a, b


def remove_leading_particle(tag: AlgebraTag, k: int, mono: QPMonomial, s: int) -> QPMonomial:
    """Remove the color-1 particle of maximal charge s sitting at energy -s/d_1.

    Every remaining color-1 particle of charge n moves up by 2 w_1 min(n, s)
    and every color-2 particle of charge n moves down by c_{1,2} min(n, s);
    other colors are untouched.  The monomial must be admissible with its
    leading color-1 particle exactly at the removal energy.
    """
    if not is_admissible(tag, k, mono):
        raise ValueError("monomial is not admissible")
    lead = mono.colors[0]
    if not lead:
        raise ValueError("color 1 has no particle to remove")
    n1, m1 = lead[0]
    d1 = color_class(tag, 1).denominator
    if n1 != s:
        raise ValueError(f"leading color-1 charge is {n1}, expected {s}")
    if m1 != Fraction(-s, d1):
        raise ValueError(f"leading energy {m1} != removal energy {Fraction(-s, d1)}")
    a, b = removal_shifts(tag)
    cols = [tuple((n, m + a * min(n, s)) for n, m in lead[1:])]
    if mono.num_colors >= 2:
        cols.append(tuple((n, m - b * min(n, s)) for n, m in mono.colors[1]))
        cols.extend(mono.colors[2:])
    return QPMonomial(tuple(cols))
