"""The two character engines and their comparison harness.

`fermionic_char` evaluates the closed-form sum over dual-charge-types: each
family of weakly decreasing non-negative rows r_i^(1) >= ... >= r_i^(k), one
per color, contributes

    q^{Q(R)} * prod_i prod_s 1/(q^{u_i}; q^{u_i})_{r_i^(s) - r_i^(s+1)}
             * y^{color-type}

where Q(R) = sum_s [sum_i w_i r_i^(s)^2 - sum_{i>=2} c_i r_{i-1}^(s) r_i^(s)]
is built from the same weight/coupling table as the admissibility bounds.

`enumeration_char` counts admissible quasi-particle monomials directly: one
term q^{total exponent} y^{color-type} per monomial, with energies generated
downward from their caps.  Cross couplings can push individual caps above
zero, so partial exponent sums are not monotone; all pruning therefore uses
precomputed suffix minima and never discards a completable prefix.

Agreement of the two engines, coefficient by coefficient, is the headline
identity; `compare_engines` states it executably.  A `printed` variant of the
fermionic sum is provided whose E6 (1,2) coupling is 1 instead of 1/2 -- the
other convention in circulation -- so the difference between the two tables
is measurable.  That variant's quadratic form is indefinite for E6 (it
reaches negative exponents), so it is evaluated over the well-founded support
of the derived form, and exponents that leave [0, trunc] are surfaced as
anomalies rather than silently kept.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import isqrt

from .lattice import AlgebraTag, color_class
from .pascal import RationalMatrix
from .qp import (ChargeType, conjugate, cross_coupling, min_sum_self,
                 self_weight, shape_bounds)
from .qseries import GradedSeries, partition_counts


def printed_cross_coupling(tag: AlgebraTag, i: int) -> Fraction:
    """Cross couplings as displayed in the closed-form character formulas.

    Identical to the bound-derived table except for the E6 edge (1,2), where
    the displayed coefficient is 1.
    """
    if tag.family == "E6_2" and i == 2:
        return Fraction(1)
    return cross_coupling(tag, i)


@dataclass(frozen=True)
class AlgebraSpec:
    """A folded family at a fixed positive level, with derived engine data."""

    tag: AlgebraTag
    level: int

    def __post_init__(self):
        if self.level < 1:
            raise ValueError("level must be >= 1")
        if lambda_min_bound(self.tag) <= 0:
            raise AssertionError(
                f"layer quadratic form for {self.tag.describe()} is not positive definite")

    @property
    def den(self) -> int:
        return self.tag.twist_order

    @property
    def num_colors(self) -> int:
        return self.tag.num_colors

    def units(self) -> tuple[Fraction, ...]:
        return tuple(color_class(self.tag, i).unit
                     for i in range(1, self.num_colors + 1))

    def describe(self) -> str:
        return f"{self.tag.describe()} level {self.level}"


@lru_cache(maxsize=None)
def _layer_matrix(tag: AlgebraTag, printed: bool = False) -> tuple[tuple[Fraction, ...], ...]:
    l = tag.num_colors
    cross = printed_cross_coupling if printed else cross_coupling
    m = [[Fraction(0)] * l for _ in range(l)]
    for i in range(1, l + 1):
        m[i - 1][i - 1] = self_weight(tag, i)
    for i in range(2, l + 1):
        c = cross(tag, i)
        m[i - 2][i - 1] -= Fraction(c, 2)
        m[i - 1][i - 2] -= Fraction(c, 2)
    return tuple(tuple(row) for row in m)


def layer_matrix(spec: AlgebraSpec, printed: bool = False):
    """Symmetric matrix of the per-layer quadratic form Q_layer(x) = x^T M x."""
    return _layer_matrix(spec.tag, printed)


@lru_cache(maxsize=None)
def _pd_data(tag: AlgebraTag) -> tuple[bool, Fraction]:
    """(positive definite?, exact positive lower bound on the least eigenvalue).

    Positive definiteness is decided by the signs of the leading principal
    minors.  The eigenvalue bound is det(M) / (max abs row sum)^(L-1): every
    eigenvalue is at most the max abs row sum, so the product of the other
    L-1 eigenvalues is at most that power, leaving this much for the least
    one.  (The naive Gershgorin lower bound degenerates to 0 here.)
    """
    m = _layer_matrix(tag)
    l = len(m)
    minors = []
    for t in range(1, l + 1):
        sub = RationalMatrix(tuple(tuple(row[:t]) for row in m[:t]))
        minors.append(sub.det())
    if any(d <= 0 for d in minors):
        return False, Fraction(0)
    row_bound = max(sum(abs(e) for e in row) for row in m)
    return True, minors[-1] / row_bound ** (l - 1)


def lambda_min_bound(tag: AlgebraTag) -> Fraction:
    pd, bound = _pd_data(tag)
    return bound if pd else Fraction(0)


def quadratic_form(spec: AlgebraSpec, dual, printed: bool = False) -> Fraction:
    """Q(R) for a dual-charge-type given as per-color rows (length <= k)."""
    m = _layer_matrix(spec.tag, printed)
    l = spec.num_colors
    total = Fraction(0)
    for s in range(spec.level):
        layer = [rows[s] if s < len(rows) else 0 for rows in dual]
        for i in range(l):
            total += m[i][i] * layer[i] * layer[i]
            if i + 1 < l:
                total += 2 * m[i][i + 1] * layer[i] * layer[i + 1]
    return total


# -- dual-charge-type enumeration -------------------------------------------


def _component_cap(tag: AlgebraTag, budget: Fraction) -> int:
    """Every dual-charge entry r satisfies lam_min * r^2 <= Q(R) <= budget."""
    ratio = Fraction(budget) / lambda_min_bound(tag)
    return isqrt(ratio.numerator // ratio.denominator) + 1


@lru_cache(maxsize=None)
def _scaled_layer_matrix(tag: AlgebraTag, scale: int):
    m = _layer_matrix(tag)
    out = []
    for row in m:
        srow = []
        for e in row:
            x = e * scale
            if x.denominator != 1:
                raise AssertionError("layer matrix does not clear the chosen scale")
            srow.append(int(x))
        out.append(tuple(srow))
    return tuple(out)


def _layer_candidates(spec: AlgebraSpec, budget: Fraction) -> list[tuple[tuple[int, ...], int]]:
    """All layer vectors u >= 0 with Q_layer(u) <= budget, with Q scaled by 2*den."""
    scale = 2 * spec.den
    m2 = _scaled_layer_matrix(spec.tag, scale)
    l = spec.num_colors
    cap = _component_cap(spec.tag, budget)
    limit = Fraction(budget) * scale
    if limit.denominator != 1:
        raise ValueError(f"budget {budget} not on the 1/{scale} lattice")
    limit = int(limit)
    out = []
    vecs = [()]
    while vecs:
        prefix = vecs.pop()
        if len(prefix) == l:
            q = sum(m2[i][j] * prefix[i] * prefix[j]
                    for i in range(l) for j in range(l))
            if q <= limit:
                out.append((prefix, q))
            continue
        for t in range(cap + 1):
            vecs.append(prefix + (t,))
    out.sort()
    return out


def _chains(spec: AlgebraSpec, budget: Fraction):
    """Stacks of layers u^(1) >= ... >= u^(k) componentwise with total Q within
    budget.  Yields (layers, total Q scaled by 2*den).  Q_layer >= 0 termwise,
    so prefix pruning is sound."""
    scale = 2 * spec.den
    limit = int(Fraction(budget) * scale)
    candidates = _layer_candidates(spec, budget)
    k = spec.level
    zero = (0,) * spec.num_colors

    def descend(layers, qsum):
        if len(layers) == k or layers[-1] == zero:
            yield layers + (zero,) * (k - len(layers)), qsum
            return
        top = layers[-1]
        for u, qu in candidates:
            if qsum + qu <= limit and all(a <= b for a, b in zip(u, top)):
                yield from descend(layers + (u,), qsum + qu)

    yield (zero,) * k, 0
    for u, qu in candidates:
        if u != zero:
            yield from descend((u,), qu)


def chain_to_dual(layers) -> tuple[tuple[int, ...], ...]:
    """Per-color rows (r_i^(1), ..., r_i^(k)) from a stack of layers."""
    k = len(layers)
    l = len(layers[0])
    return tuple(tuple(layers[s][i] for s in range(k)) for i in range(l))


def dual_to_shape(dual) -> ChargeType:
    return tuple(conjugate(tuple(r for r in rows if r)) for rows in dual)


# -- fermionic engine --------------------------------------------------------


def _poch_block(den: int, unit_num: int, r: int, budget_num: int) -> dict[int, int]:
    """Scaled q-series of 1/(q^u; q^u)_r up to exponent budget_num/den."""
    if budget_num < 0:
        return {}
    if r == 0:
        return {0: 1}
    counts = partition_counts(budget_num // unit_num, r)
    return {n * unit_num: c for n, c in enumerate(counts)}


def _convolve(a: dict[int, int], b: dict[int, int], limit: int) -> dict[int, int]:
    out: dict[int, int] = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            e = e1 + e2
            if e <= limit:
                out[e] = out.get(e, 0) + c1 * c2
    return out


def _fermionic_terms(spec: AlgebraSpec, trunc: Fraction, printed: bool,
                     chains=None) -> tuple[dict, list]:
    """Raw scaled term dict plus anomalies (duals whose exponent leaves [0, N])."""
    den = spec.den
    tn = Fraction(trunc) * den
    if tn.denominator != 1:
        raise ValueError(f"truncation {trunc} not on the 1/{den} lattice")
    tn = int(tn)
    unit_nums = [int(u * den) for u in spec.units()]
    raw: dict[tuple[int, tuple[int, ...]], int] = {}
    anomalies = []
    if chains is None:
        chains = _chains(spec, trunc)
    k = spec.level
    for layers, q2 in chains:
        dual = chain_to_dual(layers)
        if printed:
            q2x = quadratic_form(spec, dual, printed=True) * 2 * den
            assert q2x.denominator == 1
            q2 = int(q2x)
        if q2 % 2 != 0:
            raise AssertionError("exponent not on the 1/den lattice")
        qn = q2 // 2
        colors = tuple(sum(rows) for rows in dual)
        if qn < 0 or qn > tn:
            anomalies.append({"dual": dual, "q_num": qn, "q_den": den})
            continue
        budget = tn - qn
        block = {0: 1}
        for i, rows in enumerate(dual):
            for s in range(k):
                r = rows[s] - (rows[s + 1] if s + 1 < k else 0)
                if r:
                    block = _convolve(block, _poch_block(den, unit_nums[i], r, budget),
                                      budget)
        for e, c in block.items():
            key = (qn + e, colors)
            raw[key] = raw.get(key, 0) + c
    return raw, anomalies


def fermionic_char(spec: AlgebraSpec, trunc: Fraction, threads: int = 1) -> GradedSeries:
    """Character by the closed-form sum, exact, truncated at q^trunc."""
    raw = _parallel_fermionic(spec, trunc, threads)
    tn = int(Fraction(trunc) * spec.den)
    return GradedSeries.from_scaled(spec.den, spec.num_colors, tn, raw)


def printed_char(spec: AlgebraSpec, trunc: Fraction) -> GradedSeries:
    """The closed-form sum with the displayed coupling table (E6 differs).

    Evaluated over the derived form's support; exponents outside [0, trunc]
    are dropped here and surfaced by `printed_anomalies`.
    """
    raw, _ = _fermionic_terms(spec, trunc, printed=True)
    tn = int(Fraction(trunc) * spec.den)
    return GradedSeries.from_scaled(spec.den, spec.num_colors, tn, raw)


def printed_anomalies(spec: AlgebraSpec, trunc: Fraction) -> list[dict]:
    """Dual-charge-types whose printed exponent falls outside [0, trunc]."""
    _, anomalies = _fermionic_terms(spec, trunc, printed=True)
    return anomalies


def _parallel_fermionic(spec: AlgebraSpec, trunc: Fraction, threads: int) -> dict:
    if threads <= 1:
        raw, anomalies = _fermionic_terms(spec, trunc, printed=False)
    else:
        from concurrent.futures import ThreadPoolExecutor
        chains = list(_chains(spec, trunc))
        buckets = [chains[t::threads] for t in range(threads)]
        raw = {}
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = pool.map(
                lambda b: _fermionic_terms(spec, trunc, printed=False, chains=b),
                buckets)
            anomalies = []
            for part_raw, part_anom in parts:
                anomalies.extend(part_anom)
                for key, c in part_raw.items():
                    raw[key] = raw.get(key, 0) + c
    if anomalies:
        raise AssertionError("derived quadratic form produced out-of-range exponents")
    return raw


# -- enumeration engine -------------------------------------------------------


@lru_cache(maxsize=None)
def _partitions_within(max_part: int, lam: Fraction, budget: Fraction) -> tuple:
    """Partitions with parts <= max_part and lam * min_sum_self <= budget.

    min_sum_self only grows when a part is appended, so the growth prune is
    exact.
    """
    out = [()]
    frontier = [()]
    while frontier:
        nxt = []
        for parts in frontier:
            low = parts[0] if parts else max_part
            for add in range(1, low + 1):
                cand = (add,) + parts if add <= (parts[0] if parts else max_part) else None
                cand = tuple(sorted(parts + (add,), reverse=True))
                if lam * min_sum_self(cand) <= budget:
                    nxt.append(cand)
        frontier = sorted(set(nxt))
        out.extend(frontier)
    return tuple(sorted(set(out)))


def _shape_min_exponent(tag: AlgebraTag, shape: ChargeType) -> Fraction:
    """Least possible q-degree of a monomial of this charge-type: all energies
    at their caps (the all-at-cap labels satisfy every difference condition
    with equality)."""
    bounds = shape_bounds(tag, shape)
    return -sum((b for color in bounds for b in color), Fraction(0))


def _enumerate_shapes(spec: AlgebraSpec, trunc: Fraction):
    """Charge-types whose minimal monomial exponent is within the truncation.

    Pruning uses min exponent >= lam_min * sum_i min_sum_self(shape_i), which
    holds for any completion of a color prefix, so no shape is lost.
    """
    lam = lambda_min_bound(spec.tag)
    per_color = _partitions_within(spec.level, lam, Fraction(trunc))
    weights = {parts: lam * min_sum_self(parts) for parts in per_color}
    l = spec.num_colors

    def descend(prefix, wsum):
        if len(prefix) == l:
            shape = tuple(prefix)
            if _shape_min_exponent(spec.tag, shape) <= trunc:
                yield shape
            return
        for parts in per_color:
            w = weights[parts]
            if wsum + w <= trunc:
                yield from descend(prefix + [parts], wsum + w)

    yield from descend([], Fraction(0))


def _color_options(spec: AlgebraSpec, shape: ChargeType, budgets: list[int]) -> list[list[int]]:
    """Per color, the scaled exponent of every admissible energy assignment.

    budgets[i] caps the color's own contribution (global budget minus the
    other colors' minimal contributions).  Within a color the walk carries
    the suffix minima of the caps so that positive caps (negative exponent
    contributions) never cause a completable prefix to be pruned.
    """
    tag = spec.tag
    den = spec.den
    bounds = shape_bounds(tag, shape)
    out = []
    for idx, parts in enumerate(shape):
        i = idx + 1
        d = color_class(tag, i).denominator
        step = den // d
        gap_num = int(2 * self_weight(tag, i) * den)
        caps = [int(b * den) for b in bounds[idx]]
        # suffix_min[p] = minimal contribution of particles p.. (all at caps)
        suffix_min = [0] * (len(parts) + 1)
        for p in range(len(parts) - 1, -1, -1):
            suffix_min[p] = suffix_min[p + 1] - caps[p]
        budget = budgets[idx]
        options: list[int] = []

        def walk(p, prev_charge, prev_m, acc):
            if p == len(parts):
                options.append(acc)
                return
            n = parts[p]
            cap = caps[p]
            if p > 0 and prev_charge == n:
                cap = min(cap, prev_m - gap_num * n)
            m = cap
            # remaining particles contribute at least suffix_min[p + 1]
            while acc - m + suffix_min[p + 1] <= budget:
                walk(p + 1, n, m, acc - m)
                m -= step

        walk(0, 0, 0, 0)
        out.append(sorted(options))
    return out


def _enumeration_terms(spec: AlgebraSpec, trunc: Fraction, shapes=None) -> dict:
    den = spec.den
    tn = Fraction(trunc) * den
    if tn.denominator != 1:
        raise ValueError(f"truncation {trunc} not on the 1/{den} lattice")
    tn = int(tn)
    raw: dict[tuple[int, tuple[int, ...]], int] = {}
    if shapes is None:
        shapes = _enumerate_shapes(spec, trunc)
    for shape in shapes:
        colors = tuple(sum(parts) for parts in shape)
        bounds = shape_bounds(spec.tag, shape)
        min_contrib = [-sum(int(b * den) for b in color) for color in bounds]
        total_min = sum(min_contrib)
        budgets = [tn - (total_min - mc) for mc in min_contrib]
        option_lists = _color_options(spec, shape, budgets)
        suffix = [0] * (len(option_lists) + 1)
        for idx in range(len(option_lists) - 1, -1, -1):
            suffix[idx] = suffix[idx + 1] + (option_lists[idx][0] if option_lists[idx] else 0)

        def combine(idx, acc):
            if idx == len(option_lists):
                key = (acc, colors)
                raw[key] = raw.get(key, 0) + 1
                return
            for e in option_lists[idx]:
                if acc + e + suffix[idx + 1] > tn:
                    break  # options are sorted ascending
                combine(idx + 1, acc + e)

        combine(0, 0)
    return raw


def enumeration_char(spec: AlgebraSpec, trunc: Fraction, threads: int = 1) -> GradedSeries:
    """Character by direct count of admissible monomials, one term each."""
    tn = int(Fraction(trunc) * spec.den)
    if threads <= 1:
        raw = _enumeration_terms(spec, trunc)
    else:
        from concurrent.futures import ThreadPoolExecutor
        shapes = list(_enumerate_shapes(spec, trunc))
        buckets = [shapes[t::threads] for t in range(threads)]
        raw = {}
        with ThreadPoolExecutor(max_workers=threads) as pool:
            for part in pool.map(
                    lambda b: _enumeration_terms(spec, trunc, shapes=b), buckets):
                for key, c in part.items():
                    raw[key] = raw.get(key, 0) + c
    return GradedSeries.from_scaled(spec.den, spec.num_colors, tn, raw)


# -- comparison harness -------------------------------------------------------


ENGINES = {
    "fermionic": lambda spec, trunc: fermionic_char(spec, trunc),
    "enumeration": lambda spec, trunc: enumeration_char(spec, trunc),
    "printed": lambda spec, trunc: printed_char(spec, trunc),
}


@dataclass
class EngineReport:
    descriptor: str
    family: str
    l: int
    level: int
    trunc: Fraction
    engines: tuple[str, str]
    term_counts: tuple[int, int]
    elapsed_ns: int
    mismatches: list = field(default_factory=list)
    anomalies: list = field(default_factory=list)

    @property
    def match(self) -> bool:
        return not self.mismatches and not self.anomalies

    def to_dict(self) -> dict:
        return {
            "algebra": self.descriptor,
            "family": self.family,
            "l": self.l,
            "level": self.level,
            "trunc": f"{self.trunc.numerator}/{self.trunc.denominator}",
            "engines": list(self.engines),
            "term_counts": list(self.term_counts),
            "elapsed_ns": self.elapsed_ns,
            "match": self.match,
            "mismatches": self.mismatches,
            "anomalies": [
                {"dual": [list(r) for r in a["dual"]],
                 "q_num": a["q_num"], "q_den": a["q_den"]}
                for a in self.anomalies
            ],
        }


def compare_engines(spec: AlgebraSpec, trunc: Fraction,
                    engines: tuple[str, str] = ("fermionic", "enumeration"),
                    max_mismatches: int = 20) -> EngineReport:
    """Run two engines and report the first differing coefficients, if any."""
    trunc = Fraction(trunc)
    t0 = time.perf_counter_ns()
    left = ENGINES[engines[0]](spec, trunc)
    right = ENGINES[engines[1]](spec, trunc)
    elapsed = time.perf_counter_ns() - t0
    mismatches = []
    for key in sorted(set(left.terms) | set(right.terms)):
        a = left.terms.get(key, 0)
        b = right.terms.get(key, 0)
        if a != b:
            qn, colors = key
            mismatches.append({
                "q_num": qn, "q_den": left.den, "colors": list(colors),
                engines[0]: str(a), engines[1]: str(b),
            })
            if len(mismatches) >= max_mismatches:
                break
    anomalies = printed_anomalies(spec, trunc) if "printed" in engines else []
    return EngineReport(
        descriptor=spec.describe(), family=spec.tag.family, l=spec.tag.l,
        level=spec.level, trunc=trunc, engines=engines,
        term_counts=(len(left.terms), len(right.terms)),
        elapsed_ns=elapsed, mismatches=mismatches, anomalies=anomalies)
