"""Root-lattice data for the four folded families.

Each family is a finite simply-laced root lattice together with a diagram
automorphism `nu` of order v:

    A2lm1_2  --  A_{2l-1} (l >= 2), chain 1-2-...-(2l-1), nu reflects i <-> 2l-i, v = 2
    Dl_2     --  D_l (l >= 4), chain 1-...-(l-1) with node l on node l-2,
                 nu swaps l-1 <-> l, v = 2
    E6_2     --  E_6, chain 1-2-3-5-6 with node 4 on node 3, nu reflects the
                 chain (1<->6, 2<->5) and fixes 3 and 4, v = 2
    D4_3     --  D_4, chain 1-2-3 with node 4 on node 2, nu cycles
                 1 -> 3 -> 4 -> 1 and fixes 2, v = 3

Quasi-particle "colors" are the nu-orbits of simple roots, numbered by their
lowest-index representative.  A color is Fixed when its orbit is a singleton
and Moved otherwise; Moved colors carry energies in (1/v)Z, Fixed colors in Z.

Vectors are plain integer tuples of coordinates in the simple-root basis.
All arithmetic is exact (int / Fraction); nothing here ever touches floats.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

FAMILIES = ("A2lm1_2", "Dl_2", "E6_2", "D4_3")


@dataclass(frozen=True)
class AlgebraTag:
    """One of the four folded families, with its rank parameter l.

    `l` is meaningful for A2lm1_2 (l >= 2) and Dl_2 (l >= 4) and ignored
    otherwise (normalized to 0).
    """

    family: str
    l: int = 0

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        if self.family == "A2lm1_2" and self.l < 2:
            raise ValueError("A2lm1_2 requires l >= 2")
        if self.family == "Dl_2" and self.l < 4:
            raise ValueError("Dl_2 requires l >= 4")
        if self.family in ("E6_2", "D4_3") and self.l not in (0,):
            object.__setattr__(self, "l", 0)

    @property
    def rank(self) -> int:
        """Rank of the underlying finite algebra (length of coordinate vectors)."""
        if self.family == "A2lm1_2":
            return 2 * self.l - 1
        if self.family == "Dl_2":
            return self.l
        if self.family == "E6_2":
            return 6
        return 4

    @property
    def twist_order(self) -> int:
        return 3 if self.family == "D4_3" else 2

    @property
    def num_colors(self) -> int:
        if self.family == "A2lm1_2":
            return self.l
        if self.family == "Dl_2":
            return self.l - 1
        if self.family == "E6_2":
            return 4
        return 2

    def describe(self) -> str:
        if self.family == "A2lm1_2":
            return f"A{2 * self.l - 1}^(2)"
        if self.family == "Dl_2":
            return f"D{self.l}^(2)"
        if self.family == "E6_2":
            return "E6^(2)"
        return "D4^(3)"


def tag_a(l: int) -> AlgebraTag:
    return AlgebraTag("A2lm1_2", l)


def tag_d(l: int) -> AlgebraTag:
    return AlgebraTag("Dl_2", l)


def tag_e6() -> AlgebraTag:
    return AlgebraTag("E6_2")


def tag_d4_3() -> AlgebraTag:
    return AlgebraTag("D4_3")


ALL_MIN_RANK = (tag_a(2), tag_d(4), tag_e6(), tag_d4_3())


@dataclass(frozen=True)
class ColorClass:
    """Orbit class of a color: Fixed (singleton orbit) or Moved."""

    kind: str  # "fixed" | "moved"
    denominator: int  # energy lattice is (1/denominator)Z

    @property
    def unit(self) -> Fraction:
        return Fraction(1, self.denominator)

    @property
    def moved(self) -> bool:
        return self.kind == "moved"


@lru_cache(maxsize=None)
def _edges(tag: AlgebraTag) -> tuple[tuple[int, int], ...]:
    """Dynkin diagram edges, 1-based node labels."""
    if tag.family == "A2lm1_2":
        n = 2 * tag.l - 1
        return tuple((i, i + 1) for i in range(1, n))
    if tag.family == "Dl_2":
        l = tag.l
        chain = tuple((i, i + 1) for i in range(1, l - 1))
        return chain + ((l - 2, l),)
    if tag.family == "E6_2":
        return ((1, 2), (2, 3), (3, 5), (5, 6), (3, 4))
    return ((1, 2), (2, 3), (2, 4))


@lru_cache(maxsize=None)
def cartan_matrix(tag: AlgebraTag) -> tuple[tuple[int, ...], ...]:
    n = tag.rank
    m = [[0] * n for _ in range(n)]
    for i in range(n):
        m[i][i] = 2
    for i, j in _edges(tag):
        m[i - 1][j - 1] = -1
        m[j - 1][i - 1] = -1
    return tuple(tuple(row) for row in m)


@lru_cache(maxsize=None)
def _nu_perm(tag: AlgebraTag) -> tuple[int, ...]:
    """nu as a permutation of 0-based node indices; nu(i) = perm[i]."""
    n = tag.rank
    if tag.family == "A2lm1_2":
        return tuple(n - 1 - i for i in range(n))
    if tag.family == "Dl_2":
        perm = list(range(n))
        perm[n - 2], perm[n - 1] = n - 1, n - 2
        return tuple(perm)
    if tag.family == "E6_2":
        return (5, 4, 2, 3, 1, 0)
    # 3-cycle alpha_1 -> alpha_3 -> alpha_4 -> alpha_1, alpha_2 fixed
    return (2, 1, 3, 0)


def simple_root(tag: AlgebraTag, i: int) -> tuple[int, ...]:
    """alpha_i as a coordinate vector, i 1-based."""
    if not 1 <= i <= tag.rank:
        raise ValueError(f"simple root index {i} out of range 1..{tag.rank}")
    return tuple(1 if j == i - 1 else 0 for j in range(tag.rank))


def zero_vector(tag: AlgebraTag) -> tuple[int, ...]:
    return (0,) * tag.rank


def _check_vec(tag: AlgebraTag, a) -> None:
    if len(a) != tag.rank:
        raise ValueError(f"vector length {len(a)} != rank {tag.rank}")


def bilinear(tag: AlgebraTag, a, b) -> int:
    """<a, b> via the Cartan matrix of the family's labeling."""
    _check_vec(tag, a)
    _check_vec(tag, b)
    cm = cartan_matrix(tag)
    return sum(ai * sum(cij * bj for cij, bj in zip(ci, b)) for ai, ci in zip(a, cm))


def twist(tag: AlgebraTag, a) -> tuple[int, ...]:
    """Apply the diagram automorphism nu to a coordinate vector."""
    _check_vec(tag, a)
    perm = _nu_perm(tag)
    out = [0] * tag.rank
    for i, coeff in enumerate(a):
        out[perm[i]] = coeff
    return tuple(out)


def invariant_projection(tag: AlgebraTag, a) -> tuple[Fraction, ...]:
    """Orbit average (1/v) * sum_j nu^j(a); the projection onto the nu-fixed part."""
    _check_vec(tag, a)
    v = tag.twist_order
    acc = list(a)
    cur = a
    for _ in range(v - 1):
        cur = twist(tag, cur)
        acc = [x + y for x, y in zip(acc, cur)]
    return tuple(Fraction(x, v) for x in acc)


@lru_cache(maxsize=None)
def orbits(tag: AlgebraTag) -> tuple[tuple[int, ...], ...]:
    """nu-orbits of simple roots (1-based node labels), one per color.

    Colors are ordered by lowest representative, which reproduces the
    per-family color numbering used throughout.
    """
    perm = _nu_perm(tag)
    seen = set()
    out = []
    for i in range(tag.rank):
        if i in seen:
            continue
        orb = [i]
        j = perm[i]
        while j != i:
            orb.append(j)
            j = perm[j]
        seen.update(orb)
        out.append(tuple(sorted(x + 1 for x in orb)))
    out.sort(key=lambda o: o[0])
    return tuple(out)


def color_of_node(tag: AlgebraTag, node: int) -> int:
    """1-based color index of the orbit containing simple root `node`."""
    for c, orb in enumerate(orbits(tag), start=1):
        if node in orb:
            return c
    raise ValueError(f"node {node} out of range")


def representative(tag: AlgebraTag, color: int) -> int:
    """Lowest-index simple root in the color's orbit (1-based)."""
    return orbits(tag)[color - 1][0]


@lru_cache(maxsize=None)
def color_class(tag: AlgebraTag, color: int) -> ColorClass:
    orb = orbits(tag)[color - 1]
    if len(orb) == 1:
        return ColorClass("fixed", 1)
    return ColorClass("moved", tag.twist_order)


def _fundamental_pairing(tag: AlgebraTag, a, i: int) -> int:
    """<a, lambda_i> = coefficient of alpha_i in a (lambda_i dual to the roots)."""
    return a[i - 1]


def charge_vector(tag: AlgebraTag, a) -> tuple[int, ...]:
    """Charge tuple of a root-lattice vector, one entry per color.

    Entry for color i is pref * <a, (lambda_i)_0> with (lambda_i)_0 the orbit
    average of the fundamental weight lambda_i on the orbit representative,
    and pref = v for Moved colors, 1 for Fixed ones.  The result is always
    integral; a non-integer signals a wrong prefactor table and is raised as
    an internal error.
    """
    _check_vec(tag, a)
    v = tag.twist_order
    out = []
    for color in range(1, tag.num_colors + 1):
        rep = representative(tag, color)
        # <a, (lambda_rep)_0> = (1/v) sum_j <nu^j a, lambda_rep>
        total = 0
        cur = a
        for _ in range(v):
            total += _fundamental_pairing(tag, cur, rep)
            cur = twist(tag, cur)
        pref = v if color_class(tag, color).moved else 1
        val = Fraction(pref * total, v)
        if val.denominator != 1:
            raise ArithmeticError(
                f"non-integer charge {val} for color {color}; prefactor table is wrong"
            )
        out.append(int(val))
    return tuple(out)


def qp_weight(tag: AlgebraTag, a, m: Fraction) -> Fraction:
    """Weight of a mode labelled (a, m): -m - 1 + <a,a>/2.  Requires m in (1/v)Z."""
    m = Fraction(m)
    if (m * tag.twist_order).denominator != 1:
        raise ValueError(f"mode index {m} not in (1/{tag.twist_order})Z")
    return -m - 1 + Fraction(bilinear(tag, a, a), 2)


def vacuum_weight(tag: AlgebraTag) -> Fraction:
    """Weight of the highest-weight vector of the basic module."""
    if tag.family == "A2lm1_2":
        return Fraction(tag.l - 1, 16)
    if tag.family == "Dl_2":
        return Fraction(1, 16)
    if tag.family == "E6_2":
        return Fraction(1, 8)
    return Fraction(1, 9)
