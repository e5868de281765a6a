"""Central-extension scalars on the root lattice: commutator maps, the
normalized 2-cocycle, its twisted companion, and the automorphism-lift sign.

Everything takes values in the cyclic group generated by eta0, where eta is a
primitive v-th root of unity and

    v = 2:  eta0 = eta = -1            (group {1, -1})
    v = 3:  eta0 = -eta                (a primitive sixth root of unity)

Values are encoded exactly as exponent pairs (-1)^s * eta^e, never as floats.

The maps, for lattice vectors a, b (coordinates over the simple roots):

    commutator(a, b)          = (-1)^<a,b>
    twisted_commutator(a, b)  = prod_{j=0}^{v-1} (-eta^j)^{<nu^j a, b>}
    two_cocycle(a, b)         = bimultiplicative extension of
                                eps(alpha_i, alpha_j) = 1 if i <= j,
                                (-1)^{<alpha_i,alpha_j>} if i > j
    twisted_two_cocycle(a, b) = the cocycle of the twisted extension, related
                                to two_cocycle by a half-open product of
                                (-eta^{-j}) factors over integer j in
                                (-v/2, 0); empty for v = 2, j = -1 for v = 3
    lift_sign(a)              = the scalar in nu-hat e_a = lift_sign(a) e_{nu a}
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .lattice import AlgebraTag, bilinear, cartan_matrix, twist


@dataclass(frozen=True)
class RootOfUnity:
    """(-1)^sign * eta^eta_pow with eta a primitive v-th root of unity.

    For v = 2 the eta power is folded into the sign, so the value is +-1.
    """

    v: int
    sign: int
    eta_pow: int

    @staticmethod
    def make(v: int, sign: int, eta_pow: int = 0) -> "RootOfUnity":
        if v == 2:
            return RootOfUnity(2, (sign + eta_pow) % 2, 0)
        return RootOfUnity(v, sign % 2, eta_pow % v)

    @staticmethod
    def one(v: int) -> "RootOfUnity":
        return RootOfUnity(v, 0, 0)

    @property
    def is_one(self) -> bool:
        return self.sign == 0 and self.eta_pow == 0

    def __mul__(self, other: "RootOfUnity") -> "RootOfUnity":
        if self.v != other.v:
            raise ValueError("mixed twist orders")
        return RootOfUnity.make(self.v, self.sign + other.sign, self.eta_pow + other.eta_pow)

    def inverse(self) -> "RootOfUnity":
        return RootOfUnity.make(self.v, self.sign, -self.eta_pow)

    def __pow__(self, n: int) -> "RootOfUnity":
        return RootOfUnity.make(self.v, self.sign * n, self.eta_pow * n)

    def __str__(self) -> str:
        s = "-" if self.sign else "+"
        if self.eta_pow == 0:
            return s + "1"
        e = "w" if self.eta_pow == 1 else f"w^{self.eta_pow}"
        return (s if self.sign else "") + e


def _minus_eta_power(v: int, j: int, exponent: int) -> RootOfUnity:
    """(-eta^j)^exponent."""
    return RootOfUnity.make(v, exponent, (j % v) * exponent)


def commutator(tag: AlgebraTag, a, b) -> RootOfUnity:
    """(-1)^<a,b> -- the commutator map of the untwisted extension."""
    return RootOfUnity.make(tag.twist_order, bilinear(tag, a, b))


def twisted_commutator(tag: AlgebraTag, a, b) -> RootOfUnity:
    """prod_{j=0}^{v-1} (-eta^j)^{<nu^j a, b>}."""
    v = tag.twist_order
    out = RootOfUnity.one(v)
    cur = a
    for j in range(v):
        out = out * _minus_eta_power(v, j, bilinear(tag, cur, b))
        cur = twist(tag, cur)
    return out


@lru_cache(maxsize=None)
def _lower_gram(tag: AlgebraTag) -> tuple[tuple[int, ...], ...]:
    """E with E[i][j] = <alpha_i, alpha_j> for i > j, else 0 (0-based)."""
    cm = cartan_matrix(tag)
    n = tag.rank
    return tuple(
        tuple(cm[i][j] if i > j else 0 for j in range(n)) for i in range(n)
    )


def _cocycle_parity(tag: AlgebraTag, a, b) -> int:
    """Exponent of -1 in the bimultiplicative extension of the cocycle table."""
    e = _lower_gram(tag)
    total = 0
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        row = e[i]
        total += ai * sum(rj * bj for rj, bj in zip(row, b))
    return total


def two_cocycle(tag: AlgebraTag, a, b) -> RootOfUnity:
    """The normalized 2-cocycle of the untwisted extension.

    On simple roots it is 1 for i <= j and (-1)^{<alpha_i,alpha_j>} for i > j;
    the extension to the whole lattice is bimultiplicative, so the value is
    (-1)^{sum_{i>j} a_i b_j <alpha_i, alpha_j>}.
    """
    if len(a) != tag.rank or len(b) != tag.rank:
        raise ValueError("vector length mismatch")
    return RootOfUnity.make(tag.twist_order, _cocycle_parity(tag, a, b))


def twisted_two_cocycle(tag: AlgebraTag, a, b) -> RootOfUnity:
    """Cocycle of the twisted extension.

    Defined by  two_cocycle(a,b) = [prod_{-v/2 < j < 0} (-eta^{-j})^{<nu^{-j}a, b>}]
    * twisted_two_cocycle(a,b)  with j running over integers.  For v = 2 the
    product range is empty and the two cocycles coincide; for v = 3 the single
    factor j = -1 contributes (-eta)^{<nu a, b>}.
    """
    v = tag.twist_order
    eps = two_cocycle(tag, a, b)
    if v == 2:
        return eps
    factor = _minus_eta_power(v, 1, bilinear(tag, twist(tag, a), b))
    return eps * factor.inverse()


def lift_sign(tag: AlgebraTag, a) -> RootOfUnity:
    """The scalar psi(a) with nu-hat e_a = psi(a) e_{nu a}.

    Case table: eps(a,a) for the A family; 1 for the D family with v = 2;
    (-1)^{r3 r4} eps(a,a) for E6; (-1)^{r2 r3} eps(a,a) for D4 with v = 3,
    where r_i are the simple-root coordinates of a.
    """
    v = tag.twist_order
    if tag.family == "Dl_2":
        return RootOfUnity.one(v)
    eps = two_cocycle(tag, a, a)
    if tag.family == "A2lm1_2":
        return eps
    if tag.family == "E6_2":
        return RootOfUnity.make(v, a[2] * a[3]) * eps
    return RootOfUnity.make(v, a[1] * a[2]) * eps


def folded_cocycle_sides(tag: AlgebraTag, a, b) -> tuple[RootOfUnity, RootOfUnity]:
    """Both sides of the cocycle/automorphism compatibility identity.

    Returns (eps(nu a, nu b), case-table right-hand side); equality is a test
    obligation, not assumed here.
    """
    lhs = two_cocycle(tag, twist(tag, a), twist(tag, b))
    v = tag.twist_order
    if tag.family == "Dl_2":
        rhs = two_cocycle(tag, a, b)
    elif tag.family == "A2lm1_2":
        rhs = two_cocycle(tag, b, a)
    elif tag.family == "E6_2":
        rhs = RootOfUnity.make(v, a[3] * b[2] + a[2] * b[3]) * two_cocycle(tag, b, a)
    else:
        rhs = RootOfUnity.make(v, a[1] * b[2] + a[2] * b[1]) * two_cocycle(tag, b, a)
    return lhs, rhs
