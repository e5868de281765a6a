"""Exact linear algebra for the generalized Pascal coefficient system.

The object of interest is the 2n x 2n matrix with entry

    M[N][c] = binom(p + c/v, N),      N, c = 0 .. 2n-1,

for a rational shift p and twist order v in {2, 3}.  It factors as a
unipotent lower-triangular matrix times the p = 0 base matrix, so its
determinant is independent of p and equals v^(-n(2n-1)).  Determinants are
computed by fraction-free Bareiss elimination on a denominator-cleared
integer matrix.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial, lcm


def binomial_general(x: Fraction, n: int) -> Fraction:
    """Generalized binomial coefficient x(x-1)...(x-n+1)/n! for rational x."""
    if n < 0:
        raise ValueError("lower index must be non-negative")
    x = Fraction(x)
    num = Fraction(1)
    for t in range(n):
        num *= x - t
    return num / factorial(n)


def chu_vandermonde(a: Fraction, b: Fraction, n: int) -> tuple[Fraction, Fraction]:
    """Both sides of sum_q binom(a,q) binom(b,n-q) = binom(a+b,n).

    Equality is a test obligation; this function only evaluates the two sides.
    """
    a, b = Fraction(a), Fraction(b)
    lhs = sum((binomial_general(a, q) * binomial_general(b, n - q) for q in range(n + 1)),
              Fraction(0))
    rhs = binomial_general(a + b, n)
    return lhs, rhs


@dataclass(frozen=True)
class RationalMatrix:
    entries: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        if self.entries and any(len(r) != len(self.entries[0]) for r in self.entries):
            raise ValueError("ragged matrix")

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    @staticmethod
    def build(rows: int, cols: int, f) -> "RationalMatrix":
        return RationalMatrix(tuple(
            tuple(Fraction(f(i, j)) for j in range(cols)) for i in range(rows)))

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        return RationalMatrix.build(
            self.rows, other.cols,
            lambda i, j: sum((self.entries[i][t] * other.entries[t][j]
                              for t in range(self.cols)), Fraction(0)))

    def det(self) -> Fraction:
        """Determinant via Bareiss elimination on a denominator-cleared copy."""
        if self.rows != self.cols:
            raise ValueError("determinant of non-square matrix")
        n = self.rows
        if n == 0:
            return Fraction(1)
        scale = Fraction(1)
        m: list[list[int]] = []
        for row in self.entries:
            d = lcm(*(e.denominator for e in row))
            scale *= d
            m.append([int(e * d) for e in row])
        sign = 1
        prev = 1
        for k in range(n - 1):
            if m[k][k] == 0:
                for r in range(k + 1, n):
                    if m[r][k] != 0:
                        m[k], m[r] = m[r], m[k]
                        sign = -sign
                        break
                else:
                    return Fraction(0)
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
                m[i][k] = 0
            prev = m[k][k]
        return Fraction(sign * m[n - 1][n - 1], 1) / scale

    def __str__(self) -> str:
        widths = [max(len(str(self.entries[i][j])) for i in range(self.rows))
                  for j in range(self.cols)]
        return "\n".join(
            "[ " + "  ".join(str(e).rjust(w) for e, w in zip(row, widths)) + " ]"
            for row in self.entries)


def pascal_matrix(n: int, v: int, p: Fraction) -> RationalMatrix:
    """Rows N = 0..2n-1, columns c = 0..2n-1, entry binom(p + c/v, N)."""
    if n < 1:
        raise ValueError("n must be positive")
    p = Fraction(p)
    return RationalMatrix.build(
        2 * n, 2 * n, lambda N, c: binomial_general(p + Fraction(c, v), N))


def base_pascal_det(n: int, v: int) -> Fraction:
    """Exact determinant of the p = 0 base matrix (entries binom(c/v, N))."""
    return pascal_matrix(n, v, Fraction(0)).det()


def claimed_det(n: int, v: int) -> Fraction:
    """The closed-form value v^(-n(2n-1)) the base determinant must equal."""
    return Fraction(1, v ** (n * (2 * n - 1)))


def triangular_factor(n: int, v: int, p: Fraction) -> RationalMatrix:
    """Lower-triangular factor with entry binom(p, N-j) for N >= j, else 0."""
    p = Fraction(p)
    return RationalMatrix.build(
        2 * n, 2 * n,
        lambda N, j: binomial_general(p, N - j) if N >= j else Fraction(0))


def triangular_factor_check(n: int, v: int, p: Fraction) -> bool:
    """Whether pascal_matrix(n, v, p) == triangular_factor(n, v, p) @ base matrix."""
    lhs = pascal_matrix(n, v, p)
    rhs = triangular_factor(n, v, p) @ pascal_matrix(n, v, Fraction(0))
    return lhs == rhs
