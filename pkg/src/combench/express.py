"""Binary-matrix match probabilities for parity-phase circuits.

Columns of an n x m binary matrix A define integer indicator sums
m_i(x) = sum_j <a_i, x_j> (inner products mod 2, summed over the t columns
of a sample matrix x).  The central quantity is the probability that two
uniform random n x t samples produce identical indicator vectors; closed
forms exist when A is the identity (independent row sums) and when A is
the weight-1 plus first-coordinate-pair family, while the full nonzero
column set reduces to counting strings with permuted letter multisets.

All probabilities are exact rationals; floats only appear at presentation
time.  Columns are packed ints with bit r holding row r.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb, factorial
from typing import Sequence

import numpy as np

from .errors import InstanceTooLarge, ShapeMismatch, ValidationError

BRUTE_FORCE_BIT_CAP = 30  # caps 2^(2*t*n) pair enumeration (histogrammed as 2^(t*n))


@dataclass(frozen=True)
class BinaryMatrix:
    """Column-major packed bits: column c's row r lives at bit r of cols[c]."""

    rows: int
    cols: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "cols", tuple(int(c) for c in self.cols))
        if self.rows < 0:
            raise ValidationError("row count must be nonnegative", rows=self.rows)
        for c in self.cols:
            if c < 0 or c >> self.rows:
                raise ValidationError("column has bits outside the row range",
                                      column=c, rows=self.rows)

    @property
    def col_count(self) -> int:
        return len(self.cols)

    def column_bits(self, c: int) -> list[int]:
        return [(self.cols[c] >> r) & 1 for r in range(self.rows)]

    def validate_circuit_columns(self) -> None:
        """Circuit matrices need nonzero, pairwise distinct columns."""
        if 0 in self.cols:
            raise ValidationError("columns must be nonzero")
        if len(set(self.cols)) != len(self.cols):
            raise ValidationError("columns must be pairwise distinct")

    @staticmethod
    def identity(n: int) -> "BinaryMatrix":
        return BinaryMatrix(n, tuple(1 << r for r in range(n)))

    @staticmethod
    def star(n: int) -> "BinaryMatrix":
        """Weight-1 columns plus weight-2 columns touching the first row."""
        if n < 1:
            raise ValidationError("star matrix needs n >= 1", n=n)
        cols = [1 << r for r in range(n)]
        cols += [(1 << 0) | (1 << r) for r in range(1, n)]
        return BinaryMatrix(n, tuple(cols))

    @staticmethod
    def full_nonzero(n: int) -> "BinaryMatrix":
        return BinaryMatrix(n, tuple(range(1, 1 << n)))

    @staticmethod
    def from_bitstrings(strings: Sequence[str]) -> "BinaryMatrix":
        """Columns as top-to-bottom bitstrings, e.g. ["1000", "0100"]."""
        if not strings:
            raise ValidationError("need at least one column")
        rows = len(strings[0])
        cols = []
        for s in strings:
            if len(s) != rows or any(ch not in "01" for ch in s):
                raise ValidationError("bad column bitstring", column=s)
            cols.append(sum(1 << r for r, ch in enumerate(s) if ch == "1"))
        return BinaryMatrix(rows, tuple(cols))

    def to_bitstrings(self) -> list[str]:
        return ["".join(str(b) for b in self.column_bits(c))
                for c in range(self.col_count)]


def weight_leq_k_matrix(n: int, k: int) -> BinaryMatrix:
    """All nonzero columns of Hamming weight at most k, ordered by
    (weight, row-index set)."""
    if not 1 <= k <= n:
        raise ValidationError("need 1 <= k <= n", n=n, k=k)
    cols = []
    for w in range(1, k + 1):
        for rows in combinations(range(n), w):
            cols.append(sum(1 << r for r in rows))
    return BinaryMatrix(n, tuple(cols))


def _parity(x: int) -> int:
    return bin(x).count("1") & 1


def indicators(A: BinaryMatrix, x: BinaryMatrix) -> tuple[int, ...]:
    """Integer vector of mod-2 inner products of each A-column against all
    x-columns."""
    if A.rows != x.rows:
        raise ShapeMismatch("A and x need the same row count",
                            a_rows=A.rows, x_rows=x.rows)
    return tuple(
        sum(_parity(a & xc) for xc in x.cols) for a in A.cols
    )


def _indicator_histogram(A: BinaryMatrix, t: int) -> dict[tuple[int, ...], int]:
    """Counts of indicator vectors over all 2^(t*n) sample matrices.

    Built as the t-fold convolution of the single-column distribution:
    each sample column contributes an independent 0/1 parity vector.
    """
    n = A.rows
    base: dict[tuple[int, ...], int] = {}
    for c in range(1 << n):
        vec = tuple(_parity(a & c) for a in A.cols)
        base[vec] = base.get(vec, 0) + 1
    hist: dict[tuple[int, ...], int] = {tuple([0] * A.col_count): 1}
    for _ in range(t):
        nxt: dict[tuple[int, ...], int] = {}
        for vec, cnt in hist.items():
            for bvec, bcnt in base.items():
                key = tuple(v + b for v, b in zip(vec, bvec))
                nxt[key] = nxt.get(key, 0) + cnt * bcnt
        hist = nxt
    return hist


def match_probability_bruteforce(A: BinaryMatrix, t: int,
                                 bit_cap: int = BRUTE_FORCE_BIT_CAP) -> Fraction:
    """Exact P(indicators(x) == indicators(y)) for uniform x, y.

    Uses the identity #matching pairs = sum of squared histogram counts, so
    the enumeration is over x alone (2^(t*n) instead of 2^(2*t*n) states).
    """
    A.validate_circuit_columns()
    if t < 0:
        raise ValidationError("t must be nonnegative", t=t)
    if 2 * t * A.rows > bit_cap:
        raise InstanceTooLarge("pair space too large",
                               bits=2 * t * A.rows, cap=bit_cap)
    if t == 0 or A.rows == 0:
        return Fraction(1)
    hist = _indicator_histogram(A, t)
    matching = sum(c * c for c in hist.values())
    return Fraction(matching, 1 << (2 * t * A.rows))


def closed_form_identity(n: int, t: int) -> Fraction:
    """Match probability for A = identity: C(2t, t)^n / 2^(2tn).

    Rows are independent and each pair of length-t rows agrees in sum with
    probability C(2t, t) / 4^t.
    """
    if n < 0 or t < 0:
        raise ValidationError("n and t must be nonnegative", n=n, t=t)
    return Fraction(comb(2 * t, t) ** n, 1 << (2 * t * n))


def closed_form_star(n: int, t: int) -> Fraction:
    """Match probability for the star family (weight 1 plus first-row pairs).

    Conditioning on k ones in the shared first row:
    sum_k (C(2k,k) C(2(t-k),t-k))^(n-1) C(t,k)^2 / 2^(2tn).
    """
    if n < 1:
        raise ValidationError("star family needs n >= 1", n=n)
    if t < 0:
        raise ValidationError("t must be nonnegative", t=t)
    total = 0
    for k in range(t + 1):
        total += (comb(2 * k, k) * comb(2 * (t - k), t - k)) ** (n - 1) * comb(t, k) ** 2
    return Fraction(total, 1 << (2 * t * n))


def maximal_abelian_probability(n: int, t: int, alphabet_cap: int = 4096) -> Fraction:
    """Match probability for A = all nonzero columns.

    Equals the probability that two uniform length-t strings over a
    2^n-letter alphabet are permutations of each other:
    sum over compositions of t of multinomial(t; c)^2, normalized by
    (2^n)^(2t).  Computed exactly as t!^2 [z^t] (sum z^c / c!^2)^d.
    """
    if n < 0 or t < 0:
        raise ValidationError("n and t must be nonnegative", n=n, t=t)
    d = 1 << n
    if d > alphabet_cap:
        raise InstanceTooLarge("alphabet too large", alphabet=d, cap=alphabet_cap)
    base = [Fraction(1, factorial(c) ** 2) for c in range(t + 1)]
    poly = [Fraction(1)] + [Fraction(0)] * t
    for _ in range(d):
        nxt = [Fraction(0)] * (t + 1)
        for i, pi in enumerate(poly):
            if pi == 0:
                continue
            for j in range(t + 1 - i):
                nxt[i + j] += pi * base[j]
        poly = nxt
    squares = poly[t] * factorial(t) ** 2
    return squares / Fraction(d) ** (2 * t)


def circuit_phases(A: BinaryMatrix, theta: Sequence[float],
                   n_cap: int = 20) -> np.ndarray:
    """Phase vector phi_x = sum_i theta_i * (-1)^<a_i, x> over all x in {0,1}^n.

    Index x encodes row r at bit r.  This is the full parity-phase profile
    of the circuit the columns describe.
    """
    theta = np.asarray(theta, dtype=float)
    if theta.shape != (A.col_count,):
        raise ShapeMismatch("theta length must match column count",
                            theta=theta.shape, cols=A.col_count)
    if A.rows > n_cap:
        raise InstanceTooLarge("phase vector too large", rows=A.rows, cap=n_cap)
    size = 1 << A.rows
    phases = np.zeros(size)
    idx = np.arange(size)
    for a, th in zip(A.cols, theta):
        signs = np.ones(size)
        for r in range(A.rows):
            if a >> r & 1:
                signs = signs * np.where(idx >> r & 1, -1.0, 1.0)
        phases += th * signs
    return phases
