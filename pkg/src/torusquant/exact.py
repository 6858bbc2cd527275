"""Exact integer and rational linear algebra plus phase bookkeeping.

Matrices are plain lists (or tuples) of rows; vectors are sequences.  Integer
routines stay in ZZ, rational ones use fractions.Fraction, and nothing here
touches floating point except the explicit complex evaluation helpers on
UnitPhase / PhaseSum and the Gauss sum check, which returns both sides of the
reciprocity formula as complex numbers for external comparison.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterable, NamedTuple, Sequence

from .errors import DimensionMismatch, NotSymmetric, OddModulus, SingularMatrix

Matrix = Sequence[Sequence]
Vector = Sequence


# ---------------------------------------------------------------------------
# basic matrix helpers


def shape(m: Matrix) -> tuple[int, int]:
    rows = len(m)
    cols = len(m[0]) if rows else 0
    if any(len(r) != cols for r in m):
        raise DimensionMismatch("matrix is not rectangular")
    return rows, cols


def identity(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def zeros(r: int, c: int) -> list[list[int]]:
    return [[0] * c for _ in range(r)]


def transpose(m: Matrix) -> list[list]:
    r, c = shape(m)
    return [[m[i][j] for i in range(r)] for j in range(c)]


def mat_mul(a: Matrix, b: Matrix) -> list[list]:
    ra, ca = shape(a)
    rb, cb = shape(b)
    if ca != rb:
        raise DimensionMismatch(f"cannot multiply {ra}x{ca} by {rb}x{cb}")
    bt = transpose(b)
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def mat_vec(m: Matrix, v: Vector) -> tuple:
    r, c = shape(m)
    if len(v) != c:
        raise DimensionMismatch("matrix/vector size mismatch")
    return tuple(sum(m[i][j] * v[j] for j in range(c)) for i in range(r))


def vec_mat(v: Vector, m: Matrix) -> tuple:
    r, c = shape(m)
    if len(v) != r:
        raise DimensionMismatch("vector/matrix size mismatch")
    return tuple(sum(v[i] * m[i][j] for i in range(r)) for j in range(c))


def dot(u: Vector, v: Vector):
    if len(u) != len(v):
        raise DimensionMismatch("vector length mismatch")
    return sum(x * y for x, y in zip(u, v))


def vec_add(u: Vector, v: Vector) -> tuple:
    return tuple(x + y for x, y in zip(u, v))


def vec_sub(u: Vector, v: Vector) -> tuple:
    return tuple(x - y for x, y in zip(u, v))


def vec_scale(c, v: Vector) -> tuple:
    return tuple(c * x for x in v)


def freeze(m: Matrix) -> tuple[tuple, ...]:
    return tuple(tuple(row) for row in m)


def quad_form(q: Vector, m: Matrix, p: Vector):
    """q^T . m . p"""
    return dot(q, mat_vec(m, p))


# ---------------------------------------------------------------------------
# gcd machinery


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with g = a*x + b*y and g = gcd(a, b) >= 0.

    Deterministic: coefficients come from the plain iterative Euclidean
    algorithm, with a final sign fix so g is nonnegative.
    """
    x0, x1 = 1, 0
    y0, y1 = 0, 1
    g0, g1 = a, b
    while g1:
        q = g0 // g1
        g0, g1 = g1, g0 - q * g1
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if g0 < 0:
        g0, x0, y0 = -g0, -x0, -y0
    return g0, x0, y0


def multixgcd(values: Sequence[int]) -> tuple[int, tuple[int, ...]]:
    """Return (g, coeffs) with g = gcd(values) >= 0 and sum(c*v) = g."""
    if not values:
        return 0, ()
    g = values[0]
    coeffs = [1]
    for v in values[1:]:
        g2, x, y = xgcd(g, v)
        coeffs = [x * c for c in coeffs]
        coeffs.append(y)
        g = g2
    if g < 0:  # single negative value case
        g = -g
        coeffs = [-c for c in coeffs]
    return g, tuple(coeffs)


# ---------------------------------------------------------------------------
# Hermite and Smith normal forms


def hnf(m: Matrix) -> tuple[list[list[int]], list[list[int]]]:
    """Row Hermite normal form.

    Returns (H, U) with U unimodular, U*m = H, pivots positive, entries above
    each pivot reduced into [0, pivot), zero rows at the bottom.
    """
    rows = [list(r) for r in m]
    nr, nc = shape(rows)
    u = identity(nr)
    r = 0
    for c in range(nc):
        piv = next((i for i in range(r, nr) if rows[i][c] != 0), None)
        if piv is None:
            continue
        if piv != r:
            rows[r], rows[piv] = rows[piv], rows[r]
            u[r], u[piv] = u[piv], u[r]
        for i in range(r + 1, nr):
            b = rows[i][c]
            if b == 0:
                continue
            a = rows[r][c]
            g, x, y = xgcd(a, b)
            p, q = a // g, b // g
            rows[r], rows[i] = (
                [x * rr + y * ri for rr, ri in zip(rows[r], rows[i])],
                [-q * rr + p * ri for rr, ri in zip(rows[r], rows[i])],
            )
            u[r], u[i] = (
                [x * rr + y * ri for rr, ri in zip(u[r], u[i])],
                [-q * rr + p * ri for rr, ri in zip(u[r], u[i])],
            )
        if rows[r][c] < 0:
            rows[r] = [-x for x in rows[r]]
            u[r] = [-x for x in u[r]]
        for i in range(r):
            q = rows[i][c] // rows[r][c]
            if q:
                rows[i] = [a - q * b for a, b in zip(rows[i], rows[r])]
                u[i] = [a - q * b for a, b in zip(u[i], u[r])]
        r += 1
        if r == nr:
            break
    return rows, u


def hnf_rows(m: Matrix) -> tuple[tuple[int, ...], ...]:
    """Canonical basis (HNF, zero rows dropped) of the row lattice of m."""
    if not m:
        return ()
    h, _ = hnf(m)
    return tuple(tuple(r) for r in h if any(r))


def left_kernel(m: Matrix) -> tuple[tuple[int, ...], ...]:
    """Basis of the integer lattice {a : a*m = 0}."""
    h, u = hnf(m)
    return tuple(tuple(u[i]) for i in range(len(h)) if not any(h[i]))


def right_kernel(m: Matrix) -> tuple[tuple[int, ...], ...]:
    return left_kernel(transpose(m))


def snf(m: Matrix) -> tuple[list[list[int]], list[list[int]], list[list[int]]]:
    """Smith normal form: (S, U, V) with U*m*V = S diagonal, d1 | d2 | ...

    Diagonal entries are nonnegative; U, V are unimodular.
    """
    a = [list(r) for r in m]
    nr, nc = shape(a)
    u = identity(nr)
    v = identity(nc)

    def row_step(t: int) -> None:
        # plain subtraction when the pivot divides; gcd rotation (which
        # strictly shrinks the pivot) only when it does not
        for i in range(t + 1, nr):
            b = a[i][t]
            if b == 0:
                continue
            p_ = a[t][t]
            if p_ != 0 and b % p_ == 0:
                q = b // p_
                a[i] = [ri - q * rt for rt, ri in zip(a[t], a[i])]
                u[i] = [ri - q * rt for rt, ri in zip(u[t], u[i])]
                continue
            g, x, y = xgcd(p_, b)
            pp, qq = p_ // g, b // g
            a[t], a[i] = (
                [x * rt + y * ri for rt, ri in zip(a[t], a[i])],
                [-qq * rt + pp * ri for rt, ri in zip(a[t], a[i])],
            )
            u[t], u[i] = (
                [x * rt + y * ri for rt, ri in zip(u[t], u[i])],
                [-qq * rt + pp * ri for rt, ri in zip(u[t], u[i])],
            )

    def col_step(t: int) -> None:
        for j in range(t + 1, nc):
            b = a[t][j]
            if b == 0:
                continue
            p_ = a[t][t]
            if p_ != 0 and b % p_ == 0:
                q = b // p_
                for i in range(nr):
                    a[i][j] -= q * a[i][t]
                for i in range(nc):
                    v[i][j] -= q * v[i][t]
                continue
            g, x, y = xgcd(p_, b)
            pp, qq = p_ // g, b // g
            for i in range(nr):
                at, aj = a[i][t], a[i][j]
                a[i][t] = x * at + y * aj
                a[i][j] = -qq * at + pp * aj
            for i in range(nc):
                vt, vj = v[i][t], v[i][j]
                v[i][t] = x * vt + y * vj
                v[i][j] = -qq * vt + pp * vj

    for t in range(min(nr, nc)):
        # deterministic pivot: smallest |entry| in the trailing block, first wins
        best = None
        for i in range(t, nr):
            for j in range(t, nc):
                if a[i][j] != 0 and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        i, j = best
        if i != t:
            a[t], a[i] = a[i], a[t]
            u[t], u[i] = u[i], u[t]
        if j != t:
            for row in a:
                row[t], row[j] = row[j], row[t]
            for row in v:
                row[t], row[j] = row[j], row[t]
        while True:
            row_step(t)
            col_step(t)
            if any(a[i][t] for i in range(t + 1, nr)):
                continue
            # enforce divisibility of the trailing block by the pivot
            p_ = a[t][t]
            culprit = None
            for i in range(t + 1, nr):
                for j in range(t + 1, nc):
                    if a[i][j] % p_:
                        culprit = i
                        break
                if culprit is not None:
                    break
            if culprit is None:
                break
            a[t] = [x + y for x, y in zip(a[t], a[culprit])]
            u[t] = [x + y for x, y in zip(u[t], u[culprit])]
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
    return a, u, v


def invariant_factors(m: Matrix) -> tuple[int, ...]:
    s, _, _ = snf(m)
    return tuple(s[i][i] for i in range(min(shape(s))) if s[i][i] != 0)


# ---------------------------------------------------------------------------
# determinants, rational solving


def det(m: Matrix):
    """Exact determinant (fraction-free Bareiss for integer input)."""
    n, c = shape(m)
    if n != c:
        raise DimensionMismatch("determinant of a nonsquare matrix")
    if n == 0:
        return 1
    if all(isinstance(x, int) for row in m for x in row):
        a = [list(r) for r in m]
        sign = 1
        prev = 1
        for k in range(n - 1):
            if a[k][k] == 0:
                piv = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
                if piv is None:
                    return 0
                a[k], a[piv] = a[piv], a[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
                a[i][k] = 0
            prev = a[k][k]
        return sign * a[n - 1][n - 1]
    a = [[Fraction(x) for x in row] for row in m]
    out = Fraction(1)
    for k in range(n):
        piv = next((i for i in range(k, n) if a[i][k] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            out = -out
        out *= a[k][k]
        for i in range(k + 1, n):
            if a[i][k]:
                f = a[i][k] / a[k][k]
                a[i] = [x - f * y for x, y in zip(a[i], a[k])]
    return out


def frac_inv(m: Matrix) -> list[list[Fraction]]:
    """Exact inverse over the rationals; raises SingularMatrix."""
    n, c = shape(m)
    if n != c:
        raise DimensionMismatch("inverse of a nonsquare matrix")
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for col in range(n):
        piv = next((i for i in range(col, n) if a[i][col] != 0), None)
        if piv is None:
            raise SingularMatrix("matrix is singular")
        a[col], a[piv] = a[piv], a[col]
        p = a[col][col]
        a[col] = [x / p for x in a[col]]
        for i in range(n):
            if i != col and a[i][col]:
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[col])]
    return [row[n:] for row in a]


def int_inv(m: Matrix) -> list[list[int]]:
    """Inverse of a unimodular integer matrix, returned with int entries."""
    inv = frac_inv(m)
    out = []
    for row in inv:
        if any(x.denominator != 1 for x in row):
            raise SingularMatrix("matrix is not unimodular")
        out.append([int(x) for x in row])
    return out


def adjugate(m: Matrix) -> list[list[int]]:
    """det(m) * m^{-1} for a nonsingular integer matrix (integer entries)."""
    d = det(m)
    if d == 0:
        raise SingularMatrix("adjugate of a singular matrix")
    inv = frac_inv(m)
    return [[int(d * x) for x in row] for row in inv]


def solve(a: Matrix, rhs: Vector) -> tuple[Fraction, ...]:
    """Solve a . x = rhs exactly (a square nonsingular, column convention)."""
    return tuple(mat_vec(frac_inv(a), [Fraction(x) for x in rhs]))


def solve_underdetermined(a: Matrix, rhs: Vector) -> tuple[Fraction, ...]:
    """One exact solution of a . x = rhs with free variables pinned to zero.

    Raises SingularMatrix if the system is inconsistent.
    """
    nr, nc = shape(a)
    m = [[Fraction(x) for x in row] + [Fraction(r)] for row, r in zip(a, rhs)]
    pivots = []
    r = 0
    for c in range(nc):
        piv = next((i for i in range(r, nr) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        p = m[r][c]
        m[r] = [x / p for x in m[r]]
        for i in range(nr):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == nr:
            break
    for i in range(r, nr):
        if m[i][nc] != 0:
            raise SingularMatrix("inconsistent linear system")
    x = [Fraction(0)] * nc
    for i, c in enumerate(pivots):
        x[c] = m[i][nc]
    return tuple(x)


# ---------------------------------------------------------------------------
# coset enumeration: Z^n / A Z^n has exactly |det A| classes


def coset_reps(a: Matrix) -> list[tuple[int, ...]]:
    """Representatives of Z^n / A Z^n, one per class, |det A| of them.

    Enumeration is lexicographic over the Smith normal form diagonal box and
    mapped back through the row transform, so the output is deterministic.
    """
    n, c = shape(a)
    if n != c:
        raise DimensionMismatch("coset enumeration needs a square matrix")
    if det(a) == 0:
        raise SingularMatrix("coset enumeration needs det != 0")
    s, u, _ = snf(a)
    diag = [s[i][i] for i in range(n)]
    uinv = int_inv(u)
    return [mat_vec(uinv, r) for r in product(*(range(d) for d in diag))]


def same_coset(a: Matrix, x: Vector, y: Vector) -> bool:
    """Decide x - y in A Z^n (exact)."""
    diff = solve(a, vec_sub(x, y))
    return all(t.denominator == 1 for t in diff)


# ---------------------------------------------------------------------------
# exact signatures of symmetric forms


class Signature(NamedTuple):
    n_plus: int
    n_minus: int
    n_zero: int

    @property
    def index(self) -> int:
        """n_plus - n_minus, the signed count."""
        return self.n_plus - self.n_minus


def signature(s: Matrix) -> Signature:
    """Exact inertia of a symmetric rational matrix.

    Symmetric pivoting over the rationals: 1x1 pivots on nonzero diagonal
    entries, hyperbolic 2x2 pivots when the active diagonal vanishes.  No
    floating arithmetic anywhere.
    """
    n, c = shape(s)
    if n != c:
        raise DimensionMismatch("signature of a nonsquare matrix")
    a = [[Fraction(x) for x in row] for row in s]
    for i in range(n):
        for j in range(i + 1, n):
            if a[i][j] != a[j][i]:
                raise NotSymmetric("matrix is not symmetric")
    active = list(range(n))
    n_plus = n_minus = n_zero = 0
    while active:
        piv = next((i for i in active if a[i][i] != 0), None)
        if piv is not None:
            p = a[piv][piv]
            if p > 0:
                n_plus += 1
            else:
                n_minus += 1
            active.remove(piv)
            for i in active:
                f = a[i][piv] / p
                if f:
                    for j in active:
                        a[i][j] -= f * a[piv][j]
            continue
        pair = next(
            ((i, j) for i in active for j in active if j > i and a[i][j] != 0), None
        )
        if pair is None:
            n_zero += len(active)
            break
        i0, j0 = pair
        b = a[i0][j0]
        # the block [[0, b], [b, 0]] contributes one of each sign
        n_plus += 1
        n_minus += 1
        active.remove(i0)
        active.remove(j0)
        for i in active:
            ci, cj = a[i][i0], a[i][j0]
            if ci == 0 and cj == 0:
                continue
            for j in active:
                a[i][j] -= (ci * a[j0][j] + cj * a[i0][j]) / b
    return Signature(n_plus, n_minus, n_zero)


# ---------------------------------------------------------------------------
# unit phases and phase sums


@dataclass(frozen=True)
class UnitPhase:
    """The complex unit e^{i pi t} with exact rational exponent t in [0, 2)."""

    t: Fraction

    def __post_init__(self):
        object.__setattr__(self, "t", Fraction(self.t) % 2)

    @staticmethod
    def of(t) -> "UnitPhase":
        return UnitPhase(Fraction(t))

    def __mul__(self, other: "UnitPhase") -> "UnitPhase":
        return UnitPhase((self.t + other.t) % 2)

    def conj(self) -> "UnitPhase":
        return UnitPhase((-self.t) % 2)

    def __pow__(self, n: int) -> "UnitPhase":
        return UnitPhase((self.t * n) % 2)

    def value(self) -> complex:
        return cmath.exp(1j * math.pi * float(self.t))


UnitPhase.ONE = UnitPhase(Fraction(0))


@dataclass(frozen=True)
class PhaseSum:
    """amp2^{-1/2} * sum_j c_j e^{i pi t_j} with exact rational data.

    The magnitude prefactor is stored squared (amp2), so products of entries
    multiply amp2 exactly and never force irrational storage.  terms is a
    canonical tuple of (t, c) pairs: exponents normalized mod 2, equal
    exponents merged, zero coefficients dropped, sorted by exponent.
    """

    amp2: Fraction
    terms: tuple[tuple[Fraction, Fraction], ...]

    @classmethod
    def build(cls, amp2, pairs: Iterable[tuple]) -> "PhaseSum":
        amp2 = Fraction(amp2)
        if amp2 <= 0:
            raise ValueError("amp2 must be positive")
        acc: dict[Fraction, Fraction] = {}
        for t, c in pairs:
            t = Fraction(t) % 2
            c = Fraction(c)
            if t >= 1:  # fold e^{i pi (t+1)} = -e^{i pi t}: exponents in [0, 1)
                t -= 1
                c = -c
            acc[t] = acc.get(t, Fraction(0)) + c
        terms = tuple(sorted((t, c) for t, c in acc.items() if c != 0))
        return cls(amp2, terms)

    @classmethod
    def zero(cls) -> "PhaseSum":
        return cls(Fraction(1), ())

    @classmethod
    def unit(cls, phase: UnitPhase, amp2=1) -> "PhaseSum":
        return cls.build(amp2, [(phase.t, 1)])

    @property
    def nterms(self) -> int:
        return len(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def value(self) -> complex:
        s = sum(
            float(c) * cmath.exp(1j * math.pi * float(t)) for t, c in self.terms
        )
        return s / math.sqrt(float(self.amp2))

    def times_phase(self, phase: UnitPhase) -> "PhaseSum":
        return PhaseSum.build(self.amp2, [(t + phase.t, c) for t, c in self.terms])

    def __mul__(self, other: "PhaseSum") -> "PhaseSum":
        pairs = [
            (t1 + t2, c1 * c2) for t1, c1 in self.terms for t2, c2 in other.terms
        ]
        return PhaseSum.build(self.amp2 * other.amp2, pairs)

    def __add__(self, other: "PhaseSum") -> "PhaseSum":
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.amp2 != other.amp2:
            raise ValueError("cannot add phase sums with different prefactors")
        return PhaseSum.build(self.amp2, list(self.terms) + list(other.terms))


# ---------------------------------------------------------------------------
# Gauss sum reciprocity


def gauss_reciprocity_check(
    q: Matrix, a: int, w: Sequence = None
) -> tuple[complex, complex]:
    """Evaluate both sides of the reciprocity formula for Gauss sums.

    lhs = sum over q in (Z/aZ)^g of e^{(pi i / a) q^T Q q + 2 pi i w.q}
    rhs = |a^g / det Q|^{1/2} e^{(pi i / 4) sgn Q}
          * sum over m in Z^g/QZ^g of e^{- pi i a (m+w)^T Q^{-1} (m+w)}

    Both sides are returned; the caller compares them.
    """
    g, c = shape(q)
    if g != c:
        raise DimensionMismatch("Q must be square")
    for i in range(g):
        for j in range(g):
            if q[i][j] != q[j][i]:
                raise NotSymmetric("Q must be symmetric")
    if a <= 0 or a % 2:
        raise OddModulus("modulus a must be a positive even integer")
    if w is None:
        w = [Fraction(0)] * g
    w = [Fraction(x) for x in w]
    if len(w) != g:
        raise DimensionMismatch("w has wrong length")
    if any((a * x).denominator != 1 for x in w):
        raise ValueError("a*w must be integral")
    d = det(q)
    if d == 0:
        raise SingularMatrix("Q must be nonsingular")

    lhs = 0j
    for vec in product(range(a), repeat=g):
        t = Fraction(quad_form(vec, q, vec), a) + 2 * dot(w, vec)
        lhs += cmath.exp(1j * math.pi * float(t % 2))

    qinv = frac_inv(q)
    tail = 0j
    for m in coset_reps(q):
        mw = [Fraction(x) + y for x, y in zip(m, w)]
        t = -a * quad_form(mw, qinv, mw)
        tail += cmath.exp(1j * math.pi * float(t % 2))
    sig = signature(q)
    rhs = (
        math.sqrt(abs(a**g / float(d)))
        * cmath.exp(1j * math.pi * sig.index / 4)
        * tail
    )
    return lhs, rhs
