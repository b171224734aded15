"""Exact linear solves over Q and over Q(alpha).

All vectors are row vectors and systems are written ``x @ A = u``, the
orientation used for damped spectral rankings.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from ..errors import SingularMatrixError
from .polynomial import Polynomial, poly_gcd
from .ratfunc import RationalFunction


def vec_mat(x: Sequence, A: Sequence[Sequence]) -> list:
    """Row vector times matrix, exact for any ring elements."""
    n = len(A)
    m = len(A[0]) if n else 0
    out = []
    for j in range(m):
        acc = 0
        for i in range(n):
            a = A[i][j]
            if a:
                acc = x[i] * a + acc
        out.append(acc)
    return out


def solve_left(u: Sequence, A: Sequence[Sequence]) -> list:
    """Solve ``x @ A = u`` by Gauss-Jordan elimination over a field.

    Works for Fractions and for :class:`RationalFunction` entries alike;
    the first nonzero entry in each column is used as pivot.
    """
    n = len(A)
    if any(len(row) != n for row in A):
        raise ValueError("matrix must be square")
    if len(u) != n:
        raise ValueError(f"dimension mismatch: vector of length {len(u)}, matrix {n}x{n}")
    # transpose: equation i is sum_j A[j][i] x_j = u_i
    M = [[A[j][i] for j in range(n)] + [u[i]] for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col]), None)
        if piv is None:
            raise SingularMatrixError(col)
        if piv != col:
            M[col], M[piv] = M[piv], M[col]
        prow = M[col]
        inv = 1 / prow[col]
        prow = [e * inv if e else e for e in prow]
        M[col] = prow
        for r in range(n):
            if r == col:
                continue
            f = M[r][col]
            if not f:
                continue
            row = M[r]
            M[r] = [row[j] - f * prow[j] if prow[j] else row[j] for j in range(n + 1)]
    return [M[i][n] for i in range(n)]


def _poly_lcm(p: Polynomial, q: Polynomial) -> Polynomial:
    if p.degree < 1:
        return q.monic()
    if q.degree < 1:
        return p.monic()
    return (p * q).exact_div(poly_gcd(p, q)).monic()


def _as_rf(e) -> RationalFunction:
    if isinstance(e, RationalFunction):
        return e
    return RationalFunction._coerce(e)


def solve_parametric(u: Sequence, A: Sequence[Sequence]) -> list[RationalFunction]:
    """Solve ``x @ A = u`` exactly over the field of rational functions.

    Each equation is scaled to polynomial form, then eliminated with
    Bareiss' fraction-free scheme (all intermediate divisions are exact
    polynomial divisions), and finally back-substituted in Q(alpha).
    Entries of ``u``/``A`` may be RationalFunctions, Polynomials or
    rationals.
    """
    n = len(A)
    if any(len(row) != n for row in A):
        raise ValueError("matrix must be square")
    if len(u) != n:
        raise ValueError(f"dimension mismatch: vector of length {len(u)}, matrix {n}x{n}")

    M: list[list[Polynomial]] = []
    for i in range(n):
        row = [_as_rf(A[j][i]) for j in range(n)] + [_as_rf(u[i])]
        den = Polynomial.constant(1)
        for e in row:
            if e:
                den = _poly_lcm(den, e.den)
        M.append([(e.num * den).exact_div(e.den) if e else Polynomial() for e in row])

    prev = Polynomial.constant(1)
    for k in range(n):
        cands = [r for r in range(k, n) if M[r][k]]
        if not cands:
            raise SingularMatrixError(k)
        piv = min(cands, key=lambda r: (M[r][k].degree, r))
        if piv != k:
            M[k], M[piv] = M[piv], M[k]
        pk = M[k]
        d = pk[k]
        for i in range(k + 1, n):
            row = M[i]
            f = row[k]
            for j in range(k + 1, n + 1):
                t = d * row[j]
                if f and pk[j]:
                    t = t - f * pk[j]
                row[j] = t.exact_div(prev)
            row[k] = Polynomial()
        prev = d

    x: list[RationalFunction] = [RationalFunction.constant(0)] * n
    for i in range(n - 1, -1, -1):
        acc = RationalFunction(M[i][n], _reduced=True) if M[i][n] else RationalFunction.constant(0)
        for j in range(i + 1, n):
            if M[i][j] and x[j]:
                acc = acc - RationalFunction(M[i][j], _reduced=True) * x[j]
        x[i] = acc / RationalFunction(M[i][i], _reduced=True)
    return x


def substitute(A: Sequence[Sequence], q) -> list[list[Fraction]]:
    """Evaluate a matrix of rational functions / polynomials at ``q``."""
    out = []
    for row in A:
        out.append([e(q) if isinstance(e, (RationalFunction, Polynomial)) else Fraction(e) for e in row])
    return out
