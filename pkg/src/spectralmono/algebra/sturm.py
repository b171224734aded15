"""Sturm sequences and exact counting of distinct real roots."""

from __future__ import annotations

from fractions import Fraction

from .polynomial import Polynomial, Scalar, as_fraction, square_free_part


def sturm_chain(p: Polynomial) -> list[Polynomial]:
    """Sturm sequence of the square-free part of ``p``.

    ``p0 = p / gcd(p, p')``, ``p1 = p0'``, ``p_{i+1} = -rem(p_{i-1}, p_i)``,
    stopping at a nonzero constant. Repeated roots are counted once.
    """
    if not p:
        raise ValueError("Sturm chain of the zero polynomial")
    p0 = square_free_part(p)
    if p0.degree < 1:
        return [p0]
    chain = [p0, p0.derivative()]
    while chain[-1].degree > 0:
        r = chain[-2].divrem(chain[-1])[1]
        if not r:
            # cannot happen for square-free p0
            break
        chain.append(-r)
    return chain


def sign_variations(chain: list[Polynomial], x: Scalar) -> int:
    """Sign changes of the chain evaluated at ``x``, zeros dropped."""
    x = as_fraction(x)
    changes = 0
    last = 0
    for q in chain:
        s = q.sign_at(x)
        if s == 0:
            continue
        if last and s != last:
            changes += 1
        last = s
    return changes


def count_real_roots(p: Polynomial, a: Scalar, b: Scalar, chain: list[Polynomial] | None = None) -> int:
    """Number of distinct real roots of ``p`` in the half-open interval (a, b]."""
    a, b = as_fraction(a), as_fraction(b)
    if not a < b:
        raise ValueError(f"invalid interval ({a}, {b}]")
    if chain is None:
        chain = sturm_chain(p)
    return sign_variations(chain, a) - sign_variations(chain, b)


def count_roots_between(
    p: Polynomial,
    a: Scalar,
    b: Scalar,
    *,
    include_a: bool = False,
    include_b: bool = True,
    chain: list[Polynomial] | None = None,
) -> int:
    """Like :func:`count_real_roots` with explicit endpoint semantics."""
    a, b = as_fraction(a), as_fraction(b)
    if chain is None:
        chain = sturm_chain(p)
    n = count_real_roots(p, a, b, chain=chain)
    if include_a and p(a) == 0:
        n += 1
    if not include_b and p(b) == 0:
        n -= 1
    return n


def isolate_real_roots(p: Polynomial, a: Scalar, b: Scalar, width: Scalar = Fraction(1, 10**6)) -> list[tuple[Fraction, Fraction]]:
    """Disjoint intervals (lo, hi], each holding exactly one root in (a, b].

    Bisects until every interval is narrower than ``width``.
    """
    chain = sturm_chain(p)
    width = as_fraction(width)
    out = []
    stack = [(as_fraction(a), as_fraction(b))]
    while stack:
        lo, hi = stack.pop()
        n = count_real_roots(p, lo, hi, chain=chain)
        if n == 0:
            continue
        if n == 1 and hi - lo <= width:
            out.append((lo, hi))
            continue
        mid = (lo + hi) / 2
        stack.append((mid, hi))
        stack.append((lo, mid))
    return sorted(out)
