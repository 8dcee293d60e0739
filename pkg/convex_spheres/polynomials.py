"""Exact polynomials in one variable t (sympy Poly over QQ) and a Sturm real-root test."""

from fractions import Fraction
from math import factorial, prod
from typing import List, Sequence

from sympy import QQ, Poly, Rational, Symbol, sturm

from .errors import ZeroPolynomial

T = Symbol("t")


def poly(coefficients: Sequence) -> Poly:
    """Polynomial from ascending coefficients, e.g. [1, 15, 15, 1]."""
    expr = sum(Rational(str(c)) * T**i for i, c in enumerate(coefficients))
    return Poly(expr, T, domain=QQ)


def binomial_basis(j: int) -> Poly:
    """C(t, j) as a polynomial in t."""
    return Poly(Rational(1, factorial(j)) * prod(T - i for i in range(j)), T, domain=QQ)


def from_chain_counts(counts: Sequence[int]) -> Poly:
    """Σ_j counts[j]·C(t, j)."""
    total = Poly(0, T, domain=QQ)
    for j, c in enumerate(counts):
        if c:
            total += binomial_basis(j) * c
    return total


def coefficients(p: Poly) -> List[Fraction]:
    """Ascending coefficients as Fractions; [] for the zero polynomial."""
    if p.is_zero:
        return []
    return [Fraction(int(c.p), int(c.q)) for c in reversed(p.all_coeffs())]


def serialize(p: Poly) -> List[str]:
    return [str(c) for c in coefficients(p)]


def evaluate(p: Poly, value) -> Fraction:
    v = Rational(p.eval(value))
    return Fraction(int(v.p), int(v.q))


def negate_variable(p: Poly) -> Poly:
    """p(-t)"""
    return Poly(p.as_expr().subs(T, -T), T, domain=QQ)


def _variations(signs: List[int]) -> int:
    nonzero = [s for s in signs if s]
    return sum(1 for a, b in zip(nonzero, nonzero[1:]) if a != b)


def _sign(x) -> int:
    if x > 0:
        return 1
    return -1 if x < 0 else 0


def real_root_count(p: Poly) -> int:
    """Distinct real roots of p, from the Sturm sequence at -∞ and +∞."""
    if p.is_zero:
        raise ZeroPolynomial("the zero polynomial has no root count")
    if p.degree() <= 0:
        return 0
    seq = sturm(p)
    at_plus = [_sign(q.LC()) for q in seq]
    at_minus = [_sign(q.LC()) * (-1) ** q.degree() for q in seq]
    return _variations(at_minus) - _variations(at_plus)


def is_real_rooted(p: Poly) -> bool:
    """True iff every complex root of p is real.

    Multiplicities are removed first: p is real-rooted exactly when its
    square-free part has as many distinct real roots as its degree.
    """
    if p.is_zero:
        raise ZeroPolynomial("real-rootedness of the zero polynomial is undefined")
    core = p.sqf_part()
    if core.degree() <= 0:
        return True
    return real_root_count(core) == core.degree()
