"""Minimal linear recurrences of rational sequences (Berlekamp-Massey over Q)."""
from fractions import Fraction

from ..errors import NoRecurrence


def berlekamp_massey(seq):
    """Connection polynomial C (C[0] = 1) and complexity L with
    sum_{i=0}^{L} C[i] a_{n-i} = 0 for all L <= n < len(seq)."""
    a = [Fraction(x) for x in seq]
    C, B = [Fraction(1)], [Fraction(1)]
    L, m, b = 0, 1, Fraction(1)
    for n in range(len(a)):
        d = a[n]
        for i in range(1, L + 1):
            if i < len(C):
                d += C[i] * a[n - i]
        if d == 0:
            m += 1
            continue
        coef = d / b
        T = list(C)
        need = len(B) + m
        if len(C) < need:
            C = C + [Fraction(0)] * (need - len(C))
        for i, x in enumerate(B):
            C[i + m] -= coef * x
        if 2 * L <= n:
            L, B, b, m = n + 1 - L, T, d, 1
        else:
            m += 1
    C = C[: L + 1] + [Fraction(0)] * max(0, L + 1 - len(C))
    return C, L


def rational_generating_function(seq, margin=4):
    """Numerator and denominator (coefficient lists in x) of sum a_n x^n.

    The recurrence found on seq[:-margin] must predict the last `margin` terms.
    """
    if len(seq) <= margin + 1:
        raise NoRecurrence("too few terms")
    head = seq[: len(seq) - margin]
    C, L = berlekamp_massey(head)
    if 2 * L > len(head):
        raise NoRecurrence(f"complexity {L} not certified by {len(head)} terms")
    a = [Fraction(x) for x in seq]
    for n in range(L, len(a)):
        if sum(C[i] * a[n - i] for i in range(L + 1)) != 0:
            raise NoRecurrence(f"recurrence fails at n = {n}")
    num = []
    for n in range(L):
        num.append(sum(C[i] * a[n - i] for i in range(min(n, L) + 1)))
    while num and num[-1] == 0:
        num.pop()
    den = list(C)
    while len(den) > 1 and den[-1] == 0:
        den.pop()
    return num, den
