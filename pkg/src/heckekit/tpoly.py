"""Twisted polynomial model of the spherical parameter line.

One variable T over F_l, with the product twisted on odd-by-odd monomials:

    T^a * T^b = tau . T^{a+b} + T^{a+b+1}    when a and b are both odd,
    T^a * T^b = T^{a+b}                      otherwise,

extended bilinearly.  The result is commutative and associative (it embeds
into rational functions: T^{2i} -> X^{2i}/(X+tau)^i and similarly for odd
powers, which tp_localize realizes).  Polynomials are little-endian tuples,
as in gfp.
"""

from __future__ import annotations

import numpy as np

from .gfp import padd, pdivmod, pmul, pnormalize, pscale, rref_mod


def tp_mono(i, j, tau, l):
    """T^i * T^j as a coefficient tuple."""
    if i % 2 == 1 and j % 2 == 1:
        out = [0] * (i + j + 2)
        out[i + j] = tau % l
        out[i + j + 1] = 1
        return pnormalize(out)
    out = [0] * (i + j + 1)
    out[i + j] = 1
    return tuple(out)


def tp_mul(a, b, tau, l):
    out = ()
    for i, x in enumerate(a):
        if x % l == 0:
            continue
        for j, y in enumerate(b):
            if y % l == 0:
                continue
            out = padd(out, pscale(tp_mono(i, j, tau, l), x * y, l), l)
    return out


def tp_ideal_rows(fpoly, tau, l, top):
    """Coefficient rows of T^i * fpoly for i = 0..top, width top+deg(f)+2."""
    fpoly = pnormalize(fpoly)
    width = top + len(fpoly) + 2
    rows = np.zeros((top + 1, width), dtype=np.int64)
    for i in range(top + 1):
        v = tp_mul(tuple([0] * i + [1]), fpoly, tau, l)
        for d, c in enumerate(v):
            rows[i, d] = c
    return rows


def tp_reduce(p, fpoly, tau, l):
    """Normal form of p against the ideal generated by fpoly for *.

    Row-reduces the span of T^i * fpoly and eliminates p from the top
    degree down.  Asserts that the ideal pivots cover every degree from
    deg(fpoly) upward in the working range, so the normal form is the
    unique representative of degree < deg(fpoly).
    """
    p = pnormalize(tuple(c % l for c in p))
    fpoly = pnormalize(tuple(c % l for c in fpoly))
    if not fpoly:
        raise ZeroDivisionError("reduction by zero")
    degf = len(fpoly) - 1
    if degf == 0:
        return ()  # a unit generates everything
    top = max(len(p) - 1, degf) - degf + 2
    rows = tp_ideal_rows(fpoly, tau, l, top)
    width = rows.shape[1]
    # orient by descending degree so RREF pivots sit on leading terms
    R, piv = rref_mod(rows[:, ::-1], l)
    pivot_deg = {width - 1 - c: R[r] for r, c in enumerate(piv)}
    need = range(degf, len(p))
    missing = [d for d in need if d not in pivot_deg]
    assert not missing, "ideal does not cover degrees %s (tau=%d?)" % (missing, tau)
    r = np.zeros(width, dtype=np.int64)
    for d, c in enumerate(p):
        r[d] = c
    for d in sorted(pivot_deg, reverse=True):
        if r[d]:
            r = (r - r[d] * pivot_deg[d][::-1]) % l
    assert not r[degf:].any()
    return pnormalize(tuple(int(c) for c in r[:degf]))


# ---------------------------------------------------------------------------
# the localization picture: fractions num / (X + tau)^k over F_l


class Frac:
    """num(X) / (X+tau)^k, kept fully cancelled so equality is literal."""

    __slots__ = ("num", "k", "tau", "l")

    def __init__(self, num, k, tau, l):
        num = pnormalize(tuple(c % l for c in num))
        den = (tau % l, 1)
        while k > 0 and num:
            q, rem = pdivmod(num, den, l)
            if rem:
                break
            num, k = q, k - 1
        if not num:
            k = 0
        self.num, self.k, self.tau, self.l = num, k, tau % l, l

    def __eq__(self, other):
        return (self.num, self.k, self.tau, self.l) == (
            other.num,
            other.k,
            other.tau,
            other.l,
        )

    def __hash__(self):
        return hash((self.num, self.k, self.tau, self.l))

    def __add__(self, other):
        assert (self.tau, self.l) == (other.tau, other.l)
        den = (self.tau, 1)
        hi = max(self.k, other.k)
        a = self.num
        for _ in range(hi - self.k):
            a = pmul(a, den, self.l)
        b = other.num
        for _ in range(hi - other.k):
            b = pmul(b, den, self.l)
        return Frac(padd(a, b, self.l), hi, self.tau, self.l)

    def __mul__(self, other):
        assert (self.tau, self.l) == (other.tau, other.l)
        return Frac(pmul(self.num, other.num, self.l), self.k + other.k, self.tau, self.l)

    def __repr__(self):
        return "Frac(%s, k=%d)" % (list(self.num), self.k)


def tp_localize(p, tau, l):
    """Image of p under T^{2i} -> X^{2i}/(X+tau)^i, T^{2i+1} -> X^{2i+1}/(X+tau)^i."""
    out = Frac((), 0, tau, l)
    for d, c in enumerate(pnormalize(p)):
        if c % l == 0:
            continue
        mono = [0] * (d + 1)
        mono[d] = c % l
        out = out + Frac(tuple(mono), d // 2, tau, l)
    return out
