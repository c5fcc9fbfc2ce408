"""Small finite fields and exact linear algebra mod a prime.

Two layers live here.  Tiny fields F_q (q = p^a) are realized through dense
lookup tables on integer codes and drive the residue-field geometry, where
matrices stay 4x4 or smaller.  Row reduction mod a prime l is numpy-backed
and drives the representation-theoretic solves, where matrices can reach a
thousand columns.  Everything is exact; nothing here ever rounds.
"""

from __future__ import annotations

import itertools

import numpy as np

from .errors import NoRelationWithinBound, TooLarge

# ---------------------------------------------------------------------------
# fields on integer codes


# monic modulus coefficients, little-endian, for the extensions we admit
_MODPOLY = {
    4: (1, 1, 1),      # x^2 + x + 1 over F_2
    8: (1, 1, 0, 1),   # x^3 + x + 1 over F_2
    9: (1, 0, 1),      # x^2 + 1 over F_3
}


def _factor_prime_power(q):
    for p in range(2, q + 1):
        if q % p == 0:
            a = 0
            m = q
            while m % p == 0:
                m //= p
                a += 1
            if m != 1:
                raise TooLarge("q=%d is not a prime power" % q)
            return p, a
    raise TooLarge("bad q=%d" % q)


def _digits(code, p, a):
    out = []
    for _ in range(a):
        out.append(code % p)
        code //= p
    return out


def _code(digs, p):
    c = 0
    for d in reversed(digs):
        c = c * p + d
    return c


class Field:
    """F_q on codes 0..q-1, with code 0 = zero and code 1 = one.

    For prime q the code is the residue itself.  For q = p^a codes are
    little-endian base-p digit strings of polynomial representatives, so
    the additive structure is digitwise mod p and multiplication reduces
    against the modulus in _MODPOLY.
    """

    def __init__(self, q):
        p, a = _factor_prime_power(q)
        if a > 1 and q not in _MODPOLY:
            raise TooLarge("no modulus on file for q=%d" % q)
        self.q = q
        self.p = p
        self.deg = a
        rng = np.arange(q, dtype=np.int64)
        if a == 1:
            self.ADD = (rng[:, None] + rng[None, :]) % q
            self.MUL = (rng[:, None] * rng[None, :]) % q
            self.NEG = (-rng) % q
        else:
            mod = _MODPOLY[q]
            self.ADD = np.zeros((q, q), dtype=np.int64)
            self.MUL = np.zeros((q, q), dtype=np.int64)
            self.NEG = np.zeros(q, dtype=np.int64)
            for x in range(q):
                dx = _digits(x, p, a)
                self.NEG[x] = _code([(-d) % p for d in dx], p)
                for y in range(q):
                    dy = _digits(y, p, a)
                    self.ADD[x, y] = _code([(u + v) % p for u, v in zip(dx, dy)], p)
                    prod = [0] * (2 * a - 1)
                    for i, u in enumerate(dx):
                        for j, v in enumerate(dy):
                            prod[i + j] = (prod[i + j] + u * v) % p
                    # reduce degree >= a terms against the monic modulus
                    for d in range(2 * a - 2, a - 1, -1):
                        c = prod[d]
                        if c:
                            prod[d] = 0
                            for i in range(a):
                                prod[d - a + i] = (prod[d - a + i] - c * mod[i]) % p
                    self.MUL[x, y] = _code(prod[:a], p)
        self.INV = np.zeros(q, dtype=np.int64)
        for x in range(1, q):
            for y in range(1, q):
                if self.MUL[x, y] == 1:
                    self.INV[x] = y
                    break

    def add(self, x, y):
        return int(self.ADD[x, y])

    def sub(self, x, y):
        return int(self.ADD[x, self.NEG[y]])

    def mul(self, x, y):
        return int(self.MUL[x, y])

    def neg(self, x):
        return int(self.NEG[x])

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError("inverse of 0 in F_%d" % self.q)
        return int(self.INV[x])

    def pow(self, x, e):
        if e < 0:
            x, e = self.inv(x), -e
        r = 1
        for _ in range(e):
            r = self.mul(r, x)
        return r

    def elements(self):
        return range(self.q)

    def units(self):
        return range(1, self.q)

    def unit_order(self, x):
        if x == 0:
            raise ZeroDivisionError("0 has no multiplicative order")
        r, n = x, 1
        while r != 1:
            r = self.mul(r, x)
            n += 1
        return n

    def unit_generator(self):
        for x in self.units():
            if self.unit_order(x) == self.q - 1:
                return x
        raise AssertionError("F_%d^x has no generator?" % self.q)

    def __repr__(self):
        return "Field(%d)" % self.q


_FIELD_CACHE = {}


def GF(q):
    """Memoized field constructor; fields are stateless so sharing is safe."""
    if q not in _FIELD_CACHE:
        _FIELD_CACHE[q] = Field(q)
    return _FIELD_CACHE[q]


# ---------------------------------------------------------------------------
# matrices over a Field (arrays of codes; everything here is tiny)


def fq_matmul(F, A, B):
    A = np.asarray(A, dtype=np.int64)
    B = np.asarray(B, dtype=np.int64)
    n, m = A.shape
    m2, r = B.shape
    assert m == m2
    C = np.zeros((n, r), dtype=np.int64)
    for k in range(m):
        C = F.ADD[C, F.MUL[A[:, k][:, None], B[k, :][None, :]]]
    return C


def fq_rref(F, A):
    """Reduced row echelon form over F; returns (R, pivot_columns)."""
    R = np.array(A, dtype=np.int64)
    rows, cols = R.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        hit = -1
        for i in range(r, rows):
            if R[i, c]:
                hit = i
                break
        if hit < 0:
            continue
        if hit != r:
            R[[r, hit]] = R[[hit, r]]
        s = F.inv(int(R[r, c]))
        R[r] = F.MUL[R[r], s]
        for i in range(rows):
            if i != r and R[i, c]:
                f = int(R[i, c])
                R[i] = F.ADD[R[i], F.NEG[F.MUL[R[r], f]]]
        pivots.append(c)
        r += 1
    return R, pivots


def fq_rank(F, A):
    return len(fq_rref(F, A)[1])


def fq_inv_matrix(F, A):
    A = np.asarray(A, dtype=np.int64)
    n = A.shape[0]
    assert A.shape == (n, n)
    aug = np.concatenate([A, np.eye(n, dtype=np.int64)], axis=1)
    R, pivots = fq_rref(F, aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("matrix not invertible over F_%d" % F.q)
    return R[:, n:]


def fq_eye(n):
    return np.eye(n, dtype=np.int64)


# ---------------------------------------------------------------------------
# numpy linear algebra mod a prime l


def rref_mod(A, l):
    """Reduced row echelon form of an integer matrix mod l; (R, pivots)."""
    R = np.array(A, dtype=np.int64) % l
    if R.ndim != 2:
        raise ValueError("need a 2d array")
    rows, cols = R.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(R[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            R[[r, i]] = R[[i, r]]
        R[r] = (R[r] * pow(int(R[r, c]), -1, l)) % l
        hit = np.nonzero(R[:, c])[0]
        hit = hit[hit != r]
        if hit.size:
            R[hit] = (R[hit] - np.outer(R[hit, c], R[r])) % l
        pivots.append(c)
        r += 1
    return R, pivots


def rank_mod(A, l):
    return len(rref_mod(A, l)[1])


def nullspace_mod(A, l):
    """Rows spanning {x : A x = 0 mod l}, in reduced form."""
    A = np.asarray(A, dtype=np.int64)
    rows, cols = A.shape
    R, pivots = rref_mod(A, l)
    free = [c for c in range(cols) if c not in pivots]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for k, fc in enumerate(free):
        basis[k, fc] = 1
        for r, pc in enumerate(pivots):
            basis[k, pc] = (-R[r, fc]) % l
    return basis


def solve_mod(A, b, l):
    """One solution x of A x = b mod l, or None if the system is inconsistent."""
    A = np.asarray(A, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64).reshape(-1)
    rows, cols = A.shape
    assert b.shape == (rows,)
    R, pivots = rref_mod(np.concatenate([A, b[:, None] % l], axis=1), l)
    if cols in pivots:
        return None
    x = np.zeros(cols, dtype=np.int64)
    for r, pc in enumerate(pivots):
        x[pc] = R[r, cols]
    return x


def matinv_mod(A, l):
    A = np.asarray(A, dtype=np.int64)
    n = A.shape[0]
    assert A.shape == (n, n)
    R, pivots = rref_mod(np.concatenate([A, np.eye(n, dtype=np.int64)], axis=1), l)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("matrix not invertible mod %d" % l)
    return R[:, n:]


def kron_mod(A, B, l):
    return np.kron(np.asarray(A, dtype=np.int64), np.asarray(B, dtype=np.int64)) % l


# ---------------------------------------------------------------------------
# dense polynomials mod l, little-endian coefficient tuples


def pnormalize(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def padd(a, b, l):
    n = max(len(a), len(b))
    out = [0] * n
    for i, x in enumerate(a):
        out[i] = x % l
    for i, x in enumerate(b):
        out[i] = (out[i] + x) % l
    return pnormalize(out)


def psub(a, b, l):
    return padd(a, [(-x) % l for x in b], l)


def pscale(a, s, l):
    return pnormalize([(x * s) % l for x in a])


def pmul(a, b, l):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x % l == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] = (out[i + j] + x * y) % l
    return pnormalize(out)


def pdivmod(a, b, l):
    a = list(pnormalize([x % l for x in a]))
    b = pnormalize([x % l for x in b])
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    binv = pow(b[-1], -1, l)
    q = [0] * max(0, len(a) - len(b) + 1)
    while len(a) >= len(b):
        s = (a[-1] * binv) % l
        d = len(a) - len(b)
        q[d] = s
        for i, x in enumerate(b):
            a[d + i] = (a[d + i] - s * x) % l
        while a and a[-1] == 0:
            a.pop()
    return pnormalize(q), pnormalize(a)


def pmonic(a, l):
    a = pnormalize([x % l for x in a])
    if not a:
        return a
    return pscale(a, pow(a[-1], -1, l), l)


def pgcd(a, b, l):
    a, b = pnormalize([x % l for x in a]), pnormalize([x % l for x in b])
    while b:
        a, b = b, pdivmod(a, b, l)[1]
    return pmonic(a, l)


def peval(a, x, l):
    r = 0
    for c in reversed(a):
        r = (r * x + c) % l
    return r


def pfactor(a, l, cap=100000):
    """Monic irreducible factors with multiplicity, by trial division.

    Fine for the degrees this package meets (<= ~8 over l <= 7); raises
    TooLarge rather than grind through a huge candidate space.
    """
    a = pnormalize([x % l for x in a])
    if len(a) < 2:
        raise ValueError("constant polynomial")
    a = pmonic(a, l)
    out = []
    d = 1
    n_cands = 0
    while len(a) - 1 >= 2 * d:
        n_cands += l ** d
        if n_cands > cap:
            raise TooLarge("factor search space too big")
        for tail in itertools.product(range(l), repeat=d):
            cand = pnormalize(list(tail) + [1])
            if len(cand) != d + 1:
                continue
            m = 0
            while True:
                q, r = pdivmod(a, cand, l)
                if r:
                    break
                a, m = q, m + 1
            if m:
                out.append((cand, m))
            if len(a) - 1 < 2 * d:
                break
        d += 1
    if len(a) > 1:
        out.append((a, 1))
    return out


def poly_str(a, var="T"):
    a = pnormalize(a)
    if not a:
        return "0"
    bits = []
    for i in range(len(a) - 1, -1, -1):
        c = a[i]
        if c == 0:
            continue
        if i == 0:
            term = str(c)
        else:
            pw = var if i == 1 else "%s^%d" % (var, i)
            term = pw if c == 1 else "%d*%s" % (c, pw)
        bits.append(term)
    return " + ".join(bits)


# ---------------------------------------------------------------------------
# minimal monic linear relation among a stream of vectors


def first_monic_dependence(vectors, l, max_len=12):
    """Smallest d with v_d in span(v_0..v_{d-1}) mod l; returns monic coeffs.

    The return value is the little-endian tuple r of length d+1, r[d] = 1,
    with sum_i r[i] v_i = 0.  Minimality makes r unique, which is asserted.
    Raises NoRelationWithinBound if no relation shows up by max_len.
    """
    seen = []
    for d, v in enumerate(vectors):
        if d > max_len:
            break
        v = np.asarray(v, dtype=np.int64).reshape(-1) % l
        if seen:
            A = np.stack(seen, axis=1)
            x = solve_mod(A, v, l)
            if x is not None:
                assert rank_mod(A, l) == len(seen), "earlier vectors dependent?"
                rel = [(-c) % l for c in x.tolist()] + [1]
                return pnormalize(rel)
        elif not v.any():
            return (1,)  # v_0 = 0: the relation is just "1 * v_0"
        seen.append(v)
    raise NoRelationWithinBound("no monic relation up to degree %d" % max_len)
