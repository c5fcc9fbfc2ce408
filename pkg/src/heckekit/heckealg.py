"""Recursive multiplication engine for the affine double-coset algebra.

Elements are dicts {Weyl element: coefficient}.  Coefficients live in a
pluggable backend: matrices acting on a concrete coefficient system, or
formal words in named generators for structure-constant work.  A basis
symbol [eta]^j_c stands for the function supported on the coset of eta
with value (central element)^j * c there.

The engine computes structure constants once per (eta, delta) pair:

  * lengths add            ->  [eta.delta] with coefficient 1;
  * two letters cancel     ->  tau * [eta.delta]  +  [eta'.delta]^1,
                               where eta' drops the last letter of eta;
  * longer eta             ->  split eta = eta1.eta2 and reassociate;
  * longer delta           ->  split delta = delta2.delta1 likewise.

Only the cancellation row is an actual relation; everything else is
bookkeeping, so the scalars (s, j) are independent of the coefficients
and get memoised per engine.
"""

from __future__ import annotations

import numpy as np

from .errors import ParityViolation
from .gfp import pdivmod
from .weyl import (
    LETTER,
    W,
    W_ID,
    W_W,
    is_length_additive,
    left_factor,
    length,
    right_factor,
    shape_class,
    word_of,
)


class MatrixCoefficients:
    """Coefficients are endomorphisms of a concrete coefficient system."""

    def __init__(self, system):
        self.system = system
        self.l = system.l
        self.tau = system.tau % system.l
        self.tau_inv = pow(self.tau, -1, self.l)

    def one(self):
        return np.eye(self.system.dim, dtype=np.int64)

    def compose(self, a, b):
        return (a @ b) % self.l

    def tstar(self, c, j):
        if j == 0:
            return c % self.l
        return (self.system.tstar_power(j) @ c) % self.l

    def add(self, a, b):
        return (a + b) % self.l

    def scale(self, c, s):
        return (c * int(s)) % self.l

    def is_zero(self, c):
        return not (c % self.l).any()

    def validate(self, eta, c):
        if not self.system.in_parity_span(c, int(eta.flip)):
            raise ParityViolation("coefficient has wrong equivariance for %r" % (eta,))


class FreeCoefficients:
    """Formal noncommutative words in named generators, times powers of
    the central element.  A coefficient is {(word, j): scalar mod l}."""

    def __init__(self, generators, l, tau, fpoly=None):
        self.generators = dict(generators)  # name -> parity (0 or 1)
        self.l = l
        self.tau = tau % l
        self.tau_inv = pow(self.tau, -1, l)
        self.fpoly = tuple(fpoly) if fpoly else None
        if self.fpoly:
            assert self.fpoly[-1] % l == 1, "reduction polynomial must be monic"
        self._jred = {}

    def one(self):
        return {((), 0): 1}

    def word(self, *names, j=0, scalar=1):
        for n in names:
            if n not in self.generators:
                raise KeyError("unknown generator %r" % (n,))
        return self._canon({(tuple(names), j): scalar % self.l})

    def _reduce_power(self, j):
        if self.fpoly is None or j < len(self.fpoly) - 1:
            return {j: 1}
        if j not in self._jred:
            mono = (0,) * j + (1,)
            _, rem = pdivmod(mono, self.fpoly, self.l)
            self._jred[j] = {i: c % self.l for i, c in enumerate(rem) if c % self.l}
        return self._jred[j]

    def _canon(self, c):
        out = {}
        for (wrd, j), s in c.items():
            for jr, cr in self._reduce_power(j).items():
                key = (wrd, jr)
                out[key] = (out.get(key, 0) + s * cr) % self.l
        return {k: v for k, v in out.items() if v}

    def compose(self, a, b):
        out = {}
        for (w1, j1), s1 in a.items():
            for (w2, j2), s2 in b.items():
                key = (w1 + w2, j1 + j2)
                out[key] = (out.get(key, 0) + s1 * s2) % self.l
        return self._canon(out)

    def tstar(self, c, j):
        if j == 0:
            return self._canon(c)
        return self._canon({(wrd, jj + j): s for (wrd, jj), s in c.items()})

    def add(self, a, b):
        out = dict(a)
        for k, s in b.items():
            out[k] = (out.get(k, 0) + s) % self.l
        return {k: v for k, v in out.items() if v}

    def scale(self, c, s):
        s = int(s) % self.l
        return {k: (v * s) % self.l for k, v in c.items() if (v * s) % self.l}

    def is_zero(self, c):
        return not any(v % self.l for v in c.values())

    def validate(self, eta, c):
        for (wrd, j), s in c.items():
            par = (sum(self.generators[n] for n in wrd) + j) % 2
            if s % self.l and par != int(eta.flip):
                raise ParityViolation(
                    "word %r with shift %d cannot sit on %r" % (wrd, j, eta)
                )


class HeckeEngine:
    """Products, structure constants, and identity checks over a backend."""

    def __init__(self, backend):
        self.be = backend
        self._memo = {}
        self._busy = set()

    # -- structure constants -------------------------------------------

    def symbol_product(self, eta, delta):
        """[eta]_f * [delta]_g = sum of s * [eps]^j_{fg}; returns ((eps, s, j), ...)."""
        key = (eta, delta)
        if key in self._memo:
            return self._memo[key]
        if key in self._busy:
            raise RuntimeError("recursion loop at %r * %r" % (eta, delta))
        self._busy.add(key)
        try:
            raw = self._compute(eta, delta)
        finally:
            self._busy.discard(key)
        acc = {}
        for eps, s, j in raw:
            k2 = (eps, j)
            acc[k2] = (acc.get(k2, 0) + s) % self.be.l
        out = tuple(
            (eps, s, j)
            for (eps, j), s in sorted(acc.items(), key=lambda kv: (kv[0][1], kv[0][0]))
            if s
        )
        self._memo[key] = out
        return out

    def _compute(self, eta, delta):
        l = self.be.l
        if is_length_additive(eta, delta):
            return ((eta * delta, 1, 0),)
        le, ld = length(eta), length(delta)
        if le == 1 and ld == 1:
            prod = eta * delta
            assert length(prod) == 0, "parity forbids a single cancellation"
            _, letters = word_of(eta)
            etap = eta * LETTER[letters[-1]]
            return ((prod, self.be.tau % l, 0), (etap * delta, 1, 1))
        if le >= 2:
            e1, e2 = left_factor(eta)
            inner = self.symbol_product(e2, delta)
            out = []
            for eps, s, j in inner:
                for eps2, s2, j2 in self.symbol_product(e1, eps):
                    out.append((eps2, (s * s2) % l, j + j2))
            return tuple(out)
        d2, d1 = right_factor(delta)
        inner = self.symbol_product(eta, d2)
        out = []
        for eps, s, j in inner:
            for eps2, s2, j2 in self.symbol_product(eps, d1):
                out.append((eps2, (s * s2) % l, j + j2))
        return tuple(out)

    # -- elements ------------------------------------------------------

    def symbol(self, eta, coeff=None, j=0):
        c = coeff if coeff is not None else self.be.one()
        if j:
            c = self.be.tstar(c, j)
        return {} if self.be.is_zero(c) else {eta: c}

    def unit(self):
        return self.symbol(W_ID)

    def add(self, a, b):
        out = dict(a)
        for eta, c in b.items():
            out[eta] = self.be.add(out[eta], c) if eta in out else c
        return {k: v for k, v in out.items() if not self.be.is_zero(v)}

    def scale(self, a, s):
        out = {k: self.be.scale(v, s) for k, v in a.items()}
        return {k: v for k, v in out.items() if not self.be.is_zero(v)}

    def sub(self, a, b):
        return self.add(a, self.scale(b, -1))

    def eq(self, a, b):
        return not self.sub(a, b)

    def mul(self, a, b):
        out = {}
        for eta, ca in a.items():
            for delta, cb in b.items():
                c = self.be.compose(ca, cb)
                for eps, s, j in self.symbol_product(eta, delta):
                    term = self.be.scale(self.be.tstar(c, j), s)
                    out[eps] = self.be.add(out[eps], term) if eps in out else term
        return {k: v for k, v in out.items() if not self.be.is_zero(v)}

    def validate(self, a):
        for eta, c in a.items():
            self.be.validate(eta, c)

    # -- the flip-past-a-coset lemma -----------------------------------

    def commute_w(self, eta, a, f):
        """The product [w]_f * [eta]^a rewritten with [w]_f on the right.

        Returns the rewritten element; compare with mul() for the check.
        The four shapes give four right-hand sides; the pure translation
        shape needs no rewriting because lengths just add.
        """
        if a % 2 != int(eta.flip):
            raise ParityViolation("shift %d has wrong parity for %r" % (a, eta))
        be = self.be
        be.validate(W_W, f)
        wf = self.symbol(W_W, f)
        conj = W_W * eta * W_W
        shape = shape_class(eta)
        if shape == "T":
            return self.mul(wf, self.symbol(eta, j=a))
        unit1f = self.symbol(W_ID, be.tstar(f, 1))
        if shape == "A":
            return self.mul(self.symbol(conj, j=a), wf)
        if shape == "B":
            return self.add(
                self.scale(self.mul(self.symbol(conj, j=a), wf), be.tau),
                self.mul(self.symbol(eta, j=a), unit1f),
            )
        if shape == "C":
            return self.scale(
                self.mul(self.symbol(conj, j=a), self.sub(wf, unit1f)),
                be.tau_inv,
            )
        assert shape == "D"
        return self.add(
            self.mul(self.symbol(conj, j=a), self.sub(wf, unit1f)),
            self.mul(self.symbol(eta, j=a), unit1f),
        )

    # -- distinguished identities --------------------------------------

    def annihilator_element(self):
        """[w]^1 - [1]^2, the left annihilator of unit cosets against [w]_f."""
        return self.sub(self.symbol(W_W, j=1), self.symbol(W_ID, j=2))

    def check_unit_identity(self, f):
        """tau*[1]^1_f == ([w]^1 - [1]^2) * [w]_f, for any odd f."""
        lhs = self.scale(self.symbol(W_ID, self.be.tstar(f, 1)), self.be.tau)
        rhs = self.mul(self.annihilator_element(), self.symbol(W_W, f))
        return self.eq(lhs, rhs)

    def check_shift_identity(self, eta, c):
        """[eta]^c * ([w]^1 - [1]^2) == tau * [eta.w]^{c+1}.

        Holds when the reduced word of eta ends in the plain letter; the
        caller is responsible for that hypothesis.
        """
        lhs = self.mul(self.symbol(eta, j=c), self.annihilator_element())
        rhs = self.scale(self.symbol(eta * W_W, j=c + 1), self.be.tau)
        return self.eq(lhs, rhs)

    # -- polynomial part -----------------------------------------------

    def embed_polynomial(self, p):
        """T^i -> [w^(i mod 2)]^i, extended linearly; a ring map."""
        out = {}
        for i, ci in enumerate(p):
            if ci % self.be.l == 0:
                continue
            eta = W_ID if i % 2 == 0 else W_W
            term = self.scale(self.symbol(eta, j=i), ci)
            out = self.add(out, term)
        return out
