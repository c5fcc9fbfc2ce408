"""The finite-level double-coset algebra and its brute-force convolution.

Elements live on two double cosets of the block parabolic P inside
G = GL_{2k}(q): the identity coset (value f1, a self-intertwiner of V) and
the full-swap coset (value fw, a swap-intertwiner).  Two routes to the
product are implemented:

  * fin_mul: the closed two-term formulas in f1, fw, tau, T*;
  * fin_convolve: genuine convolution of V-valued bi-equivariant functions
    over G/P, decomposing group elements against the Bruhat cells as it
    goes.  The partial-swap cells in between must come out zero, and the
    oracle checks that rather than assuming it.

Also here: the minimal monic relation of the parameter image (compute_fpoly)
and the group-algebra computations around T* itself.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import SystemMismatch
from .gfp import (
    GF,
    first_monic_dependence,
    fq_inv_matrix,
    fq_matmul,
    fq_rank,
    fq_rref,
    nullspace_mod,
    poly_str,
)
from .modrep import general_linear, pair_index

# ---------------------------------------------------------------------------
# elements and the closed product


@dataclass
class FinElement:
    sys: object
    f1: np.ndarray
    fw: np.ndarray

    def __post_init__(self):
        d = self.sys.dim
        self.f1 = np.asarray(self.f1, dtype=np.int64).reshape(d, d) % self.sys.l
        self.fw = np.asarray(self.fw, dtype=np.int64).reshape(d, d) % self.sys.l

    def __eq__(self, other):
        return (
            self.sys is other.sys
            and np.array_equal(self.f1, other.f1)
            and np.array_equal(self.fw, other.fw)
        )

    def __add__(self, other):
        _same(self, other)
        return FinElement(self.sys, (self.f1 + other.f1), (self.fw + other.fw))

    def is_zero(self):
        return not (self.f1.any() or self.fw.any())


def _same(a, b):
    if a.sys is not b.sys:
        raise SystemMismatch("operands built over different systems")


def fin_unit(sys):
    d = sys.dim
    return FinElement(sys, np.eye(d, dtype=np.int64), np.zeros((d, d), dtype=np.int64))


def fin_w(sys, power=0):
    """[w] twisted by T*^power on the swap coset."""
    d = sys.dim
    return FinElement(sys, np.zeros((d, d), dtype=np.int64), sys.tstar_power(power))


def fin_mul(a, b):
    _same(a, b)
    s = a.sys
    l = s.l
    f1 = (a.f1 @ b.f1 + s.tau * (a.fw @ b.fw)) % l
    fw = (a.f1 @ b.fw + a.fw @ b.f1 + s.tstar @ a.fw @ b.fw) % l
    return FinElement(s, f1, fw)


def random_fin_element(sys, rng):
    d = sys.dim
    f1 = np.zeros((d, d), dtype=np.int64)
    for c, m in zip(rng.integers(0, sys.l, size=len(sys.I1)), sys.I1):
        f1 = (f1 + int(c) * m) % sys.l
    fw = np.zeros((d, d), dtype=np.int64)
    for c, m in zip(rng.integers(0, sys.l, size=len(sys.Iw)), sys.Iw):
        fw = (fw + int(c) * m) % sys.l
    return FinElement(sys, f1, fw)


# ---------------------------------------------------------------------------
# the ambient finite geometry


class AmbientGL:
    """GL_{2k}(q) relative to its block parabolic, organized by k-subspaces.

    Nothing here ever enumerates the full group: cosets of P are labelled
    by the column span of the first k columns, in reduced row echelon
    form, and each label stores one decomposition  rep = p . w_d . p2
    against the partial-swap permutations w_d.
    """

    _cache = {}

    def __new__(cls, k, q):
        key = (k, q)
        if key not in cls._cache:
            inst = super().__new__(cls)
            inst._build(k, q)
            cls._cache[key] = inst
        return cls._cache[key]

    def _build(self, k, q):
        self.k = k
        self.q = q
        self.F = GF(q)
        self.M = general_linear(k, self.F)
        self.n = 2 * k
        self._enumerate_parabolic()
        self._enumerate_cosets()

    # -- bookkeeping helpers

    def _mat_label(self, A):
        return tuple(tuple(int(v) for v in row) for row in A)

    def swap_mat(self, d=None):
        """The partial swap w_d; full swap by default."""
        k, n = self.k, self.n
        if d is None:
            d = k
        m = np.zeros((n, n), dtype=np.int64)
        for i in range(d):
            m[i, k + i] = 1
            m[k + i, i] = 1
        for i in range(d, k):
            m[i, i] = 1
            m[k + i, k + i] = 1
        return m

    def in_parabolic(self, g):
        F, k = self.F, self.k
        if np.asarray(g)[k:, :k].any():
            return False
        return fq_rank(F, g[:k, :k]) == k and fq_rank(F, g[k:, k:]) == k

    def levi_indices(self, p):
        k = self.k
        if k == 1:
            return self.M.index[int(p[0, 0])], self.M.index[int(p[1, 1])]
        return (
            self.M.index[self._mat_label(p[:k, :k])],
            self.M.index[self._mat_label(p[k:, k:])],
        )

    def _enumerate_parabolic(self):
        F, k, n = self.F, self.k, self.n
        gl = self.M
        blocks = [np.array(lab).reshape(k, k) if k > 1 else np.array([[lab]]) for lab in gl.labels]
        mats = []
        from itertools import product as iproduct

        for A in blocks:
            for D in blocks:
                for bvals in iproduct(F.elements(), repeat=k * k):
                    p = np.zeros((n, n), dtype=np.int64)
                    p[:k, :k] = A
                    p[k:, k:] = D
                    p[:k, k:] = np.array(bvals).reshape(k, k)
                    mats.append(p)
        self.parabolic = mats

    def col_label(self, g):
        """Canonical label of the span of the first k columns."""
        R, piv = fq_rref(self.F, np.asarray(g)[:, : self.k].T)
        assert len(piv) == self.k
        return self._mat_label(R)

    def _enumerate_cosets(self):
        F, k, n = self.F, self.k, self.n
        from itertools import product as iproduct

        labels = {}
        for vals in iproduct(F.elements(), repeat=n * k):
            cols = np.array(vals, dtype=np.int64).reshape(n, k)
            R, piv = fq_rref(F, cols.T)
            if len(piv) != k:
                continue
            labels[self._mat_label(R)] = None
        # representative: label rows as first k columns, completed by
        # standard vectors
        for lab in labels:
            base = np.array(lab, dtype=np.int64).T  # n x k
            cols = [base[:, j] for j in range(k)]
            for j in range(n):
                e = np.zeros(n, dtype=np.int64)
                e[j] = 1
                cand = np.stack(cols + [e], axis=1)
                if fq_rank(F, cand) == len(cols) + 1:
                    cols.append(e)
                if len(cols) == n:
                    break
            rep = np.stack(cols, axis=1)
            labels[lab] = rep
        self.labels = labels
        self.count = len(labels)
        # one Bruhat decomposition per label: rep = p . w_d . p2
        self.bruhat = {}
        for lab, rep in labels.items():
            d = int(fq_rank(F, rep[k:, :k]))
            wd = self.swap_mat(d)
            found = None
            for p in self.parabolic:
                p2 = fq_matmul(F, fq_matmul(F, wd, fq_inv_matrix(F, p)), rep)
                if self.in_parabolic(p2):
                    found = (fq_inv_matrix(F, p), p, d)
                    break
            assert found is not None, "no Bruhat decomposition found"
            self.bruhat[lab] = found

    def cell_of(self, g):
        return int(fq_rank(self.F, np.asarray(g)[self.k :, : self.k]))

    def swap_cell_size(self):
        """Number of P-cosets inside the full-swap double cell."""
        return sum(
            1
            for lab, rep in self.labels.items()
            if self.cell_of(rep) == self.k
        )


def phi_value(amb, sys, elem, g):
    """Value at g of the bi-equivariant function with data (f1, fw)."""
    lab = amb.col_label(g)
    pinv, p, d = amb.bruhat[lab]
    if 0 < d < amb.k:
        return None  # partial-swap cell: the element carries no value there
    p2 = fq_matmul(amb.F, fq_matmul(amb.F, amb.swap_mat(d), pinv), g)
    assert amb.in_parabolic(p2)
    f = elem.f1 if d == 0 else elem.fw
    a1, a2 = amb.levi_indices(p)
    b1, b2 = amb.levi_indices(p2)
    return (sys.sigma(a1, a2) @ f @ sys.sigma(b1, b2)) % sys.l


_MIDDLE_DIMS = {}


def middle_hom_dims(sys):
    """Sizes of the intertwiner spaces over the partial-swap cells 1..k-1.

    A function supported on the cell of w_d must satisfy
    sigma(p) X = X sigma(w_d^-1 p w_d) for every p in the parabolic that
    w_d conjugates back into it.  Solved once per system and cached.
    """
    key = sys.name
    if key not in _MIDDLE_DIMS:
        amb = AmbientGL(sys.k, sys.q)
        eye = np.eye(sys.dim, dtype=np.int64)
        dims = []
        for d in range(1, amb.k):
            xd = amb.swap_mat(d)
            xdinv = fq_inv_matrix(amb.F, xd)
            seen = set()
            rows = []
            for p in amb.parabolic:
                c = fq_matmul(amb.F, fq_matmul(amb.F, xdinv, p), xd)
                if not amb.in_parabolic(c):
                    continue
                sp = sys.sigma(*amb.levi_indices(p))
                sc = sys.sigma(*amb.levi_indices(c))
                tag = (sp.tobytes(), sc.tobytes())
                if tag in seen:
                    continue
                seen.add(tag)
                rows.append((np.kron(sp, eye) - np.kron(eye, sc.T)) % sys.l)
            ns = nullspace_mod(np.concatenate(rows, axis=0), sys.l)
            dims.append(int(ns.shape[0]))
        _MIDDLE_DIMS[key] = tuple(dims)
    return _MIDDLE_DIMS[key]


def fin_convolve_cells(a, b):
    """(phi_a * phi_b)(w_d) for every cell d, as a dict keyed by d."""
    _same(a, b)
    sys = a.sys
    amb = AmbientGL(sys.k, sys.q)
    d0 = sys.dim
    zero = np.zeros((d0, d0), dtype=np.int64)
    out = {}
    for dcell in range(amb.k + 1):
        x = amb.swap_mat(dcell)
        acc = zero.copy()
        for lab, y in amb.labels.items():
            va = phi_value(amb, sys, a, y)
            if va is None or not va.any():
                continue
            yinvx = fq_matmul(amb.F, fq_inv_matrix(amb.F, y), x)
            vb = phi_value(amb, sys, b, yinvx)
            if vb is None:
                continue
            acc = (acc + va @ vb) % sys.l
        out[dcell] = acc
    return out


def fin_convolve(a, b):
    """Oracle product: (phi_a * phi_b)(x) = sum over G/P of phi_a(y) phi_b(y^-1 x).

    Returns the identity-cell and swap-cell values.  A partial-swap value
    may be nonzero only when the corresponding intertwiner space is
    nonzero (which happens for some non-semisimple configurations, where
    the two-coset span is not closed under convolution); when that space
    is zero, a nonzero value there would be a genuine bug and is asserted
    against.
    """
    sys = a.sys
    out = fin_convolve_cells(a, b)
    k = sys.k
    leaked = [d for d in range(1, k) if out[d].any()]
    if leaked:
        dims = middle_hom_dims(sys)
        for d in leaked:
            assert dims[d - 1] > 0, "support leaked into a partial-swap cell"
    return FinElement(sys, out[0], out[k])


def coset_count(k, q):
    """(#P-cosets in the swap cell, total #G/P cosets)."""
    amb = AmbientGL(k, q)
    return amb.swap_cell_size(), amb.count


# ---------------------------------------------------------------------------
# T* inside the group algebra of M x M


def tstar_support(k, q):
    """(row index, col index) arrays of the pairs (g, -g^{-1}) in M x M."""
    M = general_linear(k, GF(q))
    rows = np.arange(M.n, dtype=np.int64)
    cols = M.NEG[M.INV]
    return M, rows, cols


def tstar_group_algebra_power(k, q, l, m):
    """Coefficient array of (T*)^m in F_l[M x M], indexed by factor pairs."""
    M, rows, cols = tstar_support(k, q)
    coeff = np.zeros((M.n, M.n), dtype=np.int64)
    coeff[0, 0] = 1
    for _ in range(m):
        nxt = np.zeros_like(coeff)
        ver = np.nonzero(coeff)
        for a, b in zip(*ver):
            c = coeff[a, b]
            np.add.at(nxt, (M.MUL[a, rows], M.MUL[b, cols]), c)
        coeff = nxt % l
    return coeff


# ---------------------------------------------------------------------------
# the minimal parameter relation


@dataclass
class CharPoly:
    coeffs: tuple
    k: int
    q: int
    l: int
    rho: str
    mode: str
    tau: int
    tstar_minpoly: tuple

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def __str__(self):
        return poly_str(self.coeffs)

    def to_json(self):
        return {
            "poly": str(self),
            "coeffs": [int(c) for c in self.coeffs],
            "degree": self.degree,
            "k": self.k,
            "q": self.q,
            "l": self.l,
            "module": self.rho,
            "mode": self.mode,
            "tau": self.tau,
            "tstar_minpoly": poly_str(self.tstar_minpoly),
        }


def parameter_image(sys, i):
    """[w^i]^i as a finite element: T*^i on the coset of w^(i mod 2)."""
    d = sys.dim
    zero = np.zeros((d, d), dtype=np.int64)
    ts = sys.tstar_power(i)
    if i % 2 == 0:
        return FinElement(sys, ts, zero)
    return FinElement(sys, zero, ts)


def compute_fpoly(sys, max_deg=12):
    """Minimal monic polynomial killed by T^i -> [w^i]^i."""

    def vecs():
        i = 0
        while True:
            e = parameter_image(sys, i)
            yield np.concatenate([e.f1.reshape(-1), e.fw.reshape(-1)])
            i += 1

    rel = first_monic_dependence(vecs(), sys.l, max_len=max_deg)
    tsmin = first_monic_dependence(
        _matrix_powers(sys.tstar, sys.l), sys.l, max_len=max_deg
    )
    return CharPoly(
        coeffs=rel,
        k=sys.k,
        q=sys.q,
        l=sys.l,
        rho=sys.rho_name,
        mode=sys.mode,
        tau=sys.tau,
        tstar_minpoly=tsmin,
    )


def _matrix_powers(M, l):
    P = np.eye(M.shape[0], dtype=np.int64)
    while True:
        yield P.reshape(-1)
        P = (P @ M) % l
