"""Named verification suites shared by the CLI and the acceptance tests.

Each check function builds its own engines, runs an exact comparison, and
returns `CheckResult` rows; nothing here prints or exits.  The CLI turns
rows into text lines and a JSON report, the acceptance tests assert on
them directly, so both speak about the same computations.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import WrongModularCase
from .finhecke import fin_unit, fin_w, random_fin_element
from .heckealg import FreeCoefficients, HeckeEngine, MatrixCoefficients
from .modrep import build_coefficient_system
from .residue import oracle_product, p_eta_pattern
from .twisted import (
    PolynomialPart,
    compare_iwahori,
    fin_tensor_eval,
    group_algebra_comparison,
    hecke_to_fin_tensor,
    hecke_to_tensor,
    tensor_eval,
    tt_fin_mul,
    tt_mul,
)
from .weyl import (
    W,
    W_ID,
    W_T,
    W_TINV,
    W_W,
    W_WP,
    diag,
    elements_in_window,
    length,
    render,
)


@dataclass
class CheckResult:
    name: str
    anchor: str
    inputs: dict
    status: str  # "pass" | "fail" | "report"
    detail: str = ""

    @property
    def ok(self):
        return self.status != "fail"

    def to_json(self):
        return {
            "name": self.name,
            "anchor": self.anchor,
            "inputs": self.inputs,
            "status": self.status,
            "detail": self.detail,
        }


def _result(name, anchor, inputs, ok, detail=""):
    return CheckResult(name, anchor, inputs, "pass" if ok else "fail", detail)


_ENGINE_CACHE = {}


def matrix_engine(k, q, l, rho="trivial", mode="plain"):
    key = (k, q, l, rho, mode)
    if key not in _ENGINE_CACHE:
        sys = build_coefficient_system(k, q, l, rho=rho, mode=mode)
        _ENGINE_CACHE[key] = (sys, HeckeEngine(MatrixCoefficients(sys)))
    return _ENGINE_CACHE[key]


def free_engine(l, tau):
    key = ("free", l, tau)
    if key not in _ENGINE_CACHE:
        _ENGINE_CACHE[key] = HeckeEngine(FreeCoefficients({}, l, tau))
    return _ENGINE_CACHE[key]


def elem_eq(a, b, l):
    if set(a) != set(b):
        return False
    return all(np.array_equal(a[k] % l, b[k] % l) for k in a)


def oracle_supported(e):
    ur, ll = p_eta_pattern(e)
    return max(ur, ll - 1) <= 2


# ---------------------------------------------------------------------------
# the eight shortening products

TW = W_T * W_W
WTINV = W_W * W_TINV
TINVWP = W_TINV * W_WP

EIGHT_CASES = (
    (W_W, W_W, W_ID, W_W),
    (TW, WTINV, W_ID, W_WP),
    (W_WP, W_WP, W_ID, W_WP),
    (WTINV, TW, W_ID, W_W),
    (W_W, WTINV, W_TINV, WTINV),
    (TINVWP, W_WP, W_TINV, TINVWP),
    (TW, W_W, W_T, TW),
    (W_WP, TW, W_T, W_WP * W_T),
)


def check_cases(k, q, l, rho="trivial", mode="plain", with_oracle=True):
    """The eight shortening case products, three ways per case.

    Structure constants, the elementwise product with concrete basis
    coefficients, and (optionally) the enumeration oracle must agree.
    """
    sys, eng = matrix_engine(k, q, l, rho=rho, mode=mode)
    tau = sys.tau % l
    inputs = {"k": k, "q": q, "l": l, "module": rho, "mode": mode}
    out = []
    for n, (eta, delta, drop, keep) in enumerate(EIGHT_CASES, start=1):
        name = "mul.case%d" % n
        got = eng.symbol_product(eta, delta)
        want = ((drop, tau, 0), (keep, 1, 1))
        if got != want:
            out.append(
                _result(name, name, inputs, False, "constants %r != %r" % (got, want))
            )
            continue
        f = sys.basis(int(eta.flip))[0] % l
        g = sys.basis(int(delta.flip))[-1] % l
        prod = eng.mul(eng.symbol(eta, f), eng.symbol(delta, g))
        fg = (f @ g) % l
        want_elem = eng.add(
            eng.scale(eng.symbol(drop, fg), tau), eng.symbol(keep, fg, j=1)
        )
        if not eng.eq(prod, want_elem):
            out.append(_result(name, name, inputs, False, "elementwise mismatch"))
            continue
        if with_oracle:
            ora = oracle_product(sys, eta, f, delta, g)
            if not elem_eq(prod, ora, l):
                out.append(
                    _result(
                        name,
                        name,
                        inputs,
                        False,
                        "oracle disagrees at %s * %s" % (render(eta), render(delta)),
                    )
                )
                continue
        out.append(
            _result(name, name, inputs, True, "tau=%d drop=%s" % (tau, render(drop)))
        )
    return out


def check_oracle_window(k, q, l, rho="trivial", mode="plain", bound=1):
    """Engine vs the enumeration oracle on every supported pair in a window."""
    sys, eng = matrix_engine(k, q, l, rho=rho, mode=mode)
    inputs = {"k": k, "q": q, "l": l, "module": rho, "mode": mode, "bound": bound}
    window = [e for e in elements_in_window(bound) if oracle_supported(e)]
    checked = 0
    for eta in window:
        f = sys.basis(int(eta.flip))[0] % l
        for delta in window:
            g = sys.basis(int(delta.flip))[-1] % l
            got = eng.mul(eng.symbol(eta, f), eng.symbol(delta, g))
            want = oracle_product(sys, eta, f, delta, g)
            if not elem_eq(got, want, l):
                return [
                    _result(
                        "mul.oracle-window",
                        "mul.oracle-window",
                        inputs,
                        False,
                        "first mismatch at %s * %s" % (render(eta), render(delta)),
                    )
                ]
            checked += 1
    return [
        _result(
            "mul.oracle-window",
            "mul.oracle-window",
            inputs,
            True,
            "%d products agree" % checked,
        )
    ]


# ---------------------------------------------------------------------------
# decomposition round trips and multiplicativity


def _random_tensor(rng, l, nterms, central=False):
    X = {}
    for _ in range(nterms):
        a = int(rng.integers(-2, 3))
        b = a if central else int(rng.integers(-2, 3))
        X[(a, b, int(rng.integers(0, 4)))] = int(rng.integers(1, l))
    return X


def check_iso(seed=0, pairs=1000, l=5, tau=4, fin_cfg=(1, 4, 5)):
    """Round trips of both decompositions, then seeded multiplicativity.

    Random pairs keep one factor's translations central: a central
    translation composes with anything without shortening, so the tensor
    product and the algebra product agree there (every crossing branch is
    still exercised by the other factor).  Products of translations from
    opposite chambers shorten and acquire a second term; the boundary
    check pins the first such product exactly.
    """
    eng = free_engine(l, tau)
    inputs = {"l": l, "tau": tau, "seed": seed, "pairs": pairs}
    out = []

    bad = None
    for alpha in range(-3, 4):
        for beta in range(-3, 4):
            for j in range(4):
                X = {(alpha, beta, j): 1}
                if hecke_to_tensor(eng, tensor_eval(eng, X)) != X:
                    bad = ("tensor basis", X)
    for e in elements_in_window(3):
        for a in (int(e.flip), int(e.flip) + 2):
            elem = eng.symbol(e, j=a)
            if not eng.eq(tensor_eval(eng, hecke_to_tensor(eng, elem)), elem):
                bad = ("symbol", (render(e), a))
    out.append(
        _result(
            "iso.round-trip",
            "iso.round-trip",
            inputs,
            bad is None,
            "exhaustive window 3, shifts 0..3" if bad is None else repr(bad),
        )
    )

    sysf, engf = matrix_engine(*fin_cfg)
    rng = np.random.default_rng(seed + 1)
    bad = None
    fins = [fin_unit(sysf), fin_w(sysf), random_fin_element(sysf, rng)]
    for alpha in range(-3, 4):
        for beta in range(-3, 4):
            for b in fins:
                X = {(alpha, beta): b}
                back = hecke_to_fin_tensor(sysf, engf, fin_tensor_eval(engf, X))
                if back != X:
                    bad = ("fin tensor basis", (alpha, beta))
    for e in elements_in_window(3):
        bas = sysf.basis(int(e.flip))
        for c in (bas[0], bas[-1]):
            elem = {e: c % sysf.l}
            back = fin_tensor_eval(engf, hecke_to_fin_tensor(sysf, engf, elem))
            if not engf.eq(back, elem):
                bad = ("fin symbol", render(e))
    out.append(
        _result(
            "iso.fin-round-trip",
            "iso.fin-round-trip",
            dict(inputs, system="k%d.q%d.l%d" % fin_cfg),
            bad is None,
            "exhaustive window 3" if bad is None else repr(bad),
        )
    )

    S = PolynomialPart(l, tau)
    rng = np.random.default_rng(seed)
    half = pairs - pairs // 3
    bad = None
    for i in range(half):
        X = _random_tensor(rng, l, int(rng.integers(1, 3)), central=i % 2 == 0)
        Y = _random_tensor(rng, l, int(rng.integers(1, 3)), central=i % 2 == 1)
        got = tensor_eval(eng, tt_mul(X, Y, S))
        want = eng.mul(tensor_eval(eng, X), tensor_eval(eng, Y))
        if not eng.eq(got, want):
            bad = (X, Y)
            break
    out.append(
        _result(
            "iso.multiplicative",
            "iso.multiplicative",
            inputs,
            bad is None,
            "%d aligned pairs" % half if bad is None else repr(bad),
        )
    )

    nfin = pairs // 3
    bad = None
    for i in range(nfin):
        a = int(rng.integers(-2, 3))
        other = (int(rng.integers(-2, 3)), int(rng.integers(-2, 3)))
        Xp, Yp = ((a, a), other) if i % 2 == 0 else (other, (a, a))
        X = {Xp: random_fin_element(sysf, rng)}
        Y = {Yp: random_fin_element(sysf, rng)}
        got = fin_tensor_eval(engf, tt_fin_mul(sysf, X, Y))
        want = engf.mul(fin_tensor_eval(engf, X), fin_tensor_eval(engf, Y))
        if not engf.eq(got, want):
            bad = (Xp, Yp)
            break
    out.append(
        _result(
            "iso.fin-multiplicative",
            "iso.fin-multiplicative",
            dict(inputs, system="k%d.q%d.l%d" % fin_cfg),
            bad is None,
            "%d aligned pairs" % nfin if bad is None else repr(bad),
        )
    )

    # the boundary: translations from opposite chambers shorten, so the
    # algebra product carries a correction term the plain tensor misses
    X, Y = {(0, 1, 0): 1}, {(1, 0, 0): 1}
    true = eng.mul(tensor_eval(eng, X), tensor_eval(eng, Y))
    want = eng.add(
        eng.scale(eng.symbol(diag(1, 1)), tau), eng.symbol(W(0, 2, True), j=1)
    )
    naive = tensor_eval(eng, tt_mul(X, Y, S))
    ok = eng.eq(true, want) and not eng.eq(true, naive)
    out.append(
        _result(
            "iso.chamber-boundary",
            "iso.chamber-boundary",
            inputs,
            ok,
            "opposite-chamber product = tau*[t^2] + [t^2 w']^1, not componentwise",
        )
    )
    return out


# ---------------------------------------------------------------------------
# the one-parameter model


def check_iwahori(k=1, q=4, l=3, rho="trivial", mode="plain", bound=2):
    """Engine structure constants against the one-parameter model.

    Where the parameter degenerates to 1 and the torus sum vanishes the
    same products are also compared with the plain group algebra.
    """
    sys, eng = matrix_engine(k, q, l, rho=rho, mode=mode)
    inputs = {"k": k, "q": q, "l": l, "rho": rho, "mode": mode, "bound": bound}
    out = []
    ok, detail = compare_iwahori(sys, eng, bound=bound)
    out.append(
        _result(
            "iwahori.match",
            "iwahori.match",
            inputs,
            ok,
            "%s products agree (qbar=%d)" % (detail, q % l)
            if ok
            else "mismatch at %s * %s" % (render(detail[0]), render(detail[1])),
        )
    )
    try:
        ok2, detail2 = group_algebra_comparison(sys, eng, bound=min(bound, 1))
        out.append(
            _result(
                "iwahori.group-law",
                "iwahori.group-law",
                inputs,
                ok2,
                "degenerate case follows the group law" if ok2 else repr(detail2),
            )
        )
    except WrongModularCase:
        out.append(
            CheckResult(
                "iwahori.group-law",
                "iwahori.group-law",
                inputs,
                "report",
                "not a fully degenerate configuration; comparison skipped",
            )
        )
    return out


# ---------------------------------------------------------------------------
# associativity


def _random_element_free(eng, rng, window, max_len):
    out = {}
    for _ in range(int(rng.integers(1, 3))):
        e = window[int(rng.integers(0, len(window)))]
        if length(e) > max_len:
            continue
        c = {((), int(rng.integers(0, 3))): int(rng.integers(1, eng.be.l))}
        out = eng.add(out, {e: c})
    return out


def _random_element_matrix(sys, eng, rng, window, max_len):
    out = {}
    for _ in range(int(rng.integers(1, 3))):
        e = window[int(rng.integers(0, len(window)))]
        if length(e) > max_len:
            continue
        bas = sys.basis(int(e.flip))
        c = np.zeros((sys.dim, sys.dim), dtype=np.int64)
        for s, m in zip(rng.integers(0, sys.l, size=len(bas)), bas):
            c = (c + int(s) * m) % sys.l
        if c.any():
            out = eng.add(out, {e: c})
    return out


def check_assoc(seed=42, triples=1000, max_len=6, l=5, tau=4):
    """(a*b)*c == a*(b*c) on seeded random triples, three backends."""
    window = [e for e in elements_in_window(3) if length(e) <= max_len]
    out = []

    eng = free_engine(l, tau)
    rng = np.random.default_rng(seed)
    n_free = triples - 2 * (triples // 4)
    bad = None
    for _ in range(n_free):
        a, b, c = (_random_element_free(eng, rng, window, max_len) for _ in range(3))
        if not eng.eq(eng.mul(eng.mul(a, b), c), eng.mul(a, eng.mul(b, c))):
            bad = (a, b, c)
            break
    out.append(
        _result(
            "mul.assoc-free",
            "mul.assoc",
            {"seed": seed, "triples": n_free, "l": l, "tau": tau},
            bad is None,
            "supports of length <= %d" % max_len if bad is None else repr(bad),
        )
    )

    for cfg in ((1, 4, 5, "trivial", "plain"), (1, 4, 3, "trivial", "pp")):
        sys, eng = matrix_engine(*cfg[:3], rho=cfg[3], mode=cfg[4])
        rng = np.random.default_rng(seed + 1)
        bad = None
        for _ in range(triples // 4):
            a, b, c = (
                _random_element_matrix(sys, eng, rng, window, max_len)
                for _ in range(3)
            )
            lhs = eng.mul(eng.mul(a, b), c)
            rhs = eng.mul(a, eng.mul(b, c))
            if not eng.eq(lhs, rhs):
                bad = tuple(sorted(render(e) for e in a))
                break
        out.append(
            _result(
                "mul.assoc-%s" % cfg[4],
                "mul.assoc",
                {"seed": seed, "triples": triples // 4, "system": sys.name},
                bad is None,
                "supports of length <= %d" % max_len if bad is None else repr(bad),
            )
        )
    return out
