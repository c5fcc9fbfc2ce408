import numpy as np
import pytest

from heckekit.errors import NotCuspidal, TooLarge
from heckekit.gfp import GF, rank_mod
from heckekit.modrep import (
    FiniteGroupTable,
    boxtimes,
    build_coefficient_system,
    commutant,
    contragredient,
    general_linear,
    intertwiners,
    irreducible_modules,
    is_absolutely_irreducible,
    is_cuspidal,
    is_irreducible,
    is_prime,
    pair_index,
    product_group,
    projective_cover,
    regular_module,
    split_indecomposable,
    swap_permutation,
    trivial_module,
    unit_group,
)


def test_unit_group_sizes():
    assert unit_group(GF(5)).n == 4
    assert unit_group(GF(4)).n == 3
    assert unit_group(GF(2)).n == 1


def test_general_linear_orders():
    assert general_linear(2, GF(2)).n == 6
    assert general_linear(2, GF(3)).n == 48
    assert general_linear(2, GF(4)).n == 180


def test_table_inverses():
    G = general_linear(2, GF(3))
    for i in range(0, G.n, 7):
        assert G.MUL[i, G.INV[i]] == 0
        assert G.MUL[G.INV[i], i] == 0


def test_neg_is_central_involution_action():
    G = general_linear(2, GF(3))
    for i in (0, 5, 17):
        # -(-g) = g, and -(gh) = (-g)h
        assert G.NEG[G.NEG[i]] == i
        for j in (1, 3):
            assert G.NEG[G.MUL[i, j]] == G.MUL[G.NEG[i], j]


def test_generators_generate():
    for G in (unit_group(GF(5)), general_linear(2, GF(2))):
        reach = {0}
        frontier = set(G.generators) | {0}
        while frontier:
            reach |= frontier
            nxt = {int(G.MUL[a, b]) for a in reach for b in reach}
            frontier = nxt - reach
        assert reach == set(range(G.n))


def test_product_group_and_swap():
    G = unit_group(GF(4))
    P = product_group(G, G)
    assert P.n == 9
    s = swap_permutation(P)
    ij = pair_index(P, 1, 2)
    assert s[ij] == pair_index(P, 2, 1)
    assert P.MUL[ij, pair_index(P, 2, 1)] == P.MUL[pair_index(P, 2, 1), ij]


def test_product_too_large():
    G = general_linear(2, GF(4))
    with pytest.raises(TooLarge):
        product_group(G, G)


def test_regular_module_is_faithful_action():
    G = general_linear(2, GF(2))
    reg = regular_module(G, 5)
    # validated on construction; spot-check one full product
    g, h = 2, 4
    assert np.array_equal((reg.A[g] @ reg.A[h]) % 5, reg.A[G.MUL[g, h]])


def test_unit_characters_counts():
    # gcd(q-1, l-1) characters with values in F_l
    assert len(irreducible_modules(unit_group(GF(5)), 3)) == 2
    assert len(irreducible_modules(unit_group(GF(5)), 2)) == 1
    assert len(irreducible_modules(unit_group(GF(4)), 7)) == 3
    assert len(irreducible_modules(unit_group(GF(4)), 5)) == 1
    assert len(irreducible_modules(unit_group(GF(3)), 5)) == 2


def test_characters_are_multiplicative():
    G = unit_group(GF(5))
    for name, chi in irreducible_modules(G, 5):
        for a in range(G.n):
            for b in range(G.n):
                lhs = (chi.A[a] * chi.A[b]) % 5
                assert lhs == chi.A[G.MUL[a, b]]


def test_gl2f2_modules():
    G = general_linear(2, GF(2))
    for l, expect in [(3, {"trivial", "sign"}), (5, {"trivial", "sign", "std"}), (7, {"trivial", "sign", "std"})]:
        got = dict(irreducible_modules(G, l))
        assert set(got) == expect
        for rep in got.values():
            assert is_absolutely_irreducible(rep)


def test_cuspidality():
    G = general_linear(2, GF(2))
    for l in (3, 5, 7):
        mods = dict(irreducible_modules(G, l))
        assert is_cuspidal(mods["sign"])
        assert not is_cuspidal(mods["trivial"])
        if "std" in mods:
            assert not is_cuspidal(mods["std"])
    assert is_cuspidal(trivial_module(unit_group(GF(4)), 3))


def test_is_irreducible_catches_reducible():
    G = unit_group(GF(4))
    reg = regular_module(G, 7)  # C_3 regular over l=7: splits
    assert not is_irreducible(reg)
    assert is_irreducible(trivial_module(G, 7))


def test_contragredient_and_boxtimes():
    G = unit_group(GF(5))
    chis = dict(irreducible_modules(G, 3))
    chi = chis["chi1"]
    dual = contragredient(chi)
    for i in range(G.n):
        assert (chi.A[i] * dual.A[i]) % 3 == 1
    P = product_group(G, G)
    VV = boxtimes(chi, dual, P)
    assert VV.dim == 1


def test_intertwiners_schur():
    G = general_linear(2, GF(2))
    mods = dict(irreducible_modules(G, 5))
    assert len(commutant(mods["std"])) == 1
    assert len(intertwiners(mods["trivial"].A, mods["sign"].A, 5)) == 0


def test_split_regular_banal():
    # S_3 over l=5 splits as 1 + 1 + 2 + 2
    G = general_linear(2, GF(2))
    reg = regular_module(G, 5)
    pieces = split_indecomposable(reg)
    assert sorted(p.shape[0] for p in pieces) == [1, 1, 2, 2]


def test_split_regular_modular():
    # S_3 over l=3 splits as two blocks of size 3
    G = general_linear(2, GF(2))
    reg = regular_module(G, 3)
    pieces = split_indecomposable(reg)
    assert sorted(p.shape[0] for p in pieces) == [3, 3]
    # C_3 over l=3 is local: does not split at all
    H = unit_group(GF(4))
    pieces = split_indecomposable(regular_module(H, 3))
    assert [p.shape[0] for p in pieces] == [3]


@pytest.mark.parametrize(
    "q,l,dim", [(4, 3, 3), (5, 2, 4), (4, 5, 1), (3, 5, 1)]
)
def test_projective_cover_units(q, l, dim):
    G = unit_group(GF(q))
    cov = projective_cover(trivial_module(G, l))
    assert cov.module.dim == dim
    e = cov.witness
    assert np.array_equal((e @ e) % l, e)
    assert rank_mod(e, l) == dim


def test_projective_cover_gl2():
    G = general_linear(2, GF(2))
    mods = dict(irreducible_modules(G, 3))
    cov = projective_cover(mods["sign"])
    assert cov.module.dim == 3
    assert cov.multiplicity == 1
    mods5 = dict(irreducible_modules(G, 5))
    cov5 = projective_cover(mods5["std"])
    assert cov5.module.dim == 2
    assert cov5.multiplicity == 2


def test_system_char_mode():
    sys = build_coefficient_system(1, 4, 5, rho="trivial", mode="plain")
    assert sys.dim == 1
    assert sys.tau == 4
    # T* on the trivial character: (q-1) chi(-1) = 3
    assert sys.tstar[0, 0] == 3
    assert len(sys.I1) == 1 and len(sys.Iw) == 1
    assert sys.tstar_power(2)[0, 0] == 9 % 5


def test_system_char_nontrivial():
    sys = build_coefficient_system(1, 4, 3, rho="trivial", mode="plain")
    assert sys.tstar[0, 0] == 0  # q - 1 = 3 = 0 mod 3
    sys2 = build_coefficient_system(1, 5, 2, rho="trivial", mode="plain")
    assert sys2.tau == 1
    assert sys2.tstar[0, 0] == 0  # q - 1 = 4 = 0 mod 2


def test_system_pp_dims():
    sys = build_coefficient_system(1, 4, 3, rho="trivial", mode="pp")
    assert sys.dim == 18
    assert sys.tau == 1
    # T*^2 = 0 on V in the l | q-1 projective case
    assert not sys.tstar_power(2).any()


def test_system_pp_banal():
    sys = build_coefficient_system(1, 4, 5, rho="trivial", mode="pp")
    assert sys.dim == 2  # cover of a character in the banal case is itself
    assert sys.tau == 4


def test_system_rejects_noncuspidal():
    with pytest.raises(NotCuspidal):
        build_coefficient_system(2, 2, 5, rho="trivial", mode="pp")


def test_system_k2_sign():
    sys = build_coefficient_system(2, 2, 3, rho="sign", mode="pp")
    assert sys.dim == 18
    assert sys.tau == pow(2, 4, 3) == 1
    sys7 = build_coefficient_system(2, 2, 7, rho="sign", mode="pp")
    assert sys7.dim == 2
    assert sys7.tau == pow(2, 4, 7) == 2


def test_is_prime():
    assert [n for n in range(20) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19]
