"""Simplicity testing, composition factors, Krull-Schmidt decomposition.

Frozen dimension and endomorphism-degree tables were derived independently
(regular module chops cross-checked by hand against the group algebra
structure) before being fixed here.
"""

import numpy as np
import pytest

from modclass.errors import InputError
from modclass.finite_field import make_field
from modclass import linalg
from modclass.modrep import (
    Rep,
    direct_sum,
    extend_scalars,
    regular_module,
    restrict_subgroup,
    trivial_module,
)
from modclass.meataxe import (
    composition_factors,
    decompose,
    end_structure,
    endomorphism_basis,
    is_absolutely_indecomposable,
    is_absolutely_simple,
    is_indecomposable,
    is_isomorphic,
    is_simple,
    simple_modules,
    try_canonical_form,
)
from modclass.perm_group import catalog

F2 = make_field(2, 1)
F3 = make_field(3, 1)
F4 = make_field(2, 2)
F5 = make_field(5, 1)


def _fields():
    return {2: F2, 3: F3, 5: F5}


# dims and endomorphism degrees of the simple modules, frozen after
# independent derivation
SIMPLES_TABLE = {
    ("C3", 2): ([1, 2], [1, 2]),
    ("C7", 2): ([1, 3, 3], [1, 3, 3]),
    ("S3", 2): ([1, 2], [1, 1]),
    ("S3", 3): ([1, 1], [1, 1]),
    ("A4", 2): ([1, 2], [1, 2]),
    ("A4", 3): ([1, 3], [1, 1]),
    ("D8", 2): ([1], [1]),
    ("Q8", 2): ([1], [1]),
    ("S3", 5): ([1, 1, 2], [1, 1, 1]),
}


def test_regular_c3_is_not_simple_with_witness():
    reg = regular_module(catalog()["C3"], F2)
    res = is_simple(reg)
    assert not res
    W = res.witness
    assert W is not None and 0 < W.shape[0] < 3
    assert linalg.is_invariant(F2, W, list(reg.matrices))
    # the all-ones vector spans the fixed line inside any witness closure
    sp = linalg.RowSpace(F2, 3)
    for row in W:
        sp.add(row)
    if sp.dim == 1:
        assert sp.contains(np.array([1, 1, 1], dtype=np.int64))


def test_one_dimensional_modules_are_simple():
    tr = trivial_module(catalog()["S3"], F2)
    assert is_simple(tr)
    assert is_absolutely_simple(tr)


def test_composition_factor_dims_of_regular_modules():
    table = {
        ("C3", 2): [1, 2],
        ("C7", 2): [1, 3, 3],
        ("S3", 2): [1, 1, 2, 2],
        ("A4", 2): [1, 1, 1, 1, 2, 2, 2, 2],
        ("D8", 2): [1] * 8,
        ("Q8", 2): [1] * 8,
        ("S3", 3): [1, 1, 1, 1, 1, 1],
        ("S3", 5): [1, 1, 2, 2],
    }
    for (name, p), dims in table.items():
        reg = regular_module(catalog()[name], _fields()[p])
        got = sorted(W.dim for W in composition_factors(reg))
        assert got == dims, (name, p, got)


@pytest.mark.parametrize("name, p", sorted(SIMPLES_TABLE))
def test_simple_modules_battery(name, p):
    G = catalog()[name]
    S = simple_modules(G, _fields()[p])
    dims, ends = SIMPLES_TABLE[(name, p)]
    assert [W.dim for W in S.modules] == dims
    assert list(S.end_degrees) == ends
    for W in S.modules:
        assert is_simple(W)
        assert len(endomorphism_basis(W.field, list(W.matrices), W.dim)) == ends[
            S.modules.index(W)
        ]


def test_decompose_regular_s3_block_structure():
    reg = regular_module(catalog()["S3"], F2)
    dec = decompose(reg)
    assert sorted((W.dim, m) for W, m in dec.summands) == [(2, 1), (2, 2)]
    conj = dec.conjugated_matrices()
    off = 0
    for W, m in dec.summands:
        for _ in range(m):
            for Mc, Mw in zip(conj, W.matrices):
                # repeated summands appear as literally identical blocks
                assert np.array_equal(Mc[off : off + W.dim, off : off + W.dim], Mw)
                assert not Mc[off : off + W.dim, : off].any()
                assert not Mc[off : off + W.dim, off + W.dim :].any()
            off += W.dim
    assert dec.total_dim() == 6


def test_decompose_regular_a4():
    reg = regular_module(catalog()["A4"], F2)
    dec = decompose(reg)
    assert sorted((W.dim, m) for W, m in dec.summands) == [(4, 1), (8, 1)]
    big = [W for W, _ in dec.summands if W.dim == 8][0]
    assert is_indecomposable(big)
    assert not is_absolutely_indecomposable(big)
    assert end_structure(big) == (6, 4, True)


def test_decompose_is_seed_stable():
    reg = regular_module(catalog()["S3"], F2)
    expected = [(2, 1), (2, 2)]
    for seed in range(10):
        got = sorted((W.dim, m) for W, m in decompose(reg, seed=seed).summands)
        assert got == expected


def test_decompose_random_basis_change():
    rng = np.random.default_rng(11)
    reg = regular_module(catalog()["S3"], F3)
    base = sorted((W.dim, m) for W, m in decompose(reg).summands)
    for _ in range(3):
        T = F3.rand_codes(rng, (6, 6))
        while not linalg.is_invertible(F3, T):
            T = F3.rand_codes(rng, (6, 6))
        Ti = linalg.inverse(F3, T)
        mats = [F3.mat_mul(F3.mat_mul(Ti, M), T) for M in reg.matrices]
        got = sorted((W.dim, m) for W, m in decompose(Rep(catalog()["S3"], F3, mats)).summands)
        assert got == base


def test_regular_c2_is_indecomposable_but_not_simple():
    C2 = catalog()["C2"]
    reg = regular_module(C2, F2)
    assert not is_simple(reg)
    assert is_indecomposable(reg)
    assert is_absolutely_indecomposable(reg)
    assert end_structure(reg) == (2, 1, True)


def test_restriction_of_regular_to_subgroup():
    reg = regular_module(catalog()["S3"], F2)
    H = catalog()["S3"].generated_subgroup([(1, 0, 2)])
    res = restrict_subgroup(reg, H)
    dec = decompose(res)
    # free of rank [G:H] over the subgroup algebra
    assert sorted((W.dim, m) for W, m in dec.summands) == [(2, 3)]


def test_is_isomorphic_positive_and_negative():
    C7 = catalog()["C7"]
    cf = composition_factors(regular_module(C7, F2))
    threes = [W for W in cf if W.dim == 3]
    assert len(threes) == 2
    assert not is_isomorphic(threes[0], threes[1])
    # conjugated copy is isomorphic, with a verified intertwiner
    rng = np.random.default_rng(2)
    T = F2.rand_codes(rng, (3, 3))
    while not linalg.is_invertible(F2, T):
        T = F2.rand_codes(rng, (3, 3))
    Ti = linalg.inverse(F2, T)
    W = threes[0]
    Wc = Rep(C7, F2, [F2.mat_mul(F2.mat_mul(Ti, M), T) for M in W.matrices])
    res = is_isomorphic(W, Wc)
    assert res
    phi = res.map
    for A, B in zip(W.matrices, Wc.matrices):
        assert np.array_equal(F2.mat_mul(phi, A), F2.mat_mul(B, phi))


def test_is_isomorphic_rejects_different_dims_and_groups():
    C3 = catalog()["C3"]
    tr = trivial_module(C3, F2)
    reg = regular_module(C3, F2)
    assert not is_isomorphic(tr, reg)
    with pytest.raises(InputError):
        is_isomorphic(tr, trivial_module(catalog()["S3"], F2))


def test_extension_of_scalars_splits_nonabsolute_simple():
    C3 = catalog()["C3"]
    M2 = [W for W in composition_factors(regular_module(C3, F2)) if W.dim == 2][0]
    assert is_simple(M2) and not is_absolutely_simple(M2)
    ext = extend_scalars(M2, F4)
    dec = decompose(ext)
    assert sorted((W.dim, m) for W, m in dec.summands) == [(1, 1), (1, 1)]
    a, b = dec.summands[0][0], dec.summands[1][0]
    assert not is_isomorphic(a, b)


def test_direct_sum_decomposes_to_parts():
    S3 = catalog()["S3"]
    tr = trivial_module(S3, F2)
    S = simple_modules(S3, F2)
    M = S.modules[1]
    V = direct_sum(direct_sum(tr, M), M)
    dec = decompose(V)
    assert sorted((W.dim, m) for W, m in dec.summands) == [(1, 1), (2, 2)]


def test_canonical_form_is_basis_invariant():
    C3 = catalog()["C3"]
    M2 = [W for W in composition_factors(regular_module(C3, F2)) if W.dim == 2][0]
    cf = try_canonical_form(M2)
    assert cf is not None
    rng = np.random.default_rng(9)
    for _ in range(4):
        T = F2.rand_codes(rng, (2, 2))
        while not linalg.is_invertible(F2, T):
            T = F2.rand_codes(rng, (2, 2))
        Ti = linalg.inverse(F2, T)
        Mc = Rep(C3, F2, [F2.mat_mul(F2.mat_mul(Ti, M), T) for M in M2.matrices])
        cf2 = try_canonical_form(Mc)
        assert cf2 is not None
        assert all(np.array_equal(a, b) for a, b in zip(cf.matrices, cf2.matrices))


def test_simple_set_index_of():
    S3 = catalog()["S3"]
    S = simple_modules(S3, F2)
    for i, W in enumerate(S.modules):
        assert S.index_of(W) == i


def test_zero_module_rejected():
    with pytest.raises(InputError):
        is_simple(Rep(catalog()["C2"], F2, [np.zeros((0, 0), dtype=np.int64)]))
