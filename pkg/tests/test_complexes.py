import json

import pytest
from hypothesis import given, strategies as st

from colonres.complexes import (
    ChainComplex,
    ChainMap,
    GradedFreeModule,
    ModuleMap,
    Vector,
    default_degree_bound,
    direct_sum,
    dumps,
    koszul_complex,
    mapping_cone,
    split_trim,
    tensor_double_complex,
    tensor_map,
    tensor_module,
    total_differential_residual,
    verify_exactness,
    zigzag_lift,
)
from colonres.errors import InputError, LiftError, NotAComplexError, VerificationError
from colonres.ringcore import Field, WeightedRing

R = WeightedRing((1, 1, 1))
x, y, z = R.gens


def test_module_basics():
    M = GradedFreeModule(R, ["a", "b"], [0, 2])
    assert M.rank == 2 and M.dim(2) == 1 + 6
    v = M.vector({"a": x**2, "b": 3})
    assert v.degree() == 2 and v["b"] == R.const(3)
    assert v.residue() == {1: 3}
    with pytest.raises(InputError):
        GradedFreeModule(R, ["a", "a"], [0, 0])
    with pytest.raises(KeyError):
        M.index("c")


def test_map_rejects_inhomogeneous_entries():
    M = GradedFreeModule(R, ["a"], [1])
    N = GradedFreeModule(R, ["b"], [0])
    with pytest.raises(InputError):
        ModuleMap.from_rows(M, N, [[x**2]])
    ModuleMap.from_rows(M, N, [[y]])


def test_direct_sum_labels():
    A = GradedFreeModule(R, ["p"], [1])
    B = GradedFreeModule(R, ["q", "r"], [0, 2])
    S = direct_sum([A, B])
    assert S.labels == ("[p]", "<q>", "<r>") and S.degrees == (1, 0, 2)


def test_koszul_three_layout_and_signs():
    K = koszul_complex(R, x, y, z)
    assert K.ranks() == (1, 3, 3, 1)
    assert K.module(2).labels == ("e23", "e13", "e12")
    d3 = K.map(3).column(0)
    assert d3.as_strings() == {"e23": "x", "e13": "-y", "e12": "z"}
    d2 = K.map(2)
    # d(e_i ^ e_j) = x_i e_j - x_j e_i
    assert d2.column("e23").as_strings() == {"e3": "y", "e2": "-z"}
    assert d2.column("e12").as_strings() == {"e2": "x", "e1": "-y"}


def test_koszul_exact_to_degree_twelve():
    rep = verify_exactness(koszul_complex(R, x, y, z), 12)
    assert rep.exact
    assert rep.table[12][0] == (1, rep.table[12][0][1], rep.table[12][0][2])


@given(
    st.integers(1, 3), st.integers(1, 3), st.integers(1, 3),
    st.integers(0, 2), st.integers(0, 2), st.sampled_from([0, 2, 3]),
)
def test_koszul_on_regular_sequences_is_exact(a, b, c, i, j, p):
    """(x^a, y^b, z^c + x^i y^j) with i + j = c is a regular sequence in any characteristic."""
    ring = WeightedRing((1, 1, 1), Field(p))
    X, Y, Z = ring.gens
    if i + j != c:
        j = max(c - i, 0)
        i = c - j
    K = koszul_complex(ring, X**a, Y**b, Z**c + X**i * Y**j)
    K.check_complex()
    assert verify_exactness(K, a + b + c + 2).exact


def test_koszul_on_dependent_elements_is_not_exact():
    assert not verify_exactness(koszul_complex(R, x, y, x * y), 6).exact


def test_non_complex_detected():
    K = koszul_complex(R, x, y, z)
    bad = ModuleMap(K.module(2), K.module(1), [dict(c) for c in K.map(2).cols])
    bad.cols[0] = {i: -p for i, p in bad.cols[0].items()}
    bad.cols[0][0] = bad.cols[0].get(0, R.zero()) + z  # breaks d o d
    with pytest.raises(NotAComplexError):
        ChainComplex([K.map(1), bad, K.map(3)])


def test_complex_json_round_trip_is_byte_identical():
    K = koszul_complex(WeightedRing((2, 3, 5), Field(3)), *WeightedRing((2, 3, 5), Field(3)).gens)
    text = dumps(K.to_json())
    again = dumps(ChainComplex.from_json(json.loads(text)).to_json())
    assert text == again


def test_tensor_map_is_first_factor_major():
    K = koszul_complex(R, x, y)
    T = tensor_module(K.module(1), K.module(1))
    assert T.labels[:2] == ("e1⊗e1", "e1⊗e2")
    f = tensor_map(K.map(1), ModuleMap.identity(K.module(1)))
    assert f.column(1).as_strings() == {"1⊗e2": "x"}


def test_cone_of_identity_is_exact_and_split_trims_to_zero_homology():
    K = koszul_complex(R, x, y, z)
    ident = ChainMap(K, K, [ModuleMap.identity(m) for m in K.modules])
    C = mapping_cone(ident)
    C.check_complex()
    # Cone of an isomorphism: all homology vanishes, including at position 1
    rep = verify_exactness(C, 6)
    assert rep.exact


def test_cone_sign_pattern():
    K = koszul_complex(R, x, y, z)
    ident = ChainMap(K, K, [ModuleMap.identity(m) for m in K.modules])
    C = mapping_cone(ident)
    # d_2 = [[phi_2, -id], [0, del_1]] and d_3 = [[phi_3, +id], [0, del_2]]
    d2, d3 = C.map(2), C.map(3)
    assert d2.column("<e1>").as_strings() == {"[e1]": "-1", "<1>": "x"}
    assert d3.column("<e23>")["[e23]"] == R.one()
    src_first = mapping_cone(ident, source_first=True)
    assert src_first.module(2).labels[:3] == ("[e1]", "[e2]", "[e3]")
    src_first.check_complex()


def test_chain_map_square_check():
    K = koszul_complex(R, x, y, z)
    maps = [ModuleMap.identity(m) for m in K.modules]
    maps[1] = maps[1].scale(2)
    with pytest.raises(VerificationError):
        ChainMap(K, K, maps)


def test_split_trim_checks_and_result():
    K = koszul_complex(R, x, y, z)
    ident = ChainMap(K, K, [ModuleMap.identity(m) for m in K.modules])
    C = mapping_cone(ident, source_first=True)
    top = C.module(4)
    C3 = C.module(3)
    # C_4 = G_3 maps to [G_2] ⊕ <F_3>; the <F_3> coordinate is +-id
    j = C3.index("<e123>")
    sign = C.map(4).cols[0][j]
    phi = ModuleMap(C3, top, [{} for _ in range(C3.rank)])
    phi.cols[j] = {0: sign}
    basis = [C3.basis_vector(lab) for lab in C3.labels if lab != "<e123>"]
    trimmed = split_trim(C, phi, basis)
    assert len(trimmed.maps) == 3 and trimmed.module(3).rank == 3
    with pytest.raises(VerificationError):
        split_trim(C, phi.scale(2), basis)
    with pytest.raises(VerificationError):
        split_trim(C, phi, basis[:-1])


def test_double_complex_and_zigzag():
    K = koszul_complex(R, x, y, z)
    F = koszul_complex(R, x, y, z)
    dc = tensor_double_complex(K, F)
    dc.check()
    # xi0 = 1 ⊗ e123; pick xi1 with dh(xi1) = -dv(xi0) by solving
    xi0 = Vector(dc.cells[(0, 3)], {0: R.one()})
    xi1 = dc.dh[(1, 2)].solve(-dc.dv[(0, 3)].apply(xi0))
    xi2, xi3 = zigzag_lift(dc, xi0, xi1)
    r0, r1, r2 = total_differential_residual(dc, xi0, xi1, xi2, xi3)
    assert r0.is_zero()
    assert (dc.dh[(2, 1)].apply(xi2) - dc.dv[(1, 2)].apply(xi1)).is_zero()
    assert (dc.dh[(3, 0)].apply(xi3) + dc.dv[(2, 1)].apply(xi2)).is_zero()


def test_zigzag_fails_on_non_exact_rows():
    K = koszul_complex(R, x, y, x * y)
    F = koszul_complex(R, x, y, z)
    dc = tensor_double_complex(K, F)
    # y*e1 - e3 is a Koszul cycle that is not a boundary
    xi0 = Vector(dc.cells[(0, 3)], {})
    xi1 = dc.cells[(1, 2)].vector({"e1⊗e23": y, "e3⊗e23": -1})
    with pytest.raises(LiftError):
        zigzag_lift(dc, xi0, xi1)
    with pytest.raises(InputError):
        zigzag_lift(dc, Vector(dc.cells[(0, 3)], {0: R.one()}), xi1)


def test_default_degree_bound():
    K = koszul_complex(R, x, y, z)
    assert default_degree_bound(K) == 2 * 3 + 2
