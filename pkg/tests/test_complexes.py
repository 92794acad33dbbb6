import pytest

from mackeylab.complexes import (
    ChainMap,
    MackeyComplex,
    complex_report,
    concentrated,
    euler_chain_map,
    euler_characteristics,
    homology,
    homology_triples,
    nonzero_homology,
    rho_suspension_A,
    rho_suspension_Z,
    shift,
    with_entry,
    zero_complex,
)
from mackeylab.errors import InvalidDegree
from mackeylab.mackey import check_axioms, identity_morphism, std_constant, std_permutation, zero_functor
from mackeylab.qlinalg import RationalMatrix as M, kernel_basis


def test_i1_complex_shape():
    C = rho_suspension_Z(1)
    assert list(C.degrees) == [1, 2]
    d = C.d(2)
    assert d.f_u == M([[1, 1]])  # sum of coefficients
    assert d.f_f == M([[2]])


def test_i2_fixed_chain():
    # fixed chain in degrees 4, 3, 2 is Q --0--> Q --2--> Q
    C = rho_suspension_Z(2)
    assert C.d(4).f_f == M([[0]])
    assert C.d(3).f_f == M([[2]])
    assert C.d(4).f_u == M([[1, -1], [-1, 1]])


@pytest.mark.parametrize("i", range(1, 9))
def test_top_differential(i):
    C = rho_suspension_Z(i)
    if i >= 2:
        sign = -((-1) ** i)  # 1 - (-1)^i tau
        assert C.d(2 * i).f_u == M([[1, sign], [sign, 1]])
    assert C.d(2 * i).f_f == M([[2 if i % 2 else 0]])


@pytest.mark.parametrize("i", range(1, 9))
def test_homology_of_Z_complex(i):
    C = rho_suspension_Z(i)
    assert C.d_squared_zero() and C.differentials_valid()
    H = nonzero_homology(C)
    assert list(H) == [2 * i]
    assert H[2 * i].dims() == (1, 1 if i % 2 == 0 else 0)
    assert homology_triples(C)[2 * i] == ((1, 0, 0) if i % 2 == 0 else (0, 1, 0))


@pytest.mark.parametrize("m", [2, 4, 6, 8])
def test_homology_of_A_complex(m):
    C = rho_suspension_A(m)
    assert C.d_squared_zero() and C.differentials_valid()
    H = nonzero_homology(C)
    assert {k: h.dims() for k, h in H.items()} == {m: (0, 1), 2 * m: (1, 1)}


@pytest.mark.parametrize("m", range(1, 9))
def test_A_complex_matches_Z_underlying(m):
    A, Z = rho_suspension_A(m), rho_suspension_Z(m)
    assert all(A.d(k).f_u == Z.d(k).f_u for k in A.degrees)
    assert A.d(m + 1).f_f == M([[0], [1]])  # fixed generator goes to T


def test_odd_A_complex_is_well_defined():
    C = rho_suspension_A(3)
    assert C.d_squared_zero() and C.differentials_valid()


@pytest.mark.parametrize("make", [rho_suspension_Z, rho_suspension_A])
@pytest.mark.parametrize("i", range(1, 7))
def test_euler_characteristic_and_axioms(make, i):
    C = make(i)
    terms, homs = euler_characteristics(C)
    assert terms == homs
    assert all(check_axioms(H).passed for H in homology(C).values())


def test_zero_complex():
    assert homology(zero_complex()) == {}
    C = MackeyComplex({0: zero_functor()})
    assert all(H.is_zero() for H in homology(C).values())


def test_invalid_degree():
    with pytest.raises(InvalidDegree):
        rho_suspension_Z(0)
    with pytest.raises(InvalidDegree):
        MackeyComplex({0: std_constant(), 2: std_constant()})


def test_shift():
    C = rho_suspension_Z(2)
    assert shift(C, 0) == C
    S = shift(C, -1)
    assert list(nonzero_homology(S)) == [3]
    for k, H in homology(C).items():
        assert homology(S)[k - 1] == H


@pytest.mark.parametrize("n", range(1, 5))
def test_euler_chain_map(n):
    e = euler_chain_map(n)
    assert e.is_chain_map()
    f = e.induced(2 * n)
    (v,) = kernel_basis(f.f_f)
    assert v == (0, 1)  # span{T}
    assert f.f_f.rank() == 1
    assert f.f_u.is_zero()
    assert e.induced(4 * n).is_zero()


def test_bad_chain_map_detected():
    # Z[C2] in degree 3 mapped identically: d_3 of the target is nonzero
    P = std_permutation()
    e = ChainMap(concentrated(P, 3), rho_suspension_A(2), {3: identity_morphism(P)})
    assert not e.is_chain_map()


def test_with_entry_breaks_complex():
    C = with_entry(rho_suspension_Z(3), 5, "u", 0, 1, 1)
    assert not C.d_squared_zero() or not C.differentials_valid()


def test_complex_report():
    rep = complex_report(rho_suspension_Z(2))
    assert rep["4"] == {"underlying_dim": 1, "fixed_dim": 1, "triple": [1, 0, 0]}
    assert rep["2"]["underlying_dim"] == 0
