from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mackeylab.errors import AxiomViolation, ShapeMismatch
from mackeylab.mackey import (
    C2Set,
    MackeyFunctor,
    MackeyMorphism,
    augmentation,
    check_axioms,
    cokernel,
    decompose,
    direct_sum,
    identity_morphism,
    ideal_inclusion,
    kernel,
    std_augmentation_ideal,
    std_burnside,
    std_constant,
    std_permutation,
    tensor_c2set,
    zero_morphism,
)
from mackeylab.qlinalg import RationalMatrix as M

STANDARD = {
    "Z": (std_constant, (1, 0, 0)),
    "A": (std_burnside, (1, 0, 1)),
    "I": (std_augmentation_ideal, (0, 0, 1)),
    "Z[C2]": (std_permutation, (1, 1, 0)),
}


@pytest.mark.parametrize("name", STANDARD)
def test_standard_functors(name):
    ctor, triple = STANDARD[name]
    assert check_axioms(ctor()).passed
    assert decompose(ctor()) == triple


def test_constant_transfer_is_two():
    Z = std_constant()
    assert Z.res @ Z.tr == M([[2]])


def test_burnside_res_and_tr():
    A = std_burnside()
    assert A.res.apply((0, 1)) == (2,)  # res(T) = 2
    assert A.tr.apply((1,)) == (0, 1)  # tr(1) = T
    assert A.res.apply((3, 5)) == (13,)  # a + 2b


def test_ideal_underlying_is_zero():
    assert std_augmentation_ideal().dims() == (0, 1)


def test_permutation_layout():
    P = std_permutation()
    assert P.tau == M([[0, 1], [1, 0]])
    assert P.res == M([[1], [1]])
    assert P.tr == M([[1, 1]])
    # res tr (a, b) = (a + b, a + b)
    assert (P.res @ P.tr).apply((2, 5)) == (7, 7)


def test_axiom_failures():
    bad = MackeyFunctor.build([[1]], 1, [[1]], [[3]])
    assert check_axioms(bad).failures() == ["res tr = 1 + tau"]
    flat = MackeyFunctor.build([[1, 0], [0, 1]], 1, [[1], [1]], [[1, 1]])
    report = check_axioms(flat)
    assert dict(report.results)["tau^2 = 1"]
    assert not report.passed


def test_shape_mismatch():
    with pytest.raises(ShapeMismatch):
        MackeyFunctor(std_constant().underlying, 2, M([[1]]), M([[2]]))


def test_beta_by_hand():
    # beta = tr res / 2 on A: beta(1) = T/2, beta(T) = T
    A = std_burnside()
    beta = (A.tr @ A.res).scale(Fraction(1, 2))
    assert beta == M([[0, 0], [Fraction(1, 2), 1]])
    assert beta @ beta == beta


def test_tensor_with_free_orbit():
    free = C2Set.free_orbit()
    assert tensor_c2set(std_constant(), free) == std_permutation()
    assert decompose(tensor_c2set(std_burnside(), free)) == decompose(tensor_c2set(std_constant(), free))
    assert tensor_c2set(std_constant(), free).fixed_dim == 1
    assert tensor_c2set(std_augmentation_ideal(), free).is_zero()


@pytest.mark.parametrize("name", STANDARD)
def test_tensor_with_point_is_identity(name):
    Mf = STANDARD[name][0]()
    assert tensor_c2set(Mf, C2Set.point()) == Mf


def test_tensor_with_general_set():
    S = C2Set(("point", "free", "free"))
    assert S.cardinality() == 5
    T = tensor_c2set(std_burnside(), S)
    assert check_axioms(T).passed
    assert decompose(T) == (3, 2, 1)


def test_kernel_of_augmentation_is_ideal():
    K, inc = kernel(augmentation())
    assert decompose(K) == (0, 0, 1)
    assert inc.check().passed
    # the generator is proportional to T - 2
    (col,) = inc.f_f.columns()
    assert col[0] == -2 * col[1]


def test_quotient_by_ideal_is_constant():
    assert ideal_inclusion().check().passed
    Q, proj = cokernel(ideal_inclusion())
    assert Q == std_constant()
    assert proj.check().passed


def test_kernel_cokernel_trivial_cases():
    A = std_burnside()
    C, _ = cokernel(identity_morphism(A))
    assert C.is_zero()
    K, _ = kernel(zero_morphism(A, A))
    assert decompose(K) == decompose(A)


def test_non_morphism_kernel_raises():
    # fixed-level map not compatible with res: its kernel is not a sub-functor
    A = std_burnside()
    f = MackeyMorphism(A, A, M.identity(1), M([[1, 0], [0, 0]]))
    assert not f.check().passed
    with pytest.raises(AxiomViolation):
        kernel(f)


def test_json_round_trip():
    A = std_burnside()
    obj = A.to_json()
    assert obj["res"] == [["1/1", "2/1"]]
    assert MackeyFunctor.from_json(obj) == A


def test_permutation_with_trivial_tau_breaks_tensor_identity():
    P = MackeyFunctor.build([[1, 0], [0, 1]], 1, [[1], [1]], [[1, 1]])
    assert P != tensor_c2set(std_constant(), C2Set.free_orbit())


functor_lists = st.lists(st.sampled_from(sorted(STANDARD)), min_size=0, max_size=4)


@settings(max_examples=40, deadline=None)
@given(functor_lists)
def test_decompose_additive_over_sums(names):
    parts = [STANDARD[n][0]() for n in names]
    total = direct_sum(*parts)
    assert check_axioms(total).passed
    expected = tuple(sum(t) for t in zip((0, 0, 0), *(STANDARD[n][1] for n in names)))
    assert decompose(total) == expected
    assert total.underlying.eigenspace_dim(1) == expected[0]
