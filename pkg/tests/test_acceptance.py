"""Acceptance criteria, one test per criterion, each under its runtime budget.

Run with ``pytest tests/test_acceptance.py -s`` to see the PASS/FAIL lines
inline; they are also repeated in the terminal summary.
"""

from mackeylab.c2model import (
    check_corollary_even,
    check_corollary_odd,
    check_main_theorem,
    euler_class_map,
    fiber_F_homotopy,
    ideal_inclusion_map,
    map_norm,
    map_square,
    map_square_minus_norm,
)
from mackeylab.cli import check_euler_chain_map, cmd_verify_complex, cmd_verify_maps, cmd_verify_theorem
from mackeylab.complexes import euler_chain_map, homology, rho_suspension_A, rho_suspension_Z
from mackeylab.gem import GemModel
from mackeylab.mackey import (
    C2Set,
    check_axioms,
    decompose,
    std_augmentation_ideal,
    std_burnside,
    std_constant,
    std_permutation,
    tensor_c2set,
)
from mackeylab.qlinalg import kernel_basis


def test_1_mackey_axioms(criterion):
    with criterion("1 Mackey axiom suite", 1.0):
        expected = {
            std_constant: (1, 0, 0),
            std_burnside: (1, 0, 1),
            std_augmentation_ideal: (0, 0, 1),
            std_permutation: (1, 1, 0),
        }
        for make, triple in expected.items():
            M = make()
            assert check_axioms(M).passed, make.__name__
            assert decompose(M) == triple, make.__name__
        free = C2Set.free_orbit()
        assert decompose(tensor_c2set(std_burnside(), free)) == decompose(tensor_c2set(std_constant(), free))


def test_2_complex_homology(criterion):
    with criterion("2 complex homology table", 5.0):
        for i in range(1, 9):
            H = {k: M.dims() for k, M in homology(rho_suspension_Z(i)).items() if not M.is_zero()}
            assert H == {2 * i: (1, 1 if i % 2 == 0 else 0)}, i
        for m in (2, 4, 6, 8):
            H = {k: M.dims() for k, M in homology(rho_suspension_A(m)).items() if not M.is_zero()}
            assert H == {m: (0, 1), 2 * m: (1, 1)}, m


def test_3_euler_chain_map(criterion):
    with criterion("3 Euler chain map", 1.0):
        for n in range(1, 5):
            induced = euler_chain_map(n).induced(2 * n)
            ker = kernel_basis(induced.f_f)
            assert len(ker) == 1 and ker[0][0] == 0 and ker[0][1] != 0, n
            assert induced.f_f.rank() == 1
            assert induced.f_u.is_zero()


def test_4_map_identities(criterion):
    with criterion("4 map identities", 1.0):
        for n in range(1, 5):
            sq, nm = map_square(n), map_norm(n)
            assert sq.is_compatible() and nm.is_compatible()
            assert sq.u_pullback == nm.u_pullback
            smn = map_square_minus_norm(n)
            assert smn.u_pullback.images() == ()
            x = smn.source.fixed.gen(f"x{2 * n}")
            y = smn.source.fixed.gen(f"y{4 * n}'")
            assert smn.f_pullback.image(f"z{4 * n}") == x ** 2 - y
            assert smn.then(ideal_inclusion_map(n)) == sq - nm
            assert euler_class_map(n).then(smn).is_zero()


def test_5_main_theorem(criterion):
    with criterion("5 main theorem, D = 32", 60.0):
        for n in (1, 2, 3):
            rep = check_main_theorem(n, 32)
            assert rep.passed, (n, [f.item for f in rep.failures()][:5])


def test_6_corollaries(criterion):
    with criterion("6 corollaries", 1.0):
        for n in range(1, 5):
            rep = check_corollary_even(n)
            assert rep.passed, (n, rep.failures())
            rep = check_corollary_odd(n)
            assert rep.passed, (n, rep.failures())
            # spelled out independently of the checker's own expectations
            h = fiber_F_homotopy(n)
            assert h.fixed.loop() == GemModel({2 * n - 1: 1})
            assert h.underlying.loop() == GemModel({4 * n - 1: 1})


def test_7_mutation_sensitivity(criterion):
    with criterion("7 mutation sensitivity", 60.0):
        # (2) one differential sign flipped
        for i in range(1, 9):
            assert cmd_verify_complex(i, "Z").passed
            assert not cmd_verify_complex(i, "Z", corrupt=True).passed, i
        # (3) the transfer coefficient of the bottom differential moved from T to 1
        for n in range(1, 5):
            assert check_euler_chain_map(n).passed
            assert not check_euler_chain_map(n, corrupt=True).passed, n
        # (4) one generator image of the norm changed
        for n in range(1, 5):
            assert cmd_verify_maps(n).passed
            assert not cmd_verify_maps(n, "scale").passed, n
            assert not cmd_verify_maps(n, "x").passed, n
        # (5) one generator image of the comparison map changed, or the Euler class dropped
        for n in (1, 2, 3):
            assert not cmd_verify_theorem(n, 32, "generator").passed, n
            assert not cmd_verify_theorem(n, 32, "drop-euler").passed, n
