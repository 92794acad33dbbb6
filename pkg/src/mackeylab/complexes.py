"""Chain complexes of C2-Mackey functors and their homology.

Grading is homological: the differential ``d_k`` goes from degree ``k`` to
``k - 1`` and degrees are absolute integers.  Over Q exactness is levelwise,
so homology is computed level by level and then equipped with the induced
tau, res and tr.

The complex computing ``S^{i rho} (x) Z`` has ``Z`` in degree ``i`` and
``Z[C2]`` in degrees ``i+1 .. 2i``.  The bottom differential is induced by the
transfer of ``Z[C2]``; above it the differentials alternate ``1 - tau``,
``1 + tau``, ... starting from the one landing in degree ``i + 1``, so the top
one is ``1 - (-1)^i tau``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .errors import AxiomViolation, InvalidDegree, ShapeMismatch
from .mackey import (
    MackeyFunctor,
    MackeyMorphism,
    Subquotient,
    check_axioms,
    decompose,
    identity_morphism,
    std_burnside,
    std_constant,
    std_permutation,
    zero_functor,
    zero_morphism,
)
from .qlinalg import RationalMatrix as Mat, kernel_basis


@dataclass(frozen=True)
class MackeyComplex:
    """Terms in degrees ``lo..hi``; ``differentials[k]`` maps term ``k`` to ``k-1``."""

    terms: Mapping[int, MackeyFunctor]
    differentials: Mapping[int, MackeyMorphism] = field(default_factory=dict)

    def __post_init__(self):
        if self.terms:
            lo, hi = min(self.terms), max(self.terms)
            if set(self.terms) != set(range(lo, hi + 1)):
                raise InvalidDegree("degrees must form a contiguous range")
        for k, d in self.differentials.items():
            if k not in self.terms or k - 1 not in self.terms:
                raise InvalidDegree(f"differential d_{k} has no source or target term")
            if d.source != self.terms[k] or d.target != self.terms[k - 1]:
                raise ShapeMismatch(f"differential d_{k} does not match its terms")

    @property
    def degrees(self) -> range:
        if not self.terms:
            return range(0)
        return range(min(self.terms), max(self.terms) + 1)

    def term(self, k: int) -> MackeyFunctor:
        return self.terms.get(k, zero_functor())

    def d(self, k: int) -> MackeyMorphism:
        """``d_k``, zero when not stored (including at the ends of the range)."""
        if k in self.differentials:
            return self.differentials[k]
        return zero_morphism(self.term(k), self.term(k - 1))

    def d_squared_zero(self) -> bool:
        for k in self.degrees:
            dd = self.d(k - 1).compose(self.d(k))
            if not dd.is_zero():
                return False
        return True

    def differentials_valid(self) -> bool:
        return all(self.d(k).check().passed for k in self.degrees)


def zero_complex() -> MackeyComplex:
    return MackeyComplex({})


def concentrated(M: MackeyFunctor, degree: int) -> MackeyComplex:
    return MackeyComplex({degree: M})


def _tau_differential(sign: int) -> MackeyMorphism:
    # 1 + sign*tau on Z[C2]; on the fixed generator 1 + tau it is (1 + sign) times it.
    P = std_permutation()
    return MackeyMorphism(P, P, Mat([[1, sign], [sign, 1]]), Mat([[1 + sign]]))


def _rho_suspension(i: int, bottom: MackeyFunctor, bottom_d: MackeyMorphism) -> MackeyComplex:
    if i < 1:
        raise InvalidDegree(f"suspension multiple must be >= 1, got {i}")
    P = std_permutation()
    terms = {i: bottom}
    terms.update({k: P for k in range(i + 1, 2 * i + 1)})
    diffs = {i + 1: bottom_d}
    for k in range(i + 2, 2 * i + 1):
        diffs[k] = _tau_differential(-1 if (k - i) % 2 == 0 else 1)
    return MackeyComplex(terms, diffs)


def rho_suspension_Z(i: int) -> MackeyComplex:
    """The complex computing ``S^{i rho} (x) Z``."""
    Z = std_constant()
    # coefficient sum underlying; 1 + tau sums to 2 on the fixed level
    bottom = MackeyMorphism(std_permutation(), Z, Mat([[1, 1]]), Mat([[2]]))
    return _rho_suspension(i, Z, bottom)


def rho_suspension_A(m: int) -> MackeyComplex:
    """As :func:`rho_suspension_Z` with ``A`` at the bottom; the fixed generator goes to T."""
    A = std_burnside()
    bottom = MackeyMorphism(std_permutation(), A, Mat([[1, 1]]), Mat([[0], [1]]))
    return _rho_suspension(m, A, bottom)


def shift(C: MackeyComplex, s: int) -> MackeyComplex:
    """Translate all degrees by ``s`` (no sign change on the differentials)."""
    return MackeyComplex(
        {k + s: M for k, M in C.terms.items()},
        {k + s: d for k, d in C.differentials.items()},
    )


def _homology_sq(C: MackeyComplex, k: int) -> Subquotient:
    M = C.term(k)
    u, f = M.dims()
    d_out, d_in = C.d(k), C.d(k + 1)
    return Subquotient(
        M,
        Mat.from_columns(kernel_basis(d_out.f_u), u),
        Mat.from_columns(kernel_basis(d_out.f_f), f),
        d_in.f_u,
        d_in.f_f,
    )


def homology_at(C: MackeyComplex, k: int) -> MackeyFunctor:
    return _homology_sq(C, k).functor


def homology(C: MackeyComplex) -> dict[int, MackeyFunctor]:
    """Homology in every degree of the complex, zero groups included."""
    return {k: homology_at(C, k) for k in C.degrees}


def homology_triples(C: MackeyComplex) -> dict[int, tuple[int, int, int]]:
    return {k: decompose(H) for k, H in homology(C).items()}


def nonzero_homology(C: MackeyComplex) -> dict[int, MackeyFunctor]:
    return {k: H for k, H in homology(C).items() if not H.is_zero()}


def euler_characteristics(C: MackeyComplex) -> tuple[tuple[int, int], tuple[int, int]]:
    """``((chi_u terms, chi_f terms), (chi_u homology, chi_f homology))``."""
    H = homology(C)
    terms = tuple(sum((-1) ** k * C.term(k).dims()[lvl] for k in C.degrees) for lvl in (0, 1))
    homs = tuple(sum((-1) ** k * H[k].dims()[lvl] for k in C.degrees) for lvl in (0, 1))
    return terms, homs


@dataclass(frozen=True)
class ChainMap:
    source: MackeyComplex
    target: MackeyComplex
    components: Mapping[int, MackeyMorphism]

    def component(self, k: int) -> MackeyMorphism:
        if k in self.components:
            return self.components[k]
        return zero_morphism(self.source.term(k), self.target.term(k))

    def _all_degrees(self) -> set[int]:
        return set(self.source.degrees) | set(self.target.degrees)

    def is_chain_map(self) -> bool:
        for k in self._all_degrees() | {k + 1 for k in self._all_degrees()}:
            lhs = self.target.d(k).compose(self.component(k))
            rhs = self.component(k - 1).compose(self.source.d(k))
            if lhs.f_u != rhs.f_u or lhs.f_f != rhs.f_f:
                return False
        return all(self.component(k).check().passed for k in self._all_degrees())

    def induced(self, k: int) -> MackeyMorphism:
        """The induced morphism on degree-``k`` homology."""
        return _homology_sq(self.source, k).induced(self.component(k), _homology_sq(self.target, k))


def euler_chain_map(n: int) -> ChainMap:
    """Inclusion of the bottom cell ``S^{2n} (x) A -> S^{2n rho} (x) A``."""
    if n < 1:
        raise InvalidDegree(f"n must be >= 1, got {n}")
    A = std_burnside()
    return ChainMap(concentrated(A, 2 * n), rho_suspension_A(2 * n), {2 * n: identity_morphism(A)})


def complex_report(C: MackeyComplex) -> dict:
    """``{degree: {underlying_dim, fixed_dim, triple}}`` for the homology of ``C``."""
    out = {}
    for k, H in homology(C).items():
        if check_axioms(H).passed is False:
            raise AxiomViolation(f"homology in degree {k} is not a Mackey functor")
        u, f = H.dims()
        out[str(k)] = {"underlying_dim": u, "fixed_dim": f, "triple": list(decompose(H))}
    return out


def with_entry(C: MackeyComplex, k: int, level: str, i: int, j: int, value) -> MackeyComplex:
    """Copy of ``C`` with one entry of ``d_k`` replaced; used to test that checks can fail."""
    d = C.d(k)
    m = d.f_u if level == "u" else d.f_f
    rows = [list(r) for r in m.rows]
    rows[i][j] = value
    m = Mat(rows, m.shape)
    new = MackeyMorphism(d.source, d.target, m if level == "u" else d.f_u, m if level == "f" else d.f_f)
    return MackeyComplex(C.terms, {**C.differentials, k: new})
