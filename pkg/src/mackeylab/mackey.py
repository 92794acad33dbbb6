"""Rational Mackey functors for the group C2.

A Mackey functor is stored by its two levels:

* the underlying level ``M(C2/e)``, a vector space with an involution ``tau``;
* the fixed level ``M(C2/C2)``, a vector space of dimension ``fixed_dim``;

together with ``res`` (fixed -> underlying, an ``underlying.dim x fixed_dim``
matrix) and ``tr`` (underlying -> fixed).  Matrices act on column vectors.

Basis conventions, fixed once for the whole package:

* ``A`` (Burnside): underlying basis ``(1,)``, fixed basis ``(1, T)``.
* ``Z[C2]`` (permutation): underlying basis ``(1, tau)``, fixed basis
  ``(1 + tau,)``.
* ``I`` (augmentation ideal): fixed basis ``(T - 2,)``.
* constant ``Z``: one basis vector on each level.

Over Q every C2-Mackey functor is a sum of three simples: the constant
functor, the functor with sign-representation underlying level and zero fixed
level, and ``I``.  :func:`decompose` counts them and serves as the isomorphism
test.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import AxiomViolation, ShapeMismatch
from .qlinalg import (
    RationalMatrix,
    block_diagonal,
    complement_indices,
    format_rational,
    image_basis,
    kernel_basis,
    rank,
    solve_matrix,
)

Mat = RationalMatrix


@dataclass(frozen=True)
class C2Module:
    dim: int
    tau: RationalMatrix

    def __post_init__(self):
        if self.tau.shape != (self.dim, self.dim):
            raise ShapeMismatch(f"tau has shape {self.tau.shape}, expected {(self.dim, self.dim)}")

    def eigenspace_dim(self, sign: int) -> int:
        return self.dim - rank(self.tau - Mat.scalar(self.dim, sign))


@dataclass(frozen=True)
class MackeyFunctor:
    underlying: C2Module
    fixed_dim: int
    res: RationalMatrix
    tr: RationalMatrix

    def __post_init__(self):
        u = self.underlying.dim
        if self.res.shape != (u, self.fixed_dim):
            raise ShapeMismatch(f"res has shape {self.res.shape}, expected {(u, self.fixed_dim)}")
        if self.tr.shape != (self.fixed_dim, u):
            raise ShapeMismatch(f"tr has shape {self.tr.shape}, expected {(self.fixed_dim, u)}")

    @classmethod
    def build(cls, tau, fixed_dim: int, res, tr) -> MackeyFunctor:
        """Build from nested lists; convenient for literals and tests."""
        u = len(tau)
        return cls(
            C2Module(u, Mat(tau, (u, u))),
            fixed_dim,
            Mat(res, (u, fixed_dim)),
            Mat(tr, (fixed_dim, u)),
        )

    @property
    def tau(self) -> RationalMatrix:
        return self.underlying.tau

    @property
    def underlying_dim(self) -> int:
        return self.underlying.dim

    def dims(self) -> tuple[int, int]:
        return self.underlying.dim, self.fixed_dim

    def is_zero(self) -> bool:
        return self.dims() == (0, 0)

    def to_json(self) -> dict:
        def enc(m: RationalMatrix):
            return [[format_rational(x) for x in row] for row in m.rows]

        return {
            "underlying_dim": self.underlying.dim,
            "tau": enc(self.tau),
            "fixed_dim": self.fixed_dim,
            "res": enc(self.res),
            "tr": enc(self.tr),
        }

    @classmethod
    def from_json(cls, obj: dict) -> MackeyFunctor:
        u, f = obj["underlying_dim"], obj["fixed_dim"]
        return cls(
            C2Module(u, Mat(obj["tau"], (u, u))),
            f,
            Mat(obj["res"], (u, f)),
            Mat(obj["tr"], (f, u)),
        )


def zero_functor() -> MackeyFunctor:
    return MackeyFunctor.build([], 0, [], [])


def std_constant() -> MackeyFunctor:
    """The constant functor: Q on both levels, res = 1, tr = 2."""
    return MackeyFunctor.build([[1]], 1, [[1]], [[2]])


def std_burnside() -> MackeyFunctor:
    """Burnside functor with fixed basis (1, T): res(a + bT) = a + 2b, tr(1) = T."""
    return MackeyFunctor.build([[1]], 2, [[1, 2]], [[0], [1]])


def std_augmentation_ideal() -> MackeyFunctor:
    """``I``: zero underlying level, fixed level spanned by T - 2."""
    return MackeyFunctor.build([], 1, [], [[]])


def std_permutation() -> MackeyFunctor:
    """``Z[C2]``: underlying Q[C2] with tau swapping (1, tau); fixed Q{1 + tau}."""
    return MackeyFunctor.build([[0, 1], [1, 0]], 1, [[1], [1]], [[1, 1]])


@dataclass(frozen=True)
class AxiomReport:
    results: tuple[tuple[str, bool], ...]

    @property
    def passed(self) -> bool:
        return all(ok for _, ok in self.results)

    def failures(self) -> list[str]:
        return [name for name, ok in self.results if not ok]

    def __bool__(self) -> bool:
        return self.passed


AXIOMS = ("tau^2 = 1", "tau res = res", "tr tau = tr", "res tr = 1 + tau")


def check_axioms(M: MackeyFunctor) -> AxiomReport:
    u = M.underlying.dim
    tau, one = M.tau, Mat.identity(u)
    checks = (
        tau @ tau == one,
        tau @ M.res == M.res,
        M.tr @ tau == M.tr,
        M.res @ M.tr == one + tau,
    )
    return AxiomReport(tuple(zip(AXIOMS, checks)))


@dataclass(frozen=True)
class MackeyMorphism:
    source: MackeyFunctor
    target: MackeyFunctor
    f_u: RationalMatrix
    f_f: RationalMatrix

    def __post_init__(self):
        su, sf = self.source.dims()
        tu, tf = self.target.dims()
        if self.f_u.shape != (tu, su):
            raise ShapeMismatch(f"f_u has shape {self.f_u.shape}, expected {(tu, su)}")
        if self.f_f.shape != (tf, sf):
            raise ShapeMismatch(f"f_f has shape {self.f_f.shape}, expected {(tf, sf)}")

    def check(self) -> AxiomReport:
        s, t = self.source, self.target
        return AxiomReport((
            ("f tau = tau f", self.f_u @ s.tau == t.tau @ self.f_u),
            ("f res = res f", self.f_u @ s.res == t.res @ self.f_f),
            ("f tr = tr f", self.f_f @ s.tr == t.tr @ self.f_u),
        ))

    def compose(self, first: MackeyMorphism) -> MackeyMorphism:
        """``self o first``."""
        return MackeyMorphism(first.source, self.target, self.f_u @ first.f_u, self.f_f @ first.f_f)

    def is_zero(self) -> bool:
        return self.f_u.is_zero() and self.f_f.is_zero()


def identity_morphism(M: MackeyFunctor) -> MackeyMorphism:
    u, f = M.dims()
    return MackeyMorphism(M, M, Mat.identity(u), Mat.identity(f))


def zero_morphism(source: MackeyFunctor, target: MackeyFunctor) -> MackeyMorphism:
    return MackeyMorphism(
        source, target,
        Mat.zeros(target.underlying.dim, source.underlying.dim),
        Mat.zeros(target.fixed_dim, source.fixed_dim),
    )


def direct_sum(*functors: MackeyFunctor) -> MackeyFunctor:
    if not functors:
        return zero_functor()
    u = sum(M.underlying.dim for M in functors)
    return MackeyFunctor(
        C2Module(u, block_diagonal(*(M.tau for M in functors))),
        sum(M.fixed_dim for M in functors),
        block_diagonal(*(M.res for M in functors)),
        block_diagonal(*(M.tr for M in functors)),
    )


@dataclass(frozen=True)
class C2Set:
    """A finite C2-set given as a list of orbits, each ``"point"`` or ``"free"``."""

    orbits: tuple[str, ...]

    def __post_init__(self):
        bad = [o for o in self.orbits if o not in ("point", "free")]
        if bad:
            raise ValueError(f"unknown orbit types {bad}")

    @classmethod
    def point(cls) -> C2Set:
        return cls(("point",))

    @classmethod
    def free_orbit(cls) -> C2Set:
        return cls(("free",))

    def cardinality(self) -> int:
        return sum(1 if o == "point" else 2 for o in self.orbits)


def _induced(M: MackeyFunctor) -> MackeyFunctor:
    # (M (x) C2_+)(C2/C2) = M(C2/e); the underlying level is two copies of
    # M(C2/e) exchanged by tau, res is u -> (u, tau u) and tr is (u, v) -> u + tau v.
    d = M.underlying.dim
    tau, one, zero = M.tau, Mat.identity(d), Mat.zeros(d, d)
    new_tau = Mat(
        [r0 + r1 for r0, r1 in zip(zero.rows, tau.rows)]
        + [r0 + r1 for r0, r1 in zip(tau.rows, zero.rows)],
        (2 * d, 2 * d),
    )
    res = Mat(one.rows + tau.rows, (2 * d, d))
    tr = one.hstack(tau)
    return MackeyFunctor(C2Module(2 * d, new_tau), d, res, tr)


def tensor_c2set(M: MackeyFunctor, S: C2Set) -> MackeyFunctor:
    """``M (x) S_+``, evaluated orbit by orbit."""
    return direct_sum(*(M if o == "point" else _induced(M) for o in S.orbits))


class _LevelQuotient:
    """The subquotient ``span(Z) / span(B)`` of one level.

    ``Z`` has independent columns; the columns of ``B`` must lie in span(Z).
    ``reps`` are ambient vectors representing the quotient basis.
    """

    def __init__(self, Z: RationalMatrix, B: RationalMatrix):
        self.Z = Z
        n, z = Z.shape
        Bz = solve_matrix(Z, B)
        if Bz is None:
            raise AxiomViolation("boundary is not contained in the cycles")
        bbasis = Mat.from_columns(image_basis(Bz), z)
        comp = complement_indices(bbasis)
        self.nbound = bbasis.ncols
        self.Q = bbasis.hstack(Mat.from_columns([_unit(z, j) for j in comp], z))
        self.reps = Mat.from_columns([Z.column(j) for j in comp], n)

    @property
    def dim(self) -> int:
        return self.reps.ncols

    def project(self, V: RationalMatrix) -> RationalMatrix:
        c = solve_matrix(self.Z, V)
        if c is None:
            raise AxiomViolation("vector does not lie in the subspace")
        w = solve_matrix(self.Q, c)
        return Mat(w.rows[self.nbound:], (self.dim, V.ncols))


def _unit(n: int, j: int) -> tuple[int, ...]:
    return tuple(1 if i == j else 0 for i in range(n))


class Subquotient:
    """A subquotient Mackey functor ``Z / B`` of an ambient functor.

    ``Z_u, Z_f`` (independent columns) span a sub-Mackey functor and
    ``B_u, B_f`` span a smaller one.  The induced tau, res and tr are
    computed in the basis given by rref pivots, and the result is checked
    against the Mackey axioms.
    """

    def __init__(self, ambient: MackeyFunctor, Z_u, Z_f, B_u, B_f):
        self.ambient = ambient
        self.u = _LevelQuotient(Z_u, B_u)
        self.f = _LevelQuotient(Z_f, B_f)
        self.functor = MackeyFunctor(
            C2Module(self.u.dim, self.u.project(ambient.tau @ self.u.reps)),
            self.f.dim,
            self.u.project(ambient.res @ self.f.reps),
            self.f.project(ambient.tr @ self.u.reps),
        )
        report = check_axioms(self.functor)
        if not report:
            raise AxiomViolation(f"induced structure fails {report.failures()}")

    def induced(self, f: MackeyMorphism, target: Subquotient) -> MackeyMorphism:
        """The map ``self -> target`` induced by ``f`` on the ambient functors."""
        for mine, theirs, m in ((self.u, target.u, f.f_u), (self.f, target.f, f.f_f)):
            bound = mine.Z @ mine.Q
            bound = Mat(
                [row[:mine.nbound] for row in bound.rows], (bound.nrows, mine.nbound)
            )
            if not theirs.project(m @ bound).is_zero():
                raise AxiomViolation("map does not preserve the boundaries")
        return MackeyMorphism(
            self.functor, target.functor,
            target.u.project(f.f_u @ self.u.reps),
            target.f.project(f.f_f @ self.f.reps),
        )


def _basis_matrix(vectors: Sequence, n: int) -> RationalMatrix:
    return Mat.from_columns(vectors, n)


def kernel(f: MackeyMorphism) -> tuple[MackeyFunctor, MackeyMorphism]:
    """Levelwise kernel with its inclusion into ``f.source``."""
    s = f.source
    su, sf = s.dims()
    sq = Subquotient(
        s,
        _basis_matrix(kernel_basis(f.f_u), su),
        _basis_matrix(kernel_basis(f.f_f), sf),
        Mat.zeros(su, 0),
        Mat.zeros(sf, 0),
    )
    return sq.functor, MackeyMorphism(sq.functor, s, sq.u.reps, sq.f.reps)


def cokernel(f: MackeyMorphism) -> tuple[MackeyFunctor, MackeyMorphism]:
    """Levelwise cokernel with the projection from ``f.target``."""
    t = f.target
    tu, tf = t.dims()
    sq = Subquotient(t, Mat.identity(tu), Mat.identity(tf), f.f_u, f.f_f)
    proj = MackeyMorphism(t, sq.functor, sq.u.project(Mat.identity(tu)), sq.f.project(Mat.identity(tf)))
    return sq.functor, proj


def decompose(M: MackeyFunctor) -> tuple[int, int, int]:
    """Multiplicities ``(m_triv, m_sign, m_I)`` of the three rational simples.

    ``beta = tr res / 2`` is the idempotent on the fixed level cutting out the
    part seen by the underlying level; its rank counts constant summands.
    """
    beta = (M.tr @ M.res).scale(Fraction(1, 2))
    m_triv = rank(beta)
    m_sign = M.underlying.eigenspace_dim(-1)
    return m_triv, m_sign, M.fixed_dim - m_triv


def is_isomorphic(M: MackeyFunctor, N: MackeyFunctor) -> bool:
    return decompose(M) == decompose(N)


def augmentation() -> MackeyMorphism:
    """The projection ``A -> Z`` counting cardinalities: a + bT -> a + 2b."""
    return MackeyMorphism(std_burnside(), std_constant(), Mat([[1]]), Mat([[1, 2]]))


def ideal_inclusion() -> MackeyMorphism:
    """``I -> A`` sending the generator to T - 2."""
    return MackeyMorphism(std_augmentation_ideal(), std_burnside(), Mat.zeros(1, 0), Mat([[-2], [1]]))
