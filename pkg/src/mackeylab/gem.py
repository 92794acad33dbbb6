"""Rational homotopy of products of Eilenberg-MacLane spaces.

Every space here is rationally a product of ``K(Q, d)``'s with ``d`` even on
the cohomology side, so its cohomology is a polynomial ring on even-degree
generators (:class:`GradedRing`) and a map is a ring homomorphism given by
homogeneous polynomials (:class:`GradedPolyMap`).  Odd-degree homotopy only
appears in :class:`GemModel`, which records homotopy dimensions.

A map between such spaces induces on homotopy the linear part of its
pullback: decomposable terms act trivially on homotopy of simply connected
rational spaces.  Fibers are then computed from the long exact sequence.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Optional

from .errors import DegreeMismatch, InvalidDegree
from .qlinalg import RationalMatrix, rank, to_rational

Monomial = tuple[int, ...]


@dataclass(frozen=True)
class GradedRing:
    """Free polynomial algebra on named even-degree generators."""

    generators: tuple[tuple[str, int], ...] = ()

    def __post_init__(self):
        names = [g for g, _ in self.generators]
        if len(set(names)) != len(names):
            raise ValueError(f"generator names are not unique: {names}")
        for name, deg in self.generators:
            if deg <= 0 or deg % 2:
                raise DegreeMismatch(f"generator {name} has degree {deg}; only even positive degrees")

    @classmethod
    def of(cls, *gens: tuple[str, int]) -> GradedRing:
        return cls(tuple(gens))

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(g for g, _ in self.generators)

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(d for _, d in self.generators)

    def __len__(self) -> int:
        return len(self.generators)

    def index(self, name: str) -> int:
        return self.names.index(name)

    def degree_of(self, name: str) -> int:
        return self.degrees[self.index(name)]

    def gen(self, name: str) -> Poly:
        e = [0] * len(self)
        e[self.index(name)] = 1
        return Poly(self, {tuple(e): Fraction(1)})

    def gens(self) -> tuple[Poly, ...]:
        return tuple(self.gen(n) for n in self.names)

    def zero(self) -> Poly:
        return Poly(self, {})

    def one(self) -> Poly:
        return Poly(self, {(0,) * len(self): Fraction(1)})

    def monomials(self, d: int) -> list[Monomial]:
        return list(_monomials(self.degrees, d))

    def monomial_degree(self, mono: Monomial) -> int:
        return sum(e * d for e, d in zip(mono, self.degrees))

    def tensor(self, other: GradedRing) -> GradedRing:
        return GradedRing(self.generators + other.generators)

    def to_json(self) -> list[dict]:
        return [{"name": n, "degree": d} for n, d in self.generators]


@lru_cache(maxsize=None)
def _monomials(degrees: tuple[int, ...], d: int) -> tuple[Monomial, ...]:
    if d < 0:
        return ()
    if not degrees:
        return ((),) if d == 0 else ()
    first, rest = degrees[0], degrees[1:]
    out = []
    for e in range(d // first, -1, -1):
        out.extend((e,) + tail for tail in _monomials(rest, d - e * first))
    return tuple(out)


class Poly:
    """A polynomial in the generators of a :class:`GradedRing`, exact coefficients."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: GradedRing, terms: Mapping[Monomial, Fraction]):
        self.ring = ring
        self.terms = {m: to_rational(c) for m, c in terms.items() if c != 0}

    def _coerce(self, other) -> Poly:
        if isinstance(other, Poly):
            if other.ring != self.ring:
                raise DegreeMismatch("polynomials live in different rings")
            return other
        return self.ring.one() * to_rational(other) if other != 0 else self.ring.zero()

    def __add__(self, other) -> Poly:
        other = self._coerce(other)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            terms[m] = terms.get(m, 0) + c
        return Poly(self.ring, terms)

    __radd__ = __add__

    def __neg__(self) -> Poly:
        return Poly(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> Poly:
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> Poly:
        return self._coerce(other) - self

    def __mul__(self, other) -> Poly:
        if not isinstance(other, Poly):
            c = to_rational(other)
            return Poly(self.ring, {m: c * v for m, v in self.terms.items()})
        other = self._coerce(other)
        terms: dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                terms[m] = terms.get(m, 0) + c1 * c2
        return Poly(self.ring, terms)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> Poly:
        out = self.ring.one()
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.ring == other.ring and self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def degrees(self) -> set[int]:
        return {self.ring.monomial_degree(m) for m in self.terms}

    def is_homogeneous_of(self, d: int) -> bool:
        return self.degrees() <= {d}

    def coefficient(self, mono: Monomial) -> Fraction:
        return self.terms.get(mono, Fraction(0))

    def linear_coefficient(self, name: str) -> Fraction:
        e = [0] * len(self.ring)
        e[self.ring.index(name)] = 1
        return self.coefficient(tuple(e))

    def substitute(self, images: tuple[Poly, ...], ring: GradedRing) -> Poly:
        """Replace generator ``j`` by ``images[j]`` (polynomials in ``ring``)."""
        out = ring.zero()
        for mono, c in self.terms.items():
            term = ring.one() * c
            for img, e in zip(images, mono):
                if e:
                    term = term * img ** e
            out = out + term
        return out

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for mono in sorted(self.terms, reverse=True):
            c = self.terms[mono]
            factors = [n if e == 1 else f"{n}^{e}" for n, e in zip(self.ring.names, mono) if e]
            body = "*".join(factors)
            if not body:
                parts.append(str(c))
            elif c == 1:
                parts.append(body)
            elif c == -1:
                parts.append("-" + body)
            else:
                parts.append(f"{c}*{body}")
        return " + ".join(parts).replace("+ -", "- ")


@dataclass(frozen=True)
class GradedPolyMap:
    """A map of spaces ``source -> target`` recorded by its cohomology pullback.

    ``assignment`` sends each target generator name to a homogeneous
    polynomial of the same degree in the source generators.  Unassigned
    generators pull back to zero.
    """

    source: GradedRing
    target: GradedRing
    assignment: Mapping[str, Poly] = field(default_factory=dict)

    def __post_init__(self):
        extra = set(self.assignment) - set(self.target.names)
        if extra:
            raise DegreeMismatch(f"assignment names unknown target generators {sorted(extra)}")
        for name, p in self.assignment.items():
            if p.ring != self.source:
                raise DegreeMismatch(f"image of {name} is not a polynomial in the source ring")
            if not p.is_homogeneous_of(self.target.degree_of(name)):
                raise DegreeMismatch(
                    f"image of {name} has degrees {sorted(p.degrees())}, expected {self.target.degree_of(name)}"
                )

    def image(self, name: str) -> Poly:
        return self.assignment.get(name, self.source.zero())

    def images(self) -> tuple[Poly, ...]:
        return tuple(self.image(n) for n in self.target.names)

    def pullback(self, p: Poly) -> Poly:
        if p.ring != self.target:
            raise DegreeMismatch("polynomial is not in the target ring")
        return p.substitute(self.images(), self.source)

    def __eq__(self, other) -> bool:
        if not isinstance(other, GradedPolyMap):
            return NotImplemented
        return (self.source, self.target, self.images()) == (other.source, other.target, other.images())

    def __hash__(self):
        return hash((self.source, self.target, self.images()))

    def __sub__(self, other: GradedPolyMap) -> GradedPolyMap:
        # pointwise difference of maps into a product of K(Q, d)'s
        if (self.source, self.target) != (other.source, other.target):
            raise DegreeMismatch("maps have different source or target")
        return GradedPolyMap(
            self.source, self.target,
            {n: self.image(n) - other.image(n) for n in self.target.names},
        )

    def describe(self) -> dict[str, str]:
        return {n: repr(self.image(n)) for n in self.target.names}


def identity_map(R: GradedRing) -> GradedPolyMap:
    return GradedPolyMap(R, R, {n: R.gen(n) for n in R.names})


def compose(f: GradedPolyMap, g: GradedPolyMap) -> GradedPolyMap:
    """``g o f`` for space maps ``f: A -> B`` and ``g: B -> C``."""
    if f.target != g.source:
        raise DegreeMismatch("cannot compose: target of f is not the source of g")
    return GradedPolyMap(f.source, g.target, {n: f.pullback(g.image(n)) for n in g.target.names})


def linear_part(f: GradedPolyMap) -> dict[int, RationalMatrix]:
    """Per degree, the map on homotopy: rows target generators, columns source ones."""
    out = {}
    for d in sorted(set(f.source.degrees) | set(f.target.degrees)):
        tgt = [n for n, k in f.target.generators if k == d]
        src = [n for n, k in f.source.generators if k == d]
        out[d] = RationalMatrix(
            [[f.image(t).linear_coefficient(s) for s in src] for t in tgt], (len(tgt), len(src))
        )
    return out


def pullback_matrix(f: GradedPolyMap, d: int) -> RationalMatrix:
    """Matrix of the pullback in degree ``d`` between monomial bases.

    Rows are source monomials, columns target monomials.
    """
    src = f.source.monomials(d)
    tgt = f.target.monomials(d)
    row_of = {m: i for i, m in enumerate(src)}
    images = f.images()
    rows = [[Fraction(0)] * len(tgt) for _ in src]
    for j, mono in enumerate(tgt):
        p = Poly(f.target, {mono: 1}).substitute(images, f.source)
        for m, c in p.terms.items():
            rows[row_of[m]][j] = c
    return RationalMatrix(rows, (len(src), len(tgt)))


def first_nonsurjective_degree(f: GradedPolyMap, D: int) -> Optional[int]:
    for d in range(D + 1):
        m = pullback_matrix(f, d)
        if rank(m) != m.nrows:
            return d
    return None


def is_surjective_up_to(f: GradedPolyMap, D: int) -> bool:
    """Is the pullback onto the source ring in every degree ``<= D``?"""
    if D < 0:
        raise InvalidDegree("truncation degree must be >= 0")
    return first_nonsurjective_degree(f, D) is None


def is_bijective_up_to(f: GradedPolyMap, D: int) -> bool:
    for d in range(D + 1):
        m = pullback_matrix(f, d)
        if m.nrows != m.ncols or rank(m) != m.nrows:
            return False
    return True


@dataclass(frozen=True)
class PowerSeries:
    """Integer power series truncated after degree ``D``."""

    coefficients: tuple[int, ...]

    @property
    def D(self) -> int:
        return len(self.coefficients) - 1

    def __getitem__(self, k: int) -> int:
        return self.coefficients[k] if 0 <= k <= self.D else 0

    def __mul__(self, other: PowerSeries) -> PowerSeries:
        D = min(self.D, other.D)
        return PowerSeries(tuple(
            sum(self[i] * other[k - i] for i in range(k + 1)) for k in range(D + 1)
        ))

    def nonzero(self) -> dict[int, int]:
        return {k: c for k, c in enumerate(self.coefficients) if c}

    def first_difference(self, other: PowerSeries) -> Optional[int]:
        for k in range(max(self.D, other.D) + 1):
            if self[k] != other[k]:
                return k
        return None

    def to_json(self) -> list[int]:
        return list(self.coefficients)


def hilbert_series(R: GradedRing, D: int) -> PowerSeries:
    """Coefficients of prod 1/(1 - t^deg) over the generators, through degree ``D``."""
    if D < 0:
        raise InvalidDegree("truncation degree must be >= 0")
    coeffs = [1] + [0] * D
    for deg in R.degrees:
        for k in range(deg, D + 1):
            coeffs[k] += coeffs[k - deg]
    return PowerSeries(tuple(coeffs))


@dataclass(frozen=True)
class GemModel:
    """Homotopy dimensions of a rational GEM: degree -> dim pi_degree.

    Degrees must be positive.  Fibers can pick up a fundamental group, so
    degree 1 is admitted; :attr:`simply_connected` tells the two apart.
    """

    homotopy_dims: Mapping[int, int] = field(default_factory=dict)

    def __post_init__(self):
        for k, v in self.homotopy_dims.items():
            if k < 1:
                raise InvalidDegree(f"homotopy in degree {k}")
            if v < 0:
                raise ValueError("negative dimension")
        object.__setattr__(
            self, "homotopy_dims", {k: v for k, v in sorted(self.homotopy_dims.items()) if v}
        )

    @classmethod
    def of_ring(cls, R: GradedRing) -> GemModel:
        dims: dict[int, int] = {}
        for d in R.degrees:
            dims[d] = dims.get(d, 0) + 1
        return cls(dims)

    @property
    def simply_connected(self) -> bool:
        return 1 not in self.homotopy_dims

    def __getitem__(self, k: int) -> int:
        return self.homotopy_dims.get(k, 0)

    def __hash__(self):
        return hash(tuple(self.homotopy_dims.items()))

    def product(self, other: GemModel) -> GemModel:
        dims = dict(self.homotopy_dims)
        for k, v in other.homotopy_dims.items():
            dims[k] = dims.get(k, 0) + v
        return GemModel(dims)

    def loop(self) -> GemModel:
        """Desuspension: every homotopy group moves down one degree."""
        if 1 in self.homotopy_dims:
            raise InvalidDegree("looping would produce pi_0")
        return GemModel({k - 1: v for k, v in self.homotopy_dims.items()})

    def max_degree(self) -> int:
        return max(self.homotopy_dims, default=0)


def fiber_homotopy(f: GradedPolyMap) -> GemModel:
    """Homotopy of the fiber from the long exact sequence.

    ``dim pi_k(F) = dim ker L_k + dim coker L_{k+1}`` with ``L`` the linear part.
    """
    L = linear_part(f)
    src, tgt = GemModel.of_ring(f.source), GemModel.of_ring(f.target)
    top = max(src.max_degree(), tgt.max_degree())
    dims = {}
    for k in range(1, top + 1):
        rk = rank(L[k]) if k in L else 0
        rk1 = rank(L[k + 1]) if k + 1 in L else 0
        dims[k] = (src[k] - rk) + (tgt[k + 1] - rk1)
    return GemModel(dims)


def squaring_map(d: int, source: str = "x", target: str = "z") -> GradedPolyMap:
    """The cup square ``K(Q, d) -> K(Q, 2d)``."""
    S = GradedRing.of((source, d))
    T = GradedRing.of((target, 2 * d))
    return GradedPolyMap(S, T, {target: S.gen(source) ** 2})


def sphere_model(d: int) -> GemModel:
    """Rational homotopy of ``S^d``: one class if ``d`` is odd, classes in ``d`` and ``2d-1`` if even."""
    if d < 2:
        raise InvalidDegree(f"sphere dimension must be >= 2, got {d}")
    if d % 2:
        return GemModel({d: 1})
    return fiber_homotopy(squaring_map(d))


def ring_from_degrees(prefix: str, degrees: Iterable[int]) -> GradedRing:
    return GradedRing(tuple((f"{prefix}{i}", d) for i, d in enumerate(degrees)))
