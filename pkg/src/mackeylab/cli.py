"""``mackeylab``: command-line verification harness.

Each subcommand checks one group of claims and prints a report, as JSON
(default) or as a text table.  Exit status is 0 when every finding matches,
1 when some check fails and 2 on a usage or precondition error.

The ``--corrupt`` flags perturb one designated entry before checking, so
that the checks can be seen to fail.
"""

from __future__ import annotations

import argparse
import os
import sys
import time
from typing import Callable, Optional

from . import complexes as cx
from . import mackey as mk
from .c2model import (
    C2Map,
    check_corollary_even,
    check_corollary_odd,
    check_main_theorem,
    check_maps,
    check_models_against_complexes,
    map_norm,
)
from .errors import AxiomViolation, DegreeMismatch, InvalidDegree
from .gem import GradedPolyMap
from .qlinalg import kernel_basis
from .report import CheckReport

DEFAULT_MAX_DEGREE = 32
ALL_N = (1, 2, 3)


def default_max_degree() -> int:
    value = os.environ.get("MACKEYLAB_MAX_DEGREE")
    return int(value) if value else DEFAULT_MAX_DEGREE


def _timed(fn: Callable[..., CheckReport]) -> Callable[..., CheckReport]:
    def wrapper(*args, **kwargs) -> CheckReport:
        start = time.perf_counter()
        rep = fn(*args, **kwargs)
        rep.elapsed = time.perf_counter() - start
        return rep

    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


@_timed
def cmd_verify_mackey(corrupt: bool = False) -> CheckReport:
    """Axioms and decompositions of Z, A, I, Z[C2]; tensor and quotient identities."""
    rep = CheckReport("verify-mackey", {"corrupt": corrupt})
    constant = mk.std_constant()
    if corrupt:
        constant = mk.MackeyFunctor.build([[1]], 1, [[1]], [[3]])
    functors = {
        "Z": (constant, (1, 0, 0)),
        "A": (mk.std_burnside(), (1, 0, 1)),
        "I": (mk.std_augmentation_ideal(), (0, 0, 1)),
        "Z[C2]": (mk.std_permutation(), (1, 1, 0)),
    }
    for name, (M, triple) in functors.items():
        report = mk.check_axioms(M)
        for axiom, ok in report.results:
            rep.expect(f"{name}: {axiom}", True, ok)
        rep.expect(f"{name}: decomposition", list(triple), list(mk.decompose(M)))
        rep.expect(f"{name}: +1 eigenspace = m_triv", mk.decompose(M)[0], M.underlying.eigenspace_dim(1))
    free = mk.C2Set.free_orbit()
    rep.expect("A (x) C2_+ ~ Z (x) C2_+",
               list(mk.decompose(mk.tensor_c2set(constant, free))),
               list(mk.decompose(mk.tensor_c2set(mk.std_burnside(), free))))
    rep.expect("Z (x) C2_+ ~ Z[C2]", list(mk.decompose(mk.std_permutation())),
               list(mk.decompose(mk.tensor_c2set(constant, free))))
    rep.expect("Z (x) C2_+ fixed dim", 1, mk.tensor_c2set(constant, free).fixed_dim)
    rep.expect("M (x) point ~ M", True, mk.tensor_c2set(mk.std_burnside(), mk.C2Set.point()) == mk.std_burnside())
    K, _ = mk.kernel(mk.augmentation())
    rep.expect("ker(A -> Z) ~ I", [0, 0, 1], list(mk.decompose(K)))
    Q, _ = mk.cokernel(mk.ideal_inclusion())
    rep.expect("A / I ~ Z", list(mk.decompose(constant)), list(mk.decompose(Q)))
    return rep


def expected_homology(functor: str, i: int) -> dict[int, tuple[int, int]]:
    """Nonzero homology dims ``{degree: (underlying, fixed)}`` predicted for the complex."""
    table = {2 * i: (1, 1 if i % 2 == 0 else 0)}
    if functor == "A":
        table[i] = (0, 1)
    return table


def corrupt_complex(C: cx.MackeyComplex, i: int) -> cx.MackeyComplex:
    """Flip the sign of one differential entry (the bottom one when ``i = 1``)."""
    if i >= 2:
        return cx.with_entry(C, i + 2, "u", 0, 1, -C.d(i + 2).f_u[0, 1])
    return cx.with_entry(C, i + 1, "u", 0, 1, -C.d(i + 1).f_u[0, 1])


@_timed
def cmd_verify_complex(i: int, functor: str = "Z", corrupt: bool = False) -> CheckReport:
    """Build the rho-suspension complex, check d^2 = 0 and its homology table."""
    if i < 1:
        raise InvalidDegree(f"degree must be >= 1, got {i}")
    key = "i" if functor == "Z" else "m"
    rep = CheckReport("verify-complex", {key: i, "functor": functor, "corrupt": corrupt})
    C = cx.rho_suspension_Z(i) if functor == "Z" else cx.rho_suspension_A(i)
    if corrupt:
        C = corrupt_complex(C, i)
    rep.expect("d o d = 0", True, C.d_squared_zero())
    rep.expect("differentials are Mackey morphisms", True, C.differentials_valid())
    try:
        H = cx.homology(C)
    except AxiomViolation as exc:
        rep.expect("homology is a Mackey functor", "ok", str(exc))
        return rep
    expected = expected_homology(functor, i)
    for k in C.degrees:
        rep.expect(f"H_{k} dims", list(expected.get(k, (0, 0))), list(H[k].dims()))
        rep.expect(f"H_{k} axioms", True, mk.check_axioms(H[k]).passed)
    if functor == "Z":
        rep.expect(f"H_{2 * i} decomposition", [1, 0, 0] if i % 2 == 0 else [0, 1, 0],
                   list(mk.decompose(H[2 * i])))
    terms, homs = cx.euler_characteristics(C)
    rep.expect("Euler characteristic", list(terms), list(homs))
    return rep


def check_euler_chain_map(n: int, corrupt: bool = False) -> CheckReport:
    """The bottom-cell inclusion kills exactly T on fixed homology and is zero underlying."""
    rep = CheckReport("euler-chain-map", {"n": n, "corrupt": corrupt})
    e = cx.euler_chain_map(n)
    if corrupt:
        # the fixed generator of Z[C2] now goes to 1 instead of T
        target = cx.with_entry(cx.with_entry(e.target, 2 * n + 1, "f", 0, 0, 1), 2 * n + 1, "f", 1, 0, 0)
        e = cx.ChainMap(e.source, target, e.components)
    rep.expect("chain map", True, e.is_chain_map())
    try:
        induced = e.induced(2 * n)
    except AxiomViolation as exc:
        rep.expect(f"induced map on H_{2 * n}", "defined", str(exc))
        return rep
    ker = [list(map(str, v)) for v in kernel_basis(induced.f_f)]
    rep.expect(f"fixed kernel on H_{2 * n} (basis 1, T)", [["0", "1"]], ker)
    rep.expect(f"underlying induced map on H_{2 * n} is zero", True, induced.f_u.is_zero())
    for k in sorted(set(e.source.degrees) | set(e.target.degrees)):
        if k != 2 * n:
            rep.expect(f"induced map on H_{k} is zero", True, e.induced(k).is_zero())
    return rep


def corrupted_norm(n: int, kind: str) -> C2Map:
    """A norm map with one generator image changed.

    ``"x"`` sends ``x_{4n}`` to ``x_{2n}`` (wrong degree); ``"scale"`` sends it
    to ``2 y_{4n}'``.
    """
    good = map_norm(n)
    F = good.source.fixed
    images = dict(good.f_pullback.assignment)
    if kind == "x":
        images[f"x{4 * n}"] = F.gen(f"x{2 * n}")
    else:
        images[f"x{4 * n}"] = 2 * F.gen(f"y{4 * n}'")
    return C2Map(good.source, good.target, good.u_pullback,
                 GradedPolyMap(good.source.fixed, good.target.fixed, images))


@_timed
def cmd_verify_maps(n: int, corrupt: Optional[str] = None) -> CheckReport:
    """Squaring and norm maps, their difference, the Euler class and the Euler chain map."""
    if n < 1:
        raise InvalidDegree(f"n must be >= 1, got {n}")
    rep = CheckReport("verify-maps", {"n": n, "corrupt": corrupt})
    norm = None
    if corrupt:
        try:
            norm = corrupted_norm(n, corrupt)
        except DegreeMismatch as exc:
            rep.expect(f"norm: image of x{4 * n}", f"homogeneous of degree {4 * n}", str(exc))
            return rep
    rep.extend(check_maps(n, norm))
    rep.extend(check_euler_chain_map(n), "euler chain map: ")
    return rep


@_timed
def cmd_verify_theorem(n: int, max_degree: Optional[int] = None, corrupt: Optional[str] = None) -> CheckReport:
    D = default_max_degree() if max_degree is None else max_degree
    if n < 1:
        raise InvalidDegree(f"n must be >= 1, got {n}")
    if D < 8 * n:
        raise InvalidDegree(f"--max-degree must be at least {8 * n} for n={n} (got {D})")
    if corrupt == "drop-euler":
        rep = check_main_theorem(n, D, drop_euler=True)
    elif corrupt == "generator":
        rep = check_main_theorem(n, D, corrupt_generator="k2" if n > 1 else f"w{4 * n}")
    else:
        rep = check_main_theorem(n, D)
    rep.check = "verify-theorem"
    rep.params["corrupt"] = corrupt
    return rep


@_timed
def cmd_verify_corollaries(n: int) -> CheckReport:
    if n < 1:
        raise InvalidDegree(f"n must be >= 1, got {n}")
    rep = CheckReport("verify-corollaries", {"n": n})
    rep.extend(check_corollary_even(n), "even: ")
    rep.extend(check_corollary_odd(n), "odd: ")
    return rep


@_timed
def cmd_all(max_degree: Optional[int] = None) -> CheckReport:
    D = default_max_degree() if max_degree is None else max_degree
    rep = CheckReport("all", {"D": D, "n": list(ALL_N)})
    parts = [cmd_verify_mackey()]
    parts += [cmd_verify_complex(i, "Z") for i in range(1, 9)]
    parts += [cmd_verify_complex(m, "A") for m in (2, 4, 6, 8)]
    parts.append(check_models_against_complexes())
    parts += [cmd_verify_maps(n) for n in ALL_N]
    parts += [cmd_verify_theorem(n, D) for n in ALL_N]
    parts += [cmd_verify_corollaries(n) for n in ALL_N]
    for p in parts:
        label = " ".join(f"{k}={v}" for k, v in sorted(p.params.items()) if k != "corrupt")
        rep.extend(p, f"[{p.check} {label}] ".replace(" ]", "]"))
    return rep


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--output", "-o", help="also write the report to this file")
    common.add_argument("--timing", action="store_true", help="include elapsed time in the report")
    common.add_argument("--verbose", "-v", action="store_true", help="text format: list passing findings too")

    parser = argparse.ArgumentParser(prog="mackeylab", description="Exact rational verification of C2-equivariant models.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify-mackey", parents=[common], help="Mackey functor axioms and identities")
    p.add_argument("--corrupt", action="store_true", help="use a constant functor with transfer 3")

    p = sub.add_parser("verify-complex", parents=[common], help="rho-suspension complexes and homology")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--i", type=int, help="suspension multiple (default functor Z)")
    g.add_argument("--m", type=int, help="suspension multiple (default functor A)")
    p.add_argument("--functor", choices=("Z", "A"))
    p.add_argument("--corrupt", action="store_true", help="flip the sign of one differential entry")

    p = sub.add_parser("verify-maps", parents=[common], help="squaring, norm and Euler class maps")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--corrupt", choices=("x", "scale"), help="change the norm's image of x_{4n}")

    p = sub.add_parser("verify-theorem", parents=[common], help="main theorem through degree D")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--max-degree", type=int, default=None, help="truncation degree D (default 32)")
    p.add_argument("--corrupt", choices=("drop-euler", "generator"))

    p = sub.add_parser("verify-corollaries", parents=[common], help="both sphere corollaries")
    p.add_argument("--n", type=int, required=True)

    p = sub.add_parser("all", parents=[common], help="every check for n = 1..3")
    p.add_argument("--max-degree", type=int, default=None)
    return parser


def run(args: argparse.Namespace) -> CheckReport:
    if args.command == "verify-mackey":
        return cmd_verify_mackey(args.corrupt)
    if args.command == "verify-complex":
        degree = args.i if args.i is not None else args.m
        functor = args.functor or ("Z" if args.i is not None else "A")
        return cmd_verify_complex(degree, functor, args.corrupt)
    if args.command == "verify-maps":
        return cmd_verify_maps(args.n, args.corrupt)
    if args.command == "verify-theorem":
        return cmd_verify_theorem(args.n, args.max_degree, args.corrupt)
    if args.command == "verify-corollaries":
        return cmd_verify_corollaries(args.n)
    return cmd_all(args.max_degree)


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        rep = run(args)
    except InvalidDegree as exc:
        parser.error(str(exc))
    if args.format == "json":
        text = rep.dumps(timing=args.timing)
    else:
        text = rep.to_text(verbose=args.verbose)
        if args.timing:
            text += f"\n  elapsed {rep.elapsed:.3f}s"
    print(text)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    return 0 if rep.passed else 1


if __name__ == "__main__":
    sys.exit(main())
