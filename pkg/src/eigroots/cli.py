"""Command-line front end: solve, gen, bench, eval.

Exit codes: 0 ok, 2 usage, 3 file/parse error, 4 genericity violation,
5 extraction failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time
from dataclasses import dataclass

import numpy as np

from .exceptions import ExtractionError, GenericityError, InvalidBasisError, ParseError
from .normalform import FixedBasis, QR_PIVOT, block_basis, commutator_metric, compute_quotient_system
from .parsing import parse_polynomial, read_system_file, write_system_file
from .polynomials import PolySystem, newton_refine, random_dense_system, residuals
from .rootfind import SolutionSet, evaluate_on_variety, extract_solutions, format_solution_lines

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_PARSE = 3
EXIT_GENERICITY = 4
EXIT_EXTRACTION = 5

STRATEGY_CHOICES = ("qr", "block")


def _strategy_for(name: str, degrees):
    if name == "qr":
        return QR_PIVOT
    return FixedBasis(block_basis(degrees))


def _refine_all(system: PolySystem, solutions: SolutionSet) -> SolutionSet:
    """One Newton sweep over every point; residuals never increase."""
    refined = [newton_refine(system, p, max_iters=1).point for p in solutions.points]
    res = residuals(system, np.array(refined, dtype=complex))
    return SolutionSet(
        points=tuple(refined),
        residuals=tuple(float(v) for v in res),
        max_residual=float(res.max()) if res.size else 0.0,
        extraction_condition=solutions.extraction_condition,
        retries=solutions.retries,
    )


def _cmd_solve(args) -> int:
    system = read_system_file(args.system_file)
    strategy = _strategy_for(args.basis, system.degrees)
    qs = compute_quotient_system(system, strategy)
    solutions = extract_solutions(system, qs, seed=args.seed)
    if args.refine:
        solutions = _refine_all(system, solutions)
    n_pass = sum(1 for r in solutions.residuals if r <= args.tol)
    # keep stdout pure JSON when the payload itself goes there
    diag_stream = sys.stderr if (args.json and not args.output) else sys.stdout
    print(f"t: {qs.t}", file=diag_stream)
    print(f"N: {qs.bezout}", file=diag_stream)
    print(f"basis: {args.basis}", file=diag_stream)
    print(f"inverted block condition: {qs.inverted_block_condition!r}", file=diag_stream)
    print(f"max residual: {solutions.max_residual!r}", file=diag_stream)
    print(f"points passing tol {args.tol!r}: {n_pass}/{len(solutions)}", file=diag_stream)
    if args.json:
        payload = json.dumps(solutions.to_dict(), indent=2)
        if args.output:
            with open(args.output, "w", encoding="ascii") as handle:
                handle.write(payload + "\n")
        else:
            print(payload)
    else:
        lines = format_solution_lines(solutions)
        if args.output:
            with open(args.output, "w", encoding="ascii") as handle:
                handle.write("\n".join(lines) + "\n")
        else:
            for line in lines:
                print(line)
    return EXIT_OK


def _cmd_gen(args) -> int:
    degrees = _parse_degree_list(args.degrees)
    nvars = args.nvars if args.nvars is not None else len(degrees)
    system = random_dense_system(nvars, degrees, args.seed)
    write_system_file(system, args.path)
    print(f"wrote {args.path}: nvars={nvars} degrees={','.join(map(str, degrees))} seed={args.seed}")
    return EXIT_OK


@dataclass(frozen=True)
class BenchRecord:
    n: int
    degrees: tuple[int, ...]
    seed: int | str
    basis_strategy: str
    condition: float
    max_residual: float | None
    n_solutions: int | float
    wall_time_seconds: float

    def csv_row(self) -> str:
        res = "" if self.max_residual is None else repr(self.max_residual)
        return ",".join(
            [
                str(self.n),
                "x".join(map(str, self.degrees)),
                str(self.seed),
                self.basis_strategy,
                repr(self.condition),
                res,
                repr(self.n_solutions) if isinstance(self.n_solutions, float) else str(self.n_solutions),
                repr(self.wall_time_seconds),
            ]
        )


BENCH_HEADER = "n,degrees,seed,basis,condition,max_residual,n_solutions,wall_time_seconds"


def run_bench_case(nvars: int, degree: int, seed: int, strategy_name: str) -> BenchRecord:
    """One sweep cell. Failures become data: condition +inf, blank residual."""
    degrees = (degree,) * nvars
    system = random_dense_system(nvars, degrees, seed)
    start = time.perf_counter()
    try:
        qs = compute_quotient_system(system, _strategy_for(strategy_name, degrees))
        solutions = extract_solutions(system, qs, seed=seed)
        wall = time.perf_counter() - start
        return BenchRecord(
            n=nvars,
            degrees=degrees,
            seed=seed,
            basis_strategy=strategy_name,
            condition=qs.inverted_block_condition,
            max_residual=solutions.max_residual,
            n_solutions=len(solutions),
            wall_time_seconds=wall,
        )
    except (GenericityError, ExtractionError):
        wall = time.perf_counter() - start
        return BenchRecord(
            n=nvars,
            degrees=degrees,
            seed=seed,
            basis_strategy=strategy_name,
            condition=float("inf"),
            max_residual=None,
            n_solutions=0,
            wall_time_seconds=wall,
        )


def run_bench(nvars: int, degree_values, seeds, strategies) -> list[BenchRecord]:
    records = []
    for degree in degree_values:
        for seed in seeds:
            for strategy_name in strategies:
                records.append(run_bench_case(nvars, degree, seed, strategy_name))
    # per-degree mean rows, one per strategy
    for degree in degree_values:
        for strategy_name in strategies:
            group = [
                r for r in records
                if isinstance(r.seed, int) and r.degrees == (degree,) * nvars and r.basis_strategy == strategy_name
            ]
            conditions = [r.condition for r in group]
            residual_vals = [r.max_residual for r in group if r.max_residual is not None]
            records.append(
                BenchRecord(
                    n=nvars,
                    degrees=(degree,) * nvars,
                    seed="mean",
                    basis_strategy=strategy_name,
                    condition=float(np.mean(conditions)),
                    max_residual=float(np.mean(residual_vals)) if residual_vals else None,
                    n_solutions=float(np.mean([r.n_solutions for r in group])),
                    wall_time_seconds=float(np.mean([r.wall_time_seconds for r in group])),
                )
            )
    return records


def _cmd_bench(args) -> int:
    degree_values = _parse_degree_spec(args.degrees)
    seeds = _parse_seed_list(args.seeds)
    if not seeds:
        raise ValueError("empty seed list")
    strategies = STRATEGY_CHOICES if args.basis == "both" else (args.basis,)
    records = run_bench(args.nvars, degree_values, seeds, strategies)
    lines = [BENCH_HEADER] + [r.csv_row() for r in records]
    text = "\n".join(lines) + "\n"
    if args.csv:
        with open(args.csv, "w", encoding="ascii") as handle:
            handle.write(text)
        print(f"wrote {len(records)} rows to {args.csv}")
    else:
        print(text, end="")
    return EXIT_OK


def _cmd_eval(args) -> int:
    system = read_system_file(args.system_file)
    poly = parse_polynomial(args.expression, system.nvars)
    strategy = _strategy_for(args.basis, system.degrees)
    qs = compute_quotient_system(system, strategy)
    values = evaluate_on_variety(poly, qs)
    for value in values:
        value = complex(value)
        sign = "-" if math.copysign(1.0, value.imag) < 0 else "+"
        print(f"{value.real!r}{sign}{abs(value.imag)!r}*i")
    if system.nvars >= 2:
        worst = max(
            commutator_metric(qs, i, j)
            for i in range(1, system.nvars + 1)
            for j in range(i + 1, system.nvars + 1)
        )
        print(f"commutator metric: {worst!r}")
    return EXIT_OK


def _parse_degree_list(text: str) -> tuple[int, ...]:
    try:
        values = tuple(int(part) for part in text.split(","))
    except ValueError:
        raise ValueError(f"invalid degree list {text!r}") from None
    if not values:
        raise ValueError("empty degree list")
    return values


def _parse_degree_spec(text: str) -> list[int]:
    """Either 'lo..hi' or a comma-separated list."""
    if ".." in text:
        lo, _, hi = text.partition("..")
        try:
            lo_i, hi_i = int(lo), int(hi)
        except ValueError:
            raise ValueError(f"invalid degree range {text!r}") from None
        if lo_i > hi_i:
            raise ValueError(f"invalid degree range {text!r}")
        return list(range(lo_i, hi_i + 1))
    return list(_parse_degree_list(text))


def _parse_seed_list(text: str) -> list[int]:
    text = text.strip()
    if not text:
        return []
    return [int(part) for part in text.split(",")]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="eigroots",
        description="Solve square dense polynomial systems by eigendecomposition "
        "of quotient-ring multiplication matrices.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser("solve", help="solve a system file and print/save all roots")
    solve.add_argument("system_file")
    solve.add_argument("--basis", choices=STRATEGY_CHOICES, default="qr",
                       help="basis strategy: adaptive pivoted QR or the fixed block basis")
    solve.add_argument("--seed", type=int, default=0, help="seed for the extraction combination")
    solve.add_argument("--tol", type=float, default=1e-8, help="residual pass threshold")
    solve.add_argument("--refine", action="store_true",
                       help="apply one Newton step to every root before reporting")
    solve.add_argument("--json", action="store_true", help="emit structured JSON instead of text")
    solve.add_argument("--output", "-o", default=None, help="write solutions to this file")
    solve.set_defaults(func=_cmd_solve)

    gen = sub.add_parser("gen", help="generate a random dense system file")
    gen.add_argument("path")
    gen.add_argument("--degrees", required=True, help="comma-separated degrees, e.g. 2,2")
    gen.add_argument("--nvars", type=int, default=None,
                     help="number of variables (defaults to the number of degrees)")
    gen.add_argument("--seed", type=int, default=0)
    gen.set_defaults(func=_cmd_gen)

    bench = sub.add_parser("bench", help="run a (degree, seed, strategy) sweep and emit CSV")
    bench.add_argument("--nvars", type=int, default=2)
    bench.add_argument("--degrees", default="1..10", help="range lo..hi or comma-separated list")
    bench.add_argument("--seeds", default="0,1,2,3,4", help="comma-separated seed list")
    bench.add_argument("--basis", choices=STRATEGY_CHOICES + ("both",), default="both")
    bench.add_argument("--csv", default=None, help="write the CSV here instead of stdout")
    bench.set_defaults(func=_cmd_bench)

    evalp = sub.add_parser("eval", help="evaluate a polynomial expression on the variety")
    evalp.add_argument("system_file")
    evalp.add_argument("expression")
    evalp.add_argument("--basis", choices=STRATEGY_CHOICES, default="qr")
    evalp.add_argument("--seed", type=int, default=0)
    evalp.set_defaults(func=_cmd_eval)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except GenericityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GENERICITY
    except (ExtractionError,) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_EXTRACTION
    except (ValueError, InvalidBasisError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
