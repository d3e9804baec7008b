"""
Command-line front end. Every subcommand writes JSON (or CSV with --format csv) to stdout or to
--out; progress and diagnostics go to stderr.
"""

import argparse
import sys
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

import pandas as pd

from .exceptions import ParamError, SystolicAtlasError
from .experiment import run_sparsity
from .geometry import (
    bers_sweep,
    build_y_surface,
    collar_width,
    epsilon0,
    hairy_torus_report,
    pants_cuff_distance,
    solve_pentagon,
    square_data,
    verify_systole_certificate,
)
from .geometry.hypgeom import symmetric_pentagon_closed_form
from .graphs.census import count_simple, enumerate_census, exhaustive_census, growth_report, sample_uniform
from .graphs.multigraph import canonical_code, girth, read_cmg
from .mdp import MdpVertex, ball, ball_bound
from .rewrite import girth_lift
from .utils import default_threads, get_parameter_grid, load_settings, log, resolve_cache_dir, write_output
from .visualization import create_html


@dataclass
class RunConfig:
    """
    Flags shared by every subcommand, resolved against the settings.
    """

    subcommand: str
    cache_dir: Optional[str] = None
    seed: int = 0
    threads: int = 1
    output_format: str = "json"
    out: Optional[str] = None
    verbose: bool = False
    settings: Dict[str, Any] = field(default_factory=load_settings)

    def __post_init__(self):
        if self.seed < 0 or self.seed >= 2**64:
            raise ParamError(f"Seed must be a 64-bit unsigned integer, got {self.seed}.")
        if self.threads < 1:
            raise ParamError(f"--threads must be >= 1, got {self.threads}.")
        numerics = self.settings["numerics"]
        for key in ("tolerance", "residual_threshold", "certificate_tolerance"):
            if not numerics[key] > 0:
                raise ParamError(f"numerics.{key} must be positive, got {numerics[key]}.")

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "RunConfig":
        return cls(
            subcommand=args.subcommand,
            cache_dir=args.cache_dir,
            seed=args.seed,
            threads=args.threads if args.threads is not None else default_threads(),
            output_format=args.format,
            out=args.out,
            verbose=args.verbose,
            settings=load_settings(args.config),
        )

    @property
    def census_kwargs(self) -> Dict[str, Any]:
        return {"cache_dir": self.cache_dir, "settings": self.settings}


def get_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--cache-dir",
        type=str,
        default=None,
        help="Census cache directory. Defaults to $SYSTOLIC_ATLAS_CACHE, then ~/.cache/systolic_atlas",
    )
    common.add_argument("--out", type=str, default=None, help="Output file. Default is stdout")
    common.add_argument(
        "--format", type=str, default="json", help="Output format: json (default) or csv"
    )
    common.add_argument("--seed", type=int, default=0, help="Seed of every random draw. Default is 0")
    common.add_argument(
        "--threads",
        type=int,
        default=None,
        help="Number of ray workers for census expansion and move tables. Default is all cores, 1 disables ray",
    )
    common.add_argument(
        "--config", type=str, default=None, help="yaml file overlaying the packaged settings"
    )
    common.add_argument(
        "--verbose", action="store_true", default=False, help="Print progress to stderr"
    )

    parser = argparse.ArgumentParser(
        prog="systolic-atlas",
        description="Cubic multigraph census, Whitehead moves and systole certificates of hyperbolic surfaces.",
    )
    subparsers = parser.add_subparsers(dest="subcommand", required=True)

    census = subparsers.add_parser(
        "census", parents=[common], help="Count connected cubic multigraphs on V vertices"
    )
    census.add_argument("--v", type=int, required=True, help="Even number of vertices V >= 2")
    census.add_argument(
        "--allow-large",
        action="store_true",
        default=False,
        help="Allow V above census.v_max, up to census.v_max_override",
    )
    census.add_argument(
        "--oracle",
        action="store_true",
        default=False,
        help="Cross-check the count against the exhaustive labeled enumeration (small V only)",
    )
    census.add_argument("--list", action="store_true", default=False, help="Include all canonical codes")

    pentagon = subparsers.add_parser(
        "pentagon", parents=[common], help="Solve the right-angled pentagon for s and b"
    )
    pentagon.add_argument(
        "--tolerance", type=float, default=None, help="Absolute tolerance on s. Default is numerics.tolerance"
    )

    hairy = subparsers.add_parser(
        "hairy-torus", parents=[common], help="Genus, systole and Bers bound of the hairy torus"
    )
    hairy.add_argument("--m", type=int, default=None, help="Grid rows, >= 3")
    hairy.add_argument("--n", type=int, default=None, help="Grid columns, >= 3, mn even")
    hairy.add_argument(
        "--sweep", action="store_true", default=False, help="Run the n x n sweep of sweeps.bers"
    )

    y_surface = subparsers.add_parser(
        "y-surface", parents=[common], help="Build the Y-piece surface and verify its systole certificate"
    )
    y_surface.add_argument("--input", type=str, required=True, help="Base graph as .cmg file")
    y_surface.add_argument(
        "--lift", action="store_true", default=False, help="Raise the girth to 6 first"
    )

    lift = subparsers.add_parser(
        "girth-lift", parents=[common], help="Raise the girth to 6 and measure the distortion"
    )
    lift.add_argument("--input", type=str, default=None, help="Graph as .cmg file")
    lift.add_argument("--v", type=int, default=None, help="Lift every census graph on V vertices")

    mdp_ball = subparsers.add_parser(
        "mdp-ball", parents=[common], help="Ball in the move graph and its size bound"
    )
    mdp_ball.add_argument("--g", type=int, default=None, help="Genus; the center is a uniform census draw")
    mdp_ball.add_argument("--r", type=int, required=True, help="Radius")
    mdp_ball.add_argument("--input", type=str, default=None, help="Center graph as .cmg file")

    sparsity = subparsers.add_parser(
        "sparsity", parents=[common], help="Bad-set fractions and move distances per genus"
    )
    sparsity.add_argument("--g-min", type=int, default=None, help="Smallest genus. Default from settings")
    sparsity.add_argument("--g-max", type=int, default=None, help="Largest genus. Default from settings")
    sparsity.add_argument("--L", type=int, default=None, help="Cycle length bound. Default from settings")
    sparsity.add_argument("--h", type=float, default=None, help="Proportion in (0, 1). Default from settings")
    sparsity.add_argument("--trials", type=int, default=None, help="Draws per genus. Default from settings")
    sparsity.add_argument("--csv", type=str, default=None, help="Also write the per-genus table to this CSV file")

    report = subparsers.add_parser(
        "report", parents=[common], help="Collect the checkable quantities in one document"
    )
    report.add_argument("--v-max", type=int, default=8, help="Largest census V of the growth table. Default is 8")
    report.add_argument(
        "--html", type=str, default=None, help="Write a plotly HTML report including the sparsity trend"
    )
    return parser


def check_arguments(args: argparse.Namespace) -> None:
    if args.format not in ["json", "csv"]:
        raise ParamError(f"Invalid output format {args.format}. Choose json or csv.")
    if args.subcommand == "hairy-torus" and not args.sweep and (args.m is None or args.n is None):
        raise ParamError("hairy-torus needs --m and --n, or --sweep.")
    if args.subcommand == "girth-lift" and (args.input is None) == (args.v is None):
        raise ParamError("girth-lift needs exactly one of --input and --v.")
    if args.subcommand == "mdp-ball" and args.input is None and args.g is None:
        raise ParamError("mdp-ball needs --g or --input.")


def census_command(args, config: RunConfig) -> Tuple[Dict, Optional[pd.DataFrame]]:
    table = enumerate_census(
        args.v,
        allow_large=args.allow_large,
        threads=config.threads,
        verbose=config.verbose,
        **config.census_kwargs,
    )
    payload = {"V": table.vertex_count, "count": table.count, "simple_count": count_simple(table)}
    if args.oracle:
        oracle = exhaustive_census(args.v)
        payload["oracle_count"] = oracle.count
        payload["oracle_agrees"] = oracle.codes == table.codes
    if args.list:
        payload["codes"] = list(table.codes)
        return payload, pd.DataFrame({"V": table.vertex_count, "code": list(table.codes)})
    return payload, None


def pentagon_command(args, config: RunConfig) -> Tuple[Dict, Optional[pd.DataFrame]]:
    numerics = config.settings["numerics"]
    tolerance = args.tolerance if args.tolerance is not None else numerics["tolerance"]
    pentagon = solve_pentagon(tolerance=tolerance, residual_threshold=numerics["residual_threshold"])
    payload = pentagon.to_dict()
    payload["cuff_distance"] = pants_cuff_distance(pentagon.s, pentagon.s, pentagon.b)
    payload["s_over_3"] = pentagon.s / 3
    return payload, None


def hairy_torus_command(args, config: RunConfig) -> Tuple[Any, Optional[pd.DataFrame]]:
    if args.sweep:
        ns = sorted({params["n"] for params in get_parameter_grid("bers", config.settings)})
        reports = bers_sweep(ns)
        return reports, pd.json_normalize(reports)
    report = hairy_torus_report(args.m, args.n)
    return report, pd.json_normalize([report])


def y_surface_command(args, config: RunConfig) -> Tuple[Dict, Optional[pd.DataFrame]]:
    graph = read_cmg(args.input)
    payload: Dict[str, Any] = {"input_girth": girth(graph)}
    if args.lift:
        graph, correspondence = girth_lift(
            graph, sample_pairs=config.settings["lift"]["sample_pairs"], seed=config.seed
        )
        payload["lift"] = correspondence.to_dict()
    numerics = config.settings["numerics"]
    pentagon = solve_pentagon(tolerance=numerics["tolerance"], residual_threshold=numerics["residual_threshold"])
    model = build_y_surface(graph, pentagon)
    certificate = verify_systole_certificate(model, tolerance=numerics["certificate_tolerance"])
    payload["surface"] = model.to_dict()
    payload["filling"] = model.filling_check()
    payload["certificate"] = certificate.to_dict()
    table = pd.DataFrame(
        [
            {
                "check": c.number,
                "name": c.name,
                "value": c.value,
                "bound": c.bound,
                "margin": c.margin,
                "passed": c.passed,
            }
            for c in certificate.checks
        ]
    )
    return payload, table


def girth_lift_command(args, config: RunConfig) -> Tuple[Dict, Optional[pd.DataFrame]]:
    sample_pairs = config.settings["lift"]["sample_pairs"]
    if args.input is not None:
        graphs = [read_cmg(args.input)]
    else:
        graphs = enumerate_census(
            args.v, threads=config.threads, verbose=config.verbose, **config.census_kwargs
        ).graphs()
    rows = []
    for graph in graphs:
        lifted, correspondence = girth_lift(graph, sample_pairs=sample_pairs, seed=config.seed)
        rows.append(
            {
                "code": canonical_code(graph),
                "V": graph.vertex_count,
                "lifted_V": lifted.vertex_count,
                "girth": girth(graph),
                "lifted_girth": girth(lifted),
                **correspondence.to_dict(),
            }
        )
    table = pd.DataFrame(rows)
    payload = {
        "graphs": rows,
        "max_a": float(table["a"].max()),
        "max_b": float(table["b"].max()),
        "all_girth_at_least_6": bool((table["lifted_girth"] >= 6).all()),
    }
    return payload, table


def mdp_ball_command(args, config: RunConfig) -> Tuple[Dict, Optional[pd.DataFrame]]:
    if args.input is not None:
        graph = read_cmg(args.input)
    else:
        if args.g < 2:
            raise ParamError(f"Genus must be >= 2, got {args.g}.")
        graph = sample_uniform(2 * args.g - 2, config.seed, **config.census_kwargs)
    center = MdpVertex.from_graph(graph)
    distances = ball(center, args.r, config.settings)
    bound = ball_bound(center.genus, args.r)
    payload = {
        "g": center.genus,
        "r": args.r,
        "center": center.code,
        "size": len(distances),
        "bound": bound,
        "within_bound": len(distances) <= bound,
        "distances": dict(sorted(distances.items())),
    }
    table = pd.DataFrame(
        [{"code": code, "distance": d} for code, d in sorted(distances.items())]
    )
    return payload, table


def sparsity_command(args, config: RunConfig) -> Tuple[Dict, Optional[pd.DataFrame]]:
    defaults = config.settings["sparsity"]
    report = run_sparsity(
        args.g_min if args.g_min is not None else defaults["g_min"],
        args.g_max if args.g_max is not None else defaults["g_max"],
        args.L if args.L is not None else defaults["L"],
        args.h if args.h is not None else defaults["h"],
        args.trials if args.trials is not None else defaults["trials"],
        config.seed,
        threads=config.threads,
        verbose=config.verbose,
        **config.census_kwargs,
    )
    table = report.to_frame()
    if args.csv is not None:
        write_output(report.to_dict(), args.csv, output_format="csv", table=table)
    return report.to_dict(), table


def report_command(args, config: RunConfig) -> Tuple[Dict, Optional[pd.DataFrame]]:
    numerics = config.settings["numerics"]
    pentagon = solve_pentagon(tolerance=numerics["tolerance"], residual_threshold=numerics["residual_threshold"])
    square = square_data()
    eps0 = epsilon0()
    growth = growth_report(args.v_max, threads=config.threads, verbose=config.verbose, **config.census_kwargs)
    ns = sorted({params["n"] for params in get_parameter_grid("bers", config.settings)})
    sweep = bers_sweep(ns)
    balls = []
    for g in range(2, min(4, (args.v_max + 2) // 2) + 1):
        table = enumerate_census(2 * g - 2, **config.census_kwargs)
        for r in (1, 2):
            size = max(len(ball(MdpVertex(code), r, config.settings)) for code in table.codes)
            balls.append({"g": g, "r": r, "max_ball_size": size, "bound": ball_bound(g, r)})
    cuff = pants_cuff_distance(pentagon.s, pentagon.s, pentagon.b)
    claims = {
        "pentagon": {
            "s": pentagon.s,
            "b": pentagon.b,
            "c": pentagon.c,
            "closed_form_s": symmetric_pentagon_closed_form(),
            "max_residual": max(abs(r) for r in pentagon.residuals),
        },
        "cuff_distance": {"value": cuff, "s_over_3": pentagon.s / 3, "error": cuff - pentagon.s / 3},
        "collar_fixed_point": {"epsilon0": eps0, "two_collar_widths": 2 * collar_width(eps0)},
        "square": {
            "t": square.t,
            "alpha": square.side_half,
            "max_residual": max(abs(r) for r in square.residuals.values()),
        },
        "bers_sweep": {
            "n": ns,
            "all_exceed_2sqrt_g": all(r["bers_exceeds_2sqrt_g"] for r in sweep),
            "all_fill": all(r["filling_certificate"]["passed"] for r in sweep),
        },
        "ball_bounds": {"all_within_bound": all(b["max_ball_size"] <= b["bound"] for b in balls)},
    }
    payload = {"claims": claims, "growth": growth.to_dict(orient="records"), "balls": balls}
    if args.html is not None:
        defaults = config.settings["sparsity"]
        sparsity = run_sparsity(
            defaults["g_min"],
            defaults["g_max"],
            defaults["L"],
            defaults["h"],
            defaults["trials"],
            config.seed,
            threads=config.threads,
            verbose=config.verbose,
            **config.census_kwargs,
        )
        create_html(args.html, growth, sparsity.to_frame(), claims, verbose=config.verbose)
        payload["html"] = args.html
    return payload, growth


COMMAND_FACTORY = {
    "census": census_command,
    "pentagon": pentagon_command,
    "hairy-torus": hairy_torus_command,
    "y-surface": y_surface_command,
    "girth-lift": girth_lift_command,
    "mdp-ball": mdp_ball_command,
    "sparsity": sparsity_command,
    "report": report_command,
}


def run(argv: Optional[List[str]] = None) -> int:
    """
    Parses argv, runs the subcommand and writes its result.
    :return: exit code: 0 on success, 2 on invalid input, 3 on a size limit, 1 on other errors
    """
    try:
        args = get_parser().parse_args(argv)
    except SystemExit as e:
        # argparse exits with 0 after --help and with 2 on usage errors
        return int(e.code) if e.code is not None else 0
    try:
        check_arguments(args)
        config = RunConfig.from_args(args)
        if args.cache_dir is not None:
            config.cache_dir = resolve_cache_dir(args.cache_dir)
        log(f"Running {args.subcommand} ...", config.verbose)
        payload, table = COMMAND_FACTORY[args.subcommand](args, config)
        write_output(payload, config.out, output_format=config.output_format, table=table)
    except SystolicAtlasError as e:
        # ValidationError exits with 2, LimitError with 3
        print(f"error: {e}", file=sys.stderr)
        return e.exit_code
    except FileNotFoundError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    return 0


def main() -> None:
    sys.exit(run())
