"""
Command-line entry point.

Every subcommand parses its inputs, runs one analysis from
`berry_esseen.pipeline` and writes the artifact to `--out` (stdout when
omitted). Exit status: 0 on success, 1 on an input error or inapplicable
analysis, 2 when a verification ran and failed.
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence

from berry_esseen import pipeline
from berry_esseen.core.errors import BerryEsseenError, ScenarioError
from berry_esseen.core.model import DiscreteFamily, parse_law
from berry_esseen.generators import SPEC_KINDS, CliqueBlocks, MDependentWindow, bernoulli_decay, three_point_family
from berry_esseen.generators.base import FamilySpec
from berry_esseen.utils.config import load_config
from berry_esseen.utils.io import read_column, read_document
from berry_esseen.utils.logger import setup_logger

logger = logging.getLogger(__name__)

KIND_ALIASES = {
    "clique": "clique_blocks",
    "m_dependent": "m_dependent_window",
    "three-point": "three_point",
    "bernoulli": "bernoulli_decay",
}


def _floats(text: str) -> List[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got '{text}'") from e


def _setting(value: Any, config: Dict[str, Any], section: str, key: str) -> Any:
    """A flag value, or the config value when the flag was not given."""
    return config[section][key] if value is None else value


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------


def cmd_bounds(args: argparse.Namespace, config: Dict[str, Any]) -> pipeline.AnalysisResult:
    source = args.profile or args.family
    if source is None:
        raise ScenarioError("bounds needs --profile or --family.")
    deltas = sorted(set(pipeline.DEFAULT_PROFILE_DELTAS) | set(args.deltas or []))
    profile = pipeline.load_profile(read_document(source), deltas, config["oracle"]["support_cap"])
    return pipeline.bounds_analysis(profile, args.all, args.deltas)


def cmd_regimes(args: argparse.Namespace, config: Dict[str, Any]) -> pipeline.AnalysisResult:
    grid = dict(config["regimes"])
    if args.delta_step is not None:
        grid["delta_step"] = args.delta_step
    if args.alpha_step is not None:
        grid["alpha_step"] = args.alpha_step
    return pipeline.regimes_analysis(grid, args.svg)


def cmd_verify(args: argparse.Namespace, config: Dict[str, Any]) -> pipeline.AnalysisResult:
    spec = pipeline.load_spec(read_document(args.spec), config["oracle"]["support_cap"])
    return pipeline.verify_analysis(
        spec,
        args.theorem,
        int(_setting(args.samples, config, "montecarlo", "n_samples")),
        float(_setting(args.confidence, config, "montecarlo", "confidence")),
        args.seed,
        args.delta,
        int(_setting(args.threads, config, "montecarlo", "threads")),
        int(config["montecarlo"]["chunk_size"]),
        args.estimate_v,
    )


def cmd_cumulant_check(args: argparse.Namespace, config: Dict[str, Any]) -> pipeline.AnalysisResult:
    family: Optional[DiscreteFamily] = None
    if args.families != "random":
        cap = config["oracle"]["support_cap"]
        family = pipeline.load_spec(read_document(args.families), cap).to_family(cap)
    return pipeline.cumulant_check_analysis(
        args.count, args.rmax, args.seed, family, args.max_vertices,
        int(_setting(args.threads, config, "montecarlo", "threads")), config["oracle"],
    )


def cmd_feller_check(args: argparse.Namespace, config: Dict[str, Any]) -> pipeline.AnalysisResult:
    law = pipeline.load_law(args.law, config["oracle"]["support_cap"])
    return pipeline.feller_check_analysis(law, args.T, config["quadrature"])


def build_spec(args: argparse.Namespace) -> FamilySpec:
    """The generator spec described by the `generate` flags."""
    kind = KIND_ALIASES.get(args.kind, args.kind)
    law = parse_law(args.law)
    if kind == "clique_blocks":
        spec = CliqueBlocks(args.blocks, args.size, law, law_name=args.law)
    elif kind == "m_dependent_window":
        spec = MDependentWindow(args.n, args.m, law, args.window, law_name=args.law)
    elif kind == "three_point":
        spec = three_point_family(args.delta, args.n)
    elif kind == "bernoulli_decay":
        spec = bernoulli_decay(args.n)
    else:
        raise ScenarioError(f"Cannot generate kind '{args.kind}' from flags; write a custom family file instead.")
    return spec


def cmd_generate(args: argparse.Namespace, config: Dict[str, Any]) -> pipeline.AnalysisResult:
    spec = build_spec(args)
    logger.info(f"Generated {spec.kind} with N={spec.N}, D={spec.D}")
    if args.exact:
        cap = config["oracle"]["support_cap"]
        return pipeline.AnalysisResult("generate", document=spec.to_family(cap).to_dict())
    return pipeline.AnalysisResult("generate", document=spec.to_dict())


def cmd_ustat(args: argparse.Namespace, config: Dict[str, Any]) -> pipeline.AnalysisResult:
    return pipeline.ustat_analysis(
        args.kernel, read_column(args.data), args.m, args.delta, args.variant,
        args.var_u, args.var_v, args.A, args.L, args.K, int(config["ustat"]["enumeration_cap"]),
    )


def cmd_volatility(args: argparse.Namespace, config: Dict[str, Any]) -> pipeline.AnalysisResult:
    moments = read_column(args.moments) if args.moments else None
    return pipeline.volatility_analysis(
        read_column(args.times), read_column(args.returns), args.delta, args.K, args.m, args.unbiased, moments,
    )


def cmd_constants(args: argparse.Namespace, config: Dict[str, Any]) -> pipeline.AnalysisResult:
    return pipeline.constants_analysis()


def cmd_run(args: argparse.Namespace, config: Dict[str, Any]) -> int:
    scenario = pipeline.load_scenario(args.scenario)
    if args.seed_given:
        scenario.seed = args.seed
    if args.threads is not None:
        scenario.threads = args.threads
    if args.out is not None:
        scenario.out_dir = Path(args.out)
    return pipeline.run_scenario(scenario, config, args.format)


COMMANDS: Dict[str, Callable[[argparse.Namespace, Dict[str, Any]], Any]] = {
    "bounds": cmd_bounds,
    "regimes": cmd_regimes,
    "verify": cmd_verify,
    "cumulant-check": cmd_cumulant_check,
    "feller-check": cmd_feller_check,
    "generate": cmd_generate,
    "ustat": cmd_ustat,
    "volatility": cmd_volatility,
    "constants": cmd_constants,
    "run": cmd_run,
}


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=str, default=None, help="YAML configuration file (default: ./config.yaml if present)")
    common.add_argument("--seed", type=int, default=None, help="Master seed (default 0)")
    common.add_argument("--threads", type=int, default=None, help="Worker threads")
    common.add_argument("--out", type=str, default=None, help="Output file (output directory for 'run')")
    common.add_argument("--format", choices=("csv", "json"), default="csv", help="Table format")
    common.add_argument("--log-level", type=str, default=None, help="Overrides logging.level")

    parser = argparse.ArgumentParser(
        prog="berry-esseen",
        description="Berry-Esseen bounds for sums with a dependency graph",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bounds", parents=[common], help="Evaluate the bounds of a profile or family")
    p.add_argument("--profile", type=str, help="Moment profile JSON")
    p.add_argument("--family", type=str, help="Generator spec or family JSON")
    p.add_argument("--all", action="store_true", help="Include every baseline at every delta")
    p.add_argument("--deltas", type=_floats, default=None, help="Moment orders, e.g. 2.5,3")

    p = sub.add_parser("regimes", parents=[common], help="Region map of the best exponent")
    p.add_argument("--svg", type=str, default=None, help="Also render the map as SVG")
    p.add_argument("--delta-step", type=float, default=None)
    p.add_argument("--alpha-step", type=float, default=None)

    p = sub.add_parser("verify", parents=[common], help="Monte Carlo check of a bound")
    p.add_argument("--spec", type=str, required=True, help="Generator spec or family JSON")
    p.add_argument("--theorem", type=str, default="linfty")
    p.add_argument("--samples", type=int, default=None)
    p.add_argument("--confidence", type=float, default=None)
    p.add_argument("--delta", type=float, default=None)
    p.add_argument("--estimate-v", action="store_true", help="Standardize with sample moments (not certified)")

    p = sub.add_parser("cumulant-check", parents=[common], help="Exact cumulants against the cumulant bound")
    p.add_argument("--families", type=str, default="random", help="'random' or a family JSON")
    p.add_argument("--count", type=int, default=200)
    p.add_argument("--rmax", type=int, default=6)
    p.add_argument("--max-vertices", type=int, default=8)

    p = sub.add_parser("feller-check", parents=[common], help="Smoothing inequality on an exact law")
    p.add_argument("--law", type=str, required=True, help="Law file, family file or law name")
    p.add_argument("--T", type=_floats, default=[1.0, 2.0, 5.0, 10.0], help="Comma-separated T values")

    p = sub.add_parser("generate", parents=[common], help="Write a family spec")
    p.add_argument("--kind", type=str, required=True, choices=sorted(set(SPEC_KINDS) | set(KIND_ALIASES)))
    p.add_argument("--blocks", type=int, default=1)
    p.add_argument("--size", type=int, default=1)
    p.add_argument("--law", type=str, default="rademacher")
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--m", type=int, default=0)
    p.add_argument("--window", type=str, default="product")
    p.add_argument("--delta", type=float, default=3.0)
    p.add_argument("--exact", action="store_true", help="Write the exact family instead of the spec")

    p = sub.add_parser("ustat", parents=[common], help="U-statistic and its Kolmogorov bound")
    p.add_argument("--kernel", type=str, required=True)
    p.add_argument("--data", type=str, required=True, help="CSV whose first column holds the data")
    p.add_argument("--m", type=int, default=0)
    p.add_argument("--delta", type=float, default=None)
    p.add_argument("--variant", choices=("bounded", "moments", "stationary"), default="moments")
    p.add_argument("--var-u", type=float, default=None, help="V[U_n]")
    p.add_argument("--var-v", type=float, default=None, help="V[V_n]")
    p.add_argument("--A", type=float, default=None)
    p.add_argument("--L", type=float, default=None)
    p.add_argument("--K", type=float, default=None)

    p = sub.add_parser("volatility", parents=[common], help="Volatility estimates and their bound")
    p.add_argument("--times", type=str, required=True, help="CSV of t_1..t_n")
    p.add_argument("--returns", type=str, required=True, help="CSV of X_1..X_n")
    p.add_argument("--delta", type=float, default=None)
    p.add_argument("--K", type=float, default=None)
    p.add_argument("--m", type=int, default=0)
    p.add_argument("--unbiased", action="store_true")
    p.add_argument("--moments", type=str, default=None, help="CSV of E|X_i/kappa_i|^delta")

    sub.add_parser("constants", parents=[common], help="Proof constants and their enclosures")

    p = sub.add_parser("run", parents=[common], help="Run a scenario file")
    p.add_argument("--scenario", type=str, required=True)
    return parser


def _load_settings(args: argparse.Namespace) -> Dict[str, Any]:
    path = args.config
    if path is None and Path("config.yaml").is_file():
        path = "config.yaml"
    config = load_config(path)
    if args.log_level is not None:
        config["logging"]["level"] = args.log_level
    return config


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Runs the command line.

    Args:
        argv (Optional[Sequence[str]]): Arguments without the program name;
            `sys.argv[1:]` when None.

    Returns:
        int: The exit status.
    """
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:
        # argparse exits with 2 on usage errors; 2 is reserved for failed verifications.
        return pipeline.EXIT_OK if e.code in (0, None) else pipeline.EXIT_INPUT_ERROR
    args.seed_given = args.seed is not None
    if args.seed is None:
        args.seed = 0

    try:
        config = _load_settings(args)
        setup_logger(config["logging"])
        outcome = COMMANDS[args.command](args, config)
        if isinstance(outcome, int):
            return outcome
        outcome.write(args.out, args.format)
    except (BerryEsseenError, ValueError, OSError) as e:
        logger.error(f"{args.command} failed: {e}")
        print(f"error: {e}", file=sys.stderr)
        return pipeline.EXIT_INPUT_ERROR

    if not outcome.passed:
        logger.warning(f"{args.command}: verification failed")
        return pipeline.EXIT_VERIFICATION_FAILED
    return pipeline.EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
