"""
Analysis Pipeline

This module wires the library together into the analyses the command line
and scenario files expose. Each analysis turns parsed inputs into one
`AnalysisResult`: a table (written as CSV or JSON) or a document (written as
JSON), plus a pass flag for the analyses that certify something.

A `Scenario` bundles a family or profile reference with a list of requested
analyses, their output paths and a seed. `run_scenario` executes them in
order and returns the process exit status: 0 when everything passed, 2 when
some verification failed. Input errors propagate as `BerryEsseenError`.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional, Sequence, Union

import numpy as np
import pandas as pd

from berry_esseen.applications import (
    UStatSpec,
    VolatilitySpec,
    clt_condition_check,
    get_kernel,
    plug_in_moment,
    shared_prefix_profiles,
    tail_constant,
    u_statistic,
    ustat_bound,
    ustat_graph_bounds,
    volatility_bound,
    volatility_estimators,
)
from berry_esseen.bounds import BoundRegistry, crossover_curves, default_registry, render_svg
from berry_esseen.bounds.registry import theorem_candidates
from berry_esseen.bounds.regimes import default_alpha_grid, default_delta_grid
from berry_esseen.core.errors import (
    BerryEsseenError,
    DegenerateVariance,
    InvalidProfile,
    MissingMoment,
    ScenarioError,
    WrongRegime,
)
from berry_esseen.core.model import (
    DEFAULT_SUPPORT_CAP,
    DiscreteFamily,
    DiscreteLaw,
    MomentProfile,
    derive_profile,
    parse_law,
)
from berry_esseen.core.report import BoundReport, TheoremId
from berry_esseen.cumulants import (
    constant_C,
    constant_C_second,
    cumulants_of_sum,
    derived_theorem_constants,
    lemma_cumulant_bound,
    proof_constants,
)
from berry_esseen.fourier import StandardizedLaw, exact_dkol, feller_rhs
from berry_esseen.generators import CustomSpec, FamilySpec, random_block_family, spec_from_dict
from berry_esseen.montecarlo import rate_scan, verify_bound
from berry_esseen.utils.config import DEFAULT_CONFIG
from berry_esseen.utils.io import read_column, read_document, write_json, write_table
from berry_esseen.utils.rng import substream

logger = logging.getLogger(__name__)

DEFAULT_PROFILE_DELTAS = (2.0, 2.5, 3.0, 4.0)
BOUNDS_COLUMNS = ["theorem_id", "raw", "clamped", "branch", "valid", "notes"]
CUMULANT_COLUMNS = ["family_id", "r", "delta", "exact_abs_cumulant", "bound", "ratio", "pass"]
FELLER_COLUMNS = ["T", "lhs_exact_dkol", "rhs", "slack"]
CUMULANT_TOL = 1e-9

EXIT_OK = 0
EXIT_INPUT_ERROR = 1
EXIT_VERIFICATION_FAILED = 2


@dataclass(frozen=True)
class AnalysisResult:
    """
    Output of one analysis.

    Attributes:
        name (str): Analysis name, e.g. "bounds".
        table (Optional[pd.DataFrame]): Tabular output.
        document (Optional[Dict[str, Any]]): JSON output.
        passed (bool): False when a certification check failed.
    """

    name: str
    table: Optional[pd.DataFrame] = None
    document: Optional[Dict[str, Any]] = None
    passed: bool = True

    def write(self, path: Optional[Union[str, Path]] = None, fmt: str = "csv") -> None:
        if self.table is not None:
            write_table(self.table, path, fmt)
        else:
            write_json(self.document, path)


# ---------------------------------------------------------------------------
# Input resolution
# ---------------------------------------------------------------------------


def load_spec(doc: Mapping[str, Any], support_cap: int = DEFAULT_SUPPORT_CAP) -> FamilySpec:
    """A generator spec (documents with `kind`) or a custom JSON family."""
    if not isinstance(doc, Mapping):
        raise ScenarioError("A family specification must be a JSON object.")
    if "kind" in doc:
        return spec_from_dict(doc)
    return CustomSpec(DiscreteFamily.from_dict(doc, support_cap))


def load_profile(doc: Mapping[str, Any], deltas: Sequence[float] = DEFAULT_PROFILE_DELTAS,
                 support_cap: int = DEFAULT_SUPPORT_CAP) -> MomentProfile:
    """
    A moment profile from a profile document, a generator spec or a family.

    Family inputs are turned into profiles at the requested moment orders.
    """
    if not isinstance(doc, Mapping):
        raise ScenarioError("A profile must be a JSON object.")
    if "kind" in doc:
        return spec_from_dict(doc).profile(deltas)
    if "laws" in doc or "groups" in doc:
        return derive_profile(DiscreteFamily.from_dict(doc, support_cap), deltas)
    return MomentProfile.from_dict(doc)


def load_law(source: Union[str, Path, Mapping, Sequence], support_cap: int = DEFAULT_SUPPORT_CAP) -> StandardizedLaw:
    """
    The standardized law W of a law file, a law name, an atom list or a family.

    Accepted forms: a path to a JSON/YAML file holding one of the other forms;
    a law name such as "bernoulli:0.3"; a list of {"x", "p"} atoms; a mapping
    with "values" and "probs"; a family document or generator spec, whose
    sum is standardized.
    """
    if isinstance(source, (str, Path)):
        if Path(source).is_file():
            source = read_document(source)
        else:
            law = parse_law(str(source))
            return StandardizedLaw.from_atoms(law.values, law.probs)
    if isinstance(source, str):
        return load_law(source, support_cap)
    if isinstance(source, Mapping):
        if "values" in source and "probs" in source:
            return StandardizedLaw.from_atoms(source["values"], source["probs"])
        return StandardizedLaw.from_family(load_spec(source, support_cap).to_family(support_cap))
    if isinstance(source, Sequence):
        law = DiscreteLaw.from_pairs(source)
        return StandardizedLaw.from_atoms(law.values, law.probs)
    raise ScenarioError(f"Cannot read a law from {type(source).__name__}.")


def profile_sequence(doc: Union[Sequence, Mapping], deltas: Sequence[float] = DEFAULT_PROFILE_DELTAS) -> List[MomentProfile]:
    """
    A sequence of profiles ordered by N.

    Accepted forms: a list of profile documents; {"shared_prefix": {"sizes",
    "exponent"}}; {"spec": generator spec, "vary": parameter, "values": [...]}.
    """
    if isinstance(doc, Mapping) and "shared_prefix" in doc:
        params = doc["shared_prefix"]
        return shared_prefix_profiles(params["sizes"], float(params.get("exponent", 2 / 3)))
    if isinstance(doc, Mapping) and "spec" in doc:
        try:
            template, key, values = doc["spec"], doc["vary"], doc["values"]
        except KeyError as e:
            raise ScenarioError(f"A generated profile sequence needs 'spec', 'vary' and 'values': {e}") from e
        return [spec_from_dict({**template, key: value}).profile(deltas) for value in values]
    if isinstance(doc, Sequence) and not isinstance(doc, str):
        return [load_profile(item, deltas) for item in doc]
    raise ScenarioError("Unrecognized profile sequence.")


# ---------------------------------------------------------------------------
# Analyses
# ---------------------------------------------------------------------------


def _bound_rows(reports: Sequence[BoundReport]) -> pd.DataFrame:
    return pd.DataFrame(
        [[r.label, r.raw_value, r.clamped_value, r.binding_branch, r.valid, r.validity_notes] for r in reports],
        columns=BOUNDS_COLUMNS,
    )


def bounds_analysis(profile: MomentProfile, include_all: bool = False, deltas: Optional[Sequence[float]] = None,
                    registry: Optional[BoundRegistry] = None) -> AnalysisResult:
    """
    The theorem bounds of a profile, or with `include_all` every registered
    bound (baselines included) at each moment order.
    """
    if include_all:
        reports = (registry or default_registry()).evaluate_all(profile, deltas)
    else:
        profile.require_variance()
        reports = theorem_candidates(profile)
    valid = [r for r in reports if r.valid]
    if valid:
        best = min(valid, key=lambda r: r.clamped_value)
        logger.info(f"Smallest valid bound: {best.label} = {best.clamped_value:.6g}")
    else:
        logger.warning("No bound applies to the stored moments.")
    return AnalysisResult("bounds", table=_bound_rows(reports))


def regimes_analysis(regimes_config: Optional[Mapping[str, float]] = None,
                     svg_path: Optional[Union[str, Path]] = None) -> AnalysisResult:
    cfg = {**DEFAULT_CONFIG["regimes"], **dict(regimes_config or {})}
    region_map = crossover_curves(
        default_delta_grid(cfg["delta_min"], cfg["delta_max"], cfg["delta_step"]),
        default_alpha_grid(cfg["alpha_min"], cfg["alpha_max"], cfg["alpha_step"]),
    )
    if svg_path is not None:
        render_svg(region_map, svg_path)
    return AnalysisResult("regimes", table=region_map.to_frame())


def verify_analysis(spec: FamilySpec, theorem: str, n_samples: int, confidence: float, seed: int,
                    delta: Optional[float] = None, threads: int = 1, chunk_size: int = 65_536,
                    estimate_v: bool = False) -> AnalysisResult:
    report = verify_bound(spec, theorem, n_samples, confidence, seed, delta, threads, chunk_size, estimate_v)
    return AnalysisResult("verify", document=report.to_dict(), passed=report.passed)


def _cumulant_rows(family_id: int, family: DiscreteFamily, r_max: int, max_order: int,
                   warn_order: int) -> List[List[Any]]:
    deltas = sorted({2.0, 2.5, 3.0} | {float(r) for r in range(2, r_max + 1)})
    profile = derive_profile(family, deltas)
    kappas = cumulants_of_sum(family, r_max, max_order, warn_order)
    rows = []
    for r in range(2, r_max + 1):
        for delta in sorted({2.0, 2.5, 3.0, float(r)}):
            if delta > r:
                continue
            exact = abs(kappas[r - 1])
            bound = lemma_cumulant_bound(profile, r, delta, profile.require_L())
            rows.append([family_id, r, delta, exact, bound, exact / bound, exact <= bound * (1 + CUMULANT_TOL)])
    return rows


def cumulant_check_analysis(count: int, r_max: int, seed: int, family: Optional[DiscreteFamily] = None,
                            max_vertices: int = 8, threads: int = 1,
                            oracle_config: Optional[Mapping[str, int]] = None) -> AnalysisResult:
    """
    Exact |k_r(S)| against the cumulant bound at the family's own L.

    With `family` None, `count` random block families are drawn, family i
    from substream(seed, i). A family whose law cannot be enumerated is
    skipped with a warning.
    """
    cfg = {**DEFAULT_CONFIG["oracle"], **dict(oracle_config or {})}
    if r_max < 2:
        raise WrongRegime(f"The cumulant check needs rmax >= 2, got {r_max}.")

    def check(index: int) -> List[List[Any]]:
        fam = family if family is not None else random_block_family(substream(seed, index), max_vertices)
        try:
            return _cumulant_rows(index, fam, r_max, cfg["max_cumulant_order"], cfg["warn_cumulant_order"])
        except (DegenerateVariance, MissingMoment) as e:
            logger.warning(f"Family {index} skipped: {e}")
            return []

    indices = range(1 if family is not None else count)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            batches = list(pool.map(check, indices))
    else:
        batches = [check(i) for i in indices]
    frame = pd.DataFrame([row for batch in batches for row in batch], columns=CUMULANT_COLUMNS)
    failures = int((~frame["pass"].astype(bool)).sum())
    if failures:
        logger.warning(f"Cumulant bound exceeded in {failures} of {len(frame)} cases.")
    return AnalysisResult("cumulant-check", table=frame, passed=failures == 0)


def feller_check_analysis(law: StandardizedLaw, T_values: Sequence[float],  # pylint: disable=invalid-name
                          quadrature_config: Optional[Mapping[str, float]] = None) -> AnalysisResult:
    """exact_dkol(law) against the smoothing right-hand side at each T."""
    cfg = {**DEFAULT_CONFIG["quadrature"], **dict(quadrature_config or {})}
    lhs = exact_dkol(law)
    rows = []
    for T in T_values:  # pylint: disable=invalid-name
        rhs = feller_rhs(law, float(T), cfg["epsabs"], int(cfg["limit"]), cfg["small_s_cutoff"])
        rows.append([float(T), lhs, rhs, rhs - lhs])
    frame = pd.DataFrame(rows, columns=FELLER_COLUMNS)
    return AnalysisResult("feller-check", table=frame, passed=bool((frame["slack"] >= 0).all()))


def ustat_analysis(
    kernel: str,
    data: Sequence[float],
    m: int = 0,
    delta: Optional[float] = None,
    variant: str = "moments",
    var_U: Optional[float] = None,  # pylint: disable=invalid-name
    var_V: Optional[float] = None,  # pylint: disable=invalid-name
    A: Optional[float] = None,  # pylint: disable=invalid-name
    L: Optional[float] = None,  # pylint: disable=invalid-name
    K: Optional[float] = None,  # pylint: disable=invalid-name
    enumeration_cap: int = 10_000_000,
) -> AnalysisResult:
    """
    U_n of the data with its tuple-graph sizes and a Kolmogorov bound.

    V[V_n] comes from `var_V`, or from `var_U` times (n!/(n-ell)!)^2. When A
    is not given, the observed moment of the kernel values is used and the
    report is flagged. Without a variance the bound row is inapplicable.
    """
    spec = UStatSpec(get_kernel(kernel), len(data), m)
    value = u_statistic(spec, data, enumeration_cap=enumeration_cap)
    graph = ustat_graph_bounds(spec.n, spec.ell, m)
    if var_V is None and var_U is not None:
        var_V = spec.tuple_count ** 2 * var_U
    plug_in = False
    if A is None and delta is not None and variant != "bounded":
        A = plug_in_moment(spec, data, delta, enumeration_cap=enumeration_cap)
        plug_in = True

    theorem = {"bounded": TheoremId.USTAT_BOUNDED, "stationary": TheoremId.USTAT_STATIONARY}.get(
        variant, TheoremId.USTAT_MOMENTS)
    if var_V is None:
        report = BoundReport.inapplicable(theorem, "V[U_n] is required: supply var_U or var_V", delta)
    else:
        try:
            report = ustat_bound(spec, var_V, variant, delta, A, L, K)
        except (MissingMoment, WrongRegime, InvalidProfile) as e:
            logger.warning(f"U-statistic bound not applicable: {e}")
            report = BoundReport.inapplicable(theorem, str(e), delta)

    document = {
        "kernel": kernel,
        "n": spec.n,
        "ell": spec.ell,
        "m": m,
        "u_statistic": value,
        "graph": graph.to_dict(),
        "var_V": var_V,
        "A": A,
        "plug_in_moment": plug_in,
        "bound": report.to_dict(),
    }
    return AnalysisResult("ustat", document=document)


def volatility_analysis(
    times: Sequence[float],
    returns: Sequence[float],
    delta: Optional[float] = None,
    K: Optional[float] = None,  # pylint: disable=invalid-name
    m: int = 0,
    unbiased: bool = False,
    scaled_moments: Optional[Sequence[float]] = None,
) -> AnalysisResult:
    """
    Drift and variance-rate estimates with the Kolmogorov bound of the
    standardized variance-rate estimator.

    Without `scaled_moments` the observed |X_i/kappa_i|^delta stand in for
    E|X_i/kappa_i|^delta and the report is flagged.
    """
    spec = VolatilitySpec(np.asarray(times, dtype=float), delta, m, K)
    estimates = volatility_estimators(spec, returns, unbiased)
    plug_in = scaled_moments is None and delta is not None
    if plug_in:
        logger.warning("Using observed |X/kappa|^delta as moments; the bound is not certified.")
        scaled_moments = np.abs(np.asarray(returns, dtype=float) / spec.kappas) ** delta

    document: Dict[str, Any] = {
        "n": spec.n,
        "t_n": spec.t_n,
        "m": m,
        "estimates": estimates.to_dict(),
        "plug_in_moments": plug_in,
    }
    if delta is not None:
        document["tail_constant"] = tail_constant(spec, scaled_moments)
    try:
        report = volatility_bound(spec, scaled_moments if scaled_moments is not None else [])
    except (MissingMoment, WrongRegime) as e:
        logger.warning(f"Volatility bound not applicable: {e}")
        report = BoundReport.inapplicable(TheoremId.VOLATILITY, str(e), delta)
    document["bound"] = report.to_dict()
    return AnalysisResult("volatility", document=document)


def clt_analysis(profiles: Sequence[MomentProfile], delta: Optional[float] = None,
                 threshold: float = DEFAULT_CONFIG["trend"]["slope_threshold"]) -> AnalysisResult:
    return AnalysisResult("clt", document=clt_condition_check(profiles, delta, threshold).to_dict())


def rate_scan_analysis(block_size: int, law: DiscreteLaw, sizes: Sequence[int], n_samples: int, seed: int,
                       confidence: float = 0.99, threads: int = 1) -> AnalysisResult:
    scan = rate_scan(block_size, law, sizes, n_samples, seed, confidence, threads)
    frame = scan.frame.assign(reverse_constant=scan.reverse_constant)
    return AnalysisResult("rate-scan", table=frame)


def constants_analysis() -> AnalysisResult:
    """Enclosures of the proof constants and the check of every displayed constant."""
    document = {
        "C": constant_C().to_dict(),
        "C_second": constant_C_second().to_dict(),
        "proof": proof_constants().to_dict(),
        "displayed": derived_theorem_constants(),
    }
    covered = all(entry["covers"] for entry in document["displayed"].values())
    return AnalysisResult("constants", document=document, passed=covered)


# ---------------------------------------------------------------------------
# Scenarios
# ---------------------------------------------------------------------------

ANALYSES = (
    "bounds", "regimes", "verify", "cumulant-check", "feller-check",
    "ustat", "volatility", "clt", "rate-scan", "constants",
)
DEFAULT_OUTPUTS = {
    "bounds": "bounds.csv",
    "regimes": "regimes.csv",
    "verify": "verify.json",
    "cumulant-check": "cumulants.csv",
    "feller-check": "feller.csv",
    "ustat": "ustat.json",
    "volatility": "volatility.json",
    "clt": "clt.json",
    "rate-scan": "rate_scan.csv",
    "constants": "constants.json",
}
# Inputs each analysis needs from the scenario or from its own entry.
REQUIRED_INPUTS = {
    "bounds": ("family", "profile"),
    "verify": ("family",),
    "feller-check": ("law", "family"),
    "ustat": ("data",),
    "volatility": ("times",),
    "clt": ("profiles",),
}


@dataclass
class Scenario:
    """
    A reproducible batch of analyses.

    Attributes:
        analyses (List[Dict[str, Any]]): Entries with a `type` from ANALYSES
            and per-analysis options, including an optional `out` path.
        seed (int): Master seed shared by every randomized analysis.
        threads (int): Worker threads for sampling and batch checks.
        out_dir (Path): Directory receiving the artifacts.
        family (Optional[Dict[str, Any]]): Generator spec or JSON family.
        profile (Optional[Dict[str, Any]]): Moment profile document.
        profiles (Any): Profile sequence for the CLT analysis.
        tolerances (Dict[str, float]): Overrides such as `confidence` or `epsabs`.
        base_dir (Path): Directory relative paths are resolved against.
    """

    analyses: List[Dict[str, Any]]
    seed: int = 0
    threads: int = 1
    out_dir: Path = Path(".")
    family: Optional[Dict[str, Any]] = None
    profile: Optional[Dict[str, Any]] = None
    profiles: Any = None
    tolerances: Dict[str, float] = field(default_factory=dict)
    base_dir: Path = Path(".")

    def resolve(self, path: Union[str, Path]) -> Path:
        path = Path(path)
        return path if path.is_absolute() else self.base_dir / path

    def output_path(self, entry: Mapping[str, Any]) -> Path:
        out = Path(entry.get("out", DEFAULT_OUTPUTS[entry["type"]]))
        return out if out.is_absolute() else self.out_dir / out


def _inline_or_file(scenario_dir: Path, doc: Mapping[str, Any], key: str) -> Any:
    if key in doc:
        return doc[key]
    file_key = f"{key}_file"
    if file_key in doc:
        path = Path(doc[file_key])
        return read_document(path if path.is_absolute() else scenario_dir / path)
    return None


def load_scenario(path: Union[str, Path]) -> Scenario:
    """
    Reads and validates a scenario file (YAML or JSON).

    Referenced files (`family_file`, `profile_file`, `profiles_file` and the
    data files of individual analyses) must exist and parse; every analysis
    must have the inputs it needs.

    Raises:
        ScenarioError: On any of these violations.
    """
    path = Path(path)
    doc = read_document(path)
    if not isinstance(doc, Mapping):
        raise ScenarioError(f"Scenario {path} must hold a mapping.")
    base_dir = path.parent
    analyses = doc.get("analyses")
    if not isinstance(analyses, list) or not analyses:
        raise ScenarioError("A scenario needs a non-empty 'analyses' list.")

    scenario = Scenario(
        analyses=[dict(a) if isinstance(a, Mapping) else {"type": a} for a in analyses],
        seed=int(doc.get("seed", 0)),
        threads=int(doc.get("threads", 1)),
        out_dir=base_dir / doc.get("out_dir", "."),
        family=_inline_or_file(base_dir, doc, "family"),
        profile=_inline_or_file(base_dir, doc, "profile"),
        profiles=_inline_or_file(base_dir, doc, "profiles"),
        tolerances=dict(doc.get("tolerances") or {}),
        base_dir=base_dir,
    )
    for entry in scenario.analyses:
        kind = entry.get("type")
        if kind not in ANALYSES:
            raise ScenarioError(f"Unknown analysis '{kind}'. Known analyses: {list(ANALYSES)}.")
        needed = REQUIRED_INPUTS.get(kind, ())
        available = {
            "family": scenario.family is not None,
            "profile": scenario.profile is not None,
            "profiles": scenario.profiles is not None,
        }
        if needed and not any(available.get(key) or key in entry for key in needed):
            raise ScenarioError(f"Analysis '{kind}' needs one of {list(needed)}.")
        for key in ("data", "times", "returns", "moments"):
            if isinstance(entry.get(key), str):
                if not scenario.resolve(entry[key]).is_file():
                    raise ScenarioError(f"Analysis '{kind}' references a missing file: {entry[key]}")
    logger.info(f"Loaded scenario {path} with {len(scenario.analyses)} analyses")
    return scenario


def _numbers(scenario: Scenario, value: Any) -> np.ndarray:
    if isinstance(value, str):
        return read_column(scenario.resolve(value))
    return np.asarray(value, dtype=float)


def run_analysis(scenario: Scenario, entry: Mapping[str, Any], config: Mapping[str, Any]) -> AnalysisResult:
    """Executes one scenario entry."""
    kind = entry["type"]
    mc = {**config["montecarlo"], **scenario.tolerances}
    deltas = entry.get("deltas")
    profile_deltas = sorted(set(DEFAULT_PROFILE_DELTAS) | set(float(d) for d in deltas or []))
    cap = config["oracle"]["support_cap"]

    if kind == "bounds":
        source = entry.get("profile") or scenario.profile or entry.get("family") or scenario.family
        return bounds_analysis(load_profile(source, profile_deltas, cap), bool(entry.get("all", False)), deltas)
    if kind == "regimes":
        svg = entry.get("svg")
        grid = {**config["regimes"], **{k: v for k, v in entry.items() if k in DEFAULT_CONFIG["regimes"]}}
        return regimes_analysis(grid, scenario.out_dir / svg if svg else None)
    if kind == "verify":
        spec = load_spec(entry.get("family") or scenario.family, cap)
        return verify_analysis(
            spec, entry.get("theorem", TheoremId.LINFTY.value), int(entry.get("samples", mc["n_samples"])),
            float(entry.get("confidence", mc["confidence"])), scenario.seed, entry.get("delta"),
            scenario.threads, int(mc["chunk_size"]), bool(entry.get("estimate_v", False)),
        )
    if kind == "cumulant-check":
        family = entry.get("family")
        return cumulant_check_analysis(
            int(entry.get("count", 200)), int(entry.get("rmax", 6)), scenario.seed,
            None if family is None else load_spec(family, cap).to_family(cap),
            int(entry.get("max_vertices", 8)), scenario.threads, config["oracle"],
        )
    if kind == "feller-check":
        source = entry.get("law") or entry.get("family") or scenario.family
        if isinstance(source, str) and scenario.resolve(source).is_file():
            source = scenario.resolve(source)
        quadrature = {**config["quadrature"], **scenario.tolerances}
        return feller_check_analysis(load_law(source, cap), entry.get("T", [1, 2, 5, 10]), quadrature)
    if kind == "ustat":
        return ustat_analysis(
            entry["kernel"], _numbers(scenario, entry["data"]), int(entry.get("m", 0)), entry.get("delta"),
            entry.get("variant", "moments"), entry.get("var_U"), entry.get("var_V"), entry.get("A"),
            entry.get("L"), entry.get("K"), int(config["ustat"]["enumeration_cap"]),
        )
    if kind == "volatility":
        moments = entry.get("moments")
        return volatility_analysis(
            _numbers(scenario, entry["times"]), _numbers(scenario, entry["returns"]), entry.get("delta"),
            entry.get("K"), int(entry.get("m", 0)), bool(entry.get("unbiased", False)),
            None if moments is None else _numbers(scenario, moments),
        )
    if kind == "clt":
        profiles = profile_sequence(entry.get("profiles") or scenario.profiles, profile_deltas)
        threshold = float(entry.get("threshold", config["trend"]["slope_threshold"]))
        return clt_analysis(profiles, entry.get("delta"), threshold)
    if kind == "rate-scan":
        return rate_scan_analysis(
            int(entry.get("block_size", 1)), parse_law(entry.get("law", "rademacher")),
            [int(s) for s in entry["sizes"]], int(entry.get("samples", mc["n_samples"])), scenario.seed,
            float(entry.get("confidence", mc["confidence"])), scenario.threads,
        )
    return constants_analysis()


def run_scenario(scenario: Scenario, config: Optional[Mapping[str, Any]] = None, fmt: str = "csv") -> int:
    """
    Runs every analysis of a scenario and writes its artifacts.

    Returns:
        int: 0 if every analysis passed, 2 if some certification failed.

    Raises:
        BerryEsseenError: On invalid inputs or inapplicable analyses.
    """
    config = config or DEFAULT_CONFIG
    failed = []
    for entry in scenario.analyses:
        logger.info(f"Running analysis '{entry['type']}'")
        try:
            result = run_analysis(scenario, entry, config)
        except KeyError as e:
            raise ScenarioError(f"Analysis '{entry['type']}' is missing the field {e}.") from e
        except BerryEsseenError:
            logger.error(f"Analysis '{entry['type']}' failed")
            raise
        path = scenario.output_path(entry)
        result.write(path, "json" if path.suffix.lower() == ".json" else fmt)
        if not result.passed:
            failed.append(entry["type"])
    if failed:
        logger.warning(f"Failed checks: {failed}")
        return EXIT_VERIFICATION_FAILED
    return EXIT_OK
