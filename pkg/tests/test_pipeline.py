"""
Unit tests for input resolution and scenario loading in the analysis pipeline.
"""

import pytest

from berry_esseen import pipeline
from berry_esseen.core.errors import ScenarioError
from berry_esseen.core.model import MomentProfile
from berry_esseen.generators import CliqueBlocks, CustomSpec


@pytest.fixture
def scenario_dir(tmp_path):
    """
    Directory with a family file and a data column next to the scenario.
    """
    (tmp_path / "family.yaml").write_text(
        "kind: clique_blocks\nn_blocks: 10\nblock_size: 2\nlaw: rademacher\n", encoding="utf-8"
    )
    (tmp_path / "data.csv").write_text("x\n1\n2\n3\n", encoding="utf-8")
    return tmp_path


def test_load_spec_kinds():
    """Test that documents with a kind become generator specs and others custom families."""
    assert isinstance(pipeline.load_spec({"kind": "clique_blocks", "n_blocks": 2, "block_size": 2,
                                          "law": "rademacher"}), CliqueBlocks)
    rademacher = [{"x": -1, "p": 0.5}, {"x": 1, "p": 0.5}]
    custom = pipeline.load_spec({"laws": [rademacher, rademacher], "blocks": [[0, 1]]})
    assert isinstance(custom, CustomSpec)
    assert custom.N == 2


def test_load_spec_rejects_lists():
    """Test that a family must be an object."""
    with pytest.raises(ScenarioError, match="must be a JSON object"):
        pipeline.load_spec([1, 2])


def test_load_profile_forms():
    """Test profile documents and generator specs."""
    direct = pipeline.load_profile({"N": 4, "D": 1, "v": 2.0, "A": {"3": 4.0}})
    assert isinstance(direct, MomentProfile)
    assert direct.A == {3.0: 4.0}
    derived = pipeline.load_profile({"kind": "clique_blocks", "n_blocks": 4, "block_size": 2, "law": "rademacher"})
    assert (derived.N, derived.D) == (8, 1)
    assert derived.v == pytest.approx(4.0)
    assert set(pipeline.DEFAULT_PROFILE_DELTAS) <= set(derived.A)


def test_load_law_forms():
    """Test law names, atom lists and value/probability mappings."""
    named = pipeline.load_law("rademacher")
    pairs = pipeline.load_law([{"x": -1, "p": 0.5}, {"x": 1, "p": 0.5}])
    mapping = pipeline.load_law({"values": [0, 2], "probs": [0.5, 0.5]})
    for law in (named, pairs, mapping):
        assert sorted(law.values) == pytest.approx([-1.0, 1.0])


def test_profile_sequence_from_spec():
    """Test a generated sequence that varies one parameter."""
    profiles = pipeline.profile_sequence(
        {"spec": {"kind": "clique_blocks", "block_size": 2, "law": "rademacher"},
         "vary": "n_blocks", "values": [10, 100]}
    )
    assert [p.N for p in profiles] == [20, 200]


def test_profile_sequence_needs_fields():
    """Test that a generated sequence names its varied parameter."""
    with pytest.raises(ScenarioError, match="needs 'spec', 'vary' and 'values'"):
        pipeline.profile_sequence({"spec": {"kind": "clique_blocks"}, "values": [1]})


def test_profile_sequence_unrecognized():
    """Test that other shapes are refused."""
    with pytest.raises(ScenarioError, match="Unrecognized profile sequence"):
        pipeline.profile_sequence({"sizes": [1, 2]})


def test_load_scenario_resolves_files(scenario_dir):
    """Test file references relative to the scenario."""
    path = scenario_dir / "scenario.yaml"
    path.write_text(
        "seed: 11\nfamily_file: family.yaml\nanalyses:\n  - type: verify\n    out: v.json\n"
        "  - type: ustat\n    kernel: mean\n    data: data.csv\n",
        encoding="utf-8",
    )
    scenario = pipeline.load_scenario(path)
    assert scenario.seed == 11
    assert scenario.family["n_blocks"] == 10
    assert scenario.output_path(scenario.analyses[0]) == scenario_dir / "v.json"
    assert scenario.output_path(scenario.analyses[1]) == scenario_dir / "ustat.json"


@pytest.mark.parametrize(
    "text, message",
    [
        ("- bounds\n", "must hold a mapping"),
        ("analyses: []\n", "non-empty 'analyses' list"),
        ("analyses: [spiral]\n", "Unknown analysis 'spiral'"),
        ("analyses: [bounds]\n", "needs one of \\['family', 'profile'\\]"),
        ("analyses:\n  - type: ustat\n    kernel: mean\n    data: absent.csv\n", "missing file: absent.csv"),
        ("family_file: absent.yaml\nanalyses: [verify]\n", "Input file not found"),
    ],
)
def test_load_scenario_errors(scenario_dir, text, message):
    """Test that invalid scenarios are rejected before anything runs."""
    path = scenario_dir / "scenario.yaml"
    path.write_text(text, encoding="utf-8")
    with pytest.raises(ScenarioError, match=message):
        pipeline.load_scenario(path)


def test_run_scenario_missing_field(scenario_dir):
    """Test that a missing analysis field is reported as a scenario error."""
    path = scenario_dir / "scenario.yaml"
    path.write_text("analyses:\n  - type: rate-scan\n", encoding="utf-8")
    scenario = pipeline.load_scenario(path)
    with pytest.raises(ScenarioError, match="missing the field 'sizes'"):
        pipeline.run_scenario(scenario)


def test_run_scenario_reports_failures(scenario_dir, mocker):
    """Test that a failed certification yields the failure status."""
    path = scenario_dir / "scenario.yaml"
    path.write_text("analyses: [constants]\n", encoding="utf-8")
    scenario = pipeline.load_scenario(path)
    mocker.patch(
        "berry_esseen.pipeline.constants_analysis",
        return_value=pipeline.AnalysisResult("constants", document={}, passed=False),
    )
    assert pipeline.run_scenario(scenario) == pipeline.EXIT_VERIFICATION_FAILED
    assert (scenario_dir / "constants.json").is_file()


def test_bounds_analysis_logs_best(caplog):
    """Test that the smallest valid bound is logged."""
    profile = MomentProfile(N=10 ** 6, D=3, v=2000.0, A={3.0: 1e6}, L=1.0)
    with caplog.at_level("INFO", logger="berry_esseen"):
        result = pipeline.bounds_analysis(profile)
    assert result.name == "bounds"
    assert list(result.table.columns) == pipeline.BOUNDS_COLUMNS
    assert "Smallest valid bound" in caplog.text
