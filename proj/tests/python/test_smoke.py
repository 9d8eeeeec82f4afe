import math
import pathlib

import pytest

import swstat

FIXTURES = pathlib.Path(__file__).resolve().parent.parent / "fixtures"


def test_inequality_indices():
    x = [1, 2, 3, 4]
    assert swstat.gini(x) == pytest.approx(0.25)
    assert swstat.pietra(x) == pytest.approx(0.2)
    assert swstat.theil([0, 0, 0, 1]) == pytest.approx(math.log(4))
    assert swstat.atkinson(x) == swstat.atkinson(x, epsilon=0.5)
    report = swstat.inequality_report(x, 0.5)
    assert report.n == 4 and report.gini == swstat.gini(x)
    assert swstat.lorenz_points([1, 3]) == [(0, 0), (0.5, 0.25), (1, 1)]


def test_errors_are_value_errors():
    with pytest.raises(swstat.AnalysisError, match="negative value"):
        swstat.gini([1, -2])
    with pytest.raises(ValueError):
        swstat.load_manifest('{"versions": []}')
    with pytest.raises(swstat.InputError):
        swstat.load_manifest('{"versions": ["a", "a"]}')


def test_mann_kendall():
    r = swstat.mk_test([1, 3, 2, 4], alpha=0.05)
    assert r.s == 4
    assert r.method == "exact"
    assert r.p_two_sided == pytest.approx(1 / 3)
    assert swstat.mk_test(list(range(12)), 0.01).decision == "upward"
    assert swstat.mk_test([2.0] * 6).decision == "no_trend_not_rejected"
    assert swstat.mk_variance([1, 1, 2, 3]) == pytest.approx(23 / 3)
    assert swstat.kendall_tau_b([4, 3, 2, 1]) == -1
    assert swstat.sen_slope([1, 3, 2, 4]) == 0.75


def test_diversity_accepts_lists_and_dicts():
    assert swstat.simpson([2, 1, 1]) == 0.375
    assert swstat.gini_simpson({"abstract": 2, "leaf": 1, "util": 1}) == 0.625
    assert swstat.evenness([9]) == 1.0
    assert swstat.shannon([1, 1, 1, 1]) == pytest.approx(math.log(4))


def test_halstead():
    tokens = swstat.tokenize("a = b + c;")
    assert [t[0] for t in tokens] == ["a", "=", "b", "+", "c", ";"]
    assert tokens[0][1] == "operand" and tokens[1][1] == "operator"
    counts = swstat.halstead_counts("a = b + c;")
    assert counts == swstat.TokenCounts(3, 3, 3, 3)
    assert swstat.halstead_measures(counts).effort == pytest.approx(23.26466, abs=1e-4)
    records = swstat.extract_file("a = b + c;", "v1", "pkg", "f.cc")
    assert [r.metric for r in records][-1] == "halstead_effort"


def test_pipeline_on_synthetic_fixture():
    versions = swstat.load_manifest((FIXTURES / "synthetic/manifest.json").read_text())
    ds = swstat.load_csv((FIXTURES / "synthetic/metrics.csv").read_text(), versions)
    assert ds.packages("halstead_effort") == ["geometry", "solids"]
    result = swstat.run_pipeline(ds, "solids", "halstead_effort", "gini", 0.5, 0.01)
    assert len(result.series.points) == 17
    assert result.trend.decision == "downward"
    assert len(result.inequality) == 17
    geometry = swstat.build_series(ds, "geometry", "halstead_effort", "gini")
    assert geometry.series.gaps == ["9.3"]
    dist = swstat.slice_distribution(ds, "8.0", "solids", "halstead_effort")
    assert swstat.gini(dist) == result.series.points[0][1]
