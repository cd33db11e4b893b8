import pytest

from heatvalve.models.method import (
    FullSecularMethod,
    PartialSecularMethod,
    RedfieldMethod,
    UnifiedMethod,
)
from heatvalve.models.sweep import SweepConfig
from heatvalve.sweep.compare import compare_methods, compare_methods_async, method_labels


def test_method_labels_number_repeats():
    methods = [FullSecularMethod(), PartialSecularMethod(), FullSecularMethod()]
    assert method_labels(methods) == ["full_secular", "psa:100", "full_secular#2"]


def test_identical_methods_agree(small_config: SweepConfig):
    table = compare_methods(small_config, [FullSecularMethod(), FullSecularMethod()])
    assert table.methods == ["full_secular", "full_secular#2"]
    assert len(table.rows) == 3
    assert table.max_relative_deviation("L") == 0.0
    assert table.total_seconds("full_secular") > 0


def test_huge_cutoff_reproduces_redfield(small_config: SweepConfig):
    table = compare_methods(small_config, [RedfieldMethod(), PartialSecularMethod(c_psa=1e15)])
    assert table.max_relative_deviation("L") <= 1e-9
    assert table.max_relative_deviation("R") <= 1e-9


def test_methods_are_compared_point_by_point(small_config: SweepConfig):
    methods = [RedfieldMethod(), FullSecularMethod(), UnifiedMethod()]
    table = compare_methods(small_config.with_updates(parallelism=2), methods)
    for row, phi in zip(table.rows, small_config.flux_grid.values()):
        assert row.phi == phi
        assert set(row.records) == {"redfield", "full_secular", "unified:auto"}
        assert all(not record.failed for record in row.records.values())


@pytest.mark.asyncio
async def test_comparison_needs_two_methods(small_config: SweepConfig):
    with pytest.raises(ValueError):
        await compare_methods_async(small_config, [RedfieldMethod()])


@pytest.mark.slow
def test_unified_tracks_partial_secular(published_config: SweepConfig):
    config = published_config.with_updates(flux_grid={"start": 0.0, "stop": 1.0, "points": 11})
    table = compare_methods(config, [PartialSecularMethod(c_psa=100.0), UnifiedMethod()])
    assert table.max_relative_deviation("L") <= 0.05


@pytest.mark.slow
def test_unified_is_faster_than_partial_secular(published_config: SweepConfig):
    config = published_config.with_updates(flux_grid={"start": 0.0, "stop": 1.0, "points": 3})
    table = compare_methods(config, [PartialSecularMethod(c_psa=100.0), UnifiedMethod()])
    assert table.total_seconds("unified:auto") <= 0.5 * table.total_seconds("psa:100")
