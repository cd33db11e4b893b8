import math

import numpy as np
import pytest

from heatvalve.generators.default_factory import DefaultGeneratorFactory
from heatvalve.generators.full_secular_generator import FullSecularGenerator
from heatvalve.generators.liouvillian import BathTerms, psa_filter
from heatvalve.generators.pairs import relaxation_time, unified_cluster
from heatvalve.generators.unified_generator import UnifiedGenerator
from heatvalve.models.method import (
    FullSecularMethod,
    GeneratorMethod,
    PartialSecularMethod,
    RedfieldMethod,
    UnifiedMethod,
)
from heatvalve.models.sweep import SweepConfig
from heatvalve.sweep.flux_point import prepare_flux_point


@pytest.fixture
def left_terms(published_config: SweepConfig) -> BathTerms:
    """Bohr terms and response of the hot bath at the published parameters, φ = 0."""
    _, bath_terms = prepare_flux_point(published_config, 0.0)
    return bath_terms[0]


def select(item: BathTerms, method: GeneratorMethod):
    return psa_filter(item.terms, method, item.response, item.bath.alpha)


def test_factory_dispatch():
    factory = DefaultGeneratorFactory()
    assert isinstance(factory.create_generator(FullSecularMethod()), FullSecularGenerator)
    assert isinstance(factory.create_generator(UnifiedMethod()), UnifiedGenerator)
    with pytest.raises(Exception):
        factory.create_generator(GeneratorMethod())


def test_secular_limits(left_terms: BathTerms):
    redfield = select(left_terms, RedfieldMethod())
    full = select(left_terms, FullSecularMethod())
    n = len(left_terms.terms)

    assert redfield.size == n * n
    assert full.size == n
    assert select(left_terms, PartialSecularMethod(c_psa=1e15)).pairs == redfield.pairs
    assert select(left_terms, PartialSecularMethod(c_psa=1e-15)).pairs == full.pairs


def test_published_cutoff_lies_strictly_between_limits(left_terms: BathTerms):
    redfield = select(left_terms, RedfieldMethod())
    full = select(left_terms, FullSecularMethod())
    psa = select(left_terms, PartialSecularMethod(c_psa=100.0))

    assert full.issubset(psa) and psa.issubset(redfield)
    assert full.pairs < psa.pairs < redfield.pairs


def test_pair_sets_nest_monotonically(left_terms: BathTerms):
    sets = [select(left_terms, PartialSecularMethod(c_psa=c)) for c in (1.0, 30.0, 300.0)]
    assert sets[0].issubset(sets[1]) and sets[1].issubset(sets[2])


@pytest.mark.parametrize(
    "method", [RedfieldMethod(), PartialSecularMethod(), FullSecularMethod(), UnifiedMethod()]
)
def test_pair_sets_are_symmetric(left_terms: BathTerms, method: GeneratorMethod):
    pairs = select(left_terms, method).pairs
    assert all((b, a) in pairs for a, b in pairs)


def test_relaxation_time(left_terms: BathTerms):
    tau_R = relaxation_time(left_terms.bath.alpha, left_terms.response)
    assert tau_R == pytest.approx(1.0 / (0.04**2 * left_terms.response.max_abs_Gamma()))
    assert relaxation_time(0.0, left_terms.response) == math.inf


def test_unified_cluster_limits():
    omegas = [-1.0, -0.5, 0.0, 0.5, 1.0]
    assert len(unified_cluster(omegas, 0.1)) == 5
    assert len(unified_cluster(omegas, 10.0)) == 1
    merged = unified_cluster([1.0, 1.0 + 1e-12, 2.0], 1e-9)
    assert [c.members for c in merged] == [(0, 1), (2,)]
    assert merged[0].representative == pytest.approx(1.0)


def test_unified_cluster_representative_is_mean():
    clusters = unified_cluster([0.9, 1.0, 1.1, 3.0], 0.2)
    assert clusters[0].representative == pytest.approx(1.0)
    assert clusters[1].representative == 3.0


def test_unified_cluster_needs_sorted_input():
    with pytest.raises(ValueError):
        unified_cluster([1.0, 0.0], 0.1)


def test_unified_selection_uses_clusters(left_terms: BathTerms):
    pair_set = select(left_terms, UnifiedMethod(delta_cluster=0.05))
    assert pair_set.clusters is not None
    omegas, ops, mask = pair_set.jump_operators(left_terms.terms)
    assert len(omegas) == len(pair_set.clusters) < len(left_terms.terms)
    np.testing.assert_array_equal(mask, np.eye(len(omegas), dtype=bool))
    np.testing.assert_allclose(ops.sum(axis=0), sum(t.op for t in left_terms.terms), atol=1e-14)
