import asyncio
from collections import Counter
from typing import List, Sequence

from loguru import logger

from heatvalve.models.method import GeneratorMethod
from heatvalve.models.records import ComparisonTable, MethodComparison, MethodTiming
from heatvalve.models.sweep import SweepConfig
from heatvalve.sweep.flux_point import evaluate_flux_point
from heatvalve.sweep.runner import check_failures, evaluate_grid


def method_labels(methods: Sequence[GeneratorMethod]) -> List[str]:
    """Method labels, with repeats numbered so that every column of the table stays distinct."""
    seen: Counter = Counter()
    labels = []
    for method in methods:
        label = method.label()
        seen[label] += 1
        labels.append(label if seen[label] == 1 else f"{label}#{seen[label]}")
    return labels


def _compare_at(config: SweepConfig, methods: Sequence[GeneratorMethod], phi: float):
    labels = method_labels(methods)
    evaluation = evaluate_flux_point(config, phi, methods)
    return MethodComparison(
        phi=evaluation.phi,
        omega_q=evaluation.omega_q,
        records={label: e.record for label, e in zip(labels, evaluation.methods)},
        timings={
            label: e.timing or MethodTiming(assembly_seconds=0.0, solve_seconds=0.0)
            for label, e in zip(labels, evaluation.methods)
        },
    )


async def compare_methods_async(
    config: SweepConfig, methods: Sequence[GeneratorMethod]
) -> ComparisonTable:
    if len(methods) < 2:
        raise ValueError("comparing methods needs at least two of them")
    labels = method_labels(methods)
    phis = [float(phi) for phi in config.flux_grid.values()]
    logger.info(f"Comparing {', '.join(labels)} over {len(phis)} flux points")
    rows = await evaluate_grid(
        phis, lambda phi: _compare_at(config, methods, phi), config.parallelism
    )
    for label in labels:
        check_failures([row.records[label] for row in rows])
    table = ComparisonTable(methods=labels, rows=rows)
    for label in labels:
        logger.info(f"{label}: {table.total_seconds(label):.3f} s total")
    logger.info(f"max relative deviation of P_L: {table.max_relative_deviation('L'):.3e}")
    return table


def compare_methods(config: SweepConfig, methods: Sequence[GeneratorMethod]) -> ComparisonTable:
    return asyncio.run(compare_methods_async(config, methods))
