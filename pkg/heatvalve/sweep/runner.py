import asyncio
import uuid
from typing import Callable, Generic, List, Optional, Tuple, TypeVar

from loguru import logger

from heatvalve import flux_index, sweep_id
from heatvalve.constants import SWEEP_FAILURE_FRACTION
from heatvalve.exceptions import SweepFailureError
from heatvalve.models.records import HeatFlowRecord
from heatvalve.models.sweep import SweepConfig
from heatvalve.sweep.flux_point import evaluate_record
from heatvalve.utils.worker import AsyncQueueWorker

ResultType = TypeVar("ResultType")
FluxTask = Tuple[int, float]


class FluxPointWorker(AsyncQueueWorker[FluxTask], Generic[ResultType]):
    """Evaluates queued flux points on worker threads, filing each result under its grid index."""

    def __init__(
        self,
        input_queue: "asyncio.Queue[FluxTask]",
        evaluate: Callable[[float], ResultType],
        results: List[Optional[ResultType]],
    ) -> None:
        super().__init__(input_queue)
        self.evaluate = evaluate
        self.results = results

    def _evaluate_indexed(self, index: int, phi: float) -> ResultType:
        flux_index.set(index)
        return self.evaluate(phi)

    async def process(self, item: FluxTask):
        index, phi = item
        self.results[index] = await asyncio.to_thread(self._evaluate_indexed, index, phi)


async def evaluate_grid(
    phis: List[float],
    evaluate: Callable[[float], ResultType],
    parallelism: int = 1,
) -> List[ResultType]:
    queue: asyncio.Queue[FluxTask] = asyncio.Queue()
    results: List[Optional[ResultType]] = [None] * len(phis)
    for item in enumerate(phis):
        queue.put_nowait(item)

    pool_size = max(1, min(parallelism, len(phis)))
    workers = [FluxPointWorker(queue, evaluate, results) for _ in range(pool_size)]
    for worker in workers:
        worker.start()
    try:
        await queue.join()
    finally:
        for worker in workers:
            await worker.terminate()

    missing = [i for i, result in enumerate(results) if result is None]
    if missing:
        raise RuntimeError(f"flux points {missing} produced no result")
    return results  # type: ignore


def check_failures(records: List[HeatFlowRecord]) -> None:
    failed = sum(record.failed for record in records)
    if failed:
        logger.warning(f"{failed} of {len(records)} flux points failed")
    if failed > SWEEP_FAILURE_FRACTION * len(records):
        logger.error(f"sweep aborted: {failed} of {len(records)} flux points failed")
        raise SweepFailureError(failed, len(records), records)


async def run_sweep_async(config: SweepConfig) -> List[HeatFlowRecord]:
    token = sweep_id.set(uuid.uuid4().hex[:8])
    try:
        phis = [float(phi) for phi in config.flux_grid.values()]
        logger.info(
            f"Sweeping {len(phis)} flux points with {config.method.label()} "
            f"on {config.parallelism} worker(s)"
        )
        records = await evaluate_grid(
            phis, lambda phi: evaluate_record(config, phi), config.parallelism
        )
        check_failures(records)
        logger.info("Sweep finished")
        return records
    finally:
        sweep_id.reset(token)


def run_sweep(config: SweepConfig) -> List[HeatFlowRecord]:
    return asyncio.run(run_sweep_async(config))
