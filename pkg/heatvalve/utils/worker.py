from __future__ import annotations

import asyncio
from typing import Generic, Optional, TypeVar

from loguru import logger

from heatvalve.utils.create_task import asyncio_create_task

WorkerInputType = TypeVar("WorkerInputType")


class AsyncQueueWorker(Generic[WorkerInputType]):
    """
    Drains an asyncio queue on its own task, handing each item to `process`.

    Several workers may share one `input_queue` to form a pool; `queue.join()` returns once
    every item has been handled, whether `process` succeeded or raised.
    """

    def __init__(self, input_queue: Optional[asyncio.Queue[WorkerInputType]] = None) -> None:
        self.input_queue: asyncio.Queue[WorkerInputType] = input_queue or asyncio.Queue()
        self.worker_task: Optional[asyncio.Task] = None
        self.processed = 0
        self.failures = 0

    def start(self) -> asyncio.Task:
        if self.worker_task is not None and not self.worker_task.done():
            raise RuntimeError(f"{type(self).__name__} is already running")
        self.worker_task = asyncio_create_task(self._drain(), name=type(self).__name__)
        return self.worker_task

    def consume_nonblocking(self, item: WorkerInputType) -> None:
        self.input_queue.put_nowait(item)

    async def _drain(self) -> None:
        while True:
            item = await self.input_queue.get()
            try:
                await self.process(item)
                self.processed += 1
            except asyncio.CancelledError:
                raise
            except Exception:
                self.failures += 1
                logger.exception(f"{type(self).__name__} failed on {item!r}")
            finally:
                self.input_queue.task_done()

    async def process(self, item: WorkerInputType) -> None:
        raise NotImplementedError

    async def terminate(self) -> None:
        """Cancels the drain task and waits for it to wind down."""
        if self.worker_task is None:
            return
        self.worker_task.cancel()
        try:
            await self.worker_task
        except asyncio.CancelledError:
            pass
        self.worker_task = None
