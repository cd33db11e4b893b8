import asyncio
from typing import Coroutine, List, Optional

tasks_registry: List[asyncio.Task] = []


def asyncio_create_task(
    coro: Coroutine,
    name: Optional[str] = None,
) -> asyncio.Task:
    """Creates a task that stays referenced in `tasks_registry` until it finishes."""
    task = asyncio.create_task(coro, name=name)
    tasks_registry.append(task)
    task.add_done_callback(tasks_registry.remove)
    return task
