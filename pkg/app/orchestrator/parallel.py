"""
Fan independent computations out over worker processes.
"""
import asyncio
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from datetime import datetime
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from app.settings import settings
from app.utils.logging_config import setup_logging

logger = setup_logging(__name__)


@dataclass
class WorkItem:
    """One pure computation; func must be importable at module level."""

    id: str
    func: Callable[..., Any]
    args: Tuple[Any, ...] = ()
    kwargs: Dict[str, Any] = field(default_factory=dict)
    result: Optional[Any] = None
    error: Optional[str] = None
    start_time: Optional[datetime] = None
    end_time: Optional[datetime] = None

    @property
    def ok(self) -> bool:
        return self.error is None

    @property
    def elapsed(self) -> float:
        if self.start_time is None or self.end_time is None:
            return 0.0
        return (self.end_time - self.start_time).total_seconds()


class ParallelExecutor:
    """Runs work items with at most `max_concurrent` in flight."""

    def __init__(self, max_concurrent: Optional[int] = None):
        self.max_concurrent = max(1, settings.JOBS if max_concurrent is None else max_concurrent)

    def run(self, items: Sequence[WorkItem]) -> List[WorkItem]:
        if self.max_concurrent == 1:
            return [self._run_inline(item) for item in items]
        return asyncio.run(self.execute(items))

    def _run_inline(self, item: WorkItem) -> WorkItem:
        item.start_time = datetime.now()
        try:
            item.result = item.func(*item.args, **item.kwargs)
        except Exception as e:
            logger.error(f"Work item {item.id} failed: {e}")
            item.error = f"{type(e).__name__}: {e}"
        item.end_time = datetime.now()
        return item

    async def execute(self, items: Sequence[WorkItem]) -> List[WorkItem]:
        semaphore = asyncio.Semaphore(self.max_concurrent)
        loop = asyncio.get_running_loop()
        logger.info(f"Executing {len(items)} work items on {self.max_concurrent} workers")

        with ProcessPoolExecutor(max_workers=self.max_concurrent) as pool:

            async def run_one(item: WorkItem) -> Any:
                async with semaphore:
                    item.start_time = datetime.now()
                    try:
                        return await loop.run_in_executor(pool, _call, item.func, item.args, item.kwargs)
                    finally:
                        item.end_time = datetime.now()

            results = await asyncio.gather(*(run_one(item) for item in items), return_exceptions=True)

        for item, result in zip(items, results):
            if isinstance(result, Exception):
                logger.error(f"Work item {item.id} failed: {result}")
                item.error = f"{type(result).__name__}: {result}"
            else:
                item.result = result
        return list(items)


def _call(func: Callable[..., Any], args: Tuple[Any, ...], kwargs: Dict[str, Any]) -> Any:
    return func(*args, **kwargs)
