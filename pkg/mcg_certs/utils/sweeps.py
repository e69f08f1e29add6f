from concurrent.futures import ProcessPoolExecutor
from tqdm import tqdm
from typing import (
    Callable,
    List,
    Optional,
    Sequence,
    TypeVar,
)

import logging
import multiprocessing


logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


def resolve_workers(workers: Optional[int]) -> int:
    if workers is None or workers == 0:
        return max(1, multiprocessing.cpu_count() - 2)

    return max(1, workers)


def run_sweep(
    func: Callable[[T], R],
    items: Sequence[T],
    workers: Optional[int] = 1,
    desc: str = "Sweeping",
) -> List[R]:
    """Applies `func` to every item and returns results in input order.

    With more than one worker the items are spread over a process pool; `func`
    must then be a picklable module-level function.
    """
    num_workers = resolve_workers(workers)
    logger.debug(f"{desc}: {len(items)} items on {num_workers} worker(s)")

    if num_workers == 1 or len(items) < 2:
        return [func(item) for item in tqdm(items, desc=desc, unit="item", disable=None)]

    chunk_size = max(1, len(items) // (num_workers * 4))
    with ProcessPoolExecutor(max_workers=num_workers) as executor:
        results = executor.map(func, items, chunksize=chunk_size)
        return list(tqdm(results, total=len(items), desc=desc, unit="item", disable=None))
