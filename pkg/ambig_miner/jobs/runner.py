"""
Sharded execution for the per-segment stages.

Segments are cut into fixed-size shards; with more than one job the shards are
mapped over a process pool a bounded window at a time and results come back
in input order, so output never depends on the job count.
"""

import multiprocessing
from itertools import islice
from typing import Callable, Iterable, Iterator, TypeVar

from tqdm import tqdm

from ambig_miner.core.config import settings
from ambig_miner.core.logger import setup_logging

T = TypeVar("T")
R = TypeVar("R")

# shards in flight per worker
WINDOW_PER_JOB = 4


def iter_shards(items: Iterable[T], size: int) -> Iterator[list[T]]:
    if size < 1:
        raise ValueError("shard size must be positive")
    it = iter(items)
    while shard := list(islice(it, size)):
        yield shard


def progress(items: Iterable[T], desc: str, unit: str = "shard") -> Iterable[T]:
    # tqdm disables itself off a TTY when `disable` is None
    return tqdm(items, desc=desc, unit=unit, disable=None if settings.PROGRESS else True)


def map_shards(
    func: Callable[[list[T]], R],
    items: Iterable[T],
    jobs: int,
    shard_size: int,
    desc: str,
) -> Iterator[R]:
    """Apply `func` to each shard of `items`, yielding results in shard order."""
    shards = progress(iter_shards(items, shard_size), desc)
    if jobs <= 1:
        for shard in shards:
            yield func(shard)
        return

    with multiprocessing.Pool(jobs, initializer=setup_logging) as pool:
        for window in iter_shards(shards, jobs * WINDOW_PER_JOB):
            yield from pool.imap(func, window)


def flatten(batches: Iterable[list[R]]) -> Iterator[R]:
    for batch in batches:
        yield from batch

