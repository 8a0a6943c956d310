"""Chunked, thread-parallel evaluation of frequency scans."""

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Optional

import numpy as np

from ..core.config import settings

logger = logging.getLogger(__name__)


def parallel_scan(
    kernel: Callable[[np.ndarray], np.ndarray],
    points: np.ndarray,
    chunk: Optional[int] = None,
    threads: Optional[int] = None,
) -> np.ndarray:
    """
    Evaluate ``kernel`` on fixed-size chunks of ``points`` and concatenate in order.

    Chunk boundaries depend only on ``chunk`` so the result is the same for any
    thread count.

    Args:
        kernel: Vectorized function of a 1-D (or (k, 2)) array of points
        points: Points to evaluate
        chunk: Points per chunk (defaults to SCAN_CHUNK)
        threads: Worker threads (defaults to THREADS)

    Returns:
        Concatenated kernel output
    """
    points = np.asarray(points)
    chunk = max(1, chunk or settings.SCAN_CHUNK)
    threads = max(1, threads or settings.THREADS)
    pieces = [points[i : i + chunk] for i in range(0, points.shape[0], chunk)]
    if not pieces:
        return kernel(points)
    if threads == 1 or len(pieces) == 1:
        results = [kernel(piece) for piece in pieces]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(kernel, pieces))
    logger.debug(f"Scanned {points.shape[0]} points in {len(pieces)} chunks")
    return np.concatenate(results)
