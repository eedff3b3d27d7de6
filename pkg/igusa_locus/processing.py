"""
Batch Tabulation Pipeline.

This module runs the per-discriminant analysis over a range of D, fanning out
over a process pool and merging the reports back in ascending D.
"""

import logging
from concurrent.futures import ProcessPoolExecutor, as_completed
from typing import Callable, List, Optional

from .config import PARALLEL_WORKERS
from .errors import DomainError
from .locus import LocusReport, admissible_discriminants, analyze

logger = logging.getLogger(__name__)


def _analyze_single(D: int) -> LocusReport:
    """Analyze one discriminant - designed to run in a worker process."""
    return analyze(D)


def tabulate(d_min: int, d_max: int, jobs: Optional[int] = None,
             progress: Optional[Callable[[int, int, int], None]] = None) -> List[LocusReport]:
    """Reports for every admissible D in [d_min, d_max], ascending.

    Args:
        d_min: Lower end of the range (>= 1)
        d_max: Upper end of the range (>= d_min)
        jobs: Worker processes; 1 runs in-process, None uses PARALLEL_WORKERS
        progress: Optional callback (completed, total, D)

    Returns:
        List of LocusReport sorted by D
    """
    if d_min < 1 or d_max < d_min:
        raise DomainError(f"Need 1 <= min <= max, got min={d_min}, max={d_max}")
    jobs = PARALLEL_WORKERS if jobs is None else jobs

    discriminants = admissible_discriminants(d_min, d_max)
    total = len(discriminants)
    if total == 0:
        logger.info("No admissible D in [%d, %d]", d_min, d_max)
        return []

    logger.info("Tabulating %d discriminants in [%d, %d] with %d worker(s)", total, d_min, d_max, jobs)
    reports = []
    completed_count = 0

    def _record(report: LocusReport):
        nonlocal completed_count
        completed_count += 1
        reports.append(report)
        logger.info("Completed %d of %d (D=%d)", completed_count, total, report.D)
        if progress is not None:
            progress(completed_count, total, report.D)

    if jobs <= 1 or total == 1:
        for D in discriminants:
            _record(_analyze_single(D))
    else:
        with ProcessPoolExecutor(max_workers=jobs) as executor:
            future_to_D = {executor.submit(_analyze_single, D): D for D in discriminants}
            for future in as_completed(future_to_D):
                _record(future.result())

    return sorted(reports, key=lambda report: report.D)
