"""Replicated runs over several graph sizes (assortativity and runtime)."""

from __future__ import annotations

import csv
import time
from dataclasses import astuple, dataclass

import numpy as np

from .distributions import EdgeTypeDistribution, NodeTypeDistribution
from .erasure import erase
from .generator import DEFAULT_DELTA, generate
from .metrics import empirical_summary

COLUMNS = ("n", "rep", "seed", "rho_hat", "deviation", "accepted", "runtime_seconds")


@dataclass
class SweepRow:
    n: int
    rep: int
    seed: int
    rho_hat: float | None
    deviation: float
    accepted: bool
    runtime_seconds: float


def replicate_seed(base_seed: int, n: int, rep: int) -> int:
    """Seed for replicate ``rep`` at size ``n``; independent of run order."""
    return int(np.random.SeedSequence([base_seed, n, rep]).generate_state(1, np.uint64)[0])


def run_replicate(P, Q, n, rep, base_seed, delta, max_attempts, do_erase) -> SweepRow:
    seed = replicate_seed(base_seed, n, rep)
    start = time.perf_counter()
    g = generate(P, Q, n, delta, seed=seed, max_attempts=max_attempts)
    if do_erase:
        g, _ = erase(g)
    runtime = time.perf_counter() - start
    summary = empirical_summary(g, P, Q)
    return SweepRow(
        n=n,
        rep=rep,
        seed=seed,
        rho_hat=summary.rho_hat,
        deviation=summary.deviation,
        accepted=g.report.accepted if g.report else True,
        runtime_seconds=runtime,
    )


def sweep(
    P: NodeTypeDistribution,
    Q: EdgeTypeDistribution,
    sizes,
    reps: int,
    base_seed: int = 0,
    delta: float = DEFAULT_DELTA,
    max_attempts: int = 1,
    do_erase: bool = True,
    workers: int = 1,
) -> list[SweepRow]:
    """Generate ``reps`` graphs per size; rows ordered by ``(n, rep)``.

    With ``workers > 1`` replicates run in a process pool.  Results do not
    depend on the number of workers, apart from the runtime column.
    """
    if reps < 1:
        raise ValueError("reps must be at least 1")
    jobs = [(P, Q, int(n), rep, base_seed, delta, max_attempts, do_erase)
            for n in sizes for rep in range(reps)]
    if workers > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(run_replicate, *zip(*jobs)))
    return [run_replicate(*job) for job in jobs]


def write_sweep_csv(rows, fh) -> None:
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(COLUMNS)
    for row in rows:
        n, rep, seed, rho, dev, acc, rt = astuple(row)
        writer.writerow(
            [n, rep, seed, "" if rho is None else repr(rho), repr(dev), str(acc).lower(), f"{rt:.6f}"]
        )
