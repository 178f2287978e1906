"""Experiment sweeps producing :class:`ExperimentReport` rows."""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

from .bench import (
    BridgeInstance, gen_bridge, gen_bridge_absentminded, gen_voting, initial_state,
    m0, m1, m2, m3, phi1, phi2, win_formula,
)
from .errors import BudgetExceeded
from .exact import ExactEvaluator, verdict
from .fixpoint import Evaluator
from .logic import Formula, Strategic, parse, tr1, tr2, tr3
from .report import ExperimentReport, Row

VOTING_FORMULAS = {"phi1": phi1, "phi2": phi2}


@dataclass(frozen=True)
class Job:
    family: str
    instance: str
    seed: int
    params: tuple
    exact: bool = False
    compare_tr2: bool = False


def _build(job: Job):
    if job.family == "voting":
        k, name = job.params
        return gen_voting(k), initial_state(k), VOTING_FORMULAS[name]()
    n, k = job.params
    gen = gen_bridge if job.family == "bridge" else gen_bridge_absentminded
    return gen(BridgeInstance(n, k, job.seed)), 0, win_formula()


def run_job(job: Job) -> Row:
    t0 = time.perf_counter()
    model, state, formula = _build(job)
    gen_time = time.perf_counter() - t0
    v = verdict(model, state, formula)
    row = Row(
        family=job.family, instance=job.instance, seed=job.seed, states=model.n,
        lower=v.lower, lower_iter=v.lower_iterations, upper=v.upper,
        upper_iter=v.upper_iterations, gen_time=gen_time,
        lower_time=v.timings["lower"], upper_time=v.timings["upper"],
    )
    if job.exact:
        t0 = time.perf_counter()
        try:
            row.exact = state_in(model, state, ExactEvaluator(model).eval(formula))
        except BudgetExceeded:
            row.exact = None
        row.exact_time = time.perf_counter() - t0
    if job.compare_tr2 and isinstance(formula, Strategic) and formula.temporal == "F":
        t0 = time.perf_counter()
        lower2 = Evaluator(model).eval(tr2(formula.coalition, formula.goal))
        row.tr2 = state_in(model, state, lower2)
        row.tr2_time = time.perf_counter() - t0
    return row


def state_in(model, state, states) -> bool:
    q = model.state_id(state) if isinstance(state, str) else state
    return q in states


def run_jobs(jobs: Sequence[Job], workers: int = 1,
             progress: Optional[Callable[[Row], None]] = None) -> ExperimentReport:
    """Run every job; rows keep the job order whatever the completion order."""
    report = ExperimentReport()
    if workers <= 1:
        for job in jobs:
            row = run_job(job)
            if progress:
                progress(row)
            report.add(row)
        return report
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for row in pool.map(run_job, jobs):
            if progress:
                progress(row)
            report.add(row)
    return report


def voting_jobs(ks: Sequence[int], formulas: Sequence[str] = ("phi1", "phi2")) -> list[Job]:
    return [Job("voting", f"k={k}/{name}", 0, (k, name)) for k in ks for name in formulas]


def bridge_jobs(sizes: Sequence[tuple[int, int]], seeds: int, absentminded: bool = False,
                exact: bool = False, compare_tr2: bool = False) -> list[Job]:
    family = "bridge-am" if absentminded else "bridge"
    return [
        Job(family, f"({n},{k})", seed, (n, k), exact, compare_tr2)
        for n, k in sizes for seed in range(seeds)
    ]


# ------------------------------------------------------------ counterexamples


@dataclass
class CounterexampleRow:
    model: str
    formula: str
    states: int
    tr1: bool
    tr2: bool
    tr3: bool
    exact: bool
    lower: bool
    upper: bool

    @property
    def verdict(self) -> str:
        return "True" if self.lower else ("False" if not self.upper else "Unknown")


COUNTEREXAMPLES = (
    ("m0", m0, "<<1>> F p"),
    ("m1", m1, "<<1,2>> F p"),
    ("m2", m2, "<<1>> F p"),
    ("m3", m3, "<<1>> F p"),
)


def counterexample_rows() -> list[CounterexampleRow]:
    rows = []
    for name, make, text in COUNTEREXAMPLES:
        model = make()
        f: Formula = parse(text)
        q0 = model.state_id("q0")
        ev = ExactEvaluator(model)
        goal = f.goal
        v = verdict(model, q0, f)
        rows.append(CounterexampleRow(
            model=name, formula=text, states=model.n,
            tr1=q0 in ev.eval(tr1(f.coalition, goal)),
            tr2=q0 in ev.eval(tr2(f.coalition, goal)),
            tr3=q0 in ev.eval(tr3(f.coalition, goal)),
            exact=q0 in ev.eval(f),
            lower=v.lower,
            upper=v.upper,
        ))
    return rows


def counterexample_report(rows: Sequence[CounterexampleRow]) -> ExperimentReport:
    report = ExperimentReport()
    for r in rows:
        report.add(Row("counterexamples", r.model, 0, r.states, r.lower, 0, r.upper,
                       exact=r.exact, tr2=r.tr2))
    return report


def counterexample_table(rows: Sequence[CounterexampleRow]) -> str:
    head = f"{'model':<7}{'formula':<14}{'tr1':>7}{'tr2':>7}{'tr3':>7}{'exact':>7}{'tr':>7}{'TR':>7}  verdict"
    lines = [head, "-" * len(head)]
    for r in rows:
        lines.append(f"{r.model:<7}{r.formula:<14}{r.tr1!s:>7}{r.tr2!s:>7}{r.tr3!s:>7}"
                     f"{r.exact!s:>7}{r.lower!s:>7}{r.upper!s:>7}  {r.verdict}")
    return "\n".join(lines)
