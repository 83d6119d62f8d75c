"""Suite runner graph: split trials into batches, run them in parallel, combine."""

import asyncio
import json
import logging
import time
from collections import Counter
from pathlib import Path
from typing import Any, Dict, List, Optional

from langgraph.graph import END, START, StateGraph
from langgraph.types import Send

from gradia.config import settings
from gradia.harness.calculus import Calculus
from gradia.harness.schemas import BatchState, GenConfig, SuiteReport, SuiteState, TrialResult
from gradia.harness.suites import get_suite, run_trial
from gradia.utils.file_utils import write_file


# Node functions
async def prepare_batches(state: SuiteState) -> Dict[str, Any]:
    """Split the trial indices of the run into batches."""
    get_suite(state.suite)
    indices = list(range(state.config.trials))
    size = state.batch_size
    batches = [indices[i : i + size] for i in range(0, len(indices), size)]
    logging.debug(f"{state.suite}: {len(indices)} trials in {len(batches)} batches")
    return {"batches": batches}


def _run_batch_sync(batch: BatchState) -> List[TrialResult]:
    suite = get_suite(batch.suite)
    calc = Calculus(batch.config)
    return [run_trial(suite, calc, i) for i in batch.indices]


async def run_batch(state: BatchState) -> Dict[str, List[TrialResult]]:
    """Node running one batch of trials off the event loop."""
    results = await asyncio.to_thread(_run_batch_sync, state)
    return {"results": results}


async def combine_results(state: SuiteState) -> Dict[str, SuiteReport]:
    """Node folding every trial outcome into the suite report."""
    results = sorted(state.results, key=lambda r: r.index)
    counts = Counter(r.status for r in results)
    skips = Counter(r.detail or "unknown" for r in results if r.status == "skipped")
    cfg = state.config
    report = SuiteReport(
        suite=state.suite,
        fragment=cfg.fragment,
        lattice=cfg.lattice.name,
        seed=cfg.seed,
        trials=cfg.trials,
        passed=counts["passed"],
        failed=counts["failed"],
        skipped=counts["skipped"],
        failures=[r for r in results if r.status == "failed"],
        skip_reasons=dict(skips),
    )
    return {"report": report}


# Edge functions
def distribute_batches(state: SuiteState) -> List[Send]:
    """Creates Send objects for each batch to be run in parallel."""
    return [
        Send("run_batch", BatchState(suite=state.suite, config=state.config, indices=batch))
        for batch in state.batches
    ]


def create_suite_graph():
    """Create and compile the suite workflow graph."""
    workflow = StateGraph(SuiteState)

    workflow.add_node("prepare_batches", prepare_batches)
    workflow.add_node("run_batch", run_batch)
    workflow.add_node("combine_results", combine_results)

    workflow.add_edge(START, "prepare_batches")
    workflow.add_conditional_edges("prepare_batches", distribute_batches, ["run_batch"])
    workflow.add_edge("run_batch", "combine_results")
    workflow.add_edge("combine_results", END)

    return workflow.compile()


async def run_suite(name: str, config: GenConfig, timing: bool = False) -> SuiteReport:
    """Run one suite to completion.

    Raises:
        GradiaError: If ``name`` is not a known suite
    """
    get_suite(name)
    graph = create_suite_graph()
    started = time.perf_counter()
    final = await graph.ainvoke(SuiteState(suite=name, config=config))
    report: SuiteReport = final["report"]
    if timing:
        report = report.model_copy(update={"elapsed": time.perf_counter() - started})
    logging.info(report.summary())
    return report


async def write_report(report: SuiteReport, directory: Optional[Path] = None) -> str:
    """Write the detail file of a run; returns its path.

    The file goes to ``directory``, or to the configured reports directory.
    """
    if directory is None:
        settings.ensure_dirs()
        directory = settings.reports_dir
    path = Path(directory) / f"{report.suite}-{report.fragment}-{report.seed}.json"
    await write_file(str(path), json.dumps(report.model_dump(), indent=2))
    return str(path)
