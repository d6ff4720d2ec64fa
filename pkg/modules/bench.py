"""Size-ladder timing of the solver with instrumented work counters."""
import logging
import time
from typing import Dict, Optional, Sequence

import altair as alt
import numpy as np
import pandas as pd

from config import DEFAULT_SEED
from modules import pipeline
from modules.testkit import gen_ladder

logger = logging.getLogger(__name__)


def run_one(size: int, seed: int = DEFAULT_SEED) -> Dict:
    """Solves a ladder union of about ``size`` edges and reports time and work counters."""
    instance = gen_ladder(max(4, size // 5), seed)

    started = time.perf_counter()
    result = pipeline.solve(instance.union, instance.union_pairs)
    seconds = time.perf_counter() - started

    union_edges = len(instance.union.edges)
    stats = result.stats
    return {
        "size": size,
        "union_edges": union_edges,
        "pairs": len(instance.union_pairs),
        "seconds": seconds,
        "darts_visited": stats.darts_visited,
        "faces_tested": stats.faces_tested,
        "shortcuts": stats.shortcuts_applied,
        "visits_per_edge": stats.darts_visited / union_edges,
        "distance_visits": result.report.edge_visits,
    }


def run_ladder(sizes: Sequence[int], seed: int = DEFAULT_SEED) -> pd.DataFrame:
    rows = [run_one(size, seed) for size in sizes]
    for row in rows:
        logger.info("size %d: %d union edges in %.3fs", row["size"], row["union_edges"], row["seconds"])
    return pd.DataFrame(rows).sort_values("size").reset_index(drop=True)


def growth_exponent(df: pd.DataFrame, column: str = "seconds") -> Optional[float]:
    """Least-squares slope of log(column) against log(union_edges)."""
    usable = df[(df[column] > 0) & (df["union_edges"] > 0)]
    if len(usable) < 2:
        return None
    slope, _ = np.polyfit(np.log(usable["union_edges"]), np.log(usable[column]), 1)
    return float(slope)


def doubling_ratios(df: pd.DataFrame) -> pd.Series:
    return (df["seconds"] / df["seconds"].shift(1)).dropna()


def save_chart(df: pd.DataFrame, path: str) -> None:
    chart = alt.Chart(df).mark_line(point=True).encode(
        x=alt.X("union_edges", title="Edges in the union", scale=alt.Scale(type="log")),
        y=alt.Y("seconds", title="Solve time (s)", scale=alt.Scale(type="log")),
        tooltip=["size", "union_edges", alt.Tooltip("seconds", format=".3f"), "darts_visited", "shortcuts"],
    ).properties(title="Solve time by union size")
    chart.save(path)
