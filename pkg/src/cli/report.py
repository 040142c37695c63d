"""
Report tables and CSV output.
"""

import csv
import os
from typing import Dict, Iterable, List, Optional, Sequence

from src.simulation import EvaluationResult, SweepPoint
from src.utils.utils import fmt_fixed, fmt_full

TABLE1_FILE = "table1.csv"
TABLE1_HEADER = ["handler", "use_case", "expected_distance_m", "expected_mu"]
SWEEP_FILE = "sweep.csv"
SWEEP_HEADER = ["handler", "mu", "sigma", "u_acceptable", "mu_safe", "distance_m"]


def write_csv(path: str, header: Sequence[str], rows: Iterable[Sequence[str]]) -> str:
    """Write a CSV file with '\\n' line endings; creates the parent directory."""
    parent = os.path.dirname(path)
    if parent:
        os.makedirs(parent, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
    return path


def table1_rows(results: Sequence[EvaluationResult]) -> List[List[str]]:
    return [
        [r.handler_label, r.use_case, fmt_full(r.expected_distance), fmt_full(r.expected_mu)]
        for r in results
    ]


def sweep_rows(points: Sequence[SweepPoint]) -> List[List[str]]:
    return [
        [p.handler.value, fmt_full(p.mu), fmt_full(p.sigma), fmt_full(p.u_acceptable),
         fmt_full(p.mu_safe), fmt_full(p.distance)]
        for p in points
    ]


def render_table1(results: Sequence[EvaluationResult],
                  gains: Dict[tuple, float],
                  gaps: Dict[str, Optional[float]],
                  gap_labels: Optional[tuple] = None) -> str:
    """
    Fixed-width text table: one line per (use case, handler) with E[d], E[mu]
    and the gain against the worst case, followed by the use-case gaps.
    """
    width = max([len("handler")] + [len(r.handler_label) for r in results])
    lines = [
        f"{'handler':<{width}}  {'use_case':<8}  {'E[d_safe] m':>12}  {'E[mu_safe]':>10}  {'gain':>7}",
        "-" * (width + 47),
    ]
    for r in results:
        gain = gains.get((r.use_case, r.handler_label))
        gain_txt = f"{gain * 100:6.1f}%" if gain is not None else "    n/a"
        lines.append(
            f"{r.handler_label:<{width}}  {r.use_case:<8}  {fmt_fixed(r.expected_distance):>12}  "
            f"{fmt_fixed(r.expected_mu):>10}  {gain_txt:>7}"
        )

    if gaps and gap_labels:
        first, second = gap_labels
        lines.append("")
        lines.append(f"E[d] gap {second} - {first}:")
        for label, gap in gaps.items():
            lines.append(f"  {label:<{width}}  {'n/a (clamp active)' if gap is None else fmt_fixed(gap) + ' m'}")
    return "\n".join(lines)
