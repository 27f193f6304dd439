"""Table and curve emission: deterministic delimited output, manifests, figures.

Output bytes are identical across reruns and thread counts: cells may be
computed in parallel but are always assembled in (n, k) order, and all
formatting is locale-independent.  Figures are rendered next to the
delimited files as a convenience; the data files remain the primary output.
"""

from __future__ import annotations

import hashlib
import json
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import List, Optional, Sequence, Tuple

from . import __version__
from .asymptotics import GammaSolution
from .depth import DepthResult, bound_upper, closed_form, hdepth_std

CSV_HEADER = "n,k,hdepth,lower,upper,min_u,witness_j,closed_form_match,hbound_tight"


@dataclass(frozen=True)
class TableRow:
    n: int
    k: int
    hdepth: int
    lower: int
    upper: int
    min_u: int
    witness_j: Optional[int]
    closed_form_match: bool
    hbound_tight: bool


@dataclass
class RunManifest:
    command_line: str
    version: str = __version__
    timestamp: str = ""
    threads: int = 1
    binomial_cache: int = 0
    tolerances: dict = field(default_factory=dict)
    outputs: list = field(default_factory=list)

    def record(self, path: Path, digest: str) -> None:
        self.outputs.append({"path": str(path), "sha256": digest})

    def write(self, path: Path) -> None:
        if not self.timestamp:
            self.timestamp = datetime.now(timezone.utc).isoformat()
        path.write_text(json.dumps(self.__dict__, indent=2) + "\n", encoding="utf-8")


def row_from_result(res: DepthResult) -> TableRow:
    cf = closed_form(res.n, res.k)
    witness_j = res.witness_negative.witness_j if res.witness_negative else None
    return TableRow(
        n=res.n,
        k=res.k,
        hdepth=res.hdepth,
        lower=res.lower_bound,
        upper=res.upper_bound,
        min_u=res.min_u,
        witness_j=witness_j,
        closed_form_match=(cf is None or cf == res.hdepth),
        hbound_tight=(res.hdepth == bound_upper(res.n, res.k)),
    )


def _cell(args: Tuple[int, int]) -> DepthResult:
    n, k = args
    return hdepth_std(n, k)


def compute_cells(cells: Sequence[Tuple[int, int]], threads: int = 1) -> List[DepthResult]:
    """Depth results for the given (n, k) cells, in input order."""
    if threads <= 1 or len(cells) <= 1:
        return [_cell(c) for c in cells]
    with ProcessPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(_cell, cells, chunksize=max(1, len(cells) // (4 * threads))))


def depth_table(n_max: int, threads: int = 1) -> List[TableRow]:
    """Rows for all 1 <= k <= n <= n_max, ordered by n then k."""
    if n_max < 1:
        raise ValueError(f"need n_max >= 1, got {n_max}")
    cells = [(n, k) for n in range(1, n_max + 1) for k in range(1, n + 1)]
    return [row_from_result(r) for r in compute_cells(cells, threads)]


def _digest(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def _emit(data: bytes, destination: Optional[Path]) -> str:
    if destination is None:
        sys.stdout.write(data.decode("utf-8"))
    else:
        destination.write_bytes(data)
    return _digest(data)


def render_table(rows: Sequence[TableRow], fmt: str = "csv") -> bytes:
    if not rows:
        raise ValueError("refusing to write an empty table")
    ordered = sorted(rows, key=lambda r: (r.n, r.k))
    if fmt == "csv":
        lines = [CSV_HEADER]
        for r in ordered:
            wj = "" if r.witness_j is None else str(r.witness_j)
            lines.append(
                f"{r.n},{r.k},{r.hdepth},{r.lower},{r.upper},{r.min_u},{wj},"
                f"{str(r.closed_form_match).lower()},{str(r.hbound_tight).lower()}"
            )
        return ("\n".join(lines) + "\n").encode("utf-8")
    if fmt == "json":
        payload = [
            {
                "n": r.n,
                "k": r.k,
                "hdepth": r.hdepth,
                "lower": r.lower,
                "upper": r.upper,
                "min_u": r.min_u,
                "witness_j": r.witness_j,
                "closed_form_match": r.closed_form_match,
                "hbound_tight": r.hbound_tight,
            }
            for r in ordered
        ]
        return (json.dumps(payload, indent=2) + "\n").encode("utf-8")
    raise ValueError(f"unknown table format {fmt!r}")


def write_table(rows: Sequence[TableRow], fmt: str, destination: Optional[Path]) -> str:
    """Write the table, return the content digest."""
    return _emit(render_table(rows, fmt), destination)


def render_curve(points: Sequence[Tuple[float, float]]) -> bytes:
    if not points:
        raise ValueError("refusing to write an empty curve")
    lines = [f"{b:.12g} {g:.12g}" for b, g in points]
    return ("\n".join(lines) + "\n").encode("utf-8")


def write_curve(points: Sequence[Tuple[float, float]], destination: Optional[Path]) -> str:
    """Two-column whitespace-separated curve data, 12 significant digits."""
    return _emit(render_curve(points), destination)


def render_curve_json(solutions: Sequence[GammaSolution], tol: float) -> bytes:
    payload = {
        "tol": tol,
        "points": [
            {
                "beta": s.beta,
                "gamma": s.gamma,
                "alpha0": s.alpha0,
                "residual": s.residual,
                "iterations": s.iterations,
            }
            for s in solutions
        ],
    }
    return (json.dumps(payload, indent=2) + "\n").encode("utf-8")


def figure_path(destination: Path) -> Path:
    return destination.with_suffix(".png")


def render_curve_figure(points: Sequence[Tuple[float, float]], path: Path) -> None:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    betas = [b for b, _ in points]
    gammas = [g for _, g in points]
    fig, ax = plt.subplots(figsize=(5, 3.5))
    ax.plot(betas, gammas, "-", lw=1.5, label="limit codepth")
    ax.plot(betas, [0.5 - b for b in betas], "--", lw=1.0, color="gray", label="1/2 - beta")
    ax.set_xlabel("beta")
    ax.set_ylabel("gamma")
    ax.legend(frameon=False)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_table_figure(rows: Sequence[TableRow], path: Path) -> None:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    n_max = max(r.n for r in rows)
    top = [r for r in rows if r.n == n_max]
    ks = [r.k for r in top]
    fig, ax = plt.subplots(figsize=(5, 3.5))
    ax.plot(ks, [r.hdepth for r in top], "o-", ms=3, lw=1.0, label="hdepth")
    ax.plot(ks, [r.lower for r in top], ":", lw=1.0, label="lower bound")
    ax.plot(ks, [r.upper for r in top], ":", lw=1.0, label="upper bound")
    ax.set_xlabel("k")
    ax.set_ylabel("depth")
    ax.set_title(f"n = {n_max}")
    ax.legend(frameon=False)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def regimeA_ratio(n: int, hdepth_value: int) -> float:
    """Recorded diagnostic: (hdepth - n/2) / (sqrt(n log n) / 2) at k = 2."""
    return (hdepth_value - n / 2) / (0.5 * math.sqrt(n * math.log(n)))
