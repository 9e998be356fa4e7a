"""Tabular datasets reproducing the figure-style scans.

Each builder returns a ScanDataset holding named, equally long columns and
enough metadata to rerun the scan bit-identically. Writers emit CSV (plain
headers, full-precision decimal) or JSON (metadata-rich). Nothing here
renders plots; the datasets are the reproducibility artifact.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from datetime import datetime, timezone

import numpy as np

from . import __version__
from .asymptotics import g_uniform, q_m_asymptotic
from .enumeration import build_area_polynomials, partition_series
from .errors import DomainError, DyckAreaError, PoleProximityError
from .qseries import EvalSettings, g_cfrac, g_cfrac_grid, t_infinity
from .special_functions import make_scaling_constants, scaling_F

__all__ = [
    "ScanDataset",
    "scan_g_vs_t",
    "scan_phase_boundary",
    "scan_scaling_fn",
    "scan_partition",
    "write_dataset",
]


@dataclass(frozen=True)
class ScanDataset:
    """Columns of one scan plus the settings needed to reproduce it."""

    kind: str
    columns: dict[str, list]
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        lengths = {len(v) for v in self.columns.values()}
        if len(lengths) > 1:
            raise DomainError(f"ragged columns in dataset: {lengths}")

    @property
    def n_rows(self) -> int:
        return len(next(iter(self.columns.values()))) if self.columns else 0

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        names = list(self.columns)
        writer.writerow(names)
        for i in range(self.n_rows):
            writer.writerow([_format_cell(self.columns[n][i]) for n in names])
        return buf.getvalue()

    def to_json(self) -> str:
        payload = {
            "kind": self.kind,
            "metadata": self.metadata,
            "columns": {
                name: [_format_cell(v) for v in vals] for name, vals in self.columns.items()
            },
        }
        return json.dumps(payload, indent=2) + "\n"


def _format_cell(v):
    if isinstance(v, float):
        return repr(v)
    return v


def _metadata(kind: str, stamp: bool, **settings) -> dict:
    meta = {"kind": kind, "tool": "dyckarea", "version": __version__}
    meta.update(settings)
    if stamp:
        meta["timestamp"] = datetime.now(timezone.utc).isoformat()
    return meta


def scan_g_vs_t(q: float, t_min: float, t_max: float, steps: int,
                tol: float = 1e-12, stamp: bool = False) -> ScanDataset:
    """Exact continued-fraction values against the uniform Airy form.

    Points where the uniform denominator hits a pole (possible past the
    boundary line) are recorded as NaN rather than aborting the scan.
    """
    if steps < 2:
        raise DomainError("steps must be >= 2")
    settings = EvalSettings(q=q, tol=tol)
    ts = np.linspace(t_min, t_max, steps)
    g_exact = []
    for t in ts:
        try:
            g_exact.append(g_cfrac(float(t), settings) if t >= 0.0 else math.nan)
        except DyckAreaError:
            g_exact.append(math.nan)  # continued fraction unstable next to a pole
    g_airy = []
    for t in ts:
        if not (0.0 < t < 0.5):
            g_airy.append(math.nan)
            continue
        try:
            g_airy.append(g_uniform(float(t), q))
        except PoleProximityError:
            g_airy.append(math.nan)
    return ScanDataset(
        kind="g_vs_t",
        columns={"t": ts.tolist(), "G_cfrac": g_exact, "G_uniform": g_airy},
        metadata=_metadata("g_vs_t", stamp, q=q, eps=-math.log(q),
                           t_min=t_min, t_max=t_max, steps=steps, tol=tol,
                           methods=["cfrac", "uniform"]),
    )


def scan_phase_boundary(q_min: float, q_max: float, steps: int,
                        tol: float = 1e-10, stamp: bool = False) -> ScanDataset:
    """Pole boundary t_inf(q) on a q-grid."""
    if steps < 2:
        raise DomainError("steps must be >= 2")
    qs = np.linspace(q_min, q_max, steps)
    t_inf = [t_infinity(float(q), EvalSettings(q=float(q), tol=tol)) for q in qs]
    return ScanDataset(
        kind="phase_boundary",
        columns={"q": qs.tolist(), "t_infinity": t_inf},
        metadata=_metadata("phase_boundary", stamp, q_min=q_min, q_max=q_max,
                           steps=steps, tol=tol, methods=["h_series_root"]),
    )


def scan_scaling_fn(eps_list: list[float], s_min: float, s_max: float, steps: int,
                    tol: float = 1e-12, stamp: bool = False) -> ScanDataset:
    """Scaling function F(s), exact and reconstructed at each eps.

    Per eps the scan stores the reconstruction (G/2 - 1)(1-q)^(-1/3) once
    from the exact continued fraction and once from the uniform Airy form,
    evaluated at t(s, eps).
    """
    if steps < 2:
        raise DomainError("steps must be >= 2")
    svals = np.linspace(s_min, s_max, steps)
    columns: dict[str, list] = {"s": svals.tolist()}
    columns["F_exact"] = [scaling_F(float(s)) for s in svals]
    for eps in eps_list:
        q = math.exp(-eps)
        omq = 1.0 - q
        ts = 0.25 * (1.0 - svals * omq ** (2.0 / 3.0))
        settings = EvalSettings(q=q, tol=tol)
        g_exact = g_cfrac_grid(ts, settings)
        rec_cfrac = ((g_exact / 2.0) - 1.0) / omq ** (1.0 / 3.0)
        rec_unif = []
        for t in ts:
            try:
                rec_unif.append((g_uniform(float(t), q) / 2.0 - 1.0) / omq ** (1.0 / 3.0))
            except PoleProximityError:
                rec_unif.append(math.nan)
        tag = f"{eps:g}"
        columns[f"F_from_cfrac_eps{tag}"] = rec_cfrac.tolist()
        columns[f"F_from_uniform_eps{tag}"] = rec_unif
    return ScanDataset(
        kind="scaling_fn",
        columns=columns,
        metadata=_metadata("scaling_fn", stamp, eps_list=list(eps_list), s_min=s_min,
                           s_max=s_max, steps=steps, tol=tol,
                           methods=["airy_ratio", "cfrac_reconstruction",
                                    "uniform_reconstruction"]),
    )


def scan_partition(t: float, m_values: list[int], n_max: int | None = None,
                   j_max: int = 24, stamp: bool = False) -> ScanDataset:
    """Exact fixed-area series against the finite-size asymptotic form."""
    if not m_values:
        raise DomainError("m_values must be nonempty")
    m_top = max(m_values)
    if n_max is None:
        # peak of c[m][n] t^n sits near (2m-1)/|ln t|; pad by five widths
        peak = (2 * m_top - 1) / max(0.2, -math.log(max(t, 1e-6)))
        n_max = int(peak + 5.0 * math.sqrt(max(peak, 4.0))) + 20
    table = build_area_polynomials(n_max, m_max=m_top)
    constants = make_scaling_constants(zero_count=2000, j_max=j_max + 2)
    exact, asym, svals, tails = [], [], [], []
    for m in m_values:
        ps = partition_series(table, m, t)
        exact.append(ps.value)
        tails.append(ps.tail_estimate)
        svals.append((1.0 - 4.0 * t) * m ** (2.0 / 3.0))
        asym.append(q_m_asymptotic(m, t, j_max=j_max, constants=constants))
    return ScanDataset(
        kind="partition",
        columns={"m": list(m_values), "s": svals, "Q_exact": exact,
                 "Q_asymptotic": asym, "tail_estimate": tails},
        metadata=_metadata("partition", stamp, t=t, n_max=n_max, j_max=j_max,
                           methods=["table_series", "finite_size_phi"]),
    )


def write_dataset(dataset: ScanDataset, path: str, fmt: str = "csv") -> None:
    """Write a dataset to ``path`` as csv or json."""
    if fmt == "csv":
        text = dataset.to_csv()
    elif fmt == "json":
        text = dataset.to_json()
    else:
        raise DomainError(f"unknown format {fmt!r}")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)
