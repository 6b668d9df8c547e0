"""Figure rendering for sweep reports.

Strictly additive to the delimited output: every figure is derived from the
same rows the CSV carries, rendered only when a target path is requested.
"""

from __future__ import annotations

from typing import Optional, Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

from .expsum import LargeValuesResult  # noqa: E402
from .rational import AsymptoticReport, PartialSumResult  # noqa: E402


def _finish(fig, out_path: str) -> str:
    fig.tight_layout()
    fig.savefig(out_path, dpi=150)
    plt.close(fig)
    return out_path


def render_asymptotic(report: AsymptoticReport, out_path: str) -> str:
    fig, ax = plt.subplots(figsize=(6.0, 3.8))
    ns = [r.N for r in report.rows]
    ratios = [r.ratio for r in report.rows]
    ax.semilogx(ns, ratios, "o-", label=f"measured ratio, c = {report.a}/{report.q}")
    ref = next((r.reference for r in report.rows if r.reference is not None), None)
    if ref is not None:
        ax.axhline(ref, color="crimson", ls="--", lw=1, label=f"stated constant {ref:.4f}")
    ax.set_xlabel("N")
    ax.set_ylabel("count / main term")
    ax.legend(fontsize=8)
    ax.set_title("nontrivial-solution count against the main-term prediction", fontsize=9)
    return _finish(fig, out_path)


def render_large_values(results: Sequence[LargeValuesResult], out_path: str) -> str:
    fig, ax = plt.subplots(figsize=(6.0, 3.8))
    vs = [r.V for r in results]
    ax.loglog(vs, [max(r.count, 1e-2) for r in results], "o-", label="count(|D| >= V)")
    ax.loglog(vs, [r.bound for r in results], "s--", label="(N/V)^4")
    ax.set_xlabel("V")
    ax.set_ylabel("count / bound")
    ax.legend(fontsize=8)
    ax.set_title("large values of D(a/Q)", fontsize=9)
    return _finish(fig, out_path)


def render_partial_sums(results: Sequence[PartialSumResult], out_path: str) -> str:
    fig, ax = plt.subplots(figsize=(6.0, 3.8))
    ns = [r.N for r in results]
    ax.loglog(ns, [abs(float(r.difference.mid_float())) for r in results], "o-", label="|exact - prediction|")
    ax.set_xlabel("N")
    ax.set_ylabel("residual")
    ax.legend(fontsize=8)
    alpha = results[0].alpha if results else None
    ax.set_title(f"summation-lemma residual, alpha = {alpha}", fontsize=9)
    return _finish(fig, out_path)


def render_energy_sweep(rows: Sequence[dict], out_path: str, value_key: str = "nontrivial") -> str:
    fig, ax = plt.subplots(figsize=(6.0, 3.8))
    ns = [row["N"] for row in rows]
    ax.loglog(ns, [max(row[value_key], 1e-2) for row in rows], "o-", label=value_key)
    ax.set_xlabel("N")
    ax.set_ylabel(value_key)
    ax.legend(fontsize=8)
    ax.set_title("energy sweep", fontsize=9)
    return _finish(fig, out_path)
