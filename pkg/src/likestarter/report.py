"""Render scenario metrics to figures alongside the CSV.

Pure presentation: reads the metrics rows the simulator produced and
writes PNG files. Kept separate so the engine and simulator never import
matplotlib.
"""

from __future__ import annotations

import csv
import os
from collections import defaultdict

from .units import ATTO

FIGURES = ("total_raised.png", "gini_likoin.png", "holder_yield.png", "token_supply.png")


def read_metrics_csv(path: str) -> list[dict]:
    with open(path, "r", encoding="utf-8", newline="") as fh:
        return list(csv.DictReader(fh))


def render_figures(metrics: list[dict], out_dir: str) -> list[str]:
    """Write the standard figure set; returns the paths written."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    by_beneficiary: dict[str, list[dict]] = defaultdict(list)
    for row in metrics:
        by_beneficiary[row["beneficiary"]].append(row)

    os.makedirs(out_dir, exist_ok=True)
    written = []

    def save(fig, name: str) -> None:
        path = os.path.join(out_dir, name)
        fig.savefig(path, dpi=120, bbox_inches="tight")
        plt.close(fig)
        written.append(path)

    def steps(rows):
        return [int(r["step"]) for r in rows]

    fig, ax = plt.subplots(figsize=(7, 4))
    for b, rows in sorted(by_beneficiary.items()):
        ax.plot(steps(rows), [int(r["total_raised"]) / ATTO for r in rows], label=b)
    ax.set_xlabel("step")
    ax.set_ylabel("total raised (currency units)")
    ax.set_title("Funds raised per campaign")
    ax.legend()
    save(fig, "total_raised.png")

    fig, ax = plt.subplots(figsize=(7, 4))
    for b, rows in sorted(by_beneficiary.items()):
        ax.plot(steps(rows), [float(r["gini_likoin"]) for r in rows], label=b)
    ax.set_xlabel("step")
    ax.set_ylabel("Gini of Likoin holdings")
    ax.set_title("Holding concentration")
    ax.legend()
    save(fig, "gini_likoin.png")

    fig, ax = plt.subplots(figsize=(7, 4))
    for b, rows in sorted(by_beneficiary.items()):
        ax.plot(
            steps(rows), [float(r["mean_holder_yield"]) for r in rows], label=b
        )
    ax.set_xlabel("step")
    ax.set_ylabel("mean holder yield per step")
    ax.set_title("Redistribution yield to holders")
    ax.legend()
    save(fig, "holder_yield.png")

    fig, ax = plt.subplots(figsize=(7, 4))
    for b, rows in sorted(by_beneficiary.items()):
        ax.plot(
            steps(rows),
            [int(r["likoin_total"]) / ATTO for r in rows],
            label=f"{b} likoin",
        )
        ax.plot(
            steps(rows),
            [int(r["buck_total"]) / ATTO for r in rows],
            linestyle="--",
            label=f"{b} buck",
        )
    ax.set_xlabel("step")
    ax.set_ylabel("supply (whole tokens)")
    ax.set_title("Token supplies")
    ax.legend()
    save(fig, "token_supply.png")

    return written
