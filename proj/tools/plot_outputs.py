#!/usr/bin/env python3
"""Plot seqcast outputs: predicted vs actual for one or more evaluate runs,
and the loss curve for one or more train runs.

    tools/plot_outputs.py --predictions runs/tem/eval/predictions.csv \
        runs/rain/eval/predictions.csv --loss runs/tem/loss.csv \
        runs/rain/loss.csv --out figures/
"""

import argparse
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import pandas as pd


def read_csv(path: Path) -> pd.DataFrame:
    return pd.read_csv(path, comment="#")


def label_of(path: Path) -> str:
    with open(path) as f:
        first = f.readline()
    for part in first.lstrip("# ").split(";"):
        key, _, value = part.strip().partition("=")
        if key == "variable":
            return value
    return path.parent.name


def plot_predictions(paths, out: Path) -> None:
    fig, axes = plt.subplots(1, len(paths), figsize=(6 * len(paths), 4), squeeze=False)
    for ax, path in zip(axes[0], paths):
        df = read_csv(path)
        when = pd.to_datetime(dict(year=df.year, month=df.month, day=1))
        ax.plot(when, df.actual, marker="o", label="actual")
        ax.plot(when, df.predicted, marker="x", label="predicted")
        ax.set_title(label_of(path))
        ax.legend()
        ax.tick_params(axis="x", rotation=45)
    fig.tight_layout()
    fig.savefig(out / "predictions.png", dpi=150)


def plot_errors(paths, out: Path) -> None:
    fig, axes = plt.subplots(1, len(paths), figsize=(4 * len(paths), 4), squeeze=False)
    for ax, path in zip(axes[0], paths):
        df = read_csv(path)
        ax.boxplot([df.error, df.error.abs()])
        ax.set_xticks([1, 2], ["error", "|error|"])
        ax.set_title(label_of(path))
    fig.tight_layout()
    fig.savefig(out / "errors.png", dpi=150)


def plot_loss(paths, out: Path) -> None:
    fig, axes = plt.subplots(1, len(paths), figsize=(6 * len(paths), 4), squeeze=False)
    for ax, path in zip(axes[0], paths):
        df = read_csv(path)
        ax.plot(df.epoch, df.mean_loss)
        ax.set_xlabel("epoch")
        ax.set_ylabel("mean loss")
        ax.set_title(label_of(path))
    fig.tight_layout()
    fig.savefig(out / "loss.png", dpi=150)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--predictions", nargs="*", type=Path, default=[])
    parser.add_argument("--loss", nargs="*", type=Path, default=[])
    parser.add_argument("--out", type=Path, default=Path("."))
    args = parser.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)
    if args.predictions:
        plot_predictions(args.predictions, args.out)
        plot_errors(args.predictions, args.out)
    if args.loss:
        plot_loss(args.loss, args.out)


if __name__ == "__main__":
    main()
