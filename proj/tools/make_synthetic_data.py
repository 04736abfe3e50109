#!/usr/bin/env python3
"""Writes a synthetic monthly temperature/rainfall series, 1901-01..2015-12.

The values are generated, not observed: a fixed monthly climatology with a
slow warming trend, AR(1) temperature anomalies and multiplicative
log-normal rainfall noise. It exists so the pipeline, tests and CLI can run
without the real dataset. Column layout follows the public monthly file
(tem, Month, Year, rain).
"""

import argparse

import numpy as np

TEMP_CLIMATOLOGY = [18.8, 21.7, 25.7, 28.1, 28.6, 28.8, 28.6, 28.8, 28.5, 27.0, 23.3, 19.8]
RAIN_CLIMATOLOGY = [7.0, 20.0, 45.0, 110.0, 250.0, 420.0, 470.0, 390.0, 300.0, 160.0, 30.0, 8.0]


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="data/synthetic_weather_1901_2015.csv")
    parser.add_argument("--seed", type=int, default=1901)
    args = parser.parse_args()

    rng = np.random.default_rng(args.seed)
    anomaly = 0.0
    rows = []
    for year in range(1901, 2016):
        for month in range(1, 13):
            anomaly = 0.5 * anomaly + rng.normal(0.0, 0.45)
            trend = 0.006 * (year - 1901)
            tem = TEMP_CLIMATOLOGY[month - 1] + trend + anomaly
            rain = RAIN_CLIMATOLOGY[month - 1] * float(np.exp(rng.normal(-0.045, 0.3)))
            rows.append((tem, month, year, rain))

    with open(args.out, "w", encoding="utf-8") as f:
        f.write("# SYNTHETIC data generated by tools/make_synthetic_data.py "
                f"(seed {args.seed}); not observed weather\n")
        f.write("tem,Month,Year,rain\n")
        for tem, month, year, rain in rows:
            f.write(f"{tem:.4f},{month},{year},{rain:.4f}\n")


if __name__ == "__main__":
    main()
