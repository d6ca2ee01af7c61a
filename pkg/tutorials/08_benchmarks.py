"""Timing the algebra and the robot algorithms.

The same benchmark the `cga bench` command runs, driven from Python.
Output is CSV with one row per operation; the seed line makes runs
reproducible.

    python3 tutorials/08_benchmarks.py
"""

import csv
import io

from cgar.cli import run_benchmark


def pretty(csv_text: str):
    lines = csv_text.strip().splitlines()
    print(lines[0])
    rows = list(csv.DictReader(io.StringIO("\n".join(lines[1:]))))
    width = max(len(r["operation"]) for r in rows)
    for r in rows:
        mean_us = float(r["mean_ns"]) / 1000.0
        sd_us = float(r["stddev_ns"]) / 1000.0
        print(f"  {r['operation']:{width}s}  {mean_us:10.2f} us"
              f"  +/- {sd_us:8.2f}  (n={r['n_samples']})")


def main():
    print("algebra suite (products and unary ops on random multivectors):")
    pretty(run_benchmark("algebra", repetitions=200, seed=1))
    print()

    print("robot suite (FK, Jacobian, dynamics on the bundled 7-dof arm):")
    pretty(run_benchmark("robot", repetitions=50, seed=1))
    print()

    print("the CLI equivalent:")
    print("  cga bench --suite algebra --repetitions 200 --seed 1")
    print("  cga bench --suite robot --out robot.csv")


if __name__ == "__main__":
    main()
