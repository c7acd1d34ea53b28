"""Pearson reference values in 60-digit arithmetic.

Writes crates/core/tests/fixtures/pearson_oracle.json.
"""
import json
import random
from pathlib import Path

import mpmath

mpmath.mp.dps = 60
OUT = Path(__file__).resolve().parents[2] / "crates/core/tests/fixtures/pearson_oracle.json"


def pearson(x, y):
    n = len(x)
    xs = [mpmath.mpf(v) for v in x]
    ys = [mpmath.mpf(v) for v in y]
    mx = mpmath.fsum(xs) / n
    my = mpmath.fsum(ys) / n
    sxy = mpmath.fsum((a - mx) * (b - my) for a, b in zip(xs, ys))
    sxx = mpmath.fsum((a - mx) ** 2 for a in xs)
    syy = mpmath.fsum((b - my) ** 2 for b in ys)
    return float(sxy / mpmath.sqrt(sxx * syy))


def main():
    rng = random.Random(20240917)
    cases = []
    for i in range(100):
        n = rng.randint(2, 60)
        kind = i % 4
        x = [rng.uniform(0, 100) for _ in range(n)]
        if kind == 0:
            y = [rng.uniform(0, 100) for _ in range(n)]
        elif kind == 1:
            slope = rng.uniform(-3, 3)
            y = [slope * v + rng.gauss(0, 10) for v in x]
        elif kind == 2:
            x = [rng.uniform(0, 1) for _ in range(n)]
            y = [rng.uniform(-1, 1) for _ in range(n)]
        else:
            x = [rng.gauss(50, 20) for _ in range(n)]
            y = [-0.5 * v + rng.gauss(0, 5) for v in x]
        cases.append({"x": x, "y": y, "r": pearson(x, y)})

    # five systems: mean GEMBA score vs human DA
    gemba = {
        "sys-a": [90, 85, 80, 95],
        "sys-b": [70, 0, 75, 65],
        "sys-c": [60, 55, 50, 62],
        "sys-d": [40, 45, 0, 30],
        "sys-e": [88, 92, 70, 81],
    }
    human = {"sys-a": 86.5, "sys-b": 61.0, "sys-c": 58.25, "sys-d": 35.0, "sys-e": 79.0}
    systems = sorted(gemba)
    means = [float(mpmath.fsum(gemba[s]) / len(gemba[s])) for s in systems]
    qe = {
        "gemba": gemba,
        "human": human,
        "system_r": pearson(means, [human[s] for s in systems]),
    }
    OUT.write_text(json.dumps({"cases": cases, "qe_five_systems": qe}, indent=1) + "\n")


if __name__ == "__main__":
    main()
