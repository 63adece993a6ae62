"""Compare the replicated M/M/k simulator against the Erlang C oracle on a mu grid.

    python scripts/validate_simulator.py [--reps 100] [--seed 2024] [--wait-mode queue]
"""
import argparse
import math
import sys
from pathlib import Path

import numpy as np
import pandas as pd

sys.path.insert(0, str(Path(__file__).parent.parent))

from packages.optimizer.objective import replication_streams
from packages.optimizer.streams import derive, root_stream
from packages.queue_sim.erlang import analytic_wait
from packages.queue_sim.model import QueueModel, WaitMode
from packages.queue_sim.simulator import simulate_wait_batch


def validate(model: QueueModel, grid: list[float], reps: int, seed: int) -> pd.DataFrame:
    rows = []
    root = root_stream(seed)
    for i, mu in enumerate(grid):
        waits = simulate_wait_batch(model, mu, list(replication_streams(derive(root, i), reps)))
        mean = float(np.mean(waits))
        se = float(np.std(waits, ddof=1)) / math.sqrt(reps)
        analytic = analytic_wait(model, mu)
        rows.append({
            "mu": mu,
            "simulated": mean,
            "se": se,
            "analytic": analytic,
            "z": (mean - analytic) / se if se > 0 else float("nan"),
        })
    return pd.DataFrame(rows)


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--reps", type=int, default=100)
    parser.add_argument("--seed", type=int, default=2024)
    parser.add_argument("--wait-mode", choices=[m.value for m in WaitMode], default="queue")
    args = parser.parse_args()

    model = QueueModel(wait_mode=WaitMode(args.wait_mode))
    grid = [round(1.0 + 0.3 * i, 1) for i in range(10)]

    print(f"Simulator vs Erlang C (lambda={model.arrival_rate}, k={model.k}, "
          f"{args.reps} reps, seed={args.seed}, {model.wait_mode.value} wait)\n")
    table = validate(model, grid, args.reps, args.seed)
    print(table.to_string(index=False, float_format=lambda v: f"{v:.5f}"))

    hits = int((table["z"].abs() <= 3).sum())
    print(f"\n{hits}/{len(grid)} grid points within 3 standard errors")
    return 0 if hits >= 9 else 1


if __name__ == "__main__":
    sys.exit(main())
