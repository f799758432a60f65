"""Projection values along x-orbits of random vertices.

For each sample vertex V = s * (one simple s) and each k, prints Lambda(x^k V) - k;
constant rows are the equivariance the projection should satisfy.
"""
import argparse
import random
import time
from dataclasses import dataclass

from crystgarside.al_graph import graph
from crystgarside.garside_engine import GroupElement


@dataclass
class Config:
    type: str = "C~3"
    seed: int = 1
    samples: int = 5
    reach: int = 4


def main(cfg: Config):
    A = graph(cfg.type)
    E = A.E
    rng = random.Random(cfg.seed)
    win = range(-(E.n + 1), E.n + 2)
    t0 = time.perf_counter()
    for _ in range(cfg.samples):
        s = E.random_simple(rng, rng.randint(1, E.n), win)
        v = A.vertex_of(GroupElement(0, (s,)))
        row = [A.lam(A.act(A.x_power(k), v)) - k for k in range(-cfg.reach, cfg.reach + 1)]
        print(f"{E.simple_label(s):40.40} {row}")
    print(f"{time.perf_counter() - t0:.1f}s")


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("type", nargs="?", default=Config.type)
    p.add_argument("--seed", type=int, default=Config.seed)
    p.add_argument("--samples", type=int, default=Config.samples)
    p.add_argument("--reach", type=int, default=Config.reach)
    a = p.parse_args()
    main(Config(a.type, a.seed, a.samples, a.reach))
