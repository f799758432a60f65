"""Batch of contraction checks; one JSON line per instance."""
import argparse
import json
import random
import time
from dataclasses import asdict, dataclass

from crystgarside.al_graph import PreconditionError, graph


@dataclass
class Config:
    type: str = "B~3"
    seed: int = 7
    instances: int = 20
    far: int = 6
    steps: int = 3


def main(cfg: Config):
    A = graph(cfg.type)
    rng = random.Random(cfg.seed)
    passed = skipped = 0
    for i in range(cfg.instances):
        v1, v2 = A.random_instance(rng, cfg.far, cfg.steps)
        t0 = time.perf_counter()
        try:
            r = A.check_contraction(v1, v2)
        except PreconditionError as e:
            skipped += 1
            print(json.dumps({"i": i, "skipped": str(e)}))
            continue
        passed += r.passed
        print(json.dumps({"i": i, "lambda": [r.lambda1, r.lambda2], "path": len(r.path),
                          "subpath": len(r.subpath), "start": r.start, "passed": r.passed,
                          "seconds": round(time.perf_counter() - t0, 2)}))
    print(json.dumps({"config": asdict(cfg), "passed": passed, "skipped": skipped}))


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("type", nargs="?", default=Config.type)
    p.add_argument("--seed", type=int, default=Config.seed)
    p.add_argument("--instances", type=int, default=Config.instances)
    p.add_argument("--far", type=int, default=Config.far)
    p.add_argument("--steps", type=int, default=Config.steps)
    a = p.parse_args()
    main(Config(a.type, a.seed, a.instances, a.far, a.steps))
