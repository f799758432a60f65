"""Tabulate the derived data of every supported type up to a rank bound."""
import argparse
import json
import time
from dataclasses import dataclass

from crystgarside.coxeter_data import build
from crystgarside.interval import structure


@dataclass
class Config:
    max_rank: int = 5
    with_interval: bool = False
    json: bool = False


def types(max_rank):
    out = [f"{f}~{n}" for f in "BC" for n in range(2, max_rank + 1)]
    out += [f"D~{n}" for n in range(4, max_rank + 1)]
    out += ["G~2", "F~4", "E~6", "E~7", "E~8"]
    return out


def main(cfg: Config):
    rows = []
    for t in types(cfg.max_rank):
        t0 = time.perf_counter()
        d = build(t)
        row = d.summary()
        if cfg.with_interval:
            G = structure(t)
            row["finite_atoms"] = len(G.finite_atoms)
            row["vertical_roots"] = len(G.vertical_roots)
            row["r0_offset"] = G.find_r0().m0
        row["seconds"] = round(time.perf_counter() - t0, 2)
        rows.append(row)
    if cfg.json:
        print(json.dumps(rows, indent=2))
        return
    print(f"{'type':6} {'roots':>5} {'k0':>3} {'e0':>3}  gamma0")
    for r in rows:
        print(f"{r['type']:6} {r['num_roots']:>5} {r['k0']:>3} {r['e0']:>3}  {' '.join(r['gamma0'])}")


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--max-rank", type=int, default=Config.max_rank)
    p.add_argument("--with-interval", action="store_true")
    p.add_argument("--json", action="store_true")
    a = p.parse_args()
    main(Config(a.max_rank, a.with_interval, a.json))
