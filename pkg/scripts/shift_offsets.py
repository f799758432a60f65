"""Measure how far the translation part of w shifts the reflections r_{mu,i}.

Prints, per type, the offset j with w^e0 r_{mu,i} w^-e0 = r_{mu,i+j}.
"""
import argparse
from dataclasses import dataclass, field
from typing import List

from crystgarside.coxeter_data import build
from crystgarside.isometry import reflection


@dataclass
class Config:
    types: List[str] = field(default_factory=lambda: ["C~2", "C~3", "C~4", "G~2", "B~3", "D~4", "F~4"])
    span: int = 2


def shift(t, i):
    d = build(t)
    img = d.t_w_conjugate(reflection(d.mu, i))
    for k in range(i - 10, i + 11):
        if img == reflection(d.mu, k):
            return k - i
    return None


def main(cfg: Config):
    for t in cfg.types:
        offs = sorted({shift(t, i) for i in range(-cfg.span, cfg.span + 1)}, key=str)
        d = build(t)
        print(f"{t:5} e0={d.e0:<3} k0={d.k0}  offsets={offs}")


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("types", nargs="*")
    p.add_argument("--span", type=int, default=2)
    a = p.parse_args()
    main(Config(a.types or Config().types, a.span))
