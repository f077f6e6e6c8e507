"""Compare Čech and Vietoris nerve Betti numbers over every 3x3 context and random larger ones."""

import argparse
import random
from dataclasses import dataclass
from itertools import product

from nervus.complex import betti
from nervus.context import ChuSpace, cech_nerve, vietoris_nerve


@dataclass
class Config:
    random_count: int = 200
    size: int = 5
    density: float = 0.4
    seed: int = 0


def strip(b):
    b = list(b)
    while b and b[-1] == 0:
        b.pop()
    return tuple(b)


def agree(p: ChuSpace) -> bool:
    return strip(betti(cech_nerve(p))) == strip(betti(vietoris_nerve(p)))


def run(cfg: Config) -> dict:
    names = ["x0", "x1", "x2"], ["a0", "a1", "a2"]
    exhaustive = [ChuSpace.from_matrix(*names, [bits[0:3], bits[3:6], bits[6:9]])
                  for bits in product([0, 1], repeat=9)]
    rng = random.Random(cfg.seed)
    objs = [f"x{i}" for i in range(cfg.size)]
    attrs = [f"a{i}" for i in range(cfg.size)]
    randoms = [ChuSpace.from_matrix(objs, attrs, [[rng.random() < cfg.density for _ in attrs] for _ in objs])
               for _ in range(cfg.random_count)]
    return {"exhaustive": (sum(map(agree, exhaustive)), len(exhaustive)),
            "random": (sum(map(agree, randoms)), len(randoms))}


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    for f in ("random_count", "size", "seed"):
        ap.add_argument(f"--{f.replace('_', '-')}", dest=f, type=int, default=getattr(Config, f))
    ap.add_argument("--density", type=float, default=Config.density)
    for name, (ok, total) in run(Config(**vars(ap.parse_args()))).items():
        print(f"{name}: {ok}/{total} contexts agree")
