"""Dyadic solenoid tower: per-level Betti numbers and degree-1 bonding and composite maps."""

import argparse
from dataclasses import dataclass

from nervus.complex import homology_map
from nervus.fractafold import solenoid_tower, tower_homology


@dataclass
class Config:
    base: int = 4
    levels: int = 3


def ints(m):
    return [[int(x) for x in row] for row in m]


def run(cfg: Config) -> dict:
    t = solenoid_tower(cfg.base, cfg.levels)
    th = tower_homology(t)
    return {"betti": th.betti,
            "bonding_h1": [ints(m[1]) for m in th.bonding],
            "composite_to_base": [ints(homology_map(t.composite(j, 0), 1)) for j in range(1, len(t.levels))]}


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--base", type=int, default=Config.base)
    ap.add_argument("--levels", type=int, default=Config.levels)
    for k, v in run(Config(**vars(ap.parse_args()))).items():
        print(f"{k}: {v}")
