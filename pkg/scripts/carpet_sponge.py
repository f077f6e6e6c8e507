"""Sierpiński carpet and Menger sponge complexes: Betti numbers against Euler characteristics."""

import argparse
from dataclasses import dataclass

from nervus.complex import betti
from nervus.fractafold import carpet_complex, sponge_complex


@dataclass
class Config:
    carpet_levels: int = 3
    sponge_levels: int = 1


def run(cfg: Config) -> list[dict]:
    rows = []
    for name, build, top in (("carpet", carpet_complex, cfg.carpet_levels),
                             ("sponge", sponge_complex, cfg.sponge_levels)):
        for n in range(1, top + 1):
            k = build(n)
            rows.append({"family": name, "level": n, "f_vector": k.f_vector(), "betti": betti(k),
                         "euler": k.euler_characteristic()})
    return rows


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--carpet-levels", dest="carpet_levels", type=int, default=Config.carpet_levels)
    ap.add_argument("--sponge-levels", dest="sponge_levels", type=int, default=Config.sponge_levels)
    for row in run(Config(**vars(ap.parse_args()))):
        print(row)
