"""Rössler attractor sample: Rips Betti numbers across multiples of the connecting scale."""

import argparse
from dataclasses import dataclass, field

from nervus.complex import betti
from nervus.fractafold import OdeParams, rossler_cloud
from nervus.geometry import connecting_epsilon, rips_complex


@dataclass
class Config:
    ode: OdeParams = field(default_factory=OdeParams)
    count: int = 400
    maxdim: int = 2  # b1 needs 2-simplices to kill graph cycles
    factors: tuple = (1.0,)


def run(cfg: Config) -> list[dict]:
    cloud = rossler_cloud(cfg.ode, cfg.count)
    eps0 = connecting_epsilon(cloud)
    rows = []
    for f in cfg.factors:
        k = rips_complex(cloud, eps0 * f, cfg.maxdim)
        rows.append({"eps": round(eps0 * f, 4), "f_vector": k.f_vector(), "betti": betti(k)})
    return rows


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--count", type=int, default=Config.count)
    ap.add_argument("--maxdim", type=int, default=Config.maxdim)
    ap.add_argument("--factors", type=float, nargs="+", default=list(Config.factors))
    args = ap.parse_args()
    for row in run(Config(count=args.count, maxdim=args.maxdim, factors=tuple(args.factors))):
        print(row)
