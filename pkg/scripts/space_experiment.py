"""Measured payload against entropy for random relations of growing density.

Prints one row per (size, density): entropy H, the wavelet payload and the
BRWT ideal size, both as ratios to H, plus the BRWT bound check.
"""

import argparse
import random
from dataclasses import dataclass

from binrel.build import build
from binrel.core import RelationDims
from binrel.space import brwt_bound, brwt_ideal_size, entropy


@dataclass
class SpaceConfig:
    n: int = 256
    sigma: int = 256
    densities: tuple = (0.001, 0.01, 0.05, 0.2, 0.5)
    trials: int = 3
    seed: int = 0


def run(cfg: SpaceConfig):
    rng = random.Random(cfg.seed)
    cells = cfg.n * cfg.sigma
    rows = []
    for density in cfg.densities:
        for _ in range(cfg.trials):
            picked = rng.sample(range(cells), max(1, int(density * cells)))
            pairs = [(c // cfg.n + 1, c % cfg.n + 1) for c in picked]
            dims = RelationDims(cfg.n, cfg.sigma, len(pairs))
            h = entropy(dims)
            wt = build("wt", pairs, cfg.n, cfg.sigma)
            b = build("brwt", pairs, cfg.n, cfg.sigma)
            ideal = brwt_ideal_size(b)
            rows.append((density, dims.t, h, wt.payload_bits, ideal, ideal <= brwt_bound(dims)))
    return rows


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=256)
    ap.add_argument("--sigma", type=int, default=256)
    ap.add_argument("--trials", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    cfg = SpaceConfig(n=args.n, sigma=args.sigma, trials=args.trials, seed=args.seed)
    print(f"{'density':>8} {'t':>7} {'H bits':>10} {'wt/H':>7} {'brwt/H':>7}  within")
    for density, t, h, wt_bits, ideal, ok in run(cfg):
        print(f"{density:>8} {t:>7} {h:>10.1f} {wt_bits / h:>7.3f} {ideal / h:>7.3f}  {ok}")


if __name__ == "__main__":
    main()
