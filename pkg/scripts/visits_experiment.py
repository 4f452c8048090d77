"""Node visits per query as the alphabet grows, for binary and multiary trees.

For each sigma and arity, reports the mean and max visits of rel_rnk and
rel_min_lab_fst over random queries next to the tree height.
"""

import argparse
import random
from dataclasses import dataclass

from binrel.rel_gwt import BinRelGwt
from binrel.rel_wt import BinRelWt
from binrel.seq import ceil_log


@dataclass
class VisitsConfig:
    sigmas: tuple = (16, 64, 256, 1024, 4096)
    arities: tuple = (2, 4, 8, 16)
    n: int = 1000
    pairs: int = 10_000
    queries: int = 2000
    seed: int = 0


def measure(rel, counter, fn, queries, rng, sigma, n):
    values = []
    for _ in range(queries):
        rel.reset_visits()
        fn(rng, sigma, n)
        values.append(counter())
    return sum(values) / len(values), max(values)


def run(cfg: VisitsConfig):
    rng = random.Random(cfg.seed)
    rows = []
    for sigma in cfg.sigmas:
        pairs = {(rng.randint(1, sigma), rng.randint(1, cfg.n)) for _ in range(cfg.pairs)}
        structures = [("wt", 2, BinRelWt(pairs, cfg.n, sigma))]
        structures += [(f"gwt{mu}", mu, BinRelGwt(pairs, cfg.n, sigma, mu=mu)) for mu in cfg.arities]
        for name, mu, rel in structures:

            def rnk(rng, s, n, rel=rel):
                rel.rel_rnk(rng.randint(1, s), rng.randint(1, n))

            def min_lab(rng, s, n, rel=rel):
                x = rng.randint(1, n)
                rel.rel_min_lab_fst(rng.randint(1, s), x, rng.randint(x, n), rng.randint(1, n))

            counter = (lambda rel=rel: rel.visits)
            r = measure(rel, counter, rnk, cfg.queries, rng, sigma, cfg.n)
            m = measure(rel, counter, min_lab, cfg.queries, rng, sigma, cfg.n)
            rows.append((sigma, name, ceil_log(mu, sigma), r, m))
    return rows


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--queries", type=int, default=2000)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    cfg = VisitsConfig(queries=args.queries, seed=args.seed)
    print(f"{'sigma':>6} {'tree':>6} {'height':>6} {'rnk mean':>9} {'rnk max':>8} {'minlab mean':>12} {'minlab max':>11}")
    for sigma, name, h, (rm, rx), (mm, mx) in run(cfg):
        print(f"{sigma:>6} {name:>6} {h:>6} {rm:>9.2f} {rx:>8} {mm:>12.2f} {mx:>11}")


if __name__ == "__main__":
    main()
