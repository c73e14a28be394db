"""Which twisted group algebras exist in Vect_{Z/n}^{omega_q}?

For every subgroup Z/d of Z/n the tree-calculus construction (associativity
defect read off the engine, then an exact solve over Z/M) is compared with
the closed-form restricted cocycle and, where small enough, an exhaustive
search over bounded-order cochains.
"""
from __future__ import annotations

import argparse
from dataclasses import dataclass

from condense import cocycles
from condense.condensation import GroupAlgebraObstruction, build_group_algebra, check_condensation_monad
from condense.fusion import CocycleSpec, build_pointed
from condense.mod2cat import brute_modulus, restricted_cocycle


@dataclass
class Config:
    max_n: int = 6
    brute_limit: int = 200_000


def scan(cfg: Config) -> list[tuple]:
    rows = []
    for n in range(1, cfg.max_n + 1):
        for q in range(n):
            fc = build_pointed(CocycleSpec(n, q))
            for d in (k for k in range(1, n + 1) if n % k == 0):
                A = build_group_algebra(fc, d)
                built = not isinstance(A, GroupAlgebraObstruction)
                if built:
                    assert check_condensation_monad(A).ok
                r = restricted_cocycle(n, q, d)
                lin = cocycles.find_coboundary_linear(d, r, n) is not None
                Mb = brute_modulus(n, d, limit=cfg.brute_limit)
                brute = None
                if Mb is not None:
                    brute = cocycles.find_coboundary_brute(d, r, n, Mb, limit=cfg.brute_limit) is not None
                rows.append((n, q, d, built, lin, brute))
    return rows


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-n", type=int, default=Config.max_n)
    ap.add_argument("--brute-limit", type=int, default=Config.brute_limit)
    cfg = Config(**vars(ap.parse_args(argv)))
    rows = scan(cfg)
    mismatches = 0
    print(f"{'n':>2} {'q':>2} {'|H|':>3} {'engine':>7} {'linear':>7} {'brute':>6}")
    for n, q, d, built, lin, brute in rows:
        ok = built == lin and brute in (None, lin)
        mismatches += not ok
        b = "-" if brute is None else str(brute)
        print(f"{n:>2} {q:>2} {d:>3} {str(built):>7} {str(lin):>7} {b:>6}{'' if ok else '  MISMATCH'}")
    print(f"{len(rows)} cases, {mismatches} mismatches")
    return 1 if mismatches else 0


if __name__ == "__main__":
    raise SystemExit(main())
