"""Write the example data set used in the README and CLI tests.

    python scripts/make_examples.py data/
"""
from __future__ import annotations

import argparse
from dataclasses import dataclass, field
from pathlib import Path

from condense.cli import main as cli
from condense.fusion import direct_sum_vect, fcat_to_json, fibonacci_category, matrix_units_category
from condense.io import write_json


@dataclass
class Config:
    outdir: str = "data"
    primes: list = field(default_factory=lambda: [2, 3, 5])


def write(cfg: Config) -> None:
    out = Path(cfg.outdir)
    for p in cfg.primes:
        cli(["generate", str(p), str(out / f"vectz{p}")])
    cli(["generate", "2", str(out / "vectz2q1"), "--q", "1"])
    cli(["generate", "4", str(out / "vectz4q2"), "--q", "2", "--subgroup", "2"])
    write_json(out / "fibonacci.fcat", fcat_to_json(fibonacci_category()))
    write_json(out / "mat2.fcat", fcat_to_json(matrix_units_category(2)))
    write_json(out / "vect2.fcat", fcat_to_json(direct_sum_vect(2)))
    pres = out / "presentations"
    write_json(pres / "m2.json", {"matrix_algebra": 2})
    write_json(pres / "ss_one_simple.json", {"semisimple": {"labels": ["s"], "objects": {"X": [2], "S": [1]}}})
    ident = [["1" if i == j else "0" for j in range(4)] for i in range(4)]
    write_json(
        pres / "m2_into_ss.functor",
        {"kind": "functor", "source": "m2.json", "target": "ss_one_simple.json", "obj_map": {"X": "X"}, "hom_maps": [["X", "X", ident]]},
    )
    write_json(pres / "ss_two_simples.json", {"semisimple": {"labels": ["s", "t"], "objects": {"S": [1, 0], "T": [0, 1]}}})
    write_json(pres / "ss_s_only.json", {"semisimple": {"labels": ["s", "t"], "objects": {"S": [1, 0]}}})
    write_json(
        pres / "s_into_st.functor",
        {"kind": "functor", "source": "ss_s_only.json", "target": "ss_two_simples.json", "obj_map": {"S": "S"}, "hom_maps": [["S", "S", [["1"]]]]},
    )


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("outdir", nargs="?", default=Config.outdir)
    write(Config(outdir=ap.parse_args(argv).outdir))


if __name__ == "__main__":
    main()
