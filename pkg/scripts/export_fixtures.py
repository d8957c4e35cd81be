"""Write the built-in hypergraph models and a few star models to fixtures/ as JSON."""

import argparse
from pathlib import Path

from entcone.hypergraph import FIXTURES, fixture, serialize, star_model

EXTRA = {
    "ghz4": lambda: star_model(3, [0, 1, 2, 3]),
    "bell12": lambda: star_model(2, [1, 2]),
}


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--dir", default=str(Path(__file__).resolve().parents[1] / "fixtures"))
    args = ap.parse_args()
    out = Path(args.dir)
    out.mkdir(parents=True, exist_ok=True)
    models = {name: (lambda name=name: fixture(name)) for name in FIXTURES} | EXTRA
    for name, make in models.items():
        (out / f"{name}.json").write_text(serialize(make()))
        print(out / f"{name}.json")


if __name__ == "__main__":
    main()
