"""Write the bundled fixture documents into fixtures/."""
import argparse
from pathlib import Path

from formalmonads import fixtures, serialize


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default=Path(__file__).resolve().parent.parent / "fixtures", type=Path)
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)
    objs = {n: fixtures.category(n) for n in fixtures.CATEGORIES + ("sub12",)}
    objs.update({n: fixtures.monad(n) for n in fixtures.MONADS})
    objs.update({n: fixtures.functor(n) for n in ("fix_incl", "fix_reflect")})
    objs["fix_adjunction"] = fixtures.fix_adjunction()
    for name, obj in objs.items():
        serialize.save(args.out / f"{name}.json", obj)
    print(f"wrote {len(objs)} documents to {args.out}")


if __name__ == "__main__":
    main()
