"""Search small random diagrams for non-inner derivations.

Each trial builds a three-object diagram A -> B -> C with the composite
recorded as a relation, draws random derivations on it (values on the two
free generators are arbitrary eps classes; the value on the composite is
forced by the Leibniz rule), and asks solve_inner whether each one comes
from per-object eps endomorphisms.  Non-inner examples are printed.
"""

import argparse
import random
import sys

sys.path.insert(0, "src")

from dualseq import (Derivation, Diagram, Field, check_derivation,
                     compose_hat, get_context, hat, hat_eps, interval,
                     solve_inner, zero_hat)


def random_hat(rng, f, v, w):
    ctx = get_context(v, w)
    h = zero_hat(v, w)
    for g in ctx.hom_basis():
        if rng.random() < 0.5:
            h = h + hat(g)
    for g in ctx.eps_basis():
        if rng.random() < 0.5:
            h = h + hat_eps(g)
    return h


def random_eps(rng, f, v, w):
    ctx = get_context(v, w)
    if ctx.dim_eps == 0:
        return zero_hat(v, w)
    coords = [f.coerce(rng.randint(0, max((f.p or 7) - 1, 1)))
              for _ in range(ctx.dim_eps)]
    return hat_eps(ctx.eps_from_coords(coords))


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--field", default="2", help="prime p, or Q for rationals")
    ap.add_argument("--trials", type=int, default=20)
    ap.add_argument("--per-trial", type=int, default=10,
                    help="random derivations sampled per diagram")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    f = Field(None) if args.field.upper() == "Q" else Field(int(args.field))
    rng = random.Random(args.seed)
    pool = [interval(f, a, b) for a in range(-1, 2) for b in range(a, 3)]

    inner = non_inner = degenerate = 0
    for t in range(args.trials):
        a, b, c = (rng.choice(pool) for _ in range(3))
        fab = random_hat(rng, f, a, b)
        gbc = random_hat(rng, f, b, c)
        h = compose_hat(gbc, fab)
        diag = Diagram(objects={"A": a, "B": b, "C": c},
                       generators={"f": ("A", "B", fab),
                                   "g": ("B", "C", gbc),
                                   "h": ("A", "C", h)},
                       relations=(("g", "f", "h"),))
        for _ in range(args.per_trial):
            df = random_eps(rng, f, a, b)
            dg = random_eps(rng, f, b, c)
            dh = compose_hat(dg, fab) + compose_hat(gbc, df)
            der = Derivation(diag, {"f": df, "g": dg, "h": dh})
            assert check_derivation(diag, der) is None
            if df.is_zero and dg.is_zero:
                degenerate += 1
                continue
            sol = solve_inner(diag, der)
            if sol is None:
                non_inner += 1
                lab = lambda s: f"[{s.lo},{s.hi}]"
                print(f"trial {t}: non-inner derivation on "
                      f"{lab(a)} -> {lab(b)} -> {lab(c)}")
            else:
                inner += 1

    print(f"{inner} inner, {non_inner} non-inner, "
          f"{degenerate} zero derivations skipped")


if __name__ == "__main__":
    main()
