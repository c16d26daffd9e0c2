"""Tabulate enlarged-hom dimensions between interval sequences.

Prints one row per ordered pair of intervals drawn from a grid of finite
endpoints plus rays, showing dim Hom and dim Hom^eps.  Useful for spotting
vanishing patterns, e.g. nothing maps out of an h-projective into an acyclic.
"""

import argparse
import json
import math
import sys

sys.path.insert(0, "src")

from dualseq import Field, get_context, interval

INF = math.inf


def endpoints(lo, hi):
    out = []
    for a in [-INF] + list(range(lo, hi + 1)):
        for b in list(range(int(max(a, lo)), hi + 1)) + [INF]:
            out.append((a, b))
    return out


def label(a, b):
    fmt = lambda x: "-inf" if x == -INF else ("inf" if x == INF else str(x))
    return f"[{fmt(a)},{fmt(b)}]"


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--field", default="2", help="prime p, or Q for rationals")
    ap.add_argument("--lo", type=int, default=-2)
    ap.add_argument("--hi", type=int, default=2)
    ap.add_argument("--nonzero-only", action="store_true",
                    help="suppress rows where both dimensions vanish")
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args()

    f = Field(None) if args.field.upper() == "Q" else Field(int(args.field))
    grid = [(e, interval(f, *e)) for e in endpoints(args.lo, args.hi)]

    rows = []
    for (sa, sb), s in grid:
        for (ta, tb), t in grid:
            ctx = get_context(s, t)
            if args.nonzero_only and not (ctx.dim_hom or ctx.dim_eps):
                continue
            rows.append({"src": label(sa, sb), "dst": label(ta, tb),
                         "hom": ctx.dim_hom, "eps": ctx.dim_eps})

    if args.json:
        print(json.dumps({"schema": 1, "field": args.field, "rows": rows},
                         indent=2))
        return
    width = max((len(r["src"]) for r in rows), default=8)
    print(f"{'source':<{width}}  {'target':<{width}}  hom  eps")
    for r in rows:
        print(f"{r['src']:<{width}}  {r['dst']:<{width}}  "
              f"{r['hom']:>3}  {r['eps']:>3}")
    print(f"{len(rows)} pairs")


if __name__ == "__main__":
    main()
