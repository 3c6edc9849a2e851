#!/usr/bin/env python3
"""Generate a newform snapshot file using PARI/GP (via cypari2).

Computes the newspace S_2^new(2q^2, kronecker(q, .)), splits it into Galois
orbits and writes the characteristic polynomial of a_p for every prime
p < PMAX with p not dividing 2q.

    pip install cypari2
    python3 tools/pari_snapshot.py 17 data/snapshots/q17.json
    python3 tools/pari_snapshot.py 17 out.json --embeddings   # numeric form
"""
import argparse
import json
import string
import sys

import cypari2

SAFE = 2**53


def jint(n):
    n = int(n)
    return n if abs(n) < SAFE else str(n)


def letters(i):
    s = ""
    i += 1
    while i > 0:
        i, r = divmod(i - 1, 26)
        s = string.ascii_lowercase[r] + s
    return s


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("q", type=int)
    ap.add_argument("out")
    ap.add_argument("--pmax", type=int, default=100)
    ap.add_argument("--embeddings", action="store_true")
    ap.add_argument("--mem", type=int, default=4 * 10**9)
    args = ap.parse_args()

    pari = cypari2.Pari()
    pari.allocatemem(args.mem, silent=True)
    pari.set_real_precision(60)
    q = args.q
    level = 2 * q * q
    pari(f"mf = mfinit([{level}, 2, {q}], 0)")
    total = int(pari("mfdim(mf)"))
    pari("L = mfsplit(mf,, 1)")
    pari("B = mfeigenbasis(mf)")
    primes = [int(p) for p in pari(f"primes([3, {args.pmax}])") if (2 * q) % int(p) != 0]
    nclass = int(pari("#B"))
    # sort classes by (dim, traces of a_p) for stable labels
    rows = []
    for i in range(1, nclass + 1):
        dim = int(pari(f"poldegree(mffields(mf)[{i}])"))
        coefs = pari(f"mfcoefs(B[{i}], {args.pmax})")
        pol = pari(f"mffields(mf)[{i}]")
        aps = {}
        for p in primes:
            a = coefs[p]
            if args.embeddings:
                pari("default(realprecision, 60)")
                emb = pari.mfembed(pari(f"B[{i}]"), a)
                vals = [complex(z) for z in (emb if emb.type() == "t_VEC" else [emb])]
                aps[str(p)] = {
                    "embeddings": [[v.real, v.imag] for v in vals],
                    "err": 1e-12,
                }
            else:
                if a.type() == "t_POLMOD":
                    cp = pari.charpoly(pari.Mod(pari.lift(a), pol), "x")
                else:
                    cp = pari(f"(x - ({a}))^{dim}")
                coeffs = [jint(c) for c in pari.Vecrev(cp)]
                aps[str(p)] = {"charpoly": coeffs}
        tr = [int(pari(f"trace(Mod(lift({coefs[p]}), {pol}))")) if dim > 1 else int(coefs[p]) for p in primes[:6]]
        rows.append((dim, tr, aps))
    rows.sort(key=lambda r: (r[0], r[1]))
    classes = []
    for j, (dim, _, aps) in enumerate(rows):
        classes.append({"label": f"{level}.2.q{q}.{letters(j)}", "dim": dim, "ap": aps})
    doc = {
        "q": q,
        "level": level,
        "weight": 2,
        "char_conductor": q,
        "total_dim": total,
        "classes": classes,
    }
    with open(args.out, "w") as fh:
        json.dump(doc, fh, separators=(",", ":"))
        fh.write("\n")
    print(f"q={q} level={level} dim={total} classes={len(classes)}", file=sys.stderr)


if __name__ == "__main__":
    main()
