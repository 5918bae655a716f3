#!/usr/bin/env python3
"""Writes the fixture files under fixtures/.

Polynomials are coefficient lists (ascending degree) of complex numbers; all
coefficients are dyadic rationals so products and sums of fixture data are
exact in binary64. H is built as F u_known wherever u_known is given.
"""
import json
import os
import sys


def pmul(a, b):
    out = [0j] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return trim(out)


def padd(a, b):
    n = max(len(a), len(b))
    a = a + [0j] * (n - len(a))
    b = b + [0j] * (n - len(b))
    return trim([x + y for x, y in zip(a, b)])


def trim(a):
    a = list(a)
    while len(a) > 1 and a[-1] == 0:
        a.pop()
    return a or [0j]


def matvec(f, u):
    h = []
    for row in f:
        acc = [0j]
        for fij, uj in zip(row, u):
            acc = padd(acc, pmul(fij, uj))
        h.append(acc)
    return h


def enc(p):
    return [[float(c.real), float(c.imag)] for c in trim([complex(c) for c in p])]


def fixture(fid, f, h=None, u=None, **extra):
    m, d = len(f), (len(f[0]) if f else 0)
    f = [[trim([complex(c) for c in p]) for p in row] for row in f]
    if u is not None:
        u = [trim([complex(c) for c in p]) for p in u]
        h = matvec(f, u)
    out = {"id": fid, "m": m, "d": d, "degree_cap": 8}
    out.update({k: v for k, v in extra.items() if k in ("k", "norm_mode")})
    out["F"] = [[enc(p) for p in row] for row in f]
    out["H"] = [[enc(p)] for p in h]
    if u is not None:
        out["u_known"] = [[enc(p)] for p in u]
    if "grid" in extra:
        out["grid"] = extra["grid"]
    return out


def main(outdir):
    z = [0, 1]
    fixtures = [
        fixture("scalar_trivial", [[[1], [0]]], h=[[1]], k=1),
        # det_1(FF*)^(3/2) >= |z - 1/2|^3 / 8 > |h| away from the common zero.
        fixture("wolff_scalar",
                [[[-1 / 4, 1 / 2], [0, -1 / 8, 1 / 4]]],
                u=[[1 / 32, -1 / 8, 1 / 8], [0]],
                k=1, norm_mode="at_most"),
        fixture("rank2_m2d3",
                [[[1 / 2], [0, 1 / 4], [0]],
                 [[0, 1 / 4], [1 / 2], [0, 0, 1 / 4]]],
                u=[[1 / 64], [0, 1 / 64], [1 / 64, -1 / 64]],
                k=2, norm_mode="at_most"),
        fixture("rank3_m3d4",
                [[[1 / 2], [0, 1 / 4], [0], [0]],
                 [[0], [1 / 2], [0, 1 / 4], [0]],
                 [[0], [0], [1 / 2], [0, 1 / 4]]],
                u=[[1 / 512], [0, 1 / 512], [0], [1 / 512, 1 / 1024]],
                k=3, norm_mode="at_most"),
        fixture("diag_rank1",
                [[[1], [0]], [[0], [0]]],
                u=[[1 / 4, 1 / 4], [0, 1 / 2]],
                k=1),
        # Second row is half the first: rank 1 with m = 2.
        fixture("dependent_rows",
                [[[1 / 2], [0, 1 / 4]], [[1 / 4], [0, 1 / 8]]],
                u=[[0, 1 / 8], [1 / 8]],
                k=1, norm_mode="at_most"),
        fixture("range_failure", [[[0, 1], [0]]], h=[[1]],
                grid={"radii": [0.0, 0.5], "angles": 8}),
        # [concat_a | concat_b] is the rank2_m2d3 matrix.
        fixture("concat_a",
                [[[1 / 2], [0, 1 / 4]], [[0, 1 / 4], [1 / 2]]],
                h=matvec([[[1 / 2], [0, 1 / 4], [0]],
                          [[0, 1 / 4], [1 / 2], [0, 0, 1 / 4]]],
                         [[1 / 64], [0, 1 / 64], [1 / 64, -1 / 64]]),
                norm_mode="at_most"),
        fixture("concat_b", [[[0]], [[0, 0, 1 / 4]]], h=[[0], [0]],
                norm_mode="at_most"),
        fixture("empty_b", [[], []], h=[[0], [0]], norm_mode="at_most"),
    ]
    os.makedirs(outdir, exist_ok=True)
    for fx in fixtures:
        with open(os.path.join(outdir, fx["id"] + ".json"), "w") as fh:
            json.dump(fx, fh, indent=1)
            fh.write("\n")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else
         os.path.join(os.path.dirname(__file__), "..", "fixtures"))
