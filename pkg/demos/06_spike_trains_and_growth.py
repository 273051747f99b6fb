#!/usr/bin/env python3
"""Single spike trains: variation budget 2 in, unbounded image norms out.

Take any two points u, w at distance g <= 1 and alternate between them
m = floor(g^-p) times.  Each round trip costs 2 g^p of p-variation, so the
budget never exceeds 2 m g^p <= 2 regardless of how close the pair is.
Compose with a rough map and each round trip instead pays the image gap
|f(u) - f(w)|^q, which the floor formula cannot cancel: picking pairs ever
closer to a non-Holder point sends the composed variation to infinity
while every input stays inside the same variation ball.

The second family fixes one point u and raises the spike count n directly:
the composed variation norm grows like sqrt(n) |f(u) - f(0)|, killing
boundedness on variation balls for any map that moves some point.
"""

import numpy as np

from pvarkit import pvar
from pvarkit.lab import gen_remark_spikes, gen_thm6_spikes
from pvarkit.operators import Generator, compose_path
from pvarkit.spaces import Vector, diff_norm
from pvarkit.variation import bv_norm


def main():
    p, q = 1.0, 2.0
    f = Generator.power(0.25)
    rng = np.random.default_rng(1)

    print("gap        m     var_p(x)   var_q(f o x)   m |f(u)-f(w)|^q")
    print("-" * 62)
    for gap in (0.9, 0.5, 0.2, 0.08, float(rng.uniform(0.05, 1.0))):
        u, w = Vector.dense([gap]), Vector.dense([0.0])
        path = gen_thm6_spikes(u, w, p)
        m = (len(path) - 2) // 2
        fgap = diff_norm(f(u), f(w))
        print(
            "%-10.4g %-5d %-10.4g %-14.6g %.6g"
            % (gap, m, pvar(path, p).value,
               pvar(compose_path(f, path), q).value, m * fgap ** q)
        )
    print("\nvar_p never passes 2; the composed column tracks its lower bound.")

    g = Generator.power(0.5)
    u = Vector.dense([0.81])
    fgap = diff_norm(g(u), g(u.space.zero()))
    print("\nn      |f o x_n|_q    sqrt(n) |f(u)-f(0)|")
    print("-" * 44)
    for n in (1, 4, 16, 64, 256):
        path = gen_remark_spikes(u, n)
        print("%-6d %-14.6g %.6g"
              % (n, bv_norm(compose_path(g, path), q), np.sqrt(n) * fgap))
    print("\nSpike paths cost nothing to build and everything to compose:")
    print("that asymmetry is the whole story of these counterexamples.")


if __name__ == "__main__":
    main()
