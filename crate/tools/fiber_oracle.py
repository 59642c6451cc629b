"""Independent brute-force oracle for the fiber golden list.

Enumerates canonical points [x:y:z] with |x|,|y|,|z| <= B on which both Z and
Y^2 Z - X^3 take values in {+-2^a 3^b}, then groups them by the pencil member
[X^3 : -Y^2 Z] through them. Prints one "s,t,count" line per member.
"""

import sys
from collections import Counter
from math import gcd

import numpy as np

B = int(sys.argv[1]) if len(sys.argv) > 1 else 1000
PRIMES = (2, 3)


def is_unit(v):
    v = np.abs(v)
    ok = v != 0
    v = np.where(ok, v, 1)
    for p in PRIMES:
        while True:
            m = (v % p == 0) & (v > 1)
            if not m.any():
                break
            v = np.where(m, v // p, v)
    return ok & (v == 1)


def canonical(x, y, z):
    g = gcd(gcd(abs(x), abs(y)), abs(z))
    x, y, z = x // g, y // g, z // g
    first = next(c for c in (x, y, z) if c != 0)
    if first < 0:
        x, y, z = -x, -y, -z
    return x, y, z


def main():
    r = np.arange(-B, B + 1, dtype=np.int64)
    xs, ys = np.meshgrid(r, r, indexing="ij")
    points = set()
    for z in range(-B, B + 1):
        if z == 0 or not is_unit(np.array([z]))[0]:
            continue
        vals = ys * ys * z - xs ** 3
        mask = is_unit(vals)
        for x, y in zip(xs[mask].tolist(), ys[mask].tolist()):
            if gcd(gcd(abs(x), abs(y)), abs(z)) == 1:
                points.add(canonical(x, y, z))
    fibers = Counter()
    for x, y, z in points:
        s, t = x ** 3, -(y * y * z)
        g = gcd(abs(s), abs(t))
        s, t = s // g, t // g
        if s < 0 or (s == 0 and t < 0):
            s, t = -s, -t
        fibers[(s, t)] += 1
    print(f"# points {len(points)}", file=sys.stderr)
    print("s,t,count")
    for (s, t), c in sorted(fibers.items()):
        print(f"{s},{t},{c}")


if __name__ == "__main__":
    main()
