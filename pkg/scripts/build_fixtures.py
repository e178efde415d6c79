"""Regenerate the committed oracle fixtures under tests/data/.

Needs two things that the package itself never imports:

* the PARI ``elldata`` tables (Cremona's curves), e.g. the
  ``passagemath-pari-elldata`` wheel, passed with ``--elldata``;
* ``cypari2``, used as an independent reference for conductors,
  Tamagawa numbers, torsion and isogenies.

    PYTHONPATH=/path/to/cypari2 python scripts/build_fixtures.py --elldata elldata.whl
"""
import argparse
import random
import re
import zipfile
from math import gcd
from pathlib import Path

import cypari2

pari = cypari2.Pari()
pari.allocatemem(2 * 10**9, silent=True)

DATA = Path(__file__).resolve().parent.parent / "tests" / "data"
ENTRY = re.compile(r'\["(\d+)([a-z]+)(\d+)",\[(-?\d+),(-?\d+),(-?\d+),(-?\d+),(-?\d+)\]')


def kodaira(kod):
    kod = int(kod)
    if kod == 1:
        return "I0"
    if kod in (2, 3, 4):
        return ["II", "III", "IV"][kod - 2]
    if kod > 4:
        return f"I{kod - 4}"
    if kod == -1:
        return "I0*"
    if kod in (-2, -3, -4):
        return ["II*", "III*", "IV*"][-kod - 2]
    return f"I{-kod - 4}*"


def local_rows(ainvs):
    E = pari.ellinit(ainvs)
    N = int(pari.ellglobalred(E)[0])
    rows = []
    for p in [int(q) for q in pari.factor(N)[0]]:
        f, kod, _, c = pari.elllocalred(E, p)
        kind = "additive"
        if int(f) == 1:
            kind = "split" if int(pari.ellap(E, p)) == 1 else "nonsplit"
        rows.append((p, kodaira(kod), int(f), int(c), kind))
    return N, rows


def cremona(elldata, out, max_conductor=1000):
    z = zipfile.ZipFile(elldata)
    text = z.read("sage_wheels/share/pari/elldata/ell0").decode()
    if max_conductor >= 1000:
        text += z.read("sage_wheels/share/pari/elldata/ell1").decode()
    lines = ["# Cremona curves with conductor <= %d (allcurves layout + Tamagawa product)" % max_conductor,
             "# N class index [a1,a2,a3,a4,a6] rank torsion tamagawa"]
    for m in ENTRY.finditer(text):
        N = int(m.group(1))
        if N > max_conductor:
            continue
        ainvs = [int(m.group(i)) for i in range(4, 9)]
        E = pari.ellinit(ainvs)
        g = pari.ellglobalred(E)
        assert int(g[0]) == N
        rank = int(pari.ellanalyticrank(E)[0])
        tors = int(pari.elltors(E)[0])
        lines.append("%d %s %s [%s] %d %d %d" % (N, m.group(2), m.group(3), ",".join(map(str, ainvs)),
                                                  rank, tors, int(g[2])))
    out.write_text("\n".join(lines) + "\n")
    print(out, len(lines) - 2)


def random_curves(rng, count):
    """Small random models plus models built to be additive (often non-minimal) at 2 and 3."""
    curves = []
    while len(curves) < count:
        kind = rng.random()
        if kind < 0.4:
            a = [rng.randint(0, 1), rng.randint(-1, 1), rng.randint(0, 1),
                 rng.randint(-300, 300), rng.randint(-3000, 3000)]
        else:
            p = rng.choice([2, 3, 2, 3, 5, 7])
            k = rng.randint(1, 3)
            a = [rng.randint(-3, 3) * p ** rng.randint(0, k), rng.randint(-5, 5) * p ** rng.randint(0, 2 * k),
                 rng.randint(-5, 5) * p ** rng.randint(0, 3 * k), rng.randint(-50, 50) * p ** rng.randint(0, 4 * k),
                 rng.randint(-500, 500) * p ** rng.randint(0, 6 * k)]
        if pari.ellinit(a).disc() == 0:
            continue
        curves.append(a)
    return curves


def localdata(out, seed=20240601, count=1500):
    rng = random.Random(seed)
    lines = ["# [a1,a2,a3,a4,a6] | minimal model | N | tau | p:kodaira:f:c:kind ..."]
    for a in random_curves(rng, count):
        E = pari.ellinit(a)
        M = [int(x) for x in pari.ellminimalmodel(E)[:5]]
        N, rows = local_rows(M)
        tau = 1
        for r in rows:
            tau *= r[3]
        loc = " ".join("%d:%s:%d:%d:%s" % r for r in rows)
        lines.append("[%s] | [%s] | %d | %d | %s" % (",".join(map(str, a)), ",".join(map(str, M)), N, tau, loc))
    out.write_text("\n".join(lines) + "\n")
    print(out, len(lines) - 1)


def torsion_points(E):
    tors = pari.elltors(E)
    gens = list(tors[2])
    orders = [int(o) for o in tors[1]]
    pts = {}
    for i in range(orders[0] if orders else 1):
        for j in range(orders[1] if len(orders) > 1 else 1):
            P = [0]
            if orders:
                P = pari.elladd(E, P, pari.ellmul(E, gens[0], i))
            if len(orders) > 1:
                P = pari.elladd(E, P, pari.ellmul(E, gens[1], j))
            pts[str(P)] = P
    return int(tors[0]), [int(o) for o in orders], list(pts.values())


def isogenies(out, cremona_file, seed=777, count=120, extra=80):
    """Frey-type curves (random coprime a<b, twists) and Cremona curves with torsion,
    each with its torsion data and depth-1 codomains."""
    rng = random.Random(seed)
    lines = ["# [a1,a2,a3,a4,a6] | torsion order | structure | minimal models of E/<P> for every torsion point P (';'-separated)"]
    models = []
    for a, b in [(1, 8), (1, 48), (5, 27), (1, 80), (1, 63), (3, 125), (1, 4374), (2, 6436341)]:
        models.append([0, b - a, 0, -a * b, 0])
    while len(models) < count:
        a = rng.randint(1, 3000)
        b = rng.randint(a + 1, 6000)
        if gcd(a, b) != 1:
            continue
        d = rng.choice([1, -1, 2, -2, 3, -3, 5, -5, 6, -6])
        models.append([0, d * (b - a), 0, -d * d * a * b, 0])
    rows = [l.split() for l in cremona_file.read_text().splitlines() if not l.startswith("#")]
    rows = [r for r in rows if int(r[5]) > 1]
    for r in rng.sample(rows, extra):
        models.append([int(x) for x in r[3].strip("[]").split(",")])
    for ainvs in models:
        E = pari.ellinit(ainvs)
        n, struct, pts = torsion_points(E)
        cods = set()
        for P in pts:
            if P == pari([0]):
                M = pari.ellminimalmodel(E)
            else:
                M = pari.ellminimalmodel(pari.ellinit(pari.ellisogeny(E, P)[0]))
            cods.add("[%s]" % ",".join(str(int(x)) for x in M[:5]))
        lines.append("[%s] | %d | %s | %s" % (",".join(map(str, ainvs)), n, "x".join(map(str, struct)) or "1",
                                               ";".join(sorted(cods))))
    out.write_text("\n".join(lines) + "\n")
    print(out, len(models))


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--elldata", required=True)
    args = ap.parse_args()
    DATA.mkdir(parents=True, exist_ok=True)
    cremona(args.elldata, DATA / "cremona_1000.txt")
    localdata(DATA / "localdata_pari.txt")
    isogenies(DATA / "isogeny_pari.txt", DATA / "cremona_1000.txt")


if __name__ == "__main__":
    main()
