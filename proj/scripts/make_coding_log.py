"""Builds fixtures/coding_log.csv: 14 subjects x 7 texts with a rate
distribution pinned to mean 3.99, median 4.06, std 0.94, min 1.80, max 5.91."""

import csv
import sys

import numpy as np
from scipy import optimize

LENGTHS = [673, 891, 1287, 1455, 1822, 2011, 2344]
DEPTHS = [2, 3, 3, 2, 4, 3, 3]
EXPERTISE = [
    [0.7, 0.6, 0.9, 1.0, 0.5, 0.8, 0.8],
    [0.7, 0.9, 0.9, 1.0, 0.5, 0.8, 0.8],
    [0.8, 0.6, 0.6, 1.0, 0.6, 0.8, 0.8],
    [0.8, 0.5, 0.6, 1.0, 0.6, 0.9, 0.9],
    [0.6, 0.8, 0.9, 0.6, 0.6, 0.8, 0.8],
    [0.6, 0.9, 0.9, 0.6, 0.6, 0.8, 0.8],
    [0.8, 1.0, 0.5, 0.9, 0.5, 0.7, 0.9],
    [0.7, 1.0, 0.9, 0.9, 0.6, 0.8, 1.0],
] + [[v] * 7 for v in (0.3, 0.2, 0.1, 0.1, 0.1, 0.1)]

MEAN, MEDIAN, STD, LO, HI = 3.99, 4.06, 0.94, 1.80, 5.91


def pinned(raw):
    order = np.argsort(raw, kind="stable")
    n = len(raw)
    lower = order[1 : n // 2 - 1]
    upper = order[n // 2 + 1 : n - 1]
    base = np.empty(n)
    base[order[0]], base[order[-1]] = LO, HI
    base[order[n // 2 - 1]] = base[order[n // 2]] = MEDIAN

    def squash(values, lo, hi):
        t = (values - values.min()) / (values.max() - values.min())
        return lo + 0.02 + t * (hi - lo - 0.04)

    lo_part = squash(raw[lower], LO, MEDIAN)
    hi_part = squash(raw[upper], MEDIAN, HI)

    # Power-warp each half; the warp keeps rank order and the pinned points.
    def build(params):
        a, b = np.exp(params)
        out = base.copy()
        out[lower] = LO + (MEDIAN - LO) * ((lo_part - LO) / (MEDIAN - LO)) ** a
        out[upper] = MEDIAN + (HI - MEDIAN) * ((hi_part - MEDIAN) / (HI - MEDIAN)) ** b
        return out

    def residual(params):
        r = build(params)
        return [r.mean() - MEAN, r.std() - STD]

    sol = optimize.least_squares(residual, [0.0, 0.0], xtol=1e-15, ftol=1e-15, gtol=1e-15)
    return build(sol.x)


def main(path):
    rng = np.random.default_rng(155)
    rows = []
    for s, levels in enumerate(EXPERTISE, start=1):
        for t in range(7):
            rows.append((s, t, levels[t]))
    expertise = np.array([r[2] for r in rows])
    depth = np.array([DEPTHS[r[1]] for r in rows], dtype=float)
    raw = 5.2 - 0.6 * expertise - 0.5 * depth + rng.normal(0, 0.75, len(rows))
    rates = pinned(raw)

    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["subject", "text", "chars", "depth", "expertise", "seconds"])
        for (s, t, e), rate in zip(rows, rates):
            seconds = rate * LENGTHS[t]
            w.writerow([f"s{s:02d}", f"t{t + 1}", LENGTHS[t], DEPTHS[t], e, f"{seconds:.6f}"])

    got = np.array([float(r[5]) / r[2] for r in csv.reader(open(path)) if r[0] != "subject" for r in [[*r[:2], int(r[2]), *r[3:]]]])
    print("mean %.4f median %.4f std %.4f min %.4f max %.4f" % (got.mean(), np.median(got), got.std(), got.min(), got.max()))
    print("corr expertise %.4f depth %.4f" % (np.corrcoef(got, expertise)[0, 1], np.corrcoef(got, depth)[0, 1]))


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "fixtures/coding_log.csv")
