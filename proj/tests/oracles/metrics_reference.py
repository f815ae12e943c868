"""Reference values for tests/test_metrics.cpp.

Hypervolume is computed by inclusion-exclusion over box intersections (exact,
exponential in the set size, fine for <= 8 points). Rank-sum p-values come
from scipy.stats.mannwhitneyu (asymptotic, continuity-corrected, two-sided).
"""
import itertools
import math

from scipy.stats import mannwhitneyu


def hv_exact(points, ref):
    pts = [p for p in points if all(a < r for a, r in zip(p, ref))]
    total = 0.0
    for k in range(1, len(pts) + 1):
        for combo in itertools.combinations(pts, k):
            corner = [max(c) for c in zip(*combo)]
            vol = 1.0
            for c, r in zip(corner, ref):
                vol *= r - c
            total += (-1) ** (k + 1) * vol
    return total


def igd(ref, approx):
    return sum(min(math.dist(r, a) for a in approx) for r in ref) / len(ref)


def main():
    print("hv 2d two points:", repr(hv_exact([(0.25, 0.75), (0.75, 0.25)], (1, 1))))
    tri = [(0.1, 0.6, 0.7), (0.5, 0.2, 0.4), (0.8, 0.9, 0.05), (0.3, 0.3, 0.9), (0.6, 0.5, 0.5)]
    print("hv 3d five points:", repr(hv_exact(tri, (1, 1, 1))))
    bi = [(0.1, 0.9), (0.2, 0.5), (0.4, 0.45), (0.7, 0.1), (0.9, 0.05), (0.5, 0.6)]
    print("hv 2d six points ref (1,1):", repr(hv_exact(bi, (1, 1))))
    print("igd example:", repr(igd([(0, 0), (1, 1)], [(0, 0)])))
    print("igd three:", repr(igd([(0, 1), (0.5, 0.5), (1, 0)], [(0.1, 0.9), (0.9, 0.2)])))

    a = [0.12, 0.31, 0.25, 0.18, 0.22, 0.27, 0.15]
    b = [0.35, 0.41, 0.29, 0.33, 0.38, 0.26, 0.44]
    r = mannwhitneyu(a, b, alternative="two-sided", method="asymptotic", use_continuity=True)
    print("mwu a,b U=%r p=%r" % (r.statistic, r.pvalue))
    c = [1, 2, 2, 3, 3, 3, 4]
    d = [2, 3, 3, 4, 4, 5, 5, 6]
    r = mannwhitneyu(c, d, alternative="two-sided", method="asymptotic", use_continuity=True)
    print("mwu ties U=%r p=%r" % (r.statistic, r.pvalue))
    e = list(range(1, 21))
    f = list(range(101, 121))
    r = mannwhitneyu(e, f, alternative="two-sided", method="asymptotic", use_continuity=True)
    print("mwu 1..20 vs 101..120 U=%r p=%r" % (r.statistic, r.pvalue))


if __name__ == "__main__":
    main()
