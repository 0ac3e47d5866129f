"""Acceptance criteria 1-9, each reported as one PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -s`` or directly with
``python tests/test_acceptance.py``.
"""

import random
import sys
import time
from collections import Counter
from fractions import Fraction
from functools import lru_cache

from scipy.stats import chisquare

from rigidquad import checks
from rigidquad.enumeration import enumerate_bcd, enumerate_quads
from rigidquad.sampling import sample_delta_type, sample_rigid_quad

SIGNIFICANCE = 0.001
DRAWS = 10**5


def _timed(fn, *args):
    start = time.perf_counter()
    out = fn(*args)
    return out, time.perf_counter() - start


def _line(number, result, seconds, limit):
    ok = result.ok and seconds < limit
    detail = result.detail
    if result.ok and not ok:
        detail += f"; over the {limit} s limit"
    return ok, f"{'PASS' if ok else 'FAIL'} criterion {number} ({result.name}): {detail} [{seconds:.1f} s]"


@lru_cache(maxsize=None)
def _round_trips():
    return _timed(checks.check_round_trips, 5, 3)


def chi_square(counts: Counter, family: list, weights: list) -> float:
    """p-value of observed counts against expected weights; unseen outcomes count as zero."""
    assert set(counts) <= set(family), "sampler produced a map outside the family"
    total = sum(counts.values())
    wsum = sum(weights)
    expected = [float(total * w / wsum) for w in weights]
    observed = [counts.get(m, 0) for m in family]
    return float(chisquare(observed, expected).pvalue)


class Criterion:
    def c1():
        r, s = _timed(checks.check_r_series, 10)
        return _line(1, r, s, 1)

    def c2():
        r, s = _timed(checks.check_tri_golden)
        return _line(2, r, s, 1)

    def c3():
        r, s = _timed(checks.check_series_identities)
        return _line(3, r, s, 10)

    def c4():
        r, s = _timed(checks.check_counts, 6, (-3, -2, -1, 1, 2, 3), 7, 4)
        return _line(4, r, s, 60)

    def c5():
        (r, _), s = _round_trips()
        return _line(5, r, s, 120)

    def c6():
        r, s = _timed(checks.check_signature_table)
        return _line(6, r, s, 1)

    def c7():
        (_, r), s = _round_trips()
        return _line(7, r, s, 120)

    def c8():
        start = time.perf_counter()
        rng = random.Random(20240601)
        details = []
        ok = True
        # conditioned quad sampler, p = 1 and n = 4
        family = enumerate_quads(4, 1)
        counts = Counter(sample_rigid_quad(1, 4, 4, rng)[0] for _ in range(DRAWS))
        pv = chi_square(counts, family, [1] * len(family))
        ok &= len(family) == 10 and pv > SIGNIFICANCE
        details.append(f"quad p=1 n=4: {len(family)} maps, p-value {pv:.3f}")
        # Delta-type: (2,2) at the smallest n with more than one map, then (3,3) where degeneracies differ
        for p, q, n, draws in ((2, 2, 4, DRAWS), (3, 3, 4, DRAWS // 3)):
            fam = enumerate_bcd("delta", p, q, n)
            maps = [m for m, _ in fam]
            weights = [Fraction(1, d) for _, d in fam]
            counts = Counter(sample_delta_type(p, q, n + 1, n, rng)[0] for _ in range(draws))
            pv = chi_square(counts, maps, weights)
            ok &= len(maps) > 1 and pv > SIGNIFICANCE
            degs = sorted(Counter(d for _, d in fam).items())
            details.append(f"delta p={p} q={q} n={n}: degeneracies {degs}, p-value {pv:.3f}")
        seconds = time.perf_counter() - start
        r = checks.CheckResult("sampler uniformity", ok, "; ".join(details))
        return _line(8, r, seconds, 120)

    def c9():
        r, s = _timed(checks.check_multiplicative_sum, 12)
        return _line(9, r, s, 1)


def _run(number, acceptance):
    ok, line = getattr(Criterion, f"c{number}")()
    acceptance(line)
    assert ok, line


def test_criterion_1_r_series(acceptance):
    _run(1, acceptance)


def test_criterion_2_bivariate_golden(acceptance):
    _run(2, acceptance)


def test_criterion_3_series_identities(acceptance):
    _run(3, acceptance)


def test_criterion_4_oracle_counts(acceptance):
    _run(4, acceptance)


def test_criterion_5_round_trips(acceptance):
    _run(5, acceptance)


def test_criterion_6_signature_table(acceptance):
    _run(6, acceptance)


def test_criterion_7_structural_invariants(acceptance):
    _run(7, acceptance)


def test_criterion_8_sampler_uniformity(acceptance):
    _run(8, acceptance)


def test_criterion_9_multiplicative_sum(acceptance):
    _run(9, acceptance)


if __name__ == "__main__":
    failed = 0
    for k in range(1, 10):
        ok, line = getattr(Criterion, f"c{k}")()
        print(line, flush=True)
        failed += not ok
    sys.exit(1 if failed else 0)
