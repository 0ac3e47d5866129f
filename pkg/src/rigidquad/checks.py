"""Executable consistency suites shared by ``rigidquad verify`` and the test-suite.

Each check returns a :class:`CheckResult`; nothing here raises on a failed
comparison.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import series as S
from .bijections import h_tree_to_quad, quad_to_h_tree, signature_allowed, submap_type
from .enumeration import (
    count_quads_recursive,
    enumerate_h_trees,
    enumerate_h_trees_hat,
    enumerate_pre_q_trees,
    enumerate_q_trees,
    enumerate_well_based,
    h_trees_recursive,
)
from .maps import E, N, QuadMap
from .render import immerse
from .trees import compose_phi_inv, decompose_phi, psi, psi_hat, psi_hat_inv, psi_inv


@dataclass
class CheckResult:
    name: str
    ok: bool
    detail: str = ""
    failures: list = field(default_factory=list)

    def line(self) -> str:
        return f"{'PASS' if self.ok else 'FAIL'} {self.name}" + (f": {self.detail}" if self.detail else "")


def _result(name, failures, detail=""):
    return CheckResult(name, not failures, detail if not failures else f"{len(failures)} failures, first: {failures[0]}",
                       failures)


# ---------------------------------------------------------------------------
# series


def check_r_series(order: int = 10) -> CheckResult:
    r = S.solve_r(order)
    failures = []
    if [r[n] for n in range(1, 5)] != [1, -2, -4, -20]:
        failures.append(f"R starts {[r[n] for n in range(1, 5)]}")
    if any(S.r_defining_residual(r).coeffs):
        failures.append("R does not satisfy its defining equation")
    return _result("R-series golden check", failures, f"exact through t^{order}")


F = Fraction
# displayed expansions through t^3, keyed by (power of x, power of y)
GOLDEN_TRI = {
    "delta": [
        {},
        {(1, 1): F(1)},
        {(1, 2): F(1), (2, 1): F(1), (2, 2): F(1, 2)},
        {(1, 2): F(2), (1, 3): F(2), (2, 1): F(2), (2, 2): F(1), (2, 3): F(1),
         (3, 1): F(2), (3, 2): F(1), (3, 3): F(1, 3)},
    ],
    "b": [
        {},
        {(1, 1): F(1)},
        {(1, 2): F(1), (2, 1): F(1), (2, 2): F(1)},
        {(1, 2): F(2), (1, 3): F(2), (2, 1): F(2), (2, 2): F(1), (2, 3): F(2),
         (3, 1): F(2), (3, 2): F(2), (3, 3): F(1)},
    ],
    "c": [
        {},
        {(1, 1): F(1)},
        {(1, 2): F(1), (2, 1): F(1)},
        {(1, 2): F(2), (1, 3): F(2), (2, 1): F(2), (2, 2): F(1), (3, 1): F(2)},
    ],
}


def check_tri_golden() -> CheckResult:
    failures = []
    for name, golden in GOLDEN_TRI.items():
        s = S.named_series(name, 3)
        for n, want in enumerate(golden):
            got = {k: v for k, v in s.terms[n].items() if v}
            if got != want:
                failures.append(f"{name} t^{n}: {got} != {want}")
    return _result("Delta/B/C golden check", failures, "exact through t^3")


def check_series_identities() -> CheckResult:
    failures = []
    q0 = S.q_series(0, 20)
    if q0 != S.UniSeries.t(20):
        failures.append("Q^(0) != t")
    d = S.delta_series(8)
    b, c = S.b_series(8), S.c_series(8)
    one = S.TriSeries.constant(1, 8)
    if b != d.exp() - one:
        failures.append("B != exp(Delta) - 1")
    if c != one - (-d).exp():
        failures.append("C != 1 - exp(-Delta)")
    if b != c * (one - c).reciprocal():
        failures.append("B != C / (1 - C)")
    total = S.UniSeries.zero(20)
    for p in range(1, 21):
        total = total + S.h_series(p, 20)
    if S.h_series(-1, 20) != total:
        failures.append("F^(-1) != sum of F^(p), p = 1..20")
    return _result("series identities", failures)


def check_multiplicative_sum(m_max: int = 12) -> CheckResult:
    failures = [m for m in range(m_max + 1) if S.multiplicative_sum(m) != 1]
    return _result("multiplicative sum", failures, f"equals 1 for m <= {m_max}")


# ---------------------------------------------------------------------------
# enumeration oracles


def check_counts(max_n: int = 6, bases=(-3, -2, -1, 1, 2, 3), quad_n: int = 7, quad_p: int = 4) -> CheckResult:
    failures = []
    for p in bases:
        q = S.q_series(p, max_n)
        h = S.h_series(p, max_n)
        for n in range(1, max_n + 1):
            pre = enumerate_pre_q_trees(n, p)
            if len(pre) != S.pre_q_count(n, p):
                failures.append(f"pre-Q n={n} p={p}")
            if len(enumerate_q_trees(n, p)) != q[n]:
                failures.append(f"Q n={n} p={p}")
            wb = enumerate_well_based(n, p)
            hs = h_trees_recursive(n, p)
            if len(wb) != h[n] or len(hs) != h[n]:
                failures.append(f"well-based/H n={n} p={p}")
            if set(enumerate_h_trees(n, p)) != set(hs):
                failures.append(f"H enumerators disagree n={n} p={p}")
            if p < 0 and set(enumerate_h_trees_hat(n, p).get(p, [])) != set(hs):
                failures.append(f"H enumerators disagree n={n} p={p}")
    for p in range(-quad_p, quad_p + 1):
        f = S.h_series(p, quad_n)
        for n in range(1, quad_n + 1):
            if count_quads_recursive(p, n) != f[n]:
                failures.append(f"quads n={n} p={p}")
    return _result("oracle equivalence (counts)", failures, f"n <= {max_n}")


# ---------------------------------------------------------------------------
# bijections and invariants


def map_problems(m: QuadMap) -> list[str]:
    """Structural invariants every generated map must satisfy."""
    if m.point:
        return []
    out = list(m.validate().violations)
    if m.turning_number() != 4:
        out.append(f"turning number {m.turning_number()}")
    g = immerse(m)
    if sum(k for _, k in g.overlaps) != m.num_faces:
        out.append("overlaps do not add up to the face count")
    if g.boundary[0] != g.boundary[-1]:
        out.append("immersed contour does not close")
    inner = {(f, d) for f, row in enumerate(m.nbr) for d in (E, N) if row[d] >= 0}
    seen = [e for r in m.rays for e in r.edges]
    if len(seen) != len(set(seen)) or set(seen) != inner:
        out.append("rays do not partition the inner edges")
    return out


def check_round_trips(max_n: int = 5, max_p: int = 3) -> tuple[CheckResult, CheckResult]:
    """Exhaustive round trips, plus the structural invariants on every map met."""
    failures = []
    structural = []
    total = 0
    for p in [x for x in range(-max_p, max_p + 1) if x]:
        for n in range(1, max_n + 1):
            for t in enumerate_pre_q_trees(n, p):
                if compose_phi_inv(*decompose_phi(t)) != t:
                    failures.append(f"phi {t}")
            for q in enumerate_well_based(n, p):
                if psi(psi_inv(q)) != q:
                    failures.append(f"psi {q}")
            if p < 0:
                for q in enumerate_q_trees(n, p):
                    if psi_hat(psi_hat_inv(q), p) != q:
                        failures.append(f"psi_hat {q}")
            seen = set()
            for h in h_trees_recursive(n, p):
                total += 1
                if psi_inv(psi(h)) != h:
                    failures.append(f"psi_inv {h}")
                m = h_tree_to_quad(h)
                for msg in map_problems(m):
                    structural.append(f"{h}: {msg}")
                if m in seen:
                    failures.append(f"two trees give one map {h}")
                seen.add(m)
                if quad_to_h_tree(m) != h:
                    failures.append(f"quad_to_h_tree {h}")
                elif h_tree_to_quad(quad_to_h_tree(m)) != m:
                    failures.append(f"h_tree_to_quad {h}")
    return (_result("bijection round trips", failures, f"{total} maps, n <= {max_n}, |p| <= {max_p}"),
            _result("structural invariants", structural, f"{total} maps"))


# hand transcription of the signature table: (sign a, sign b, p < 0, k > 0) -> cell
_TABLE = {
    # b < 0
    (-1, -1, True, False): "Gbar", (-1, -1, False, False): "I",
    (0, -1, True, False): "Lbar", (0, -1, False, False): "I",
    (1, -1, True, False): "Lbar", (1, -1, False, False): "R",
    (-1, -1, True, True): "Gbar", (-1, -1, False, True): "I",
    (0, -1, True, True): "Gbar", (0, -1, False, True): "I",
    (1, -1, True, True): "II", (1, -1, False, True): "R",
    # b = 0
    (-1, 0, True, False): "Rbar", (-1, 0, False, False): "I",
    (0, 0, True, False): "I", (0, 0, False, False): "G",
    (1, 0, True, False): "I", (1, 0, False, False): "G",
    (-1, 0, True, True): "Gbar", (-1, 0, False, True): "I",
    (0, 0, True, True): "Gbar", (0, 0, False, True): "I",
    (1, 0, True, True): "II", (1, 0, False, True): "R",
    # b > 0
    (-1, 1, True, False): "Rbar", (-1, 1, False, False): "L",
    (0, 1, True, False): "I", (0, 1, False, False): "G",
    (1, 1, True, False): "I", (1, 1, False, False): "G",
    (-1, 1, True, True): "II", (-1, 1, False, True): "L",
    (0, 1, True, True): "II", (0, 1, False, True): "L",
    (1, 1, True, True): "II", (1, 1, False, True): "II",
}


def _sign(x: int) -> int:
    return (x > 0) - (x < 0)


def check_signature_table() -> CheckResult:
    failures = []
    for p in [x for x in range(-4, 5) if x]:
        for a in range(-4, 5):
            for b in range(-4, 5):
                for k in range(0, 7):
                    cell = _TABLE[(_sign(a), _sign(b), p < 0, k > 0)]
                    holds = p == a + b - k + 1
                    if cell == "I" and holds:
                        failures.append(f"cell I is reachable at {(p, a, b, k)}")
                    want = holds and cell not in ("I", "II")
                    got = signature_allowed((p, a, b, k))
                    if got != want:
                        failures.append(f"{(p, a, b, k)} allowed={got}, table says {cell}")
                    elif got and submap_type((p, a, b, k)) != cell:
                        failures.append(f"{(p, a, b, k)} type {submap_type((p, a, b, k))}, table says {cell}")
    return _result("signature table", failures, "grid p,a,b in [-4,4], k in [0,6]")


def series_suite() -> list[CheckResult]:
    return [check_r_series(), check_tri_golden(), check_series_identities(), check_multiplicative_sum()]


def bijection_suite(max_n: int = 5) -> list[CheckResult]:
    return [check_signature_table(), check_counts(max_n=max_n, quad_n=max_n + 1), *check_round_trips(max_n)]
