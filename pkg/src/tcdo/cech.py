"""Bigraded Čech cohomology of the degree-n chiral sheaf on the two-chart
cover of the projective line.

For each bidegree (conformal weight N, h-weight mu) the two-term complex

    Gamma(C_0) (+) Gamma(C_oo)  --delta-->  Gamma(C*)
    delta(s_0, s_oo) = incl(s_0) - Phi_n(s_oo)

is a finite exact-rational matrix; H^0 is its kernel and H^1 its cokernel.
Global h-weight of a section over the infinity chart is minus its intrinsic
one (the gluing negates mu), so the C^0 block at global mu draws on the
intrinsic bidegree (N, -mu) over there.

Depth slices alone are infinite (the ground polynomials are unbounded), so
every aggregate q-character is taken over an explicit mu window whose
sufficiency is re-verified by scanning a doubled window — the ``stable``
flag on a report records that nothing nonzero lives outside the base window.
Blocks are pure functions of (n, N, mu) and may be evaluated concurrently;
reports merge deterministically by sorted bidegree.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from .linalg import kernel_basis, rank
from .modespace import FreeState, apply_mode, bigrade
from .p1tcdo import (
    Chart,
    GluingMap,
    glue,
    include_overlap,
    sections_bidegree,
    sl2_embedding,
)
from .qseries import QSeries, char_H1, char_L, eta_inverse_squared
from .reports import CheckReport


class StabilityError(ValueError):
    """A windowed aggregate was requested from an unstable scan."""


@dataclass
class BigradedReport:
    n: int
    weight_max: int
    entries: dict = field(default_factory=dict)
    h0_character: QSeries | None = None
    h1_character: QSeries | None = None
    stable: bool = False

    def entry(self, weight: int, mu: int) -> dict:
        return self.entries.get(
            (weight, mu),
            {"dim_c0": 0, "dim_cinf": 0, "dim_overlap": 0, "dim_h0": 0, "dim_h1": 0},
        )

    def rank_nullity_consistent(self) -> bool:
        for N in range(self.weight_max + 1):
            lhs = rhs = 0
            for (w, _), e in self.entries.items():
                if w == N:
                    lhs += e["dim_h0"] - e["dim_h1"]
                    rhs += e["dim_c0"] + e["dim_cinf"] - e["dim_overlap"]
            if lhs != rhs:
                return False
        return True

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "weight_max": self.weight_max,
            "stable": self.stable,
            "h0_character": list(self.h0_character.coeffs),
            "h1_character": list(self.h1_character.coeffs),
            "entries": {
                f"{w},{mu}": e for (w, mu), e in sorted(self.entries.items())
            },
        }


def mu_window(n: int, weight_max: int, factor: int = 1) -> range:
    """The h-weight scan window: |mu| <= |n| + 2*weight_max + 2, widened by
    ``factor`` for stability rechecks."""
    bound = factor * (abs(n) + 2 * weight_max + 2)
    return range(-bound, bound + 1)


def _delta_matrix(n: int, weight: int, mu: int):
    """Rows indexed by overlap monomials, columns by (zero ++ infinity) basis."""
    basis0 = sections_bidegree(Chart.ZERO, n, weight, mu)
    basisinf = sections_bidegree(Chart.INFTY, n, weight, -mu)
    basisov = sections_bidegree(Chart.OVERLAP, n, weight, mu)
    index = {next(iter(s.terms)): i for i, s in enumerate(basisov)}
    g = GluingMap(n)
    cols = []
    for s in basis0:
        cols.append(include_overlap(s))
    for s in basisinf:
        cols.append(-1 * glue(s, g, transition_degree=n))
    rows = [[Fraction(0)] * len(cols) for _ in range(len(basisov))]
    for j, img in enumerate(cols):
        for mono, c in img.terms.items():
            rows[index[mono]][j] = c
    return basis0, basisinf, basisov, rows


def cech_block(n: int, weight: int, mu: int) -> dict:
    """Exact dimensions at one bidegree (pure; safe to run concurrently)."""
    basis0, basisinf, basisov, rows = _delta_matrix(n, weight, mu)
    r = rank(rows)
    return {
        "dim_c0": len(basis0),
        "dim_cinf": len(basisinf),
        "dim_overlap": len(basisov),
        "dim_h0": len(basis0) + len(basisinf) - r,
        "dim_h1": len(basisov) - r,
    }


def cech_kernel(n: int, weight: int, mu: int):
    """H^0 representatives at one bidegree: (zero-chart basis, infinity-chart
    basis, kernel coefficient vectors over their concatenation)."""
    basis0, basisinf, _, rows = _delta_matrix(n, weight, mu)
    ncols = len(basis0) + len(basisinf)
    if ncols == 0:
        return basis0, basisinf, []
    return basis0, basisinf, kernel_basis(rows, ncols)


def cech_dims(n: int, weight_max: int, workers: int | None = None) -> BigradedReport:
    """Full bigraded scan with a doubled-window stability recheck.

    Each (N, mu) block is window-independent, so stability reduces to: the
    doubled window finds no nonzero cohomology outside the base window.
    """
    if weight_max < 0:
        raise ValueError("weight_max must be >= 0")
    base = set(mu_window(n, weight_max))
    jobs = [
        (N, mu) for N in range(weight_max + 1) for mu in mu_window(n, weight_max, 2)
    ]
    if workers:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            blocks = dict(
                zip(jobs, pool.map(lambda j: cech_block(n, *j), jobs))
            )
    else:
        blocks = {j: cech_block(n, *j) for j in jobs}

    report = BigradedReport(n=n, weight_max=weight_max)
    stable = True
    for (N, mu) in sorted(blocks):
        e = blocks[(N, mu)]
        if mu in base:
            report.entries[(N, mu)] = e
        elif e["dim_h0"] or e["dim_h1"]:
            stable = False
    h0 = [0] * (weight_max + 1)
    h1 = [0] * (weight_max + 1)
    for (N, _), e in report.entries.items():
        h0[N] += e["dim_h0"]
        h1[N] += e["dim_h1"]
    report.h0_character = QSeries(tuple(h0), weight_max)
    report.h1_character = QSeries(tuple(h1), weight_max)
    report.stable = stable
    return report


def _require_stable(report: BigradedReport) -> None:
    if not report.stable:
        raise StabilityError(
            f"mu window for n={report.n}, weight_max={report.weight_max} "
            "is not stable; aggregate characters would be unreliable"
        )


def euler_check(report: BigradedReport) -> bool:
    """h0 - h1 must equal (n+1) * prod (1-q^j)^(-2), coefficient-wise."""
    _require_stable(report)
    diff = report.h0_character - report.h1_character
    return diff == (report.n + 1) * eta_inverse_squared(report.weight_max)


def expected_characters(n: int, weight_max: int) -> tuple[QSeries, QSeries]:
    """Closed-form (h0, h1) characters for twist n."""
    if n >= 0:
        return char_L(n, weight_max), char_H1(n, weight_max)
    if n == -1:
        zero = QSeries((0,) * (weight_max + 1), weight_max)
        return zero, zero
    base = char_L(-n - 2, weight_max)
    return base.shift(-n - 1), base


def character_check(report: BigradedReport) -> bool:
    _require_stable(report)
    want_h0, want_h1 = expected_characters(report.n, report.weight_max)
    return report.h0_character == want_h0 and report.h1_character == want_h1


def _mono_key(mono):
    return (mono.amodes, mono.bmodes, mono.lmodes, mono.power)


def _pair_image(gen, m, vec, basis0, basisinf, rho0, rhoinf, n):
    img0 = FreeState({}, Chart.ZERO.ring, n)
    imginf = FreeState({}, Chart.INFTY.ring, n)
    for c, s in zip(vec[: len(basis0)], basis0):
        img0 = img0 + c * apply_mode(rho0[gen], m, s)
    for c, s in zip(vec[len(basis0) :], basisinf):
        imginf = imginf + c * apply_mode(rhoinf[gen], m, s)
    return img0, imginf


def singular_vectors_h0(n: int, weight_max: int):
    """All H^0 classes killed by rho(e)_(0) and every positive mode: returns
    [(weight, mu, zero-chart representative)].  Because H^0 is literally the
    kernel subspace of C^0 (no quotient is taken), singularity is a plain
    linear condition on kernel vectors; modes beyond m = N kill weight-N
    states identically and need no rows."""
    if n < 0:
        raise ValueError("the singular-vector scan expects n >= 0")
    rho0 = sl2_embedding(Chart.ZERO)
    rhoinf = sl2_embedding(Chart.INFTY)
    found = []
    for N in range(weight_max + 1):
        for mu in mu_window(n, weight_max):
            basis0, basisinf, kernel = cech_kernel(n, N, mu)
            if not kernel:
                continue
            raising = [("e", 0)] + [
                (x, m) for m in range(1, N + 1) for x in ("e", "h", "f")
            ]
            # condition matrix: one row per (raising op, target monomial),
            # one column per kernel vector — aligned on a shared index
            rows = []
            for gen, m in raising:
                images = [
                    _pair_image(gen, m, vec, basis0, basisinf, rho0, rhoinf, n)
                    for vec in kernel
                ]
                monos0 = sorted({mo for i0, _ in images for mo in i0.terms}, key=_mono_key)
                monosinf = sorted({mo for _, ii in images for mo in ii.terms}, key=_mono_key)
                for mo in monos0:
                    rows.append([i0.terms.get(mo, Fraction(0)) for i0, _ in images])
                for mo in monosinf:
                    rows.append([ii.terms.get(mo, Fraction(0)) for _, ii in images])
            for coeffs in kernel_basis(rows, len(kernel)):
                rep = FreeState({}, Chart.ZERO.ring, n)
                for a, vec in zip(coeffs, kernel):
                    for c, s in zip(vec[: len(basis0)], basis0):
                        rep = rep + a * c * s
                found.append((N, mu, rep))
    return found


def check_sl2_stability(n: int, weight_max: int, modes=(-2, -1, 0, 1, 2)) -> CheckReport:
    """delta intertwines the chart actions, so ker delta must be preserved:
    apply every generator mode to every kernel vector and check the image
    pair is again a cocycle (delta of it vanishes identically)."""
    rho0 = sl2_embedding(Chart.ZERO)
    rhoinf = sl2_embedding(Chart.INFTY)
    g = GluingMap(n)
    rep = CheckReport("cech-sl2-stability", details={"n": n, "weight_max": weight_max})
    for N in range(weight_max + 1):
        for mu in mu_window(n, weight_max):
            basis0, basisinf, kernel = cech_kernel(n, N, mu)
            for vec in kernel:
                for gen in "ehf":
                    for m in modes:
                        img0 = FreeState({}, Chart.ZERO.ring, n)
                        imginf = FreeState({}, Chart.INFTY.ring, n)
                        for c, s in zip(vec[: len(basis0)], basis0):
                            img0 = img0 + c * apply_mode(rho0[gen], m, s)
                        for c, s in zip(vec[len(basis0) :], basisinf):
                            imginf = imginf + c * apply_mode(rhoinf[gen], m, s)
                        delta = include_overlap(img0) - glue(
                            imginf, g, transition_degree=n
                        )
                        rep.record(
                            delta.is_zero,
                            f"(N={N}, mu={mu}) {gen}_({m}) image leaves ker delta",
                        )
    return rep
