"""The projective-line layer: charts, the twisted gluing, the critical-level
sl2 embedding, its Sugawara image, and section spaces of the twisted sheaves.

The two affine charts carry the same free-field chart algebra; the overlap is
its Laurent extension.  Writing x for the coordinate on the ZERO chart and y
for the INFTY one, the gluing is

    y |-> x^{-1},    d_y |-> -a_(-1)x^2 - 2 d(x) + x_(-1) l*,    l* |-> l*,

and its mirror is the same formula with the letters exchanged, so in the
shared representation the gluing is an involution — which is exactly what
``check_involution`` verifies.  On the residue-n quotient the l*-term of the
d_y image collapses to "n times x", an equality of weight-indexed modes; the
recursion therefore always acts through the symbolic images, whose raw modes
on a specialized state produce precisely that collapse.

Module sections of the degree-n sheaf glue with the extra line-bundle factor
x^n: ``glue(•, g, transition_degree=n)`` sends the ground y^j to x^(n-j).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import lru_cache
import random

from .modespace import (
    GEN_A,
    GEN_B,
    GEN_LSTAR,
    LAURENT,
    POLY,
    FreeState,
    Monomial,
    SpecializationError,
    apply_mode,
    bigrade,
    gen_a,
    gen_lstar,
    ground,
    random_state,
    translation,
    vacuum,
    zero,
)
from .reports import CheckReport


class Chart(Enum):
    ZERO = "zero"
    INFTY = "infty"
    OVERLAP = "overlap"

    @property
    def ring(self) -> str:
        return LAURENT if self is Chart.OVERLAP else POLY


def include_overlap(u: FreeState) -> FreeState:
    """The restriction of a polynomial-chart state to the overlap."""
    return FreeState(u.terms, LAURENT, u.lstar)


# -- the gluing ---------------------------------------------------------------


def _deriv_image_symbolic() -> FreeState:
    """-a_(-1)x^2 - 2 d(x) + x_(-1) l* on the overlap."""
    return FreeState(
        {
            Monomial(amodes=(-1,), power=2): -1,
            Monomial(bmodes=(-2,)): -2,
            Monomial(lmodes=(-1,), power=1): 1,
        },
        LAURENT,
    )


_SYMBOLIC_IMAGES = {
    GEN_B: ground(-1, LAURENT),
    GEN_A: _deriv_image_symbolic(),
    GEN_LSTAR: gen_lstar(LAURENT),
}

_GEN_NAMES = {GEN_A: "d_y", GEN_B: "y", GEN_LSTAR: "l*"}


@dataclass(frozen=True)
class GluingMap:
    """INFTY -> OVERLAP chart change.  ``twist`` is None for the symbolic
    sector or the integer residue n; ``images`` is the generator table in the
    matching sector (for display and spot checks — the recursion in ``glue``
    acts through the symbolic forms, see the module docstring)."""

    twist: int | None = None
    images: dict = field(init=False, repr=False)

    def __post_init__(self):
        if self.twist is None:
            table = dict(_SYMBOLIC_IMAGES)
        else:
            n = self.twist
            table = {
                GEN_B: ground(-1, LAURENT, n),
                GEN_A: FreeState(
                    {
                        Monomial(amodes=(-1,), power=2): -1,
                        Monomial(bmodes=(-2,)): -2,
                        Monomial(power=1): n,
                    },
                    LAURENT,
                    n,
                ),
                GEN_LSTAR: n * vacuum(LAURENT, n),
            }
        object.__setattr__(self, "images", table)

    def mirror(self) -> "GluingMap":
        """The OVERLAP-expressed inverse map; same letters exchanged, hence
        the same table in the shared representation."""
        return GluingMap(self.twist)


@lru_cache(maxsize=None)
def _glue_mono(mono: Monomial, ls, t: int) -> FreeState:
    if mono.amodes:
        gen, m = GEN_A, mono.amodes[0]
        tail = Monomial(mono.amodes[1:], mono.bmodes, mono.lmodes, mono.power)
    elif mono.bmodes:
        gen, m = GEN_B, mono.bmodes[0]
        tail = Monomial((), mono.bmodes[1:], mono.lmodes, mono.power)
    elif mono.lmodes:
        gen, m = GEN_LSTAR, mono.lmodes[0]
        tail = Monomial((), (), mono.lmodes[1:], mono.power)
    else:
        return FreeState({Monomial(power=t - mono.power): 1}, LAURENT, ls)
    return apply_mode(_SYMBOLIC_IMAGES[gen], m, _glue_mono(tail, ls, t))


def glue(u: FreeState, g: GluingMap, transition_degree: int = 0) -> FreeState:
    """Push a state through the chart change, monomial by monomial: peel the
    head mode, map its generator, and act on the glued tail; the ground y^k
    lands on x^(transition_degree - k)."""
    if (g.twist is None) != (u.lstar is None) or (
        g.twist is not None and g.twist != u.lstar
    ):
        raise SpecializationError(
            f"gluing twist {g.twist!r} does not match state sector {u.lstar!r}"
        )
    out = zero(LAURENT, u.lstar)
    for mono, c in u.terms.items():
        out = out + c * _glue_mono(mono, u.lstar, transition_degree)
    return out


def check_gluing_morphism(g: GluingMap, samples: int = 100, seed: int = 42,
                          transition_degree: int | None = None) -> CheckReport:
    """Exactness of glue(u_(m) v) = glue(u)_(m) glue(v): all generator pairs
    at m in {0, 1} (symbolic sector — these pin the vertex-algebra morphism),
    then `samples` pseudo-random pairs of weight <= 3.

    In a specialized sector the left slot stays symbolic — the module carries
    an action of the chart algebra, not of itself — and the module side
    travels with the line-bundle transition (degree = twist unless overridden):
    glue_t(u_(m) v) = glue_0(u)_(m) glue_t(v)."""
    rep = CheckReport("gluing-morphism", details={"samples": samples, "seed": seed})
    t = transition_degree if transition_degree is not None else (g.twist or 0)
    rep.details["transition_degree"] = t
    sym = GluingMap(None)
    gens = {name: FreeState({mono: 1}) for name, mono in {
        "d_y": Monomial(amodes=(-1,)),
        "y": Monomial(power=1),
        "l*": Monomial(lmodes=(-1,)),
    }.items()}
    for xn, xi in gens.items():
        for en, eta in gens.items():
            for m in (0, 1):
                lhs = glue(apply_mode(xi, m, eta), sym)
                rhs = apply_mode(glue(xi, sym), m, glue(eta, sym))
                rep.record(lhs == rhs, f"generators ({xn})_({m}) {en}")

    rng = random.Random(seed)
    if samples == 0:
        rep.details["warning"] = "samples = 0: sampled portion is vacuous"
    for i in range(samples):
        u = random_state(rng, 3, ring=POLY)
        v = random_state(rng, 3, ring=POLY, lstar=g.twist)
        m = rng.randint(-2, 2)
        lhs = glue(apply_mode(u, m, v), g, t)
        rhs = apply_mode(glue(u, sym), m, glue(v, g, t))
        rep.record(
            lhs == rhs,
            f"sample {i}: ({u.render('y')})_({m}) {v.render('y')}",
        )
    return rep


def overlap_basis(weight_max: int, h_bound: int, lstar: int | None = None):
    """All overlap normal-form monomials with weight <= weight_max and
    |twist-free h-weight| <= h_bound."""
    out = []
    for amodes in _mode_tuples(weight_max, 1):
        wa = sum(-m for m in amodes)
        for bmodes in _mode_tuples(weight_max - wa, 2):
            wb = sum(-m - 1 for m in bmodes)
            lchoices = [()] if lstar is not None else _mode_tuples(weight_max - wa - wb, 1)
            for lmodes in lchoices:
                shift = 2 * len(amodes) - 2 * len(bmodes)
                # |shift - 2k| <= h_bound
                for k in range((shift - h_bound + 1) // 2, (shift + h_bound) // 2 + 1):
                    out.append(Monomial(amodes, bmodes, lmodes, k))
    return out


def check_involution(g: GluingMap, weight_max: int = 4) -> CheckReport:
    """glue after its mirror is the identity on every overlap basis monomial
    with weight <= weight_max and |h-weight| <= 2 weight_max + 4.  Specialized
    sections round-trip through the degree-n transition (the two coordinate
    descriptions of the degree-n sheaf are identified by x^n, not by 1)."""
    rep = CheckReport("gluing-involution", details={"weight_max": weight_max})
    h_bound = 2 * weight_max + 4
    t = g.twist or 0
    for mono in overlap_basis(weight_max, h_bound, g.twist):
        u = FreeState({mono: 1}, LAURENT, g.twist)
        back = glue(glue(u, g, t), g.mirror(), t)
        rep.record(back == u, f"round trip of {mono.render()}")
    return rep


# -- the sl2 embedding ----------------------------------------------------------


@dataclass(frozen=True)
class Sl2Embedding:
    """Images of the sl2 generators as weight-1 chart states (symbolic twist)."""

    chart: Chart
    images: dict

    def __getitem__(self, name: str) -> FreeState:
        return self.images[name]


def sl2_embedding(chart: Chart) -> Sl2Embedding:
    if chart is Chart.OVERLAP:
        raise ValueError("the embedding is defined on the affine charts")
    a_x2 = FreeState({Monomial(amodes=(-1,), power=2): 1})
    a_x = FreeState({Monomial(amodes=(-1,), power=1): 1})
    x_l = FreeState({Monomial(lmodes=(-1,), power=1): 1})
    lowering = -1 * a_x2 - 2 * translation(ground(1)) + x_l
    if chart is Chart.ZERO:
        images = {"e": gen_a(), "h": -2 * a_x + gen_lstar(), "f": lowering}
    else:
        images = {"e": lowering, "h": 2 * a_x - 1 * gen_lstar(), "f": gen_a()}
    return Sl2Embedding(chart, images)


SL2_BRACKETS = {
    ("e", "f"): {"h": 1},
    ("f", "e"): {"h": -1},
    ("h", "e"): {"e": 2},
    ("e", "h"): {"e": -2},
    ("h", "f"): {"f": -2},
    ("f", "h"): {"f": 2},
    ("e", "e"): {},
    ("h", "h"): {},
    ("f", "f"): {},
}

SL2_FORM = {("e", "f"): 1, ("f", "e"): 1, ("h", "h"): 2}


def check_sl2_embedding(rho: Sl2Embedding) -> CheckReport:
    """The level-(-2) affine sl2 relations for the embedded currents:
    rho(x)_(0) rho(y) = rho([x,y]) and rho(x)_(1) rho(y) = -2 (x|y) |0>."""
    rep = CheckReport("sl2-embedding", details={"chart": rho.chart.value})
    for (xn, yn), bracket in SL2_BRACKETS.items():
        expect = zero()
        for name, c in bracket.items():
            expect = expect + c * rho[name]
        got = apply_mode(rho[xn], 0, rho[yn])
        rep.record(got == expect, f"[{xn},{yn}] on {rho.chart.value}")
    for xn in "ehf":
        for yn in "ehf":
            pairing = SL2_FORM.get((xn, yn), 0)
            got = apply_mode(rho[xn], 1, rho[yn])
            rep.record(
                got == (-2 * pairing) * vacuum(),
                f"({xn}|{yn}) level term on {rho.chart.value}",
            )
    return rep


def check_sl2_global(g: GluingMap) -> CheckReport:
    """The two chart embeddings agree on the overlap: the ZERO images included
    directly equal the INFTY images pushed through the gluing."""
    rep = CheckReport("sl2-global")
    if g.twist is not None:
        raise SpecializationError("global comparison runs in the symbolic sector")
    rho0 = sl2_embedding(Chart.ZERO)
    rhoi = sl2_embedding(Chart.INFTY)
    for name in "ehf":
        lhs = include_overlap(rho0[name])
        rhs = glue(rhoi[name], g)
        rep.record(lhs == rhs, f"rho({name}) glues globally")
    return rep


def sugawara_image(rho: Sl2Embedding) -> FreeState:
    """rho(e)_(-1) rho(f) + rho(f)_(-1) rho(e) + 1/2 rho(h)_(-1) rho(h)."""
    e, h, f = rho["e"], rho["h"], rho["f"]
    return (
        apply_mode(e, -1, f)
        + apply_mode(f, -1, e)
        + Fraction(1, 2) * apply_mode(h, -1, h)
    )


def sugawara_zero_mode_value(n: int) -> Fraction:
    """Eigenvalue of the Sugawara zero mode (the weight-degree operator's
    central companion) on the residue-n quotient's ground states."""
    s = sugawara_image(sl2_embedding(Chart.ZERO))
    got = apply_mode(s, 1, vacuum(lstar=n))  # weight-2 state: zero mode = _(1)
    if got.is_zero:
        return Fraction(0)
    assert set(got.terms) == {Monomial()}
    return got.terms[Monomial()]


# -- section spaces ---------------------------------------------------------------


def _mode_tuples(budget: int, min_part: int):
    """All sorted mode tuples (ascending, entries <= -min_part) whose weight
    contribution sums to at most ``budget``; weight of mode -s is s - min_part + 1."""
    results = [()]
    def rec(prefix, remaining, max_part):
        for part in range(1, min(remaining, max_part) + 1):
            tup = prefix + (part,)
            results.append(tup)
            rec(tup, remaining - part, part)
    rec((), budget, budget)
    out = []
    for tup in results:
        modes = tuple(sorted(-(p + min_part - 1) for p in tup))
        out.append(modes)
    return out


def sections(chart: Chart, n: int, weight_max: int, h_window: tuple[int, int]):
    """Normal-form monomial basis of the chart sections of the degree-n sheaf,
    residue-n specialized, restricted to weight <= weight_max and intrinsic
    h-weight inside h_window (inclusive)."""
    if weight_max < 0:
        return []
    lo, hi = h_window
    out = []
    for amodes in _mode_tuples(weight_max, 1):
        wa = sum(-m for m in amodes)
        for bmodes in _mode_tuples(weight_max - wa, 2):
            shift = n + 2 * len(amodes) - 2 * len(bmodes)
            # h = shift - 2k  =>  k in [ceil((shift-hi)/2), floor((shift-lo)/2)]
            klo = (shift - hi + 1) // 2
            khi = (shift - lo) // 2
            if chart is not Chart.OVERLAP:
                klo = max(klo, 0)
            for k in range(klo, khi + 1):
                h = shift - 2 * k
                if lo <= h <= hi:
                    out.append(
                        FreeState(
                            {Monomial(amodes, bmodes, (), k): 1}, chart.ring, n
                        )
                    )
    return out


def sections_bidegree(chart: Chart, n: int, weight: int, mu: int):
    """Basis states of one exact (weight, h-weight) bidegree."""
    return [
        s
        for s in sections(chart, n, weight, (mu, mu))
        if bigrade(s, twist=n) == (weight, mu)
    ]


def unclamped_sections_dim(chart: Chart, n: int, weight: int, mu: int) -> int:
    """Monomial count at one bidegree with the central lambda*-tower left
    free instead of clamped to the residue n.  The free tower restores the
    third mode family, which is what lines up with raw PBW counts in the
    Verma module (the clamped spaces line up with its central quotient)."""
    if weight < 0:
        return 0
    total = 0
    for amodes in _mode_tuples(weight, 1):
        wa = sum(-m for m in amodes)
        for bmodes in _mode_tuples(weight - wa, 2):
            wb = sum(-m - 1 for m in bmodes)
            for lmodes in _mode_tuples(weight - wa - wb, 1):
                if wa + wb + sum(-m for m in lmodes) != weight:
                    continue
                shift = n + 2 * len(amodes) - 2 * len(bmodes)
                if (shift - mu) % 2:
                    continue
                k = (shift - mu) // 2
                if chart is Chart.OVERLAP or k >= 0:
                    total += 1
    return total
