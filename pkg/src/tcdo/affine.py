"""Brute-force critical-level affine sl2: PBW Verma modules, the Sugawara
operators, character quotients, and the replay map onto free-field sections.

Everything here is built from the bracket

    [x_n, y_m] = [x,y]_(n+m) + n delta_{n+m,0} (x|y) K,     K = -2,

with (e|f) = 1, (h|h) = 2, and PBW combinatorics on the lowering set
{f_0} u {e_-m, h_-m, f_-m : m >= 1} — no free-field input — so it serves as
an independent oracle for the sheaf-cohomology side.  Vectors are bigraded by
(depth d = total t-degree, h-weight mu); each bidegree is finite-dimensional,
which is what makes exact linear algebra per bidegree possible even though
depth slices alone are infinite (powers of f_0 all live at depth 0).
"""

from __future__ import annotations

import random
from fractions import Fraction
from functools import lru_cache

from .linalg import SpanTracker, rank
from .modespace import apply_mode, vacuum
from .p1tcdo import Chart, sections_bidegree, sl2_embedding
from .qseries import QSeries
from .reports import CheckReport

LEVEL = -2

_RANK = {"e": 0, "h": 1, "f": 2}
_H_SHIFT = {"e": 2, "h": 0, "f": -2}

# [x, y] = coeff * gen, tabulated on ordered pairs
_BRACKET = {
    ("e", "f"): (1, "h"),
    ("f", "e"): (-1, "h"),
    ("h", "e"): (2, "e"),
    ("e", "h"): (-2, "e"),
    ("h", "f"): (-2, "f"),
    ("f", "h"): (2, "f"),
}

_FORM = {("e", "f"): 1, ("f", "e"): 1, ("h", "h"): 2}


def _key(op):
    gen, m = op
    return (m, _RANK[gen])


def _is_lowering(gen: str, m: int) -> bool:
    return m < 0 or (m == 0 and gen == "f")


def word_depth(word) -> int:
    return sum(-m for _, m in word)


def word_h_shift(word) -> int:
    return sum(_H_SHIFT[g] for g, _ in word)


class PBWVector:
    """Finite rational combination of PBW words applied to the highest-weight
    vector of the level-(-2) Verma module with h_0-eigenvalue nu."""

    __slots__ = ("terms", "nu")

    def __init__(self, terms=None, nu=Fraction(0)):
        self.nu = Fraction(nu)
        clean: dict[tuple, Fraction] = {}
        for word, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                assert all(_is_lowering(g, m) for g, m in word)
                assert list(word) == sorted(word, key=_key)
                clean[word] = c
        self.terms = clean

    def __eq__(self, other):
        return (
            isinstance(other, PBWVector)
            and self.nu == other.nu
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.nu, frozenset(self.terms.items())))

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "PBWVector") -> "PBWVector":
        assert self.nu == other.nu
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, Fraction(0)) + c
        return PBWVector(out, self.nu)

    def __sub__(self, other):
        return self + (-1) * other

    def __rmul__(self, c) -> "PBWVector":
        c = Fraction(c)
        return PBWVector({w: c * v for w, v in self.terms.items()}, self.nu)

    def depth_max(self) -> int:
        return max((word_depth(w) for w in self.terms), default=0)

    def render(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for w in sorted(self.terms, key=lambda word: (word_depth(word), word)):
            ops = " ".join(f"{g}({m})" for g, m in w) or "v"
            bits.append(f"({self.terms[w]}) {ops}{'' if not w else ' v'}")
        return " + ".join(bits)

    def __repr__(self):
        return f"<PBW nu={self.nu}: {self.render()}>"


def highest_weight_vector(nu) -> PBWVector:
    return PBWVector({(): 1}, nu)


def _merge(out, terms, scale):
    if not scale:
        return
    for w, c in terms.items():
        out[w] = out.get(w, Fraction(0)) + scale * c


@lru_cache(maxsize=None)
def _straighten(word: tuple) -> tuple:
    """Sort a product of lowering operators into PBW order, inserting bracket
    terms; the lowering set is bracket-closed, so this terminates."""
    for i in range(len(word) - 1):
        if _key(word[i]) > _key(word[i + 1]):
            (g1, m1), (g2, m2) = word[i], word[i + 1]
            swapped = word[:i] + (word[i + 1], word[i]) + word[i + 2 :]
            out: dict[tuple, Fraction] = {}
            _merge(out, dict(_straighten(swapped)), Fraction(1))
            br = _BRACKET.get((g1, g2))
            if br is not None:
                c, g = br
                inner = word[:i] + ((g, m1 + m2),) + word[i + 2 :]
                _merge(out, dict(_straighten(inner)), Fraction(c))
            # central term m1 delta_{m1+m2,0} (x|y) K never fires: two
            # lowering modes cannot sum to zero unless both are f_0
            return tuple(out.items())
    return ((word, Fraction(1)),)


@lru_cache(maxsize=None)
def _act_word(gen: str, m: int, word: tuple, nu: Fraction) -> tuple:
    """x_m applied to (word * hw); returns PBW term items."""
    if _is_lowering(gen, m):
        return _straighten(((gen, m),) + word)
    if not word:
        if m > 0 or gen == "e":
            return ()
        return (((), nu),) if gen == "h" else ()
    head, tail = word[0], word[1:]
    out: dict[tuple, Fraction] = {}
    # x_m head = head x_m + [x_m, head]
    moved = _act_word(gen, m, tail, nu)
    for w, c in moved:
        _merge(out, dict(_straighten((head,) + w)), c)
    g2, m2 = head
    br = _BRACKET.get((gen, g2))
    if br is not None:
        c, g = br
        _merge(out, dict(_act_word(g, m + m2, tail, nu)), Fraction(c))
    if m + m2 == 0:
        pairing = _FORM.get((gen, g2), 0)
        if pairing:
            _merge(out, dict(_straighten(tail)), Fraction(m * pairing * LEVEL))
    return tuple(out.items())


def act(gen: str, m: int, v: PBWVector) -> PBWVector:
    """The affine action x_m on a PBW vector."""
    out: dict[tuple, Fraction] = {}
    for word, c in v.terms.items():
        _merge(out, dict(_act_word(gen, m, word, v.nu)), c)
    return PBWVector(out, v.nu)


def act_word(word, v: PBWVector) -> PBWVector:
    """Apply a product of modes, rightmost first."""
    for gen, m in reversed(word):
        v = act(gen, m, v)
    return v


# -- PBW enumeration -----------------------------------------------------------


@lru_cache(maxsize=None)
def _negative_words(d: int) -> tuple:
    """All PBW words in strictly-negative modes of total depth exactly d."""
    if d == 0:
        return ((),)
    out = []

    def rec(prefix, remaining, min_key):
        if remaining == 0:
            out.append(tuple(prefix))
            return
        for m in range(-remaining, 0):
            for g in "ehf":
                if _key((g, m)) >= min_key:
                    rec(prefix + [(g, m)], remaining + m, _key((g, m)))

    rec([], d, (-d - 1, 0))
    return tuple(out)


def verma_basis(nu, d: int, mu) -> list[tuple]:
    """PBW words spanning the (depth d, h-weight mu) bidegree of the Verma
    module: a negative-mode word plus the f_0 power that lands on mu."""
    out = []
    for neg in _negative_words(d):
        gap = Fraction(nu) + word_h_shift(neg) - Fraction(mu)
        if gap.denominator == 1 and gap >= 0 and gap % 2 == 0:
            out.append(neg + (("f", 0),) * int(gap // 2))
    return out


def verma_dim(nu, d: int, mu) -> int:
    if d < 0:
        return 0
    return len(verma_basis(nu, d, mu))


# -- Sugawara -------------------------------------------------------------------


_QUADRATIC = ((Fraction(1), "e", "f"), (Fraction(1), "f", "e"), (Fraction(1, 2), "h", "h"))


def sugawara_apply(k: int, v: PBWVector) -> PBWVector:
    """T_k = (e_(-1)f + f_(-1)e + 1/2 h_(-1)h)_(k+1) via the module expansion
    (x_(-1)y)_(m) u = sum_{j>=0} [x_(-1-j) y_(m+j) u + y_(m-1-j) x_(j) u]."""
    m = k + 1
    out = PBWVector({}, v.nu)
    dmax = v.depth_max()
    for coef, xg, yg in _QUADRATIC:
        for j in range(dmax - m + 1):
            out = out + coef * act(xg, -1 - j, act(yg, m + j, v))
        for j in range(dmax + 1):
            out = out + coef * act(yg, m - 1 - j, act(xg, j, v))
    return out


def sugawara_zero_eigenvalue(nu) -> Fraction:
    """T_0 on the highest-weight vector (and hence on all of the Verma module,
    by centrality): nu(nu+2)/2."""
    v = highest_weight_vector(nu)
    got = sugawara_apply(0, v)
    if got.is_zero:
        return Fraction(0)
    assert set(got.terms) == {()}
    return got.terms[()]


# -- quotients and characters ----------------------------------------------------


def _coords(vectors, basis_words):
    index = {w: i for i, w in enumerate(basis_words)}
    rows = []
    for v in vectors:
        row = [Fraction(0)] * len(basis_words)
        for w, c in v.terms.items():
            row[index[w]] = c
        rows.append(row)
    return rows


@lru_cache(maxsize=None)
def _t_image(k: int, word: tuple, nu: Fraction) -> PBWVector:
    return sugawara_apply(k, PBWVector({word: 1}, nu))


def _sugawara_span(nu, d: int, mu, tracker: SpanTracker, basis_words) -> None:
    """Feed all T_(-k) images landing in bidegree (d, mu) into the tracker.
    Single applications suffice: T is central, so sum_k T_(-k) M is already a
    submodule, and iterated T's land inside single-T images."""
    nu = Fraction(nu)
    for k in range(1, d + 1):
        for src in verma_basis(nu, d - k, mu):
            img = _t_image(-k, src, nu)
            if not img.is_zero:
                tracker.add(_coords([img], basis_words)[0])


def restricted_verma_dim(nu, d: int, mu) -> int:
    """Bidegree dimension of M_{nu/z} = M_nu / sum_{k>0} T_(-k) M_nu, the
    Verma module with its central character clamped to nu/z.  This — not the
    raw PBW count — is what matches the lambda*-specialized section spaces."""
    basis_words = verma_basis(nu, d, mu)
    if not basis_words:
        return 0
    tracker = SpanTracker(len(basis_words))
    _sugawara_span(nu, d, mu, tracker, basis_words)
    return len(basis_words) - tracker.dim


def quotient_dims(nu, d_max: int, mu_values) -> dict:
    """Per-bidegree dimensions of the Sugawara quotient M_{nu/z}."""
    return {
        (d, mu): restricted_verma_dim(nu, d, mu)
        for d in range(d_max + 1)
        for mu in mu_values
    }


def _default_mu_window(n: int, d_max: int):
    lo = n - 2 * (d_max + abs(n) + 2)
    hi = n + 2 * d_max
    return [mu for mu in range(lo, hi + 1) if (n - mu) % 2 == 0]


def quotient_char(n: int, d_max: int) -> QSeries:
    """Depth character of M_{n/z} aggregated over the default mu window.
    The per-bidegree dict (quotient_dims) is the primary object; this
    aggregate depends on the window because depth slices are infinite."""
    mus = _default_mu_window(n, d_max)
    dims = quotient_dims(n, d_max, mus)
    coeffs = tuple(sum(dims[(d, mu)] for mu in mus) for d in range(d_max + 1))
    return QSeries(coeffs, d_max)


def singular_bidegrees(nu, d_max: int, mu_values) -> list:
    """Bidegrees of M_{nu/z} holding a nonzero vector killed by e_0, e_1, h_1
    and f_1 (these generate all raising modes).  Works per bidegree with the
    Sugawara span quotiented out exactly."""
    found = []
    for d in range(d_max + 1):
        for mu in mu_values:
            basis_words = verma_basis(nu, d, mu)
            if not basis_words:
                continue
            own = SpanTracker(len(basis_words))
            _sugawara_span(nu, d, mu, own, basis_words)
            raising = [("e", 0), ("e", 1), ("h", 1), ("f", 1)]
            # stacked rows: coordinates of X v in each target bidegree,
            # reduced modulo the target's Sugawara span
            rows = []
            for gen, m in raising:
                tgt_d = d - m
                tgt_mu = mu + _H_SHIFT[gen]
                tgt_words = verma_basis(nu, tgt_d, tgt_mu)
                if not tgt_words:
                    continue
                tracker = SpanTracker(len(tgt_words))
                _sugawara_span(nu, tgt_d, tgt_mu, tracker, tgt_words)
                cols = []
                for w in basis_words:
                    img = act(gen, m, PBWVector({w: 1}, nu))
                    cols.append(tracker.residual(_coords([img], tgt_words)[0]))
                for i in range(len(tgt_words)):
                    rows.append([c[i] for c in cols])
            # singular classes = kernel of the stacked map, minus vectors that
            # are already zero in the quotient (the whole Sugawara span maps
            # into Sugawara spans, so it always sits inside the kernel)
            kernel = len(basis_words) - rank(rows) if rows else len(basis_words)
            sing = kernel - own.dim
            if d == 0 and Fraction(mu) == Fraction(nu):
                sing -= 1  # the highest-weight vector itself
            if sing > 0:
                found.append((d, mu, sing))
    return found


def irreducible_dims(n: int, d_max: int, mu_values) -> dict:
    """Per-bidegree dimensions of the irreducible quotient L_n: inside each
    bidegree of M_n, span out both the Sugawara images and the lowering-word
    images of the singular vector f_0^(n+1) v, then count what is left."""
    if n < 0:
        raise ValueError("the oracle covers nonnegative integral weight only")
    sing_word = (("f", 0),) * (n + 1)
    out = {}
    for d in range(d_max + 1):
        for mu in mu_values:
            basis_words = verma_basis(n, d, mu)
            if not basis_words:
                out[(d, mu)] = 0
                continue
            tracker = SpanTracker(len(basis_words))
            _sugawara_span(n, d, mu, tracker, basis_words)
            # lowering words sending the singular vector into (d, mu);
            # U(g^)w = U(lowering)w because w is singular (verified by
            # check_singular_generator, not assumed)
            for neg in _negative_words(d):
                gap = n + word_h_shift(neg) - 2 * (n + 1) - mu
                if gap >= 0 and gap % 2 == 0:
                    word = neg + (("f", 0),) * (gap // 2)
                    img = act_word(word, PBWVector({sing_word: 1}, n))
                    if not img.is_zero:
                        tracker.add(_coords([img], basis_words)[0])
            out[(d, mu)] = len(basis_words) - tracker.dim
    return out


def irreducible_char_oracle(n: int, d_max: int) -> QSeries:
    """Brute-force depth character of the irreducible quotient L_n,
    aggregated over the mu window [n - 2(d_max+n+2), n + 2 d_max]."""
    mus = _default_mu_window(n, d_max)
    dims = irreducible_dims(n, d_max, mus)
    coeffs = tuple(sum(dims[(d, mu)] for mu in mus) for d in range(d_max + 1))
    return QSeries(coeffs, d_max)


def check_singular_generator(n: int) -> CheckReport:
    """f_0^(n+1) v is annihilated by e_0 and the level-one raising modes."""
    rep = CheckReport("affine-singular-vector", details={"n": n})
    w = PBWVector(dict(_straighten((("f", 0),) * (n + 1))), n)
    for gen, m in (("e", 0), ("e", 1), ("h", 1), ("f", 1)):
        rep.record(act(gen, m, w).is_zero, f"{gen}_({m}) on f0^{n + 1} v")
    return rep


# -- the replay map onto free-field sections ---------------------------------------


def verma_to_sections(n: int, d_max: int, mu_values=None) -> dict:
    """Replay each PBW word through the chart sl2 currents on the ground
    state 1 of the residue-n module; returns a per-bidegree table
    (d, mu) -> (raw PBW dim, restricted dim, section dim, rank of the map).

    The sections carry the clamped central character, so the map factors
    through M_{n/z}; "full rank" means rank == restricted dim == section dim.
    """
    rho = sl2_embedding(Chart.ZERO)
    mus = mu_values if mu_values is not None else _default_mu_window(n, d_max)
    table = {}
    for d in range(d_max + 1):
        for mu in mus:
            words = verma_basis(n, d, mu)
            targets = sections_bidegree(Chart.ZERO, n, d, mu)
            if not words and not targets:
                continue
            target_monos = [next(iter(t.terms)) for t in targets]
            index = {mono: i for i, mono in enumerate(target_monos)}
            rows = []
            for word in words:
                img = vacuum(lstar=n)
                for gen, m in reversed(word):
                    img = apply_mode(rho[gen], m, img)
                row = [Fraction(0)] * len(target_monos)
                for mono, c in img.terms.items():
                    row[index[mono]] = c
                rows.append(row)
            r = rank(rows) if rows and target_monos else 0
            table[(d, mu)] = (
                len(words),
                restricted_verma_dim(n, d, mu),
                len(targets),
                r,
            )
    return table


def check_affine_relations(samples: int = 60, seed: int = 42) -> CheckReport:
    """Bracket self-consistency on random PBW vectors: the commutator of two
    mode actions equals the action of their bracket plus the central term."""
    rng = random.Random(seed)
    rep = CheckReport("affine-bracket", details={"samples": samples, "seed": seed})
    nus = [Fraction(0), Fraction(2), Fraction(-3), Fraction(1, 2)]
    for i in range(samples):
        nu = rng.choice(nus)
        v = random_pbw(rng, 3, nu)
        xg, yg = rng.choice("ehf"), rng.choice("ehf")
        m, k = rng.randint(-2, 2), rng.randint(-2, 2)
        lhs = act(xg, m, act(yg, k, v)) - act(yg, k, act(xg, m, v))
        br = _BRACKET.get((xg, yg))
        rhs = PBWVector({}, nu) if br is None else br[0] * act(br[1], m + k, v)
        if m + k == 0:
            rhs = rhs + (m * _FORM.get((xg, yg), 0) * LEVEL) * v
        rep.record(lhs == rhs, f"sample {i}: [{xg}_({m}), {yg}_({k})]")
    return rep


def check_sugawara_centrality(samples: int = 30, seed: int = 42) -> CheckReport:
    rng = random.Random(seed)
    rep = CheckReport("affine-sugawara-central", details={"samples": samples})
    for i in range(samples):
        nu = rng.choice([Fraction(0), Fraction(1), Fraction(-2), Fraction(5, 3)])
        v = random_pbw(rng, 2, nu)
        k = rng.randint(-2, 1)
        gen, m = rng.choice("ehf"), rng.randint(-2, 2)
        lhs = sugawara_apply(k, act(gen, m, v))
        rhs = act(gen, m, sugawara_apply(k, v))
        rep.record(lhs == rhs, f"sample {i}: [T_({k}), {gen}_({m})]")
    return rep


def random_pbw(rng: random.Random, depth_max: int, nu) -> PBWVector:
    terms = {}
    for _ in range(rng.randint(1, 2)):
        d = rng.randint(0, depth_max)
        neg = rng.choice(_negative_words(d))
        word = neg + (("f", 0),) * rng.randint(0, 2)
        terms[word] = terms.get(word, Fraction(0)) + rng.choice((1, -1, 2, Fraction(1, 2)))
    return PBWVector(terms, nu)
