"""Stacked-diagram expectation functional and the star product.

Stacking assigns integer levels to the loops of a product; crossings whose
two strands sit at different levels are "active", everything else (self
crossings, equal-level crossings) stays virtual.  Each active crossing is
resolved into the untouched term plus the orientation-preserving smoothing,
weighted by the group's crossing coefficients; the expectation is the sum
over all 2^k resolution states.

The smoothing itself is a successor swap on the directed-arc cells of the
stacked word collection: it merges two distinct loops into their
concatenation at the point, and splits a loop whose two strands already
belong to the same evolving component into its two segments.  Subsets of
such swaps commute, so the state only depends on which crossings were
smoothed, never on the processing order.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .coeff import (
    DEFAULT_ORDER,
    GroupSpec,
    SeriesCoeff,
    closed_crossing_values,
    crossing_coeffs,
    kauffman_coeffs,
)
from .diagram import (
    Diagram,
    FormalSum,
    Loop,
    Monomial,
    TransversalityError,
    canonical,
    monomial,
)
from . import goldman


class StarError(ValueError):
    pass


@dataclass(frozen=True)
class ActiveCrossing:
    point: str
    cell_top: int
    cell_bottom: int
    ctype: str  # "over" | "under"


class Stacked:
    """Cells, base successor map, and typed active crossings of a leveled
    loop collection."""

    def __init__(self, d: Diagram, leveled: Sequence[tuple[Loop, int]]):
        self.diagram = d
        self.leveled = list(leveled)
        self.cells: list[tuple[int, tuple]] = []  # (instance, word entry)
        self.succ: list[int] = []
        for inst, (loop, _level) in enumerate(self.leveled):
            base = len(self.cells)
            m = len(loop.word)
            for i, e in enumerate(loop.word):
                self.cells.append((inst, e))
                self.succ.append(base + (i + 1) % m)
        by_pass: dict[tuple[str, int], list[tuple[int, int, int]]] = {}
        for ci, (inst, e) in enumerate(self.cells):
            end = d.entry_end(e)
            if end is not None:
                by_pass.setdefault(end, []).append((ci, e[1], inst))
        self.active: list[ActiveCrossing] = []
        for pid in sorted(d.points):
            for c0, d0, i0 in by_pass.get((pid, 0), []):
                for c1, d1, i1 in by_pass.get((pid, 1), []):
                    l0 = self.leveled[i0][1]
                    l1 = self.leveled[i1][1]
                    if l0 == l1:
                        continue
                    if i0 == i1:
                        raise StarError(
                            f"active crossing {pid} inside one loop: level assignment bug"
                        )
                    # stored sign is for forward (slot0, slot1) strands;
                    # reversed traversal flips it, as does putting the
                    # slot1 strand on top
                    eps = d.points[pid].sign * d0 * d1
                    eps_top_bottom = eps if l0 > l1 else -eps
                    ctype = "over" if eps_top_bottom > 0 else "under"
                    top, bottom = (c0, c1) if l0 > l1 else (c1, c0)
                    self.active.append(ActiveCrossing(pid, top, bottom, ctype))

    def cycles(self, succ: list[int]) -> list[tuple]:
        seen = [False] * len(self.cells)
        words = []
        for start in range(len(self.cells)):
            if seen[start]:
                continue
            word = []
            c = start
            while not seen[c]:
                seen[c] = True
                word.append(self.cells[c][1])
                c = succ[c]
            words.append(tuple(word))
        return words


def _check_factors_disjoint(m: Monomial, mp: Monomial):
    arcs_f = {a for l in m for a, _ in l.word}
    arcs_g = {a for l in mp for a, _ in l.word}
    if arcs_f & arcs_g:
        raise TransversalityError("star factors share arcs (not transversal)")


def expect_loops(
    d: Diagram,
    leveled: Sequence[tuple[Loop, int]],
    group: GroupSpec,
    order: int = DEFAULT_ORDER,
    resolution_order: Sequence[int] | None = None,
) -> FormalSum:
    """State sum over resolutions of the active crossings, exact series
    coefficients.  resolution_order permutes the processing sequence; the
    result cannot depend on it (states are subsets of commuting swaps)."""
    st = Stacked(d, leveled)
    idxs = list(resolution_order) if resolution_order is not None else list(range(len(st.active)))
    if sorted(idxs) != list(range(len(st.active))):
        raise StarError("resolution_order must permute the active crossings")
    pairs = {t: crossing_coeffs(group, t, order) for t in {a.ctype for a in st.active}}
    counts = {"over": 0, "under": 0}
    for a in st.active:
        counts[a.ctype] += 1
    # a state's coefficient depends only on how many crossings of each type
    # were smoothed, so the series products are shared across states
    coeff_memo: dict[tuple[int, int], SeriesCoeff] = {}

    def state_coeff(i: int, j: int) -> SeriesCoeff:
        got = coeff_memo.get((i, j))
        if got is None:
            got = SeriesCoeff.one(order)
            for t, smoothed in (("over", i), ("under", j)):
                if t in pairs:
                    for _ in range(smoothed):
                        got = got * pairs[t].smooth
                    for _ in range(counts[t] - smoothed):
                        got = got * pairs[t].virtual
            coeff_memo[(i, j)] = got
        return got

    states: list[tuple[int, int, list[int]]] = [(0, 0, list(st.succ))]
    for i in idxs:
        a = st.active[i]
        d_over = 1 if a.ctype == "over" else 0
        nxt = []
        for no, nu, succ in states:
            nxt.append((no, nu, succ))
            s2 = list(succ)
            s2[a.cell_top], s2[a.cell_bottom] = s2[a.cell_bottom], s2[a.cell_top]
            nxt.append((no + d_over, nu + 1 - d_over, s2))
        states = nxt
    conv = group.convention
    out = FormalSum.zero(order)
    for no, nu, succ in states:
        out.add_term(monomial(canonical(w, conv) for w in st.cycles(succ)), state_coeff(no, nu))
    return out


def expect_values(
    d: Diagram,
    leveled: Sequence[tuple[Loop, int]],
    group: GroupSpec,
    beta: float,
) -> dict[Monomial, complex]:
    """Closed-form numeric state sum: exact hyperbolic coefficient values at
    the given coupling, symbolic monomials."""
    st = Stacked(d, leveled)
    vals = {t: closed_crossing_values(group, t, beta) for t in {a.ctype for a in st.active}}
    states: list[tuple[complex, list[int]]] = [(1.0 + 0j, list(st.succ))]
    for a in st.active:
        cv, cs = vals[a.ctype]
        nxt = []
        for coeff, succ in states:
            nxt.append((coeff * cv, succ))
            s2 = list(succ)
            s2[a.cell_top], s2[a.cell_bottom] = s2[a.cell_bottom], s2[a.cell_top]
            nxt.append((coeff * cs, s2))
        states = nxt
    conv = group.convention
    out: dict[Monomial, complex] = {}
    for coeff, succ in states:
        m = monomial(canonical(w, conv) for w in st.cycles(succ))
        out[m] = out.get(m, 0j) + coeff
    return out


def expect_diagram(d: Diagram, group: GroupSpec, order: int = DEFAULT_ORDER) -> FormalSum:
    """Expectation of the product of all curves, stacked at their declared
    levels."""
    d.require_valid()
    leveled = [(d.loop_of(cid), d.curves[cid].level) for cid in d.curves]
    return expect_loops(d, leveled, group, order)


def star(
    d: Diagram,
    f: FormalSum,
    g: FormalSum,
    group: GroupSpec,
    order: int | None = None,
) -> FormalSum:
    """Star product: left factor stacked above the right (+1 / -1), active
    crossings resolved, bilinear over monomials."""
    if order is None:
        order = f.order
    out = FormalSum.zero(order)
    for m, cm in f.terms.items():
        for mp, cg in g.terms.items():
            _check_factors_disjoint(m, mp)
            leveled = [(l, 1) for l in m] + [(l, -1) for l in mp]
            out = out + expect_loops(d, leveled, group, order).scale(cm * cg)
    return out


def star_complex(
    d: Diagram,
    f: dict[Monomial, complex],
    g: dict[Monomial, complex],
    group: GroupSpec,
    beta: float,
) -> dict[Monomial, complex]:
    """Numeric star product on monomial sums with complex coefficients,
    using the closed-form crossing values.  Supports nesting."""
    out: dict[Monomial, complex] = {}
    for m, cm in f.items():
        for mp, cg in g.items():
            _check_factors_disjoint(m, mp)
            leveled = [(l, 1) for l in m] + [(l, -1) for l in mp]
            for mono, val in expect_values(d, leveled, group, beta).items():
                out[mono] = out.get(mono, 0j) + cm * cg * val
    return out


def star_loops(d: Diagram, x: Loop, y: Loop, group: GroupSpec, order: int = DEFAULT_ORDER) -> FormalSum:
    conv = group.convention
    return star(
        d,
        FormalSum.of(monomial([canonical(x.word, conv)]), order),
        FormalSum.of(monomial([canonical(y.word, conv)]), order),
        group,
        order,
    )


def poisson_limit_check(
    d: Diagram,
    f: FormalSum,
    g: FormalSum,
    group: GroupSpec,
    order: int | None = None,
) -> FormalSum:
    """(h^1 slot of f*g) minus the Poisson bracket, as a formal sum with
    constant coefficients; identically zero when the star product has the
    right classical limit."""
    if order is None:
        order = f.order
    s = star(d, f, g, group, order)
    b = goldman.bracket_poly(d, f, g, group, form="alt", order=order)
    residual = FormalSum.zero(order)
    for m, c1 in s.slot(1).items():
        residual.add_term(m, c1)
    for m, c0 in b.slot(0).items():
        residual.add_term(m, -c0)
    return residual


@dataclass
class AssocResult:
    level_residual: FormalSum
    nested_residual: FormalSum
    numeric: dict[float, float]

    @property
    def symbolic_zero(self) -> bool:
        return self.level_residual.is_zero()


def assoc_check(
    d: Diagram,
    u: FormalSum,
    v: FormalSum,
    w: FormalSum,
    group: GroupSpec,
    order: int | None = None,
    assign=None,
    betas: Sequence[float] = (0.01, 0.1, 0.5),
) -> AssocResult:
    """Associativity audit.

    Symbolically, (u*v)*w and u*(v*w) both reduce to a three-level
    expectation, encoded with levels (2, 0, -1) and (1, 0, -2); the crossing
    coefficients only see the sign of level differences, so the difference
    of the two encodings must vanish identically.  The nested star products
    themselves are compared as formal sums too, and, when an assignment is
    given, evaluated numerically through the closed-form coefficient path.
    """
    from .holonomy import eval_complex_sum  # local import to avoid cycle

    if order is None:
        order = u.order

    def trilevel(levels: tuple[int, int, int]) -> FormalSum:
        out = FormalSum.zero(order)
        for mu, cu in u.terms.items():
            for mv, cv in v.terms.items():
                for mw, cw in w.terms.items():
                    _check_factors_disjoint(mu, mv)
                    _check_factors_disjoint(mu, mw)
                    _check_factors_disjoint(mv, mw)
                    leveled = (
                        [(l, levels[0]) for l in mu]
                        + [(l, levels[1]) for l in mv]
                        + [(l, levels[2]) for l in mw]
                    )
                    out = out + expect_loops(d, leveled, group, order).scale(cu * cv * cw)
        return out

    level_residual = trilevel((2, 0, -1)) - trilevel((1, 0, -2))
    nested_residual = star(d, star(d, u, v, group, order), w, group, order) - star(
        d, u, star(d, v, w, group, order), group, order
    )

    numeric: dict[float, float] = {}
    if assign is not None:
        def as_complex(fs: FormalSum, beta: float) -> dict[Monomial, complex]:
            return {m: c.eval_h(2.0 * beta) for m, c in fs.terms.items()}

        for beta in betas:
            fu, fv, fw = as_complex(u, beta), as_complex(v, beta), as_complex(w, beta)
            left = star_complex(d, star_complex(d, fu, fv, group, beta), fw, group, beta)
            right = star_complex(d, fu, star_complex(d, fv, fw, group, beta), group, beta)
            numeric[beta] = abs(
                eval_complex_sum(left, assign) - eval_complex_sum(right, assign)
            )
    return AssocResult(level_residual, nested_residual, numeric)


# -- unoriented (rank-2) two-smoothing resolution --------------------------------
#
# Orientation flags are bookkeeping only here: a crossing's two unoriented
# smoothings are the two ways of re-pairing its four strand ends, fixed by
# the ORIGINAL stacked orientations.  Pairings at distinct crossings touch
# disjoint ends, so the state depends only on the subset of reversal
# choices, never on processing order.


def _link(pair: dict[int, int], e1: int, e2: int):
    pair[e1] = e2
    pair[e2] = e1


def _pairing_circles(st: Stacked, pair: dict[int, int]) -> list[tuple]:
    """Closed walks through the end-pairing: ends 2c / 2c+1 are the tail and
    head of cell c; traversing a cell against its stored sense flips the
    word entry."""
    n = len(st.cells)
    visited = [False] * n
    words = []
    for start in range(n):
        if visited[start]:
            continue
        word = []
        cur, sense = start, 1
        while True:
            visited[cur] = True
            e = st.cells[cur][1]
            word.append(e if sense == 1 else (e[0], -e[1]))
            exit_end = 2 * cur + (1 if sense == 1 else 0)
            nxt_end = pair[exit_end]
            cur = nxt_end // 2
            sense = 1 if nxt_end % 2 == 0 else -1
            if cur == start:
                break
        words.append(tuple(word))
    return words


def unoriented_kauffman_resolution(
    d: Diagram,
    leveled: Sequence[tuple[Loop, int]],
    group: GroupSpec,
    order: int = DEFAULT_ORDER,
) -> FormalSum:
    """Two-smoothing state sum for the rank-2 groups in the sign-normalized
    (per-loop W -> -W) unoriented convention: every active crossing becomes
    a*(compatible smoothing) + b*(reversal smoothing) for an over-crossing,
    with a and b swapped for an under-crossing.  No double-point term
    remains.

    Evaluation contract: summing coeff(state) * prod(-W_loop) over the
    result equals (-1)^(#input loops) times the oriented expectation.
    """
    if not group.orientation_free:
        raise StarError("unoriented resolution applies to the rank-2 groups only")
    st = Stacked(d, leveled)
    a, b = kauffman_coeffs(order)
    crossings = list(st.active)
    if len({ac.point for ac in crossings}) != len(crossings):
        raise StarError("duplicate loops are not supported in the unoriented resolution")
    base: dict[int, int] = {}
    for c in range(len(st.cells)):
        _link(base, 2 * c + 1, 2 * st.succ[c])
    out = FormalSum.zero(order)
    for mask in range(2 ** len(crossings)):
        pair = dict(base)
        coeff = SeriesCoeff.one(order)
        for i, ac in enumerate(crossings):
            c0, c1 = ac.cell_top, ac.cell_bottom
            n0, n1 = st.succ[c0], st.succ[c1]
            if mask >> i & 1:  # reversal smoothing: in-in and out-out
                _link(pair, 2 * c0 + 1, 2 * c1 + 1)
                _link(pair, 2 * n0, 2 * n1)
                coeff = coeff * (b if ac.ctype == "over" else a)
            else:  # compatible smoothing: same reconnection as the oriented one
                _link(pair, 2 * c0 + 1, 2 * n1)
                _link(pair, 2 * c1 + 1, 2 * n0)
                coeff = coeff * (a if ac.ctype == "over" else b)
        out.add_term(
            monomial(canonical(w, "unoriented") for w in _pairing_circles(st, pair)),
            coeff,
        )
    return out
