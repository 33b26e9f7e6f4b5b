"""Poisson bracket of Wilson-loop polynomials as formal sums.

The bracket of two loops is a signed sum over their intersection points of
concatenated loops; for the rank-2 groups the concatenation comes with either
the reversed-partner correction (reversal form) or the product-term
correction (alt form), which agree as functions but not as formal sums.
Monomials extend by the Leibniz rule.
"""

from __future__ import annotations

from fractions import Fraction

from .coeff import DEFAULT_ORDER, GroupSpec
from .diagram import (
    Diagram,
    FormalSum,
    Loop,
    Monomial,
    canonical,
    monomial,
    reverse,
)


def bracket_gln(d: Diagram, x: Loop, y: Loop, order: int = DEFAULT_ORDER) -> FormalSum:
    """GL(n)/U(n) bracket: sum_i eps_i W_{x *_i y} (integer h^0 coefficients)."""
    out = FormalSum.zero(order)
    for pid, eps in d.crossings_between(x, y):
        joined = canonical(d.concat_at(x, y, pid).word, "oriented")
        out.add_term(monomial([joined]), Fraction(eps))
    return out


def bracket_sl2(
    d: Diagram, x: Loop, y: Loop, form: str = "alt", order: int = DEFAULT_ORDER
) -> FormalSum:
    """Rank-2 bracket in either printed form.

    reversal: (1/2) sum_i eps_i (W_{x *_i y} - W_{x *_i y-reversed})
    alt:      sum_i eps_i (W_{x *_i y} - (1/2) W_x W_y)
    """
    if form not in ("alt", "reversal"):
        raise ValueError(f"form must be 'alt' or 'reversal', got {form!r}")
    out = FormalSum.zero(order)
    conv = "unoriented"
    for pid, eps in d.crossings_between(x, y):
        joined = canonical(d.concat_at(x, y, pid).word, conv)
        if form == "reversal":
            rev = canonical(d.concat_at(x, reverse(y), pid).word, conv)
            out.add_term(monomial([joined]), Fraction(eps, 2))
            out.add_term(monomial([rev]), Fraction(-eps, 2))
        else:
            prod = monomial([canonical(x.word, conv), canonical(y.word, conv)])
            out.add_term(monomial([joined]), Fraction(eps))
            out.add_term(prod, Fraction(-eps, 2))
    return out


def bracket_loops(
    d: Diagram,
    x: Loop,
    y: Loop,
    group: GroupSpec,
    form: str = "alt",
    order: int = DEFAULT_ORDER,
) -> FormalSum:
    if group.kind in ("gln", "un"):
        return bracket_gln(d, x, y, order)
    return bracket_sl2(d, x, y, form, order)


def bracket_poly(
    d: Diagram,
    f: FormalSum,
    g: FormalSum,
    group: GroupSpec,
    form: str = "alt",
    order: int | None = None,
) -> FormalSum:
    """Bilinear extension with the Leibniz rule over the loops of each
    monomial.  Loop pairs sharing arcs are rejected as non-transversal."""
    if order is None:
        order = f.order
    conv = group.convention
    out = FormalSum.zero(order)
    for m, cm in f.terms.items():
        for mp, cmp_ in g.terms.items():
            for i, lx in enumerate(m):
                rest_m = m[:i] + m[i + 1 :]
                for j, ly in enumerate(mp):
                    rest_mp = mp[:j] + mp[j + 1 :]
                    base = bracket_loops(d, lx, ly, group, form, order)
                    if base.is_zero():
                        continue
                    extra = tuple(canonical(l.word, conv) for l in rest_m + rest_mp)
                    out = out + base.mul_monomial(monomial(extra)).scale(cm * cmp_)
    return out


def bracket_monomials(
    d: Diagram,
    m: Monomial,
    mp: Monomial,
    group: GroupSpec,
    form: str = "alt",
    order: int = DEFAULT_ORDER,
) -> FormalSum:
    return bracket_poly(d, FormalSum.of(m, order), FormalSum.of(mp, order), group, form, order)
