"""Diagram model: validation, canonical forms, concatenation, text format."""

import numpy as np
import pytest
from fractions import Fraction

from loopstar.coeff import GroupSpec, SeriesCoeff
from loopstar.diagram import (
    Arc,
    Diagram,
    DiagramError,
    FormalSum,
    TransversalityError,
    canonical,
    canonicalize,
    formal_sum_from_json,
    formal_sum_to_json,
    monomial,
    parse_diagram,
    render_diagram,
    reverse,
)
from loopstar.holonomy import eval_wilson, loop_matrix, random_assignment
from loopstar.checks import random_diagram

ONE_CROSSING = "point a +\ncurve C level 1: a\ncurve D level 0: a\n"


def test_parse_basic():
    d = parse_diagram(ONE_CROSSING)
    assert set(d.points) == {"a"}
    assert d.points["a"].sign == 1
    assert d.curves["C"].level == 1
    assert d.curves["D"].passes == ("a",)
    assert d.validate() == []


def test_parse_comments_and_blank_lines():
    d = parse_diagram("# heading\n\npoint a -  # trailing\ncurve C level 0: a a\n")
    assert d.points["a"].sign == -1
    assert d.validate() == []


@pytest.mark.parametrize("bad", [
    "point a *\n",
    "point a\n",
    "curve C: a\n",
    "curve C level x: a\n",
    "loop C level 0: a\n",
])
def test_parse_syntax_errors(bad):
    with pytest.raises(DiagramError):
        parse_diagram(bad)


def test_validate_triple_point():
    d = parse_diagram("point a +\ncurve C level 0: a a a\n")
    errs = d.validate()
    assert any("triple" in e for e in errs)
    with pytest.raises(DiagramError):
        d.require_valid()


def test_validate_self_crossing_ok():
    d = parse_diagram("point a +\npoint b -\ncurve C level 0: a b a b\n")
    assert d.validate() == []


def test_validate_empty_diagram():
    assert Diagram().validate() == []


def test_validate_dangling():
    d = parse_diagram("point a +\npoint b -\ncurve C level 0: a a\n")
    assert any("never visited" in e for e in d.validate())
    d2 = parse_diagram("curve C level 0: zz zz\n")
    assert any("undeclared" in e for e in d2.validate())
    d3 = parse_diagram("point a +\ncurve C level 0: a\n")
    assert any("only one pass" in e for e in d3.validate())


def test_render_round_trip():
    d = parse_diagram(ONE_CROSSING)
    text = render_diagram(d)
    assert render_diagram(parse_diagram(text)) == text


GOLDEN_SIX = """\
point s4 -
point s5 -
point x0 -
point x1 +
point x2 +
point x3 +
curve C0 level 0: x1 x3 s4 x2 x0 s4
curve C1 level 0: x3 x1 s5 s5 x0 x2
"""


def test_render_round_trip_six_crossings():
    # frozen golden: canonical rendering of a 6-crossing two-curve diagram
    # (4 inter-curve crossings plus one self-crossing per curve)
    rng = np.random.default_rng(12)
    d = random_diagram(rng, n_curves=2, max_pair_crossings=6, self_crossing_prob=1.0)
    assert render_diagram(d) == GOLDEN_SIX
    assert render_diagram(parse_diagram(GOLDEN_SIX)) == GOLDEN_SIX
    assert parse_diagram(GOLDEN_SIX).validate() == []


def test_duplicate_declarations_rejected():
    with pytest.raises(DiagramError):
        parse_diagram("point a +\npoint a -\n")
    with pytest.raises(DiagramError):
        parse_diagram("curve C level 0:\ncurve C level 1:\n")


# -- canonical forms ------------------------------------------------------------


def loop_from(d, cid):
    return d.loop_of(cid)


def test_canonical_rotation_invariance():
    d = parse_diagram("point a +\npoint b -\ncurve C level 0: a b a b\n")
    w = tuple((Arc("C", i), 1) for i in range(4))
    forms = {canonical(w[i:] + w[:i]).word for i in range(4)}
    assert len(forms) == 1


def test_canonical_unoriented_merges_reversal():
    d = parse_diagram(ONE_CROSSING)
    j = d.concat_at(d.loop_of("C"), d.loop_of("D"), "a")
    assert canonical(j.word, "unoriented") == canonical(reverse(j).word, "unoriented")
    assert canonical(j.word, "oriented") != canonical(reverse(j).word, "oriented")


def test_canonicalize_idempotent():
    rng = np.random.default_rng(3)
    for _ in range(10):
        d = random_diagram(rng, n_curves=2)
        m = monomial(d.loop_of(c) for c in d.curves)
        for conv in ("oriented", "unoriented"):
            once = canonicalize(m, conv)
            assert canonicalize(once, conv) == once


def test_forward_words_agree_across_conventions():
    # forward-only words canonicalize identically under both conventions
    rng = np.random.default_rng(4)
    for _ in range(10):
        d = random_diagram(rng, n_curves=2)
        for c in d.curves:
            w = d.loop_of(c).word
            assert canonical(w, "oriented") == canonical(w, "unoriented")


def test_reverse_involution():
    d = parse_diagram("point a +\npoint b -\ncurve C level 0: a b a b\n")
    loop = d.loop_of("C")
    assert canonical(reverse(reverse(loop)).word) == canonical(loop.word)


# -- concatenation ---------------------------------------------------------------


def test_concat_simple_loops():
    d = parse_diagram(ONE_CROSSING)
    j = d.concat_at(d.loop_of("C"), d.loop_of("D"), "a")
    assert len(j) == 2  # visits a twice
    gaps = [p for _, p, _, _ in d.loop_gaps(j)]
    assert gaps == ["a", "a"]


def test_concat_length_additivity():
    rng = np.random.default_rng(9)
    for _ in range(10):
        d = random_diagram(rng, n_curves=2, self_crossing_prob=0.0)
        x, y = d.loop_of("C0"), d.loop_of("C1")
        shared = [p for p, _ in d.crossings_between(x, y)]
        if not shared:
            continue
        j = d.concat_at(x, y, shared[0])
        assert len(j) == len(x) + len(y)


def test_concat_symmetry_up_to_rotation():
    d = parse_diagram(ONE_CROSSING)
    x, y = d.loop_of("C"), d.loop_of("D")
    assert canonical(d.concat_at(x, y, "a").word) == canonical(d.concat_at(y, x, "a").word)


def test_concat_error_cases():
    d = parse_diagram("point a +\npoint s -\ncurve C level 1: a s s\ncurve D level 0: a\n")
    with pytest.raises(TransversalityError):
        d.concat_at(d.loop_of("C"), d.loop_of("D"), "s")  # self-crossing of C
    big = parse_diagram("point a +\npoint b -\ncurve C level 1: a\ncurve D level 0: a\ncurve E level 0: b b\n")
    with pytest.raises(TransversalityError):
        big.concat_at(big.loop_of("C"), big.loop_of("E"), "a")


def test_concat_holonomy_contract():
    # evaluation of the concatenation equals tr(hol_{C,p} hol_{D,p})
    rng = np.random.default_rng(21)
    for _ in range(5):
        d = random_diagram(rng, n_curves=2, self_crossing_prob=0.4)
        x, y = d.loop_of("C0"), d.loop_of("C1")
        crossings = d.crossings_between(x, y)
        if not crossings:
            continue
        A = random_assignment(d, GroupSpec("gln", 3), rng)
        for pid, _ in crossings:
            j = d.concat_at(x, y, pid)
            gx = next(g for g, p, _, _ in d.loop_gaps(x) if p == pid)
            gy = next(g for g, p, _, _ in d.loop_gaps(y) if p == pid)
            want = np.trace(loop_matrix(x, A, gx) @ loop_matrix(y, A, gy))
            assert abs(eval_wilson(j, A) - want) < 1e-12


def test_reverse_wilson_values():
    d = parse_diagram("point a +\npoint b -\ncurve C level 0: a b a b\n")
    loop = d.loop_of("C")
    rng = np.random.default_rng(2)
    for kind, n in (("su2", 2), ("sl2r", 2)):
        A = random_assignment(d, GroupSpec(kind, n), rng)
        assert abs(eval_wilson(reverse(loop), A) - eval_wilson(loop, A)) < 1e-12
    A = random_assignment(d, GroupSpec("gln", 3), rng)
    assert abs(eval_wilson(reverse(loop), A) - eval_wilson(loop, A)) > 1e-6


def test_crossing_sign_flips_with_reversal():
    d = parse_diagram(ONE_CROSSING)
    x, y = d.loop_of("C"), d.loop_of("D")
    assert d.crossings_between(x, y) == [("a", 1)]
    assert d.crossings_between(y, x) == [("a", -1)]  # swapped orientation order
    assert d.crossings_between(x, reverse(y)) == [("a", -1)]
    assert d.crossings_between(reverse(x), reverse(y)) == [("a", 1)]


def test_free_loop():
    d = parse_diagram("curve C level 0:\n")
    loop = d.loop_of("C")
    assert len(loop) == 1
    assert d.loop_gaps(loop) == []
    A = random_assignment(d, GroupSpec("un", 3), np.random.default_rng(0))
    assert abs(eval_wilson(loop, A) - np.trace(A.matrices["C.0"])) < 1e-14


# -- formal sums -----------------------------------------------------------------


def test_formal_sum_merging_and_pruning():
    d = parse_diagram(ONE_CROSSING)
    m = monomial([d.loop_of("C")])
    fs = FormalSum(order=4)
    fs.add_term(m, Fraction(1, 2))
    fs.add_term(m, Fraction(1, 2))
    assert fs.terms[m] == SeriesCoeff.one(4)
    fs.add_term(m, -1)
    assert fs.is_zero()


def test_formal_sum_slot():
    fs = FormalSum(order=3)
    d = parse_diagram(ONE_CROSSING)
    m = monomial([d.loop_of("C")])
    fs.add_term(m, SeriesCoeff([0, 2, 0, 0], order=3))
    assert fs.slot(1) == {m: Fraction(2)}
    assert fs.slot(0) == {}


def test_formal_sum_json_round_trip():
    d = parse_diagram(ONE_CROSSING)
    j = d.concat_at(d.loop_of("C"), reverse(d.loop_of("D")), "a")
    fs = FormalSum(order=2)
    fs.add_term(monomial([canonical(j.word)]), SeriesCoeff([1, Fraction(-1, 2), Fraction(3, 8)], order=2))
    fs.add_term(monomial([d.loop_of("C"), d.loop_of("D")]), SeriesCoeff([0, 1, 0], order=2))
    back = formal_sum_from_json(formal_sum_to_json(fs))
    assert back == fs


def test_arc_ids():
    a = Arc("C1", 0)
    assert a.id == "C1.0"
    assert Arc.from_id("C1.0") == a
    with pytest.raises(DiagramError):
        Arc.from_id("nodot")
