"""Numeric oracle tests: samplers, bases, Wilson evaluation, derivative
lattice checks."""

import numpy as np
import pytest

from loopstar.coeff import GroupSpec, SeriesCoeff
from loopstar.diagram import FormalSum, monomial, parse_diagram
from loopstar.holonomy import (
    HolonomyAssignment,
    HolonomyError,
    assignment_from_json,
    assignment_to_json,
    eval_formal,
    eval_monomial,
    eval_wilson,
    gram_pairing,
    lattice_derivative_check,
    lie_basis,
    loop_matrix,
    projection_pi,
    random_assignment,
    sample,
    verify_gram_identity,
)

GROUPS = [GroupSpec("su2"), GroupSpec("sl2r"), GroupSpec("sl2c"),
          GroupSpec("gln", 2), GroupSpec("gln", 3), GroupSpec("un", 2), GroupSpec("un", 3)]


@pytest.mark.parametrize("group", GROUPS, ids=str)
def test_sampler_membership(group):
    rng = np.random.default_rng(7)
    for _ in range(20):
        u = sample(group, rng)
        assert u.shape == (group.n, group.n)
        if group.kind in ("su2", "sl2r", "sl2c"):
            assert abs(np.linalg.det(u) - 1) < 1e-12
        if group.kind == "sl2r":
            assert np.max(np.abs(u.imag)) < 1e-14
        if group.kind in ("su2", "un"):
            assert np.max(np.abs(u.conj().T @ u - np.eye(group.n))) < 1e-12
        if group.kind == "gln":
            assert abs(np.linalg.det(u)) > 1e-6


def test_sampler_deterministic_under_seed():
    for group in (GroupSpec("su2"), GroupSpec("gln", 3)):
        a = sample(group, np.random.default_rng(123))
        b = sample(group, np.random.default_rng(123))
        assert np.array_equal(a, b)


def test_eval_wilson_identity_assignment():
    d = parse_diagram("point a +\npoint b -\ncurve C level 0: a b a b\ncurve D level 0:\n")
    group = GroupSpec("gln", 3)
    A = HolonomyAssignment(group, {a.id: np.eye(3, dtype=complex) for a in d.all_arcs()})
    assert eval_wilson(d.loop_of("C"), A) == 3.0  # loop of length 4, trace of I
    assert eval_wilson(d.loop_of("D"), A) == 3.0  # single free arc


def test_eval_wilson_rotation_independence():
    d = parse_diagram("point a +\npoint b -\ncurve C level 0: a b a b\n")
    rng = np.random.default_rng(1)
    A = random_assignment(d, GroupSpec("gln", 2), rng)
    loop = d.loop_of("C")
    vals = [np.trace(loop_matrix(loop, A, base_gap=g)) for g in range(len(loop))]
    assert max(abs(v - vals[0]) for v in vals) < 1e-13


def test_eval_formal_linearity():
    d = parse_diagram("point a +\ncurve C level 1: a\ncurve D level 0: a\n")
    rng = np.random.default_rng(5)
    A = random_assignment(d, GroupSpec("su2"), rng)
    mC = monomial([d.loop_of("C")])
    mD = monomial([d.loop_of("D")])
    assert eval_formal(FormalSum.zero(4), A, 0.3) == 0
    single = FormalSum.of(mC, 4)
    assert abs(eval_formal(single, A, 0.3) - eval_wilson(d.loop_of("C"), A)) < 1e-12
    fs = FormalSum(order=4)
    fs.add_term(mC, SeriesCoeff([2, 1], order=4))
    fs.add_term(mD, SeriesCoeff([0, 0, 3], order=4))
    beta = 0.25
    want = (2 + 2 * beta) * eval_wilson(d.loop_of("C"), A) + 3 * (2 * beta) ** 2 * eval_wilson(d.loop_of("D"), A)
    assert abs(eval_formal(fs, A, beta) - want) < 1e-12
    missing = HolonomyAssignment(A.group, {})
    with pytest.raises(HolonomyError):
        eval_formal(single, missing, 0.0)


def test_projection_pi():
    rng = np.random.default_rng(11)
    gl3 = GroupSpec("gln", 3)
    u = sample(gl3, rng)
    assert np.array_equal(projection_pi(gl3, u), u)
    su2 = GroupSpec("su2")
    assert np.max(np.abs(projection_pi(su2, np.eye(2, dtype=complex)))) == 0
    for kind in ("sl2r", "sl2c", "su2"):
        g = GroupSpec(kind)
        u, v = sample(g, rng), sample(g, rng)
        lhs = np.trace(projection_pi(g, u) @ projection_pi(g, v))
        want = np.trace(u @ v) - 0.5 * np.trace(u) * np.trace(v)
        assert abs(lhs - want) < 1e-10


@pytest.mark.parametrize("group", GROUPS, ids=str)
def test_gram_identity(group):
    rng = np.random.default_rng(13)
    basis = lie_basis(group)
    k = len(basis.basis)
    assert np.max(np.abs(basis.gram_inv @ basis.gram - np.eye(k))) < 1e-12
    for _ in range(50):
        u, v = sample(group, rng), sample(group, rng)
        assert verify_gram_identity(group, u, v, basis) < 1e-10


def test_gram_identity_basis_independence():
    # su(2) and sl(2) bases complex-span the same algebra, so the pairing
    # must agree between them
    rng = np.random.default_rng(17)
    su2, sl2 = GroupSpec("su2"), GroupSpec("sl2c")
    b1, b2 = lie_basis(su2), lie_basis(sl2)
    for _ in range(20):
        u, v = sample(su2, rng), sample(su2, rng)
        p1 = gram_pairing(su2, u, v, b1)
        p2 = gram_pairing(sl2, u, v, b2)
        assert abs(p1 - p2) < 1e-10


def test_gram_identity_un_reduces_to_trace():
    # the real u(n) basis complex-spans gl(n): the pairing is tr(UV)
    rng = np.random.default_rng(19)
    un = GroupSpec("un", 3)
    basis = lie_basis(un)
    for _ in range(20):
        u, v = sample(un, rng), sample(un, rng)
        assert abs(gram_pairing(un, u, v, basis) - np.trace(u @ v)) < 1e-10


def test_sl2_trace_identity():
    rng = np.random.default_rng(23)
    for kind in ("su2", "sl2r", "sl2c"):
        g = GroupSpec(kind)
        for _ in range(100):
            u, v = sample(g, rng), sample(g, rng)
            lhs = np.trace(u @ v) + np.trace(u @ np.linalg.inv(v))
            assert abs(lhs - np.trace(u) * np.trace(v)) < 1e-10


def test_lattice_flat_connection():
    # all fields zero: interior derivative of tr hol reduces exactly to
    # tr(e_a) up to the O(step) quadratic term
    group = GroupSpec("gln", 2)
    res = lattice_derivative_check(group, 8, "interior", 1e-6, np.random.default_rng(0), field_scale=0.0)
    assert res < 1e-5


@pytest.mark.parametrize("group", [GroupSpec("gln", 2), GroupSpec("su2")], ids=str)
@pytest.mark.parametrize("direction", ["interior", "endpoint"])
def test_lattice_first_order_convergence(group, direction):
    r4 = lattice_derivative_check(group, 64, direction, 1e-4, np.random.default_rng(42))
    r5 = lattice_derivative_check(group, 64, direction, 1e-5, np.random.default_rng(42))
    assert r4 < 1e-3
    assert r5 < 1e-4
    assert r5 < r4 / 3  # first-order decay


def test_lattice_validation():
    with pytest.raises(HolonomyError):
        lattice_derivative_check(GroupSpec("su2"), 1, "interior")
    with pytest.raises(HolonomyError):
        lattice_derivative_check(GroupSpec("su2"), 8, "sideways")


def test_assignment_json_round_trip():
    d = parse_diagram("point a +\ncurve C level 1: a\ncurve D level 0: a\n")
    group = GroupSpec("un", 2)
    A = random_assignment(d, group, np.random.default_rng(3))
    back = assignment_from_json(assignment_to_json(A), group)
    for aid, m in A.matrices.items():
        assert np.max(np.abs(back.matrices[aid] - m)) < 1e-15
    m = monomial([d.loop_of("C"), d.loop_of("D")])
    assert abs(eval_monomial(m, back) - eval_monomial(m, A)) < 1e-14
