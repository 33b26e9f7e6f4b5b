"""Numeric oracle: random group elements, Lie-algebra bases with Gram
matrices, Wilson-loop evaluation over arc-matrix assignments, trace and
projection identities, and a lattice check of the functional-derivative
formulas.

Arbitrary arc matrices stand in for connections: any finite arc-holonomy
profile is realizable by a smooth connection, so identities quantified over
connections are tested by quantifying over assignments.

Holonomy words multiply left to right along the path, so the transport of
"x then y" is hol(x) @ hol(y).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm

from .coeff import GroupSpec
from .diagram import Arc, Diagram, FormalSum, Loop, Monomial


class HolonomyError(ValueError):
    pass


# -- samplers -----------------------------------------------------------------


def sample(group: GroupSpec, rng: np.random.Generator) -> np.ndarray:
    """Random element of the group, deterministic under a seeded rng."""
    kind, n = group.kind, group.n
    if kind == "su2":
        q = rng.normal(size=4)
        q /= np.linalg.norm(q)
        return np.array(
            [[q[0] + 1j * q[3], q[2] + 1j * q[1]],
             [-q[2] + 1j * q[1], q[0] - 1j * q[3]]]
        )
    if kind == "sl2r":
        while True:
            m = rng.normal(size=(2, 2))
            d = np.linalg.det(m)
            if abs(d) > 0.1:
                break
        if d < 0:
            m = m[:, ::-1].copy()
            d = -d
        return (m / math.sqrt(d)).astype(complex)
    if kind == "sl2c":
        while True:
            m = (rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))) / math.sqrt(2)
            d = np.linalg.det(m)
            if abs(d) > 0.1:
                break
        return m / np.sqrt(d)
    if kind in ("un", "gln"):
        z = (rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))) / math.sqrt(2)
        q, r = np.linalg.qr(z)
        q = q @ np.diag(np.diag(r) / np.abs(np.diag(r)))
        if kind == "un":
            return q
        return q @ np.diag(np.exp(0.3 * rng.normal(size=n)))
    raise HolonomyError(f"unsupported group kind {kind!r}")


def sample_algebra(group: GroupSpec, rng: np.random.Generator, scale: float = 0.8) -> np.ndarray:
    """Random Lie-algebra element as a real combination of the fixed basis."""
    basis = lie_basis(group).basis
    coeffs = rng.normal(size=len(basis)) * scale / math.sqrt(len(basis))
    return sum(c * e for c, e in zip(coeffs, basis))


# -- Lie bases ----------------------------------------------------------------


@dataclass(frozen=True)
class LieBasis:
    """Basis {e_a} with Gram matrix g_ab = tr(e_a e_b) and its inverse."""

    name: str
    basis: tuple[np.ndarray, ...]
    gram: np.ndarray
    gram_inv: np.ndarray


def _elementary(n: int, i: int, j: int) -> np.ndarray:
    m = np.zeros((n, n), dtype=complex)
    m[i, j] = 1.0
    return m


def _build_basis(name: str, mats: list[np.ndarray]) -> LieBasis:
    k = len(mats)
    gram = np.array([[np.trace(a @ b) for b in mats] for a in mats])
    if abs(np.linalg.det(gram)) < 1e-12:
        raise HolonomyError(f"singular Gram matrix for basis {name}")
    return LieBasis(name, tuple(mats), gram, np.linalg.inv(gram))


def lie_basis(group: GroupSpec) -> LieBasis:
    kind, n = group.kind, group.n
    if kind == "su2":
        sx = np.array([[0, 1], [1, 0]], dtype=complex)
        sy = np.array([[0, -1j], [1j, 0]], dtype=complex)
        sz = np.array([[1, 0], [0, -1]], dtype=complex)
        return _build_basis("su2", [1j * sx, 1j * sy, 1j * sz])
    if kind in ("sl2r", "sl2c"):
        h = np.array([[1, 0], [0, -1]], dtype=complex)
        e = np.array([[0, 1], [0, 0]], dtype=complex)
        f = np.array([[0, 0], [1, 0]], dtype=complex)
        return _build_basis("sl2", [h, e, f])
    if kind == "gln":
        return _build_basis(f"gl{n}", [_elementary(n, i, j) for i in range(n) for j in range(n)])
    if kind == "un":
        mats = [1j * _elementary(n, k, k) for k in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                mats.append(_elementary(n, i, j) - _elementary(n, j, i))
                mats.append(1j * (_elementary(n, i, j) + _elementary(n, j, i)))
        return _build_basis(f"u{n}", mats)
    raise HolonomyError(f"unsupported group kind {kind!r}")


def projection_pi(group: GroupSpec, u: np.ndarray) -> np.ndarray:
    """Group-to-algebra projection entering the trace identity.

    gln/un: identity (the basis complex-spans all of gl(n));
    su2: (U - U^-1)/2;  sl2r/sl2c: U - tr(U)/2 * I.
    """
    if group.kind in ("gln", "un"):
        return u
    if group.kind == "su2":
        return 0.5 * (u - np.linalg.inv(u))
    if group.kind in ("sl2r", "sl2c"):
        return u - 0.5 * np.trace(u) * np.eye(2)
    raise HolonomyError(f"unsupported group kind {group.kind!r}")


def gram_pairing(group: GroupSpec, u: np.ndarray, v: np.ndarray, basis: LieBasis | None = None) -> complex:
    """sum_ab (g^-1)_ab tr(U e_a) tr(V e_b)."""
    b = basis or lie_basis(group)
    tu = np.array([np.trace(u @ e) for e in b.basis])
    tv = np.array([np.trace(v @ e) for e in b.basis])
    return complex(tu @ b.gram_inv @ tv)


def verify_gram_identity(group: GroupSpec, u: np.ndarray, v: np.ndarray, basis: LieBasis | None = None) -> float:
    """|gram_pairing(U, V) - tr(pi(U) pi(V))|."""
    lhs = gram_pairing(group, u, v, basis)
    rhs = complex(np.trace(projection_pi(group, u) @ projection_pi(group, v)))
    return abs(lhs - rhs)


# -- Wilson evaluation ---------------------------------------------------------


@dataclass(frozen=True)
class HolonomyAssignment:
    """Map arc id -> invertible matrix, with the group it was sampled for."""

    group: GroupSpec
    matrices: dict[str, np.ndarray]

    def matrix(self, arc: Arc) -> np.ndarray:
        try:
            return self.matrices[arc.id]
        except KeyError:
            raise HolonomyError(f"no matrix assigned to arc {arc.id}") from None


def random_assignment(d: Diagram, group: GroupSpec, rng: np.random.Generator) -> HolonomyAssignment:
    return HolonomyAssignment(
        group, {a.id: sample(group, rng) for a in d.all_arcs()}
    )


def loop_matrix(loop: Loop, assign: HolonomyAssignment, base_gap: int | None = None) -> np.ndarray:
    """Ordered product of arc matrices along the word (inverses for reversed
    entries).  With base_gap, the product starts just after that gap."""
    word = loop.word
    if base_gap is not None:
        g = base_gap % len(word)
        word = word[g + 1 :] + word[: g + 1]
    n = assign.group.n
    acc = np.eye(n, dtype=complex)
    for arc, d in word:
        m = assign.matrix(arc)
        acc = acc @ (m if d == 1 else np.linalg.inv(m))
    return acc


def eval_wilson(loop: Loop, assign: HolonomyAssignment) -> complex:
    """Trace of the loop holonomy; independent of the starting point."""
    return complex(np.trace(loop_matrix(loop, assign)))


def eval_monomial(m: Monomial, assign: HolonomyAssignment) -> complex:
    out = 1.0 + 0j
    for loop in m:
        out *= eval_wilson(loop, assign)
    return out


def eval_formal(fs: FormalSum, assign: HolonomyAssignment, beta: float) -> complex:
    """Evaluate a formal sum: truncated-series coefficients at h = 2*beta
    times the Wilson values of the monomials."""
    out = 0j
    for m, c in fs.terms.items():
        out += c.eval_h(2.0 * beta) * eval_monomial(m, assign)
    return out


def eval_complex_sum(terms: dict[Monomial, complex], assign: HolonomyAssignment) -> complex:
    """Evaluate a monomial sum whose coefficients are already numbers (the
    closed-form path)."""
    out = 0j
    for m, c in terms.items():
        out += c * eval_monomial(m, assign)
    return out


# -- lattice functional-derivative check ----------------------------------------


def lattice_derivative_check(
    group: GroupSpec,
    n_segments: int,
    direction: str = "interior",
    step: float = 1e-4,
    rng: np.random.Generator | None = None,
    field_scale: float = 0.8,
) -> float:
    """Finite-difference check of the holonomy derivative formulas on a
    discretized connection; returns the max residual over basis directions.

    interior: on a circle of N segments, inserting exp(s e_a) at a lattice
    point and differencing tr hol must match tr(hol_{C,t} e_a) to first
    order in s.

    endpoint: on the interval [0,1], the perturbation is a symmetric bump
    of width ~step straddling t=0, so only half its mass lands inside the
    interval; the matrix derivative must match (1/2) e_a hol to first order.
    """
    if n_segments < 2:
        raise HolonomyError("need at least 2 segments")
    if direction not in ("interior", "endpoint"):
        raise HolonomyError(f"direction must be interior|endpoint, got {direction!r}")
    rng = rng or np.random.default_rng(0)
    basis = lie_basis(group).basis
    dt = 1.0 / n_segments
    fields = [sample_algebra(group, rng, scale=field_scale) for _ in range(n_segments)]
    segs = [expm(a * dt) for a in fields]

    if direction == "interior":
        # base the insertion at lattice point j (start of segment j)
        j = n_segments // 2
        hol_j = np.eye(group.n, dtype=complex)
        for k in list(range(j, n_segments)) + list(range(0, j)):
            hol_j = hol_j @ segs[k]
        worst = 0.0
        for e in basis:
            plus = np.trace(expm(step * e) @ hol_j)
            base = np.trace(hol_j)
            fd = (plus - base) / step
            worst = max(worst, abs(fd - np.trace(e @ hol_j)))
        return worst

    # endpoint: symmetric box bump of total mass 1 centered at t=0; the
    # in-interval part covers [0, w] with density 1/(2w), total mass 1/2
    w = min(step, 0.5 * dt)
    hol = np.eye(group.n, dtype=complex)
    for m in segs:
        hol = hol @ m
    rest = np.eye(group.n, dtype=complex)
    for m in segs[1:]:
        rest = rest @ m
    worst = 0.0
    for e in basis:
        head = expm(fields[0] * w + (step / 2.0) * e) @ expm(fields[0] * (dt - w))
        fd = (head @ rest - hol) / step
        worst = max(worst, float(np.max(np.abs(fd - 0.5 * e @ hol))))
    return worst


# -- JSON assignments -----------------------------------------------------------


def assignment_to_json(assign: HolonomyAssignment) -> str:
    arcs = {
        aid: [[[z.real, z.imag] for z in row] for row in m]
        for aid, m in sorted(assign.matrices.items())
    }
    return json.dumps({"group": str(assign.group), "arcs": arcs}, indent=2)


def assignment_from_json(text: str, group: GroupSpec) -> HolonomyAssignment:
    data = json.loads(text)
    mats = {}
    for aid, rows in data["arcs"].items():
        mats[aid] = np.array([[complex(re, im) for re, im in row] for row in rows])
    return HolonomyAssignment(group, mats)
