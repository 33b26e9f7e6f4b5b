"""Exact truncated series ring in the deformation parameter h, and the
per-crossing coefficient tables for each supported group.

Every coefficient that appears in a crossing resolution is a polynomial in h
with rational coefficients once the coupling is written as beta = h/2: the
hyperbolic functions cosh(beta*sqrt(D)) and sinh(beta*sqrt(D))/sqrt(D) only
involve even powers of sqrt(D), and the framing exponentials exp(±beta*n/2)
are plain exponentials of a rational multiple of h.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction

DEFAULT_ORDER = 8

GROUP_KINDS = ("su2", "sl2r", "sl2c", "gln", "un")

# Rank-2 kinds share the SU(2) crossing coefficients and the unoriented
# trace convention tr(V) = tr(V^-1).
SL2_FAMILY = ("su2", "sl2r", "sl2c")


class CoeffError(ValueError):
    pass


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise CoeffError(f"expected exact rational, got {type(x).__name__}")


class SeriesCoeff:
    """Polynomial in h of degree <= order, with exact rational coefficients.

    Arithmetic truncates at the order; all values are immutable.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs, order: int | None = None):
        cs = [_as_fraction(c) for c in coeffs]
        if order is not None:
            if order < 0:
                raise CoeffError("order must be >= 0")
            cs = cs[: order + 1] + [Fraction(0)] * (order + 1 - len(cs))
        elif not cs:
            raise CoeffError("empty coefficient list without explicit order")
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("SeriesCoeff is immutable")

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def zero(cls, order: int = DEFAULT_ORDER) -> "SeriesCoeff":
        return cls([], order=order)

    @classmethod
    def one(cls, order: int = DEFAULT_ORDER) -> "SeriesCoeff":
        return cls([1], order=order)

    @classmethod
    def constant(cls, c, order: int = DEFAULT_ORDER) -> "SeriesCoeff":
        return cls([Fraction(c)], order=order)

    def __getitem__(self, k: int) -> Fraction:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return Fraction(0)

    def _coerce(self, other):
        if isinstance(other, SeriesCoeff):
            if other.order != self.order:
                raise CoeffError("series order mismatch")
            return other
        if isinstance(other, (int, Fraction)):
            return SeriesCoeff([other], order=self.order)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return SeriesCoeff([a + b for a, b in zip(self.coeffs, o.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return SeriesCoeff([-a for a in self.coeffs])

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return SeriesCoeff([a - b for a, b in zip(self.coeffs, o.coeffs)])

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n = self.order
        out = [Fraction(0)] * (n + 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j in range(0, n + 1 - i):
                b = o.coeffs[j]
                if b:
                    out[i + j] += a * b
        return SeriesCoeff(out)

    __rmul__ = __mul__

    def truncate(self, order: int) -> "SeriesCoeff":
        return SeriesCoeff(self.coeffs, order=order)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def eval_h(self, h: complex) -> complex:
        """Evaluate the truncated polynomial at a numeric h (Horner)."""
        acc = 0j
        for c in reversed(self.coeffs):
            acc = acc * h + float(c)
        return acc

    def __eq__(self, other):
        return isinstance(other, SeriesCoeff) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        terms = [f"{c}*h^{k}" for k, c in enumerate(self.coeffs) if c]
        return "SeriesCoeff(" + (" + ".join(terms) if terms else "0") + f"; K={self.order})"


def eval_at(c: SeriesCoeff, beta: float) -> complex:
    """Evaluate a series coefficient at the coupling beta (h = 2*beta)."""
    return c.eval_h(2.0 * beta)


@dataclass(frozen=True)
class GroupSpec:
    """Group/convention selector: kind plus matrix size.

    The rank-2 kinds are pinned to n = 2; gln/un take any n >= 1.
    """

    kind: str
    n: int = 2

    def __post_init__(self):
        if self.kind not in GROUP_KINDS:
            raise CoeffError(f"unsupported group kind {self.kind!r}")
        if self.kind in SL2_FAMILY and self.n != 2:
            raise CoeffError(f"{self.kind} requires n=2")
        if self.n < 1:
            raise CoeffError("matrix size must be >= 1")

    @property
    def delta(self) -> Fraction:
        if self.kind in SL2_FAMILY:
            return Fraction(3)
        return Fraction(self.n * self.n, 4) + 2

    @property
    def orientation_free(self) -> bool:
        """True when tr(V) = tr(V^-1) holds on the group (Cayley-Hamilton)."""
        return self.kind in SL2_FAMILY

    @property
    def convention(self) -> str:
        return "unoriented" if self.orientation_free else "oriented"

    def __str__(self):
        if self.kind in ("gln", "un"):
            return f"{self.kind}({self.n})"
        return self.kind


@dataclass(frozen=True)
class CrossingCoeffs:
    """Coefficient pair of a resolved crossing: the untouched double-point
    term and the orientation-preserving smoothing term."""

    virtual: SeriesCoeff
    smooth: SeriesCoeff
    group: GroupSpec
    ctype: str

    def closed_at(self, beta: float) -> tuple[complex, complex]:
        """Exact hyperbolic values of (virtual, smooth) at a numeric beta."""
        return closed_crossing_values(self.group, self.ctype, beta)


def series_hyperbolic(kind: str, delta, order: int) -> SeriesCoeff:
    """Truncated series of cosh(beta*sqrt(delta)) or sinh(beta*sqrt(delta))/sqrt(delta)
    in h, with beta = h/2."""
    if order < 1:
        raise CoeffError("order must be >= 1")
    d = Fraction(delta)
    if d <= 0:
        raise CoeffError("delta must be positive")
    out = [Fraction(0)] * (order + 1)
    if kind == "cosh_scaled":
        # h^{2j} coefficient: delta^j / ((2j)! * 4^j)
        for j in range(0, order // 2 + 1):
            out[2 * j] = d**j / (math.factorial(2 * j) * 4**j)
    elif kind == "sinh_over_root":
        # h^{2j+1} coefficient: delta^j / ((2j+1)! * 2^{2j+1})
        for j in range(0, (order - 1) // 2 + 1):
            out[2 * j + 1] = d**j / (math.factorial(2 * j + 1) * 2 ** (2 * j + 1))
    else:
        raise CoeffError(f"unknown hyperbolic kind {kind!r}")
    return SeriesCoeff(out)


def exp_series(rate, order: int) -> SeriesCoeff:
    """Series of exp(rate*h) with exact rational rate."""
    r = Fraction(rate)
    return SeriesCoeff([r**k / math.factorial(k) for k in range(order + 1)])


def crossing_coeffs(group: GroupSpec, ctype: str, order: int = DEFAULT_ORDER) -> CrossingCoeffs:
    """Resolution coefficients of a single over- or under-crossing."""
    if ctype not in ("over", "under"):
        raise CoeffError(f"crossing type must be 'over' or 'under', got {ctype!r}")
    k = max(order, 1)
    cosh = series_hyperbolic("cosh_scaled", group.delta, k)
    sor = series_hyperbolic("sinh_over_root", group.delta, k)
    sgn = 1 if ctype == "over" else -1
    if group.kind in SL2_FAMILY:
        virtual = cosh - sgn * sor
        smooth = sgn * 2 * sor
    else:
        # beta*n/2 = (n/4)*h
        framing = exp_series(sgn * Fraction(group.n, 4), k)
        virtual = framing * (cosh - sgn * Fraction(group.n, 2) * sor)
        smooth = framing * (sgn * 2 * sor)
    if order < k:
        virtual = virtual.truncate(order)
        smooth = smooth.truncate(order)
    return CrossingCoeffs(virtual=virtual, smooth=smooth, group=group, ctype=ctype)


def closed_crossing_values(group: GroupSpec, ctype: str, beta: float) -> tuple[complex, complex]:
    """(virtual, smooth) from the exact hyperbolic closed forms.

    This path is authoritative for numeric oracles; the series path is its
    truncation.
    """
    if ctype not in ("over", "under"):
        raise CoeffError(f"crossing type must be 'over' or 'under', got {ctype!r}")
    sgn = 1.0 if ctype == "over" else -1.0
    rd = math.sqrt(float(group.delta))
    ch = math.cosh(beta * rd)
    sh = math.sinh(beta * rd) / rd
    if group.kind in SL2_FAMILY:
        return complex(ch - sgn * sh), complex(sgn * 2.0 * sh)
    framing = math.exp(sgn * beta * group.n / 2.0)
    return (
        complex(framing * (ch - sgn * (group.n / 2.0) * sh)),
        complex(framing * sgn * 2.0 * sh),
    )


def closed_form_strings(group: GroupSpec, ctype: str) -> tuple[str, str]:
    """Human-readable closed forms of (virtual, smooth) in the coupling beta."""
    if ctype not in ("over", "under"):
        raise CoeffError(f"crossing type must be 'over' or 'under', got {ctype!r}")
    s = "-" if ctype == "over" else "+"
    t = "+" if ctype == "over" else "-"
    if group.kind in SL2_FAMILY:
        return (
            f"cosh(sqrt(3)*beta) {s} sinh(sqrt(3)*beta)/sqrt(3)",
            f"{t}2*sinh(sqrt(3)*beta)/sqrt(3)",
        )
    n, d = group.n, group.delta
    e = f"exp({t}beta*{n}/2)"
    return (
        f"{e}*(cosh(beta*sqrt({d})) {s} ({n}/2)*sinh(beta*sqrt({d}))/sqrt({d}))",
        f"{e}*({t}2*sinh(beta*sqrt({d}))/sqrt({d}))",
    )


def kauffman_coeffs(order: int = DEFAULT_ORDER) -> tuple[SeriesCoeff, SeriesCoeff]:
    """(a, b) of the unoriented two-smoothing resolution, rank-2 convention
    after the per-loop sign normalization:

        a = -cosh(sqrt(3) beta) - (1/sqrt(3)) sinh(sqrt(3) beta)
        b = -cosh(sqrt(3) beta) + (1/sqrt(3)) sinh(sqrt(3) beta)
    """
    k = max(order, 1)
    cosh = series_hyperbolic("cosh_scaled", 3, k)
    sor = series_hyperbolic("sinh_over_root", 3, k)
    a = -cosh - sor
    b = -cosh + sor
    if order < k:
        a, b = a.truncate(order), b.truncate(order)
    return a, b


def kauffman_values(beta: float) -> tuple[complex, complex]:
    """Closed-form (a, b) at a numeric beta."""
    r = math.sqrt(3.0)
    ch = math.cosh(beta * r)
    sh = math.sinh(beta * r) / r
    return complex(-ch - sh), complex(-ch + sh)


def derived_generator(group: GroupSpec, ctype: str = "over"):
    """2x2 rational matrix M with d/dbeta (f, g) = M (f, g), (f, g)(0) = (1, 0),
    where (f, g) are the closed-form crossing coefficients.

    Returned rows are ((a, c), (b, d)): f' = a f + c g,  g' = b f + d g.
    The under-crossing generator is the negation of the over one (the closed
    forms are related by beta -> -beta).
    """
    if ctype not in ("over", "under"):
        raise CoeffError(f"crossing type must be 'over' or 'under', got {ctype!r}")
    if group.kind in SL2_FAMILY:
        m = ((Fraction(-1), Fraction(1)), (Fraction(2), Fraction(1)))
    else:
        m = ((Fraction(0), Fraction(1)), (Fraction(2), Fraction(group.n)))
    if ctype == "under":
        m = tuple(tuple(-x for x in row) for row in m)
    return m


def exp_generator(group: GroupSpec, ctype: str = "over", order: int = DEFAULT_ORDER) -> tuple[SeriesCoeff, SeriesCoeff]:
    """First column of the series exponential exp(beta*M) with beta = h/2:
    the (virtual, smooth) pair reconstructed from the generator alone."""
    m = derived_generator(group, ctype)
    f = [Fraction(0)] * (order + 1)
    g = [Fraction(0)] * (order + 1)
    vf, vg = Fraction(1), Fraction(0)  # M^k applied to (1, 0), scaled
    for k in range(order + 1):
        scale = Fraction(1, math.factorial(k) * 2**k)
        f[k] = vf * scale
        g[k] = vg * scale
        vf, vg = m[0][0] * vf + m[0][1] * vg, m[1][0] * vf + m[1][1] * vg
    return SeriesCoeff(f), SeriesCoeff(g)


def exp_generator_matrix(group: GroupSpec, ctype: str = "over", order: int = DEFAULT_ORDER):
    """Full 2x2 series exponential exp(beta*M), entries as SeriesCoeff."""
    m = derived_generator(group, ctype)
    cur = ((Fraction(1), Fraction(0)), (Fraction(0), Fraction(1)))
    cols = [[[Fraction(0)] * (order + 1) for _ in range(2)] for _ in range(2)]
    for k in range(order + 1):
        scale = Fraction(1, math.factorial(k) * 2**k)
        for i in range(2):
            for j in range(2):
                cols[i][j][k] = cur[i][j] * scale
        cur = tuple(
            tuple(sum(m[i][t] * cur[t][j] for t in range(2)) for j in range(2))
            for i in range(2)
        )
    return tuple(tuple(SeriesCoeff(cols[i][j]) for j in range(2)) for i in range(2))


def coeffs_to_json(group: GroupSpec, ctype: str, order: int = DEFAULT_ORDER) -> str:
    """Coefficient table as JSON with rationals serialized as p/q strings."""
    cc = crossing_coeffs(group, ctype, order)
    payload = {
        "group": str(group),
        "type": ctype,
        "K": order,
        "virtual": [str(c) for c in cc.virtual.coeffs],
        "smooth": [str(c) for c in cc.smooth.coeffs],
    }
    return json.dumps(payload, indent=2)
