"""Combinatorial model of oriented closed curves with transversal crossings.

A diagram stores only the crossing combinatorics: named crossing points with
signs, and curves given as cyclic pass-words through those points.  Arcs are
the segments between consecutive passes; loops are cyclic words of directed
arcs; monomials are multisets of loops; formal sums are linear combinations
of monomials over the truncated series ring.

Surface topology is implicit: brackets and resolutions depend on nothing but
intersection points, signs, and concatenation, so no embedding data is kept.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, NamedTuple

from .coeff import SeriesCoeff, DEFAULT_ORDER


class DiagramError(ValueError):
    pass


class TransversalityError(DiagramError):
    pass


class Arc(NamedTuple):
    curve: str
    index: int

    @property
    def id(self) -> str:
        return f"{self.curve}.{self.index}"

    @classmethod
    def from_id(cls, s: str) -> "Arc":
        curve, _, idx = s.rpartition(".")
        if not curve:
            raise DiagramError(f"bad arc id {s!r}")
        return cls(curve, int(idx))


@dataclass(frozen=True)
class CrossingPoint:
    id: str
    sign: int  # +1 or -1

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise DiagramError(f"crossing sign must be +-1, got {self.sign}")


@dataclass(frozen=True)
class Curve:
    id: str
    passes: tuple[str, ...]
    level: int = 0


# A word entry is (Arc, dir) with dir = +1 (forward) or -1 (reversed).
WordEntry = tuple[Arc, int]


def _entry_key(e: WordEntry):
    (curve, index), d = e
    # forward sorts before reversed so that forward-only loops canonicalize
    # identically under both conventions
    return (curve, index, 0 if d == 1 else 1)


def _flip(e: WordEntry) -> WordEntry:
    return (e[0], -e[1])


@dataclass(frozen=True)
class Loop:
    """Cyclic word of directed arcs; construct via canonical()."""

    word: tuple[WordEntry, ...]

    def key(self):
        return tuple(_entry_key(e) for e in self.word)

    def __len__(self):
        return len(self.word)

    def __repr__(self):
        parts = [(a.id if d == 1 else a.id + "~") for a, d in self.word]
        return "Loop(" + " ".join(parts) + ")"


def reverse_word(word: Iterable[WordEntry]) -> tuple[WordEntry, ...]:
    return tuple(_flip(e) for e in reversed(tuple(word)))


def canonical(word: Iterable[WordEntry], convention: str = "oriented") -> Loop:
    """Minimal rotation of the word; under the unoriented convention also
    minimal over full reversal."""
    w = tuple(word)
    if not w:
        raise DiagramError("empty loop word")
    candidates = [w[i:] + w[:i] for i in range(len(w))]
    if convention == "unoriented":
        rw = reverse_word(w)
        candidates += [rw[i:] + rw[:i] for i in range(len(rw))]
    elif convention != "oriented":
        raise DiagramError(f"unknown convention {convention!r}")
    return Loop(min(candidates, key=lambda c: tuple(_entry_key(e) for e in c)))


def reverse(loop: Loop) -> Loop:
    """The loop with orientation reversed (direction flags flipped)."""
    return Loop(reverse_word(loop.word))


# Monomial: multiset of loops as a sorted tuple.
Monomial = tuple[Loop, ...]


def monomial(loops: Iterable[Loop]) -> Monomial:
    return tuple(sorted(loops, key=lambda l: l.key()))


def canonicalize(m: Monomial, convention: str = "oriented") -> Monomial:
    return monomial(canonical(l.word, convention) for l in m)


class FormalSum:
    """Finite map Monomial -> SeriesCoeff; zero-coefficient entries pruned."""

    __slots__ = ("terms", "order")

    def __init__(self, terms: dict[Monomial, SeriesCoeff] | None = None, order: int = DEFAULT_ORDER):
        self.order = order
        self.terms: dict[Monomial, SeriesCoeff] = {}
        if terms:
            for m, c in terms.items():
                self.add_term(m, c)

    @classmethod
    def zero(cls, order: int = DEFAULT_ORDER) -> "FormalSum":
        return cls(order=order)

    @classmethod
    def unit(cls, order: int = DEFAULT_ORDER) -> "FormalSum":
        return cls({(): SeriesCoeff.one(order)}, order=order)

    @classmethod
    def of(cls, m: Monomial, order: int = DEFAULT_ORDER) -> "FormalSum":
        return cls({m: SeriesCoeff.one(order)}, order=order)

    def add_term(self, m: Monomial, c) -> None:
        if isinstance(c, (int, Fraction)):
            c = SeriesCoeff.constant(c, self.order)
        cur = self.terms.get(m)
        tot = c if cur is None else cur + c
        if tot.is_zero():
            self.terms.pop(m, None)
        else:
            self.terms[m] = tot

    def __add__(self, other: "FormalSum") -> "FormalSum":
        out = FormalSum(dict(self.terms), order=self.order)
        for m, c in other.terms.items():
            out.add_term(m, c)
        return out

    def __sub__(self, other: "FormalSum") -> "FormalSum":
        out = FormalSum(dict(self.terms), order=self.order)
        for m, c in other.terms.items():
            out.add_term(m, -c)
        return out

    def __neg__(self) -> "FormalSum":
        return FormalSum({m: -c for m, c in self.terms.items()}, order=self.order)

    def scale(self, c) -> "FormalSum":
        if isinstance(c, (int, Fraction)):
            c = SeriesCoeff.constant(c, self.order)
        return FormalSum({m: c * v for m, v in self.terms.items()}, order=self.order)

    def mul_monomial(self, extra: Monomial) -> "FormalSum":
        return FormalSum(
            {monomial(m + extra): c for m, c in self.terms.items()}, order=self.order
        )

    def slot(self, k: int) -> dict[Monomial, Fraction]:
        """Coefficient of h^k per monomial; zero entries omitted."""
        return {m: c[k] for m, c in self.terms.items() if c[k] != 0}

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        return isinstance(other, FormalSum) and self.terms == other.terms

    def __iter__(self):
        return iter(sorted(self.terms.items(), key=lambda kv: tuple(l.key() for l in kv[0])))

    def __len__(self):
        return len(self.terms)

    def __repr__(self):
        if not self.terms:
            return "FormalSum(0)"
        bits = [f"{c!r} * {list(m)}" for m, c in self]
        return "FormalSum(" + " + ".join(bits) + ")"


@dataclass
class Diagram:
    """Crossing points plus curves; pass slots are assigned in declaration
    order (first visit of a point = slot 0, second = slot 1).

    Treated as immutable after construction: all operations are pure and
    safe for concurrent use.  Build a new Diagram rather than mutating the
    dicts, or the pass-slot index goes stale."""

    curves: dict[str, Curve] = field(default_factory=dict)
    points: dict[str, CrossingPoint] = field(default_factory=dict)

    def __post_init__(self):
        self._index()

    def _index(self):
        self._point_passes: dict[str, list[tuple[str, int]]] = {p: [] for p in self.points}
        self._pass_slot: dict[tuple[str, int], tuple[str, int]] = {}
        for c in self.curves.values():
            for pos, pid in enumerate(c.passes):
                slot = len(self._point_passes.setdefault(pid, []))
                self._point_passes[pid].append((c.id, pos))
                self._pass_slot[(c.id, pos)] = (pid, slot)

    def validate(self) -> list[str]:
        """Transversality audit: every point visited exactly twice, all pass
        references resolve, signs well-formed.  Empty list means ok."""
        errors = []
        for c in self.curves.values():
            for pid in c.passes:
                if pid not in self.points:
                    errors.append(f"curve {c.id}: pass through undeclared point {pid}")
        for pid, passes in self._point_passes.items():
            if pid not in self.points:
                continue
            if len(passes) > 2:
                errors.append(f"point {pid}: triple point ({len(passes)} passes)")
            elif len(passes) == 1:
                errors.append(f"point {pid}: only one pass")
            elif len(passes) == 0:
                errors.append(f"point {pid}: declared but never visited")
        return errors

    def require_valid(self):
        errs = self.validate()
        if errs:
            raise DiagramError("; ".join(errs))

    # -- arcs ---------------------------------------------------------------

    def arcs_of(self, curve_id: str) -> list[Arc]:
        c = self.curves[curve_id]
        k = len(c.passes)
        return [Arc(curve_id, i) for i in range(max(k, 1))]

    def all_arcs(self) -> list[Arc]:
        return [a for cid in self.curves for a in self.arcs_of(cid)]

    def pass_of(self, curve_id: str, pos: int) -> tuple[str, int]:
        """(point id, slot) of a curve's pass."""
        return self._pass_slot[(curve_id, pos)]

    def point_passes(self, point_id: str) -> list[tuple[str, int]]:
        return self._point_passes.get(point_id, [])

    def entry_end(self, e: WordEntry) -> tuple[str, int] | None:
        """Pass (point, slot) at which a directed word entry terminates;
        None for the free arc of a pass-less curve."""
        arc, d = e
        k = len(self.curves[arc.curve].passes)
        if k == 0:
            return None
        pos = (arc.index + 1) % k if d == 1 else arc.index
        return self.pass_of(arc.curve, pos)

    def entry_start(self, e: WordEntry) -> tuple[str, int] | None:
        arc, d = e
        k = len(self.curves[arc.curve].passes)
        if k == 0:
            return None
        pos = arc.index if d == 1 else (arc.index + 1) % k
        return self.pass_of(arc.curve, pos)

    # -- loops --------------------------------------------------------------

    def loop_of(self, curve_id: str) -> Loop:
        """The curve itself as a forward loop."""
        return canonical((a, 1) for a in self.arcs_of(curve_id))

    def loop_gaps(self, loop: Loop) -> list[tuple[int, str, int, int]]:
        """Crossing passes of a loop: (gap index, point, arriving slot,
        arriving direction).  Gap g sits between word entries g and g+1."""
        out = []
        for g, e in enumerate(loop.word):
            end = self.entry_end(e)
            if end is not None:
                out.append((g, end[0], end[1], e[1]))
        return out

    def gap_at(self, loop: Loop, point_id: str, slot: int) -> tuple[int, int]:
        """(gap index, arriving direction) of the unique pass of the loop
        arriving at the given point slot."""
        hits = [(g, d) for g, p, s, d in self.loop_gaps(loop) if p == point_id and s == slot]
        if len(hits) != 1:
            raise DiagramError(
                f"loop does not pass point {point_id} slot {slot} exactly once"
            )
        return hits[0]

    def crossings_between(self, x: Loop, y: Loop) -> list[tuple[str, int]]:
        """Crossing points with one pass in x and the other in y, with the
        effective sign for the ordered pair (x, y).

        The stored sign refers to the ordered (slot 0, slot 1) strands with
        forward traversal; a reversed strand flips the tangent, hence the
        sign, as does swapping the strand order.
        """
        if set(a for a, _ in x.word) & set(a for a, _ in y.word):
            raise TransversalityError("loops overlap (shared arcs)")
        gx = {(p, s): d for _, p, s, d in self.loop_gaps(x)}
        gy = {(p, s): d for _, p, s, d in self.loop_gaps(y)}
        out = []
        for pid in sorted(self.points):
            passes = [(pid, 0), (pid, 1)]
            for x_slot, y_slot in ((0, 1), (1, 0)):
                if passes[x_slot] in gx and passes[y_slot] in gy:
                    eps = self.points[pid].sign * gx[passes[x_slot]] * gy[passes[y_slot]]
                    if x_slot == 1:
                        eps = -eps
                    out.append((pid, eps))
        return out

    def concat_at(self, x: Loop, y: Loop, point_id: str) -> Loop:
        """Concatenation x *_p y: traverse x from p around to p, then y.

        Requires p to be an inter-loop crossing (one pass in each loop).
        The evaluation contract is tr(hol_{x,p} hol_{y,p}).
        """
        slots = {}
        for loop, tag in ((x, "x"), (y, "y")):
            for g, p, s, _ in self.loop_gaps(loop):
                if p == point_id:
                    slots.setdefault(tag, []).append((s, g))
        if len(slots.get("x", [])) != 1 or len(slots.get("y", [])) != 1:
            raise TransversalityError(
                f"point {point_id} is not an inter-loop crossing of the arguments"
            )
        (_, gx), (_, gy) = slots["x"][0], slots["y"][0]
        wx, wy = x.word, y.word
        rot_x = wx[gx + 1 :] + wx[: gx + 1]
        rot_y = wy[gy + 1 :] + wy[: gy + 1]
        return Loop(rot_x + rot_y)

    def concat_reversed_at(self, x: Loop, y: Loop, point_id: str) -> Loop:
        """Concatenation with the second loop traversed backwards:
        evaluation contract tr(hol_{x,p} hol_{y,p}^{-1})."""
        return self.concat_at(x, reverse(y), point_id)


# -- text format -------------------------------------------------------------

_POINT_RE = re.compile(r"^point\s+(\w+)\s+([+-])$")
_CURVE_RE = re.compile(r"^curve\s+(\w+)\s+level\s+(-?\d+)\s*:\s*(.*)$")


def parse_diagram(text: str) -> Diagram:
    """Parse the line-oriented diagram format.

    Syntax errors raise DiagramError with the line number; semantic problems
    (triple points etc.) are left to validate().
    """
    points: dict[str, CrossingPoint] = {}
    curves: dict[str, Curve] = {}
    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _POINT_RE.match(line)
        if m:
            pid, sgn = m.groups()
            if pid in points:
                raise DiagramError(f"line {ln}: duplicate point {pid}")
            points[pid] = CrossingPoint(pid, 1 if sgn == "+" else -1)
            continue
        m = _CURVE_RE.match(line)
        if m:
            cid, level, rest = m.groups()
            if cid in curves:
                raise DiagramError(f"line {ln}: duplicate curve {cid}")
            passes = tuple(rest.split())
            for tok in passes:
                if not re.fullmatch(r"\w+", tok):
                    raise DiagramError(f"line {ln}: bad pass token {tok!r}")
            curves[cid] = Curve(cid, passes, int(level))
            continue
        raise DiagramError(f"line {ln}: cannot parse {line!r}")
    return Diagram(curves=curves, points=points)


def render_diagram(d: Diagram) -> str:
    """Canonical text: points then curves, each sorted by id."""
    lines = [f"point {p.id} {'+' if p.sign == 1 else '-'}" for p in
             sorted(d.points.values(), key=lambda p: p.id)]
    for c in sorted(d.curves.values(), key=lambda c: c.id):
        lines.append(f"curve {c.id} level {c.level}: {' '.join(c.passes)}".rstrip())
    return "\n".join(lines) + "\n"


# -- JSON formal sums ---------------------------------------------------------


def formal_sum_to_json(fs: FormalSum) -> str:
    items = []
    for m, c in fs:
        items.append(
            {
                "coeff": [str(x) for x in c.coeffs],
                "monomial": [[[a.id, "+" if d == 1 else "-"] for a, d in l.word] for l in m],
            }
        )
    return json.dumps({"order": fs.order, "terms": items}, indent=2)


def formal_sum_from_json(text: str) -> FormalSum:
    data = json.loads(text)
    fs = FormalSum(order=data["order"])
    for item in data["terms"]:
        loops = []
        for w in item["monomial"]:
            loops.append(Loop(tuple((Arc.from_id(aid), 1 if d == "+" else -1) for aid, d in w)))
        fs.add_term(monomial(loops), SeriesCoeff([Fraction(x) for x in item["coeff"]], order=data["order"]))
    return fs
