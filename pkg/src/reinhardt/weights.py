"""Weight systems, exponent tuples, and the admissible exponent set.

A weight system partitions n complex variables into p groups and attaches a
positive weight alpha_j to each tail group (j = 2..p).  An exponent tuple
s = (s_2,...,s_p) has weight sum(s_j / alpha_j).  The admissible set M
collects the weight-1 tuples whose entries are each an even integer or
strictly exceed 2k, with at least two non-zero entries.  M decomposes into
finitely many relatively open polytope faces (a partial assignment of even
integers plus a set of free coordinates constrained to s_j > 2k on the
weight-1 hyperplane) together with isolated points.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .errors import ContractViolation

EVEN_SNAP_RTOL = 1e-12
WEIGHT_TOL = 1e-12
ZERO_TOL = 1e-12
FACE_TOL = 1e-9


def _nearest_even(x):
    return 2.0 * round(float(x) / 2.0)


def is_even_integer(x, rtol=EVEN_SNAP_RTOL):
    """True when x is within relative tolerance of an even integer."""
    return abs(x - _nearest_even(x)) <= rtol * max(1.0, abs(x))


def _fmt_num(v):
    """Render integer-valued floats without a trailing .0 ."""
    if v == int(v):
        return str(int(v))
    return repr(float(v))


@dataclass(frozen=True)
class WeightSystem:
    """Group partition of n complex variables with tail weights and smoothness order.

    group_sizes = (n_1,...,n_p) sums to n; alphas = (alpha_2,...,alpha_p)
    carries one positive weight per tail group; k >= 1 is the boundary
    smoothness order.  Even-integer alphas are snapped exactly on construction.
    Admissibility of the alphas themselves is a report-level question, see
    validate_weights.
    """

    n: int
    group_sizes: tuple
    alphas: tuple
    k: int

    def __post_init__(self):
        gs = tuple(int(g) for g in self.group_sizes)
        object.__setattr__(self, "group_sizes", gs)
        if self.n <= 0 or any(g < 1 for g in gs) or sum(gs) != self.n:
            raise ContractViolation(
                "group_sizes %r must be positive and sum to n=%d" % (gs, self.n)
            )
        if len(self.alphas) != len(gs) - 1:
            raise ContractViolation(
                "need one alpha per tail group: %d alphas for p=%d groups"
                % (len(self.alphas), len(gs))
            )
        snapped = []
        for a in self.alphas:
            a = float(a)
            if a <= 0:
                raise ContractViolation("alphas must be positive, got %r" % a)
            if is_even_integer(a):
                a = _nearest_even(a)
            snapped.append(a)
        object.__setattr__(self, "alphas", tuple(snapped))
        if int(self.k) < 1:
            raise ContractViolation("smoothness order k must be >= 1")
        object.__setattr__(self, "k", int(self.k))

    @property
    def p(self):
        return len(self.group_sizes)

    @property
    def d(self):
        """Number of tail moduli coordinates, p - 1."""
        return self.p - 1

    @property
    def m_exponents(self):
        """m_j = alpha_j / 2 for even-integer alphas, None otherwise."""
        return tuple(
            int(a) // 2 if is_even_integer(a) else None for a in self.alphas
        )


@dataclass(frozen=True)
class ExponentTuple:
    """A tuple (s_2,...,s_p) of non-negative exponents."""

    s: tuple

    def __post_init__(self):
        vals = tuple(float(v) for v in self.s)
        if any(v < 0 for v in vals):
            raise ContractViolation("exponent entries must be >= 0, got %r" % (vals,))
        object.__setattr__(self, "s", vals)

    @property
    def integer_flag(self):
        return all(abs(v - round(v)) <= EVEN_SNAP_RTOL * max(1.0, v) for v in self.s)

    def __len__(self):
        return len(self.s)

    def __iter__(self):
        return iter(self.s)


def weight_of(s, ws):
    """Weight sum(s_j / alpha_j) of an exponent tuple against a weight system."""
    vals = tuple(s)
    if len(vals) != ws.d:
        raise ContractViolation(
            "arity mismatch: tuple of length %d against %d weights"
            % (len(vals), ws.d)
        )
    return float(sum(v / a for v, a in zip(vals, ws.alphas)))


@dataclass(frozen=True)
class AdmissibilityEntry:
    alpha: float
    even_integer: bool
    above_2k: bool

    @property
    def admissible(self):
        return self.even_integer or self.above_2k


@dataclass(frozen=True)
class ValidationReport:
    entries: tuple
    k: int

    @property
    def passed(self):
        return all(e.admissible for e in self.entries)

    def render(self):
        lines = []
        for j, e in enumerate(self.entries):
            if e.even_integer:
                how = "even integer"
            elif e.above_2k:
                how = "> 2k = %s" % _fmt_num(2 * self.k)
            else:
                how = "INADMISSIBLE (not even, not > %s)" % _fmt_num(2 * self.k)
            lines.append("alpha_%d = %s: %s" % (j + 2, _fmt_num(e.alpha), how))
        lines.append("weights: %s" % ("pass" if self.passed else "FAIL"))
        return "\n".join(lines)


def validate_weights(ws):
    """Report, per alpha_j, how (or whether) it meets the admissibility rule."""
    entries = tuple(
        AdmissibilityEntry(a, is_even_integer(a), a > 2 * ws.k) for a in ws.alphas
    )
    return ValidationReport(entries, ws.k)


def in_admissible_set(s, ws):
    """Membership predicate for the admissible set M.

    Every entry is >= 0 and either an even integer or strictly > 2k; at
    least two entries are non-zero; and the weight equals 1 within 1e-12.
    """
    vals = tuple(s)
    if len(vals) != ws.d:
        raise ContractViolation(
            "arity mismatch: tuple of length %d against %d weights"
            % (len(vals), ws.d)
        )
    if any(v < 0 for v in vals):
        return False
    for v in vals:
        if not (is_even_integer(v) or v > 2 * ws.k):
            return False
    if sum(1 for v in vals if v > ZERO_TOL) < 2:
        return False
    return abs(weight_of(vals, ws) - 1.0) <= WEIGHT_TOL


@dataclass(frozen=True)
class Face:
    """A relatively open face of M.

    fixed: sorted tuple of (index, even integer value); free: sorted tuple
    of indices constrained to s_j > 2k, intersected with the weight-1
    hyperplane.  Indices are 0-based over (s_2,...,s_p).
    """

    fixed: tuple
    free: tuple

    @property
    def dim(self):
        return len(self.free) - 1

    def signature(self):
        return (self.fixed, self.free)

    def generic_point(self, ws):
        """An interior point: spreads the excess weight evenly over the free set."""
        rem = 1.0 - sum(v / ws.alphas[i] for i, v in self.fixed)
        excess = rem - sum(2 * ws.k / ws.alphas[i] for i in self.free)
        s = [0.0] * ws.d
        for i, v in self.fixed:
            s[i] = v
        for i in self.free:
            s[i] = 2 * ws.k + excess * ws.alphas[i] / len(self.free)
        return ExponentTuple(tuple(s))

    def contains(self, s, ws, tol=FACE_TOL, closure=False):
        """True when s lies on this face (relative interior, or closure)."""
        vals = tuple(s)
        if len(vals) != ws.d:
            return False
        freeset = set(self.free)
        for i, v in self.fixed:
            if abs(vals[i] - v) > tol:
                return False
        for i in range(ws.d):
            if i in freeset:
                lo_ok = vals[i] >= 2 * ws.k - tol if closure else vals[i] > 2 * ws.k + tol
                if not lo_ok:
                    return False
            elif i not in dict(self.fixed):
                return False
        return abs(weight_of(vals, ws) - 1.0) <= max(tol, WEIGHT_TOL)


@dataclass(frozen=True)
class Segment:
    """Canonical p-1 = 2 view: s on the line s_2/alpha_2 + s_3/alpha_3 = 1,
    parametrized by s_3 in [lo, hi] with per-end closure flags."""

    lo: float
    hi: float
    closed_lo: bool
    closed_hi: bool

    def point_at(self, s3, ws):
        s2 = ws.alphas[0] * (1.0 - s3 / ws.alphas[1])
        return ExponentTuple((s2, s3))

    def contains_s3(self, s3, tol=FACE_TOL):
        lo_ok = s3 >= self.lo - tol if self.closed_lo else s3 > self.lo + tol
        hi_ok = s3 <= self.hi + tol if self.closed_hi else s3 < self.hi - tol
        return lo_ok and hi_ok


@dataclass(frozen=True)
class AdmissibleSet:
    """The admissible set M: isolated points plus relatively open faces.

    For p - 1 = 2 a canonical merged view (closed segments absorbing their
    admissible endpoints, plus remaining isolated points) is exposed via
    the segments/canonical_points fields.
    """

    ws: WeightSystem
    points: tuple
    faces: tuple
    segments: tuple = ()
    canonical_points: tuple = ()

    @property
    def empty(self):
        return not self.points and not self.faces

    def contains(self, s, tol=FACE_TOL):
        vals = tuple(s)
        for pt in self.points:
            if len(vals) == len(pt.s) and max(
                abs(a - b) for a, b in zip(vals, pt.s)
            ) <= tol:
                return True
        for f in self.faces:
            if f.contains(vals, self.ws, tol=tol):
                return True
        if self.ws.d == 2:
            for seg in self.segments:
                s3 = vals[1]
                if seg.contains_s3(s3, tol=tol):
                    ref = seg.point_at(s3, self.ws)
                    if abs(vals[0] - ref.s[0]) <= tol:
                        return True
        return False

    def canonical_text(self):
        """Deterministic textual listing (the byte-stable canonical output)."""
        head = "M(alphas=(%s), k=%d)" % (
            ", ".join(_fmt_num(a) for a in self.ws.alphas),
            self.ws.k,
        )
        lines = [head]
        if self.empty:
            lines.append("  empty")
            return "\n".join(lines)
        if self.ws.d == 2:
            a2, a3 = self.ws.alphas
            ratio = a2 / a3
            for seg in sorted(self.segments, key=lambda s: s.lo):
                if ratio == 1.0:
                    expr = "s2 = %s - s3" % _fmt_num(a2)
                else:
                    expr = "s2 = %s - %s*s3" % (_fmt_num(a2), _fmt_num(ratio))
                lb = "[" if seg.closed_lo else "("
                rb = "]" if seg.closed_hi else ")"
                lines.append(
                    "  segment: %s, s3 in %s%s, %s%s"
                    % (expr, lb, _fmt_num(seg.lo), _fmt_num(seg.hi), rb)
                )
            for pt in self.canonical_points:
                lines.append(
                    "  point: (%s)" % ", ".join(_fmt_num(v) for v in pt.s)
                )
        else:
            for f in self.faces:
                fixed = ", ".join(
                    "s%d=%s" % (i + 2, _fmt_num(v)) for i, v in f.fixed
                )
                free = ", ".join("s%d" % (i + 2) for i in f.free)
                lines.append(
                    "  face: fixed(%s), free(%s) with s_j > %s on the weight-1 hyperplane"
                    % (fixed or "-", free, _fmt_num(2 * self.ws.k))
                )
            for pt in self.points:
                lines.append(
                    "  point: (%s)" % ", ".join(_fmt_num(v) for v in pt.s)
                )
        return "\n".join(lines)


def _even_values_upto(limit):
    vals = []
    v = 0
    while v <= limit + EVEN_SNAP_RTOL:
        vals.append(float(v))
        v += 2
    return vals


def enumerate_admissible_set(ws):
    """Enumerate the faces and isolated points of the admissible set M.

    Each coordinate either carries a fixed even integer value in [0, alpha_j]
    or is free (constrained to s_j > 2k).  A choice survives when its section
    of the weight-1 hyperplane is non-empty and the at-least-two-non-zero
    exclusion holds at the generic point.  Zero-dimensional sections become
    points.  Output ordering is deterministic (lexicographic signatures).
    """
    d = ws.d
    if d == 0:
        return AdmissibleSet(ws, (), ())
    FREE = None
    per_coord = []
    for a in ws.alphas:
        per_coord.append([FREE] + _even_values_upto(a))

    points = []
    faces = []
    for choice in itertools.product(*per_coord):
        fixed = tuple((i, v) for i, v in enumerate(choice) if v is not FREE)
        free = tuple(i for i, v in enumerate(choice) if v is FREE)
        w_fixed = sum(v / ws.alphas[i] for i, v in fixed)
        if w_fixed > 1.0 + WEIGHT_TOL:
            continue
        nonzero = len(free) + sum(1 for _, v in fixed if v > 0)
        if not free:
            if abs(w_fixed - 1.0) <= WEIGHT_TOL and nonzero >= 2:
                points.append(tuple(v for _, v in fixed))
            continue
        rem = 1.0 - w_fixed
        minw = sum(2 * ws.k / ws.alphas[i] for i in free)
        if rem <= minw + WEIGHT_TOL:
            continue
        if nonzero < 2:
            continue
        if len(free) == 1:
            i = free[0]
            s = [0.0] * d
            for idx, v in fixed:
                s[idx] = v
            s[i] = ws.alphas[i] * rem
            points.append(tuple(s))
        else:
            faces.append(Face(fixed, free))

    # dedup points (a tuple can arise from several fixed/free splits)
    uniq = {}
    for pt in points:
        uniq[tuple(round(v, 9) for v in pt)] = pt
    pts = [ExponentTuple(uniq[key]) for key in sorted(uniq)]
    # points interior to a face are already represented by the face
    pts = [
        pt
        for pt in pts
        if not any(f.contains(pt.s, ws) for f in faces)
    ]
    faces.sort(key=lambda f: f.signature())

    segments = ()
    canonical_points = tuple(pts)
    if d == 2:
        segments, canonical_points = _merge_canonical_2d(ws, pts, faces)
    return AdmissibleSet(
        ws, tuple(pts), tuple(faces), segments, canonical_points
    )


def _merge_canonical_2d(ws, points, faces):
    """Merge faces and points into maximal segments plus isolated points (d = 2).

    Open segments are closed at an end whose endpoint tuple independently
    satisfies the membership predicate; such endpoints are absorbed.
    """
    a2, a3 = ws.alphas
    segs = []
    for f in faces:
        # the only positive-dimensional faces have both coordinates free
        lo = 2.0 * ws.k
        hi = a3 * (1.0 - 2.0 * ws.k / a2)
        segs.append([lo, hi, False, False])
    remaining = list(points)
    for seg in segs:
        for end in (0, 1):
            s3 = seg[end]
            s2 = a2 * (1.0 - s3 / a3)
            if in_admissible_set((s2, s3), ws):
                seg[2 + end] = True
                remaining = [
                    pt
                    for pt in remaining
                    if not (abs(pt.s[1] - s3) <= FACE_TOL and abs(pt.s[0] - s2) <= FACE_TOL)
                ]
    segments = tuple(Segment(lo, hi, clo, chi) for lo, hi, clo, chi in segs)
    return segments, tuple(remaining)
