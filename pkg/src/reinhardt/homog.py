"""Weight-1 homogeneous defining functions.

A defining function is the leading part sum_j x_j^alpha_j plus extra
weight-1 homogeneous terms: monomials, integrals of monomial families over
affine segments in exponent space (finite measures supported on the
admissible set), and invariant-quotient profile terms.  Alternatively a
function can be specified by its values on S_1 = {sum x_j^alpha_j = 1} and
extended by homogeneity.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from numpy.polynomial.legendre import leggauss

from .errors import ContractViolation, EvaluationError
from .weights import ExponentTuple, WeightSystem, in_admissible_set, weight_of

WEIGHT_TOL = 1e-12
AXIS_RTOL = 1e-12
AXIS_SAMPLES = (0.1, 0.5, 1.0)
DIAGONAL_BAND = 1e-6


# ---------------------------------------------------------------------------
# profile built-ins

def g_square(x):
    return np.asarray(x, float) ** 2


def g_quintic_blend(x):
    """C^2 profile with g(0)=0 and g(x)=x^2 for |x|>1.

    On [0,1] the quintic 3t^3 - 3t^4 + t^5 matches value and two derivatives
    of x^2 at 1 and vanishes to second order at 0; extended evenly.
    """
    x = np.asarray(x, float)
    t = np.abs(x)
    inner = t ** 3 * (3.0 - 3.0 * t + t * t)
    return np.where(t > 1.0, x * x, inner)


PROFILE_BUILTINS = {
    "square": g_square,
    "quintic_blend": g_quintic_blend,
}

DENSITY_BUILTINS = {
    "one": lambda u: np.ones_like(np.asarray(u, float)),
}


def tabulated(nodes, values):
    """Linear-interpolation callable from two-column tabular data."""
    nodes = np.asarray(nodes, float)
    values = np.asarray(values, float)
    if nodes.ndim != 1 or nodes.shape != values.shape:
        raise ContractViolation("table must be two equal-length columns")
    order = np.argsort(nodes)
    nodes, values = nodes[order], values[order]

    def f(u):
        return np.interp(np.asarray(u, float), nodes, values)

    return f


def resolve_profile(profile):
    if callable(profile):
        return profile
    try:
        return PROFILE_BUILTINS[profile]
    except KeyError:
        raise ContractViolation("unknown profile %r" % (profile,))


def resolve_density(density):
    if callable(density):
        return density
    try:
        return DENSITY_BUILTINS[density]
    except KeyError:
        raise ContractViolation("unknown density %r" % (density,))


# ---------------------------------------------------------------------------
# term variants

@dataclass(frozen=True)
class Monomial:
    """coeff * prod x_j^{s_j}; s has weight 1 and at least two non-zero entries."""

    coeff: float
    s: tuple

    def validate(self, ws):
        if len(self.s) != ws.d:
            raise ContractViolation("monomial arity %d != %d" % (len(self.s), ws.d))
        w = weight_of(self.s, ws)
        if abs(w - 1.0) > WEIGHT_TOL:
            raise ContractViolation("monomial %r has weight %g != 1" % (self.s, w))
        if sum(1 for v in self.s if v > 0) < 2:
            raise ContractViolation(
                "monomial %r must have at least two non-zero exponents" % (self.s,)
            )

    def eval(self, x):
        s = np.asarray(self.s, float)
        return self.coeff * np.prod(x ** s, axis=-1)

    def describe(self):
        return "monomial coeff=%g s=%r" % (self.coeff, self.s)


@dataclass(frozen=True)
class SegmentIntegral:
    """Integral over an affine path in exponent space against a density.

    s(u) interpolates linearly from s_lo (at u_lo) to s_hi (at u_hi);
    evaluation is fixed-node Gauss-Legendre in u, hence deterministic.
    density is a built-in name, a callable, or tabulated values.
    """

    u_lo: float
    u_hi: float
    s_lo: tuple
    s_hi: tuple
    density: object = "one"
    nodes: int = 32

    def path(self, u):
        u = np.asarray(u, float)
        t = (u - self.u_lo) / (self.u_hi - self.u_lo)
        s_lo = np.asarray(self.s_lo, float)
        s_hi = np.asarray(self.s_hi, float)
        return s_lo + t[..., None] * (s_hi - s_lo)

    def validate(self, ws):
        if len(self.s_lo) != ws.d or len(self.s_hi) != ws.d:
            raise ContractViolation("segment arity mismatch")
        if not self.u_hi > self.u_lo:
            raise ContractViolation("segment needs u_hi > u_lo")
        for u in (self.u_lo, 0.5 * (self.u_lo + self.u_hi), self.u_hi):
            s = self.path(u)
            w = weight_of(tuple(s), ws)
            if abs(w - 1.0) > WEIGHT_TOL:
                raise ContractViolation(
                    "segment path has weight %g != 1 at u=%g" % (w, u)
                )
            if any(v < -WEIGHT_TOL for v in s):
                raise ContractViolation("segment path leaves the positive orthant")
        mid = self.path(0.5 * (self.u_lo + self.u_hi))
        if sum(1 for v in mid if v > 0) < 2:
            raise ContractViolation(
                "segment path must keep at least two non-zero exponents"
            )

    def quadrature(self, nodes=None):
        n = int(nodes or self.nodes)
        base, w = leggauss(n)
        half = 0.5 * (self.u_hi - self.u_lo)
        mid = 0.5 * (self.u_hi + self.u_lo)
        u = mid + half * base
        dens = resolve_density(self.density)(u)
        return u, w * half * dens

    def eval(self, x, nodes=None):
        u, w = self.quadrature(nodes)
        s = self.path(u)  # (n, d)
        powers = np.prod(x[..., None, :] ** s, axis=-1)  # (..., n)
        return powers @ w

    def describe(self):
        return "segment u in [%g, %g], s: %r -> %r" % (
            self.u_lo, self.u_hi, self.s_lo, self.s_hi,
        )


@dataclass(frozen=True)
class InvariantProfile:
    """prefactor(x) * g(u_1(x),...) with weight-1 prefactor and weight-0 quotients.

    The term is 0 wherever the prefactor vanishes (removable-singularity rule),
    which also sidesteps the quotients' zero denominators there.
    """

    prefactor: tuple
    quotients: tuple
    profile: object

    def validate(self, ws):
        if len(self.prefactor) != ws.d:
            raise ContractViolation("prefactor arity mismatch")
        w = weight_of(self.prefactor, ws)
        if abs(w - 1.0) > WEIGHT_TOL:
            raise ContractViolation("prefactor has weight %g != 1" % w)
        for q in self.quotients:
            if len(q) != ws.d:
                raise ContractViolation("quotient arity mismatch")
            wq = sum(e / a for e, a in zip(q, ws.alphas))
            if abs(wq) > WEIGHT_TOL:
                raise ContractViolation("quotient %r has weight %g != 0" % (q, wq))
        g = resolve_profile(self.profile)
        zeros = [0.0] * len(self.quotients)
        if abs(float(np.asarray(g(*zeros)))) > 1e-12:
            raise ContractViolation("profile must satisfy g(0) = 0")

    def eval(self, x):
        g = resolve_profile(self.profile)
        pre = np.prod(x ** np.asarray(self.prefactor, float), axis=-1)
        mask = pre > 0
        safe = np.where(mask[..., None], x, 1.0)
        args = []
        for q in self.quotients:
            q = np.asarray(q, float)
            args.append(np.prod(safe ** q, axis=-1))
        val = g(*args)
        return np.where(mask, pre * val, 0.0)

    def describe(self):
        return "invariant-profile prefactor=%r quotients=%r" % (
            self.prefactor, self.quotients,
        )


# ---------------------------------------------------------------------------
# the defining function

class DefiningFunction:
    """Leading part sum_j x_j^alpha_j plus extra homogeneous terms,
    or a single profile on S_1 extended by homogeneity.

    Immutable after construction; evaluation is pure and accepts batched
    moduli arrays of shape (..., p-1).  Axis normalization (the extra terms
    vanish on every coordinate axis) is verified numerically on construction.
    """

    def __init__(self, ws, terms=(), s1_profile=None, validate=True):
        self.ws = ws
        self.terms = tuple(terms)
        self.s1_profile = s1_profile
        if self.terms and s1_profile is not None:
            raise ContractViolation("terms and s1_profile are mutually exclusive")
        if validate:
            self._validate()

    def _validate(self):
        for t in self.terms:
            t.validate(self.ws)
        for j in range(self.ws.d):
            for v in AXIS_SAMPLES:
                x = np.zeros(self.ws.d)
                x[j] = v
                got = self.eval(x)
                want = v ** self.ws.alphas[j]
                if abs(got - want) > AXIS_RTOL * max(1.0, want):
                    raise ContractViolation(
                        "axis normalization fails at x_%d=%g: psi=%r, expected %r"
                        % (j + 2, v, got, want)
                    )

    def eval(self, x, nodes=None):
        x = np.asarray(x, float)
        if x.shape[-1] != self.ws.d:
            raise ContractViolation(
                "moduli vector of length %d, expected %d" % (x.shape[-1], self.ws.d)
            )
        if np.any(x < 0):
            raise ContractViolation("moduli entries must be non-negative")
        if self.s1_profile is not None:
            return eval_from_s1_profile(self.s1_profile, x, self.ws)
        alphas = np.asarray(self.ws.alphas)
        out = np.sum(x ** alphas, axis=-1)
        for t in self.terms:
            if isinstance(t, SegmentIntegral):
                val = t.eval(x, nodes=nodes)
            else:
                val = t.eval(x)
            if not np.all(np.isfinite(val)):
                raise EvaluationError("non-finite value from term: " + t.describe())
            out = out + val
        return out

    def __call__(self, x, nodes=None):
        return self.eval(x, nodes=nodes)


def eval_defining(f, x, nodes=None):
    """Functional alias for DefiningFunction.eval."""
    return f.eval(x, nodes=nodes)


def construct_from_measure(ws, atoms=(), segments=()):
    """Defining function for a finite measure on the admissible set M:
    point masses on exponent tuples plus densities on affine segments.

    Atoms are (s, mass) pairs; each atom and each segment path (checked at
    the endpoints and midpoint) must satisfy the membership predicate.
    """
    terms = []
    for s, mass in atoms:
        s = tuple(s)
        if mass < 0:
            raise ContractViolation("atom mass must be >= 0, got %r" % mass)
        if not in_admissible_set(s, ws):
            raise ContractViolation("atom %r is not in the admissible set" % (s,))
        if mass > 0:
            terms.append(Monomial(float(mass), s))
    for seg in segments:
        seg.validate(ws)
        for u in (seg.u_lo, 0.5 * (seg.u_lo + seg.u_hi), seg.u_hi):
            s = tuple(seg.path(u))
            if not in_admissible_set(s, ws):
                raise ContractViolation(
                    "segment leaves the admissible set at u=%g: %r" % (u, s)
                )
        terms.append(seg)
    return DefiningFunction(ws, terms)


def _example5_integral_term(x2, x3):
    """x2^9 * int_4^5 (x3/x2)^s ds by Gauss-Legendre; stable near x2 = x3."""
    base, w = leggauss(32)
    s = 4.5 + 0.5 * base
    w = 0.5 * w
    safe2 = np.where(x2 > 0, x2, 1.0)
    ratio = x3 / safe2
    return x2 ** 9 * ((ratio[..., None] ** s) @ w)


def example5_closed_form(x2, x3):
    """The explicit C^2 function with alpha_2 = alpha_3 = 9:

        x2^9 + x3^9 + (x2^4 x3^5 - x2^5 x3^4) / (log x3 - log x2),

    the last term being 0 whenever x2 = 0, x3 = 0 or x2 = x3.  Near the
    diagonal the quotient is evaluated through its stable integral form
    x2^9 * int_4^5 (x3/x2)^s ds (the integrand tends to 1 there).
    """
    x2 = np.asarray(x2, float)
    x3 = np.asarray(x3, float)
    x2, x3 = np.broadcast_arrays(x2, x3)
    lead = x2 ** 9 + x3 ** 9
    zero = (x2 == 0) | (x3 == 0)
    near = np.abs(x2 - x3) < DIAGONAL_BAND * np.maximum(x2, x3)
    safe2 = np.where(zero, 1.0, x2)
    safe3 = np.where(zero, 1.0, x3)
    denom = np.log(safe3) - np.log(safe2)
    denom = np.where(denom == 0, 1.0, denom)
    closed = (safe2 ** 4 * safe3 ** 5 - safe2 ** 5 * safe3 ** 4) / denom
    term = np.where(near, _example5_integral_term(x2, x3), closed)
    term = np.where(zero, 0.0, term)
    out = lead + term
    return out if out.shape else float(out)


def example6(x2, x3, g=None):
    """x2^8 + x3^8 + x2^8 * g(x3^2 / x2^2), the last term 0 whenever x2 = 0.

    g must satisfy g(0) = 0 and g(x) = x^2 for |x| > 1 (checked at sample
    points); the default is the C^2 quintic blend.
    """
    gf = resolve_profile(g if g is not None else "quintic_blend")
    if abs(float(np.asarray(gf(0.0)))) > 1e-12:
        raise ContractViolation("g(0) must be 0")
    for v in (1.5, 2.0, -2.0):
        if abs(float(np.asarray(gf(v))) - v * v) > 1e-12 * v * v:
            raise ContractViolation("g(x) must equal x^2 for |x| > 1")
    x2 = np.asarray(x2, float)
    x3 = np.asarray(x3, float)
    x2, x3 = np.broadcast_arrays(x2, x3)
    lead = x2 ** 8 + x3 ** 8
    safe2 = np.where(x2 > 0, x2, 1.0)
    term = np.where(x2 > 0, x2 ** 8 * gf((x3 / safe2) ** 2), 0.0)
    out = lead + term
    return out if out.shape else float(out)


def extend_from_germ(phi, delta, ws):
    """Extend a germ phi, defined on {sum |x_j|^alpha_j <= delta}, to all of
    R^{p-1} by weighted scaling:

        psi(x) = (r/delta) * phi(x_j * (delta/r)^{1/alpha_j}),  r = sum |x_j|^alpha_j,

    with psi = phi inside the germ region and psi(0) = 0.
    """
    if not delta > 0:
        raise ContractViolation("delta must be > 0")
    alphas = np.asarray(ws.alphas)

    def psi(x):
        x = np.asarray(x, float)
        r = np.sum(np.abs(x) ** alphas, axis=-1)
        inside = r <= delta
        safe_r = np.where(r > 0, r, 1.0)
        scaled = x * (delta / safe_r)[..., None] ** (1.0 / alphas)
        outer = (r / delta) * phi(scaled)
        return np.where(inside, phi(x), outer)

    return psi


def eval_from_s1_profile(profile, x, ws):
    """Evaluate the homogeneous function determined by its values on
    S_1 = {sum x_j^alpha_j = 1}: r * profile(x_j / r^{1/alpha_j}), 0 at the origin."""
    x = np.asarray(x, float)
    alphas = np.asarray(ws.alphas)
    r = np.sum(np.abs(x) ** alphas, axis=-1)
    safe_r = np.where(r > 0, r, 1.0)
    arg = x / safe_r[..., None] ** (1.0 / alphas)
    return np.where(r > 0, r * profile(arg), 0.0)


def restrict_to_s1(f):
    """Restriction wrapper: a callable usable as an s1 profile."""
    return lambda y: f(y)


def bp_polynomial_eval(table, z, alphas):
    """Evaluate a Hermitian weight-(1/2, 1/2) polynomial sum a_KL z^K conj(z)^L.

    table maps multi-index pairs (K, L) to complex coefficients with
    a_KL = conj(a_LK); every K and L has weight exactly 1/2 under the given
    per-variable weights alphas = (2 m_2, ..., 2 m_n).  The result is real up
    to 1e-12 of the term-magnitude sum; the imaginary part is discarded.
    """
    z = np.asarray(z, complex)
    alphas = tuple(float(a) for a in alphas)
    items = sorted(table.items(), key=lambda kv: (kv[0][0], kv[0][1]))
    for (K, L), a in items:
        for idx in (K, L):
            if len(idx) != len(alphas):
                raise ContractViolation("index %r has wrong arity" % (idx,))
            w = sum(k / al for k, al in zip(idx, alphas))
            if abs(w - 0.5) > 1e-12:
                raise ContractViolation(
                    "index %r in pair (%r, %r) has weight %g != 1/2" % (idx, K, L, w)
                )
        mate = table.get((L, K))
        if mate is None or abs(mate - np.conj(a)) > 1e-12 * max(1.0, abs(a)):
            raise ContractViolation(
                "table is not Hermitian at pair (%r, %r)" % (K, L)
            )
    total = 0.0 + 0.0j
    scale = 0.0
    for (K, L), a in items:
        term = a * np.prod(z ** np.asarray(K)) * np.prod(np.conj(z) ** np.asarray(L))
        total += term
        scale += abs(term)
    if abs(total.imag) > 1e-12 * max(scale, 1e-300):
        raise EvaluationError(
            "imaginary residue %g exceeds tolerance" % abs(total.imag)
        )
    return float(total.real)
