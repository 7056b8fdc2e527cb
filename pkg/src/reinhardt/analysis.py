"""Numerical verification engines.

Homogeneity and normalization residuals, non-negativity sampling,
finite-difference smoothness probes at singular loci (central differences
with Richardson extrapolation, two-sided comparison across each locus), and
the n = 2 rigidity estimator.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .autgrp import frac_pow
from .errors import ContractViolation

DEFAULT_T_VALUES = (0.0, 0.1, 0.5, 1.0, 2.0, 10.0)


def _alphas_of(ws_or_alphas):
    if hasattr(ws_or_alphas, "alphas"):
        return np.asarray(ws_or_alphas.alphas)
    return np.asarray(ws_or_alphas, float)


def check_homogeneity(psi, ws, samples=300, t_values=DEFAULT_T_VALUES, seed=0):
    """Max over samples and t of
    |psi(t^{1/alpha} * x) - t psi(x)| / max(1, t |psi(x)|)."""
    if any(t < 0 for t in t_values):
        raise ContractViolation("t values must be >= 0")
    alphas = _alphas_of(ws)
    rng = np.random.default_rng(seed)
    x = rng.uniform(0.0, 1.5, (samples, len(alphas)))
    base = np.asarray(psi(x), float)
    worst = 0.0
    for t in t_values:
        scaled = x * t ** (1.0 / alphas)
        res = np.abs(np.asarray(psi(scaled), float) - t * base)
        res /= np.maximum(1.0, np.abs(t * base))
        worst = max(worst, float(np.max(res)))
    return worst


def check_complex_homogeneity(psi, alphas, samples=300, t_values=(1j, -1.0, 0.5 + 0.5j, 2.0), seed=0):
    """Residual of psi(t^{1/alpha_j} z_j) = |t| psi(z) over complex t,
    using the principal branch for the fractional powers."""
    alphas = tuple(float(a) for a in alphas)
    rng = np.random.default_rng(seed)
    z = rng.normal(size=(samples, len(alphas))) + 1j * rng.normal(
        size=(samples, len(alphas))
    )
    base = np.asarray(psi(z), float)
    worst = 0.0
    for t in t_values:
        factors = np.array([frac_pow(t, a) for a in alphas])
        scaled = z * factors
        want = abs(t) * base
        res = np.abs(np.asarray(psi(scaled), float) - want)
        res /= np.maximum(1.0, np.abs(want))
        worst = max(worst, float(np.max(res)))
    return worst


@dataclass(frozen=True)
class NormalizationReport:
    entries: tuple  # (axis j, sample x, got, want, ok)
    rtol: float

    @property
    def passed(self):
        return all(e[4] for e in self.entries)

    def render(self):
        lines = []
        for j, x, got, want, ok in self.entries:
            lines.append(
                "axis %d, x=%g: psi=%.17g, x^alpha=%.17g %s"
                % (j + 2, x, got, want, "ok" if ok else "FAIL")
            )
        lines.append("normalization: %s" % ("pass" if self.passed else "FAIL"))
        return "\n".join(lines)


def check_normalization(psi, ws, rtol=1e-12, axis_samples=(0.1, 0.5, 1.0)):
    """Verify psi equals x_j^alpha_j on every coordinate axis."""
    alphas = _alphas_of(ws)
    entries = []
    for j in range(len(alphas)):
        for v in axis_samples:
            x = np.zeros(len(alphas))
            x[j] = v
            got = float(psi(x))
            want = v ** alphas[j]
            ok = abs(got - want) <= rtol * max(1.0, want)
            entries.append((j, v, got, want, ok))
    return NormalizationReport(tuple(entries), rtol)


@dataclass(frozen=True)
class NonnegReport:
    min_value: float
    argmin: tuple
    samples: int

    @property
    def passed(self):
        return self.min_value >= -1e-12

    def render(self):
        return "non-negativity: %s (min %.6g at %s, %d samples)" % (
            "pass" if self.passed else "FAIL",
            self.min_value,
            tuple(round(v, 6) for v in self.argmin),
            self.samples,
        )


def check_nonnegativity(psi, ws, samples=2000, seed=0):
    """Sampled minimum of psi over a box plus the diagonal ray and axes."""
    alphas = _alphas_of(ws)
    d = len(alphas)
    rng = np.random.default_rng(seed)
    pts = [rng.uniform(0.0, 1.2, (samples, d))]
    ray = np.linspace(0.0, 1.2, 50)
    pts.append(np.repeat(ray[:, None], d, axis=1))  # the diagonal
    for j in range(d):
        ax = np.zeros((50, d))
        ax[:, j] = ray
        pts.append(ax)
    grid = np.concatenate(pts)
    vals = np.asarray(psi(grid), float)
    i = int(np.argmin(vals))
    return NonnegReport(float(vals[i]), tuple(grid[i]), grid.shape[0])


# ---------------------------------------------------------------------------
# smoothness probe

@dataclass(frozen=True)
class Locus:
    """A named singular locus, probed along a line: probe points are
    base +/- offset * normal with base on the locus."""

    name: str
    base: tuple
    normal: tuple


@dataclass(frozen=True)
class ProbeConfig:
    k: int
    loci: tuple
    steps: tuple = (1e-2, 1e-3, 1e-4)
    approach_offsets: tuple = (1e-1, 1e-2, 1e-3)
    tolerances: dict = field(default_factory=lambda: {1: 1e-4, 2: 1e-3, 3: 1e-3})

    def __post_init__(self):
        if self.k < 1:
            raise ContractViolation("probe order k must be >= 1")
        s = tuple(float(v) for v in self.steps)
        if any(v <= 0 for v in s) or any(a <= b for a, b in zip(s, s[1:])):
            raise ContractViolation("steps must be positive and strictly decreasing")
        object.__setattr__(self, "steps", s)
        object.__setattr__(
            self, "approach_offsets",
            tuple(sorted((float(v) for v in self.approach_offsets), reverse=True)),
        )
        object.__setattr__(self, "loci", tuple(self.loci))


# central-difference stencils in units of the step, per derivative order
_STENCILS = {
    0: {0: 1.0},
    1: {-1: -0.5, 1: 0.5},
    2: {-1: 1.0, 0: -2.0, 1: 1.0},
    3: {-2: -0.5, -1: 1.0, 1: -1.0, 2: 0.5},
}

# smallest usable step per order before subtraction cancellation dominates
_STEP_FLOOR = {1: 1e-6, 2: 1e-5, 3: 5e-3}


def _steps_for(steps, order, offset):
    """Step schedule for one derivative order at one approach offset.

    Steps are capped at offset/4 so the widest stencil (half-width 2h) stays
    on one side of the locus, and floored per order to stay above the
    roundoff-cancellation crossover.  When the floor wins over the cap (only
    order 3 at small offsets) the stencil may cross; the smallest offsets
    then carry no extra information, which the offset extrapolation absorbs.
    """
    floor = _STEP_FLOOR.get(order, 0.0)
    usable = sorted(
        {max(min(s, offset / 4.0), floor) for s in steps}, reverse=True
    )
    while len(usable) < 2:
        usable.insert(0, 2.0 * usable[0])
    return usable


def _multi_indices(d, order):
    for combo in itertools.combinations_with_replacement(range(d), order):
        mu = [0] * d
        for i in combo:
            mu[i] += 1
        yield tuple(mu)


def _fd_partial(f, point, mu, h):
    """Central-difference estimate of the mu partial derivative at point."""
    point = np.asarray(point, float)
    offsets = [(0,) * len(point)]
    coeffs = [1.0]
    for i, m in enumerate(mu):
        if m == 0:
            continue
        st = _STENCILS[m]
        new_off, new_c = [], []
        for off, c in zip(offsets, coeffs):
            for o, sc in st.items():
                e = list(off)
                e[i] += o
                new_off.append(tuple(e))
                new_c.append(c * sc)
        offsets, coeffs = new_off, new_c
    pts = point + h * np.asarray(offsets, float)
    vals = np.asarray(f(pts), float)
    return float(vals @ np.asarray(coeffs)) / h ** sum(mu)


def _richardson(estimates, steps):
    """Neville table assuming an even-power error series; returns the final
    extrapolant and the gap between the last two diagonal entries."""
    T = [list(estimates)]
    m = len(estimates)
    for j in range(1, m):
        row = []
        for i in range(m - j):
            r = (steps[i] / steps[i + j]) ** 2
            row.append((r * T[j - 1][i + 1] - T[j - 1][i]) / (r - 1.0))
        T.append(row)
    final = T[-1][0]
    prev = T[-2][0] if m > 1 else final
    return final, abs(final - prev)


@dataclass(frozen=True)
class LocusOrderBlock:
    locus: str
    order: int
    mismatch_by_offset: tuple  # (offset, relative mismatch)
    extrapolated: float
    tolerance: float
    internal_consistency: float
    worst_index: tuple

    @property
    def consistent(self):
        return self.extrapolated <= self.tolerance

    def render(self):
        lines = ["locus %s, order %d:" % (self.locus, self.order)]
        for off, m in self.mismatch_by_offset:
            lines.append("  offset %.0e: two-sided mismatch %.3e" % (off, m))
        lines.append(
            "  locus-limit mismatch %.3e vs tolerance %.0e (worst partial %s)"
            % (self.extrapolated, self.tolerance, self.worst_index)
        )
        lines.append("  richardson stability %.3e" % self.internal_consistency)
        lines.append(
            "  verdict: %s"
            % ("consistent with C^%d" % self.order if self.consistent else "INCONSISTENT")
        )
        return "\n".join(lines)


@dataclass(frozen=True)
class SmoothnessReport:
    k: int
    blocks: tuple

    @property
    def consistent(self):
        return all(b.consistent for b in self.blocks)

    @property
    def verdict(self):
        return (
            "consistent with C^%d" % self.k
            if self.consistent
            else "inconsistent with C^%d" % self.k
        )

    def render(self):
        return "\n".join([b.render() for b in self.blocks] + [self.verdict])


def smoothness_probe(f, config):
    """Probe the smoothness class of f (a function of the real coordinates of
    the complex variables) at each configured locus.

    At probe points approaching the locus from both sides, all partials up to
    order k are estimated by central differences with Richardson extrapolation
    across the step schedule.  Each one-sided estimate is then extrapolated
    across the approach offsets to its locus limit; the verdict is
    "consistent with C^k" when the two limits agree, relative to the local
    derivative magnitude, within the order tolerance.  This is sampling
    evidence, never proof.
    """
    blocks = []
    d = len(config.loci[0].base) if config.loci else 0
    offsets = np.asarray(config.approach_offsets)
    # the locus limit comes from a geometric refinement at the smallest
    # configured offset, where the one-sided expansions are well resolved
    limit_nodes = offsets[-1] * np.array([4.0, 2.0, 1.0])
    lagrange = _lagrange_at_zero(limit_nodes)
    for locus in config.loci:
        base = np.asarray(locus.base, float)
        normal = np.asarray(locus.normal, float)
        normal = normal / np.linalg.norm(normal)
        for order in range(1, config.k + 1):
            per_offset = np.zeros(len(offsets))
            extrap = 0.0
            worst_idx = None
            internal = 0.0

            def one_sided(off, mu, steps):
                vals = []
                for sgn in (+1.0, -1.0):
                    p = base + sgn * off * normal
                    est = [_fd_partial(f, p, mu, h) for h in steps]
                    vals.append(_richardson(est, steps))
                return vals  # [(value, richardson gap)] for the two sides

            for mu in _multi_indices(d, order):
                for oi, off in enumerate(offsets):
                    steps = _steps_for(config.steps, order, off)
                    (vp, gp), (vm, gm) = one_sided(off, mu, steps)
                    internal = max(internal, gp, gm)
                    rel = abs(vp - vm) / max(1.0, abs(vp), abs(vm))
                    per_offset[oi] = max(per_offset[oi], rel)
                sides = np.empty((2, len(limit_nodes)))
                for oi, off in enumerate(limit_nodes):
                    steps = _steps_for(config.steps, order, off)
                    (vp, _), (vm, _) = one_sided(off, mu, steps)
                    sides[:, oi] = vp, vm
                limits = sides @ lagrange
                scale = max(1.0, abs(limits[0]), abs(limits[1]))
                rel = abs(limits[0] - limits[1]) / scale
                if rel > extrap:
                    extrap = rel
                    worst_idx = mu
            tol = config.tolerances.get(order, 1e-3)
            blocks.append(
                LocusOrderBlock(
                    locus.name, order,
                    tuple(zip((float(o) for o in offsets), per_offset)),
                    extrap, tol, internal, worst_idx,
                )
            )
    return SmoothnessReport(config.k, tuple(blocks))


def _lagrange_at_zero(nodes):
    """Lagrange extrapolation weights evaluating at 0 from the given nodes."""
    nodes = np.asarray(nodes, float)
    w = np.ones(len(nodes))
    for i, xi in enumerate(nodes):
        for j, xj in enumerate(nodes):
            if i != j:
                w[i] *= xj / (xj - xi)
    return w


def moduli_function_as_real(psi, n_complex):
    """Wrap a moduli function psi(x_2,...,x_p) as a function of the real
    coordinates (re z_2, im z_2, ..., re z_p, im z_p) of scalar variables."""

    def f(coords):
        coords = np.asarray(coords, float)
        re = coords[..., 0::2]
        im = coords[..., 1::2]
        return psi(np.hypot(re, im))

    return f


def check_n2_rigidity(psi, alpha, samples=200, seed=0):
    """Estimate c in psi(z) = c |z|^alpha on the complex line.

    Returns (c, max relative deviation of psi(z)/|z|^alpha from c); the
    rigidity conclusion holds when the deviation is <= 1e-6.
    """
    if isinstance(samples, (int, np.integer)):
        rng = np.random.default_rng(seed)
        mods = rng.uniform(0.2, 1.5, samples)
        z = mods * np.exp(1j * rng.uniform(-np.pi, np.pi, samples))
    else:
        z = np.asarray(samples, complex)
        if np.all(np.abs(z) < 1e-300):
            raise ContractViolation("all samples are at the origin")
        z = z[np.abs(z) > 0]
    ratios = np.asarray(psi(z), float) / np.abs(z) ** alpha
    c = float(np.mean(ratios))
    if abs(c) < 1e-300:
        raise ContractViolation("psi is numerically zero on the samples")
    deviation = float(np.max(np.abs(ratios - c)) / abs(c))
    return c, deviation
