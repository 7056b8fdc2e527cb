"""Bounded Reinhardt domains |z^1|^2 + psi(|z^2|,...,|z^p|) < 1.

Membership, the base domain {psi < 1} in the tail variables, sampled
boundedness certification over S_1, the fiber representation consistency
check, boundary sampling, and moduli-plane slices.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ContractViolation
from .analysis import check_nonnegativity

BOUNDARY_TOL = 1e-14
BOUNDED_MARGIN = 1e-6


def s1_grid(ws, count):
    """Deterministic low-discrepancy grid on S_1 = {sum x_j^alpha_j = 1}.

    Points are produced by mapping a grid (d = 2) or an unscrambled Halton
    sequence (d >= 3) on the weight simplex through t_j -> t_j^{1/alpha_j}.
    """
    d = ws.d
    alphas = np.asarray(ws.alphas)
    if d == 0:
        return np.zeros((0, 0))
    if d == 1:
        return np.ones((1, 1))
    if d == 2:
        t = np.linspace(0.0, 1.0, count)
        simplex = np.stack([t, 1.0 - t], axis=1)
    else:
        from scipy.stats import qmc

        h = qmc.Halton(d=d - 1, scramble=False)
        u = h.random(count)
        u = np.sort(u, axis=1)
        parts = np.concatenate(
            [u[:, :1], np.diff(u, axis=1), 1.0 - u[:, -1:]], axis=1
        )
        simplex = parts
    return simplex ** (1.0 / alphas)


class ReinhardtDomain:
    """A weight system together with a defining function.

    z is in the domain iff |z^1|^2 + psi(|z^2|,...,|z^p|) < 1, where |z^j|
    is the Euclidean norm of the j-th variable group.  Immutable; all
    queries are pure.
    """

    def __init__(self, ws, psi):
        self.ws = ws
        self.psi = psi
        self.n = ws.n
        self._offsets = np.concatenate([[0], np.cumsum(ws.group_sizes)])
        self._bounded_report = None
        self._nonneg_report = None

    # -- structure ---------------------------------------------------------

    def group_moduli(self, z):
        """(|z^1|, tail moduli array of shape (..., p-1))."""
        z = np.asarray(z, complex)
        if z.shape[-1] != self.n:
            raise ContractViolation(
                "point of length %d in C^%d" % (z.shape[-1], self.n)
            )
        mods = []
        for j in range(self.ws.p):
            block = z[..., self._offsets[j]:self._offsets[j + 1]]
            mods.append(np.linalg.norm(block, axis=-1))
        head = mods[0]
        tail = np.stack(mods[1:], axis=-1) if self.ws.d else np.zeros(head.shape + (0,))
        return head, tail

    def tail_psi(self, z_tail):
        """psi of the group moduli of complex tail coordinates."""
        z_tail = np.asarray(z_tail, complex)
        mods = []
        for j in range(1, self.ws.p):
            lo = self._offsets[j] - self._offsets[1]
            hi = self._offsets[j + 1] - self._offsets[1]
            mods.append(np.linalg.norm(z_tail[..., lo:hi], axis=-1))
        tail = np.stack(mods, axis=-1)
        return self.psi(tail)

    def defining_value(self, z):
        head, tail = self.group_moduli(z)
        if self.ws.d == 0:
            return head ** 2
        return head ** 2 + self.psi(tail)

    def defining_gap(self, z):
        return 1.0 - self.defining_value(z)

    def coordinate_alphas(self):
        """Per-coordinate tail weights (each group's alpha repeated); requires
        a one-dimensional first group (the Moebius formulas act on scalar z_1)."""
        if self.ws.group_sizes[0] != 1:
            raise ContractViolation(
                "Moebius action unsupported for first group of dimension %d"
                % self.ws.group_sizes[0]
            )
        out = []
        for a, g in zip(self.ws.alphas, self.ws.group_sizes[1:]):
            out.extend([a] * g)
        return tuple(out)

    def tail_coordinate_bounds(self):
        """Per tail coordinate radius bound (1/m)^{1/alpha_j} from the
        certified S_1 minimum; 1 per coordinate when not yet certified."""
        rep = self._bounded_report
        out = []
        for a, g in zip(self.ws.alphas, self.ws.group_sizes[1:]):
            r = (1.0 / rep.min_value) ** (1.0 / a) if rep and rep.bounded else 1.0
            out.extend([r] * g)
        return tuple(out)

    @property
    def verified(self):
        return (
            self._nonneg_report is not None
            and self._nonneg_report.passed
            and self._bounded_report is not None
            and self._bounded_report.bounded
        )

    def verify(self, sample_count=10000, seed=0):
        """Run the non-negativity and boundedness certifications and cache them."""
        report = check_bounded(self, sample_count, seed=seed)
        return report


@dataclass(frozen=True)
class GeneralDomain:
    """|z_1|^2 + psi(z_2,...,z_n) < 1 with psi a function of the complex tail
    (not necessarily a moduli function); alphas holds one weight per scalar
    tail variable."""

    alphas: tuple
    psi: object

    @property
    def n(self):
        return len(self.alphas) + 1

    def coordinate_alphas(self):
        return tuple(float(a) for a in self.alphas)

    def tail_coordinate_bounds(self):
        return tuple(1.0 for _ in self.alphas)

    def tail_psi(self, z_tail):
        return self.psi(np.asarray(z_tail, complex))

    def defining_value(self, z):
        z = np.asarray(z, complex)
        return np.abs(z[..., 0]) ** 2 + self.tail_psi(z[..., 1:])

    def defining_gap(self, z):
        return 1.0 - self.defining_value(z)


@dataclass(frozen=True)
class MembershipResult:
    inside: bool
    boundary: bool
    value: float

    def __bool__(self):
        return self.inside


def contains_point(D, z):
    """Membership per the defining inequality; points within 1e-14 of the
    boundary report inside=False with the boundary flag set."""
    value = float(D.defining_value(np.asarray(z, complex)))
    boundary = abs(value - 1.0) <= BOUNDARY_TOL
    return MembershipResult(value < 1.0 and not boundary, boundary, value)


@dataclass(frozen=True)
class BoundednessReport:
    verdict: str  # "bounded" | "inconclusive" | "refused"
    min_value: float
    argmin: tuple
    sample_count: int
    nonneg_min: float

    @property
    def bounded(self):
        return self.verdict == "bounded"

    def radius_bounds(self, ws):
        if not self.bounded:
            return None
        return tuple((1.0 / self.min_value) ** (1.0 / a) for a in ws.alphas)

    def render(self, ws=None):
        line = "boundedness: %s (min psi over S_1 = %.6g, %d samples)" % (
            self.verdict, self.min_value, self.sample_count,
        )
        if self.bounded and ws is not None:
            line += "; radius bounds %s" % (
                tuple(round(r, 6) for r in self.radius_bounds(ws)),
            )
        return line


def check_bounded(D, sample_count=10000, seed=0):
    """Certify boundedness of the base domain {psi < 1} by sampling S_1.

    Non-negativity of psi is a precondition: when the sampling suite finds a
    negative value the check refuses to certify.  The verdict is "bounded"
    when the sampled minimum m exceeds 1e-6 (then |z_j| <= (1/m)^{1/alpha_j}
    by homogeneity) and "inconclusive" for 0 <= m <= 1e-6.
    """
    ws = D.ws
    nonneg = check_nonnegativity(D.psi, ws, seed=seed)
    D._nonneg_report = nonneg
    if not nonneg.passed:
        report = BoundednessReport(
            "refused", float("nan"), nonneg.argmin, 0, nonneg.min_value
        )
        D._bounded_report = report
        return report
    grid = s1_grid(ws, sample_count)
    vals = D.psi(grid)
    i = int(np.argmin(vals))
    m = float(vals[i])
    verdict = "bounded" if m > BOUNDED_MARGIN else "inconclusive"
    report = BoundednessReport(
        verdict, m, tuple(grid[i]), int(grid.shape[0]), nonneg.min_value
    )
    D._bounded_report = report
    return report


@dataclass(frozen=True)
class FiberReport:
    sigma: float
    samples: int
    discrepancies: int

    @property
    def passed(self):
        return self.discrepancies == 0


def fiber_representation_check(D, sigma, samples=1000, seed=0):
    """On the slice |z^1|^2 = 1 - sigma, membership in D must coincide with
    membership of the sigma^{-1/alpha_j}-rescaled tail in the base domain."""
    if not 0 < sigma < 1:
        raise ContractViolation("sigma must lie in (0, 1)")
    ws = D.ws
    rng = np.random.default_rng(seed)
    alphas = np.asarray(ws.alphas)
    x = rng.uniform(0.0, 1.0, (samples, ws.d))
    # spread tail moduli so psi values straddle sigma
    base = D.psi(x)
    scale = np.where(base > 0, (sigma / np.where(base > 0, base, 1.0)), 1.0)
    x = x * (scale[:, None] ** (1.0 / alphas)) * rng.uniform(0.5, 1.5, (samples, 1))
    vals = D.psi(x)
    in_domain = (1.0 - sigma) + vals < 1.0
    rescaled = x * sigma ** (-1.0 / alphas)
    in_base = D.psi(rescaled) < 1.0
    sure = np.abs(vals - sigma) > 1e-12
    return FiberReport(sigma, samples, int(np.sum((in_domain != in_base) & sure)))


def boundary_sample(D, count, seed=0):
    """Sample boundary points: tail moduli with psi < 1, |z^1| = sqrt(1 - psi),
    directions and phases randomized per the torus action.  Deterministic for
    a fixed seed; requires a verified (non-negative, bounded) domain."""
    if not D.verified:
        raise ContractViolation(
            "boundary_sample requires a verified domain; call verify() first"
        )
    ws = D.ws
    rng = np.random.default_rng(seed)
    radii = np.asarray(D._bounded_report.radius_bounds(ws))
    tails = np.empty((0, ws.d))
    while tails.shape[0] < count:
        cand = rng.uniform(0.0, 1.0, (4 * count, ws.d)) * radii
        cand = cand[D.psi(cand) < 1.0]
        tails = np.concatenate([tails, cand])
    tails = tails[:count]
    head = np.sqrt(1.0 - D.psi(tails))
    moduli = np.concatenate([head[:, None], tails], axis=1)
    out = np.empty((count, D.n), complex)
    offsets = D._offsets
    for j, g in enumerate(ws.group_sizes):
        vec = rng.normal(size=(count, g)) + 1j * rng.normal(size=(count, g))
        vec /= np.linalg.norm(vec, axis=1, keepdims=True)
        out[:, offsets[j]:offsets[j + 1]] = vec * moduli[:, j:j + 1]
    return out


@dataclass(frozen=True)
class SliceTable:
    """Grid of defining-function values over a moduli plane.

    Rows are (x_a, x_b, psi, inside) in row-major grid order; psi is the full
    defining value |z^1|^2 + psi(tail) with the non-selected moduli at 0.
    """

    plane: tuple
    rows: tuple

    def write_csv(self, fh):
        fh.write("x_a,x_b,psi,inside\n")
        for xa, xb, v, inside in self.rows:
            fh.write("%.17g,%.17g,%.17g,%d\n" % (xa, xb, v, inside))


def slice_export(D, plane, grid, hi=1.1):
    """Tabulate the defining value over two moduli coordinates (1-based group
    indices, 1 = |z^1|), other moduli fixed to 0."""
    ia, ib = plane
    p = D.ws.p
    if not (1 <= ia <= p and 1 <= ib <= p and ia != ib):
        raise ContractViolation("plane must pick two distinct groups in 1..%d" % p)
    axis = np.linspace(0.0, hi, grid) if grid > 1 else np.array([0.0])
    rows = []
    for xa in axis:
        for xb in axis:
            moduli = np.zeros(p)
            moduli[ia - 1] = xa
            moduli[ib - 1] = xb
            value = moduli[0] ** 2
            if D.ws.d:
                value += float(D.psi(moduli[1:]))
            rows.append((float(xa), float(xb), float(value), int(value < 1.0)))
    return SliceTable((ia, ib), tuple(rows))
