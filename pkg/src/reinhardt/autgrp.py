"""The explicit non-compact automorphism subgroup.

Unit-disc Moebius action in the first variable combined with fractional
rescaling of the tail variables, plus the special rotations.  Fractional
powers use the principal branch t^{1/alpha} = exp((log|t| + i arg t)/alpha)
with arg t in (-pi, pi] and 0^{1/alpha} = 0.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ContractViolation

MOEBIUS_EDGE = 1.0 - 1e-15


def frac_pow(t, alpha):
    """Principal-branch fractional power t^{1/alpha} with arg t in (-pi, pi].

    Defined as 0 for t = 0; arg(-r) = +pi exactly for negative reals.
    Accepts scalars or arrays.
    """
    if not alpha > 0:
        raise ContractViolation("alpha must be > 0")
    t_arr = np.asarray(t, complex)
    mag = np.abs(t_arr)
    arg = np.angle(t_arr)
    neg_real = (t_arr.real < 0) & (t_arr.imag == 0)
    arg = np.where(neg_real, np.pi, arg)
    safe = np.where(mag > 0, mag, 1.0)
    out = np.where(
        mag > 0,
        np.exp((np.log(safe) + 1j * arg) / alpha),
        0.0 + 0.0j,
    )
    if np.isscalar(t) or np.asarray(t).ndim == 0:
        return complex(out)
    return out


@dataclass(frozen=True)
class MoebiusParams:
    """Disc automorphism parameter a with |a| < 1 (strictly)."""

    a: complex

    def __post_init__(self):
        a = complex(self.a)
        if abs(a) >= MOEBIUS_EDGE:
            raise ContractViolation("|a| must be < 1, got |a| = %r" % abs(a))
        object.__setattr__(self, "a", a)


@dataclass(frozen=True)
class RotationParams:
    """Special rotation angles: beta free, gamma normalized into (-pi, pi]."""

    beta: float
    gamma: float

    def __post_init__(self):
        g = float(np.mod(float(self.gamma) + np.pi, 2 * np.pi) - np.pi)
        if g == -np.pi:
            g = np.pi
        object.__setattr__(self, "beta", float(self.beta))
        object.__setattr__(self, "gamma", g)


def moebius_map(params, z, alphas):
    """Apply the subgroup element with parameter a:

        w_1 = (z_1 - a) / (1 - conj(a) z_1)
        w_j = (1 - |a|^2)^{1/alpha_j} z_j / (1 - conj(a) z_1)^{2/alpha_j}

    alphas holds one weight per tail coordinate (len(z) - 1 entries); the
    first variable group must be one-dimensional.  The base 1 - conj(a) z_1
    has positive real part for |z_1| <= 1, so the principal branch never
    crosses the cut there (asserted at runtime).
    """
    z = np.asarray(z, complex)
    n = z.shape[-1]
    alphas = tuple(float(a) for a in alphas)
    if len(alphas) != n - 1:
        raise ContractViolation(
            "need %d tail weights, got %d" % (n - 1, len(alphas))
        )
    a = params.a
    z1 = z[..., 0]
    denom = 1.0 - np.conj(a) * z1
    if np.any(denom.real <= 0):
        raise ContractViolation(
            "1 - conj(a) z_1 left the right half-plane; require |z_1| <= 1"
        )
    w = np.empty_like(z)
    w[..., 0] = (z1 - a) / denom
    one_minus = 1.0 - abs(a) ** 2
    for j, alpha in enumerate(alphas):
        scale = one_minus ** (1.0 / alpha)
        w[..., j + 1] = scale * z[..., j + 1] / frac_pow(denom, alpha / 2.0)
    return w


def rotation_map(params, z, alphas):
    """w_1 = e^{i beta} z_1; w_j = e^{i gamma / alpha_j} z_j."""
    z = np.asarray(z, complex)
    alphas = tuple(float(a) for a in alphas)
    if len(alphas) != z.shape[-1] - 1:
        raise ContractViolation("tail weight count mismatch")
    w = np.empty_like(z)
    w[..., 0] = np.exp(1j * params.beta) * z[..., 0]
    for j, alpha in enumerate(alphas):
        w[..., j + 1] = np.exp(1j * params.gamma / alpha) * z[..., j + 1]
    return w


@dataclass(frozen=True)
class InvarianceReport:
    samples: int
    membership_violations: int
    max_residual: float

    @property
    def passed(self):
        return self.membership_violations == 0

    def render(self):
        return (
            "invariance: %d samples, %d membership violations, "
            "identity residual %.3e" % (
                self.samples, self.membership_violations, self.max_residual,
            )
        )


def _sample_points(D, samples, rng, radius_margin=1.2):
    """Random points with |z_1| < 1 and tails spanning inside and outside."""
    n = D.n
    z = np.empty((samples, n), complex)
    r1 = np.sqrt(rng.uniform(0.0, 1.0, samples)) * rng.uniform(0.3, 1.0, samples)
    z[:, 0] = r1 * np.exp(1j * rng.uniform(-np.pi, np.pi, samples))
    bounds = D.tail_coordinate_bounds()
    for j in range(1, n):
        rad = rng.uniform(0.0, radius_margin * bounds[j - 1], samples)
        z[:, j] = rad * np.exp(1j * rng.uniform(-np.pi, np.pi, samples))
    return z


def check_invariance(D, params, samples=1000, seed=0, boundary_band=1e-9):
    """Verify membership preservation under the Moebius map together with the
    exact transformation identity

        1 - |w_1|^2 - psi(tail w) = t * (1 - |z_1|^2 - psi(tail z)),
        t = (1 - |a|^2) / |1 - conj(a) z_1|^2,

    over sampled interior and exterior points.  Points inside the boundary
    band on either side are excluded from the membership count.
    """
    rng = np.random.default_rng(seed)
    z = _sample_points(D, samples, rng)
    alphas = D.coordinate_alphas()
    w = moebius_map(params, z, alphas)
    gap_z = D.defining_gap(z)
    gap_w = D.defining_gap(w)
    t = (1.0 - abs(params.a) ** 2) / np.abs(1.0 - np.conj(params.a) * z[:, 0]) ** 2
    rhs = t * gap_z
    residual = np.abs(gap_w - rhs) / np.maximum(1.0, np.abs(rhs))
    sure = (np.abs(gap_z) > boundary_band) & (np.abs(gap_w) > boundary_band)
    violations = int(np.sum(((gap_z > 0) != (gap_w > 0)) & sure))
    return InvarianceReport(samples, violations, float(np.max(residual)))


@dataclass(frozen=True)
class OrbitStep:
    step: int
    a: float
    z: tuple
    gap: float


@dataclass(frozen=True)
class OrbitResult:
    steps: tuple

    @property
    def gaps(self):
        return [s.gap for s in self.steps]

    @property
    def witness(self):
        """Non-compactness witness: gaps strictly decreasing to below 1e-5."""
        g = self.gaps
        return (
            len(g) > 0
            and all(b < a for a, b in zip(g, g[1:]))
            and g[-1] < 1e-5
        )

    def write_csv(self, fh):
        fh.write("step,a,re_z1,im_z1,gap\n")
        for s in self.steps:
            fh.write(
                "%d,%.17g,%.17g,%.17g,%.17g\n"
                % (s.step, s.a, s.z[0].real, s.z[0].imag, s.gap)
            )


def orbit(D, start, a_sequence):
    """Apply the Moebius map with each parameter of a_sequence to start and
    record the defining-function gap 1 - |z_1|^2 - psi(tail)."""
    start = np.asarray(start, complex)
    if not D.defining_gap(start) > 0:
        raise ContractViolation("orbit start must lie inside the domain")
    alphas = D.coordinate_alphas()
    steps = []
    for m, a in enumerate(a_sequence, start=1):
        params = MoebiusParams(a)
        w = moebius_map(params, start, alphas)
        gap = float(D.defining_gap(w))
        steps.append(OrbitStep(m, float(np.real(a)), tuple(w.tolist()), gap))
    return OrbitResult(tuple(steps))


@dataclass(frozen=True)
class RoundTripResidual:
    z1: float
    moduli: float
    full: float  # nan when some alpha is not an even integer


def inverse_check(params, z, alphas, tol=1e-12):
    """Round-trip z through the maps with parameters a and -a.

    The first coordinate and all tail moduli must return within tol; when
    every alpha_j is an even integer the full vector must return as well
    (integer exponents leave no branch ambiguity).
    """
    z = np.asarray(z, complex)
    if not np.all(np.abs(z[..., 0]) < 1):
        raise ContractViolation("require |z_1| < 1")
    back = moebius_map(
        MoebiusParams(-params.a), moebius_map(params, z, alphas), alphas
    )
    res_z1 = float(np.max(np.abs(back[..., 0] - z[..., 0])))
    res_mod = float(np.max(np.abs(np.abs(back) - np.abs(z))))
    even = all(a == int(a) and int(a) % 2 == 0 for a in alphas)
    res_full = float(np.max(np.abs(back - z))) if even else float("nan")
    if res_z1 > tol or res_mod > tol:
        raise ContractViolation(
            "round trip failed: z1 residual %g, moduli residual %g"
            % (res_z1, res_mod)
        )
    if even and res_full > tol:
        raise ContractViolation("even-weight full round trip residual %g" % res_full)
    return RoundTripResidual(res_z1, res_mod, res_full)
