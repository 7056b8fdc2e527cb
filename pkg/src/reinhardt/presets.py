"""Built-in domains and probe controls.

Presets: ball (leading part with alphas (2,2), the unit ball in C^3),
ellipsoid (|z_1|^2 + |z_2|^alpha < 1 in C^2), theorem1-poly (an all-even
polynomial measure), example5 (the segment-measure function with
alphas (9,9), k=2) and example6 (the profile function with alphas (8,8),
k=2).  Controls for the smoothness probe: corner (|z_2|, a genuine C^0
corner) and smooth (|z_2|^2 + |z_3|^2).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .analysis import Locus, moduli_function_as_real
from .domain import ReinhardtDomain
from .errors import ContractViolation
from .homog import DefiningFunction, InvariantProfile, Monomial, SegmentIntegral
from .weights import WeightSystem

PRESET_NAMES = (
    "ball", "ellipsoid", "theorem1-poly", "example5", "example6",
    "corner", "smooth",
)


@dataclass(frozen=True)
class Preset:
    name: str
    ws: object              # WeightSystem or None for probe-only controls
    psi: object             # DefiningFunction or None
    domain: object          # ReinhardtDomain or None
    loci: tuple             # smoothness probe loci (real coordinates)
    probe_function: object  # function of the real coordinates, or None
    probe_k: int
    quadrature: bool        # True when evaluation involves quadrature terms

    @property
    def probe_only(self):
        return self.domain is None


def _axis_loci(values=(0.7,)):
    loci = []
    for v in values:
        loci.append(Locus("z2=0 (z3=%g)" % v, (0.0, 0.0, v, 0.0), (1, 0, 0, 0)))
        loci.append(Locus("z3=0 (z2=%g)" % v, (v, 0.0, 0.0, 0.0), (0, 0, 1, 0)))
    return loci


def _diagonal_locus(v=0.7):
    return Locus("|z2|=|z3| (at %g)" % v, (v, 0.0, v, 0.0), (1, 0, 0, 0))


def get_preset(name, ellipsoid_alpha=4.0):
    if name == "ball":
        ws = WeightSystem(3, (1, 1, 1), (2.0, 2.0), 1)
        psi = DefiningFunction(ws)
        return Preset(
            name, ws, psi, ReinhardtDomain(ws, psi),
            tuple(_axis_loci() + [_diagonal_locus()]),
            moduli_function_as_real(psi, 2), 2, False,
        )
    if name == "ellipsoid":
        a = float(ellipsoid_alpha)
        k = 1 if a == int(a) and int(a) % 2 == 0 else max(1, int(np.floor((a - 1e-9) / 2)))
        ws = WeightSystem(2, (1, 1), (a,), k)
        psi = DefiningFunction(ws)
        loci = (Locus("z2=0", (0.0, 0.0), (1, 0)),)
        return Preset(
            name, ws, psi, ReinhardtDomain(ws, psi), loci,
            moduli_function_as_real(psi, 1), min(ws.k, 2), False,
        )
    if name == "theorem1-poly":
        ws = WeightSystem(3, (1, 1, 1), (8.0, 8.0), 2)
        psi = DefiningFunction(ws, (
            Monomial(0.5, (2.0, 6.0)),
            Monomial(1.0, (4.0, 4.0)),
            Monomial(0.5, (6.0, 2.0)),
        ))
        return Preset(
            name, ws, psi, ReinhardtDomain(ws, psi),
            tuple(_axis_loci() + [_diagonal_locus()]),
            moduli_function_as_real(psi, 2), 2, False,
        )
    if name == "example5":
        ws = WeightSystem(3, (1, 1, 1), (9.0, 9.0), 2)
        psi = DefiningFunction(ws, (
            SegmentIntegral(4.0, 5.0, (5.0, 4.0), (4.0, 5.0)),
        ))
        return Preset(
            name, ws, psi, ReinhardtDomain(ws, psi),
            tuple(_axis_loci() + [_diagonal_locus()]),
            moduli_function_as_real(psi, 2), 2, True,
        )
    if name == "example6":
        ws = WeightSystem(3, (1, 1, 1), (8.0, 8.0), 2)
        psi = DefiningFunction(ws, (
            InvariantProfile((8.0, 0.0), ((-2.0, 2.0),), "quintic_blend"),
        ))
        return Preset(
            name, ws, psi, ReinhardtDomain(ws, psi),
            tuple(_axis_loci() + [_diagonal_locus()]),
            moduli_function_as_real(psi, 2), 2, False,
        )
    if name == "corner":
        f = moduli_function_as_real(lambda x: x[..., 0], 1)
        loci = (Locus("z2=0", (0.0, 0.0), (1, 0)),)
        return Preset(name, None, None, None, loci, f, 1, False)
    if name == "smooth":
        f = moduli_function_as_real(lambda x: np.sum(x * x, axis=-1), 2)
        loci = (
            Locus("z2=0", (0.0, 0.0, 0.7, 0.0), (1, 0, 0, 0)),
            Locus("z3=0", (0.7, 0.0, 0.0, 0.0), (0, 0, 1, 0)),
        )
        return Preset(name, None, None, None, loci, f, 3, False)
    raise ContractViolation(
        "unknown preset %r; choose one of %s" % (name, ", ".join(PRESET_NAMES))
    )


def domain_presets():
    """Names of the presets that define a full Reinhardt domain."""
    return ("ball", "ellipsoid", "theorem1-poly", "example5", "example6")
