"""Acceptance suite: the headline numerical guarantees, one line each.

Run with `pytest -v tests/test_acceptance.py` (add -s to see the PASS lines
while the suite runs).
"""

import numpy as np
import pytest

from reinhardt.analysis import (
    ProbeConfig,
    check_homogeneity,
    check_n2_rigidity,
    check_normalization,
    smoothness_probe,
)
from reinhardt.autgrp import (
    MoebiusParams,
    RotationParams,
    check_invariance,
    orbit,
    rotation_map,
)
from reinhardt.domain import check_bounded
from reinhardt.errors import ContractViolation
from reinhardt.homog import (
    DefiningFunction,
    Monomial,
    SegmentIntegral,
    bp_polynomial_eval,
    construct_from_measure,
    example5_closed_form,
    extend_from_germ,
)
from reinhardt.presets import domain_presets, get_preset
from reinhardt.weights import WeightSystem, enumerate_admissible_set

PRESETS = domain_presets()


def report(num, label, ok, detail=""):
    line = "[%2d] %s: %s" % (num, label, "PASS" if ok else "FAIL")
    if detail:
        line += " (%s)" % detail
    print(line)
    assert ok, line


def test_01_admissible_set_fixtures():
    ws5 = WeightSystem(3, (1, 1, 1), (9.0, 9.0), 2)
    ws6 = WeightSystem(3, (1, 1, 1), (8.0, 8.0), 2)
    got5 = enumerate_admissible_set(ws5).canonical_text()
    got6 = enumerate_admissible_set(ws6).canonical_text()
    want5 = (
        "M(alphas=(9, 9), k=2)\n"
        "  segment: s2 = 9 - s3, s3 in [4, 5]\n"
        "  point: (2, 7)\n"
        "  point: (7, 2)"
    )
    want6 = (
        "M(alphas=(8, 8), k=2)\n"
        "  point: (2, 6)\n"
        "  point: (4, 4)\n"
        "  point: (6, 2)"
    )
    report(1, "admissible-set canonical fixtures", got5 == want5 and got6 == want6)


def test_02_homogeneity_all_presets():
    worst = {}
    ok = True
    for name in PRESETS:
        p = get_preset(name)
        tol = 1e-6 if p.quadrature else 1e-9
        res = check_homogeneity(p.psi, p.ws, samples=200)  # 200 x 6 t-values
        worst[name] = res
        ok &= res <= tol
    report(2, "weighted homogeneity residual", ok,
           "max %.2e" % max(worst.values()))


def test_03_axis_normalization():
    ok = all(
        check_normalization(get_preset(n).psi, get_preset(n).ws, rtol=1e-12).passed
        for n in PRESETS
    )
    report(3, "axis normalization to 1e-12", ok)


def test_04_closed_form_vs_quadrature():
    ws = WeightSystem(3, (1, 1, 1), (9.0, 9.0), 2)
    f = construct_from_measure(
        ws, segments=(SegmentIntegral(4.0, 5.0, (5.0, 4.0), (4.0, 5.0)),)
    )
    rng = np.random.default_rng(11)
    x = rng.uniform(0.0, 1.5, (1000, 2))
    x[:200, 1] = np.abs(x[:200, 0] + rng.uniform(-1e-4, 1e-4, 200))
    want = example5_closed_form(x[:, 0], x[:, 1])
    rel = np.max(np.abs(f(x) - want) / np.maximum(1.0, np.abs(want)))
    report(4, "closed form vs quadrature oracle", rel <= 1e-8, "rel %.2e" % rel)


def test_05_automorphism_invariance():
    rng = np.random.default_rng(5)
    r = np.sqrt(rng.uniform(0.0, 0.9, 100))
    params = [MoebiusParams(v) for v in r * np.exp(1j * rng.uniform(-np.pi, np.pi, 100))]
    ok = True
    worst = 0.0
    for name in PRESETS:
        p = get_preset(name)
        tol = 1e-6 if p.quadrature else 1e-9
        for i, prm in enumerate(params):
            rep = check_invariance(p.domain, prm, samples=1000, seed=i)
            ok &= rep.passed and rep.max_residual <= tol
            worst = max(worst, rep.max_residual)
    # rotations preserve moduli
    z = rng.normal(size=(500, 3)) + 1j * rng.normal(size=(500, 3))
    w = rotation_map(RotationParams(0.9, 2.2), z, (9.0, 9.0))
    rot = np.max(np.abs(np.abs(w) - np.abs(z)))
    ok &= rot <= 1e-15
    report(5, "Moebius invariance + rotations", ok,
           "identity %.2e, rotation %.1e" % (worst, rot))


def test_06_noncompactness_witness():
    D = get_preset("example5").domain
    sched = [1.0 - 2.0 ** (-m) for m in range(1, 21)]
    result = orbit(D, np.zeros(3, complex), sched)
    errs = [
        abs(s.gap - 2.0 ** (-m) * (2.0 - 2.0 ** (-m)))
        for m, s in enumerate(result.steps, start=1)
    ]
    ok = max(errs) <= 1e-12 and result.steps[-1].gap < 1e-5 and result.witness
    report(6, "orbit gap closed form + decay", ok, "max err %.2e" % max(errs))


def test_07_smoothness_probes():
    reps = {}
    for name in ("example5", "example6"):
        p = get_preset(name)
        reps[name] = smoothness_probe(p.probe_function, ProbeConfig(k=2, loci=p.loci))
    corner = get_preset("corner")
    crep = smoothness_probe(corner.probe_function, ProbeConfig(k=1, loci=corner.loci))
    mismatch = max(b.extrapolated for b in crep.blocks)
    ok = all(r.consistent for r in reps.values()) and not crep.consistent and mismatch >= 0.1
    report(7, "C^2 probes + corner discrimination", ok,
           "corner mismatch %.2f" % mismatch)


def test_08_germ_extension():
    rng = np.random.default_rng(8)
    worst = 0.0
    ok = True
    for name in PRESETS:
        p = get_preset(name)
        psi = extend_from_germ(p.psi, 0.5, p.ws)
        x = rng.uniform(0.0, 1.5, (400, p.ws.d))
        want = p.psi(x)
        rel = np.max(np.abs(psi(x) - want) / np.maximum(1.0, np.abs(want)))
        worst = max(worst, rel)
        ok &= rel <= 1e-9 and psi(np.zeros(p.ws.d)) == 0.0
    report(8, "germ extension reproduces presets", ok, "rel %.2e" % worst)


def test_09_n2_rigidity():
    c, dev = check_n2_rigidity(lambda z: 1.7 * np.abs(z) ** 6, 6.0)
    good = abs(c - 1.7) <= 1e-12 and dev <= 1e-12
    _, dev_bad = check_n2_rigidity(lambda z: np.abs(z) ** 4 + np.abs(z) ** 6, 4.0)
    report(9, "n=2 rigidity estimator", good and dev_bad > 1e-6,
           "dev %.1e / violation %.2f" % (dev, dev_bad))


def test_10_hermitian_polynomials():
    rng = np.random.default_rng(10)
    idx = [(2, 0), (1, 1), (0, 2)]  # the weight-1/2 indices for alphas (4, 4)
    ok = True
    for _ in range(100):
        A = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
        A = 0.5 * (A + A.conj().T)
        table = {(K, L): A[i, j] for i, K in enumerate(idx) for j, L in enumerate(idx)}
        z = rng.normal(size=2) + 1j * rng.normal(size=2)
        got = bp_polynomial_eval(table, z, (4.0, 4.0))
        want = sum(
            A[i, j] * z[0] ** K[0] * z[1] ** K[1]
            * np.conj(z[0]) ** L[0] * np.conj(z[1]) ** L[1]
            for i, K in enumerate(idx) for j, L in enumerate(idx)
        )
        ok &= abs(want.imag) <= 1e-12 * max(1.0, abs(want))
        ok &= abs(got - want.real) <= 1e-10 * max(1.0, abs(want))
    with pytest.raises(ContractViolation):
        bp_polynomial_eval({((2, 0), (0, 2)): 1j, ((0, 2), (2, 0)): 1j},
                           np.ones(2, complex), (4.0, 4.0))
    with pytest.raises(ContractViolation):
        bp_polynomial_eval({((3, 0), (3, 0)): 1.0}, np.ones(2, complex), (4.0, 4.0))
    report(10, "Hermitian polynomial evaluation", ok)


def test_11_boundedness():
    mins = {}
    ok = True
    for name in PRESETS:
        p = get_preset(name)
        rep = check_bounded(p.domain, 10000)
        mins[name] = rep.min_value
        ok &= rep.bounded and rep.min_value > 0.05
    ws = WeightSystem(3, (1, 1, 1), (8.0, 8.0), 2)
    from reinhardt.domain import ReinhardtDomain

    bad = ReinhardtDomain(ws, DefiningFunction(ws, (Monomial(-3.0, (4.0, 4.0)),)))
    refused = check_bounded(bad, 2000).verdict == "refused"
    report(11, "boundedness certification", ok and refused,
           "min over presets %.3f" % min(mins.values()))
