"""Domain membership, boundedness certification, fibers, and slices."""

import io

import numpy as np
import pytest

from reinhardt.domain import (
    ReinhardtDomain,
    boundary_sample,
    check_bounded,
    contains_point,
    fiber_representation_check,
    s1_grid,
    slice_export,
)
from reinhardt.errors import ContractViolation
from reinhardt.homog import DefiningFunction, Monomial
from reinhardt.presets import domain_presets, get_preset
from reinhardt.weights import WeightSystem

WS8 = WeightSystem(3, (1, 1, 1), (8.0, 8.0), 2)


def negative_counterexample():
    """2 x^8 - 3 x^8 < 0 on the diagonal; non-negativity must catch it."""
    return ReinhardtDomain(
        WS8, DefiningFunction(WS8, (Monomial(-3.0, (4.0, 4.0)),))
    )


class TestS1Grid:
    def test_points_lie_on_s1(self):
        for name in ("ball", "example5"):
            ws = get_preset(name).ws
            grid = s1_grid(ws, 500)
            r = np.sum(grid ** np.asarray(ws.alphas), axis=-1)
            assert np.max(np.abs(r - 1.0)) < 1e-12

    def test_halton_branch(self):
        ws = WeightSystem(4, (1, 1, 1, 1), (4.0, 6.0, 8.0), 1)
        grid = s1_grid(ws, 200)
        assert grid.shape == (200, 3)
        r = np.sum(grid ** np.asarray(ws.alphas), axis=-1)
        assert np.max(np.abs(r - 1.0)) < 1e-12


class TestMembership:
    def test_ball_interior(self):
        D = get_preset("ball").domain
        assert contains_point(D, [0.5, 0.5, 0.5]).inside

    def test_ball_exterior(self):
        D = get_preset("ball").domain
        res = contains_point(D, [0.9, 0.9, 0.0])
        assert not res.inside and res.value > 1.0

    def test_boundary_flag(self):
        D = get_preset("ball").domain
        res = contains_point(D, [1.0, 0.0, 0.0])
        assert res.boundary and not res.inside

    def test_group_norms(self):
        ws = WeightSystem(4, (1, 2, 1), (2.0, 2.0), 1)
        D = ReinhardtDomain(ws, DefiningFunction(ws))
        # |z^2| = sqrt(0.3^2 + 0.4^2) = 0.5
        head, tail = D.group_moduli(np.array([0.1, 0.3, 0.4j, 0.2]))
        assert head == pytest.approx(0.1)
        assert tail[0] == pytest.approx(0.5)


class TestBoundedness:
    @pytest.mark.parametrize("name", domain_presets())
    def test_presets_bounded(self, name):
        p = get_preset(name)
        rep = check_bounded(p.domain, 10000)
        assert rep.bounded
        assert rep.min_value > 0.05

    def test_radius_bound_is_valid(self):
        p = get_preset("example5")
        rep = check_bounded(p.domain, 10000)
        r2, r3 = rep.radius_bounds(p.ws)
        # any point of the base domain obeys the certified radius bound
        x = np.random.default_rng(0).uniform(0, 2.0, (2000, 2))
        inside = x[p.psi(x) < 1.0]
        assert np.all(inside[:, 0] <= r2 + 1e-9)
        assert np.all(inside[:, 1] <= r3 + 1e-9)

    def test_negative_function_refused(self):
        rep = check_bounded(negative_counterexample(), 2000)
        assert rep.verdict == "refused"
        assert not rep.bounded
        assert rep.nonneg_min < 0


class TestFibers:
    def test_leading_part_sigma_half(self):
        rep = fiber_representation_check(get_preset("ball").domain, 0.5)
        assert rep.passed

    def test_example5_sigma_quarter(self):
        rep = fiber_representation_check(get_preset("example5").domain, 0.25)
        assert rep.passed

    def test_bad_sigma(self):
        with pytest.raises(ContractViolation):
            fiber_representation_check(get_preset("ball").domain, 1.5)


class TestBoundarySample:
    def test_requires_verification(self):
        D = ReinhardtDomain(WS8, DefiningFunction(WS8))
        with pytest.raises(ContractViolation):
            boundary_sample(D, 10)

    def test_points_on_boundary(self):
        D = get_preset("example5").domain
        D.verify()
        pts = boundary_sample(D, 50, seed=7)
        assert pts.shape == (50, 3)
        gaps = D.defining_gap(pts)
        assert np.max(np.abs(gaps)) < 1e-12

    def test_deterministic(self):
        D = get_preset("ball").domain
        D.verify()
        a = boundary_sample(D, 20, seed=3)
        b = boundary_sample(D, 20, seed=3)
        assert np.array_equal(a, b)


class TestSliceExport:
    def test_csv_format(self):
        table = slice_export(get_preset("ball").domain, (1, 2), 3, hi=1.0)
        buf = io.StringIO()
        table.write_csv(buf)
        lines = buf.getvalue().strip().split("\n")
        assert lines[0] == "x_a,x_b,psi,inside"
        assert len(lines) == 1 + 9
        first = lines[1].split(",")
        assert len(first) == 4 and first[3] in ("0", "1")

    def test_example5_tail_slice_symmetric(self):
        table = slice_export(get_preset("example5").domain, (2, 3), 21, hi=1.2)
        vals = np.array([r[2] for r in table.rows]).reshape(21, 21)
        assert np.max(np.abs(vals - vals.T)) < 1e-12

    def test_inside_indicator(self):
        table = slice_export(get_preset("ball").domain, (1, 2), 12, hi=1.1)
        for xa, xb, v, inside in table.rows:
            assert inside == int(xa ** 2 + xb ** 2 < 1.0)

    def test_bad_plane(self):
        with pytest.raises(ContractViolation):
            slice_export(get_preset("ball").domain, (1, 1), 4)
