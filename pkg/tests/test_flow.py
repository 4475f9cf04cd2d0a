"""Uniform potential flow past slit obstacles."""

import json

import numpy as np
import pytest

from stripcap.flow import (
    FlowField,
    GridSpec,
    complex_potential,
    horizontal_slit_map,
    slit_stream_levels,
    stream_grid,
)


class TestLevels:
    def test_levels_match_boundary_images(self, channel_pre):
        ups = horizontal_slit_map(channel_pre)
        levels = slit_stream_levels(ups)
        assert levels.shape == (channel_pre.map.m,)
        for j, zj in enumerate(ups.zeta[1:]):
            assert np.abs(zj.imag - levels[j]).max() < 1e-10

    def test_levels_inside_strip(self, channel_pre):
        levels = slit_stream_levels(horizontal_slit_map(channel_pre))
        assert np.all(np.abs(levels) < np.pi / 2)


class TestComplexPotential:
    def test_far_field_decay(self, channel_pre):
        # far from the obstacles the channel flow is undisturbed: W(z) ~ z + c
        # with a real constant c, and the disturbance dies like e^{-|x|}
        # (slowest transverse mode of the width-pi strip)
        ups = horizontal_slit_map(channel_pre)
        ys = np.linspace(-1.3, 1.3, 7)
        errs = []
        for x0 in (6.0, 10.0, 14.0):
            e = 0.0
            for sgn in (1.0, -1.0):
                W = complex_potential(channel_pre, ups, sgn * x0 + 1j * ys)
                e = max(e, np.abs(W.imag - ys).max())
            errs.append(e)
        assert errs[0] < 5e-3
        assert errs[2] < 2e-6
        # four units of x buy a factor e^{-4} ~ 0.018; allow generous slack
        assert errs[1] < 0.1 * errs[0]
        assert errs[2] < 0.1 * errs[1]

    def test_near_slit_continuity(self, channel_pre):
        # stepping off a hole boundary in the preimage, Im Upsilon tends to
        # that hole's level linearly in the offset; Richardson extrapolation
        # in the offset removes the linear term
        ups = horizontal_slit_map(channel_pre)
        levels = slit_stream_levels(ups)
        bp = channel_pre.map.bp
        for j in range(channel_pre.map.m):
            eta = bp.eta[j + 1]
            etad = bp.eta_dot[j + 1]
            k = eta.size // 3
            nrm = -1j * etad[k] / abs(etad[k])
            v1 = ups.eval(np.array([eta[k] + 1e-4 * nrm]))[0].imag
            v2 = ups.eval(np.array([eta[k] + 5e-5 * nrm]))[0].imag
            extrap = 2.0 * v2 - v1
            assert abs(extrap - levels[j]) < 1e-6


class TestStreamGrid:
    def test_identity_free_channel(self, one_slit_pre):
        # with the slit masked away, psi must be smooth and odd-symmetric for
        # the symmetric single-slit geometry: psi(x, 0) = 0 away from it
        ups = horizontal_slit_map(one_slit_pre)
        grid = GridSpec(-3.0, 3.0, -1.2, 1.2, 25, 11)
        field = stream_grid(one_slit_pre, ups, grid)
        xs, ys = grid.axes()
        iy = np.argmin(np.abs(ys))
        row = field.psi_values[iy]
        ok = field.mask[iy] & (np.abs(xs) > 1.0)
        assert ok.sum() > 5
        assert np.abs(row[ok]).max() < 1e-8

    def test_masking(self, channel_pre):
        ups = horizontal_slit_map(channel_pre)
        grid = GridSpec(-3.0, 3.0, -1.5, 1.5, 31, 21)
        field = stream_grid(channel_pre, ups, grid, exclusion=0.05)
        xs, ys = grid.axes()
        X, Y = np.meshgrid(xs, ys)
        # all strip-interior far-away points are unmasked, wall-adjacent rows
        # stay inside the strip
        far = (np.abs(X) > 2.8) & (np.abs(Y) < 1.4)
        assert field.mask[far].all()
        assert np.isfinite(field.psi_values[field.mask]).all()
        assert np.isnan(field.psi_values[~field.mask]).all()
        # points within the exclusion distance of a slit are masked
        s = channel_pre.omega.slits[0]
        mid = 0.5 * (s.a + s.b)
        d = np.abs(X + 1j * Y - mid)
        assert not field.mask[d < 0.03].any()

    def test_io_round_trip(self, one_slit_pre, tmp_path):
        ups = horizontal_slit_map(one_slit_pre)
        grid = GridSpec(-2.0, 2.0, -1.0, 1.0, 9, 5)
        field = stream_grid(one_slit_pre, ups, grid)
        csv = tmp_path / "field.csv"
        field.to_csv(csv)
        lines = csv.read_text().strip().splitlines()
        assert lines[0] == "x,y,psi"
        assert len(lines) == 1 + 9 * 5
        jsn = tmp_path / "field.json"
        field.to_json(jsn)
        payload = json.loads(jsn.read_text())
        assert payload["grid"]["x"] == [-2.0, 2.0, 9]
        flat = [v for row in payload["psi"] for v in row]
        assert len(flat) == 45
        n_none = sum(v is None for v in flat)
        assert n_none == int((~field.mask).sum())

    def test_grid_validation(self):
        with pytest.raises(ValueError):
            GridSpec(-1.0, 1.0, -1.0, 1.0, 1, 5)
        with pytest.raises(ValueError):
            GridSpec(1.0, -1.0, -1.0, 1.0, 5, 5)
