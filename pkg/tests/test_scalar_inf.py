import math

import numpy as np
import pytest

from rankone2d import catalog, errors, expr, scalar_inf


def infimum(source, var, **kw):
    return scalar_inf.infimum_weighted_second(expr.parse(source, var), **kw)


class TestKnownInfima:
    def test_example1_volumetric_closed_form(self):
        # z^2 f''(z) = (1/30)(z^2 + 3/z^2), minimum sqrt(3)/15 at z = 3^(1/4)
        r = infimum("(1/60)*(z - 1/z)^2", "z")
        assert r.value == pytest.approx(math.sqrt(3.0) / 15.0, abs=1e-10)
        assert r.attained_at == pytest.approx(3.0**0.25, rel=1e-6)

    def test_example1_isochoric_frozen_reference(self):
        # independent dense minimization of 0.2 e^{u^2/10} (1 - u + u^2/5)
        r = infimum("exp((1/10)*log(t)^2)", "t")
        assert r.value == pytest.approx(-0.10167719011060454, abs=1e-9)
        assert r.attained_at == pytest.approx(16.83398904461509, rel=1e-4)

    def test_example2_isochoric_closed_form(self):
        # t^2 h'' = (12/5)(t^2 + 3/t^2), minimum 24 sqrt(3)/5 at t = 3^(1/4)
        r = infimum("(6/5)*(t - 1/t)^2", "t")
        assert r.value == pytest.approx(24.0 * math.sqrt(3.0) / 5.0, abs=1e-8)

    def test_example2_volumetric_interior_minimum(self):
        # z^2 f'' = 20/z^4 - 30/z^2 - 10 z^2 + 12 z^4 takes the value -8 at
        # z = 1 but is not stationary there (derivative 8); the infimum sits
        # slightly below, independently verified on a dense grid
        r = infimum("(z - 1/z)^4 - (z - 1/z)^2", "z")
        assert r.value == pytest.approx(-8.090151482887336, abs=1e-8)
        assert r.attained_at == pytest.approx(0.9778145, rel=1e-5)

    def test_quadratic_volumetric_boundary_marker(self):
        # z^2 * 2 -> infimum 0 in the limit z -> 0+
        r = infimum("(z - 1)^2", "z")
        assert r.attained_at == scalar_inf.LIMIT_LOWER
        assert r.value == pytest.approx(0.0, abs=1e-10)

    def test_stationarity_at_interior_minimum(self):
        r = infimum("(z - 1/z)^4 - (z - 1/z)^2", "z")
        x = r.attained_at
        h = 1e-5
        e = expr.parse("(z - 1/z)^4 - (z - 1/z)^2", "z")
        lo = scalar_inf.weighted_second(e, np.array([x - h]))[0]
        hi = scalar_inf.weighted_second(e, np.array([x + h]))[0]
        assert abs(hi - lo) / (2 * h) < 1e-4


class TestUnboundedness:
    def test_hencky_isochoric_diverges(self):
        # t^2 h'' = mu (1 - log t) -> -inf as t -> inf
        r = infimum("(1/2)*log(t)^2", "t")
        assert r.unbounded
        assert r.attained_at == scalar_inf.LIMIT_UPPER

    def test_hencky_volumetric_diverges(self):
        r = infimum("(1/2)*log(z)^2", "z")
        assert r.unbounded

    def test_fast_divergence_detected(self):
        # z^2 f'' = -2 z^4 -> -inf very fast
        r = infimum("0 - (z^2 - 1)^2", "z")
        assert r.unbounded
        assert r.attained_at == scalar_inf.LIMIT_UPPER

    def test_bounded_boundary_limit_not_flagged(self):
        # k-energy: t^2 h'' = mu / t -> 0+ at the upper boundary; finite
        r = infimum("(1/2)*(t + 1/t)", "t")
        assert not r.unbounded
        assert r.attained_at == scalar_inf.LIMIT_UPPER
        assert r.value == pytest.approx(0.0, abs=1e-5)

    def test_margin_history_is_recorded(self):
        r = infimum("(z - 1/z)^4 - (z - 1/z)^2", "z")
        assert len(r.margin_history) >= 1
        assert r.margin_history[-1][1] == pytest.approx(r.value)


class TestDomainHandling:
    def test_invalid_domain(self):
        with pytest.raises(ValueError):
            infimum("z^2", "z", domain_lo=2.0, domain_hi=1.0)

    def test_nan_inside_domain_raises(self):
        with pytest.raises(errors.NonFinite):
            infimum("sqrt(z - 1)", "z")

    def test_domain_truncation_controls(self):
        r = infimum("(z - 1/z)^4 - (z - 1/z)^2", "z",
                    domain_lo=0.5, domain_hi=2.0)
        assert r.value == pytest.approx(-8.090151482887336, abs=1e-8)


class TestConvexityVerdict:
    def test_convex(self):
        kind, wit = scalar_inf.convexity_verdict(expr.parse("z^2", "z"))
        assert kind == "Convex"
        assert wit is None

    def test_nonconvex_with_witness(self):
        kind, wit = scalar_inf.convexity_verdict(expr.parse("0 - (z - 1)^2", "z"))
        assert kind == "NonConvex"
        assert wit is not None

    def test_nonconvex_well(self):
        kind, wit = scalar_inf.convexity_verdict(
            expr.parse("(z - 1/z)^4 - (z - 1/z)^2", "z"))
        assert kind == "NonConvex"
        assert 0.5 < wit < 2.0

    def test_example1_parts(self):
        e = catalog("example1")
        assert scalar_inf.convexity_verdict(e.h)[0] == "NonConvex"
        assert scalar_inf.convexity_verdict(e.f)[0] == "Convex"
