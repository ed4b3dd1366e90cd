"""Fitted-series evaluation against an independently coded enumerator."""

import math

import numpy as np
import pytest

from antroute.predictor import (
    ALPHA_MODEL,
    BETA_MODEL,
    CHEBYSHEV,
    COEFFICIENT_NAMES,
    SIGMOID,
    FitModel,
    chebyshev_basis,
    evaluate_fit,
    load_fit_model,
    recommend_parameters,
    sigmoid_basis,
    table_checksum,
)
from antroute.roadmap import RoadmapFeatures

ALPHA_TABLE_SHA256 = "8b922e8352deb83b4dfaa7ec5874c008b64a7f2dcc5506c591ec43ffe3972f7a"
BETA_TABLE_SHA256 = "a0bc604b982ad84a5c194e172090d1a30b2b0976dac4b4629a523e722357590a"


def cheb_by_recurrence(n, u):
    """Chebyshev values via the three-term recurrence, not arccos."""
    if n == 0:
        return 1.0
    prev, cur = 1.0, u
    for _ in range(n - 1):
        prev, cur = cur, 2.0 * u * cur - prev
    return cur


def sig_by_tanh(i, n, u):
    """Shifted logistic written through tanh, not the exp form."""
    if i == 1:
        return u
    z = (u + 1.0 - (i - 1) * (2.0 / n)) / 0.12
    return math.tanh(z / 2.0)


def enumerate_terms(model, x, y):
    """Brute-force evaluation looping total degree 0..6 directly."""
    x_lo, x_hi = model.x_scaling
    y_lo, y_hi = model.y_scaling
    uy = math.log(y) if model.basis == CHEBYSHEV else float(y)
    ux = min(max(float(x), x_lo), x_hi)
    uy = min(max(uy, y_lo), y_hi)
    xp = (ux - x_lo) / (x_hi - x_lo) * 2.0 - 1.0
    yp = (uy - y_lo) / (y_hi - y_lo) * 2.0 - 1.0
    base = cheb_by_recurrence if model.basis == CHEBYSHEV else (
        lambda k, u: sig_by_tanh(k, 6, u)
    )
    names = iter(COEFFICIENT_NAMES)
    total = 0.0
    for degree in range(7):
        for py in range(degree + 1):
            px = degree - py
            c = model.coefficients[next(names)]
            fx = 1.0 if px == 0 else base(px, xp)
            fy = 1.0 if py == 0 else base(py, yp)
            total += c * fx * fy
    return total


class TestBases:
    def test_chebyshev_values(self):
        assert chebyshev_basis(0, 0.77) == 1.0
        assert chebyshev_basis(1, 0.3) == pytest.approx(0.3, rel=1e-15)
        assert chebyshev_basis(2, 0.5) == pytest.approx(-0.5, abs=1e-12)

    def test_chebyshev_recurrence_property(self):
        for u in np.linspace(-1.0, 1.0, 41):
            for n in range(1, 6):
                lhs = chebyshev_basis(n + 1, u)
                rhs = 2.0 * u * chebyshev_basis(n, u) - chebyshev_basis(n - 1, u)
                assert lhs == pytest.approx(rhs, abs=1e-12)

    def test_chebyshev_domain_error(self):
        with pytest.raises(ValueError):
            chebyshev_basis(2, 1.0001)
        with pytest.raises(ValueError):
            chebyshev_basis(2, -1.0001)

    def test_sigmoid_identity_first_term(self):
        for u in (-0.4, 0.0, 0.9):
            assert sigmoid_basis(1, 6, u) == u

    def test_sigmoid_midpoint_and_saturation(self):
        # S_2 crosses zero where its argument does, at xp = -2/3 for n = 6
        assert sigmoid_basis(2, 6, -2.0 / 3.0) == pytest.approx(0.0, abs=1e-12)
        assert abs(sigmoid_basis(2, 6, 1.0) - 1.0) < 2e-6

    def test_sigmoid_monotone_and_bounded(self):
        grid = np.linspace(-1.5, 1.5, 101)
        for i in range(1, 7):
            vals = [sigmoid_basis(i, 6, u) for u in grid]
            assert all(b >= a for a, b in zip(vals, vals[1:]))
            if i > 1:
                assert all(-1.0 <= v <= 1.0 for v in vals)


class TestEvaluateFit:
    def test_constant_model(self):
        coeffs = {name: 0.0 for name in COEFFICIENT_NAMES}
        coeffs["a"] = 1.0
        m = FitModel(SIGMOID, coeffs)
        for x, y in ((250.0, 0.15), (300.0, 0.2), (350.0, 0.3)):
            assert evaluate_fit(m, x, y).value == 1.0

    def test_alpha_midpoint_against_survivor_signs(self):
        # at xp = yp = 0 only even-order products survive, with signs
        # 1, -1, 1, -1 for orders 0, 2, 4, 6
        c = ALPHA_MODEL.coefficients
        expected = (
            c["a"] - c["d"] - c["f"] + c["k"] + c["m"] + c["o"]
            - c["v"] - c["ab"] - c["ad"] - c["af"]
        )
        x = 300.0
        y = math.exp((math.log(0.15) + math.log(0.30)) / 2.0)
        got = evaluate_fit(ALPHA_MODEL, x, y)
        assert not got.out_of_domain
        assert got.value == pytest.approx(expected, abs=1e-9)
        assert got.value == pytest.approx(0.2882, abs=1e-9)

    def test_matches_enumerator_both_tables(self):
        rng = np.random.default_rng(20260818)
        for model in (ALPHA_MODEL, BETA_MODEL):
            xs = rng.uniform(250.0, 350.0, 200)
            ys = rng.uniform(0.15, 0.30, 200)
            for x, y in zip(xs, ys):
                want = enumerate_terms(model, x, y)
                got = evaluate_fit(model, x, y).value
                assert abs(got - want) <= 1e-9

    def test_beta_grid_is_finite_and_locked(self):
        xs = np.linspace(250.0, 350.0, 20)
        ys = np.linspace(0.15, 0.30, 20)
        vals = [evaluate_fit(BETA_MODEL, x, y).value for x in xs for y in ys]
        assert all(math.isfinite(v) for v in vals)
        assert min(vals) == pytest.approx(-5.269133544982397, rel=1e-9)
        assert max(vals) == pytest.approx(10.567159117055205, rel=1e-9)

    def test_clamp_flags(self):
        low_x = evaluate_fit(BETA_MODEL, 100.0, 0.2)
        assert low_x.x_clamped and not low_x.y_clamped
        assert low_x.value == evaluate_fit(BETA_MODEL, 250.0, 0.2).value
        high_y = evaluate_fit(BETA_MODEL, 300.0, 0.9)
        assert high_y.y_clamped and not high_y.x_clamped
        assert high_y.value == evaluate_fit(BETA_MODEL, 300.0, 0.30).value
        inside = evaluate_fit(BETA_MODEL, 300.0, 0.2)
        assert not inside.out_of_domain

    def test_chebyshev_rejects_nonpositive_y(self):
        with pytest.raises(ValueError):
            evaluate_fit(ALPHA_MODEL, 300.0, 0.0)
        with pytest.raises(ValueError):
            evaluate_fit(ALPHA_MODEL, 300.0, -0.1)
        # sigmoid model has no log, so zero is just clamped
        assert evaluate_fit(BETA_MODEL, 300.0, 0.0).y_clamped


class TestModelTables:
    def test_checksums_locked(self):
        assert table_checksum(ALPHA_MODEL) == ALPHA_TABLE_SHA256
        assert table_checksum(BETA_MODEL) == BETA_TABLE_SHA256

    def test_spot_values(self):
        assert ALPHA_MODEL.coefficients["a"] == 2.094
        assert ALPHA_MODEL.coefficients["af"] == 0.124
        assert BETA_MODEL.coefficients["a"] == 1.396
        assert BETA_MODEL.coefficients["af"] == -0.036

    def test_model_validation(self):
        coeffs = {name: 0.0 for name in COEFFICIENT_NAMES}
        with pytest.raises(ValueError):
            FitModel("fourier", coeffs)
        with pytest.raises(ValueError):
            FitModel(SIGMOID, dict(list(coeffs.items())[:-1]))
        with pytest.raises(ValueError):
            FitModel(SIGMOID, coeffs, x_scaling=(1.0, 1.0))
        with pytest.raises(ValueError):
            FitModel(SIGMOID, coeffs, order=5)


class TestRecommend:
    def test_uses_both_models(self):
        f = RoadmapFeatures(node_density=300.0, min_arc_stddev=0.2)
        r = recommend_parameters(f)
        assert r.alpha == evaluate_fit(ALPHA_MODEL, 300.0, 0.2).value
        assert r.beta == evaluate_fit(BETA_MODEL, 300.0, 0.2).value
        assert math.isfinite(r.alpha) and math.isfinite(r.beta)
        assert r.flags == ()
        assert not r.out_of_domain

    def test_out_of_domain_flags(self):
        f = RoadmapFeatures(node_density=120.0, min_arc_stddev=0.5)
        r = recommend_parameters(f)
        assert r.out_of_domain
        assert "alpha_x_clamped" in r.flags
        assert "beta_y_clamped" in r.flags

    def test_custom_models(self):
        coeffs = {name: 0.0 for name in COEFFICIENT_NAMES}
        coeffs["a"] = 3.0
        flat = FitModel(SIGMOID, coeffs)
        f = RoadmapFeatures(node_density=300.0, min_arc_stddev=0.2)
        r = recommend_parameters(f, alpha_model=flat, beta_model=flat)
        assert r.alpha == 3.0 and r.beta == 3.0


class TestLoadModel:
    def test_round_trip(self, tmp_path):
        path = tmp_path / "table.txt"
        lines = ["# refit", ""]
        lines += [f"{name} = {ALPHA_MODEL.coefficients[name]!r}" for name in COEFFICIENT_NAMES]
        path.write_text("\n".join(lines) + "\n")
        m = load_fit_model(path, CHEBYSHEV, y_scaling=ALPHA_MODEL.y_scaling)
        assert m.coefficients == ALPHA_MODEL.coefficients
        assert table_checksum(m) == ALPHA_TABLE_SHA256

    def test_default_y_scaling_tracks_basis(self, tmp_path):
        path = tmp_path / "table.txt"
        path.write_text("\n".join(f"{n}=1.0" for n in COEFFICIENT_NAMES) + "\n")
        cheb = load_fit_model(path, CHEBYSHEV)
        sig = load_fit_model(path, SIGMOID)
        assert cheb.y_scaling == (math.log(0.15), math.log(0.30))
        assert sig.y_scaling == (0.15, 0.30)

    @pytest.mark.parametrize(
        "body",
        [
            "zz=1.0\n",
            "a=1.0\na=2.0\n",
            "a one\n",
            "a=grape\n",
            "a=1.0\n",
        ],
    )
    def test_bad_tables_rejected(self, tmp_path, body):
        path = tmp_path / "table.txt"
        if body == "a=1.0\n":
            path.write_text(body)
        else:
            good = "\n".join(f"{n}=1.0" for n in COEFFICIENT_NAMES[1:])
            path.write_text(body + good + "\n")
        with pytest.raises(ValueError):
            load_fit_model(path, SIGMOID)
