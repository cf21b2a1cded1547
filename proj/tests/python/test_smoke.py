import math

import numpy as np
import pytest

import moyal


def test_version():
    assert moyal.version() == moyal.__version__
    assert moyal.__version__.count(".") == 2


def test_grid_is_self_dual():
    g = moyal.Grid.self_dual(64)
    assert g.dx == pytest.approx(g.dp)
    assert g.dx * g.dp * g.n == pytest.approx(2 * math.pi)
    assert np.allclose(g.x, g.p)


def test_wigner_marginals():
    g = moyal.Grid.self_dual(128)
    psi = moyal.gaussian_packet(g, 0.5, -0.3, 0.9)
    W = moyal.wigner_transform(psi)
    assert W.shape == (128, 128)
    px, pp = moyal.marginals(psi)
    assert np.max(np.abs(px - psi.density)) < 1e-8
    assert np.max(np.abs(pp - moyal.to_momentum(psi).density)) < 1e-8
    assert np.allclose(W.sum(axis=1) * g.dp, px)
    assert moyal.purity(psi) == pytest.approx(1.0, abs=1e-6)


def test_momentum_round_trip():
    g = moyal.Grid(128, -10, 10)
    psi = moyal.gaussian_packet(g, 1.0, 2.0, 1.0)
    back = moyal.from_momentum(moyal.to_momentum(psi))
    assert np.max(np.abs(back.amplitudes - psi.amplitudes)) < 1e-10
    assert moyal.to_momentum(psi).domain == "momentum"


def test_star_algebra():
    x = moyal.PolySymbol.parse("x")
    p = moyal.PolySymbol.parse("p")
    assert str(moyal.star_poly(x, p) - moyal.star_poly(p, x)) == "i"
    assert moyal.moyal_bracket(moyal.PolySymbol.parse("x^3"), moyal.PolySymbol.parse("p^3")) == moyal.PolySymbol.parse(
        "9*x^2*p^2 - 3/2"
    )
    half = moyal.PolySymbol.parse("x^3", 0.5), moyal.PolySymbol.parse("p^3", 0.5)
    d = moyal.moyal_bracket(*half) - moyal.poisson_bracket(*half)
    assert d.coefficient_norm() == "3/8"
    with pytest.raises(moyal.MoyalError):
        moyal.PolySymbol.parse("x^^2")


def test_bohm_fields():
    g = moyal.Grid.self_dual(128)
    psi = moyal.gaussian_packet(g, 0.0, 1.25, 2.0)
    f = moyal.conditional_momentum(psi)
    assert f.valid.dtype == bool
    assert np.allclose(f.values[f.valid], 1.25, atol=1e-8)
    # The Wigner-moment route divides roundoff by the density, so compare the
    # routes pointwise away from the floor and bound the worst case loosely.
    W = moyal.wigner_transform(psi)
    rho = psi.density
    moment = (W * g.p[None, :]).sum(axis=1) * g.dp / np.maximum(rho, 1e-300)
    solid = f.valid & (rho > 1e-6 * rho.max())
    assert np.max(np.abs(moment[solid] - f.values[solid])) < 1e-6
    assert f.route_gap < 1e-4


def test_frft_quarter_turn_is_fourier():
    g = moyal.Grid.self_dual(128)
    psi = moyal.gaussian_packet(g, 0.0, 0.0, 1.0)
    a = moyal.frft(psi, math.pi / 2).amplitudes
    b = moyal.to_momentum(psi).amplitudes
    assert np.max(np.abs(a - b)) < 1e-8


def test_evolution_conserves_norm():
    g = moyal.Grid(256, -15, 15)
    psi = moyal.gaussian_packet(g, -1.0, 1.0, 0.8)
    times, states = moyal.split_step_evolve(psi, "harmonic", omega=1.0, dt=1e-3, steps=100, record_every=50)
    assert len(times) == len(states) == 3
    assert states[-1].norm_squared() == pytest.approx(psi.norm_squared(), abs=1e-10)


def test_clifford():
    q = moyal.Signature(0, 2)
    i = moyal.Multivector.parse("e1", q)
    j = moyal.Multivector.parse("e2", q)
    k = i * j
    assert str(k) == "e1^e2"
    assert str(i * j * k) == "-1"
    assert moyal.Multivector.parse("2*e1^e2 - 3", moyal.Signature(3, 0)).__str__() == "-3 + 2*e1^e2"


def test_suites():
    assert "clifford-identities" in moyal.suite_names()
    rep = moyal.run_suite("clifford-identities")
    assert rep["passed"]
    assert any("quaternion" in item["name"] for item in rep["items"])
    with pytest.raises(moyal.ValidationError):
        moyal.run_suite("nope")


def test_run_scenario_text():
    text = "name: demo\nanalysis:\n  - brackets: {a: x^3, b: p^3, hbar_sweep: [0.5, 0.25]}\n"
    r = moyal.run_scenario(text)
    assert r["passed"]
    assert "brackets.csv" in r["files"]
    assert r["files"]["brackets.csv"].startswith(b"hbar,")
    with pytest.raises(ValueError):
        moyal.run_scenario("name: bad\ngrid: {n: 64, self_dual: true}\nstate: {kind: gaussian, sigma: -1}\nanalysis: [wigner]\n")
