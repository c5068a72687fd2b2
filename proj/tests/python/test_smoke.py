import math

import numpy as np
import pytest

import radlab


def test_measures():
    gin = radlab.RadialMeasure.ginibre()
    assert gin.log_moment(1.0) == pytest.approx(math.log(math.sqrt(math.pi) / 4.0), abs=1e-12)
    berg = radlab.RadialMeasure.bergman()
    assert berg.rho(0, 1) == pytest.approx(2.0 * math.sqrt(2.0) / 3.0, abs=1e-13)
    assert radlab.RadialMeasure.cue().rho(5, 9) == 1.0
    assert gin.iota(64.0) == pytest.approx(math.log(64.0) / 4.0, abs=1e-13)


def test_sections_are_numpy():
    berg = radlab.RadialMeasure.bergman()
    f = radlab.Symbol.two_cos()
    mat = radlab.m_section(berg, f, 8)
    assert isinstance(mat, np.ndarray)
    assert mat.shape == (8, 8)
    assert mat[1, 0] == pytest.approx(2.0 * math.sqrt(2.0) / 3.0)
    t = radlab.toeplitz_section(f, 8)
    k = radlab.k_section(berg, f, 8)
    assert np.max(np.abs(t + k - mat)) == 0.0


def test_oracle_matches_determinant():
    berg = radlab.RadialMeasure.bergman()
    phi = radlab.Symbol.two_cos().add_constant(1.0)
    o = radlab.quadrature_oracle(berg, phi, 2)
    assert o.real == pytest.approx(1.0 / 9.0, abs=1e-10)
    d = radlab.log_det(radlab.m_section(berg, phi, 2)).value()
    assert abs(o - d) < 1e-10


def test_cue_cumulants():
    rep = radlab.cumulant_recursion(radlab.RadialMeasure.cue(), radlab.Symbol.two_cos(), 4, 256)
    assert rep.cumulants[0] == pytest.approx(2.0, abs=1e-9)
    assert abs(rep.cumulants[1]) < 1e-8
    assert abs(rep.cumulants[2]) < 1e-8


def test_szego_sweep_cue():
    a = radlab.exp_symbol(radlab.Symbol.two_cos(), 70)
    rep = radlab.szego_sweep(radlab.RadialMeasure.cue(), a, [16, 32, 64], "c1")
    assert rep.ratios[-1] == pytest.approx(math.e, abs=1e-6)


def test_winding_error():
    t = radlab.parse_symbol("trig:1,1,0")
    with pytest.raises(radlab.NonzeroWindingError):
        radlab.invert_symbol(t)


def test_sampler_determinism():
    gin = radlab.RadialMeasure.ginibre()
    a = radlab.sample_dpp(gin, 6, 42)
    b = radlab.sample_dpp(gin, 6, 42)
    assert a.points == b.points
    assert len(a.points) == 6
