import math

import numpy as np
import pytest

import elocc


def test_catalyst_pair():
    p = elocc.SchmidtVector([0.4, 0.4, 0.1, 0.1])
    q = elocc.SchmidtVector([0.5, 0.25, 0.25])
    c = elocc.SchmidtVector([0.6, 0.4])
    assert not elocc.locc_convertible(p, q)
    assert not elocc.locc_convertible(q, p)
    assert elocc.verify_catalyst(p, q, c)
    assert elocc.tensor_product(q, c).coeffs == pytest.approx([0.30, 0.20, 0.15, 0.15, 0.10, 0.10])


def test_renyi_and_verdict():
    flat = elocc.SchmidtVector([1, 1, 1, 1])
    assert elocc.renyi_entropy(flat, 2.0) == pytest.approx(2.0)
    assert elocc.renyi_entropy(flat, math.inf) == pytest.approx(2.0)
    v = elocc.elocc_verdict(elocc.SchmidtVector([0.6, 0.1, 0.1, 0.1, 0.1]), elocc.SchmidtVector([0.5, 0.5]))
    assert v.direction == elocc.Direction.Incomparable
    assert len(v.crossings) == 1


def test_errors_carry_a_code():
    with pytest.raises(elocc.Error) as info:
        elocc.SchmidtVector([0.5, -0.2])
    assert info.value.code == "NegativeInput"
    with pytest.raises(elocc.Error):
        elocc.sweep("ising", "g", 0.5, 1.0, 0.1, n_sites=5)


def test_ground_state_to_schmidt():
    (energy, state), = elocc.lowest_states("ising:g=0", 6)
    assert energy == pytest.approx(-6.0)
    assert np.linalg.norm(state) == pytest.approx(1.0)
    s = elocc.schmidt_from_state(state, "half")
    assert s.coeffs == pytest.approx([0.5, 0.5])


def test_table_and_classification():
    s = elocc.sweep("ising", "g", 0.5, 1.5, 0.1, n_sites=8)
    assert [round(p.value, 1) for p in s.points][:2] == [0.5, 0.6]
    t = elocc.interception_table(s)
    assert len(t) == 11
    assert t.cell(0, 0) is None
    report = elocc.classify_pattern(t, 1.0)
    assert report.pattern == elocc.Pattern.CaseI


def test_locate_and_fit():
    trace = elocc.locate_boundary("ising", "g", 0.8, 1.1, n_sites=6, target_step=1e-2)
    assert trace.bracket.upper - trace.bracket.lower == pytest.approx(2e-2)
    pts = [(n, -9.149 * math.exp(-n / 1.2522) + 0.994) for n in (4, 6, 8, 10)]
    fit = elocc.scaling_fit(pts)
    assert fit.c == pytest.approx(0.994, abs=1e-6)


def test_excited_state():
    cmp = elocc.gs_vs_excited("ising:g=0.5", 8)
    assert cmp.excited_energy > cmp.ground_energy
    assert cmp.verdict.direction == elocc.Direction.Incomparable
