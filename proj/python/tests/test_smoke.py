import math

import numpy as np
import pytest

import jcctl


def test_spectrum_matches_dense_diagonalization():
    p = jcctl.ModelParams(1.0, 1.05, 0.7)
    rows = jcctl.spectrum(p, n_max=10, n_fock=12)
    assert rows[0][0] == jcctl.spurious_level(p)
    assert max(r[3] for r in rows) < 1e-12
    eig = np.linalg.eigvalsh(jcctl.jc_hamiltonian(p, 12))
    assert min(abs(eig - jcctl.energy(p, (3, 1)))) < 1e-12


def test_energy_and_gap():
    p = jcctl.ModelParams(1.0, 1.0, 0.3)
    assert jcctl.energy(p, (0, 1)) == pytest.approx(1.3)
    assert jcctl.f(p, 2) == pytest.approx(0.3 * math.sqrt(3))
    theta, c, s = jcctl.mixing(p, 0)
    assert c * c + s * s == pytest.approx(1.0)


def test_couplings_agree_with_operator_sandwich():
    p = jcctl.ModelParams(1.0, 1.1, 0.4)
    x = jcctl.control_operator("X", 8)
    a = jcctl.dressed_state(p, (2, 1), 8)
    b = jcctl.dressed_state(p, (1, -1), 8)
    assert np.vdot(a, x @ b).real == pytest.approx(jcctl.h1_element(p, (2, 1), (1, -1)), abs=1e-12)
    assert jcctl.h2_element(p, (2, 1), (1, -1)) == pytest.approx(1j * jcctl.h1_element(p, (2, 1), (1, -1)))
    pairs = jcctl.coupled_pairs(p, 3)
    assert pairs and all(abs(e["h1"]) > 0 for e in pairs)
    with pytest.raises(ValueError):
        jcctl.h1_element(p, (1, 0), (0, 1))


def test_singular_set_and_certify():
    doc = jcctl.enumerate_singular(1.0, 1.0, 1.05, n_cap=10)
    gs = [pt["g_star"] for pt in doc["points"]]
    assert gs[0] == 0.0
    assert any(abs(g - (math.sqrt(2) - 1)) < 1e-12 for g in gs)
    assert jcctl.certify(jcctl.ModelParams(1.0, 1.0, 0.3), n_max=20)["verdict"] == "CertifiedNonResonant"
    assert jcctl.certify(jcctl.ModelParams(1.0, 1.0, 0.0), n_max=5)["verdict"] == "CouplingBroken"


def test_propagation_is_unitary():
    p = jcctl.ModelParams(1.0, 1.02, 0.3)
    psi0 = jcctl.dressed_state(p, (0, 1), 10)
    final, defects = jcctl.propagate(p, 10, [(0.3, 0.5, 0.1), (0.2, 0.0, 0.4)], psi0)
    assert len(defects) == 2 and max(defects) < 1e-12
    assert np.linalg.norm(final) == pytest.approx(1.0, abs=1e-12)
    with pytest.raises(ValueError):
        jcctl.propagate(p, 10, [(-1.0, 0.0, 0.0)], psi0)


def test_cli_entry_point():
    code, out, _ = jcctl.run_cli(["certify", "--g", "0.3", "--n-max", "10"])
    assert code == 0
    assert '"verdict": "CertifiedNonResonant"' in out
    assert jcctl.run_cli(["certify", "--bogus"])[0] == 64
