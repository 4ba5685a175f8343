"""Kink configurations, spectra, the difference operator, and propagation."""

import math

import numpy as np
import pytest

from peierls.config import load_config, reference_config_path
from peierls.kink import (
    KinkConfiguration,
    bond_order,
    difference_operator,
    difference_operator_literal,
    kink_bonds,
    kink_energy,
    kink_matrix,
    kink_position,
    kink_spectrum,
    propagate_kink,
    zero_subspace,
)
from peierls.model import CoherentAmplitude, ModelParams, effective_coupling, staggered_bonds


def reference_config():
    return load_config(reference_config_path("kink_dynamics"))


def reference_params():
    return reference_config().model_params()


def z_min():
    cfg = reference_config()
    return CoherentAmplitude(cfg.z_re, cfg.z_im)


def test_configuration_validation():
    z = CoherentAmplitude(0.1, 0.0)
    with pytest.raises(ValueError):
        KinkConfiguration(n=-1, z=z, n_sites=10)
    with pytest.raises(ValueError):
        KinkConfiguration(n=9, z=z, n_sites=10)


def test_amplitudes_wall_signature():
    z = CoherentAmplitude(0.1, 0.05)
    cfg = KinkConfiguration(n=4, z=z, n_sites=10)
    amps = cfg.amplitudes()
    # sites n and n+1 carry equal amplitudes: the domain-wall signature
    assert amps[4] == amps[5]
    assert amps[0] == complex(0.1, 0.05)
    assert amps[1] == -complex(0.1, 0.05)


def test_zero_amplitude_bonds_uniform():
    p = reference_params()
    cfg = KinkConfiguration(n=5, z=CoherentAmplitude(0.0, 0.0), n_sites=12)
    chain = kink_bonds(p, cfg)
    g = effective_coupling(p)
    assert chain.boundary == "open"
    assert len(chain.bonds) == 11
    assert all(b == pytest.approx(g, rel=1e-15) for b in chain.bonds)


def test_wall_bond_exactly_g():
    p = reference_params()
    cfg = KinkConfiguration(n=7, z=z_min(), n_sites=20)
    chain = kink_bonds(p, cfg)
    assert chain.bonds[7] == pytest.approx(effective_coupling(p), rel=1e-15)


def test_bonds_match_staggering_on_both_sides():
    p = reference_params()
    z = z_min()
    n = 8
    cfg = KinkConfiguration(n=n, z=z, n_sites=24)
    kbonds = kink_bonds(p, cfg).bonds
    ring = staggered_bonds(p, z).bonds
    anti = staggered_bonds(p, -z).bonds
    for j in range(n):
        assert kbonds[j] == pytest.approx(ring[j], rel=1e-14)
    for j in range(n + 1, len(kbonds)):
        assert kbonds[j] == pytest.approx(anti[j % len(anti)], rel=1e-14)


def test_spectrum_z_zero_open_chain_formula():
    p = reference_params()
    n_sites = 200
    cfg = KinkConfiguration(n=100, z=CoherentAmplitude(0.0, 0.0), n_sites=n_sites)
    evals, lowest, _ = kink_spectrum(p, cfg)
    g = effective_coupling(p)
    oracle = np.sort(-2.0 * g * np.cos(np.pi * np.arange(1, n_sites + 1) / (n_sites + 1)))
    assert np.max(np.abs(evals - oracle)) < 1e-10
    assert lowest == pytest.approx(oracle[0], abs=1e-12)


def test_spectrum_chiral_symmetry():
    p = reference_params()
    cfg = KinkConfiguration(n=50, z=z_min(), n_sites=101)
    evals, _, _ = kink_spectrum(p, cfg)
    assert np.max(np.abs(evals + evals[::-1])) < 1e-10


def test_midgap_states_present():
    p = reference_params()
    cfg = KinkConfiguration(n=100, z=z_min(), n_sites=200)
    _, _, in_gap = kink_spectrum(p, cfg)
    assert in_gap.sum() >= 1


def test_energy_translation_invariance_in_bulk():
    p = reference_params()
    z = z_min()
    e1 = kink_energy(p, z, 90, 200)
    e2 = kink_energy(p, z, 110, 200)
    assert abs(e1 - e2) < 1e-3


def test_difference_block_eigenvalues_and_kernel():
    p = reference_params()
    cfg = KinkConfiguration(n=100, z=z_min(), n_sites=200)
    from peierls.kink import _omega
    from peierls.model import state_location

    om = _omega(p, state_location(p, z_min()), 100)
    block = difference_operator(p, cfg)[100:103, 100:103]
    eigs = np.sort(np.linalg.eigvalsh(block))
    expected = np.sort([-math.sqrt(2.0) * abs(om), 0.0, math.sqrt(2.0) * abs(om)])
    assert np.max(np.abs(eigs - expected)) < 1e-10
    dim, basis = zero_subspace(p, cfg)
    assert dim == 1
    assert abs(abs(basis[0] @ (np.array([1.0, 0.0, 1.0]) / math.sqrt(2.0)))) == pytest.approx(1.0, abs=1e-12)


def test_zero_subspace_degenerates_when_omega_vanishes():
    # omega_n = g - (c + (-)^n s) vanishes at z = 0 (c = g, s = 0)
    p = reference_params()
    cfg = KinkConfiguration(n=10, z=CoherentAmplitude(0.0, 0.0), n_sites=30)
    d = difference_operator(p, cfg)
    assert np.max(np.abs(d)) < 1e-14
    dim, basis = zero_subspace(p, cfg)
    assert dim == 3
    assert np.allclose(basis @ basis.T, np.eye(3), atol=1e-12)


def test_literal_difference_support():
    p = reference_params()
    n = 12
    cfg = KinkConfiguration(n=n, z=z_min(), n_sites=30)
    d = difference_operator_literal(p, cfg)
    nz = np.argwhere(np.abs(d) > 1e-14)
    # moving the wall by one site only changes bonds touching site n+1
    for i, j in nz:
        assert {i, j} <= {n, n + 1, n + 2}


def test_bond_order_single_wall():
    p = reference_params()
    n_sites = 120
    cfg = KinkConfiguration(n=60, z=z_min(), n_sites=n_sites)
    _, vecs = np.linalg.eigh(kink_matrix(p, cfg))
    occ = vecs[:, : n_sites // 2]
    order = bond_order(occ)
    pos = kink_position(order)
    assert abs(pos - 60) < 0.5


def test_kink_position_tracks_anchor():
    p = reference_params()
    n_sites = 200
    for n in (80, 100, 120):
        cfg = KinkConfiguration(n=n, z=z_min(), n_sites=n_sites)
        _, vecs = np.linalg.eigh(kink_matrix(p, cfg))
        order = bond_order(vecs[:, : n_sites // 2])
        assert abs(kink_position(order) - n) < 0.5


def test_propagation_stationary_state():
    p = reference_params()
    traj = propagate_kink(p, z_min(), 30, dt=0.5, steps=50, n_sites=60, z_functional="frozen")
    energies = np.array(traj.energies)
    positions = np.array(traj.positions)
    assert np.max(np.abs(energies - energies[0])) / abs(energies[0]) < 1e-6
    assert np.max(np.abs(positions - positions[0])) < 0.5


def test_propagation_mirror_symmetry():
    p = reference_params()
    n_sites = 61
    n0 = 30  # center of an odd chain: reflection maps the wall onto itself
    # large hysteresis disables re-anchoring, whose thresholds are not
    # themselves mirror-symmetric about the wall bond
    a = propagate_kink(p, z_min(), n0, dt=0.5, steps=30, n_sites=n_sites,
                       initial_anchor_offset=-2, z_functional="frozen", hysteresis=1e6)
    b = propagate_kink(p, z_min(), n0 - 1, dt=0.5, steps=30, n_sites=n_sites,
                       initial_anchor_offset=2, z_functional="frozen", hysteresis=1e6)
    bonds = n_sites - 1
    for pa, pb in zip(a.positions, b.positions):
        assert pa == pytest.approx((bonds - 1) - pb, abs=1e-6)


def test_propagation_unitarity():
    p = reference_params()
    traj = propagate_kink(p, z_min(), 20, dt=0.5, steps=1000, n_sites=40, z_functional="frozen")
    assert traj.orthonormality_error < 1e-10


def test_shipped_initial_condition_advances():
    cfg = reference_config()
    traj = propagate_kink(
        cfg.model_params(),
        CoherentAmplitude(cfg.z_re, cfg.z_im),
        cfg.kink_site,
        cfg.kink_dt,
        100,  # shortened run: the full shipped length is exercised in acceptance
        n_sites=cfg.n_sites,
        initial_anchor_offset=cfg.anchor_offset,
        z_functional=cfg.z_motion,
        hysteresis=cfg.hysteresis,
    )
    positions = np.array(traj.positions)
    assert np.max(np.abs(positions - positions[0])) >= 1.0
