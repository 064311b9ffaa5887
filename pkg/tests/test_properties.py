"""Randomized invariants over seeded similarity deformations and Swanson angles."""

import json

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import seeded_deformation
from fdpb import (
    build_metrics,
    build_system,
    buchdahl_rep,
    derived_ops,
    hermitize,
    random_similarity,
    shifted_oscillator,
    similarity_deform,
    swanson,
    swanson_spectrum_report,
    validate_rep,
)
from fdpb.cli import main
from fdpb.matrix import Tolerance, commutator, eig_general, eig_hermitian, max_abs
from fdpb.serialize import read_json, rep_from_json

sizes = st.integers(2, 8)
seeds = st.integers(0, 2**32 - 1)
angles = st.floats(0.01, np.pi / 4 - 0.01).flatmap(lambda t: st.sampled_from([t, -t]))
PROPS = settings(max_examples=40, deadline=None)


def ladder_multiset(n):
    return np.sort(np.append(np.arange(n - 1) + 0.5, (n - 1) / 2))


@PROPS
@given(sizes, seeds)
def test_deformed_triple_is_valid(n, seed):
    rep = seeded_deformation(n, seed)
    assert validate_rep(rep).passed
    h = derived_ops(rep).h
    assert abs(np.trace(h) - n * (n - 1) / 2) < 1e-8
    w, _ = eig_general(h)
    assert np.max(np.abs(w.imag)) < 1e-8
    np.testing.assert_allclose(np.sort(w.real), ladder_multiset(n), atol=1e-8)


@PROPS
@given(sizes, seeds)
def test_chain_invariants(n, seed):
    rep = seeded_deformation(n, seed)
    sys = build_system(rep)
    assert len(sys.phis) == len(sys.psis) == n
    assert max_abs(sys.gram() - np.eye(n)) < 1e-9
    # pairing telescopes along the chain: <b^dag psi, a phi> = m <psi, phi>
    for i in range(1, n - 1):
        lhs = np.vdot(rep.b.conj().T @ sys.psis[i], rep.a @ sys.phis[i])
        assert abs(lhs - sys.nhat_values[i] * np.vdot(sys.psis[i], sys.phis[i])) < 1e-8
    w, _ = eig_general(derived_ops(rep).h)
    np.testing.assert_allclose(np.sort(sys.hprimes), np.sort(w.real), atol=1e-8)


@PROPS
@given(sizes, seeds)
def test_metric_and_hermitization(n, seed):
    rep = seeded_deformation(n, seed)
    sys = build_system(rep)
    mp = build_metrics(sys)
    assert max_abs(mp.s_phi @ mp.s_psi - np.eye(n)) < 1e-9
    assert np.min(np.linalg.eigvalsh(mp.s_phi)) > 0
    hs = hermitize(rep, sys, mp)
    assert max_abs(hs.bigK - hs.bigK.conj().T) < 1e-10
    assert max_abs(hs.e_basis.conj() @ hs.e_basis.T - np.eye(n)) < 1e-10
    w0, _ = eig_hermitian(hs.h0)
    np.testing.assert_allclose(w0, ladder_multiset(n), atol=1e-8)
    assert validate_rep(hs.as_hermitian_rep().as_fdpb()).passed


@PROPS
@given(sizes, angles)
def test_swanson_invariants(n, theta):
    rep = buchdahl_rep(n).as_fdpb()
    model = swanson(rep, theta)
    assert max_abs(commutator(model.a_theta, model.b_theta) - commutator(rep.a, rep.b)) < 1e-12
    assert max_abs(model.h_theta - model.h_theta_quadratic) < 1e-10
    report = swanson_spectrum_report(model, Tolerance(1e-8, 0.0))
    assert (report.max_imag <= 1e-8) == (report.intertwiner_residual <= 1e-8)


@PROPS
@given(sizes, seeds, st.floats(0.1, 5), st.floats(0.1, 5))
def test_shifted_linear_in_beta(n, seed, b1, b2):
    rep = seeded_deformation(n, seed)
    h1, h2 = shifted_oscillator(rep, b1).h_beta, shifted_oscillator(rep, b2).h_beta
    d = derived_ops(rep)
    assert max_abs((h2 - h1) - (b2 - b1) * 0.5 * (d.p @ d.p + d.q @ d.q)) < 1e-12 * max(1.0, max_abs(h1))


@settings(max_examples=10, deadline=None)
@given(st.integers(2, 6), st.integers(0, 10**6))
def test_cli_build_determinism_and_round_trip(tmp_path_factory, n, seed):
    tmp = tmp_path_factory.mktemp("prop")
    cfg = tmp / "cfg.json"
    cfg.write_text(json.dumps({"n": n, "generator": "similarity", "params": {"seed": seed}}))
    outs = [tmp / "a.json", tmp / "b.json"]
    for out in outs:
        assert main(["build", "--config", str(cfg), "--output", str(out), "--json"]) == 0
    assert outs[0].read_bytes() == outs[1].read_bytes()
    s0, s = random_similarity(n, seed)
    direct = similarity_deform(buchdahl_rep(n), s0, s, check=False)
    back = rep_from_json(read_json(outs[0]))
    for name in ("a", "b", "k"):
        assert max_abs(getattr(back, name) - getattr(direct, name)) <= 1e-15
