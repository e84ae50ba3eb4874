import numpy as np
import pytest

from subdiff.assembly import FieldP1, assemble_mass, assemble_stiffness, l2_project
from subdiff.exact import example1, example3
from subdiff.mesh import build_mesh
from subdiff.mittag_leffler import MlfEvaluator, gamma
from subdiff.sparse import matvec
from subdiff.stepping import (SchemeState, build_time_mesh, frac_weights,
                              initial_field, run, step)
from subdiff.verify import heat_crank_nicolson_reference


def test_zero_data_stays_zero():
    mesh = build_mesh(4)
    tm = build_time_mesh(20, 1.6, 0.5)
    u0 = FieldP1(mesh=mesh, values=np.zeros(mesh.n_interior))
    state = run(mesh, tm, 0.75, None, u0)
    assert all(np.max(np.abs(u)) == 0.0 for u in state.us)


def test_single_dof_first_step_closed_form():
    # M=2: mass = 1/8, stiffness = 4; step 1 solves (m + c11 s) u1 = m u0
    mesh = build_mesh(2)
    tm = build_time_mesh(1, 1.0, 0.5)
    alpha = 0.6
    mass = assemble_mass(mesh)
    stiff = assemble_stiffness(mesh)
    w = frac_weights(tm, alpha)
    u0 = FieldP1(mesh=mesh, values=np.array([0.3]))
    state = SchemeState.start(mesh, tm, u0)
    u1 = step(state, 1, mass, stiff, w)
    c11 = 0.5 ** alpha / gamma(1.0 + alpha)
    expected = 0.3 * (1.0 / 8.0) / (1.0 / 8.0 + c11 * 4.0)
    assert u1.values[0] == pytest.approx(expected, rel=1e-12)


def test_alpha_to_one_matches_crank_nicolson():
    """Uniform mesh, alpha -> 1: per-step agreement with an independent
    dense heat-equation stepper (implicit first step, midpoint after)."""
    M, N, T = 8, 50, 0.5
    mesh = build_mesh(M)
    tm = build_time_mesh(N, 1.0, T)
    u0 = l2_project(mesh, example1().evaluate)
    recorded = np.empty((N, mesh.n_interior))

    def obs(n, t, u):
        recorded[n - 1] = u.values

    run(mesh, tm, 1.0 - 1e-12, None, u0, observer=obs)
    ref = heat_crank_nicolson_reference(M, u0.values, T / N, N)
    assert np.abs(recorded - ref).max() <= 1e-10


def test_stepper_matches_exact_semidiscrete_solution():
    """Modal oracle: for a = 1 the semidiscrete solution is
    sum_k c_k E_alpha(-lambda_h_k t^alpha) v_k over generalized eigenpairs,
    with no time discretization at all."""
    M, alpha, T, N = 8, 0.75, 0.5, 600
    mesh = build_mesh(M)
    Md = assemble_mass(mesh).to_dense()
    Sd = assemble_stiffness(mesh).to_dense()
    u0 = l2_project(mesh, example3().evaluate)
    L = np.linalg.cholesky(Md)
    Linv = np.linalg.inv(L)
    lam_h, Q = np.linalg.eigh(Linv @ Sd @ Linv.T)
    c0 = Q.T @ (L.T @ u0.values)
    decay = MlfEvaluator(alpha)(lam_h * T ** alpha)
    u_exact_T = Linv.T @ (Q @ (c0 * decay))

    tm = build_time_mesh(N, 1.6, T)
    state = run(mesh, tm, alpha, None, u0)
    assert np.abs(state.us[-1] - u_exact_T).max() <= 5e-7


def test_observer_order_and_history_audit():
    mesh = build_mesh(4)
    tm = build_time_mesh(15, 1.3, 0.4)
    u0 = l2_project(mesh, example1().evaluate)
    seen = []
    state = run(mesh, tm, 0.5, None, u0, observer=lambda n, t, u: seen.append((n, t)))
    assert [n for n, _ in seen] == list(range(1, 16))
    assert np.allclose([t for _, t in seen], tm.t[1:])
    stiff = assemble_stiffness(mesh)
    assert state.verify_history(stiff) <= 1e-12


def test_step_index_enforced():
    mesh = build_mesh(2)
    tm = build_time_mesh(3, 1.0, 1.0)
    w = frac_weights(tm, 0.5)
    state = SchemeState.start(mesh, tm, FieldP1(mesh=mesh, values=np.zeros(1)))
    with pytest.raises(ValueError):
        step(state, 2, assemble_mass(mesh), assemble_stiffness(mesh), w)


@pytest.mark.parametrize("alpha", [0.5, 0.75])
@pytest.mark.parametrize("example", [example1, example3])
def test_mass_norm_decays(example, alpha):
    mesh = build_mesh(8)
    Mm = assemble_mass(mesh)
    tm = build_time_mesh(80, 1.6, 0.5)
    u0 = l2_project(mesh, example().evaluate)
    norms = [float(u0.values @ matvec(Mm, u0.values))]
    run(mesh, tm, alpha, None, u0,
        observer=lambda n, t, u: norms.append(float(u.values @ matvec(Mm, u.values))))
    norms = np.array(norms)
    assert np.all(norms[1:] <= norms[:-1] * (1.0 + 1e-12))


def test_ritz_initialization_flag():
    mesh = build_mesh(8)
    g = lambda x, y: np.sin(np.pi * x) * np.sin(np.pi * y)
    grad = lambda x, y: (np.pi * np.cos(np.pi * x) * np.sin(np.pi * y),
                         np.pi * np.sin(np.pi * x) * np.cos(np.pi * y))
    f_l2 = initial_field(mesh, g)
    f_ritz = initial_field(mesh, g, a=None, grad_u0=grad, use_ritz=True)
    assert f_l2.values.shape == f_ritz.values.shape
    assert 0.0 < np.max(np.abs(f_l2.values - f_ritz.values)) < 0.05
    with pytest.raises(ValueError):
        initial_field(mesh, g, use_ritz=True)


def test_run_with_load_reaches_steady_profile():
    # constant-in-time forcing drives the solution away from zero
    mesh = build_mesh(4)
    tm = build_time_mesh(30, 1.6, 0.5)
    u0 = FieldP1(mesh=mesh, values=np.zeros(mesh.n_interior))
    f = lambda x, y, t: np.ones_like(x)
    state = run(mesh, tm, 0.75, None, u0, f=f)
    assert np.max(state.us[-1]) > 0.0
    assert np.all(np.isfinite(state.us[-1]))
