"""Graded time meshes, fractional-integral weights, and the time stepper.

The scheme advances u' + d_t^(1-a) L u = f with a backward difference in
time and the fractional integral applied to the piecewise-constant history
built from midpoint averages, except on the first interval where the
history value is u^1 alone (so step one never touches u^0 through the
memory term). Multiplied through by the step size, step n solves

    (M + theta_n c_nn S) u^n = M u^(n-1) - sum_{j<n} c_nj S ubar_j
                               - (1 - theta_n) c_nn S u^(n-1) + tau_n f_n

with c_nj the increments of the integral weights between rows n-1 and n,
theta_1 = 1 and theta_n = 1/2 otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .assembly import FieldP1, assemble_mass, assemble_stiffness, l2_project, load_vector, ritz_project
from .exceptions import NumericalBlowupError
from .mesh import StructuredMesh
from .mittag_leffler import gamma
from .sparse import LinearSolver, SparseMatrix, add_scaled, matvec


@dataclass(frozen=True)
class GradedTimeMesh:
    """Nodes t_n = (n/N)^gamma T clustering near t = 0 for gamma > 1."""

    N: int
    gamma: float
    T: float
    t: np.ndarray = field(init=False)
    tau: np.ndarray = field(init=False)

    def __post_init__(self):
        if self.N < 1:
            raise ValueError(f"N must be >= 1, got {self.N!r}")
        if self.gamma < 1.0:
            raise ValueError(f"gamma must be >= 1, got {self.gamma!r}")
        if not (self.T > 0.0):
            raise ValueError(f"T must be > 0, got {self.T!r}")
        t = (np.arange(self.N + 1) / self.N) ** self.gamma * self.T
        tau = np.diff(t)
        t.setflags(write=False)
        tau.setflags(write=False)
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "tau", tau)


def build_time_mesh(N: int, gamma_exp: float, T: float) -> GradedTimeMesh:
    """Graded mesh with N subintervals, grading exponent gamma_exp, final time T."""
    return GradedTimeMesh(N=int(N), gamma=float(gamma_exp), T=float(T))


@dataclass(frozen=True)
class FracWeights:
    """Rows b_nj of the exact fractional integral of piecewise-constant data.

    I^alpha vbar(t_n) = sum_{j=1..n} b_nj vbar_j  with
    b_nj = ((t_n - t_(j-1))^alpha - (t_n - t_j)^alpha) / Gamma(alpha + 1).
    """

    mesh: GradedTimeMesh
    alpha: float
    rows: tuple  # rows[n-1] has length n

    def row(self, n: int) -> np.ndarray:
        return self.rows[n - 1]

    def increment_row(self, n: int) -> np.ndarray:
        """c_nj = b_nj - b_(n-1)j for j < n, c_nn = b_nn."""
        bn = self.rows[n - 1]
        c = bn.copy()
        if n >= 2:
            c[: n - 1] -= self.rows[n - 2]
        return c


def frac_weights(mesh: GradedTimeMesh, alpha: float) -> FracWeights:
    """Quadrature weights of I^alpha on the mesh, cancellation-aware.

    The raw difference (t_n - t_(j-1))^a - (t_n - t_j)^a loses digits when
    the step is tiny against t_n, so it is evaluated as
    A^a (-expm1(a log1p(-tau_j / A))) with A = t_n - t_(j-1).
    """
    if not (0.0 < alpha < 1.0):
        raise ValueError(f"alpha must lie in (0, 1), got {alpha!r}")
    t = mesh.t
    tau = mesh.tau
    inv_g = 1.0 / gamma(alpha + 1.0)
    rows = []
    for n in range(1, mesh.N + 1):
        A = t[n] - t[:n]
        b = np.empty(n)
        if n > 1:
            ratio = tau[: n - 1] / A[: n - 1]
            b[: n - 1] = -np.expm1(alpha * np.log1p(-ratio)) * A[: n - 1] ** alpha
        b[n - 1] = tau[n - 1] ** alpha
        b *= inv_g
        b.setflags(write=False)
        rows.append(b)
    return FracWeights(mesh=mesh, alpha=alpha, rows=tuple(rows))


def frac_integral_nodes(weights: FracWeights, samples: np.ndarray) -> np.ndarray:
    """I^alpha of the piecewise-constant history at all mesh nodes t_1..t_N."""
    samples = np.asarray(samples, dtype=float)
    if samples.shape != (weights.mesh.N,):
        raise ValueError("need one history sample per subinterval")
    return np.array([weights.rows[n - 1] @ samples[:n]
                     for n in range(1, weights.mesh.N + 1)])


@dataclass
class SchemeState:
    """Time-stepping state: accepted solutions and cached history products."""

    mesh: StructuredMesh
    time_mesh: GradedTimeMesh
    us: list            # u^0 .. u^n coefficient vectors
    Z: np.ndarray       # Z[j-1] = S ubar_j for accepted steps
    n: int = 0

    @classmethod
    def start(cls, mesh: StructuredMesh, time_mesh: GradedTimeMesh,
              u0: FieldP1) -> "SchemeState":
        Z = np.zeros((time_mesh.N, mesh.n_interior))
        return cls(mesh=mesh, time_mesh=time_mesh, us=[u0.values.copy()], Z=Z)

    def history_bar(self, j: int) -> np.ndarray:
        """ubar_j: u^1 on the first interval, midpoint average after."""
        if j == 1:
            return self.us[1]
        return 0.5 * (self.us[j] + self.us[j - 1])

    def verify_history(self, stiffness: SparseMatrix) -> float:
        """Max norm of Z[j] - S ubar_j over accepted steps (audit hook)."""
        worst = 0.0
        for j in range(1, self.n + 1):
            worst = max(worst, float(np.max(np.abs(
                self.Z[j - 1] - matvec(stiffness, self.history_bar(j))))))
        return worst


def step(state: SchemeState, n: int, mass: SparseMatrix, stiffness: SparseMatrix,
         weights: FracWeights, load: np.ndarray | None = None,
         rtol: float = 1e-12) -> FieldP1:
    """Advance the scheme from u^(n-1) to u^n and append it to the state."""
    if n != state.n + 1:
        raise ValueError(f"expected step {state.n + 1}, got {n}")
    tau_n = state.time_mesh.tau[n - 1]
    c = weights.increment_row(n)
    theta = 1.0 if n == 1 else 0.5
    u_prev = state.us[n - 1]

    rhs = matvec(mass, u_prev)
    if n >= 2:
        rhs -= c[: n - 1] @ state.Z[: n - 1]
        rhs -= (1.0 - theta) * c[n - 1] * matvec(stiffness, u_prev)
    if load is not None:
        rhs += tau_n * load
    lhs = add_scaled(mass, stiffness, 1.0, theta * c[n - 1])
    solver = LinearSolver(lhs, rtol=rtol)
    u_n = solver.solve(rhs, x0=u_prev)
    if not np.all(np.isfinite(u_n)):
        raise NumericalBlowupError(f"non-finite solution at step {n}", step=n)

    state.us.append(u_n)
    state.n = n
    state.Z[n - 1] = matvec(stiffness, state.history_bar(n))
    return FieldP1(mesh=state.mesh, values=u_n)


def run(mesh: StructuredMesh, time_mesh: GradedTimeMesh, alpha: float, a,
        u0_field: FieldP1, f=None, observer=None, rtol: float = 1e-12,
        mass: SparseMatrix | None = None,
        stiffness: SparseMatrix | None = None) -> SchemeState:
    """Run the scheme over the whole time mesh.

    f, when given, is a space-time function f(x, y, t) sampled at interval
    midpoints in time and assembled with the standard load quadrature.
    observer(n, t_n, FieldP1) is called once per step in increasing n.
    """
    if u0_field.mesh is not mesh:
        raise ValueError("initial field is attached to a different mesh")
    if mass is None:
        mass = assemble_mass(mesh)
    if stiffness is None:
        stiffness = assemble_stiffness(mesh, a)
    weights = frac_weights(time_mesh, alpha)
    state = SchemeState.start(mesh, time_mesh, u0_field)
    t = time_mesh.t
    for n in range(1, time_mesh.N + 1):
        load = None
        if f is not None:
            t_mid = 0.5 * (t[n - 1] + t[n])
            load = load_vector(mesh, lambda x, y: f(x, y, t_mid))
        u_n = step(state, n, mass, stiffness, weights, load=load, rtol=rtol)
        if observer is not None:
            observer(n, t[n], u_n)
    return state


def initial_field(mesh: StructuredMesh, u0, a=None, grad_u0=None,
                  use_ritz: bool = False) -> FieldP1:
    """Initial datum for the scheme: L2 projection, or Ritz projection on request."""
    if use_ritz:
        if grad_u0 is None:
            raise ValueError("Ritz initialization needs grad_u0")
        return ritz_project(mesh, a, u0, grad_u0)
    return l2_project(mesh, u0)
