"""P1 finite-element assembly on structured meshes.

Boundary degrees of freedom are eliminated: assembled operators act on
interior nodes only, matching the homogeneous Dirichlet condition, and
the resulting systems stay symmetric positive definite.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import CoefficientRangeError, EvaluationError
from .mesh import StructuredMesh
from .sparse import LinearSolver, SparseMatrix, csr_from_coo

# P1 basis values at the three edge midpoints (m01, m12, m20): degree-2 rule
_PHI_MID = np.array([[0.5, 0.5, 0.0],
                     [0.0, 0.5, 0.5],
                     [0.5, 0.0, 0.5]])


@dataclass(frozen=True)
class FieldP1:
    """Piecewise-linear function with zero boundary trace, stored by dof."""

    mesh: StructuredMesh
    values: np.ndarray

    def __post_init__(self):
        if self.values.shape != (self.mesh.n_interior,):
            raise ValueError("values length must equal the interior node count")
        self.values.setflags(write=False)

    def node_values(self) -> np.ndarray:
        """Values on the full node set, zeros on the boundary."""
        full = np.zeros(self.mesh.nodes.shape[0])
        full[~self.mesh.boundary_mask] = self.values
        return full


def _element_gradients(mesh: StructuredMesh) -> np.ndarray:
    """Constant gradients of the three local basis functions, per triangle."""
    P = mesh.nodes[mesh.triangles]          # (ntri, 3, 2)
    e0 = P[:, 2] - P[:, 1]                  # edge opposite vertex 0
    e1 = P[:, 0] - P[:, 2]
    e2 = P[:, 1] - P[:, 0]
    twoA = 2.0 * mesh.triangle_area
    grads = np.empty((P.shape[0], 3, 2))
    for k, e in enumerate((e0, e1, e2)):    # grad phi_k = rot90(e_k) / 2A
        grads[:, k, 0] = -e[:, 1] / twoA
        grads[:, k, 1] = e[:, 0] / twoA
    return grads


def _eval_on(g, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    try:
        out = np.asarray(g(x, y), dtype=float)
        if out.shape != x.shape:
            out = np.broadcast_to(out, x.shape).astype(float)
    except (TypeError, ValueError):
        out = np.vectorize(g, otypes=[float])(x, y)
    return out


def _scatter(mesh: StructuredMesh, local: np.ndarray, include_boundary: bool) -> SparseMatrix:
    """Sum (ntri, 3, 3) element matrices into CSR over the chosen dof set."""
    if include_boundary:
        dof = np.arange(mesh.nodes.shape[0])[mesh.triangles]
        n = mesh.nodes.shape[0]
    else:
        dof = mesh.interior_index[mesh.triangles]
        n = mesh.n_interior
    rows = np.repeat(dof, 3, axis=1).ravel()
    cols = np.tile(dof, (1, 3)).ravel()
    vals = local.ravel()
    keep = (rows >= 0) & (cols >= 0)
    return csr_from_coo(n, rows[keep], cols[keep], vals[keep])


def assemble_mass(mesh: StructuredMesh, include_boundary: bool = False) -> SparseMatrix:
    """Mass matrix M_ij = (phi_i, phi_j); exact for P1 elements."""
    area = mesh.triangle_area
    local_one = area / 12.0 * (np.ones((3, 3)) + np.eye(3))
    local = np.broadcast_to(local_one, (mesh.triangles.shape[0], 3, 3))
    return _scatter(mesh, local, include_boundary)


def assemble_stiffness(mesh: StructuredMesh, a=None,
                       include_boundary: bool = False) -> SparseMatrix:
    """Stiffness matrix S_ij = (a grad phi_i, grad phi_j).

    The diffusivity is sampled once per element at the centroid, which keeps
    the O(h^2) spatial accuracy of the discretization.
    """
    P = mesh.nodes[mesh.triangles]
    if a is None:
        a_c = np.ones(P.shape[0])
    else:
        cent = P.mean(axis=1)
        a_c = _eval_on(a, cent[:, 0], cent[:, 1])
        bad = ~np.isfinite(a_c) | (a_c <= 0.0)
        if bad.any():
            i = int(np.nonzero(bad)[0][0])
            raise CoefficientRangeError(
                f"diffusivity must be finite and > 0; got {a_c[i]!r} at centroid "
                f"({cent[i, 0]}, {cent[i, 1]})")
    grads = _element_gradients(mesh)
    local = mesh.triangle_area * np.einsum("t,tid,tjd->tij", a_c, grads, grads)
    return _scatter(mesh, local, include_boundary)


def load_vector(mesh: StructuredMesh, g) -> np.ndarray:
    """Interior load b_i = (g, phi_i) by the 3-point edge-midpoint rule."""
    P = mesh.nodes[mesh.triangles]
    mids = 0.5 * (P + np.roll(P, -1, axis=1))   # (ntri, 3, 2): m01, m12, m20
    gv = _eval_on(g, mids[..., 0], mids[..., 1])
    if not np.all(np.isfinite(gv)):
        raise EvaluationError("load function produced non-finite values")
    contrib = mesh.triangle_area / 3.0 * np.einsum("tq,qi->ti", gv, _PHI_MID)
    b = np.zeros(mesh.n_interior)
    dof = mesh.interior_index[mesh.triangles]
    np.add.at(b, dof[dof >= 0], contrib[dof >= 0])
    return b


def l2_project(mesh: StructuredMesh, g, rtol: float = 1e-12) -> FieldP1:
    """L2 projection of g onto the interior P1 space."""
    mass = assemble_mass(mesh)
    b = load_vector(mesh, g)
    solver = LinearSolver(mass, rtol=rtol)
    return FieldP1(mesh=mesh, values=solver.solve(b))


def ritz_project(mesh: StructuredMesh, a, g, grad_g, rtol: float = 1e-12) -> FieldP1:
    """Ritz projection of g (with gradient grad_g and g = 0 on the boundary)."""
    stiff = assemble_stiffness(mesh, a)
    P = mesh.nodes[mesh.triangles]
    mids = 0.5 * (P + np.roll(P, -1, axis=1))
    mx, my = mids[..., 0], mids[..., 1]
    gx, gy = grad_g(mx, my)
    gx = np.broadcast_to(np.asarray(gx, dtype=float), mx.shape)
    gy = np.broadcast_to(np.asarray(gy, dtype=float), mx.shape)
    if a is None:
        a_q = np.ones_like(mx)
    else:
        a_q = _eval_on(a, mx, my)
    if not (np.all(np.isfinite(gx)) and np.all(np.isfinite(gy))):
        raise EvaluationError("gradient function produced non-finite values")
    grads = _element_gradients(mesh)
    sx = (a_q * gx).sum(axis=1)
    sy = (a_q * gy).sum(axis=1)
    contrib = mesh.triangle_area / 3.0 * (
        sx[:, None] * grads[:, :, 0] + sy[:, None] * grads[:, :, 1])
    b = np.zeros(mesh.n_interior)
    dof = mesh.interior_index[mesh.triangles]
    np.add.at(b, dof[dof >= 0], contrib[dof >= 0])
    solver = LinearSolver(stiff, rtol=rtol)
    return FieldP1(mesh=mesh, values=solver.solve(b))
