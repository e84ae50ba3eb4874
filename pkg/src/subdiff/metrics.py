"""Discrete maximum-norm errors on a fine evaluation lattice.

The error at each accepted step is the max over the interior nodes of a
fixed fine lattice of |P1-interpolated discrete solution - exact solution|;
weighted variants multiply by t^mu before taking the max over steps.
"""

from __future__ import annotations

import io
from dataclasses import dataclass, field

import numpy as np

from .assembly import FieldP1
from .mesh import StructuredMesh, locate_point
from .sparse import csr_from_coo, matvec


@dataclass(frozen=True)
class FineLattice:
    """Interior nodes of the M_s x M_s lattice, as a tensor grid."""

    M_s: int
    xs: np.ndarray = field(init=False)

    def __post_init__(self):
        if self.M_s < 2:
            raise ValueError(f"M_s must be >= 2, got {self.M_s!r}")
        xs = np.arange(1, self.M_s) / self.M_s
        xs.setflags(write=False)
        object.__setattr__(self, "xs", xs)

    @property
    def n_nodes(self) -> int:
        return (self.M_s - 1) ** 2

    def points(self) -> np.ndarray:
        """All (M_s - 1)^2 nodes, x varying fastest."""
        X, Y = np.meshgrid(self.xs, self.xs, indexing="ij")
        return np.column_stack([X.ravel(), Y.ravel()])


def fine_lattice(M_s: int = 128) -> FineLattice:
    return FineLattice(M_s=int(M_s))


class LatticeInterpolator:
    """P1 interpolation from a coarse mesh onto a fine lattice, precomputed.

    When the lattices nest, coarse node values are reproduced exactly
    (barycentric weights are exactly 1/0 there).
    """

    def __init__(self, mesh: StructuredMesh, lattice: FineLattice):
        self.mesh = mesh
        self.lattice = lattice
        pts = lattice.points()
        n = max(lattice.n_nodes, mesh.n_interior)
        # zero padding keeps every row populated (rows near corners may
        # touch only boundary nodes)
        rows = list(range(n))
        cols = [0] * n
        vals = [0.0] * n
        for r, p in enumerate(pts):
            tri, lam = locate_point(mesh, p)
            for k, node in enumerate(mesh.triangles[tri]):
                dof = mesh.interior_index[node]
                if dof >= 0 and lam[k] != 0.0:
                    rows.append(r)
                    cols.append(dof)
                    vals.append(lam[k])
        self._P = csr_from_coo(n, rows, cols, vals)

    def __call__(self, field: FieldP1) -> np.ndarray:
        """Values on the lattice as an (M_s-1, M_s-1) array indexed [ix, iy]."""
        x = np.zeros(self._P.n)
        x[: field.values.size] = field.values
        out = matvec(self._P, x)[: self.lattice.n_nodes]
        m = self.lattice.M_s - 1
        return out.reshape(m, m)


def step_error(u_h: FieldP1, exact_vals: np.ndarray, lattice: FineLattice,
               interpolator: LatticeInterpolator | None = None) -> float:
    """|||u_h - u||| on the lattice; exact_vals indexed [ix, iy]."""
    if interpolator is None:
        interpolator = LatticeInterpolator(u_h.mesh, lattice)
    m = lattice.M_s - 1
    if exact_vals.shape != (m, m):
        raise ValueError(f"exact values must have shape {(m, m)}, got {exact_vals.shape}")
    return float(np.abs(interpolator(u_h) - exact_vals).max())


@dataclass
class ErrorReport:
    """Per-step error records plus metadata for one solver run."""

    M: int
    N: int
    gamma: float
    alpha: float
    example: str
    M_s: int
    t: np.ndarray
    errors: np.ndarray

    def weighted_error(self, mu: float) -> float:
        return weighted_errors(self.t, self.errors, [mu])[0]

    def write_steps_csv(self, path) -> None:
        with open(path, "w") as fh:
            fh.write(steps_csv_text(self.t, self.errors))


def steps_csv_text(t: np.ndarray, errors: np.ndarray) -> str:
    buf = io.StringIO()
    buf.write("n,t,err\n")
    for n, (tn, en) in enumerate(zip(t, errors), start=1):
        buf.write(f"{n},{float(tn)!r},{float(en)!r}\n")
    return buf.getvalue()


def weighted_errors(t: np.ndarray, errors: np.ndarray, mus) -> list[float]:
    """E_mu = max_n t_n^mu err_n for each requested mu."""
    t = np.asarray(t, dtype=float)
    errors = np.asarray(errors, dtype=float)
    if t.size == 0 or t.size != errors.size:
        raise ValueError("need matching, nonempty step times and errors")
    return [float(np.max(t ** float(mu) * errors)) for mu in mus]


def convergence_rates(errors) -> list[float]:
    """log2 ratios of successive errors under doubling of M."""
    errors = list(errors)
    if len(errors) < 2:
        raise ValueError("need at least two errors to form a rate")
    rates = []
    for a, b in zip(errors, errors[1:]):
        if not (a > 0.0 and b > 0.0):
            raise ValueError("convergence rate undefined for non-positive errors")
        rates.append(float(np.log2(a / b)))
    return rates
