"""Orchestration of single solves and convergence studies."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .assembly import FieldP1, l2_project
from .config import ExperimentConfig
from .exact import INITIAL_DATA, SeriesSolution, custom, make_series, sine_matrix
from .mesh import StructuredMesh, build_mesh
from .metrics import ErrorReport, FineLattice, LatticeInterpolator, fine_lattice
from .stepping import build_time_mesh, run


def _zero_datum():
    return custom(lambda x, y: np.zeros_like(np.asarray(x, dtype=float) + y), tag="zero")


def get_datum(tag: str):
    if tag == "zero":
        return _zero_datum()
    return INITIAL_DATA[tag]()


class ErrorTracker:
    """Observer recording |||u_h^n - u(t_n)||| at every step.

    Modal decay factors for all steps are evaluated upfront in one
    vectorized pass; each step then costs two small matrix products.
    """

    def __init__(self, sol: SeriesSolution, lattice: FineLattice,
                 time_mesh, mesh: StructuredMesh):
        self.sol = sol
        self.lattice = lattice
        self.interp = LatticeInterpolator(mesh, lattice)
        self.Sx = sine_matrix(lattice.xs, sol.K)
        mask = sol.active_mask
        lam_act = sol.lam[mask]
        self.mask = mask
        self.c2_act = 2.0 * sol.C[mask]
        t = time_mesh.t
        if lam_act.size:
            args = (lam_act[None, :] * (t[1:] ** sol.alpha)[:, None]).ravel()
            self.decay = sol.evaluator(args).reshape(time_mesh.N, lam_act.size)
        else:
            self.decay = np.zeros((time_mesh.N, 0))
        self.t = t
        self.errors = np.zeros(time_mesh.N)
        self.running_max = {}

    def exact_on_lattice(self, n: int) -> np.ndarray:
        D = np.zeros_like(self.sol.C)
        D[self.mask] = self.c2_act * self.decay[n - 1]
        return self.Sx @ D @ self.Sx.T

    def __call__(self, n: int, t_n: float, u_n: FieldP1) -> None:
        err = float(np.abs(self.interp(u_n) - self.exact_on_lattice(n)).max())
        self.errors[n - 1] = err
        for mu, cur in self.running_max.items():
            self.running_max[mu] = max(cur, t_n ** mu * err)


@dataclass
class RunResult:
    report: ErrorReport
    E_mu: dict


def run_single(cfg: ExperimentConfig, M: int, mus=None, observer_extra=None) -> RunResult:
    """One (M, N) solve of the configured example with per-step errors."""
    mus = list(cfg.mu) if mus is None else list(mus)
    mesh = build_mesh(M)
    time_mesh = build_time_mesh(cfg.N, cfg.gamma, cfg.T)
    datum = get_datum(cfg.example)
    sol = make_series(datum, cfg.alpha, cfg.modes)
    lattice = fine_lattice(cfg.fine_M)
    tracker = ErrorTracker(sol, lattice, time_mesh, mesh)
    for mu in mus:
        tracker.running_max[mu] = 0.0
    u0 = l2_project(mesh, datum.evaluate, rtol=cfg.tol)

    def observer(n, t_n, u_n):
        tracker(n, t_n, u_n)
        if observer_extra is not None:
            observer_extra(n, t_n, u_n)

    run(mesh, time_mesh, cfg.alpha, None, u0, f=None, observer=observer, rtol=cfg.tol)
    report = ErrorReport(M=M, N=cfg.N, gamma=cfg.gamma, alpha=cfg.alpha,
                         example=cfg.example, M_s=cfg.fine_M,
                         t=time_mesh.t[1:], errors=tracker.errors)
    return RunResult(report=report, E_mu=dict(tracker.running_max))


@dataclass
class TableResult:
    Ms: list
    mus: list
    E: dict        # E[mu] = list over Ms
    CR: dict       # CR[mu] = list over Ms[1:]
    reports: list

    def text(self) -> str:
        head = ["M".rjust(4)]
        for mu in self.mus:
            head.append(f"E_{mu:g}".rjust(11))
            head.append("CR".rjust(7))
        lines = ["  ".join(head)]
        for i, M in enumerate(self.Ms):
            row = [f"{M:4d}"]
            for mu in self.mus:
                row.append(f"{self.E[mu][i]:.4e}")
                row.append(f"{self.CR[mu][i - 1]:7.4f}" if i > 0 else " " * 7)
            lines.append("  ".join(row))
        return "\n".join(lines)

    def csv_text(self) -> str:
        cols = ["M"]
        for mu in self.mus:
            cols.append(f"E_{mu:g}")
            cols.append(f"CR_{mu:g}")
        lines = [",".join(cols)]
        for i, M in enumerate(self.Ms):
            row = [str(M)]
            for mu in self.mus:
                row.append(repr(self.E[mu][i]))
                row.append(repr(self.CR[mu][i - 1]) if i > 0 else "")
            lines.append(",".join(row))
        return "\n".join(lines) + "\n"


def run_table(cfg: ExperimentConfig) -> TableResult:
    """Run every configured M and collect weighted errors plus rates."""
    mus = list(cfg.mu)
    E = {mu: [] for mu in mus}
    reports = []
    for M in cfg.M:
        res = run_single(cfg, M, mus=mus)
        reports.append(res.report)
        for mu in mus:
            E[mu].append(res.E_mu[mu])
    CR = {}
    for mu in mus:
        CR[mu] = [float(np.log2(a / b)) for a, b in zip(E[mu], E[mu][1:])]
    return TableResult(Ms=list(cfg.M), mus=mus, E=E, CR=CR, reports=reports)
