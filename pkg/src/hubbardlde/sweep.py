"""Parameter sweeps over chain geometry, interaction, and input state.

Each grid point runs the full pipeline: Hamiltonian -> ground state -> end-pair
reduced density matrix -> concurrence bound and state probabilities ->
teleportation metrics for the configured projector family and input state.
Rows are independent, evaluated in grid order (optionally by a process pool),
and the CSV writer is byte-deterministic.
"""

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, fields

import numpy as np

from .entanglement import concurrence_lower_bound, state_probability
from .errors import DomainError
from .eigensolver import ground_state
from .hamiltonian import ALT_BONDS, ALT_HOPPING, VARIANTS, ModelSpec, build_hamiltonian
from .rdm import two_site_rdm
from .teleport import (
    BELL,
    HUBBARD_ADAPTIVE,
    HUBBARD_FIXED,
    bell_family,
    channel_output,
    classical_threshold,
    hubbard_family,
    make_input_state,
)

SWEEP_PARAMS = ("delta", "tau_b", "alpha0", "U")
FAMILIES = (BELL, HUBBARD_FIXED, HUBBARD_ADAPTIVE)
JOBS_ENV_VAR = "HUBBARDLDE_JOBS"

#: reference pair states for the probability columns (indices 4*a+b)
PHI_H_STATE = np.zeros(16, dtype=complex)
PHI_H_STATE[[3, 6, 9, 12]] = 0.5  # (|0,ud> + |u,d> + |d,u> + |ud,0>)/2
SINGLET_STATE = np.zeros(16, dtype=complex)
SINGLET_STATE[[6, 9]] = 1.0 / np.sqrt(2.0)  # (|u,d> + |d,u>)/sqrt(2)


@dataclass(frozen=True)
class SweepConfig:
    model: str = ALT_BONDS
    L_values: tuple = (8,)
    U_values: tuple = (0.0,)
    sweep: str = "delta"
    grid: tuple = ()
    alphas: tuple = (1.0, 1.0, 1.0, 1.0)
    family: str = BELL
    sites: tuple = None  # default: the chain ends (1, L)
    sector: tuple = None  # default: half filling
    delta: float = 0.0
    tau_a: float = 1.0
    tau_b: float = 1.0
    out: str = None
    jobs: int = None
    clamp_eps: float = 1e-3
    seed: int = 0

    def validate(self):
        if self.model not in VARIANTS:
            raise DomainError(f"unknown model {self.model!r}")
        if self.sweep not in SWEEP_PARAMS:
            raise DomainError(f"sweep parameter must be one of {SWEEP_PARAMS}")
        if self.family not in FAMILIES:
            raise DomainError(f"family must be one of {FAMILIES}")
        if len(self.grid) == 0:
            raise DomainError("sweep grid is empty")
        if not self.L_values:
            raise DomainError("no chain lengths given")
        if self.sweep != "U" and not self.U_values:
            raise DomainError("no U values given")
        if self.model in (ALT_BONDS, ALT_HOPPING) and any(L % 2 for L in self.L_values):
            raise DomainError("alternating variants require even L")
        if self.sites is not None and len(self.sites) != 2:
            raise DomainError("sites must be a pair (i, j)")
        if self.sector is not None and len(self.sector) != 2:
            raise DomainError("sector must be a pair (n_up, n_down)")
        if len(self.alphas) != 4:
            raise DomainError("alphas must have four components")
        if self.sweep == "delta" and self.model != ALT_BONDS:
            raise DomainError("delta sweeps apply to the alt-bonds model")
        if self.sweep == "tau_b" and self.model != ALT_HOPPING:
            raise DomainError("tau_b sweeps apply to the alt-hopping model")
        eps = self.clamp_eps
        if self.sweep == "delta":
            bad = [g for g in self.grid if not 0.0 <= g <= 1.0 - eps]
            if bad:
                raise DomainError(
                    f"delta grid must stay in [0, 1-{eps:g}] (decoupling clamp); offending: {bad}"
                )
        if self.model == ALT_BONDS and self.sweep != "delta" and self.delta > 1.0 - eps:
            raise DomainError(f"fixed delta={self.delta} within {eps:g} of the decoupling limit")
        if self.model == ALT_HOPPING and self.tau_a < eps:
            raise DomainError(f"tau_a={self.tau_a} within {eps:g} of the decoupling limit 0")
        if self.sweep == "tau_b" and any(g < 0 for g in self.grid):
            raise DomainError("tau_b grid must be non-negative")
        if self.sweep == "alpha0" and any(g < 0 for g in self.grid):
            raise DomainError("alpha0 grid must be non-negative")

    def resolved_jobs(self) -> int:
        if self.jobs is not None:
            return max(1, int(self.jobs))
        env = os.environ.get(JOBS_ENV_VAR)
        return max(1, int(env)) if env else 1


@dataclass
class ResultRow:
    model: str
    family: str
    L: int
    n_up: int
    n_down: int
    site_i: int
    site_j: int
    U: float
    delta: float
    tau_a: float
    tau_b: float
    alpha0: complex
    alpha1: complex
    alpha2: complex
    alpha3: complex
    status: str = "ok"
    energy: float = np.nan
    gap: float = np.nan
    degenerate: bool = False
    concurrence_lb: float = np.nan
    tau2: float = np.nan
    p_dominant: float = np.nan
    p_halffill: float = np.nan
    p_singlet: float = np.nan
    fef: float = np.nan
    fidelity: float = np.nan
    avg_fidelity: float = np.nan
    classical_threshold: float = field(default_factory=lambda: classical_threshold(4))


def _grid_points(config: SweepConfig):
    """Points in deterministic grid order."""
    points = []
    u_values = (None,) if config.sweep == "U" else config.U_values
    for L in config.L_values:
        for U in u_values:
            for g in config.grid:
                points.append((L, U, g))
    return points


def _point_params(config: SweepConfig, point):
    L, U, g = point
    params = {
        "L": L,
        "U": g if config.sweep == "U" else U,
        "delta": g if config.sweep == "delta" else config.delta,
        "tau_a": config.tau_a,
        "tau_b": g if config.sweep == "tau_b" else config.tau_b,
        "alphas": (g, 1.0, 1.0, 1.0) if config.sweep == "alpha0" else config.alphas,
    }
    return params


def _build_family(config: SweepConfig, rho):
    if config.family == BELL:
        return bell_family(4)
    if config.family == HUBBARD_FIXED:
        return hubbard_family("fixed")
    return hubbard_family("adaptive", rho_resource=rho)


def evaluate_point(config: SweepConfig, point) -> ResultRow:
    """Full pipeline for one grid point; failures land in the status column."""
    p = _point_params(config, point)
    L = p["L"]
    sites = config.sites if config.sites is not None else (1, L)
    sector = config.sector if config.sector is not None else (L // 2, L // 2)
    alphas = np.asarray(p["alphas"], dtype=complex)
    row = ResultRow(
        model=config.model,
        family=config.family,
        L=L,
        n_up=sector[0],
        n_down=sector[1],
        site_i=sites[0],
        site_j=sites[1],
        U=p["U"],
        delta=p["delta"] if config.model == ALT_BONDS else 0.0,
        tau_a=p["tau_a"] if config.model == ALT_HOPPING else 1.0,
        tau_b=p["tau_b"] if config.model == ALT_HOPPING else 1.0,
        alpha0=alphas[0],
        alpha1=alphas[1],
        alpha2=alphas[2],
        alpha3=alphas[3],
    )
    try:
        model = ModelSpec(
            variant=config.model,
            L=L,
            U=p["U"],
            delta=row.delta,
            tau_a=row.tau_a,
            tau_b=row.tau_b,
        )
        H = build_hamiltonian(model, sector)
        gs = ground_state(H, seed=config.seed)
        rho = two_site_rdm(gs, H.basis, *sites)
        report = concurrence_lower_bound(rho)
        family = _build_family(config, rho)
        psi_in = make_input_state(alphas)
        channel = channel_output(rho, psi_in.density_matrix(), family)

        row.energy = gs.energy
        row.gap = gs.gap
        row.degenerate = gs.degenerate
        row.concurrence_lb = report.lower_bound
        row.tau2 = report.tau2
        row.p_dominant = float(rho.eigen_probabilities()[-1])
        row.p_halffill = state_probability(rho, PHI_H_STATE)
        row.p_singlet = state_probability(rho, SINGLET_STATE)
        row.fef = channel.fef
        row.fidelity = channel.fidelity
        row.avg_fidelity = channel.avg_fidelity
        if family.warning:
            row.status = "ok: adaptive projection near-singular"
    except Exception as exc:  # per-point isolation: the run continues
        row.status = f"error: {exc}"
    return row


def _evaluate_star(args):
    return evaluate_point(*args)


def run_sweep(config: SweepConfig) -> list:
    """Evaluate every grid point; row order is grid order regardless of jobs."""
    config.validate()
    points = _grid_points(config)
    jobs = config.resolved_jobs()
    if jobs == 1:
        return [evaluate_point(config, pt) for pt in points]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_evaluate_star, [(config, pt) for pt in points]))


def _format_value(value) -> str:
    if isinstance(value, str):
        return value
    if isinstance(value, (bool, np.bool_)):
        return "1" if value else "0"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (complex, np.complexfloating)):
        z = complex(value)
        if z.imag == 0.0:
            return f"{z.real:.12g}"
        return f"{z.real:.12g}{z.imag:+.12g}j"
    return f"{float(value):.12g}"


def emit_csv(rows, path) -> str:
    """Write rows as UTF-8 CSV with a '#schema=1' comment line; deterministic."""
    if not rows:
        raise DomainError("no rows to write")
    names = [f.name for f in fields(ResultRow)]
    lines = ["#schema=1", ",".join(names)]
    for row in rows:
        lines.append(",".join(_format_value(getattr(row, name)) for name in names))
    data = ("\n".join(lines) + "\n").encode("utf-8")
    try:
        with open(path, "wb") as fh:
            fh.write(data)
    except OSError as exc:
        raise OSError(f"cannot write sweep output to {path!r}: {exc}") from exc
    return path


def linear_grid(spec: str) -> tuple:
    """Parse 'start:stop:steps' into an inclusive linspace tuple."""
    parts = spec.split(":")
    if len(parts) != 3:
        raise DomainError(f"grid spec must be start:stop:steps, got {spec!r}")
    start, stop, steps = float(parts[0]), float(parts[1]), int(parts[2])
    if steps < 1:
        raise DomainError("grid needs at least one step")
    return tuple(np.linspace(start, stop, steps))
