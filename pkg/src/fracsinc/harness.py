"""Experiment harness: config files, convergence studies, reports.

Config files are flat ``key = value`` text (``#`` starts a comment).  The
recognized keys mirror the experiment record exactly; unknown keys are hard
errors, because a silently ignored typo in, say, ``gamma`` would invalidate a
study.  Example::

    problem = homogeneous
    operator = diagonal: 9.869604401089358
    alpha = 0.5
    gamma = 2.0
    phi = 0.2
    t = 0.10132118364233778
    N_list = 4, 8, 16, 32, 64, 128
    output_path = rows.csv
    # forcing = <c> ; <comma-separated direction>   (inhomogeneous only)

``operator`` is either ``diagonal: <comma-separated eigenvalues>`` or
``laplacian: <n>``.  For Laplacian problems the forcing direction may also be
``mode: <k>`` (the k-th sine eigenvector sampled on the grid).

Convergence rows compare the solver against the closed-form eigenbasis
oracle; errors are max-norm at the final time.  Reports are CSV with header
``N,error,decay_factor,wall_time_ms``, every float in scientific notation
with 17 significant digits, ``\n`` newlines, one trailing newline.  Wall time
is measured on the monotonic clock and reported, never asserted; pass
``include_timings=False`` to zero the column when byte-reproducible output
matters more than timing data.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .contour import as_order
from .errors import ConfigError
from .fracderiv import Tabulated, _tabulate_exponential, residual_homogeneous, rl_right
from .homogeneous import solve_homogeneous
from .inhomogeneous import (
    ExponentialForcing,
    InhomogeneousConfig,
    order_to_q,
    solve_inhomogeneous,
)
from .operators import (
    OperatorHandle,
    from_eigenbasis,
    make_diagonal,
    make_tridiagonal_laplacian,
    to_eigenbasis,
)

_CONFIG_KEYS = ("problem", "operator", "alpha", "gamma", "phi", "t", "N_list",
                "output_path", "forcing", "u0")


@dataclass(frozen=True)
class ExperimentConfig:
    problem: str
    operator: OperatorHandle
    alpha: float
    gamma: float
    phi: float
    t: float
    N_list: tuple
    output_path: str
    forcing: ExponentialForcing | None = None
    u0: np.ndarray | None = field(default=None, repr=False)

    def initial_data(self) -> np.ndarray:
        if self.u0 is not None:
            return self.u0
        return np.ones(self.operator.dim)


@dataclass(frozen=True)
class ConvergenceRow:
    N: int
    error: float
    decay_factor: float
    wall_time_ms: float


@dataclass(frozen=True)
class ResidualLine:
    eigenvalue: float
    ode_residual: float
    integral_eq_residual: float
    passed: bool


def _parse_direction(spec: str, op: OperatorHandle) -> np.ndarray:
    spec = spec.strip()
    if spec.startswith("mode:"):
        k = int(spec.split(":", 1)[1])
        if not (1 <= k <= op.dim):
            raise ConfigError(f"eigenmode index {k} out of range 1..{op.dim}")
        j = np.arange(1, op.dim + 1)
        return np.sin(j * k * np.pi / (op.dim + 1))
    vals = np.array([float(x) for x in spec.split(",")])
    if vals.size != op.dim:
        raise ConfigError(f"direction has {vals.size} entries, operator dim is {op.dim}")
    return vals


def parse_config(text: str) -> ExperimentConfig:
    """Parse the flat key = value format; unknown keys are hard errors."""
    raw: dict[str, str] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if "=" not in stripped:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {line!r}")
        key, value = (part.strip() for part in stripped.split("=", 1))
        if key not in _CONFIG_KEYS:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        if key in raw:
            raise ConfigError(f"line {lineno}: duplicate key {key!r}")
        raw[key] = value

    missing = [k for k in ("problem", "operator", "alpha", "t", "N_list", "output_path")
               if k not in raw]
    if missing:
        raise ConfigError(f"missing required keys: {', '.join(missing)}")

    try:
        problem = raw["problem"]
        if problem not in ("homogeneous", "inhomogeneous"):
            raise ConfigError(f"problem must be homogeneous|inhomogeneous, got {problem!r}")

        phi = float(raw.get("phi", math.pi / 12))
        op_kind, _, op_arg = raw["operator"].partition(":")
        op_kind = op_kind.strip()
        if op_kind == "diagonal":
            eigs = [float(x) for x in op_arg.split(",")]
            operator = make_diagonal(eigs, phi=phi)
        elif op_kind == "laplacian":
            operator = make_tridiagonal_laplacian(int(op_arg), phi=phi)
        else:
            raise ConfigError(f"operator must be diagonal:...|laplacian:<n>, got {op_kind!r}")

        alpha = as_order(float(raw["alpha"]))
        gamma = float(raw.get("gamma", 1.0))
        if gamma <= 0.0:
            raise ConfigError(f"gamma must be positive, got {gamma}")
        t = float(raw["t"])
        if t < 0.0:
            raise ConfigError(f"t must be nonnegative, got {t}")
        n_list = tuple(int(x) for x in raw["N_list"].split(",") if x.strip())
        if any(n < 1 for n in n_list):
            raise ConfigError(f"N_list entries must be >= 1, got {n_list}")

        forcing = None
        if "forcing" in raw:
            c_part, _, dir_part = raw["forcing"].partition(";")
            forcing = ExponentialForcing(c=float(c_part),
                                         direction=_parse_direction(dir_part, operator))
        u0 = None
        if "u0" in raw:
            u0 = _parse_direction(raw["u0"], operator)
    except ConfigError:
        raise
    except (ValueError, TypeError) as exc:
        raise ConfigError(f"malformed config value: {exc}") from exc

    if problem == "inhomogeneous":
        if forcing is None:
            raise ConfigError("inhomogeneous problem requires a forcing key")
        order_to_q(alpha)  # raises with the p >= 2 obstruction message

    return ExperimentConfig(problem=problem, operator=operator, alpha=alpha,
                            gamma=gamma, phi=phi, t=t, N_list=n_list,
                            output_path=raw["output_path"], forcing=forcing, u0=u0)


def load_config(path: str) -> ExperimentConfig:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_config(fh.read())


def oracle_homogeneous(op: OperatorHandle, u0: np.ndarray, alpha, t: float) -> np.ndarray:
    """Closed-form exp(-A^{1/(1+alpha)} t) u0 through the exact eigensystem."""
    p = 1.0 / (1.0 + as_order(alpha))
    coeff = to_eigenbasis(op, u0)
    return from_eigenbasis(op, np.exp(-op.eigenvalues**p * t) * coeff)


def oracle_inhomogeneous(op: OperatorHandle, u0: np.ndarray, f: ExponentialForcing,
                         q: int, t: float) -> np.ndarray:
    """Per-eigencomponent closed form for exponential forcing.

    In eigencoordinates, u_k(t) = e^{-m t} u0_k + beta_k (e^{-c t} - e^{-m t})
    / (m - c) with m = lambda_k^q and beta_k = sum_j c^(1-j/q) lambda_k^(j-1)
    v_k (the convolution degenerates to beta t e^{-c t} when m = c).
    """
    lam = op.eigenvalues
    m = lam ** float(q)
    c = f.c
    u0c = to_eigenbasis(op, u0)
    vc = to_eigenbasis(op, np.asarray(f.direction))
    beta = np.zeros_like(lam)
    for j in range(1, q + 1):
        beta = beta + c ** (1.0 - j / q) * lam ** (j - 1.0)
    beta = beta * vc
    out = np.exp(-m * t) * u0c
    near = np.abs(m - c) < 1e-12 * np.maximum(1.0, np.abs(m))
    safe = np.where(near, 1.0, m - c)
    out = out + np.where(near, beta * t * np.exp(-c * t),
                         beta * (np.exp(-c * t) - np.exp(-m * t)) / safe)
    return from_eigenbasis(op, out)


def _study_row(cfg: ExperimentConfig, N: int) -> ConvergenceRow:
    u0 = cfg.initial_data()
    start = time.perf_counter()
    if cfg.problem == "homogeneous":
        report = solve_homogeneous(cfg.operator, u0, cfg.alpha, cfg.t, N, gamma=cfg.gamma)
        exact = oracle_homogeneous(cfg.operator, u0, cfg.alpha, cfg.t)
    else:
        q = order_to_q(cfg.alpha)
        report = solve_inhomogeneous(cfg.operator, u0, cfg.forcing,
                                     InhomogeneousConfig(q_order=q, N=N, t=cfg.t))
        exact = oracle_inhomogeneous(cfg.operator, u0, cfg.forcing, q, cfg.t)
    elapsed_ms = (time.perf_counter() - start) * 1e3
    err = float(np.max(np.abs(report.value - exact)))
    return ConvergenceRow(N=N, error=err, decay_factor=report.decay_factor,
                          wall_time_ms=elapsed_ms)


def run_convergence_study(cfg: ExperimentConfig, threads: int = 1) -> list[ConvergenceRow]:
    """One row per N in N_list, ordered by N regardless of completion order."""
    n_sorted = sorted(cfg.N_list)
    if threads <= 1:
        rows = [_study_row(cfg, n) for n in n_sorted]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            rows = list(pool.map(lambda n: _study_row(cfg, n), n_sorted))
    return sorted(rows, key=lambda r: r.N)


def _sci(x: float) -> str:
    return f"{x:.16e}"


def emit_report(rows, path: str, include_timings: bool = True) -> None:
    """Write convergence rows as deterministic CSV."""
    lines = ["N,error,decay_factor,wall_time_ms"]
    for row in rows:
        wall = row.wall_time_ms if include_timings else 0.0
        lines.append(f"{row.N},{_sci(row.error)},{_sci(row.decay_factor)},{_sci(wall)}")
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write("\n".join(lines) + "\n")


def emit_solution(value: np.ndarray, path: str) -> None:
    """Write a solved state vector as deterministic CSV."""
    lines = ["index,value_re,value_im"]
    arr = np.asarray(value)
    for i, entry in enumerate(arr):
        z = complex(entry)
        lines.append(f"{i},{_sci(z.real)},{_sci(z.imag)}")
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write("\n".join(lines) + "\n")


_RESIDUAL_TOL = 1e-5


def run_residual_suite(cfg: ExperimentConfig,
                       solution_alpha: float | None = None) -> list[ResidualLine]:
    """Residual verification against the fractional-derivative oracle.

    For each eigenvalue the solution profile e^{-lambda^{1/(1+a)} t} with
    a = ``solution_alpha`` (default: the configured order) must satisfy both
    the configured-order equation (-D^{alpha+1} u + lambda u = 0) and its
    equivalent integral equation (u - lambda D^{-(1+alpha)} u = 0), evaluated
    through the tabulated numeric path.  Passing a ``solution_alpha`` that
    differs from the configured order checks that the oracle rejects
    solutions of the wrong problem.
    """
    if cfg.operator.kind != "diagonal":
        raise ConfigError("residual suite requires a diagonal operator")
    t_check = cfg.t if cfg.t > 0.0 else 0.2
    alpha = cfg.alpha
    sol_alpha = alpha if solution_alpha is None else as_order(solution_alpha)
    lines = []
    for lam in cfg.operator.eigenvalues:
        lam = float(lam)
        mu = lam ** (1.0 / (1.0 + sol_alpha))
        ode_res = residual_homogeneous(lam, alpha, t_check, decay_rate=mu)
        u = _tabulate_exponential(mu, t_check)
        inteq = abs(math.exp(-mu * t_check) - lam * rl_right(u, -(1.0 + alpha), t_check))
        lines.append(ResidualLine(eigenvalue=lam, ode_residual=ode_res,
                                  integral_eq_residual=inteq,
                                  passed=ode_res < _RESIDUAL_TOL and inteq < _RESIDUAL_TOL))
    return lines
