"""Delayed block-update operators and their spectral radii.

A block-partitioned iteration x <- Mx turns asynchronous when block i sees
block j's state delayed by delta[j][i] steps.  Stacking kappa+1 history
copies makes the delayed update a linear operator again; its spectral
radius is the quantity of interest, notably:

* the radius does not depend on kappa once kappa >= max delay;
* if every nonzero block carries the same delay k (zero diagonal blocks),
  the radius is rho(M) ** (1 / (k + 1)).

The experiment harness samples random ensembles, applies delay patterns,
and emits CSV rows ``ensemble,jacobi,trial,seed,c,rho,bound`` with
bound = c ** (1 / (max_delay + 1)).
"""

from __future__ import annotations

import csv
import io
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .errors import (
    BadPartition,
    KappaTooSmall,
    NoConvergence,
    NormalizationDegenerate,
    SingularDiagonalBlock,
    ValidationError,
)

DENSE_EIG_LIMIT = 600
CSV_HEADER = ["ensemble", "jacobi", "trial", "seed", "c", "rho", "bound"]


@dataclass(frozen=True)
class BlockMatrix:
    data: np.ndarray
    partition: tuple[int, ...]

    def __post_init__(self):
        data = np.asarray(self.data, dtype=float)
        object.__setattr__(self, "data", data)
        object.__setattr__(self, "partition", tuple(int(b) for b in self.partition))
        if data.ndim != 2 or data.shape[0] != data.shape[1]:
            raise ValidationError("matrix must be square", shape=data.shape)
        if any(b <= 0 for b in self.partition) or sum(self.partition) != data.shape[0]:
            raise BadPartition("block sizes must be positive and sum to n",
                               partition=self.partition, n=data.shape[0])

    @property
    def n(self) -> int:
        return self.data.shape[0]

    @property
    def block_count(self) -> int:
        return len(self.partition)

    def offsets(self) -> list[int]:
        out = [0]
        for b in self.partition:
            out.append(out[-1] + b)
        return out

    def block(self, i: int, j: int) -> np.ndarray:
        o = self.offsets()
        return self.data[o[i]:o[i + 1], o[j]:o[j + 1]]


@dataclass(frozen=True)
class DelayMatrix:
    delta: np.ndarray

    def __post_init__(self):
        delta = np.asarray(self.delta, dtype=int)
        object.__setattr__(self, "delta", delta)
        if delta.ndim != 2 or delta.shape[0] != delta.shape[1]:
            raise BadPartition("delay matrix must be square", shape=delta.shape)
        if np.any(delta < 0):
            raise ValidationError("delays must be nonnegative")
        if np.any(np.diag(delta) != 0):
            raise ValidationError("self-delays must be zero",
                                  diag=np.diag(delta).tolist())

    @property
    def block_count(self) -> int:
        return self.delta.shape[0]

    @property
    def max_delay(self) -> int:
        return int(self.delta.max(initial=0)) if self.delta.size else 0


@dataclass(frozen=True)
class CompanionOperator:
    matrix: np.ndarray
    kappa: int
    base_n: int


def build_companion(M: BlockMatrix, delta: DelayMatrix, kappa: int) -> CompanionOperator:
    """Operator on stacked history (x^(k), ..., x^(k-kappa)).

    The top block row places block (i, j) of M at history lag
    delta[j][i] (information from j to i); sub-diagonal identities shift
    the history window.
    """
    ell = M.block_count
    if delta.block_count != ell:
        raise BadPartition("delay matrix does not match block partition",
                           blocks=ell, delays=delta.block_count)
    if kappa < delta.max_delay:
        raise KappaTooSmall("history depth below maximum delay",
                            kappa=kappa, max_delay=delta.max_delay)
    n = M.n
    size = (kappa + 1) * n
    out = np.zeros((size, size))
    o = M.offsets()
    for i in range(ell):
        for j in range(ell):
            lag = int(delta.delta[j, i])
            out[o[i]:o[i + 1], lag * n + o[j]:lag * n + o[j + 1]] = M.block(i, j)
    for r in range(1, kappa + 1):
        idx = np.arange(n)
        out[r * n + idx, (r - 1) * n + idx] = 1.0
    return CompanionOperator(out, kappa, n)


def apply_delayed_step(M: BlockMatrix, delta: DelayMatrix, history: Sequence[np.ndarray]) -> np.ndarray:
    """One delayed update from explicit history (newest first).

    Direct evaluation of the blockwise recurrence; used as the oracle for
    :func:`build_companion`.
    """
    ell = M.block_count
    o = M.offsets()
    new = np.zeros(M.n)
    for i in range(ell):
        acc = np.zeros(o[i + 1] - o[i])
        for j in range(ell):
            lag = int(delta.delta[j, i])
            acc += M.block(i, j) @ history[lag][o[j]:o[j + 1]]
        new[o[i]:o[i + 1]] = acc
    return new


def spectral_radius(A: np.ndarray, tol: float = 1e-9,
                    dense_limit: int = DENSE_EIG_LIMIT,
                    max_squarings: int = 64) -> float:
    """Largest eigenvalue magnitude.

    Matrices up to ``dense_limit`` go through a full (complex-capable)
    eigensolve.  Larger ones use the norm iteration ||A^(2^k)||^(1/2^k)
    with repeated squaring and log-space extrapolation, which converges
    geometrically in k.
    """
    A = np.asarray(A, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValidationError("matrix must be square", shape=A.shape)
    if not np.all(np.isfinite(A)):
        raise ValidationError("matrix entries must be finite")
    if A.shape[0] == 0:
        return 0.0
    if A.shape[0] <= dense_limit:
        return float(np.max(np.abs(np.linalg.eigvals(A))))
    # rho = exp( sum_k log ||B_k|| / 2^(k-1) ) for the normalized squaring
    # sequence B_1 = A, B_(k+1) = (B_k / ||B_k||)^2
    log_acc = 0.0
    B = A.copy()
    prev = None
    for k in range(1, max_squarings + 1):
        norm = float(np.linalg.norm(B, "fro"))
        if norm == 0.0:
            return 0.0
        log_acc += np.log(norm) / 2.0 ** (k - 1)
        est = float(np.exp(log_acc))
        if prev is not None and abs(est - prev) <= tol * max(1.0, abs(est)):
            return est
        prev = est
        B = B / norm
        B = B @ B
    raise NoConvergence("norm iteration did not settle",
                        tol=tol, iterations=max_squarings)


def sample_ensemble(kind: str, n: int, blocks: int, seed: int) -> BlockMatrix:
    """Random matrix with unit spectral radius, block-partitioned.

    Kinds: ``iid`` (M = X), ``goe`` (M = X + X^T), ``wishart`` (M = XX^T),
    all from X with independent standard normal entries, then divided by
    the spectral radius.  Deterministic per seed.
    """
    if kind not in ("iid", "goe", "wishart"):
        raise ValidationError("unknown ensemble", kind=kind)
    if n < 1 or blocks < 1 or blocks > n:
        raise BadPartition("need 1 <= blocks <= n", n=n, blocks=blocks)
    rng = np.random.default_rng(seed)
    X = rng.standard_normal((n, n))
    if kind == "iid":
        M = X
    elif kind == "goe":
        M = X + X.T
    else:
        M = X @ X.T
    rho = spectral_radius(M)
    if rho == 0.0:
        raise NormalizationDegenerate("sample has zero spectral radius")
    q, r = divmod(n, blocks)
    partition = tuple([q + 1] * r + [q] * (blocks - r))
    return BlockMatrix(M / rho, partition)


def block_jacobi_matrix(M: BlockMatrix, negate_offdiag: bool = False) -> BlockMatrix:
    """Zero the diagonal blocks, precondition off-diagonals, renormalize.

    Off-diagonal block (i, j) becomes inv(M_ii) @ M_ij (optionally negated
    for the conventional iteration-matrix sign; the spectral radius is what
    matters here and the default follows the plain product form).  The
    result is rescaled to unit spectral radius.
    """
    ell = M.block_count
    o = M.offsets()
    out = np.zeros_like(M.data)
    inverses = []
    for i in range(ell):
        Mii = M.block(i, i)
        try:
            inverses.append(np.linalg.inv(Mii))
        except np.linalg.LinAlgError as exc:
            raise SingularDiagonalBlock("diagonal block is singular",
                                        block=i) from exc
    for i in range(ell):
        for j in range(ell):
            if i == j:
                continue
            blockval = inverses[i] @ M.block(i, j)
            if negate_offdiag:
                blockval = -blockval
            out[o[i]:o[i + 1], o[j]:o[j + 1]] = blockval
    rho = spectral_radius(out)
    if rho == 0.0:
        raise NormalizationDegenerate("all off-diagonal blocks vanish")
    return BlockMatrix(out / rho, M.partition)


@dataclass(frozen=True)
class LemmaCheck:
    cospectral_ok: bool
    uniform_ok: bool | None  # None when the uniform-delay law does not apply
    rho_kappa: float
    rho_kappa2: float
    rho_base: float


def verify_lemmas(M: BlockMatrix, delta: DelayMatrix, kappa: int, kappa2: int,
                  tol: float = 1e-8) -> LemmaCheck:
    """Check kappa-independence and, when applicable, the uniform-delay law.

    The uniform law applies when some k >= 0 has delta[i][j] = k for every
    nonzero block (i, j) of M; then rho of the delayed operator must equal
    rho(M) ** (1 / (k + 1)).
    """
    rho1 = spectral_radius(build_companion(M, delta, kappa).matrix)
    rho2 = spectral_radius(build_companion(M, delta, kappa2).matrix)
    rho_base = spectral_radius(M.data)
    cospectral_ok = abs(rho1 - rho2) < tol

    ks = set()
    ell = M.block_count
    for i in range(ell):
        for j in range(ell):
            if np.any(M.block(i, j) != 0):
                ks.add(int(delta.delta[j, i]))
    if len(ks) == 1:
        k = ks.pop()
        expected = rho_base ** (1.0 / (k + 1))
        uniform_ok = abs(rho1 - expected) < tol
    else:
        uniform_ok = None
    return LemmaCheck(cospectral_ok, uniform_ok, rho1, rho2, rho_base)


@dataclass(frozen=True)
class DelayPattern:
    """single(d): node 1 delayed toward all others; poisson(mean); uniform(k);
    explicit(matrix)."""

    kind: str
    value: float | Sequence[Sequence[int]] | None = None

    def __post_init__(self):
        if self.kind not in ("single", "poisson", "uniform", "explicit"):
            raise ValidationError("unknown delay pattern", kind=self.kind)

    def realize(self, ell: int, rng: np.random.Generator) -> DelayMatrix:
        if self.kind == "single":
            d = np.zeros((ell, ell), dtype=int)
            d[0, 1:] = int(self.value)
            return DelayMatrix(d)
        if self.kind == "uniform":
            d = np.full((ell, ell), int(self.value), dtype=int)
            np.fill_diagonal(d, 0)
            return DelayMatrix(d)
        if self.kind == "poisson":
            d = rng.poisson(float(self.value), size=(ell, ell)).astype(int)
            np.fill_diagonal(d, 0)
            return DelayMatrix(d)
        return DelayMatrix(np.asarray(self.value, dtype=int))

    def to_json_dict(self) -> dict:
        if self.kind == "explicit":
            return {"kind": self.kind, "delta": np.asarray(self.value).tolist()}
        return {"kind": self.kind, "value": self.value}

    @staticmethod
    def from_json_dict(data: Mapping) -> "DelayPattern":
        kind = data.get("kind")
        if kind == "explicit":
            return DelayPattern(kind, data["delta"])
        return DelayPattern(kind, data.get("value"))


DEFAULT_C_GRID = tuple(round(0.05 * i, 2) for i in range(1, 20))


@dataclass(frozen=True)
class ExperimentConfig:
    ensemble: str
    block_jacobi: bool
    n: int
    ell: int
    trials: int
    seed: int
    delay_pattern: DelayPattern
    c_grid: tuple[float, ...] = DEFAULT_C_GRID

    def __post_init__(self):
        if self.trials < 1:
            raise ValidationError("need at least one trial", trials=self.trials)
        if any(not 0 < c < 1 for c in self.c_grid):
            raise ValidationError("c values must lie in (0, 1)", c_grid=self.c_grid)

    def to_json_dict(self) -> dict:
        return {
            "ensemble": self.ensemble,
            "block_jacobi": self.block_jacobi,
            "n": self.n,
            "ell": self.ell,
            "trials": self.trials,
            "seed": self.seed,
            "delay_pattern": self.delay_pattern.to_json_dict(),
            "c_grid": list(self.c_grid),
        }

    @staticmethod
    def from_json_dict(data: Mapping) -> "ExperimentConfig":
        try:
            return ExperimentConfig(
                ensemble=str(data["ensemble"]),
                block_jacobi=bool(data.get("block_jacobi", False)),
                n=int(data.get("n", 16)),
                ell=int(data.get("ell", 4)),
                trials=int(data.get("trials", 50)),
                seed=int(data.get("seed", 0)),
                delay_pattern=DelayPattern.from_json_dict(data["delay_pattern"]),
                c_grid=tuple(data.get("c_grid", DEFAULT_C_GRID)),
            )
        except KeyError as exc:
            raise ValidationError(f"experiment config missing key {exc}") from exc


def _trial_seed(master: int, trial: int) -> int:
    """Counter-based per-trial seed; identical for serial and parallel runs."""
    ss = np.random.SeedSequence(entropy=master, spawn_key=(trial,))
    return int(ss.generate_state(1, dtype=np.uint64)[0])


def experiment_delays(cfg: ExperimentConfig) -> DelayMatrix:
    """The delay matrix of an experiment, drawn once from the master seed."""
    return cfg.delay_pattern.realize(cfg.ell, np.random.default_rng(cfg.seed))


def _run_trial(cfg: ExperimentConfig, delta: DelayMatrix, trial: int) -> list[dict]:
    seed = _trial_seed(cfg.seed, trial)
    M = sample_ensemble(cfg.ensemble, cfg.n, cfg.ell, seed)
    if cfg.block_jacobi:
        M = block_jacobi_matrix(M)
    kappa = delta.max_delay
    rows = []
    for c in cfg.c_grid:
        scaled = BlockMatrix(c * M.data, M.partition)
        rho = spectral_radius(build_companion(scaled, delta, kappa).matrix)
        bound = c ** (1.0 / (kappa + 1))
        rows.append({
            "ensemble": cfg.ensemble,
            "jacobi": "true" if cfg.block_jacobi else "false",
            "trial": trial,
            "seed": seed,
            "c": c,
            "rho": rho,
            "bound": bound,
        })
    return rows


def run_experiment(cfg: ExperimentConfig, workers: int = 1) -> list[dict]:
    """All (trial, c) rows; bit-identical output for any worker count.

    One delay matrix per experiment (drawn from the master seed), one
    ensemble sample per trial (counter-derived seeds).
    """
    delta = experiment_delays(cfg)
    if workers <= 1:
        chunks = [_run_trial(cfg, delta, t) for t in range(cfg.trials)]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(lambda t: _run_trial(cfg, delta, t),
                                   range(cfg.trials)))
    return [row for chunk in chunks for row in chunk]


def rows_to_csv(rows: Sequence[Mapping]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for row in rows:
        writer.writerow([
            row["ensemble"], row["jacobi"], row["trial"], row["seed"],
            repr(float(row["c"])), repr(float(row["rho"])), repr(float(row["bound"])),
        ])
    return buf.getvalue()
