"""k-component random-coefficient AR(1) and INAR(1) chains.

Each chain carries ``k`` components. At every step one Bernoulli(p)
selector is drawn and shared by all components of that chain:

    selected:      Y[n, i] = eps[n, i]
    not selected:  Y[n, i] = c . Y[n-1, i] + eps[n, i]

where ``c .`` is multiplication (gamma family) or binomial thinning
(negative binomial family). Sharing the selector is what makes the
aggregate ``X[n] = sum_i Y[n, i]`` satisfy

    psi_X(t) = psi_eps(t)^k {p + (1-p) psi_X(c t)}

so that, with ``psi_X = psi^k``, the stationary component transform obeys
``psi(t) = psi_eps(t) {p + (1-p) psi(c t)^k}^(1/k)``. Independent
selectors per component would instead give the ``k = 1`` equation for each
component and a different stationary law.

The engine is batched: one call advances ``m`` independent chains.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import asdict, dataclass, fields

import numpy as np

from .samplers import (
    RngStream, _gen, binomial_thin, sample_gamma, sample_hrsd_innovation,
    sample_negbin,
)

__all__ = [
    "ModelConfig", "Trajectory", "step", "initial_state", "simulate",
    "simulate_ar", "simulate_inar", "replicate_marginal",
    "DEFAULT_BURN_IN", "REPLICATE_BLOCK",
]

DEFAULT_BURN_IN = 200
REPLICATE_BLOCK = 8192


@dataclass(frozen=True)
class ModelConfig:
    family: str = "gamma"
    k: int = 1
    c: float = 0.5
    p: float = 0.0
    lam: float = 1.0
    T: int = 100
    B: int | None = None
    R: int = 1
    seed: int = 0
    init: str = "stationary"

    def __post_init__(self):
        if self.family not in ("gamma", "negbin"):
            raise ValueError(f"family must be 'gamma' or 'negbin', got {self.family!r}")
        for name in ("k", "T", "R"):
            v = getattr(self, name)
            if isinstance(v, bool) or int(v) != v or v < 1:
                raise ValueError(f"{name} must be a positive integer, got {v!r}")
            object.__setattr__(self, name, int(v))
        if self.B is not None:
            if isinstance(self.B, bool) or int(self.B) != self.B or self.B < 0:
                raise ValueError(f"B must be a nonnegative integer, got {self.B!r}")
            object.__setattr__(self, "B", int(self.B))
        if not 0 < self.c <= 1:
            raise ValueError(f"c must lie in (0, 1], got {self.c!r}")
        if not 0 <= self.p < 1:
            raise ValueError(f"p must lie in [0, 1), got {self.p!r}")
        if not self.lam > 0:
            raise ValueError(f"lam must be positive, got {self.lam!r}")
        if not 0 <= int(self.seed) < 2**64:
            raise ValueError("seed must be an unsigned 64-bit integer")
        if self.init not in ("stationary", "zero"):
            raise ValueError(f"init must be 'stationary' or 'zero', got {self.init!r}")

    @property
    def burn_in(self) -> int:
        if self.B is not None:
            return self.B
        return DEFAULT_BURN_IN if self.init == "zero" else 0

    @property
    def discrete(self) -> bool:
        return self.family == "negbin"

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> "ModelConfig":
        known = {f.name for f in fields(cls)}
        unknown = set(d) - known
        if unknown:
            raise ValueError(f"unknown config keys: {', '.join(sorted(unknown))}")
        return cls(**d)

    @classmethod
    def from_json(cls, text: str) -> "ModelConfig":
        return cls.from_dict(json.loads(text))


@dataclass
class Trajectory:
    """Component matrix ``Y`` (rows n = 0..T), aggregate ``X`` and selectors ``b``.

    ``b[0]`` is 0 by convention: the initial row is not produced by a step.
    """

    Y: np.ndarray
    X: np.ndarray
    b: np.ndarray

    @property
    def k(self) -> int:
        return self.Y.shape[1]

    def to_csv(self, fh=None) -> str | None:
        out = fh if fh is not None else io.StringIO()
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["n", "b"] + [f"Y_{i + 1}" for i in range(self.k)] + ["X"])
        for n in range(self.X.size):
            w.writerow([n, int(self.b[n])] + [_fmt(v) for v in self.Y[n]] + [_fmt(self.X[n])])
        return out.getvalue() if fh is None else None


def _fmt(v):
    if isinstance(v, (np.integer, int)):
        return str(int(v))
    return repr(float(v))


def initial_state(config: ModelConfig, rng, m: int) -> np.ndarray:
    k = config.k
    if config.init == "zero":
        return np.zeros((m, k), dtype=np.int64 if config.discrete else float)
    if config.discrete:
        return sample_negbin(1.0 / k, config.lam, rng, (m, k))
    return sample_gamma(1.0 / k, config.lam, rng, (m, k))


def step(config: ModelConfig, y_prev: np.ndarray, rng):
    """Advance a batch of chains by one step.

    Parameters
    ----------
    y_prev : ndarray, shape (m, k)
        Components at time n - 1.
    rng : RngStream or numpy Generator

    Returns
    -------
    y : ndarray, shape (m, k)
    b : ndarray of bool, shape (m,)
        Selector; True where the chain restarted from the innovation alone.
    """
    m, k = y_prev.shape
    g = _gen(rng)
    b = g.random(m) < config.p
    eps = sample_hrsd_innovation(config.family, k, config.lam, config.c, config.p, g, (m, k))
    if config.discrete:
        carried = binomial_thin(y_prev, config.c, g)
    else:
        carried = config.c * y_prev
    y = np.where(b[:, None], eps, carried + eps)
    return y, b


def _run(config: ModelConfig, rng, m: int, steps: int, record: bool):
    y = initial_state(config, rng, m)
    for _ in range(config.burn_in):
        y, _ = step(config, y, rng)
    if not record:
        for _ in range(steps):
            y, _ = step(config, y, rng)
        return y
    ys = [y]
    bs = [np.zeros(m, dtype=bool)]
    for _ in range(steps):
        y, b = step(config, y, rng)
        ys.append(y)
        bs.append(b)
    return np.stack(ys, axis=1), np.stack(bs, axis=1)


def simulate(config: ModelConfig, stream_id: int = 0) -> Trajectory:
    rng = RngStream(config.seed, stream_id)
    Y, b = _run(config, rng, 1, config.T, record=True)
    Y = Y[0]
    return Trajectory(Y=Y, X=Y.sum(axis=1), b=b[0].astype(np.int8))


def simulate_ar(config: ModelConfig, stream_id: int = 0) -> Trajectory:
    """Continuous chain driven by gamma-family innovations."""
    if config.family != "gamma":
        raise ValueError("simulate_ar needs family='gamma'")
    return simulate(config, stream_id)


def simulate_inar(config: ModelConfig, stream_id: int = 0) -> Trajectory:
    """Integer-valued chain with binomial thinning and negative binomial innovations."""
    if config.family != "negbin":
        raise ValueError("simulate_inar needs family='negbin'")
    return simulate(config, stream_id)


def replicate_marginal(config: ModelConfig, observe_time: int | None = None,
                       block: int = REPLICATE_BLOCK) -> np.ndarray:
    """Aggregate ``X[observe_time]`` from ``config.R`` independent chains.

    Chains are advanced in blocks of ``block``; block ``j`` uses stream id
    ``j``, so a single replicate reproduces :func:`simulate` exactly.
    """
    if observe_time is None:
        observe_time = config.T
    if not 0 <= observe_time <= config.T:
        raise ValueError(f"observe_time must lie in [0, {config.T}]")
    out = []
    done = 0
    j = 0
    while done < config.R:
        m = min(block, config.R - done)
        y = _run(config, RngStream(config.seed, j), m, observe_time, record=False)
        out.append(y.sum(axis=1))
        done += m
        j += 1
    return np.concatenate(out)
