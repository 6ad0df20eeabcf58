"""Random variate generation for the Harris, gamma, negative binomial and
Linnik families and for the innovations of their autoregressive models.

All samplers are vectorized: pass ``size`` to get an array, leave it as
``None`` to get a scalar. Randomness comes from :class:`RngStream`, a
Philox counter-based generator keyed by ``(seed, stream_id)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .transforms import (
    CF, PGF, ConstantOne, Expr, GammaCF, GeometricPGF, HarrisPGF, NegBinPGF,
    PoissonPGF, StableSymCF, linnik_cf,
)

__all__ = [
    "RngStream", "SamplerSpec", "LAWS", "sample_basic", "sample_gamma",
    "sample_poisson", "sample_negbin", "sample_geometric", "sample_harris",
    "sample_stable_sym", "sample_linnik", "sample_gamma_sd_innovation",
    "sample_nb_dsd_innovation", "sample_hrsd_innovation", "binomial_thin",
    "sample_from_coeffs", "CoefficientError",
]


class CoefficientError(ValueError):
    """A coefficient series cannot be used as a probability mass function."""


class RngStream:
    """Deterministic random stream for one ``(seed, stream_id)`` pair.

    The key is derived with :class:`numpy.random.SeedSequence` using the
    stream id as spawn key, and drives a Philox-4x64 counter-based bit
    generator. Different stream ids give independent streams by
    construction; the same pair always reproduces the same variates.
    """

    def __init__(self, seed: int, stream_id: int = 0):
        if not (0 <= int(seed) < 2**64 and 0 <= int(stream_id) < 2**64):
            raise ValueError("seed and stream_id must be unsigned 64-bit integers")
        self.seed = int(seed)
        self.stream_id = int(stream_id)
        ss = np.random.SeedSequence(self.seed, spawn_key=(self.stream_id,))
        self.generator = np.random.Generator(np.random.Philox(ss))

    def child(self, stream_id: int) -> "RngStream":
        """Fresh stream with the same seed and another id."""
        return RngStream(self.seed, stream_id)

    def __repr__(self):
        return f"RngStream(seed={self.seed}, stream_id={self.stream_id})"


def _gen(rng) -> np.random.Generator:
    if isinstance(rng, RngStream):
        return rng.generator
    if isinstance(rng, np.random.Generator):
        return rng
    raise TypeError("rng must be an RngStream or numpy Generator")


def _scalar(x, size):
    if size is None:
        return x.item() if isinstance(x, np.ndarray) else x
    return x


def _check_k(k):
    if isinstance(k, bool) or int(k) != k or k < 1:
        raise ValueError(f"k must be a positive integer, got {k!r}")
    return int(k)


def _check_positive(**kw):
    for name, v in kw.items():
        if not (v > 0 and math.isfinite(v)):
            raise ValueError(f"{name} must be positive and finite, got {v!r}")


def _check_c(c, closed_zero=False):
    lo_ok = c >= 0 if closed_zero else c > 0
    if not (lo_ok and c <= 1):
        raise ValueError(f"c out of range: {c!r}")


def _check_p(p):
    if not 0 <= p < 1:
        raise ValueError(f"p must lie in [0, 1), got {p!r}")


# basic laws -----------------------------------------------------------------


def sample_gamma(shape, scale, rng, size=None):
    """Gamma variates with CF ``(1 - i scale t)^(-shape)``."""
    _check_positive(shape=shape, scale=scale)
    return _scalar(_gen(rng).gamma(shape, scale, size), size)


def sample_poisson(mean, rng, size=None):
    if not (mean >= 0 and math.isfinite(mean)):
        raise ValueError(f"mean must be nonnegative, got {mean!r}")
    return _scalar(np.asarray(_gen(rng).poisson(mean, size), dtype=np.int64), size)


def sample_negbin(shape, scale, rng, size=None):
    """Negative binomial with PGF ``(1 + scale (1-s))^(-shape)``.

    Drawn as Poisson counts with gamma(shape, scale) distributed means.
    """
    _check_positive(shape=shape, scale=scale)
    g = _gen(rng)
    lam = g.gamma(shape, scale, size)
    return _scalar(np.asarray(g.poisson(lam), dtype=np.int64), size)


def sample_geometric(q, rng, size=None):
    """Failures before the first success, success probability ``q``."""
    if not 0 < q < 1:
        raise ValueError(f"q must lie in (0, 1), got {q!r}")
    return _scalar(np.asarray(_gen(rng).geometric(q, size), dtype=np.int64) - 1, size)


def sample_basic(law: str, rng, size=None, **params):
    """Dispatch for the four building-block laws by name."""
    if law == "gamma":
        return sample_gamma(params["alpha"], params["lam"], rng, size)
    if law == "poisson":
        return sample_poisson(params["mu"], rng, size)
    if law == "negbin":
        return sample_negbin(params["r"], params["theta"], rng, size)
    if law == "geometric":
        return sample_geometric(params["q"], rng, size)
    raise ValueError(f"unknown basic law {law!r}")


def sample_harris(a, k, rng, size=None):
    """Harris(a, k) as ``1 + k M`` with ``M ~ NB(1/k, a - 1)``.

    ``E s^(1 + kM) = s (1 + (a-1)(1 - s^k))^(-1/k)``, which is the Harris
    PGF. Mean ``a``, variance ``k a (a - 1)``.
    """
    if not (a > 1 and math.isfinite(a)):
        raise ValueError(f"a must be greater than 1, got {a!r}")
    k = _check_k(k)
    m = sample_negbin(1.0 / k, a - 1.0, rng, size)
    return 1 + k * m


def sample_stable_sym(alpha, rng, size=None):
    """Chambers-Mallows-Stuck draws with CF ``exp(-|t|^alpha)``.

    With ``V`` uniform on (-pi/2, pi/2) and ``W`` standard exponential,

        X = sin(alpha V) / cos(V)^(1/alpha) * (cos((1-alpha) V) / W)^((1-alpha)/alpha)

    which reduces to ``tan V`` (Cauchy) at ``alpha = 1`` and to
    ``2 sqrt(W) sin V`` (normal with variance 2) at ``alpha = 2``.
    """
    if not 0 < alpha <= 2:
        raise ValueError(f"alpha must lie in (0, 2], got {alpha!r}")
    g = _gen(rng)
    v = (g.random(size) - 0.5) * np.pi
    w = g.standard_exponential(size)
    if alpha == 2:
        x = 2.0 * np.sqrt(w) * np.sin(v)
    elif alpha == 1:
        x = np.tan(v)
    else:
        x = (np.sin(alpha * v) / np.cos(v) ** (1.0 / alpha)
             * (np.cos((1.0 - alpha) * v) / w) ** ((1.0 - alpha) / alpha))
    return _scalar(x, size)


def sample_linnik(alpha, k, rng, size=None):
    """Generalized Linnik draws: ``G^(1/alpha) S`` with ``G ~ gamma(1/k, 1)``.

    ``E exp(-G |t|^alpha) = (1 + |t|^alpha)^(-1/k)``.
    """
    k = _check_k(k)
    g = sample_gamma(1.0 / k, 1.0, rng, size)
    s = sample_stable_sym(alpha, rng, size)
    return g ** (1.0 / alpha) * s


# innovations --------------------------------------------------------------


def _compound_sum(counts: np.ndarray, jumps: np.ndarray) -> np.ndarray:
    owner = np.repeat(np.arange(counts.size), counts)
    return np.bincount(owner, weights=jumps, minlength=counts.size)


def sample_gamma_sd_innovation(k, lam, c, rng, size=None):
    """Draws with CF ``((1 - i c lam t) / (1 - i lam t))^(1/k)``.

    Compound Poisson with rate ``ln(1/c) / k``; each jump is an exponential
    with random scale ``lam c^U``, ``U`` uniform on (0, 1). The Levy density
    ``(e^(-x/lam) - e^(-x/(c lam))) / (k x)`` is exactly this scale mixture.
    """
    k = _check_k(k)
    _check_positive(lam=lam)
    _check_c(c)
    g = _gen(rng)
    n = 1 if size is None else int(np.prod(size))
    counts = g.poisson(math.log(1.0 / c) / k, n)
    total = int(counts.sum())
    jumps = g.standard_exponential(total) * lam * c ** g.random(total)
    out = _compound_sum(counts, jumps)
    if size is None:
        return float(out[0])
    return out.reshape(size)


def sample_nb_dsd_innovation(k, lam, c, rng, size=None):
    """Draws with PGF ``((1 + c lam (1-s)) / (1 + lam (1-s)))^(1/k)``.

    Writing ``q = lam/(1+lam)`` and ``q_c = c lam/(1+c lam)``, the log-PGF
    is ``sum_n (q^n - q_c^n)(s^n - 1) / (k n)``. Jumps therefore have mass
    proportional to ``(q^n - q_c^n)/n = int_{q_c}^{q} u^(n-1) du``: a
    shifted geometric whose parameter ``u`` has density proportional to
    ``1/(1-u)`` on ``[q_c, q]``, sampled by inverting its CDF.
    """
    k = _check_k(k)
    _check_positive(lam=lam)
    _check_c(c)
    g = _gen(rng)
    n = 1 if size is None else int(np.prod(size))
    rate = math.log((1.0 + lam) / (1.0 + c * lam)) / k
    counts = g.poisson(rate, n)
    total = int(counts.sum())
    q = lam / (1.0 + lam)
    qc = c * lam / (1.0 + c * lam)
    w = g.random(total)
    one_minus_u = (1.0 - qc) ** (1.0 - w) * (1.0 - q) ** w
    jumps = g.geometric(one_minus_u)
    out = _compound_sum(counts, jumps).astype(np.int64)
    if size is None:
        return int(out[0])
    return out.reshape(size)


def sample_hrsd_innovation(family, k, lam, c, p, rng, size=None):
    """Innovation of the Harris random-coefficient AR(1)/INAR(1) models.

    Independent sum of the SD innovation and a ``(1/k, p c lam)`` gamma
    (continuous) or negative binomial (discrete) term; the second term is
    absent when ``p c lam`` is zero, including when it underflows.
    """
    _check_p(p)
    if family == "gamma":
        x = sample_gamma_sd_innovation(k, lam, c, rng, size)
        if p * c * lam > 0:
            x = x + sample_gamma(1.0 / k, p * c * lam, rng, size)
        return x
    if family == "negbin":
        x = sample_nb_dsd_innovation(k, lam, c, rng, size)
        if p * c * lam > 0:
            x = x + sample_negbin(1.0 / k, p * c * lam, rng, size)
        return x
    raise ValueError(f"unknown family {family!r}")


def binomial_thin(y, c, rng):
    """``c`` thinning of nonnegative integer counts ``y`` (scalar or array)."""
    _check_c(c, closed_zero=True)
    y_arr = np.asarray(y)
    if np.any(y_arr < 0):
        raise ValueError("thinning needs nonnegative counts")
    out = _gen(rng).binomial(y_arr.astype(np.int64), c)
    if np.ndim(y) == 0:
        return int(out)
    return out.astype(np.int64)


def sample_from_coeffs(coeffs, rng, size=None, neg_tol: float = 1e-9,
                       max_deficit: float = 1e-9):
    """Inverse-CDF draws from a truncated probability mass function.

    ``coeffs`` may be an array or any object with a ``coefficients``
    attribute. Entries above ``-neg_tol`` are clipped to zero; a total mass
    short of one by ``max_deficit`` or more is rejected as under-truncated.
    """
    arr = np.asarray(getattr(coeffs, "coefficients", coeffs), dtype=float)
    if arr.ndim != 1 or arr.size == 0 or not np.all(np.isfinite(arr)):
        raise CoefficientError("coefficients must be a finite non-empty vector")
    if arr.min() < -neg_tol:
        raise CoefficientError(
            f"negative coefficient {arr.min():.3g} at index {int(arr.argmin())}")
    arr = np.clip(arr, 0.0, None)
    total = arr.sum()
    if 1.0 - total >= max_deficit:
        raise CoefficientError(f"series under-truncated: missing mass {1.0 - total:.3g}")
    if total - 1.0 > 1e-8:
        raise CoefficientError(f"series mass {total!r} exceeds one")
    cdf = np.cumsum(arr) / total
    u = _gen(rng).random(size)
    idx = np.minimum(np.searchsorted(cdf, u, side="right"), arr.size - 1)
    if size is None:
        return int(idx)
    return idx.astype(np.int64)


# declarative specs ------------------------------------------------------------

LAWS = (
    "gamma", "poisson", "negbin", "geometric", "harris", "stable_sym",
    "linnik", "gamma_sd_innov", "nb_dsd_innov", "gamma_hrsd_innov",
    "nb_dhrsd_innov", "from_coeffs",
)

_REQUIRED = {
    "gamma": ("alpha", "lam"),
    "poisson": ("mu",),
    "negbin": ("r", "theta"),
    "geometric": ("q",),
    "harris": ("a", "k"),
    "stable_sym": ("alpha",),
    "linnik": ("alpha", "k"),
    "gamma_sd_innov": ("k", "lam", "c"),
    "nb_dsd_innov": ("k", "lam", "c"),
    "gamma_hrsd_innov": ("k", "lam", "c", "p"),
    "nb_dhrsd_innov": ("k", "lam", "c", "p"),
    "from_coeffs": ("coeffs",),
}


@dataclass(frozen=True)
class SamplerSpec:
    """A law tag plus its parameters; ``draw`` dispatches to the sampler."""

    law: str
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.law not in _REQUIRED:
            raise ValueError(f"unknown law {self.law!r}; choose from {', '.join(LAWS)}")
        missing = [n for n in _REQUIRED[self.law] if n not in self.params]
        if missing:
            raise ValueError(f"law {self.law!r} needs parameters: {', '.join(missing)}")

    @property
    def discrete(self) -> bool:
        return self.law in ("poisson", "negbin", "geometric", "harris",
                            "nb_dsd_innov", "nb_dhrsd_innov", "from_coeffs")

    def draw(self, rng, size=None):
        p = self.params
        law = self.law
        if law in ("gamma", "poisson", "negbin", "geometric"):
            return sample_basic(law, rng, size, **p)
        if law == "harris":
            return sample_harris(p["a"], p["k"], rng, size)
        if law == "stable_sym":
            return sample_stable_sym(p["alpha"], rng, size)
        if law == "linnik":
            return sample_linnik(p["alpha"], p["k"], rng, size)
        if law == "gamma_sd_innov":
            return sample_gamma_sd_innovation(p["k"], p["lam"], p["c"], rng, size)
        if law == "nb_dsd_innov":
            return sample_nb_dsd_innovation(p["k"], p["lam"], p["c"], rng, size)
        if law == "gamma_hrsd_innov":
            return sample_hrsd_innovation("gamma", p["k"], p["lam"], p["c"], p["p"], rng, size)
        if law == "nb_dhrsd_innov":
            return sample_hrsd_innovation("negbin", p["k"], p["lam"], p["c"], p["p"], rng, size)
        return sample_from_coeffs(p["coeffs"], rng, size)

    def transform(self) -> Expr:
        """The CF or PGF tree that this law is supposed to have."""
        from .decompose import (
            FactorizationParams, family_law, hrsd_innovation, sd_factor,
        )

        p = self.params
        law = self.law
        if law == "gamma":
            return GammaCF(p["alpha"], p["lam"])
        if law == "poisson":
            return PoissonPGF(p["mu"])
        if law == "negbin":
            return NegBinPGF(p["r"], p["theta"])
        if law == "geometric":
            return GeometricPGF(p["q"])
        if law == "harris":
            return HarrisPGF(p["a"], p["k"])
        if law == "stable_sym":
            return StableSymCF(p["alpha"])
        if law == "linnik":
            return linnik_cf(p["alpha"], p["k"])
        if law in ("gamma_sd_innov", "nb_dsd_innov"):
            fam = "gamma" if law.startswith("gamma") else "negbin"
            if p["c"] == 1:
                return ConstantOne(CF if fam == "gamma" else PGF)
            return sd_factor(family_law(fam, p["k"], p["lam"]), p["c"])
        if law in ("gamma_hrsd_innov", "nb_dhrsd_innov"):
            fam = "gamma" if law.startswith("gamma") else "negbin"
            prm = FactorizationParams(p["c"], p["p"], p["k"])
            return hrsd_innovation(family_law(fam, p["k"], p["lam"]), prm)
        raise ValueError("coefficient-defined laws have no closed transform tree")
