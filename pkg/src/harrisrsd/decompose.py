"""Self-decomposable, Harris-ID and innovation factors of a transform.

For ``psi`` in both the SD and the Harris-ID class, and any ``c`` in
(0, 1], ``p`` in [0, 1), the innovation

    psi_{c,p}(t) = psi_c(t) * psi_p(c t)
    psi_c(t)     = psi(t) / psi(c t)
    psi_p(t)     = psi(t) / {p + (1-p) psi(t)^k}^(1/k)

satisfies ``psi(t) = psi_{c,p}(t) {p + (1-p) psi(c t)^k}^(1/k)``. For PGFs
``c t`` reads ``1 - c + c s``. The constructors below build these trees for
any input; whether they are genuine transforms is a question for
:mod:`harrisrsd.verify`.
"""

from __future__ import annotations

from dataclasses import dataclass

from .transforms import (
    CF, PGF, Blend, ConstantOne, Expr, GammaCF, HarrisCompose, NegBinPGF,
    Product, Ratio, linnik_cf, scale_argument,
)

__all__ = [
    "FactorizationParams", "sd_factor", "hid_factor", "hrsd_innovation",
    "harris_stable_scale", "hrsd_rhs", "gamma_law", "negbin_law",
    "gamma_sd_closed", "gamma_hid_closed", "negbin_sd_closed",
    "negbin_hid_closed", "closed_innovation", "harris_sum_stable_rhs",
    "family_law", "linnik_check_params",
]


@dataclass(frozen=True)
class FactorizationParams:
    c: float
    p: float
    k: int

    def __post_init__(self):
        if not 0 < self.c <= 1:
            raise ValueError(f"c must lie in (0, 1], got {self.c!r}")
        if not 0 <= self.p < 1:
            raise ValueError(f"p must lie in [0, 1), got {self.p!r}")
        if isinstance(self.k, bool) or int(self.k) != self.k or self.k < 1:
            raise ValueError(f"k must be a positive integer, got {self.k!r}")
        object.__setattr__(self, "k", int(self.k))

    @property
    def a(self) -> float | None:
        """Harris index ``1/p``; undefined when ``p == 0``."""
        return 1.0 / self.p if self.p > 0 else None


def sd_factor(psi: Expr, c: float) -> Expr:
    """``psi / psi(c .)``; identically one when ``c == 1``."""
    return Ratio(psi, scale_argument(psi, c))


def hid_factor(psi: Expr, p: float, k: int) -> Expr:
    """``psi / {p + (1-p) psi^k}^(1/k)``."""
    return Ratio(psi, Blend(psi, 1.0, p, k))


def hrsd_innovation(psi: Expr, params: FactorizationParams) -> Expr:
    return Product((sd_factor(psi, params.c),
                    scale_argument(hid_factor(psi, params.p, params.k), params.c)))


def hrsd_rhs(psi: Expr, params: FactorizationParams, innovation: Expr | None = None) -> Expr:
    """Right-hand side ``innovation * {p + (1-p) psi(c .)^k}^(1/k)``."""
    if innovation is None:
        innovation = hrsd_innovation(psi, params)
    return Product((innovation, Blend(psi, params.c, params.p, params.k)))


def harris_stable_scale(c: float, alpha: float) -> float:
    """Harris index ``a = c^(-alpha)`` under which the Linnik law is sum-stable.

    With ``u = |t|^alpha`` and ``psi = (1+u)^(-1/k)``,
    ``a - (a-1) psi(ct)^k = (1 + a c^alpha u) / (1 + c^alpha u)``, which
    collapses to ``(1+u)/(1 + c^alpha u)`` exactly when ``a c^alpha = 1``.
    """
    if not 0 < c < 1:
        raise ValueError(f"c must lie in (0, 1), got {c!r}")
    if not 0 < alpha <= 2:
        raise ValueError(f"alpha must lie in (0, 2], got {alpha!r}")
    return c ** (-alpha)


def harris_sum_stable_rhs(psi: Expr, c: float, a: float, k: int) -> Expr:
    """``psi(c .)`` summed over a Harris(a, k) number of terms."""
    return HarrisCompose(scale_argument(psi, c), a, k)


# closed forms for the shipped families ----------------------------------------


def gamma_law(k: int, lam: float) -> Expr:
    return GammaCF(1.0 / k, lam)


def negbin_law(k: int, lam: float) -> Expr:
    return NegBinPGF(1.0 / k, lam)


def family_law(family: str, k: int, lam: float) -> Expr:
    if family == "gamma":
        return gamma_law(k, lam)
    if family == "negbin":
        return negbin_law(k, lam)
    raise ValueError(f"unknown family {family!r}")


def gamma_sd_closed(k: int, lam: float, c: float) -> Expr:
    """``((1 - i c lam t) / (1 - i lam t))^(1/k)`` as a ratio of gamma CFs."""
    if c == 1:
        return ConstantOne(CF)
    return Ratio(GammaCF(1.0 / k, lam), GammaCF(1.0 / k, c * lam))


def gamma_hid_closed(k: int, lam: float, p: float) -> Expr:
    if p == 0:
        return ConstantOne(CF)
    return GammaCF(1.0 / k, p * lam)


def negbin_sd_closed(k: int, lam: float, c: float) -> Expr:
    if c == 1:
        return ConstantOne(PGF)
    return Ratio(NegBinPGF(1.0 / k, lam), NegBinPGF(1.0 / k, c * lam))


def negbin_hid_closed(k: int, lam: float, p: float) -> Expr:
    if p == 0:
        return ConstantOne(PGF)
    return NegBinPGF(1.0 / k, p * lam)


def closed_innovation(family: str, k: int, lam: float, c: float, p: float) -> Expr:
    """Innovation transform written with atoms only.

    Thinning ``NB(1/k, p lam)`` by ``c`` gives ``NB(1/k, p c lam)``, and
    scaling ``gamma(1/k, p lam)`` by ``c`` gives ``gamma(1/k, p c lam)``.
    """
    if family == "gamma":
        return Product((gamma_sd_closed(k, lam, c), gamma_hid_closed(k, c * lam, p)))
    if family == "negbin":
        return Product((negbin_sd_closed(k, lam, c), negbin_hid_closed(k, c * lam, p)))
    raise ValueError(f"unknown family {family!r}")


def linnik_check_params(alpha: float, k: int, c: float):
    """Linnik CF, ``a`` and the sum-stable right-hand side for one lattice point."""
    psi = linnik_cf(alpha, k)
    a = harris_stable_scale(c, alpha)
    return psi, a, harris_sum_stable_rhs(psi, c, a, k)

