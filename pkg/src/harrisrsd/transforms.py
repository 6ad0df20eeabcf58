"""Characteristic functions and probability generating functions as trees.

Expressions are small immutable trees built from atoms (gamma, symmetric
stable, negative binomial, Poisson, geometric, Harris, finite-support laws)
and combinators (argument scaling, binomial thinning, powers, products,
ratios, Harris random sums, blends, and the ``(1 - log h)^{-1/k}`` map).

Evaluation always walks a path that starts at the anchor point (``t = 0``
for a CF, ``s = 1`` for a PGF) where every transform equals one. Whenever a
node takes a non-integer power or a logarithm of a complex quantity, the
phase of that quantity is unwrapped along the path; segments over which the
wrapped phase jumps by more than pi/2 are bisected and the whole tree is
re-evaluated on the refined path.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

import numpy as np

__all__ = [
    "CF", "PGF", "BranchTrackingError", "EvalGrid", "Expr",
    "ConstantOne", "GammaCF", "StableSymCF", "NegBinPGF", "PoissonPGF",
    "GeometricPGF", "HarrisPGF", "PolynomialPGF",
    "ScaleArg", "Thin", "Power", "Product", "Ratio", "HarrisCompose",
    "Blend", "LogSeed",
    "cf_eval", "pgf_eval", "evaluate", "harris_compose", "hid_from_id",
    "thin_substitute", "scale_argument", "blend", "linnik_cf",
    "standard_cf_grid", "standard_pgf_grid", "to_json", "from_json",
    "to_dict", "from_dict",
]

CF = "cf"
PGF = "pgf"

DEFAULT_REFINE_LIMIT = 30

# moduli below this are treated as zeros of the base; their phase is meaningless
_TINY = 1e-300


class BranchTrackingError(ArithmeticError):
    """Phase unwrapping did not settle within the refinement limit."""


# ---------------------------------------------------------------------------
# grids and the continuation machinery


@dataclass(frozen=True)
class EvalGrid:
    """Strictly increasing real abscissae containing the anchor.

    For a CF grid the anchor is 0; for a PGF grid it is 1 and all points
    lie in ``[0, 1]``.
    """

    points: tuple
    refine_limit: int = DEFAULT_REFINE_LIMIT
    anchor: float = 0.0

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float)
        if pts.ndim != 1 or pts.size == 0:
            raise ValueError("grid must be a non-empty 1-d sequence")
        if not np.all(np.isfinite(pts)):
            raise ValueError("grid points must be finite")
        if np.any(np.diff(pts) <= 0):
            raise ValueError("grid must be strictly increasing")
        if self.anchor not in pts:
            raise ValueError(f"grid must contain the anchor {self.anchor}")
        if self.anchor == 1.0 and (pts[0] < 0 or pts[-1] > 1):
            raise ValueError("PGF grid points must lie in [0, 1]")
        if int(self.refine_limit) < 1:
            raise ValueError("refine_limit must be a positive integer")
        object.__setattr__(self, "points", tuple(float(x) for x in pts))

    @property
    def array(self) -> np.ndarray:
        return np.asarray(self.points, dtype=float)

    def __len__(self):
        return len(self.points)

    def refined(self) -> "EvalGrid":
        """Grid with every spacing halved."""
        pts = self.array
        mids = 0.5 * (pts[:-1] + pts[1:])
        both = np.empty(2 * pts.size - 1)
        both[0::2] = pts
        both[1::2] = mids
        return EvalGrid(tuple(both), self.refine_limit, self.anchor)


def standard_cf_grid(n: int = 201, half_width: float = 10.0,
                     refine_limit: int = DEFAULT_REFINE_LIMIT) -> EvalGrid:
    """Odd-sized symmetric grid on ``[-half_width, half_width]``."""
    if n % 2 == 0:
        raise ValueError("n must be odd so that 0 is a grid point")
    pts = np.linspace(-half_width, half_width, n)
    pts[n // 2] = 0.0
    return EvalGrid(tuple(pts), refine_limit, 0.0)


def standard_pgf_grid(n: int = 101,
                      refine_limit: int = DEFAULT_REFINE_LIMIT) -> EvalGrid:
    return EvalGrid(tuple(np.linspace(0.0, 1.0, n)), refine_limit, 1.0)


class _Trace:
    """Collects path segments whose phase moved too fast."""

    __slots__ = ("flags",)

    def __init__(self):
        self.flags: set[int] = set()


def _continuous_log(w, trace: _Trace) -> np.ndarray:
    """Logarithm of ``w`` continued along the path from its first entry."""
    w = np.asarray(w, dtype=complex)
    mod = np.abs(w)
    ang = np.angle(w)
    if w.size < 2:
        with np.errstate(divide="ignore"):
            return np.log(mod) + 1j * ang
    step = np.diff(ang)
    step = (step + np.pi) % (2.0 * np.pi) - np.pi
    fast = np.abs(step) > 0.5 * np.pi
    if fast.any():
        live = (mod[:-1] > _TINY) & (mod[1:] > _TINY)
        trace.flags.update(np.flatnonzero(fast & live).tolist())
    theta = ang[0] + np.concatenate(([0.0], np.cumsum(step)))
    # snap to principal angle plus a whole number of turns to stop cumsum drift
    turns = np.round((theta - ang) / (2.0 * np.pi))
    theta = ang + 2.0 * np.pi * turns
    with np.errstate(divide="ignore"):
        return np.log(mod) + 1j * theta


def _power_term(child: "Expr", z, k: int, trace: _Trace) -> np.ndarray:
    """``child(z)^k`` from the child's continuous log.

    Segments where this term turns by more than a quarter turn are flagged
    here, since a bracket built from it can wind fast enough for its own
    phase steps to alias.
    """
    if k == 1:
        return np.asarray(child._eval(z, trace), dtype=complex)
    lk = k * np.asarray(child._log(z, trace), dtype=complex)
    if lk.size > 1:
        fast = np.abs(np.diff(lk.imag)) > 0.5 * np.pi
        if fast.any():
            trace.flags.update(np.flatnonzero(fast).tolist())
    return np.exp(lk)


def _root(w, k: int, trace: _Trace, sign: int = 1) -> np.ndarray:
    """``w ** (sign / k)`` on the branch continued from the path start."""
    if k == 1:
        return w if sign == 1 else 1.0 / w
    return np.exp(sign * _continuous_log(w, trace) / k)


def _walk(expr: "Expr", path: np.ndarray, limit: int) -> np.ndarray:
    """Evaluate along ``path``, bisecting until the branch is stable.

    A pass is accepted only when no segment turned by more than a quarter
    turn and a pass on the fully bisected path agrees with it, which catches
    segments whose phase step aliases to a small angle.
    """
    keep = np.arange(path.size)
    prev = None
    for _ in range(limit + 1):
        trace = _Trace()
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            vals = np.asarray(expr._eval(path, trace), dtype=complex)
        if vals.shape != path.shape:
            vals = np.broadcast_to(vals, path.shape).astype(complex)
        if trace.flags:
            seg = np.array(sorted(trace.flags))
            prev = None
        else:
            if prev is not None and np.allclose(vals[prev[0]], prev[1], rtol=1e-9, atol=1e-12):
                return vals[keep]
            seg = np.arange(path.size - 1)
            prev = (None, vals)
        mids = 0.5 * (path[seg] + path[seg + 1])
        shift = lambda idx: idx + np.searchsorted(seg + 1, idx, side="right")
        if prev is not None:
            prev = (shift(np.arange(path.size)), prev[1])
        keep = shift(keep)
        path = np.insert(path, seg + 1, mids)
    raise BranchTrackingError(
        f"phase unwrapping needed more than {limit} bisection rounds; "
        "the transform winds too fast for this grid")


# ---------------------------------------------------------------------------
# expression nodes


def _check_k(k) -> int:
    if isinstance(k, bool) or int(k) != k or k < 1:
        raise ValueError(f"k must be a positive integer, got {k!r}")
    return int(k)


def _check_pos(name, x) -> float:
    x = float(x)
    if not (x > 0 and math.isfinite(x)):
        raise ValueError(f"{name} must be positive and finite, got {x!r}")
    return x


def _check_c(c) -> float:
    c = float(c)
    if not 0 < c <= 1:
        raise ValueError(f"c must lie in (0, 1], got {c!r}")
    return c


def _check_p(p) -> float:
    p = float(p)
    if not 0 <= p < 1:
        raise ValueError(f"p must lie in [0, 1), got {p!r}")
    return p


def _check_a(a) -> float:
    a = float(a)
    if not (a > 1 and math.isfinite(a)):
        raise ValueError(f"a must be greater than 1, got {a!r}")
    return a


class Expr:
    """Base class for transform trees.

    Subclasses implement ``_eval`` (values along a path) and may override
    ``_log`` (a logarithm continuous along the path) when a closed form is
    available. The default ``_log`` unwraps the phase of ``_eval``.
    """

    domain: str = CF

    def _eval(self, z, trace):  # pragma: no cover - abstract
        raise NotImplementedError

    def _log(self, z, trace):
        return _continuous_log(self._eval(z, trace), trace)

    @property
    def children(self) -> tuple:
        return ()

    def params(self) -> dict:
        return {}

    def __call__(self, x, refine_limit: int = DEFAULT_REFINE_LIMIT):
        return evaluate(self, x, refine_limit)


# atoms ---------------------------------------------------------------------


@dataclass(frozen=True)
class ConstantOne(Expr):
    kind: str = CF

    def __post_init__(self):
        if self.kind not in (CF, PGF):
            raise ValueError(f"unknown domain {self.kind!r}")

    @property
    def domain(self):
        return self.kind

    def _eval(self, z, trace):
        return np.ones(np.shape(z), dtype=complex)

    def _log(self, z, trace):
        return np.zeros(np.shape(z), dtype=complex)

    def params(self):
        return {"kind": self.kind}


@dataclass(frozen=True)
class GammaCF(Expr):
    """CF ``(1 - i scale t)^(-shape)``."""

    shape: float
    scale: float
    domain = CF

    def __post_init__(self):
        object.__setattr__(self, "shape", _check_pos("shape", self.shape))
        object.__setattr__(self, "scale", _check_pos("scale", self.scale))

    def _log(self, z, trace):
        # 1 - i*scale*t has positive real part, so the principal log is continuous
        return -self.shape * np.log(1.0 - 1j * self.scale * np.asarray(z))

    def _eval(self, z, trace):
        return np.exp(self._log(z, trace))

    def params(self):
        return {"shape": self.shape, "scale": self.scale}


@dataclass(frozen=True)
class StableSymCF(Expr):
    """Symmetric stable CF ``exp(-|t|^alpha)``."""

    alpha: float
    domain = CF

    def __post_init__(self):
        a = float(self.alpha)
        if not 0 < a <= 2:
            raise ValueError(f"alpha must lie in (0, 2], got {a!r}")
        object.__setattr__(self, "alpha", a)

    def _log(self, z, trace):
        return (-np.abs(np.real(z)) ** self.alpha).astype(complex)

    def _eval(self, z, trace):
        return np.exp(self._log(z, trace))

    def params(self):
        return {"alpha": self.alpha}


@dataclass(frozen=True)
class NegBinPGF(Expr):
    """PGF ``(1 + scale (1 - s))^(-shape)``."""

    shape: float
    scale: float
    domain = PGF

    def __post_init__(self):
        object.__setattr__(self, "shape", _check_pos("shape", self.shape))
        object.__setattr__(self, "scale", _check_pos("scale", self.scale))

    def _log(self, z, trace):
        return -self.shape * np.log(1.0 + self.scale * (1.0 - np.asarray(z, dtype=complex)))

    def _eval(self, z, trace):
        return np.exp(self._log(z, trace))

    def params(self):
        return {"shape": self.shape, "scale": self.scale}


@dataclass(frozen=True)
class PoissonPGF(Expr):
    mean: float
    domain = PGF

    def __post_init__(self):
        object.__setattr__(self, "mean", _check_pos("mean", self.mean))

    def _log(self, z, trace):
        return self.mean * (np.asarray(z, dtype=complex) - 1.0)

    def _eval(self, z, trace):
        return np.exp(self._log(z, trace))

    def params(self):
        return {"mean": self.mean}


@dataclass(frozen=True)
class GeometricPGF(Expr):
    """Geometric law on ``{0, 1, ...}`` with success probability ``q``."""

    q: float
    domain = PGF

    def __post_init__(self):
        q = float(self.q)
        if not 0 < q < 1:
            raise ValueError(f"q must lie in (0, 1), got {q!r}")
        object.__setattr__(self, "q", q)

    def _eval(self, z, trace):
        return self.q / (1.0 - (1.0 - self.q) * np.asarray(z, dtype=complex))

    def _log(self, z, trace):
        return math.log(self.q) - np.log(1.0 - (1.0 - self.q) * np.asarray(z, dtype=complex))

    def params(self):
        return {"q": self.q}


@dataclass(frozen=True)
class HarrisPGF(Expr):
    """Harris(a, k) law on ``{1, 1+k, 1+2k, ...}``."""

    a: float
    k: int
    domain = PGF

    def __post_init__(self):
        object.__setattr__(self, "a", _check_a(self.a))
        object.__setattr__(self, "k", _check_k(self.k))

    def _eval(self, z, trace):
        z = np.asarray(z, dtype=complex)
        base = self.a - (self.a - 1.0) * z ** self.k
        # Re(base) >= 1 on the closed disk: principal branch is the right one
        if self.k == 1:
            return z / base
        return z * np.exp(-np.log(base) / self.k)

    def params(self):
        return {"a": self.a, "k": self.k}


@dataclass(frozen=True)
class PolynomialPGF(Expr):
    """Finite-support law given by its probabilities at ``0, 1, ..., n``."""

    probs: tuple
    domain = PGF

    def __post_init__(self):
        probs = tuple(float(x) for x in self.probs)
        if not probs or any(x < 0 for x in probs):
            raise ValueError("probabilities must be non-empty and nonnegative")
        if abs(sum(probs) - 1.0) > 1e-12:
            raise ValueError("probabilities must sum to one")
        object.__setattr__(self, "probs", probs)

    def _eval(self, z, trace):
        return np.polynomial.polynomial.polyval(np.asarray(z, dtype=complex), self.probs)

    def params(self):
        return {"probs": list(self.probs)}


# combinators ---------------------------------------------------------------


def _require_domain(child: Expr, dom: str, what: str):
    if child.domain != dom:
        raise ValueError(f"{what} needs a {dom.upper()} child, got {child.domain.upper()}")


@dataclass(frozen=True)
class ScaleArg(Expr):
    """``psi(c t)``."""

    child: Expr
    c: float

    def __post_init__(self):
        _require_domain(self.child, CF, "ScaleArg")
        object.__setattr__(self, "c", _check_c(self.c))

    domain = CF

    @property
    def children(self):
        return (self.child,)

    def _eval(self, z, trace):
        return self.child._eval(self.c * np.asarray(z), trace)

    def _log(self, z, trace):
        return self.child._log(self.c * np.asarray(z), trace)

    def params(self):
        return {"c": self.c}


@dataclass(frozen=True)
class Thin(Expr):
    """``P(1 - c + c s)``, the PGF of ``c`` thinned counts."""

    child: Expr
    c: float

    def __post_init__(self):
        _require_domain(self.child, PGF, "Thin")
        object.__setattr__(self, "c", _check_c(self.c))

    domain = PGF

    @property
    def children(self):
        return (self.child,)

    def _sub(self, z):
        if self.c == 1.0:
            return z
        return 1.0 - self.c + self.c * np.asarray(z)

    def _eval(self, z, trace):
        return self.child._eval(self._sub(z), trace)

    def _log(self, z, trace):
        return self.child._log(self._sub(z), trace)

    def params(self):
        return {"c": self.c}


def _substitute(domain: str, c: float, z):
    """Argument map used by blends: scaling for CFs, thinning for PGFs."""
    if c == 1.0:
        return z
    if domain == CF:
        return c * np.asarray(z)
    return 1.0 - c + c * np.asarray(z)


@dataclass(frozen=True)
class Power(Expr):
    child: Expr
    r: Fraction

    def __post_init__(self):
        r = self.r
        if isinstance(r, str):
            r = Fraction(r)
        elif isinstance(r, float):
            r = Fraction(r).limit_denominator(10**6)
        object.__setattr__(self, "r", Fraction(r))

    @property
    def domain(self):
        return self.child.domain

    @property
    def children(self):
        return (self.child,)

    def _eval(self, z, trace):
        if self.r.denominator == 1:
            return self.child._eval(z, trace) ** int(self.r)
        return np.exp(float(self.r) * self.child._log(z, trace))

    def _log(self, z, trace):
        return float(self.r) * self.child._log(z, trace)

    def params(self):
        return {"r": str(self.r)}


@dataclass(frozen=True)
class Product(Expr):
    factors: tuple

    def __post_init__(self):
        factors = tuple(self.factors)
        if not factors:
            raise ValueError("Product needs at least one factor")
        doms = {f.domain for f in factors}
        if len(doms) != 1:
            raise ValueError("Product factors must share a domain")
        object.__setattr__(self, "factors", factors)

    @property
    def domain(self):
        return self.factors[0].domain

    @property
    def children(self):
        return self.factors

    def _eval(self, z, trace):
        out = self.factors[0]._eval(z, trace)
        for f in self.factors[1:]:
            out = out * f._eval(z, trace)
        return out

    def _log(self, z, trace):
        return sum(f._log(z, trace) for f in self.factors)


@dataclass(frozen=True)
class Ratio(Expr):
    num: Expr
    den: Expr

    def __post_init__(self):
        if self.num.domain != self.den.domain:
            raise ValueError("Ratio operands must share a domain")

    @property
    def domain(self):
        return self.num.domain

    @property
    def children(self):
        return (self.num, self.den)

    def _eval(self, z, trace):
        return self.num._eval(z, trace) / self.den._eval(z, trace)

    def _log(self, z, trace):
        return self.num._log(z, trace) - self.den._log(z, trace)


@dataclass(frozen=True)
class HarrisCompose(Expr):
    """Transform of a Harris(a, k)-indexed sum: ``phi / (a - (a-1) phi^k)^(1/k)``."""

    child: Expr
    a: float
    k: int

    def __post_init__(self):
        object.__setattr__(self, "a", _check_a(self.a))
        object.__setattr__(self, "k", _check_k(self.k))

    @property
    def domain(self):
        return self.child.domain

    @property
    def children(self):
        return (self.child,)

    def _base(self, z, trace):
        phik = _power_term(self.child, z, self.k, trace)
        phi = self.child._eval(z, trace)
        return phi, self.a - (self.a - 1.0) * phik

    def _eval(self, z, trace):
        phi, base = self._base(z, trace)
        return phi * _root(base, self.k, trace, -1)

    def _log(self, z, trace):
        _, base = self._base(z, trace)
        return self.child._log(z, trace) - _continuous_log(base, trace) / self.k

    def params(self):
        return {"a": self.a, "k": self.k}


@dataclass(frozen=True)
class Blend(Expr):
    """``{p + (1-p) phi(c .)^k}^(1/k)``, with ``c .`` read as thinning for PGFs."""

    child: Expr
    c: float
    p: float
    k: int

    def __post_init__(self):
        object.__setattr__(self, "c", _check_c(self.c))
        object.__setattr__(self, "p", _check_p(self.p))
        object.__setattr__(self, "k", _check_k(self.k))

    @property
    def domain(self):
        return self.child.domain

    @property
    def children(self):
        return (self.child,)

    def _bracket(self, z, trace):
        phik = _power_term(self.child, _substitute(self.domain, self.c, z), self.k, trace)
        return self.p + (1.0 - self.p) * phik

    def _eval(self, z, trace):
        return _root(self._bracket(z, trace), self.k, trace)

    def _log(self, z, trace):
        return _continuous_log(self._bracket(z, trace), trace) / self.k

    def params(self):
        return {"c": self.c, "p": self.p, "k": self.k}


@dataclass(frozen=True)
class LogSeed(Expr):
    """``(1 - log h)^(-1/k)`` for an infinitely divisible seed ``h``."""

    seed: Expr
    k: int

    def __post_init__(self):
        object.__setattr__(self, "k", _check_k(self.k))

    @property
    def domain(self):
        return self.seed.domain

    @property
    def children(self):
        return (self.seed,)

    def _eval(self, z, trace):
        base = 1.0 - self.seed._log(z, trace)
        return _root(base, self.k, trace, -1)

    def _log(self, z, trace):
        base = 1.0 - self.seed._log(z, trace)
        return -_continuous_log(base, trace) / self.k

    def params(self):
        return {"k": self.k}


# ---------------------------------------------------------------------------
# public evaluation


def cf_eval(expr: Expr, grid) -> np.ndarray:
    """Evaluate a CF tree on a real grid containing 0.

    The two rays ``[0, t_max]`` and ``[0, t_min]`` are walked separately
    from the anchor, so values at negative ``t`` do not depend on how the
    positive half was resolved.
    """
    if expr.domain != CF:
        raise ValueError("cf_eval needs a CF expression")
    if not isinstance(grid, EvalGrid):
        grid = EvalGrid(tuple(np.atleast_1d(np.asarray(grid, dtype=float))))
    if grid.anchor != 0.0:
        raise ValueError("CF grids are anchored at 0")
    t = grid.array
    i0 = int(np.flatnonzero(t == 0.0)[0])
    out = np.empty(t.size, dtype=complex)
    out[i0:] = _walk(expr, t[i0:], grid.refine_limit)
    if i0 > 0:
        out[:i0 + 1] = _walk(expr, t[:i0 + 1][::-1], grid.refine_limit)[::-1]
    out[i0] = 1.0
    return out


def pgf_eval(expr: Expr, points, refine_limit: int = DEFAULT_REFINE_LIMIT) -> np.ndarray:
    """Evaluate a PGF tree at points of the closed unit disk.

    The path runs from ``s = 1`` to the first point and then through the
    points in the order given; callers evaluating on a circle should pass
    the points in angular order.
    """
    if expr.domain != PGF:
        raise ValueError("pgf_eval needs a PGF expression")
    s = np.atleast_1d(np.asarray(points, dtype=complex))
    if np.any(np.abs(s) > 1.0 + 1e-12):
        raise ValueError("PGF points must lie in the closed unit disk")
    if not np.all(np.isfinite(s)):
        raise ValueError("PGF points must be finite")
    path = np.concatenate(([1.0 + 0j], s))
    if np.all(s.imag == 0):
        path = path.real
    out = _walk(expr, path, refine_limit)[1:]
    out[s == 1.0] = 1.0
    return out


def evaluate(expr: Expr, x, refine_limit: int = DEFAULT_REFINE_LIMIT) -> np.ndarray:
    """Dispatch to :func:`cf_eval` or :func:`pgf_eval` by domain.

    CF abscissae need not contain 0 or be sorted; they are evaluated on the
    sorted union with the anchor and returned in the caller's order.
    """
    if isinstance(x, EvalGrid):
        if expr.domain == CF:
            return cf_eval(expr, x)
        return pgf_eval(expr, x.array, x.refine_limit)
    if expr.domain == PGF:
        return pgf_eval(expr, x, refine_limit)
    t = np.atleast_1d(np.asarray(x, dtype=float))
    uniq, inv = np.unique(np.concatenate((t, [0.0])), return_inverse=True)
    vals = cf_eval(expr, EvalGrid(tuple(uniq), refine_limit))
    return vals[inv[:t.size]]


# ---------------------------------------------------------------------------
# constructors named after the operations they implement


def harris_compose(inner: Expr, a: float, k: int) -> Expr:
    if isinstance(inner, ConstantOne):
        return inner
    return HarrisCompose(inner, a, k)


def hid_from_id(seed: Expr, k: int) -> Expr:
    if isinstance(seed, ConstantOne):
        return seed
    return LogSeed(seed, k)


def thin_substitute(expr: Expr, c: float) -> Expr:
    return Thin(expr, c)


def scale_argument(expr: Expr, c: float) -> Expr:
    """Scale for a CF, thin for a PGF."""
    return ScaleArg(expr, c) if expr.domain == CF else Thin(expr, c)


def blend(expr: Expr, c: float, p: float, k: int) -> Expr:
    return Blend(expr, c, p, k)


def linnik_cf(alpha: float, k: int) -> Expr:
    """Generalized Linnik CF ``(1 + |t|^alpha)^(-1/k)``."""
    return LogSeed(StableSymCF(alpha), k)


# ---------------------------------------------------------------------------
# JSON trees: {"kind": ..., "params": {...}, "children": [...]}

_NODES = {cls.__name__: cls for cls in (
    ConstantOne, GammaCF, StableSymCF, NegBinPGF, PoissonPGF, GeometricPGF,
    HarrisPGF, PolynomialPGF, ScaleArg, Thin, Power, Product, Ratio,
    HarrisCompose, Blend, LogSeed)}


def to_dict(expr: Expr) -> dict:
    return {
        "kind": type(expr).__name__,
        "params": expr.params(),
        "children": [to_dict(ch) for ch in expr.children],
    }


def from_dict(node: dict) -> Expr:
    try:
        cls = _NODES[node["kind"]]
    except KeyError:
        raise ValueError(f"unknown expression kind {node.get('kind')!r}") from None
    params: dict[str, Any] = dict(node.get("params") or {})
    kids = [from_dict(ch) for ch in node.get("children") or []]
    if cls is Product:
        return Product(tuple(kids))
    if cls is Ratio:
        if len(kids) != 2:
            raise ValueError("Ratio needs exactly two children")
        return Ratio(*kids)
    if cls is PolynomialPGF:
        return PolynomialPGF(tuple(params["probs"]))
    if kids:
        if len(kids) != 1:
            raise ValueError(f"{cls.__name__} takes one child")
        return cls(kids[0], **params)
    return cls(**params)


def to_json(expr: Expr, **kwargs) -> str:
    return json.dumps(to_dict(expr), **kwargs)


def from_json(text: str) -> Expr:
    return from_dict(json.loads(text))

