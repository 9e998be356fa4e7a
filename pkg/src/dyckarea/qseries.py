"""Evaluation of the q-series machinery behind the generating function.

The bivariate generating function G(t, q) of area-weighted paths is handled
through three routes that must agree wherever they overlap:

* ``h_series`` sums the alternating q-Airy-type series
  H(t) = sum_n q^(n^2-n) (-t)^n / (q; q)_n, and ``g_ratio`` forms
  G = H(qt)/H(t). The series cancels catastrophically as q -> 1, so it
  runs under mpmath with the working precision scaled to the cancellation
  envelope; it is the preferred route for eps = -ln q >= ~1e-3.
* ``g_cfrac`` evaluates the classical continued fraction
  1/(1 - t/(1 - tq/(1 - tq^2/...))) bottom-up with tail value 1. All
  partial numerators are positive for real t, which makes this route
  unconditionally stable in double precision; it is the reference
  evaluator for small eps and continues G analytically beyond the pole
  line t_inf(q).
* ``contour_h`` validates the contour-integral representation of H by
  direct quadrature along two rays.

``euler_maclaurin_check`` certifies the Euler-Maclaurin approximation of
ln (z; q)_inf against a rigorous remainder bound.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import mpmath
import numpy as np

from .errors import (
    AccuracyError,
    DomainError,
    NonConvergenceError,
    PoleProximityError,
    SearchFailureError,
)
from .special_functions import dilog

__all__ = [
    "EvalSettings",
    "ContourSpec",
    "RemainderCheck",
    "HSeriesResult",
    "q_pochhammer",
    "h_series",
    "g_ratio",
    "g_cfrac",
    "t_infinity",
    "euler_maclaurin_check",
    "contour_h",
]


@dataclass(frozen=True)
class EvalSettings:
    """Evaluation point and numerical policy shared by the q-series routines.

    ``epsilon`` is always recomputed from q, never stored. When
    ``precision_bits`` is left unset, the alternating-series routines scale
    their working precision with the cancellation envelope
    exp((ln^2 t / 2 + pi^2/6) / eps).
    """

    q: float
    t: float | complex | None = None
    tol: float = 1e-12
    max_terms: int = 200_000
    precision_bits: int | None = None

    def __post_init__(self):
        if not (0.0 < self.q < 1.0):
            raise DomainError(f"q must lie in (0, 1), got {self.q!r}")
        if self.tol <= 0.0:
            raise DomainError("tol must be positive")
        if self.precision_bits is not None and self.precision_bits < 53:
            raise DomainError("precision_bits must be >= 53")

    @property
    def epsilon(self) -> float:
        return -math.log(self.q)

    def bits_for(self, t: float | complex) -> int:
        """Working mantissa width for the alternating series at argument t."""
        if self.precision_bits is not None:
            return self.precision_bits
        at = abs(t)
        if at < 1e-12:
            return 53
        envelope = 0.5 * math.log(at) ** 2 + math.pi**2 / 6.0
        return max(53, math.ceil(3.0 * envelope / (self.epsilon * math.log(2.0))))


def q_pochhammer(z: complex, q: float, n: int | None = None,
                 settings: EvalSettings | None = None) -> complex | float:
    """q-Pochhammer symbol (z; q)_n = prod_{k<n} (1 - z q^k).

    ``n = None`` means the infinite product, truncated once the remaining
    factors differ from 1 by less than the tolerance; that requires
    0 < q < 1. Real inputs give a float.
    """
    tol = settings.tol if settings is not None else 1e-17
    if n is not None:
        if n < 0:
            raise DomainError("q_pochhammer order must be >= 0 or None")
        result = 1.0 + 0.0j if isinstance(z, complex) else 1.0
        qk = 1.0
        for _ in range(n):
            result *= 1.0 - z * qk
            qk *= q
        return result
    if not (0.0 < q < 1.0):
        raise DomainError("infinite q-Pochhammer products need q in (0, 1)")
    # |log prod_{k>N}| <= |z| q^(N+1) / (1 - q) up to second order.
    scale = max(abs(z), 1.0)
    count = max(8, math.ceil(math.log(scale / (tol * (1.0 - q))) / -math.log(q)) + 2)
    result = 1.0 + 0.0j if isinstance(z, complex) else 1.0
    qk = 1.0
    for _ in range(count):
        result *= 1.0 - z * qk
        qk *= q
    return result


def log_q_pochhammer_inf(z: complex, q: float, tol: float = 1e-17) -> complex:
    """log (z; q)_inf as the sum of principal logarithms of the factors.

    Safe for any z off the ray [1, inf) scaled by q^-k; factors never cross
    the negative real axis when Im z != 0.
    """
    if not (0.0 < q < 1.0):
        raise DomainError("log_q_pochhammer_inf needs q in (0, 1)")
    scale = max(abs(z), 1.0)
    count = max(8, math.ceil(math.log(scale / (tol * (1.0 - q))) / -math.log(q)) + 2)
    total = 0.0 + 0.0j
    qk = 1.0
    for _ in range(count):
        total += cmath.log(1.0 - z * qk)
        qk *= q
    return total


@dataclass(frozen=True)
class HSeriesResult:
    """Value of the alternating series plus its convergence diagnostics."""

    value: float | complex
    terms_used: int
    bits_lost: float
    last_term: float


def _h_series_mp(t, q: float, tol: float, max_terms: int):
    """Sum of q^(n^2-n) (-t)^n / (q;q)_n at the current mpmath precision.

    Returns (sum, terms_used, max_term_magnitude, last_term_magnitude).
    Stops after the term magnitude stays below tol * |partial sum| for
    three consecutive terms.
    """
    term = mpmath.mpf(1) if not isinstance(t, complex) else mpmath.mpc(1)
    total = term
    max_mag = mpmath.mpf(1)
    q_mp = mpmath.mpf(q)
    q2 = q_mp * q_mp
    q_2n = mpmath.mpf(1)   # q^(2n)
    q_n1 = q_mp            # q^(n+1)
    neg_t = -(mpmath.mpc(t) if isinstance(t, complex) else mpmath.mpf(t))
    small_streak = 0
    n = 0
    while n < max_terms:
        term = term * neg_t * q_2n / (1 - q_n1)
        total += term
        n += 1
        mag = abs(term)
        if mag > max_mag:
            max_mag = mag
        if mag < tol * max(abs(total), mpmath.mpf(1e-300)):
            small_streak += 1
            if small_streak >= 3:
                return total, n, max_mag, mag
        else:
            small_streak = 0
        q_2n *= q2
        q_n1 *= q_mp
    raise NonConvergenceError(
        f"alternating series did not stabilise within {max_terms} terms",
        last_term=float(mag),
    )


def h_series(t: float | complex, settings: EvalSettings, full_output: bool = False):
    """The q-deformed Airy-type series H(t) under scaled working precision.

    The terms grow far beyond the sum before they decay, so the working
    mantissa is widened by the cancellation envelope; the result and the
    number of bits lost to cancellation are reported.
    """
    bits = settings.bits_for(t)
    with mpmath.workprec(bits):
        total, n, max_mag, last = _h_series_mp(t, settings.q, settings.tol, settings.max_terms)
        if abs(total) == 0:
            raise PoleProximityError("series sum vanished at working precision; t is at a zero")
        bits_lost = float(mpmath.log(max_mag / abs(total), 2)) if max_mag > abs(total) else 0.0
        value = complex(total) if isinstance(t, complex) else float(total)
    if full_output:
        return HSeriesResult(value=value, terms_used=n, bits_lost=bits_lost, last_term=float(last))
    return value


def g_ratio(t: float | complex, settings: EvalSettings, full_output: bool = False):
    """G(t, q) as the ratio H(qt)/H(t) of two alternating series.

    Both series are summed at the same elevated precision; if H(t) has lost
    essentially all significant bits the point is next to a zero of H
    (at or beyond the pole line) and a pole error is raised.
    """
    bits = max(settings.bits_for(t), settings.bits_for(settings.q * t))
    with mpmath.workprec(bits):
        denom, n_d, max_d, _ = _h_series_mp(t, settings.q, settings.tol, settings.max_terms)
        numer, n_n, _, _ = _h_series_mp(
            settings.q * t, settings.q, settings.tol, settings.max_terms
        )
        floor = max_d * mpmath.mpf(2) ** (-(bits - 16))
        if abs(denom) <= floor:
            raise PoleProximityError(
                f"H(t) at t = {t!r} is below the cancellation floor; "
                f"t lies at or beyond the pole boundary"
            )
        ratio = numer / denom
        bits_lost = float(mpmath.log(max_d / abs(denom), 2)) if max_d > abs(denom) else 0.0
        value = complex(ratio) if isinstance(t, complex) else float(ratio)
    if full_output:
        return HSeriesResult(value=value, terms_used=n_d + n_n, bits_lost=bits_lost, last_term=0.0)
    return value


# --------------------------------------------------------------------------
# Continued fraction
# --------------------------------------------------------------------------

_SCALAR_DEPTH_LIMIT = 200_000
_CHUNK = 1 << 16


def _cfrac_fixed_depth(t: float, q: float, depth: int) -> float:
    """Bottom-up evaluation at a fixed depth with tail value 1."""
    if depth <= _SCALAR_DEPTH_LIMIT:
        weights = (t * np.power(q, np.arange(depth))).tolist()
        g = 1.0
        for w in reversed(weights):
            g = 1.0 / (1.0 - w * g)
        return float(g)
    return float(_cfrac_fixed_depth_grid(np.array([t]), q, depth)[0])


def _cfrac_fixed_depth_grid(ts: np.ndarray, q: float, depth: int) -> np.ndarray:
    """Vectorised fixed-depth evaluation for a grid of t values.

    The level maps w -> 1/(1 - t q^k w) are Moebius transforms; composing
    them bottom-up is an ordered matrix product of [[0, 1], [-t q^k, 1]]
    blocks. The product is reassociated pairwise (order preserved) so numpy
    can batch the 2x2 multiplications, with per-matrix rescaling to keep
    the entries in range. Matches the scalar loop to roundoff.
    """
    ts = np.asarray(ts, dtype=float)
    nt = ts.size
    total = np.broadcast_to(np.eye(2), (nt, 2, 2)).copy()
    logq = math.log(q)
    for start in range(0, depth, _CHUNK):
        count = min(_CHUNK, depth - start)
        ks = np.arange(start, start + count)
        w = np.exp(ks * logq)[None, :] * ts[:, None]  # (nt, count)
        mats = np.zeros((nt, count, 2, 2))
        mats[:, :, 0, 1] = 1.0
        mats[:, :, 1, 0] = -w
        mats[:, :, 1, 1] = 1.0
        while mats.shape[1] > 1:
            m = mats.shape[1]
            if m % 2 == 1:
                pad = np.broadcast_to(np.eye(2), (nt, 1, 2, 2))
                mats = np.concatenate([mats, pad], axis=1)
                m += 1
            mats = np.matmul(mats[:, 0::2], mats[:, 1::2])
            scale = np.abs(mats).max(axis=(2, 3), keepdims=True)
            mats /= scale
        total = np.matmul(total, mats[:, 0])
        scale = np.abs(total).max(axis=(1, 2), keepdims=True)
        total /= scale
    num = total[:, 0, 0] + total[:, 0, 1]
    den = total[:, 1, 0] + total[:, 1, 1]
    return num / den


def _cfrac_initial_depth(t: float, q: float, tol: float) -> int:
    eps = -math.log(q)
    target = max(abs(t), tol) / (tol * 1e-2)
    return max(64, math.ceil(math.log(target) / eps) + 8)


def g_cfrac(t: float, settings: EvalSettings, full_output: bool = False):
    """G(t, q) from the continued fraction, the small-eps reference route.

    Evaluated bottom-up from depth K with tail value 1, doubling K until two
    successive evaluations agree within the tolerance. Valid (and stable)
    beyond the pole line, where the series representations fail.
    """
    t = float(t)
    q = settings.q
    if t == 0.0:
        return (1.0, 0) if full_output else 1.0
    depth = _cfrac_initial_depth(t, q, settings.tol)
    value = _cfrac_fixed_depth(t, q, depth)
    for _ in range(24):
        depth *= 2
        nxt = _cfrac_fixed_depth(t, q, depth)
        if abs(nxt - value) <= settings.tol * max(1.0, abs(nxt)):
            if full_output:
                return nxt, depth
            return nxt
        value = nxt
    raise NonConvergenceError(
        f"continued fraction failed to stabilise by depth {depth}",
        last_term=abs(nxt - value),
    )


def g_cfrac_grid(ts: np.ndarray, settings: EvalSettings) -> np.ndarray:
    """Continued-fraction values on a grid of t, sharing the depth doubling."""
    ts = np.asarray(ts, dtype=float)
    q = settings.q
    depth = max(_cfrac_initial_depth(float(np.max(np.abs(ts))), q, settings.tol), 64)
    value = _cfrac_fixed_depth_grid(ts, q, depth)
    for _ in range(24):
        depth *= 2
        nxt = _cfrac_fixed_depth_grid(ts, q, depth)
        if np.all(np.abs(nxt - value) <= settings.tol * np.maximum(1.0, np.abs(nxt))):
            return nxt
        value = nxt
    raise NonConvergenceError("continued fraction grid failed to stabilise")


# --------------------------------------------------------------------------
# Pole boundary
# --------------------------------------------------------------------------

def t_infinity(q: float, settings: EvalSettings | None = None) -> float:
    """Radius of convergence of the length series: first positive zero of H.

    Scans outward from t = 1/4 for a sign change of H(t), then bisects.
    The boundary decreases from 1 (q -> 0) towards 1/4 (q -> 1).
    """
    if settings is None or settings.q != q:
        settings = EvalSettings(q=q)
    h = lambda t: h_series(t, settings)
    lo = 0.25
    f_lo = h(lo)
    if f_lo <= 0.0:
        raise SearchFailureError("H(1/4) <= 0; no bracket below the boundary")
    eps = settings.epsilon
    # step smaller as q -> 1 since the root approaches 1/4
    step = min(0.02, max(1e-4, 0.05 * eps ** (2.0 / 3.0) * 2.4))
    hi = lo
    f_hi = f_lo
    while hi < 1.0:
        lo, f_lo = hi, f_hi
        hi = min(1.0, hi + step)
        f_hi = h(hi)
        if f_hi < 0.0:
            break
        step *= 1.6
    else:
        raise SearchFailureError(f"no sign change of H(t) found in [1/4, 1] for q = {q!r}")
    if f_hi == 0.0:
        return hi
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if hi - lo <= settings.tol * mid:
            break
        f_mid = h(mid)
        if f_mid > 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


# --------------------------------------------------------------------------
# Euler-Maclaurin remainder certification
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class RemainderCheck:
    """Remainder of the Euler-Maclaurin form of ln (z; q)_inf with its bound."""

    z: complex
    remainder: complex
    bound: float

    @property
    def within_bound(self) -> bool:
        return abs(self.remainder) <= self.bound


def euler_maclaurin_check(z: complex, q: float) -> RemainderCheck:
    """Certify ln (z; q)_inf = Li2(z)/ln q + ln(1-z)/2 + ln(q) R(z, q).

    R is the Euler-Maclaurin remainder of the sum of ln(1 - z q^k); it
    tends to z/(12 (1-z)) as q -> 1. The bound is derived from the
    second-order Euler-Maclaurin remainder term,

        |R| <= (|z/(1-z)| + int_0^1 |z| du / |1 - u z|^2) / 12,

    with the integral in closed arctangent form; it holds for every
    q in (0, 1) and every z off the real axis.
    """
    z = complex(z)
    if z.imag == 0.0:
        raise DomainError("the remainder bound needs Im z != 0")
    if not (0.0 < q < 1.0):
        raise DomainError("q must lie in (0, 1)")
    lnq = math.log(q)
    lhs = log_q_pochhammer_inf(z, q)
    remainder = (lhs - dilog(z) / lnq - 0.5 * cmath.log(1.0 - z)) / lnq
    x, y = z.real, z.imag
    ay = abs(y)
    az = abs(z)
    integral = az / ay * (math.atan((az * az - x) / ay) + math.atan(x / ay))
    bound = (abs(z / (1.0 - z)) + integral) / 12.0
    return RemainderCheck(z=z, remainder=remainder, bound=bound)


# --------------------------------------------------------------------------
# Contour-integral representation of H
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class ContourSpec:
    """Two-ray contour through rho with upper angle phi and lower angle psi.

    ``lambda_max`` is the ray truncation length (None: chosen from the
    integrand decay), ``nodes`` the starting Gauss-Legendre panel order
    (doubled until the quadrature stabilises).
    """

    rho: float = 0.5
    phi: float = math.pi / 3.0
    psi: float = math.pi / 3.0
    lambda_max: float | None = None
    nodes: int = 24

    def __post_init__(self):
        if not (0.0 < self.rho < 1.0):
            raise DomainError("rho must lie in (0, 1)")
        if not (0.0 < self.phi < math.pi and 0.0 < self.psi < math.pi):
            raise DomainError("ray angles must lie in (0, pi)")


def _contour_integrand(zs: np.ndarray, t: float, q: float, tol: float) -> np.ndarray:
    """z^((1 + log_q z)/2 - log_q t) / (z; q)_inf on an array of points."""
    lnq = math.log(q)
    lnz = np.log(zs)  # principal branch
    exponent = (0.5 * (1.0 + lnz / lnq) - math.log(t) / lnq) * lnz
    numer = np.exp(exponent)
    scale = float(np.max(np.abs(zs)))
    count = max(8, math.ceil(math.log(max(scale, 1.0) / (tol * (1.0 - q))) / -lnq) + 2)
    poch = np.ones_like(zs)
    qk = 1.0
    for _ in range(count):
        poch *= 1.0 - zs * qk
        qk *= q
    return numer / poch


def _ray_quadrature(t: float, q: float, rho: float, angle: float, lam: float,
                    order: int, tol: float) -> complex:
    """Gauss-Legendre integral along rho + lambda e^{i angle}, lambda in (0, lam]."""
    direction = cmath.exp(1j * angle)
    edges = [0.0, 1.0]
    while edges[-1] < lam:
        edges.append(min(lam, edges[-1] * 2.0 if edges[-1] >= 1.0 else 1.0))
    nodes, weights = np.polynomial.legendre.leggauss(order)
    total = 0.0 + 0.0j
    for a, b in zip(edges[:-1], edges[1:]):
        mid, half = 0.5 * (a + b), 0.5 * (b - a)
        lam_nodes = mid + half * nodes
        zs = rho + lam_nodes * complex(direction)
        vals = _contour_integrand(zs, t, q, tol)
        total += half * np.sum(weights * vals)
    return complex(total * direction)


def contour_h(t: float, q: float, contour: ContourSpec | None = None,
              settings: EvalSettings | None = None) -> complex:
    """H(t) by quadrature of its contour-integral representation.

    The contour runs in from infinity along the lower ray, through rho,
    and back out along the upper ray; the result is (q; q)_inf/(2 pi i)
    times the line integral. For real t the two rays are conjugate and the
    value is real up to the quadrature tolerance. This is a numerical
    validation of the representation, so it recomputes everything directly
    and shares no code with the series evaluator.
    """
    if settings is None:
        settings = EvalSettings(q=q, t=t)
    if not (0.0 < q < 1.0):
        raise DomainError("contour_h needs q in (0, 1)")
    if not (0.0 < t < 1.0):
        raise DomainError("contour quadrature validated for real t in (0, 1) only")
    geometry = contour or ContourSpec()
    tol = settings.tol
    eps = -math.log(q)
    lam = geometry.lambda_max or max(2.0, math.exp(math.sqrt(eps * (-math.log(tol) + 12.0))))
    prefactor = q_pochhammer(q, q) / (2.0j * math.pi)

    def evaluate(order: int, lam_end: float) -> complex:
        upper = _ray_quadrature(t, q, geometry.rho, geometry.phi, lam_end, order, tol)
        lower = _ray_quadrature(t, q, geometry.rho, -geometry.psi, lam_end, order, tol)
        return complex(prefactor * (upper - lower))

    # ray-end magnitude must be negligible, else extend the truncation
    for _ in range(8):
        end_points = np.array([geometry.rho + lam * cmath.exp(1j * geometry.phi),
                               geometry.rho + lam * cmath.exp(-1j * geometry.psi)])
        end_mag = float(np.max(np.abs(_contour_integrand(end_points, t, q, tol))))
        if end_mag * lam < tol:
            break
        lam *= 2.0
    else:
        raise AccuracyError(
            f"integrand magnitude {end_mag:.2e} still not negligible at ray ends"
        )

    order = geometry.nodes
    value = evaluate(order, lam)
    for _ in range(6):
        order *= 2
        nxt = evaluate(order, lam)
        if abs(nxt - value) <= tol * max(1.0, abs(nxt)):
            return nxt
        value = nxt
    raise AccuracyError(
        f"contour quadrature did not stabilise at {order} nodes per panel",
        last_term=abs(nxt - value),
    )
