"""Airy functions, their zeros and zeta sums, the complex dilogarithm, and
the Airy-ratio scaling function F(s) = Ai'(s)/Ai(s).

Everything here is built from series and asymptotic expansions directly, so
the rest of the library carries no dependence on external special-function
packages. Accuracy target is 12 significant digits (absolute with respect to
the oscillatory envelope on the negative Airy axis).

Evaluation strategy for Ai/Ai':

* ``|x| <= 4.5``   Maclaurin series in double precision (exactly summed
  term lists; worst cancellation here costs ~3 digits).
* ``4.5 < |x| <= 7.8``  the same Maclaurin series under mpmath with the
  working precision raised by the cancellation depth exp(2|x|^{3/2}/3).
  A plain asymptotic expansion switched on at 4.5 bottoms out near 3e-6
  (optimal truncation error exp(-4|x|^{3/2}/3)), far short of 12 digits,
  which is why this guarded middle tier exists.
* ``|x| > 7.8``   Poincare asymptotic expansions, truncated at the smallest
  term; the error floor is below 3e-13 there.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import mpmath

from .errors import (
    BranchCutError,
    DivergenceError,
    DomainError,
    NonConvergenceError,
    PoleProximityError,
)

__all__ = [
    "AiryPair",
    "ScalingConstants",
    "airy",
    "airy_zeros",
    "airy_zeta",
    "dilog",
    "scaling_F",
    "scaling_F_series",
    "make_scaling_constants",
    "AIRY_AT_ZERO",
    "AIRY_PRIME_AT_ZERO",
    "A0",
]

# Closed forms 3^(-2/3)/Gamma(2/3) and -3^(-1/3)/Gamma(1/3).
AIRY_AT_ZERO = 3.0 ** (-2.0 / 3.0) / math.gamma(2.0 / 3.0)
AIRY_PRIME_AT_ZERO = -(3.0 ** (-1.0 / 3.0)) / math.gamma(1.0 / 3.0)
# Amplitude of the tricritical scaling law, Ai'(0)/Ai(0) = -0.7290...
A0 = AIRY_PRIME_AT_ZERO / AIRY_AT_ZERO

_SERIES_RADIUS = 4.5
# The growing solution dominates the Maclaurin sums for x > 0, so the
# double-precision series loses exp(2 zeta) there instead of exp(zeta);
# the elevated-precision tier starts earlier on that side.
_SERIES_RADIUS_POS = 3.5
_ASYMPTOTIC_RADIUS = 7.8
_MAX_ARGUMENT = 1.0e4


@dataclass(frozen=True)
class AiryPair:
    """Values of Ai and Ai' at one point.

    ``underflow`` is set when Ai(x) decayed below the smallest positive
    double and the stored value collapsed to 0.0.
    """

    ai: float
    ai_prime: float
    underflow: bool = False


def _maclaurin_terms(x: float):
    """Term lists of the four Maclaurin series f, g, f', g' at x.

    Ai(x)  = Ai(0) f(x) + Ai'(0) g(x)
    Ai'(x) = Ai(0) f'(x) + Ai'(0) g'(x)
    """
    x3 = x * x * x
    f_terms = [1.0]
    fp_terms = [0.0, x * x / 2.0]
    g_terms = [x]
    gp_terms = [1.0]
    a = 1.0
    ap = x * x / 2.0
    b = x
    bp = 1.0
    k = 0
    while True:
        a *= x3 / ((3 * k + 2) * (3 * k + 3))
        b *= x3 / ((3 * k + 3) * (3 * k + 4))
        bp *= x3 / ((3 * k + 1) * (3 * k + 3))
        if k >= 1:
            ap *= x3 * (k + 1) / (k * (3 * k + 2) * (3 * k + 3))
        f_terms.append(a)
        g_terms.append(b)
        gp_terms.append(bp)
        if k >= 1:
            fp_terms.append(ap)
        k += 1
        if k > 6 and abs(a) < 1e-22 and abs(b) < 1e-22 and abs(bp) < 1e-22:
            break
        if k > 500:  # unreachable for |x| <= 7.8
            raise NonConvergenceError("Airy Maclaurin series failed to terminate")
    return f_terms, g_terms, fp_terms, gp_terms


def _airy_maclaurin(x: float) -> AiryPair:
    f_terms, g_terms, fp_terms, gp_terms = _maclaurin_terms(x)
    f = math.fsum(f_terms)
    g = math.fsum(g_terms)
    fp = math.fsum(fp_terms)
    gp = math.fsum(gp_terms)
    return AiryPair(
        ai=AIRY_AT_ZERO * f + AIRY_PRIME_AT_ZERO * g,
        ai_prime=AIRY_AT_ZERO * fp + AIRY_PRIME_AT_ZERO * gp,
    )


def _airy_maclaurin_mp(x: float) -> AiryPair:
    # Cancellation depth: exp(zeta) for x < 0, exp(2 zeta) for x > 0,
    # with zeta = 2|x|^{3/2}/3.
    zeta = 2.0 * abs(x) ** 1.5 / 3.0
    prec = 53 + int(2.0 * zeta / math.log(2.0)) + 24
    with mpmath.workprec(prec):
        xm = mpmath.mpf(x)
        x3 = xm**3
        a = mpmath.mpf(1)
        b = xm
        ap = xm * xm / 2
        bp = mpmath.mpf(1)
        f, g, fp, gp = mpmath.mpf(1), xm, ap, mpmath.mpf(1)
        k = 0
        while True:
            a *= x3 / ((3 * k + 2) * (3 * k + 3))
            b *= x3 / ((3 * k + 3) * (3 * k + 4))
            bp *= x3 / ((3 * k + 1) * (3 * k + 3))
            if k >= 1:
                ap *= x3 * (k + 1) / (k * (3 * k + 2) * (3 * k + 3))
                fp += ap
            f += a
            g += b
            gp += bp
            k += 1
            if k > 6 and max(abs(a), abs(b), abs(bp)) < mpmath.mpf(2) ** (-prec):
                break
        c1 = mpmath.mpf(3) ** (mpmath.mpf(-2) / 3) / mpmath.gamma(mpmath.mpf(2) / 3)
        c2 = -(mpmath.mpf(3) ** (mpmath.mpf(-1) / 3)) / mpmath.gamma(mpmath.mpf(1) / 3)
        ai = c1 * f + c2 * g
        aip = c1 * fp + c2 * gp
        return AiryPair(ai=float(ai), ai_prime=float(aip))


def _asymptotic_coefficients(n_max: int):
    """Coefficients u_k and v_k = -u_k (6k+1)/(6k-1) of the large-x expansions."""
    u = [1.0]
    for k in range(n_max):
        ratio = ((3 * k + 2.5) * (3 * k + 1.5) * (3 * k + 0.5)) / (54.0 * (k + 1) * (k + 0.5))
        u.append(u[-1] * ratio)
    v = [1.0] + [-(6 * k + 1) / (6 * k - 1) * u[k] for k in range(1, len(u))]
    return u, v


_U_COEF, _V_COEF = _asymptotic_coefficients(40)


def _truncated_alternating(coefs, inv_zeta: float) -> float:
    """Sum (-1)^k c_k zeta^{-k}, stopping at the smallest term."""
    total = 0.0
    power = 1.0
    last = math.inf
    for k, c in enumerate(coefs):
        term = c * power
        if abs(term) > last:
            break
        total += (-term if (k & 1) else term)
        last = abs(term)
        power *= inv_zeta
        if abs(term) < 1e-19:
            break
    return total


def _airy_asymptotic_positive(x: float) -> AiryPair:
    zeta = 2.0 * x**1.5 / 3.0
    inv = 1.0 / zeta
    s_ai = _truncated_alternating(_U_COEF, inv)
    s_aip = _truncated_alternating(_V_COEF, inv)
    root4 = x**0.25
    try:
        damp = math.exp(-zeta)
    except OverflowError:
        damp = 0.0
    pref = damp / (2.0 * math.sqrt(math.pi))
    ai = pref * s_ai / root4
    aip = -pref * root4 * s_aip
    underflow = damp == 0.0 or (ai == 0.0 and x > 1.0)
    return AiryPair(ai=ai, ai_prime=aip, underflow=underflow)


def _even_odd_sums(coefs, inv_zeta: float):
    """Even/odd split sums needed on the oscillatory side."""
    inv2 = inv_zeta * inv_zeta
    even = 0.0
    odd = 0.0
    power = 1.0  # zeta^{-2k}
    last = math.inf
    for k in range(0, len(coefs) // 2):
        e_term = coefs[2 * k] * power
        o_term = coefs[2 * k + 1] * power * inv_zeta
        if max(abs(e_term), abs(o_term)) > last:
            break
        even += -e_term if (k & 1) else e_term
        odd += -o_term if (k & 1) else o_term
        last = max(abs(e_term), abs(o_term))
        power *= inv2
        if last < 1e-19:
            break
    return even, odd


def _airy_asymptotic_negative(x: float) -> AiryPair:
    y = -x
    zeta = 2.0 * y**1.5 / 3.0
    inv = 1.0 / zeta
    u_even, u_odd = _even_odd_sums(_U_COEF, inv)
    v_even, v_odd = _even_odd_sums(_V_COEF, inv)
    arg = zeta + math.pi / 4.0
    s, c = math.sin(arg), math.cos(arg)
    root4 = y**0.25
    pref = 1.0 / (math.sqrt(math.pi) * root4)
    ai = pref * (s * u_even - c * u_odd)
    aip = -(root4 / math.sqrt(math.pi)) * (c * v_even + s * v_odd)
    return AiryPair(ai=ai, ai_prime=aip)


def airy_scaled_positive(x: float) -> AiryPair:
    """exp(zeta) Ai(x) and exp(zeta) Ai'(x) for x >= 8, zeta = 2 x^{3/2}/3.

    The scaled pair stays O(1) however large x gets; callers that only need
    ratios of Airy combinations use it to dodge underflow of the bare values.
    """
    if x < 8.0:
        raise DomainError("scaled evaluation is for x >= 8")
    zeta = 2.0 * x**1.5 / 3.0
    inv = 1.0 / zeta
    s_ai = _truncated_alternating(_U_COEF, inv)
    s_aip = _truncated_alternating(_V_COEF, inv)
    root4 = x**0.25
    return AiryPair(
        ai=s_ai / (2.0 * math.sqrt(math.pi) * root4),
        ai_prime=-root4 * s_aip / (2.0 * math.sqrt(math.pi)),
    )


def airy(x: float) -> AiryPair:
    """Ai(x) and Ai'(x) for real x, |x| <= 1e4.

    Uses the Maclaurin series near the origin and Poincare expansions for
    large argument, with an elevated-precision series tier bridging the
    region where neither double-precision method reaches 12 digits.
    """
    x = float(x)
    if math.isnan(x) or abs(x) > _MAX_ARGUMENT:
        raise DomainError(f"airy argument {x!r} outside |x| <= {_MAX_ARGUMENT:g}")
    fast_radius = _SERIES_RADIUS_POS if x > 0 else _SERIES_RADIUS
    if abs(x) <= fast_radius:
        return _airy_maclaurin(x)
    if abs(x) <= _ASYMPTOTIC_RADIUS:
        return _airy_maclaurin_mp(x)
    if x > 0:
        return _airy_asymptotic_positive(x)
    return _airy_asymptotic_negative(x)


# --------------------------------------------------------------------------
# Zeros of Ai and the Airy zeta function
# --------------------------------------------------------------------------

def _zero_seed(k: int) -> float:
    """Asymptotic location of the k-th zero, -T(3 pi (4k-1)/8)."""
    z = 3.0 * math.pi * (4 * k - 1) / 8.0
    zi2 = 1.0 / (z * z)
    t = 1.0 + zi2 * (5.0 / 48.0 + zi2 * (-5.0 / 36.0 + zi2 * (77125.0 / 82944.0 - zi2 * 108056875.0 / 6967296.0)))
    return -(z ** (2.0 / 3.0)) * t


class RootPolishError(NonConvergenceError):
    """Newton polishing of an Airy zero failed; carries the index k."""

    def __init__(self, k: int, message: str):
        super().__init__(message)
        self.k = k


@lru_cache(maxsize=None)
def _airy_zeros_cached(count: int) -> tuple[float, ...]:
    zeros = []
    for k in range(1, count + 1):
        s = _zero_seed(k)
        converged = False
        for _ in range(60):
            pair = airy(s)
            step = pair.ai / pair.ai_prime
            s -= step
            if abs(step) < 1e-14 * max(1.0, abs(s)):
                converged = True
                break
        if not converged:
            raise RootPolishError(k, f"Newton iteration for Airy zero {k} did not converge")
        h = 1e-7
        if airy(s - h).ai * airy(s + h).ai > 0.0:
            raise RootPolishError(k, f"no sign change around candidate Airy zero {k} at {s!r}")
        zeros.append(s)
    return tuple(zeros)


def airy_zeros(count: int) -> tuple[float, ...]:
    """First ``count`` zeros of Ai on the negative axis, in decreasing order.

    Each zero is seeded from its asymptotic location, polished by Newton
    iteration and verified by a sign change.
    """
    if count < 1:
        raise DomainError("count must be >= 1")
    return _airy_zeros_cached(count)


def airy_zeta(j: int, count: int = 400) -> float:
    """Sums of reciprocal powers of the Airy zeros, Z(j) = sum_k s_k^{-j}.

    For j >= 2 the sum over ``count`` zeros is completed by a midpoint
    integral estimate of the tail based on s_k ~ -(3 pi (4k-1)/8)^{2/3};
    the same estimate bounds the truncation error scale. The j = 1 sum
    diverges as a raw series and is exposed only through its regularised
    value -Ai'(0)/Ai(0).
    """
    if j < 1:
        raise DomainError("airy_zeta requires j >= 1")
    if j == 1:
        return -A0
    zeros = airy_zeros(count)
    head = math.fsum(s ** (-j) for s in zeros) if j % 2 == 0 else -math.fsum(abs(s) ** (-j) for s in zeros)
    a = 1.5 * math.pi
    p = 2.0 * j / 3.0
    tail_mag = a ** (-p) * (count + 0.25) ** (1.0 - p) / (p - 1.0)
    tail = tail_mag if j % 2 == 0 else -tail_mag
    return head + tail


# --------------------------------------------------------------------------
# Dilogarithm
# --------------------------------------------------------------------------

_BERNOULLI = [float(mpmath.bernoulli(n)) for n in range(0, 64)]


def _dilog_w_series(z: complex) -> complex:
    """Li2 via the integral substitution w = -log(1-z).

    Li2(z) = int_0^w u/(e^u - 1) du = sum_n B_n w^{n+1} / ((n+1) n!),
    convergent for |w| < 2 pi; the callers reduce z so that |w| < ~4.1.
    """
    w = -cmath.log(1.0 - z)
    w2 = w * w
    total = w - 0.25 * w2  # B_0 and B_1 contributions
    wpow = w * w2  # w^{n+1} at n = 2
    fact = 2.0  # n! at n = 2
    n = 2
    while n < len(_BERNOULLI):
        contrib = _BERNOULLI[n] * wpow / ((n + 1) * fact)
        total += contrib
        if abs(contrib) < 1e-19 * max(1.0, abs(total)):
            return total
        wpow *= w2
        fact *= (n + 1) * (n + 2)
        n += 2
    raise NonConvergenceError("dilog Bernoulli series did not converge")


def dilog(z: complex) -> complex:
    """Principal-branch Euler dilogarithm Li2(z) = -int_0^z log(1-s)/s ds.

    The cut runs along [1, inf); real arguments greater than 1 raise a
    branch error. Arguments are mapped into the fast-convergence region by
    the inversion and reflection identities before summation.
    """
    z = complex(z)
    if z.imag == 0.0:
        x = z.real
        if x > 1.0:
            raise BranchCutError(f"dilog argument {x!r} lies on the branch cut [1, inf)")
        if x == 1.0:
            return complex(math.pi * math.pi / 6.0, 0.0)
        if x == 0.0:
            return 0.0 + 0.0j
    if abs(z) > 1.4:
        # Inversion: Li2(z) = -pi^2/6 - log(-z)^2/2 - Li2(1/z)
        lg = cmath.log(-z)
        return -math.pi * math.pi / 6.0 - 0.5 * lg * lg - dilog(1.0 / z)
    if z.real > 0.5:
        # Reflection: Li2(z) = pi^2/6 - log(z) log(1-z) - Li2(1-z)
        return math.pi * math.pi / 6.0 - cmath.log(z) * cmath.log(1.0 - z) - dilog(1.0 - z)
    return _dilog_w_series(z)


# --------------------------------------------------------------------------
# Scaling function and its zeta-coefficient series
# --------------------------------------------------------------------------

def scaling_F(s: float) -> float:
    """Airy logarithmic derivative F(s) = Ai'(s)/Ai(s).

    Poles sit at the Airy zeros; evaluation within 1e-8 of one raises a
    pole error carrying the offending zero.
    """
    s = float(s)
    if s < 0.0:
        guess = max(1, int((abs(s) / (1.5 * math.pi)) ** 1.5) + 2)
        zeros = airy_zeros(guess + 2)
        nearest = min(zeros, key=lambda r: abs(r - s))
        if abs(nearest - s) < 1e-8:
            raise PoleProximityError(
                f"scaling_F argument {s!r} within 1e-8 of Airy zero {nearest!r}", nearest=nearest
            )
    # far up the positive axis the bare values underflow; the ratio of the
    # exp(zeta)-scaled pair is identical
    pair = airy_scaled_positive(s) if s > 60.0 else airy(s)
    return pair.ai_prime / pair.ai


_FIRST_ZERO = -2.338107410459767


def scaling_F_series(s: float, j_max: int = 40, full_output: bool = False):
    """F(s) from its zeta-coefficient series -(1/s) sum_{j>=1} Z(j) s^j.

    Plain truncation at j_max; the radius of convergence is |s_1| = 2.3381,
    set by the first Airy zero. Returns the value, or (value, tail_bound)
    with ``full_output`` where tail_bound is a geometric estimate of the
    dropped tail.
    """
    s = float(s)
    radius = abs(_FIRST_ZERO)
    if abs(s) >= radius:
        raise DivergenceError(
            f"scaling_F_series diverges for |s| >= {radius:.4f} (got {s!r})"
        )
    total = 0.0
    for j in range(1, j_max + 1):
        total -= airy_zeta(j) * s ** (j - 1)
    ratio = abs(s) / radius
    tail_bound = radius ** (-(j_max + 1)) * abs(s) ** j_max / max(1e-300, 1.0 - ratio)
    if full_output:
        return total, tail_bound
    return total


@dataclass(frozen=True)
class ScalingConstants:
    """Constants of the tricritical scaling laws.

    phi_exponent and gamma0 are the crossover exponents 2/3 and -1/3,
    a0 the amplitude Ai'(0)/Ai(0), and the tables hold Airy zeros and
    zeta values used by the finite-size series.
    """

    phi_exponent: Fraction
    gamma0: Fraction
    a0: float
    airy_zeros: tuple[float, ...]
    airy_zeta: dict[int, float]


def make_scaling_constants(zero_count: int = 400, j_max: int = 64) -> ScalingConstants:
    zeros = airy_zeros(zero_count)
    zeta = {j: airy_zeta(j, count=zero_count) for j in range(1, j_max + 1)}
    return ScalingConstants(
        phi_exponent=Fraction(2, 3),
        gamma0=Fraction(-1, 3),
        a0=A0,
        airy_zeros=zeros,
        airy_zeta=zeta,
    )
