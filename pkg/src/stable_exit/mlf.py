"""Mittag-Leffler functions E_{a,b}(z) = sum_n z^n / Gamma(a*n + b) with error bounds.

Supported parameter set: a in (0, 2], b in {a, a-1, 1} — everything the exit-law
machinery needs (E_{a,a} for scale functions and residues, E_{a,a-1} for the
derivative identity, E_{1,1}=exp and E_{2,2}=sinh-type for cross-checks).

Every evaluation returns a certified absolute error bound alongside the value,
and records which of three routes produced it:

``taylor``
    the defining power series in double precision, stopped once the next term
    is negligible against the partial sum; the bound tracks accumulated
    rounding (eps * sum of |terms|, with amplification factors for the
    log-space variant used at larger |z|) plus a geometric truncation tail.

``asymptotic``
    the exponentially improved large-|z| expansion

        E_{a,b}(z) = (1/a) * sum_m w_m^{1-b} e^{w_m}  -  sum_k z^{-k}/Gamma(b - a*k),

    where w_m = z^{1/a} e^{2*pi*i*m/a} ranges over the determinations with
    |arg z + 2*pi*m| < a*pi (at most two are active for a <= 2; both are kept
    whenever present — near the rays arg z = +/- a*pi/2 the second exponential
    is comparable to the algebraic remainder and cannot be dropped).  The
    algebraic series is truncated adaptively at its smallest term; the bound
    is ten times the first omitted term plus rounding.  For a = 2 every
    algebraic coefficient vanishes (1/Gamma of a nonpositive integer) and the
    expansion is exact up to rounding, reproducing E_{2,2}(-x) = sin(sqrt x)/sqrt x.

``taylor_hp``
    the power series in mpmath arbitrary precision, with digits chosen from
    the cancellation scale |z|^{1/a} * log10(e) and the requested tolerance.
    This route covers the mid-band near the rays arg z ~ +/- a*pi/2 where
    double-precision Taylor loses too many digits to cancellation and the
    asymptotic remainder is still above tolerance.  Results are cached.

Tolerance semantics: a result is accepted once its bound is below
max(abs_tol, rel_tol * |value|); the extended-precision fallback targets the
tighter of that and rel_tol relative to a rigorous upper bound on |E| obtained
from the double-precision attempts, so near a zero of E the reported value may
be smaller than the bound (the bound is still valid and tiny — this is the
expected behaviour when evaluating at a root).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache

import mpmath as mp
import numpy as np
from scipy.special import gammaln, rgamma

_EPS = float(np.finfo(float).eps)
_LOG_MAX = 700.0  # natural-log overflow threshold for exp() in double
_PI = math.pi

__all__ = [
    "MlParams",
    "MlValue",
    "MlLogValue",
    "MlOverflowError",
    "ml_eval",
    "ml_eval_log",
    "ml_derivative",
    "ml_asymptotic",
]


class MlOverflowError(OverflowError):
    """Raised when |E_{a,b}(z)| exceeds the double range.

    Carries the natural-log scale of the value; callers that can work with a
    scaled representation should use :func:`ml_eval_log` instead.
    """

    def __init__(self, log_scale: float):
        super().__init__(
            f"Mittag-Leffler value at natural-log scale {log_scale:.1f} overflows "
            "double precision; use ml_eval_log for a (mantissa, log) representation"
        )
        self.log_scale = log_scale


@dataclass(frozen=True)
class MlParams:
    """Parameter pair (a, b) of E_{a,b}; restricted to b in {a, a-1, 1}."""

    a: float
    b: float

    def __post_init__(self):
        if not (0.0 < self.a <= 2.0) or not math.isfinite(self.a):
            raise ValueError(f"first Mittag-Leffler parameter must be in (0, 2], got {self.a}")
        if not any(abs(self.b - t) < 1e-9 for t in (self.a, self.a - 1.0, 1.0)):
            raise ValueError(
                f"second Mittag-Leffler parameter must be one of a, a-1, 1; got b={self.b} for a={self.a}"
            )


@dataclass(frozen=True)
class MlValue:
    value: complex
    abs_error_bound: float
    method: str  # 'taylor' | 'asymptotic' | 'taylor_hp'


@dataclass(frozen=True)
class MlLogValue:
    """Scaled representation: value = mantissa * exp(log_scale)."""

    mantissa: complex
    log_scale: float
    mantissa_error_bound: float
    method: str

    @property
    def value(self) -> complex:
        return self.mantissa * cmath.exp(self.log_scale)


# --------------------------------------------------------------------------
# cached coefficient tables
# --------------------------------------------------------------------------

_SERIES_RG: dict[tuple[float, float], np.ndarray] = {}


def _series_rgamma(a: float, b: float, n: int) -> np.ndarray:
    """1/Gamma(a*k + b) for k = 0..n-1, grown geometrically and cached per (a, b)."""
    tab = _SERIES_RG.get((a, b))
    if tab is None or tab.size < n:
        m = max(n, 64, 0 if tab is None else 2 * tab.size)
        _SERIES_RG[(a, b)] = tab = rgamma(a * np.arange(m) + b)
    return tab[:n]


@lru_cache(maxsize=64)
def _asym_lnrg(a: float, b: float, kmax: int):
    """log|1/Gamma(b - a*k)| and its sign for k = 1..kmax, via reflection.

    1/Gamma(w) = Gamma(1-w) sin(pi w)/pi; entries where b - a*k is a
    nonpositive integer are exact zeros (sign 0, log -inf).
    """
    k = np.arange(1, kmax + 1)
    w = b - a * k
    near_int = np.abs(w - np.round(w)) < 1e-12
    s = np.sin(_PI * w)
    with np.errstate(divide="ignore"):
        lnrg = gammaln(1.0 - w) + np.log(np.abs(s)) - math.log(_PI)
    sgn = np.sign(s)
    lnrg[near_int] = -np.inf
    sgn[near_int] = 0.0
    return lnrg, sgn


# --------------------------------------------------------------------------
# the three evaluation routes
# --------------------------------------------------------------------------

_TAYLOR_MAX_TERMS = 10_000


def _taylor_double(a: float, b: float, z: complex):
    """Power series in double precision. Returns (value, bound, n_terms)."""
    az = abs(z)
    w = az ** (1.0 / a)
    n = int(a * w + 9.0 * math.sqrt(a * w + 1.0) + 20.0)
    n = min(max(n, 8), _TAYLOR_MAX_TERMS)
    rg = _series_rgamma(a, b, n)
    ns = np.arange(n)
    if az <= 30.0:
        terms = z ** ns * rg
        amp = ns + 4.0
    else:
        # log-space per-term evaluation avoids overflow of z**n against
        # underflow of 1/Gamma; the exp argument magnitude amplifies rounding.
        expo = ns * cmath.log(z) - gammaln(a * ns + b)
        terms = np.exp(expo)
        amp = np.abs(expo.real) + np.abs(expo.imag) + 4.0
    absterms = np.abs(terms)
    value = complex(terms.sum())
    rounding = _EPS * float(absterms @ amp)
    # geometric tail: past n the term ratio is below az / (a*n + b)^a
    ratio = az / float(a * n + b) ** a
    last = float(absterms[-1])
    tail = last * ratio / (1.0 - ratio) if ratio < 0.5 else math.inf
    return value, rounding + tail, n


def _asym_double(a: float, b: float, z: complex, log_shift: float = 0.0):
    """Exponentially improved expansion; all magnitudes scaled by exp(-log_shift).

    Returns (value_scaled, bound_scaled, max_Re_w). Raises MlOverflowError only
    if an active exponential overflows after the shift.
    """
    az = abs(z)
    th = cmath.phase(z)
    la = math.log(az)
    exp_sum = 0.0 + 0.0j
    exp_rounding = 0.0
    max_re_w = -math.inf
    kept_w: list[complex] = []
    for m_branch in (0, -1, 1):
        phi = th + 2.0 * _PI * m_branch
        # keep every determination w_m with |arg w_m| <= pi (closed: the
        # boundary carries the recessive exponential, e.g. E_{1,1}(-x)=e^{-x});
        # dedupe the a=1, arg z = pi corner where m=0 and m=-1 coincide
        if abs(phi) > a * _PI + 1e-12:
            continue
        logw = (la + 1j * phi) / a
        wm = cmath.exp(logw)
        if any(abs(wm - wk) <= 1e-9 * (1.0 + abs(wm)) for wk in kept_w):
            continue
        kept_w.append(wm)
        max_re_w = max(max_re_w, wm.real)
        arg = (1.0 - b) * logw + wm - log_shift
        if arg.real > _LOG_MAX:
            raise MlOverflowError(arg.real + math.log(1.0 / a) + log_shift)
        if arg.real < -_LOG_MAX:
            continue  # exponentially negligible against the shift scale
        term = cmath.exp(arg) / a
        exp_sum += term
        exp_rounding += abs(term) * (abs(wm) + abs(arg.imag) + 4.0) * _EPS
    # algebraic part: - sum_k z^{-k} / Gamma(b - a k), adaptively truncated
    kmax = min(int(az ** (1.0 / a)) + 12, 2048)
    lnrg, sgn = _asym_lnrg(a, b, kmax)
    ks = np.arange(1, kmax + 1)
    ln_mag = -ks * la + lnrg - log_shift
    live = sgn != 0.0
    alg_sum = 0.0 + 0.0j
    alg_rounding = 0.0
    first_omitted = 0.0
    if np.any(live):
        idx = np.flatnonzero(live)
        mags = ln_mag[idx]
        # divergence onset: stop before the first live term that grows again
        stop = len(idx)
        for j in range(1, len(idx)):
            if mags[j] >= mags[j - 1]:
                stop = j
                break
        keep = idx[:stop]
        if keep.size:
            phases = np.exp(1j * (-(ks[keep]) * th))
            vals = -sgn[keep] * np.exp(ln_mag[keep]) * phases
            alg_sum = complex(vals.sum())
            amp = ks[keep] * (abs(la) + abs(th)) + np.abs(lnrg[keep]) + 4.0
            alg_rounding = _EPS * float(np.abs(vals) @ amp)
        if stop < len(idx):
            first_omitted = math.exp(min(mags[stop], _LOG_MAX))
        else:
            # series exhausted while still decreasing: bound by the next
            # (hypothetical) term's scale, i.e. the last kept magnitude shrunk
            # by the current ratio — conservative fallback, rare in practice.
            first_omitted = math.exp(min(mags[-1], _LOG_MAX)) if len(idx) else 0.0
    value = exp_sum + alg_sum
    bound = 10.0 * first_omitted + exp_rounding + alg_rounding
    return value, bound, max_re_w


_HP_CACHE: dict[tuple[float, float, complex], tuple[complex, float]] = {}


def _taylor_hp(a: float, b: float, z: complex, abs_target: float):
    """Power series in arbitrary precision; cached. Returns (value, bound)."""
    cached = _HP_CACHE.get((a, b, z))
    if cached is not None and cached[1] <= abs_target:
        return cached
    w = abs(z) ** (1.0 / a)
    digits_cancel = max(0.0, w * 0.4343)
    digits_target = max(0.0, -math.log10(max(abs_target, 1e-280)))
    dps = int(digits_cancel + digits_target + 12.0)
    if dps > 500:
        raise RuntimeError(f"extended-precision Mittag-Leffler request needs dps={dps}; "
                           "outside the supported band (routing bug)")
    n_cap = int(a * w + 10.0 * math.sqrt(a * w + 1.0) + 30.0)
    with mp.workdps(dps):
        zz = mp.mpc(z)
        total = mp.mpc(0)
        abs_total = mp.mpf(0)
        zp = mp.mpc(1)
        tiny = mp.mpf(10) ** (-dps - 2)
        n = 0
        while n <= n_cap:
            t = zp * mp.rgamma(a * n + b)
            total += t
            abs_total += abs(t)
            if n > 4 and abs(t) < tiny * (abs_total + 1):
                break
            zp *= zz
            n += 1
        bound = float(abs_total) * 10.0 ** (-dps) * (n + 4) + float(abs(t)) * 2.0
        out = (complex(total), bound)
    _HP_CACHE[(a, b, z)] = out
    if len(_HP_CACHE) > 20_000:
        _HP_CACHE.clear()
    return out


# --------------------------------------------------------------------------
# public API
# --------------------------------------------------------------------------

def _accept(bound: float, value: complex, abs_tol: float | None, rel_tol: float) -> bool:
    target = rel_tol * abs(value)
    if abs_tol is not None:
        target = max(target, abs_tol)
    return bound <= target


def ml_eval(p: MlParams, z: complex, abs_tol: float | None = None,
            rel_tol: float = 1e-13) -> MlValue:
    """Evaluate E_{a,b}(z) with a certified absolute error bound.

    Routing tries the double-precision power series and the asymptotic
    expansion (order depending on |z|) and accepts the first result whose
    bound meets max(abs_tol, rel_tol*|value|); otherwise it falls back to the
    extended-precision series targeted at rel_tol times a rigorous upper
    bound on |E| extracted from the double attempts.

    Raises MlOverflowError when the value itself exceeds the double range.
    """
    a, b = p.a, p.b
    z = complex(z)
    if z == 0:
        c = float(rgamma(b))
        return MlValue(complex(c), 4.0 * _EPS * abs(c), "taylor")
    az = abs(z)
    attempts: list[tuple[str, complex, float]] = []

    def try_taylor():
        if az <= 700.0:
            v, e, _ = _taylor_double(a, b, z)
            attempts.append(("taylor", v, e))
            return _accept(e, v, abs_tol, rel_tol)
        return False

    def try_asym():
        if az >= 8.0:
            v, e, max_re_w = _asym_double(a, b, z)
            if max_re_w > _LOG_MAX - 10.0:
                raise MlOverflowError(max_re_w)
            attempts.append(("asymptotic", v, e))
            return _accept(e, v, abs_tol, rel_tol)
        return False

    order = (try_taylor, try_asym) if az <= 44.0 else (try_asym, try_taylor)
    for attempt in order:
        if attempt():
            m, v, e = attempts[-1]
            return MlValue(v, e, m)
    # rigorous upper bound on |E| from whatever double routes produced
    scale_cap = min((abs(v) + e for _, v, e in attempts), default=math.inf)
    if not math.isfinite(scale_cap):
        scale_cap = math.exp(min(az ** (1.0 / a), _LOG_MAX)) / a + 1.0
    target = rel_tol * max(scale_cap, 1e-300)
    if abs_tol is not None:
        target = max(target, abs_tol)
    v, e = _taylor_hp(a, b, z, target)
    return MlValue(v, e, "taylor_hp")


def ml_asymptotic(p: MlParams, z: complex, crossover: float = 40.0) -> MlValue:
    """The large-|z| expansion alone; rejects |z| below the crossover radius."""
    z = complex(z)
    if abs(z) < crossover:
        raise ValueError(f"|z|={abs(z):.3g} below the asymptotic crossover radius {crossover:g}")
    v, e, max_re_w = _asym_double(p.a, p.b, z)
    if max_re_w > _LOG_MAX - 10.0:
        raise MlOverflowError(max_re_w)
    return MlValue(v, e, "asymptotic")


def ml_eval_log(p: MlParams, z: complex, rel_tol: float = 1e-12) -> MlLogValue:
    """E_{a,b}(z) as (mantissa, log_scale); immune to overflow of exp(z^{1/a}).

    In the exponential-dominant regime the scale is Re z^{1/a} (principal);
    elsewhere this defers to ml_eval with log_scale 0.
    """
    a = p.a
    z = complex(z)
    if z == 0:
        c = float(rgamma(p.b))
        return MlLogValue(complex(c), 0.0, 4.0 * _EPS * abs(c), "taylor")
    az = abs(z)
    th = cmath.phase(z)
    re_w0 = az ** (1.0 / a) * math.cos(th / a)
    if az >= 8.0:
        shift = max(re_w0, 0.0)
        v, e, _ = _asym_double(a, p.b, z, log_shift=shift)
        if e <= rel_tol * abs(v):
            return MlLogValue(v, shift, e, "asymptotic")
    val = ml_eval(p, z, rel_tol=rel_tol)
    return MlLogValue(val.value, 0.0, val.abs_error_bound, val.method)


def _deriv_series(a: float, b: float, z: complex):
    """Term-wise differentiated series, for small |z| only."""
    n = 40 + int(6 * abs(z))
    rg = _series_rgamma(a, b, n)
    ns = np.arange(1, n)
    terms = ns * z ** (ns - 1) * rg[1:]
    value = complex(terms.sum())
    bound = _EPS * float(np.abs(terms) @ (ns + 4.0)) + float(np.abs(terms[-1]))
    return value, bound


def ml_derivative(p: MlParams, z: complex, abs_tol: float | None = None,
                  rel_tol: float = 1e-13) -> MlValue:
    """E'_{a,a}(z) via the identity a*z*E'_{a,a}(z) = E_{a,a-1}(z) - (a-1)*E_{a,a}(z).

    Requires b == a.  Near z = 0 the identity is 0/0 (the numerator vanishes
    linearly), so the term-wise differentiated series is used instead.
    """
    a = p.a
    if abs(p.b - a) > 1e-12:
        raise ValueError("ml_derivative requires the E_{a,a} case (b == a)")
    z = complex(z)
    if abs(z) <= 1.0:
        v, e = _deriv_series(a, a, z)
        return MlValue(v, e, "taylor")
    inner_abs = None if abs_tol is None else abs_tol * a * abs(z) * 0.5
    e1 = ml_eval(MlParams(a, a - 1.0), z, abs_tol=inner_abs, rel_tol=rel_tol)
    e0 = ml_eval(p, z, abs_tol=inner_abs, rel_tol=rel_tol)
    value = (e1.value - (a - 1.0) * e0.value) / (a * z)
    bound = (e1.abs_error_bound + (a - 1.0) * e0.abs_error_bound) / (a * abs(z)) \
        + 4.0 * _EPS * abs(value)
    method = e1.method if e1.method == e0.method else f"{e0.method}+{e1.method}"
    return MlValue(value, bound, method)
