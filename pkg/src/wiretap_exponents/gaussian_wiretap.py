"""Closed-form capacity and exponents for the scalar Gaussian wiretap channel.

Both receivers see an attenuated input plus independent Gaussian noise;
the input is average-power limited, and with a Gaussian input at full
power everything reduces to the two effective SNRs ``snr_bob`` and
``snr_eve``. Degradedness (noise-to-attenuation ratio no worse for the
legitimate receiver) is required at construction time.

Four exponent formulas are provided, two per side, differing in the
anchoring of the exponential power tilt: the forward-tilt variants
weight by exp(s * (cap - cost)), Gallager's classical variants by
exp(s * (cost - cap)), and the two choices land the tilt optimum on
opposite sides of a shared expression.

* ``reliability_forward_tilt``: parametric in rho with a linear segment
  below the critical rate ``critical_rates()[0]``.
* ``reliability_gallager``: explicit in beta = exp(2R), valid above the
  critical rate ``critical_rates()[1]``, with a fixed-beta linear branch
  below it.
* ``secrecy_forward_tilt``: the same explicit beta form evaluated at
  beta = exp(2 R_E), valid from the tapped channel's capacity rate up.
* ``secrecy_gallager_type``: parametric in rho, same validity range.

Rates and exponents are nats per channel use. The explicit beta form is
shared by one reliability and one secrecy variant, and the two
parametric forms map into each other under rho -> -rho; tests assert
both correspondences numerically.
"""

import math

from .solvers import bisect_root

CRITICAL_TOL = 1e-12


class GaussianWiretapParams:
    """Attenuations, noise deviations, and the power cap of a Gaussian pair."""

    __slots__ = ("gain_bob", "gain_eve", "noise_bob", "noise_eve", "gamma")

    def __init__(self, gain_bob, gain_eve, noise_bob, noise_eve, gamma):
        gain_bob, gain_eve = float(gain_bob), float(gain_eve)
        noise_bob, noise_eve = float(noise_bob), float(noise_eve)
        gamma = float(gamma)
        if min(gain_bob, gain_eve, noise_bob, noise_eve) <= 0.0 or gamma <= 0.0:
            raise ValueError("gains, noise deviations, and the power cap must be positive")
        if noise_bob / gain_bob > noise_eve / gain_eve:
            raise ValueError(
                "degradedness requires noise_bob/gain_bob <= noise_eve/gain_eve, got "
                f"{noise_bob / gain_bob} > {noise_eve / gain_eve}"
            )
        object.__setattr__(self, "gain_bob", gain_bob)
        object.__setattr__(self, "gain_eve", gain_eve)
        object.__setattr__(self, "noise_bob", noise_bob)
        object.__setattr__(self, "noise_eve", noise_eve)
        object.__setattr__(self, "gamma", gamma)

    def __setattr__(self, name, value):
        raise AttributeError("GaussianWiretapParams is immutable")

    @property
    def snr_bob(self):
        return self.gain_bob**2 * self.gamma / self.noise_bob**2

    @property
    def snr_eve(self):
        return self.gain_eve**2 * self.gamma / self.noise_eve**2

    def __repr__(self):
        return (
            f"GaussianWiretapParams(gain_bob={self.gain_bob}, gain_eve={self.gain_eve}, "
            f"noise_bob={self.noise_bob}, noise_eve={self.noise_eve}, gamma={self.gamma})"
        )


def capacity(params):
    """Secrecy capacity in nats per use: half log-SNR-gap of the two receivers."""
    return 0.5 * math.log1p(params.snr_bob) - 0.5 * math.log1p(params.snr_eve)


def _gallager_form(snr, beta):
    """Shared explicit exponent form in (SNR, beta), beta = exp(2 * rate).

    Requires beta > 1; the log argument is positive throughout the
    validity ranges of both users of the form and is guarded anyway.
    """
    if beta <= 1.0:
        raise ValueError(f"beta must exceed 1, got {beta}")
    root = math.sqrt(1.0 + 4.0 * beta / (snr * (beta - 1.0)))
    first = snr / (4.0 * beta) * ((beta + 1.0) - (beta - 1.0) * root)
    inside = beta - 0.5 * snr * (beta - 1.0) * (root - 1.0)
    if inside <= 0.0:
        raise RuntimeError(f"log argument {inside} not positive at snr={snr}, beta={beta}")
    return first + 0.5 * math.log(inside)


def _parametric_reliability_rate(snr, rho):
    return 0.5 * math.log1p(snr / (1.0 + rho)) - rho * snr / (
        2.0 * (1.0 + rho) * (1.0 + rho + snr)
    )


def _parametric_secrecy_rate(snr, rho):
    return 0.5 * math.log1p(snr / (1.0 - rho)) + rho * snr / (
        2.0 * (1.0 - rho) * (1.0 - rho + snr)
    )


def critical_rates(params):
    """The two critical rates (parametric variant, explicit variant) for the main channel.

    The parametric one never exceeds the explicit one.
    """
    a = params.snr_bob
    r_param = 0.5 * math.log1p(0.5 * a) - a / (4.0 * (2.0 + a))
    r_expl = 0.5 * math.log(0.5 + 0.25 * a + 0.5 * math.sqrt(1.0 + 0.25 * a * a))
    if r_param > r_expl + CRITICAL_TOL:
        raise AssertionError(f"critical rates out of order: {r_param} > {r_expl}")
    return r_param, r_expl


def _check_total_rate(params, rate):
    cap = 0.5 * math.log1p(params.snr_bob)
    if not 0.0 <= rate <= cap + 1e-12:
        raise ValueError(f"total rate must be in [0, {cap}], got {rate}")
    return cap


def _invert_monotone(f, target, lo, hi, decreasing):
    f_lo, f_hi = f(lo), f(hi)
    if decreasing and not f_lo >= f_hi:
        raise RuntimeError("rate map is not decreasing on the bracket")
    if not decreasing and not f_hi >= f_lo:
        raise RuntimeError("rate map is not increasing on the bracket")
    root, _ = bisect_root(lambda x: f(x) - target, lo, hi, tol=1e-12)
    return root


def reliability_forward_tilt(params, rate):
    """Reliability exponent, parametric variant, at total rate R_B + R_E.

    Above its critical rate the exponent follows the parametric curve
    (the rate map is inverted by bisection); below it the curve
    continues as a straight line of slope -1.
    """
    cap = _check_total_rate(params, rate)
    a = params.snr_bob
    r_crit, _ = critical_rates(params)
    if rate < r_crit:
        return 0.5 * math.log1p(0.5 * a) - rate
    rate = min(rate, cap)
    rho = _invert_monotone(
        lambda r: _parametric_reliability_rate(a, r), rate, 0.0, 1.0, decreasing=True
    )
    return rho * rho * a / (2.0 * (1.0 + rho) * (1.0 + rho + a))


def reliability_gallager(params, rate):
    """Reliability exponent, explicit variant, at total rate R_B + R_E."""
    cap = _check_total_rate(params, rate)
    a = params.snr_bob
    _, r_crit = critical_rates(params)
    if rate >= r_crit:
        return _gallager_form(a, math.exp(2.0 * min(rate, cap)))
    beta = 0.5 * (1.0 + 0.5 * a + math.sqrt(1.0 + 0.25 * a * a))
    return (
        1.0
        - beta
        + 0.5 * a
        + 0.5 * math.log(beta - 0.5 * a)
        + 0.5 * math.log(beta)
        - rate
    )


def _check_secrecy_rate(params, rate_e):
    floor = 0.5 * math.log1p(params.snr_eve)
    if rate_e < floor - 1e-12:
        raise ValueError(f"resolvability rate must be at least {floor}, got {rate_e}")
    return max(rate_e, floor)


def secrecy_forward_tilt(params, rate_e):
    """Secrecy exponent, explicit variant, at resolvability rate R_E."""
    rate_e = _check_secrecy_rate(params, rate_e)
    return _gallager_form(params.snr_eve, math.exp(2.0 * rate_e))


def secrecy_gallager_type(params, rate_e):
    """Secrecy exponent, parametric variant, at resolvability rate R_E."""
    rate_e = _check_secrecy_rate(params, rate_e)
    a = params.snr_eve
    hi = 1.0 - 1e-12
    if _parametric_secrecy_rate(a, hi) < rate_e:
        raise ValueError(f"resolvability rate {rate_e} beyond the invertible range")
    rho = _invert_monotone(
        lambda r: _parametric_secrecy_rate(a, r), rate_e, 0.0, hi, decreasing=False
    )
    return rho * rho * a / (2.0 * (1.0 - rho) * (1.0 - rho + a))
