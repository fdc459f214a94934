"""Closed-form exponents and capacity for the discretized Poisson wiretap channel.

The physical model: the sender keys a photon rate between 0 and a peak
(A_y toward the receiver, A_z toward the tap), each direction adding a
dark-current background rate. Slicing time into width-delta bins and
thresholding the counts gives a binary-input binary-output pair whose
crossover probabilities are linear in delta; all public quantities here
are the delta -> 0 limits and are expressed per second, never per
channel use. The duty cycle (fraction of time the source is on) is the
cost, capped by gamma.

Degradedness of the pair requires a stronger signal and a smaller
dark-to-peak ratio for the legitimate receiver; the constructor rejects
parameter sets without it (with at least one strict inequality), since
every formula below leans on the induced concavity.

Evaluations use the algebraic form
``((1-q) s^(1/k) + q (1+s)^(1/k))^k`` rather than the equivalent
ratio form with (1 + 1/s) factors: it stays finite and continuous all
the way to s = 0 (zero dark current), with the convention
s^a * log(s) -> 0.
"""

import math
from dataclasses import dataclass

import numpy as np

from .channel_core import CostedInput, DiscreteChannel, WiretapPair
from .exponent_engine import ExponentCurve, RHO_EPS
from .solvers import bisect_root


class PoissonWiretapParams:
    """Peak rates, dark currents, and the duty-cycle cap of a Poisson pair."""

    __slots__ = ("peak_bob", "peak_eve", "dark_bob", "dark_eve", "gamma")

    def __init__(self, peak_bob, peak_eve, dark_bob, dark_eve, gamma):
        peak_bob, peak_eve = float(peak_bob), float(peak_eve)
        dark_bob, dark_eve = float(dark_bob), float(dark_eve)
        gamma = float(gamma)
        if peak_bob <= 0.0 or peak_eve <= 0.0:
            raise ValueError("peak rates must be positive")
        if dark_bob < 0.0 or dark_eve < 0.0:
            raise ValueError("dark currents must be nonnegative")
        if not 0.0 <= gamma <= 1.0:
            raise ValueError(f"duty-cycle cap must be in [0, 1], got {gamma}")
        # Ratio comparison is cross-multiplied with a relative tolerance so
        # that mathematically equal ratios are not split by rounding.
        lhs = dark_bob * peak_eve
        rhs = dark_eve * peak_bob
        ratio_tol = 1e-12 * max(1.0, abs(rhs))
        if peak_bob < peak_eve or lhs > rhs + ratio_tol:
            raise ValueError(
                "degradedness requires peak_bob >= peak_eve and "
                f"dark_bob/peak_bob <= dark_eve/peak_eve, got peaks ({peak_bob}, {peak_eve}) "
                f"and dark currents ({dark_bob}, {dark_eve})"
            )
        if peak_bob == peak_eve and abs(lhs - rhs) <= ratio_tol:
            raise ValueError("the two channels are identical; need one strict inequality")
        object.__setattr__(self, "peak_bob", peak_bob)
        object.__setattr__(self, "peak_eve", peak_eve)
        object.__setattr__(self, "dark_bob", dark_bob)
        object.__setattr__(self, "dark_eve", dark_eve)
        object.__setattr__(self, "gamma", gamma)

    def __setattr__(self, name, value):
        raise AttributeError("PoissonWiretapParams is immutable")

    @property
    def s_bob(self):
        return self.dark_bob / self.peak_bob

    @property
    def s_eve(self):
        return self.dark_eve / self.peak_eve

    def __repr__(self):
        return (
            f"PoissonWiretapParams(peak_bob={self.peak_bob}, peak_eve={self.peak_eve}, "
            f"dark_bob={self.dark_bob}, dark_eve={self.dark_eve}, gamma={self.gamma})"
        )


@dataclass(frozen=True)
class DiscretizedPoisson:
    """Binary wiretap pair produced by time slicing, plus its cost data."""

    pair: WiretapPair
    costs: np.ndarray
    gamma: float
    delta: float

    def make_input(self, q_on):
        """CostedInput turning a duty probability into a binary input law."""
        return CostedInput([1.0 - q_on, q_on], self.costs, self.gamma)


def discretize(params, delta):
    """Slice time into width-delta bins, giving a binary wiretap pair.

    Transition probabilities are linear in delta (the single-count
    thresholding limit); delta must be small enough that they stay at
    most 1. The per-letter cost is the input bit itself.
    """
    delta = float(delta)
    if delta <= 0.0:
        raise ValueError("bin width must be positive")
    rows = []
    for peak, dark in ((params.peak_bob, params.dark_bob), (params.peak_eve, params.dark_eve)):
        p0 = dark * delta
        p1 = (peak + dark) * delta
        if p1 > 1.0 or p0 > 1.0:
            raise ValueError(f"bin width {delta} gives a transition probability above 1")
        rows.append([[1.0 - p0, p0], [1.0 - p1, p1]])
    pair = WiretapPair(DiscreteChannel(rows[0]), DiscreteChannel(rows[1]))
    return DiscretizedPoisson(pair, np.array([0.0, 1.0]), params.gamma, delta)


def _tilted_mean(q, s, kappa):
    # ((1-q) s^(1/kappa) + q (1+s)^(1/kappa)); finite for all s >= 0.
    return (1.0 - q) * s ** (1.0 / kappa) + q * (1.0 + s) ** (1.0 / kappa)


def _tilted_mean_dkappa_part(q, s, kappa):
    # d/drho of the mean, divided by the sign of d(1/kappa)/drho:
    # (1-q) s^(1/k) log s + q (1+s)^(1/k) log(1+s), with s^a log s -> 0 at s=0.
    first = 0.0 if s == 0.0 else (1.0 - q) * s ** (1.0 / kappa) * math.log(s)
    return first + q * (1.0 + s) ** (1.0 / kappa) * math.log1p(s)


def _check_duty(params, q):
    if not 0.0 <= q <= params.gamma:
        raise ValueError(f"duty probability must be in [0, {params.gamma}], got {q}")


def reliability_exponent(params, q, rho):
    """Per-second decoding-error exponent base at tilt order 1 + rho."""
    _check_duty(params, q)
    if not 0.0 <= rho <= 1.0:
        raise ValueError(f"rho must be in [0, 1], got {rho}")
    s = params.s_bob
    kappa = 1.0 + rho
    return params.peak_bob * (q + s - _tilted_mean(q, s, kappa) ** kappa)


def secrecy_exponent(params, q, rho):
    """Per-second divergence exponent base at tilt order 1 - rho."""
    _check_duty(params, q)
    if not 0.0 < rho < 1.0:
        raise ValueError(f"rho must be in (0, 1), got {rho}")
    s = params.s_eve
    kappa = 1.0 - rho
    return params.peak_eve * (q + s - _tilted_mean(q, s, kappa) ** kappa)


def reliability_rate(params, q, rho):
    """Total rate (nats/second) paired with rho on the reliability curve.

    This is the rho-derivative of the reliability exponent base; the
    curve point at parameter rho sits at this rate.
    """
    _check_duty(params, q)
    s = params.s_bob
    kappa = 1.0 + rho
    g = _tilted_mean(q, s, kappa)
    gdot = -_tilted_mean_dkappa_part(q, s, kappa) / (kappa * kappa)
    # d/drho of g^kappa = g^kappa log g + kappa g^(kappa-1) gdot
    return -params.peak_bob * (g ** kappa * math.log(g) + kappa * g ** (kappa - 1.0) * gdot)


def secrecy_rate(params, q, rho):
    """Resolvability rate (nats/second) paired with rho on the secrecy curve."""
    _check_duty(params, q)
    s = params.s_eve
    kappa = 1.0 - rho
    g = _tilted_mean(q, s, kappa)
    part = _tilted_mean_dkappa_part(q, s, kappa)
    # -d/drho of g^kappa; d(kappa)/drho = -1 and d(1/kappa)/drho = 1/kappa^2
    return params.peak_eve * (g ** (kappa - 1.0) * part / kappa - g ** kappa * math.log(g))


def _information_rate(peak, s, q):
    # Per-second mutual information of the sliced channel in the delta->0 limit.
    first = 0.0 if s == 0.0 else (1.0 - q) * s * math.log(s)
    if q + s <= 0.0:
        return 0.0
    return peak * (-(q + s) * math.log(q + s) + q * (1.0 + s) * math.log1p(s) + first)


def bob_zero_rate(params, q):
    """Rate at which the reliability curve reaches zero exponent."""
    _check_duty(params, q)
    return _information_rate(params.peak_bob, params.s_bob, q)


def eve_zero_rate(params, q):
    """Rate at which the secrecy curve leaves zero exponent."""
    _check_duty(params, q)
    return _information_rate(params.peak_eve, params.s_eve, q)


def reliability_curve(params, q, points=60):
    """Parametric reliability curve swept over rho in [0, 1], per second.

    Decreasing and convex, reaching zero exactly at ``bob_zero_rate``.
    """
    _check_duty(params, q)
    rhos = np.linspace(1.0, 0.0, points)
    rates = [reliability_rate(params, q, float(r)) for r in rhos]
    exps = [
        reliability_exponent(params, q, float(r)) - float(r) * rate
        for r, rate in zip(rhos, rates)
    ]
    meta = {"function": "reliability_per_second", "q": q, "argmax_rho": rhos.tolist()}
    return ExponentCurve(rates, np.maximum(exps, 0.0), meta)


def secrecy_curve(params, q, points=60, rho_max=0.9):
    """Parametric secrecy curve swept over rho in (0, rho_max], per second.

    Increasing and convex, leaving zero exactly at ``eve_zero_rate``.
    """
    _check_duty(params, q)
    if not 0.0 < rho_max < 1.0:
        raise ValueError("rho_max must be in (0, 1)")
    rhos = np.linspace(RHO_EPS, rho_max, points)
    rates = [secrecy_rate(params, q, float(r)) for r in rhos]
    exps = [
        secrecy_exponent(params, q, float(r)) + float(r) * rate
        for r, rate in zip(rhos, rates)
    ]
    meta = {"function": "secrecy_per_second", "q": q, "argmax_rho": rhos.tolist()}
    return ExponentCurve(rates, np.maximum(exps, 0.0), meta)


def information_gap(params, q):
    """Per-second mutual-information gap between the two receivers at duty q.

    Defined on all of [0, 1]; the duty cap only matters when maximizing.
    """
    if not 0.0 <= q <= 1.0:
        raise ValueError(f"duty probability must be in [0, 1], got {q}")
    return _information_rate(params.peak_bob, params.s_bob, q) - _information_rate(
        params.peak_eve, params.s_eve, q
    )


def _gap_derivative(params, q):
    ay, az = params.peak_bob, params.peak_eve
    sy, sz = params.s_bob, params.s_eve
    dy = -math.log(q + sy) - 1.0 + (1.0 + sy) * math.log1p(sy) - (0.0 if sy == 0.0 else sy * math.log(sy))
    dz = math.log(q + sz) + 1.0 - (1.0 + sz) * math.log1p(sz) + (0.0 if sz == 0.0 else sz * math.log(sz))
    return ay * dy + az * dz


@dataclass(frozen=True)
class PoissonCapacity:
    """Capacity report: value in nats/second plus solver diagnostics."""

    value: float
    q_star: float
    q_capped: float
    residual: float


def capacity(params):
    """Per-second secrecy capacity of the pair.

    The information gap is strictly concave in the duty probability and
    vanishes at 0 and 1, so its derivative has a unique root in (0, 1);
    the root is found by bisection and then capped by the duty-cycle
    limit.
    """
    lo, hi = 1e-12, 1.0 - 1e-12
    f_lo = _gap_derivative(params, lo)
    f_hi = _gap_derivative(params, hi)
    if not (f_lo > 0.0 > f_hi):
        raise RuntimeError(
            f"gap derivative lost its bracket: f({lo})={f_lo}, f({hi})={f_hi}"
        )
    q_star, _ = bisect_root(lambda q: _gap_derivative(params, q), lo, hi, tol=1e-16)
    residual = abs(_gap_derivative(params, q_star))
    q_capped = min(q_star, params.gamma)
    return PoissonCapacity(information_gap(params, q_capped), q_star, q_capped, residual)


class ConcatenationParams:
    """Binary auxiliary prefix: on-probabilities a (input on) and b (input off)."""

    __slots__ = ("a", "b")

    def __init__(self, a, b):
        a, b = float(a), float(b)
        if not (0.0 <= b < a <= 1.0):
            raise ValueError(f"need 0 <= b < a <= 1, got a={a}, b={b}")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    def __setattr__(self, name, value):
        raise AttributeError("ConcatenationParams is immutable")

    def channel(self):
        return DiscreteChannel([[1.0 - self.b, self.b], [1.0 - self.a, self.a]])


def concatenate_params(params, conc):
    """Parameters of the pair seen through a binary prefix channel.

    The prefix attenuates both peaks by a factor a - b and adds b times
    the peak to each dark current; the result is again a degraded
    Poisson pair. The duty cap transforms to (gamma - b) / (a - b),
    clipped at 1 when the original cap exceeds a (the constraint is then
    inactive). Requires gamma >= b.
    """
    if params.gamma < conc.b:
        raise ValueError(f"duty cap {params.gamma} below the prefix floor b={conc.b}")
    scale = conc.a - conc.b
    gamma_plus = min(1.0, (params.gamma - conc.b) / scale)
    return PoissonWiretapParams(
        scale * params.peak_bob,
        scale * params.peak_eve,
        conc.b * params.peak_bob + params.dark_bob,
        conc.b * params.peak_eve + params.dark_eve,
        gamma_plus,
    )


def concatenated_capacity(params, conc):
    return capacity(concatenate_params(params, conc))


def concatenated_curves(params, conc, q, points=60, rho_max=0.9):
    """Reliability and secrecy curves of the prefixed pair at duty q on the prefix input."""
    plus = concatenate_params(params, conc)
    return (
        reliability_curve(plus, q, points=points),
        secrecy_curve(plus, q, points=points, rho_max=rho_max),
    )
