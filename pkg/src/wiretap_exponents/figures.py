"""Reference parameter sets and curve builders for the twelve standard figures.

Each figure id (2 through 13) maps to a fixed scenario: binary symmetric
pairs for 2-7, the Poisson pair for 8, 9, and 12, the Gaussian pair for
10, 11, and 13. ``figure_data`` evaluates the underlying curves from the
fixed parameters, and ``shape_report`` runs the structural checks each
figure is expected to satisfy (monotone and convex exponent curves, the
reliability/secrecy crossing where the windows overlap, orderings under
concatenation and cost changes).
"""

import math
from dataclasses import dataclass, field

import numpy as np

from . import gaussian_wiretap as gw
from . import poisson_wiretap as pw
from .channel_core import DiscreteChannel, WiretapPair
from .exponent_engine import ExponentCurve, ExponentQuery, tradeoff_scenarios

BSC_SETUP = {
    "eps_bob": 0.1,
    "eps_eve": 0.3,
    "costs": (1.0, 2.0),
    "gamma": 1.4,
    "q_on": 0.4,
}
POISSON_SETUP = {
    "peak_bob": 12.0,
    "peak_eve": 5.0,
    "dark_bob": 0.5,
    "dark_eve": 1.5,
    "gamma": 0.5,
    "q_on": 0.38,
}
GAUSSIAN_SETUP = {
    "gain_bob": 1.0,
    "gain_eve": 0.5,
    "noise_bob": 0.5,
    "noise_eve": 0.8,
    "gamma": 0.5,
}

FIGURE_IDS = tuple(range(2, 14))

CONVEXITY_TOL = 1e-7
MONOTONE_TOL = 1e-9
ORDER_TOL = 1e-9


@dataclass
class FigureData:
    fig_id: int
    params: dict
    curves: list = field(default_factory=list)  # (name, ExponentCurve)

    def curve(self, name):
        for n, c in self.curves:
            if n == name:
                return c
        raise KeyError(name)


def bsc_query(gamma=None, q_on=None):
    setup = BSC_SETUP
    gamma = setup["gamma"] if gamma is None else gamma
    q_on = setup["q_on"] if q_on is None else q_on
    pair = WiretapPair(DiscreteChannel.bsc(setup["eps_bob"]), DiscreteChannel.bsc(setup["eps_eve"]))
    return ExponentQuery(pair, [1.0 - q_on, q_on], setup["costs"], gamma)


def poisson_params():
    s = POISSON_SETUP
    return pw.PoissonWiretapParams(s["peak_bob"], s["peak_eve"], s["dark_bob"], s["dark_eve"], s["gamma"])


def gaussian_params():
    s = GAUSSIAN_SETUP
    return gw.GaussianWiretapParams(s["gain_bob"], s["gain_eve"], s["noise_bob"], s["noise_eve"], s["gamma"])


def _scenario_curves(mechanism, sweep, points):
    query = bsc_query()
    out = []
    for sc in tradeoff_scenarios(query, mechanism, sweep, points=points):
        out.append((f"reliability_{sc.label}", sc.reliability))
        out.append((f"secrecy_{sc.label}", sc.secrecy))
    return out


def _gaussian_reliability_curves(points):
    params = gaussian_params()
    cap = 0.5 * math.log1p(params.snr_bob)
    rates = np.linspace(0.02 * cap, 0.98 * cap, points)
    forward = [gw.reliability_forward_tilt(params, float(r)) for r in rates]
    gall = [gw.reliability_gallager(params, float(r)) for r in rates]
    return [
        ("reliability_parametric", ExponentCurve(rates, forward, {"function": "reliability"})),
        ("reliability_explicit", ExponentCurve(rates, gall, {"function": "reliability"})),
    ]


def _gaussian_secrecy_curves(points):
    params = gaussian_params()
    floor = 0.5 * math.log1p(params.snr_eve)
    rates = np.linspace(1.001 * floor, floor + 0.35, points)
    forward = [gw.secrecy_forward_tilt(params, float(r)) for r in rates]
    gall = [gw.secrecy_gallager_type(params, float(r)) for r in rates]
    return [
        ("secrecy_explicit", ExponentCurve(rates, forward, {"function": "secrecy"})),
        ("secrecy_parametric", ExponentCurve(rates, gall, {"function": "secrecy"})),
    ]


def _poisson_pair_curves(points):
    params = poisson_params()
    q = POISSON_SETUP["q_on"]
    return [
        ("reliability", pw.reliability_curve(params, q, points=points)),
        ("secrecy", pw.secrecy_curve(params, q, points=points)),
    ]


def figure_data(fig_id, points=33):
    """Curve data for one figure id; raises on an unknown id."""
    if fig_id not in FIGURE_IDS:
        raise ValueError(f"unknown figure id {fig_id}; valid ids are {list(FIGURE_IDS)}")
    if fig_id == 2:
        return FigureData(2, dict(BSC_SETUP), _scenario_curves("rate_shift", [], points))
    if fig_id == 3:
        return FigureData(3, dict(BSC_SETUP, delta=0.05), _scenario_curves("rate_exchange", [0.05], points))
    if fig_id == 4:
        return FigureData(4, dict(BSC_SETUP, eps_aux=0.025), _scenario_curves("concatenate", [0.025], points))
    if fig_id == 5:
        return FigureData(5, dict(BSC_SETUP, deltas=(0.05,)), _scenario_curves("rate_shift", [0.05], points))
    if fig_id in (6, 7):
        caps = [1.0, 1.2, 1.4]
        curves = _scenario_curves("cost_change", caps, points)
        keep = "reliability" if fig_id == 6 else "secrecy"
        curves = [(n, c) for n, c in curves if n.startswith(keep)]
        return FigureData(fig_id, dict(BSC_SETUP, caps=tuple(caps)), curves)
    if fig_id in (8, 12):
        return FigureData(fig_id, dict(POISSON_SETUP), _poisson_pair_curves(points))
    if fig_id == 9:
        params = poisson_params()
        conc = pw.ConcatenationParams(0.98, 0.02)
        q = POISSON_SETUP["q_on"]
        f_plus, h_plus = pw.concatenated_curves(params, conc, q, points=points)
        curves = _poisson_pair_curves(points) + [
            ("reliability_prefixed", f_plus),
            ("secrecy_prefixed", h_plus),
        ]
        return FigureData(9, dict(POISSON_SETUP, a=0.98, b=0.02), curves)
    if fig_id == 10:
        return FigureData(10, dict(GAUSSIAN_SETUP), _gaussian_reliability_curves(points))
    if fig_id == 11:
        return FigureData(11, dict(GAUSSIAN_SETUP), _gaussian_secrecy_curves(points))
    # fig 13: all four Gaussian curves together
    return FigureData(
        13, dict(GAUSSIAN_SETUP), _gaussian_reliability_curves(points) + _gaussian_secrecy_curves(points)
    )


def _monotone(values, decreasing, tol=MONOTONE_TOL, strict=False):
    d = np.diff(values)
    if decreasing:
        d = -d
    bound = 0.0 if strict else -tol
    ok = bool(np.all(d > bound) if strict else np.all(d >= bound))
    return ok, float(np.min(d))


def _convex(curve, tol=CONVEXITY_TOL):
    """Chord slopes must be nondecreasing; valid for uneven rate spacing."""
    if len(curve) < 3:
        return True, 0.0
    slopes = np.diff(curve.exponents) / np.diff(curve.rates)
    d = np.diff(slopes)
    scale = np.maximum(1.0, np.abs(slopes[:-1]))
    rel = d / scale
    return bool(np.all(rel >= -tol)), float(np.min(rel))


def _curves_cross(f_curve, h_curve):
    """True when the two exponent curves intersect on overlapping rates."""
    lo = max(f_curve.rates[0], h_curve.rates[0])
    hi = min(f_curve.rates[-1], h_curve.rates[-1])
    if hi <= lo:
        return False, 0.0
    grid = np.linspace(lo, hi, 200)
    f = np.interp(grid, f_curve.rates, f_curve.exponents)
    h = np.interp(grid, h_curve.rates, h_curve.exponents)
    diff = f - h
    sign_change = bool(np.any(np.sign(diff[:-1]) * np.sign(diff[1:]) < 0) or np.any(diff == 0.0))
    return sign_change, float(np.min(np.abs(diff)))


def _ordered_curves(hi, lo, tol=ORDER_TOL):
    """hi >= lo pointwise, compared on the overlap of the two rate windows."""
    a = max(hi.rates[0], lo.rates[0])
    b = min(hi.rates[-1], lo.rates[-1])
    if b <= a:
        return False, float("-inf")
    grid = np.linspace(a, b, 200)
    slack = float(
        np.min(np.interp(grid, hi.rates, hi.exponents) - np.interp(grid, lo.rates, lo.exponents))
    )
    return slack >= -tol, slack


def shape_report(data):
    """Structural checks for one figure; returns {check: (ok, detail)}."""
    checks = {}
    for name, curve in data.curves:
        vals = curve.exponents
        if name.startswith("reliability"):
            flat = bool(np.all(vals <= 1e-12))
            if not flat:
                checks[f"{name}_nonincreasing"] = _monotone(vals, decreasing=True)
            checks[f"{name}_convex"] = _convex(curve)
        elif name.startswith("secrecy"):
            checks[f"{name}_nondecreasing"] = _monotone(vals, decreasing=False)
            checks[f"{name}_convex"] = _convex(curve)
    if data.fig_id in (5, 8, 9, 12):
        f_name = "reliability" if data.fig_id != 5 else "reliability_base"
        h_name = "secrecy" if data.fig_id != 5 else "secrecy_base"
        checks["curves_cross"] = _curves_cross(data.curve(f_name), data.curve(h_name))
    if data.fig_id == 4:
        checks["concat_reliability_drops"] = _ordered_curves(
            data.curve("reliability_base"), data.curve("reliability_prefix_bsc_0.025")
        )
        checks["concat_secrecy_rises"] = _ordered_curves(
            data.curve("secrecy_prefix_bsc_0.025"), data.curve("secrecy_base")
        )
    if data.fig_id == 9:
        checks["concat_reliability_drops"] = _ordered_curves(
            data.curve("reliability"), data.curve("reliability_prefixed")
        )
        checks["concat_secrecy_rises"] = _ordered_curves(
            data.curve("secrecy_prefixed"), data.curve("secrecy")
        )
    if data.fig_id == 3:
        base = data.curve("reliability_base")
        moved = data.curve("reliability_exchange+0.05")
        diff = float(np.max(np.abs(base.exponents - moved.exponents)))
        checks["reliability_invariant"] = (diff == 0.0, -diff)
    if data.fig_id in (6, 7):
        kind = "reliability" if data.fig_id == 6 else "secrecy"
        caps = data.params["caps"]
        for small, large in zip(caps, caps[1:]):
            a = data.curve(f"{kind}_cap_{small:g}")
            b = data.curve(f"{kind}_cap_{large:g}")
            pairname = f"{kind}_cap_{small:g}_le_{large:g}"
            if kind == "reliability":
                checks[pairname] = _ordered_curves(b, a)
            else:
                checks[pairname] = _ordered_curves(a, b)
    return checks
