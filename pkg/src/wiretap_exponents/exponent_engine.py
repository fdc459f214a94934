"""Cost-tilted error and resolvability exponents for finite-alphabet wiretap pairs.

The two building blocks are generalized Gallager functions with two
exponential cost tilts:

* ``gallager_e0`` (order 1+rho, legitimate channel) drives the
  reliability exponent: the best exponential decay rate of the decoding
  error probability at a total rate R_B + R_E.
* ``resolvability_e0`` (order 1-rho, tapped channel) drives the secrecy
  exponent: the decay rate of the divergence between the eavesdropper's
  output and the target output law at resolvability rate R_E.

Both accept an optional auxiliary prefix channel (V -> X); without one
the input plays both roles and the two tilts merge into a single one.
Rates and exponents are in nats per channel use throughout this module.

The supremum over (rho, r, s) is taken by a coarse scan followed by
golden-section refinement in each variable; the objective is concave in
rho for fixed tilts and concave in each tilt separately, and the scan
step guards the nesting against surprises.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .channel_core import (
    CostedInput,
    DiscreteChannel,
    concatenate,
    is_more_capable,
    lifted_cost,
    mutual_information,
)
from .solvers import bisect_boundary, golden_max, scan_then_golden_max

RHO_EPS = 1e-9
TILT_CAP_SCALE = 50.0
ZERO_RATE_THRESHOLD = 1e-15
_NEG_INF = float("-inf")


class ExponentQuery:
    """Everything an exponent evaluation needs: channels, input, costs, rates.

    ``q`` lives on the auxiliary alphabet V when ``aux`` is given and on
    the channel input alphabet X otherwise. ``costs`` is always the
    per-letter cost on X; with an auxiliary channel the input constraint
    is checked against the lifted cost, which is equivalent to checking
    the induced X distribution.
    """

    __slots__ = ("pair", "aux", "input", "costs_x", "rate_b", "rate_e")

    def __init__(self, pair, q, costs, gamma, rate_b=0.0, rate_e=0.0, aux=None):
        costs = np.asarray(costs, dtype=np.float64)
        if costs.shape != (pair.num_inputs,):
            raise ValueError("costs length does not match the channel input alphabet")
        if aux is not None:
            if aux.num_outputs != pair.num_inputs:
                raise ValueError("auxiliary channel outputs must match the channel input alphabet")
            cost_on_v = lifted_cost(aux, costs)
        else:
            cost_on_v = costs
        rate_b = float(rate_b)
        rate_e = float(rate_e)
        if rate_b < 0.0 or rate_e < 0.0:
            raise ValueError("rates must be nonnegative")
        object.__setattr__(self, "pair", pair)
        object.__setattr__(self, "aux", aux)
        object.__setattr__(self, "input", CostedInput(q, cost_on_v, gamma))
        object.__setattr__(self, "costs_x", costs.copy())
        object.__setattr__(self, "rate_b", rate_b)
        object.__setattr__(self, "rate_e", rate_e)
        self.costs_x.flags.writeable = False

    def __setattr__(self, name, value):
        raise AttributeError("ExponentQuery is immutable")

    def with_rates(self, rate_b=None, rate_e=None):
        return ExponentQuery(
            self.pair,
            self.input.probs,
            self.costs_x,
            self.input.gamma,
            rate_b=self.rate_b if rate_b is None else rate_b,
            rate_e=self.rate_e if rate_e is None else rate_e,
            aux=self.aux,
        )

    @property
    def gamma(self):
        return self.input.gamma

    def effective_channel(self, side):
        """Channel seen from the query input: concatenated when aux is present."""
        ch = self.pair.bob if side == "bob" else self.pair.eve
        return concatenate(self.aux, ch) if self.aux is not None else ch

    def mutual_information(self, side):
        return mutual_information(self.input.probs, self.effective_channel(side))


def _lse(vals):
    if not vals:
        return _NEG_INF
    m = max(vals)
    if m == _NEG_INF:
        return _NEG_INF
    return m + math.log(sum(math.exp(v - m) for v in vals))


class _E0Evaluator:
    """Precomputed log-domain evaluator for one channel side of a query.

    Evaluation runs entirely in log space (log-sum-exp at every level),
    so extreme tilt arguments degrade gracefully instead of overflowing.
    The order-1 untilted value is mathematically zero (the sums telescope
    to total probability), so it is subtracted as a normalization: the
    rho = 0 collapse is then exact and rates past the zero crossing give
    an exact zero exponent.
    """

    def __init__(self, query, side):
        channel = query.pair.bob if side == "bob" else query.pair.eve
        gamma = query.gamma
        costs = query.costs_x
        q = query.input.probs
        if query.aux is None:
            # terms[y] = [(log q(x), log W(y|x), gamma - c(x))] over supported x
            terms = []
            for y in range(channel.num_outputs):
                col = []
                for x in range(channel.num_inputs):
                    if q[x] > 0.0 and channel.rows[x, y] > 0.0:
                        col.append((math.log(q[x]), math.log(channel.rows[x, y]), gamma - costs[x]))
                terms.append(col)
            self._plain_terms = terms
            self._aux_terms = None
        else:
            aux = query.aux
            cbar = query.input.costs
            vx = []
            for v in range(aux.num_inputs):
                if q[v] <= 0.0:
                    vx.append(None)
                    continue
                per_y = []
                for y in range(channel.num_outputs):
                    col = []
                    for x in range(channel.num_inputs):
                        p = aux.rows[v, x] * channel.rows[x, y]
                        if p > 0.0:
                            col.append((math.log(p), gamma - costs[x]))
                    per_y.append(col)
                vx.append((math.log(q[v]), gamma - cbar[v], per_y))
            self._plain_terms = None
            self._aux_terms = vx
            self._num_outputs = channel.num_outputs
        self._offset = 0.0
        self._offset = self(1.0, 0.0, 0.0)

    def __call__(self, kappa, r, s):
        if self._plain_terms is not None:
            t = r + s
            outer = []
            for col in self._plain_terms:
                ly = _lse([lq + lw / kappa + t * dc for (lq, lw, dc) in col])
                if ly > _NEG_INF:
                    outer.append(kappa * ly)
        else:
            outer = []
            for y in range(self._num_outputs):
                vs = []
                for entry in self._aux_terms:
                    if entry is None:
                        continue
                    lq, dcb, per_y = entry
                    lx = _lse([lwp + kappa * r * dc for (lwp, dc) in per_y[y]])
                    if lx > _NEG_INF:
                        vs.append(lq + s * dcb + lx / kappa)
                ly = _lse(vs)
                if ly > _NEG_INF:
                    outer.append(kappa * ly)
        val = -_lse(outer) - self._offset
        if not math.isfinite(val):
            raise RuntimeError(
                f"non-finite exponent base (kappa={kappa}, r={r}, s={s}); tilt arguments out of range"
            )
        return val


def gallager_e0(rho, query, r=0.0, s=0.0):
    """Cost-tilted Gallager function of order 1+rho for the legitimate channel."""
    if not 0.0 <= rho <= 1.0:
        raise ValueError(f"rho must be in [0, 1], got {rho}")
    if r < 0.0 or s < 0.0:
        raise ValueError("tilt parameters must be nonnegative")
    return _E0Evaluator(query, "bob")(1.0 + rho, r, s)


def resolvability_e0(rho, query, r=0.0, s=0.0):
    """Cost-tilted resolvability exponent base of order 1-rho for the tapped channel."""
    if not 0.0 < rho < 1.0:
        raise ValueError(f"rho must be in (0, 1), got {rho}")
    if r < 0.0 or s < 0.0:
        raise ValueError("tilt parameters must be nonnegative")
    return _E0Evaluator(query, "eve")(1.0 - rho, r, s)


@dataclass(frozen=True)
class ExponentOptimum:
    """Optimizer output for one rate point."""

    value: float
    raw: float
    rho: float
    r: float
    s: float


def _tilt_caps(query):
    spread_x = float(query.costs_x.max() - query.costs_x.min())
    r_max = TILT_CAP_SCALE / spread_x if spread_x > 0.0 else 0.0
    if query.aux is None:
        return r_max, r_max
    cbar = query.input.costs
    spread_v = float(cbar.max() - cbar.min())
    s_max = TILT_CAP_SCALE / spread_v if spread_v > 0.0 else 0.0
    return r_max, s_max


_PROBE_STEP = 1e-7


def _max_over_tilts(ev, kappa, caps, merged):
    # The negated objective is a nest of log-sum-exps of affine maps of
    # (r, s), hence convex: the objective is jointly concave in the
    # tilts. A probe step away from the origin therefore certifies an
    # origin optimum (up to O(step^2) curvature error) and skips the
    # nested search, which is the common case: whenever the input law
    # meets the cost cap the tilt gradient at the origin is nonpositive.
    r_max, s_max = caps
    if merged:
        t_cap = r_max + s_max
        if t_cap <= 0.0:
            return ev(kappa, 0.0, 0.0), 0.0, 0.0
        h = min(_PROBE_STEP, 0.5 * t_cap)
        v00 = ev(kappa, 0.0, 0.0)
        if ev(kappa, h, 0.0) <= v00:
            return v00, 0.0, 0.0
        t_star, val = scan_then_golden_max(
            lambda t: ev(kappa, t, 0.0), 0.0, t_cap, scan_points=9, tol=1e-9
        )
        return val, t_star, 0.0
    if r_max <= 0.0 and s_max <= 0.0:
        return ev(kappa, 0.0, 0.0), 0.0, 0.0
    v00 = ev(kappa, 0.0, 0.0)
    hr = min(_PROBE_STEP, 0.5 * r_max) if r_max > 0.0 else 0.0
    hs = min(_PROBE_STEP, 0.5 * s_max) if s_max > 0.0 else 0.0
    if (
        (hr == 0.0 or ev(kappa, hr, 0.0) <= v00)
        and (hs == 0.0 or ev(kappa, 0.0, hs) <= v00)
        and (hr == 0.0 or hs == 0.0 or ev(kappa, hr, hs) <= v00)
    ):
        return v00, 0.0, 0.0

    # Joint concavity and smoothness make coordinate ascent converge to
    # the global tilt optimum; three alternating sweeps are plenty at
    # the accuracy the exponent consumers need.
    r_star = s_star = 0.0
    val = v00
    for _ in range(3):
        if r_max > 0.0:
            r_star, val = scan_then_golden_max(
                lambda r: ev(kappa, r, s_star), 0.0, r_max, scan_points=7, tol=1e-8
            )
        if s_max > 0.0:
            s_star, val = scan_then_golden_max(
                lambda s: ev(kappa, r_star, s), 0.0, s_max, scan_points=7, tol=1e-8
            )
    return val, r_star, s_star


def _optimize(query, side, rate):
    """sup over (rho, r, s) of the signed exponent objective at one rate."""
    ev = _E0Evaluator(query, side)
    caps = _tilt_caps(query)
    merged = query.aux is None
    sign = -1.0 if side == "bob" else 1.0

    state = {}

    def objective(rho):
        kappa = 1.0 + rho if side == "bob" else 1.0 - rho
        val, r_star, s_star = _max_over_tilts(ev, kappa, caps, merged)
        obj = val + sign * rho * rate
        state[rho] = (r_star, s_star)
        return obj

    lo, hi = (0.0, 1.0) if side == "bob" else (RHO_EPS, 1.0 - RHO_EPS)
    rho_star, raw = scan_then_golden_max(objective, lo, hi, scan_points=17, tol=1e-10)
    r_star, s_star = state[rho_star]
    return ExponentOptimum(max(raw, 0.0), raw, rho_star, r_star, s_star)


def reliability_optimum(query):
    """Reliability exponent at rate_b + rate_e with optimizer diagnostics."""
    return _optimize(query, "bob", query.rate_b + query.rate_e)


def secrecy_optimum(query):
    """Secrecy exponent at rate_e with optimizer diagnostics."""
    return _optimize(query, "eve", query.rate_e)


def reliability_exponent(query):
    """Best exponential decay rate of Bob's decoding error at rate_b + rate_e.

    Zero at and beyond the mutual information of the effective channel;
    positive, decreasing, and convex below it.
    """
    return reliability_optimum(query).value


def secrecy_exponent(query):
    """Best decay rate of the eavesdropper divergence at resolvability rate rate_e.

    Zero at and below the tapped channel's mutual information; positive,
    increasing, and convex above it.
    """
    return secrecy_optimum(query).value


class ExponentCurve:
    """Ordered (rate, exponent) samples with optimizer diagnostics.

    Rates must be strictly increasing and exponents nonnegative (within
    1e-12); ``meta`` carries the function name, parameters, and per-point
    argmax values of (rho, r, s) plus the raw unclamped objective.
    """

    __slots__ = ("rates", "exponents", "meta")

    def __init__(self, rates, exponents, meta=None):
        rates = np.asarray(rates, dtype=np.float64)
        exponents = np.asarray(exponents, dtype=np.float64)
        if rates.ndim != 1 or rates.shape != exponents.shape:
            raise ValueError("rates and exponents must be matching 1-D arrays")
        if rates.size >= 2 and np.any(np.diff(rates) <= 0.0):
            raise ValueError("rates must be strictly increasing")
        if np.any(exponents < -1e-12):
            raise ValueError("exponents must be nonnegative")
        self.rates = rates
        self.exponents = exponents
        self.meta = dict(meta or {})

    def __len__(self):
        return int(self.rates.size)


def _curve(query, side, rates, name, offset=0.0):
    rates = np.asarray(rates, dtype=np.float64)
    values, rhos, rs, ss, raws = [], [], [], [], []
    for rate in rates:
        opt = _optimize(query, side, float(rate) + offset)
        values.append(opt.value)
        rhos.append(opt.rho)
        rs.append(opt.r)
        ss.append(opt.s)
        raws.append(opt.raw)
    meta = {
        "function": name,
        "offset": offset,
        "gamma": query.gamma,
        "q": query.input.probs.tolist(),
        "argmax_rho": rhos,
        "argmax_r": rs,
        "argmax_s": ss,
        "raw": raws,
        "tilt_caps": _tilt_caps(query),
    }
    return ExponentCurve(rates, values, meta)


def reliability_curve(query, rates):
    """Reliability exponent sampled over total rates (nats per use)."""
    return _curve(query, "bob", rates, "reliability")


def secrecy_curve(query, rates):
    """Secrecy exponent sampled over resolvability rates (nats per use)."""
    return _curve(query, "eve", rates, "secrecy")


def reliability_zero_rate(query, threshold=ZERO_RATE_THRESHOLD, tol=1e-9):
    """Rate at which the reliability exponent vanishes.

    Located by bisection on the rate axis with a near-machine positivity
    threshold; agrees with the effective channel's mutual information to
    roughly the square root of the threshold times the curvature.
    """
    info = query.mutual_information("bob")
    if info <= 0.0:
        return 0.0
    hi = 1.05 * info + 0.01
    if _optimize(query, "bob", 0.0).value < threshold:
        return 0.0
    return bisect_boundary(lambda rate: _optimize(query, "bob", rate).value < threshold, 0.0, hi, tol=tol)


def secrecy_zero_rate(query, threshold=ZERO_RATE_THRESHOLD, tol=1e-9):
    """Largest rate at which the secrecy exponent is still zero."""
    info = query.mutual_information("eve")
    hi = 1.05 * info + 0.01
    if _optimize(query, "eve", hi).value <= threshold:
        return hi
    return bisect_boundary(lambda rate: _optimize(query, "eve", rate).value > threshold, 0.0, hi, tol=tol)


@dataclass(frozen=True)
class CapacityResult:
    """Secrecy capacity search outcome.

    ``heuristic`` marks values that are lower bounds from a local search
    (non-more-capable pairs with an auxiliary alphabet) rather than an
    exhaustive scan certificate.
    """

    value: float
    input_law: np.ndarray
    aux: DiscreteChannel | None
    more_capable: bool
    heuristic: bool
    min_info_gap: float


def _feasible_binary_interval(costs, gamma):
    c0, c1 = float(costs[0]), float(costs[1])
    if min(c0, c1) > gamma:
        raise ValueError(f"cost cap {gamma} below the cheapest letter cost {min(c0, c1)}")
    if c1 == c0:
        return 0.0, 1.0
    if c1 > c0:
        return 0.0, min(1.0, (gamma - c0) / (c1 - c0))
    return max(0.0, (c0 - gamma) / (c0 - c1)), 1.0


def _info_gap_of(pair):
    def gap(q):
        return mutual_information(q, pair.bob) - mutual_information(q, pair.eve)

    return gap


def _best_input_binary(pair, costs, gamma, grid=1001):
    lo, hi = _feasible_binary_interval(costs, gamma)
    gap = _info_gap_of(pair)

    def g(t):
        return gap(np.array([1.0 - t, t]))

    ts = np.linspace(lo, hi, grid)
    vals = [g(t) for t in ts]
    k = int(np.argmax(vals))
    a = ts[max(k - 1, 0)]
    b = ts[min(k + 1, grid - 1)]
    t_star, best = golden_max(g, a, b, tol=1e-12)
    return np.array([1.0 - t_star, t_star]), best


def _project_simplex(v):
    # Euclidean projection onto the probability simplex (sort-based).
    u = np.sort(v)[::-1]
    css = np.cumsum(u)
    idx = np.arange(1, len(v) + 1)
    cond = u - (css - 1.0) / idx > 0
    k = idx[cond][-1]
    tau = (css[k - 1] - 1.0) / k
    return np.maximum(v - tau, 0.0)


def _project_feasible(q, costs, gamma, rounds=60):
    # Alternating projection onto simplex and the cost halfspace.
    q = _project_simplex(q)
    for _ in range(rounds):
        excess = float(q @ costs) - gamma
        if excess <= 1e-14:
            break
        n2 = float(costs @ costs)
        q = q - (excess / n2) * costs
        q = _project_simplex(q)
    return q


def _best_input_gradient(pair, costs, gamma, seed, starts=8, iters=300):
    gap = _info_gap_of(pair)
    k = pair.num_inputs
    rng = np.random.default_rng(seed)
    best_q, best = None, -math.inf
    for _ in range(starts):
        q = _project_feasible(rng.dirichlet(np.ones(k)), costs, gamma)
        step = 0.25
        val = gap(q)
        for _ in range(iters):
            grad = np.zeros(k)
            h = 1e-6
            for i in range(k):
                e = np.zeros(k)
                e[i] = h
                qp = _project_feasible(q + e, costs, gamma)
                qm = _project_feasible(q - e, costs, gamma)
                grad[i] = (gap(qp) - gap(qm)) / (2 * h)
            q_new = _project_feasible(q + step * grad, costs, gamma)
            val_new = gap(q_new)
            if val_new > val:
                q, val = q_new, val_new
            else:
                step *= 0.5
                if step < 1e-9:
                    break
        if val > best:
            best_q, best = q, val
    return best_q, best


def _aux_search(pair, costs, gamma, aux_dim, seed, starts=6, iters=250):
    """Local search over (input law on V, auxiliary channel V->X).

    Softmax parametrization keeps both simplexes valid; infeasible cost
    points are skipped, so the returned value is a feasible lower bound.
    """
    k = pair.num_inputs
    rng = np.random.default_rng(seed)

    def decode(theta):
        qv = np.exp(theta[:aux_dim] - theta[:aux_dim].max())
        qv /= qv.sum()
        logits = theta[aux_dim:].reshape(aux_dim, k)
        rows = np.exp(logits - logits.max(axis=1, keepdims=True))
        rows /= rows.sum(axis=1, keepdims=True)
        return qv, rows

    def value(theta):
        qv, rows = decode(theta)
        induced_cost = float(qv @ rows @ costs)
        if induced_cost > gamma + 1e-12:
            return -math.inf, qv, rows
        aux = DiscreteChannel(rows)
        bob_plus = concatenate(aux, pair.bob)
        eve_plus = concatenate(aux, pair.eve)
        return (
            mutual_information(qv, bob_plus) - mutual_information(qv, eve_plus),
            qv,
            rows,
        )

    dim = aux_dim + aux_dim * k
    best = (-math.inf, None, None)
    for _ in range(starts):
        theta = rng.normal(scale=0.5, size=dim)
        val = value(theta)[0]
        step = 0.5
        for _ in range(iters):
            cand = theta + rng.normal(scale=step, size=dim)
            v = value(cand)[0]
            if v > val:
                theta, val = cand, v
            else:
                step *= 0.95
                if step < 1e-4:
                    break
        v, qv, rows = value(theta)
        if v > best[0]:
            best = (v, qv, rows)
    if best[1] is None:
        raise RuntimeError("auxiliary-channel search found no feasible point")
    return best


def secrecy_capacity(pair, costs, gamma, aux_dim=2, grid=1001, seed=0):
    """Largest rate with both vanishing error and vanishing divergence.

    For more-capable pairs the optimization runs over input laws only
    (exhaustive 1-D scan on binary alphabets, multi-start projected
    gradient otherwise). Otherwise a local search over an auxiliary
    alphabet of size ``aux_dim`` produces a lower bound flagged as
    heuristic; no cardinality bound for V is known, so ``aux_dim`` is a
    user knob.
    """
    costs = np.asarray(costs, dtype=np.float64)
    mc = is_more_capable(pair, grid_resolution=grid)
    if mc.holds:
        if pair.num_inputs == 2:
            q, best = _best_input_binary(pair, costs, gamma, grid=grid)
        else:
            q, best = _best_input_gradient(pair, costs, gamma, seed)
        return CapacityResult(max(best, 0.0), q, None, True, False, mc.min_gap)
    best, qv, rows = _aux_search(pair, costs, gamma, aux_dim, seed)
    return CapacityResult(max(best, 0.0), qv, DiscreteChannel(rows), False, True, mc.min_gap)


@dataclass
class TradeoffScenario:
    """One swept scenario: paired exponent curves plus structural checks.

    ``checks`` maps check names to (ok, worst_slack); a failed check is
    reported here rather than raised, so callers can render the report.
    """

    label: str
    reliability: ExponentCurve
    secrecy: ExponentCurve
    checks: dict = field(default_factory=dict)

    @property
    def ok(self):
        return all(flag for flag, _ in self.checks.values())


def _pointwise_slack(hi_curve, lo_curve):
    return float(np.min(hi_curve.exponents - lo_curve.exponents))


MECHANISMS = ("rate_shift", "rate_exchange", "concatenate", "cost_change")


def tradeoff_scenarios(query, mechanism, sweep, points=21, tol=1e-9):
    """Generate paired exponent curves under one of four control mechanisms.

    * ``rate_shift``: move the resolvability rate by each offset in the
      sweep while the coding rate stays put; reliability drops, secrecy
      rises.
    * ``rate_exchange``: trade coding rate for resolvability rate at a
      fixed sum; the reliability curve must be bit-identical while the
      secrecy curve shifts.
    * ``concatenate``: prefix a binary symmetric auxiliary channel with
      each crossover in the sweep, holding the induced input law fixed;
      reliability can only fall and secrecy only rise, and this ordering
      is asserted pointwise.
    * ``cost_change``: re-fit the info-gap-maximizing input to each cost
      cap in the ascending sweep; reliability is nondecreasing and
      secrecy nonincreasing in the cap at fixed rates.

    Returns a list of TradeoffScenario; the first entry is the baseline.
    """
    if mechanism not in MECHANISMS:
        raise ValueError(f"unknown mechanism {mechanism!r}; expected one of {MECHANISMS}")
    info_b = query.mutual_information("bob")
    info_e = query.mutual_information("eve")
    f_rates = np.linspace(0.05 * info_b, 0.95 * info_b, points)
    # The secrecy window reaches past the reliability zero so paired
    # curves show their crossing.
    h_hi = min(info_e + 1.0, max(2.0 * info_e, 1.02 * info_b))
    h_rates = np.linspace(1.05 * info_e, h_hi, points)

    def curves(qy, f_offset=0.0, h_offset=0.0):
        f = _curve(qy, "bob", f_rates, "reliability", offset=f_offset)
        h = _curve(qy, "eve", h_rates, "secrecy", offset=h_offset)
        return f, h

    base_f, base_h = curves(query)
    scenarios = [TradeoffScenario("base", base_f, base_h)]

    if mechanism == "rate_shift":
        prev_f, prev_h = base_f, base_h
        for delta in sweep:
            f, h = curves(query, f_offset=delta, h_offset=delta)
            checks = {
                "reliability_nonincreasing_in_shift": _ordered(prev_f, f, tol),
                "secrecy_nondecreasing_in_shift": _ordered(h, prev_h, tol),
            }
            scenarios.append(TradeoffScenario(f"shift+{delta:g}", f, h, checks))
            prev_f, prev_h = f, h
    elif mechanism == "rate_exchange":
        for delta in sweep:
            f, h = curves(query, f_offset=0.0, h_offset=delta)
            diff = float(np.max(np.abs(f.exponents - base_f.exponents)))
            checks = {
                "reliability_invariant": (diff == 0.0, -diff),
                "secrecy_nondecreasing_in_shift": _ordered(h, base_h, tol),
            }
            scenarios.append(TradeoffScenario(f"exchange+{delta:g}", f, h, checks))
    elif mechanism == "concatenate":
        if query.pair.num_inputs != 2 or query.aux is not None:
            raise ValueError("concatenation sweeps are defined for binary non-concatenated queries")
        p1 = float(query.input.probs[1])
        for eps in sweep:
            aux = DiscreteChannel.bsc(eps)
            a, b = 1.0 - eps, eps
            qv1 = (p1 - b) / (a - b)
            if not 0.0 <= qv1 <= 1.0:
                raise ValueError(
                    f"input law q(1)={p1} is not reachable through a crossover-{eps} prefix"
                )
            qv = np.array([1.0 - qv1, qv1])
            q_plus = ExponentQuery(
                query.pair, qv, query.costs_x, query.gamma,
                rate_b=query.rate_b, rate_e=query.rate_e, aux=aux,
            )
            f_plus, h_plus = curves(q_plus)
            checks = {
                "reliability_drops": _ordered(base_f, f_plus, tol),
                "secrecy_rises": _ordered(h_plus, base_h, tol),
            }
            scenarios.append(TradeoffScenario(f"prefix_bsc_{eps:g}", f_plus, h_plus, checks))
    else:  # cost_change
        if query.pair.num_inputs != 2:
            raise ValueError("cost_change sweeps re-fit the input law and need binary inputs")
        caps = list(sweep)
        if sorted(caps) != caps:
            raise ValueError("cost_change sweep must be ascending")
        prev = None
        for cap in caps:
            q_fit, _ = _best_input_binary(query.pair, query.costs_x, cap)
            qy = ExponentQuery(
                query.pair, q_fit, query.costs_x, cap,
                rate_b=query.rate_b, rate_e=query.rate_e,
            )
            f, h = curves(qy)
            checks = {}
            if prev is not None:
                checks = {
                    "reliability_nondecreasing_in_cap": _ordered(f, prev[0], tol),
                    "secrecy_nonincreasing_in_cap": _ordered(prev[1], h, tol),
                }
            scenarios.append(TradeoffScenario(f"cap_{cap:g}", f, h, checks))
            prev = (f, h)
    return scenarios


def _ordered(hi_curve, lo_curve, tol):
    slack = _pointwise_slack(hi_curve, lo_curve)
    return slack >= -tol, slack
