"""Finite-alphabet channel and cost primitives.

Row-stochastic transition matrices, cost-constrained input distributions,
mutual information, channel concatenation, and a numerical more-capable
check. Everything here is immutable after construction and all operations
are pure functions, so concurrent use needs no coordination.

Alphabets in this package are tiny (at most 16 letters), so probabilities
are stored as dense row-major float64 matrices.
"""

import json
import math

import numpy as np

from .solvers import golden_min

PROB_TOL = 1e-12
MORE_CAPABLE_TOL = 1e-9


def _as_prob_vector(q, name="distribution"):
    q = np.asarray(q, dtype=np.float64)
    if q.ndim != 1:
        raise ValueError(f"{name} must be a 1-D vector, got shape {q.shape}")
    if np.any(q < -PROB_TOL) or np.any(q > 1.0 + PROB_TOL):
        raise ValueError(f"{name} has entries outside [0, 1]: {q}")
    if abs(float(q.sum()) - 1.0) > PROB_TOL:
        raise ValueError(f"{name} sums to {q.sum()}, expected 1 within {PROB_TOL}")
    return q


class DiscreteChannel:
    """A discrete memoryless channel W(output | input).

    Parameters
    ----------
    rows : array_like, shape (num_inputs, num_outputs)
        Conditional probabilities; every row must sum to 1 within 1e-12
        and every entry must lie in [0, 1].
    """

    __slots__ = ("rows",)

    def __init__(self, rows):
        rows = np.asarray(rows, dtype=np.float64)
        if rows.ndim != 2 or rows.size == 0:
            raise ValueError(f"channel matrix must be 2-D and non-empty, got shape {rows.shape}")
        if np.any(rows < -PROB_TOL) or np.any(rows > 1.0 + PROB_TOL):
            raise ValueError("channel matrix has entries outside [0, 1]")
        sums = rows.sum(axis=1)
        if np.any(np.abs(sums - 1.0) > PROB_TOL):
            raise ValueError(f"channel rows must sum to 1 within {PROB_TOL}, got {sums}")
        rows = rows.copy()
        rows.flags.writeable = False
        object.__setattr__(self, "rows", rows)

    def __setattr__(self, name, value):
        raise AttributeError("DiscreteChannel is immutable")

    @property
    def num_inputs(self):
        return self.rows.shape[0]

    @property
    def num_outputs(self):
        return self.rows.shape[1]

    @classmethod
    def bsc(cls, eps):
        """Binary symmetric channel with crossover probability eps."""
        if not 0.0 <= eps <= 1.0:
            raise ValueError(f"crossover probability must be in [0, 1], got {eps}")
        return cls([[1.0 - eps, eps], [eps, 1.0 - eps]])

    @classmethod
    def identity(cls, n):
        return cls(np.eye(n))

    def __repr__(self):
        return f"DiscreteChannel({self.rows.tolist()})"


class CostedInput:
    """Input distribution with a per-letter cost and an average-cost cap.

    The constructor rejects inputs whose expected cost exceeds the cap
    ``gamma`` (beyond a 1e-12 slack); downstream exponent formulas assume
    the constraint holds.
    """

    __slots__ = ("probs", "costs", "gamma")

    def __init__(self, probs, costs, gamma):
        probs = _as_prob_vector(probs, "input distribution")
        costs = np.asarray(costs, dtype=np.float64)
        if costs.shape != probs.shape:
            raise ValueError(f"costs shape {costs.shape} does not match distribution shape {probs.shape}")
        if np.any(costs < 0.0):
            raise ValueError("costs must be nonnegative")
        gamma = float(gamma)
        if gamma < 0.0:
            raise ValueError(f"cost cap must be nonnegative, got {gamma}")
        expected = float(probs @ costs)
        if expected > gamma + PROB_TOL:
            raise ValueError(f"expected cost {expected} exceeds cap {gamma}")
        probs = probs.copy()
        costs = costs.copy()
        probs.flags.writeable = False
        costs.flags.writeable = False
        object.__setattr__(self, "probs", probs)
        object.__setattr__(self, "costs", costs)
        object.__setattr__(self, "gamma", gamma)

    def __setattr__(self, name, value):
        raise AttributeError("CostedInput is immutable")

    @property
    def expected_cost(self):
        return float(self.probs @ self.costs)


class WiretapPair:
    """A pair of channels sharing one input: ``bob`` legitimate, ``eve`` tapped."""

    __slots__ = ("bob", "eve")

    def __init__(self, bob, eve):
        if bob.num_inputs != eve.num_inputs:
            raise ValueError(
                f"channels must share the input alphabet: {bob.num_inputs} vs {eve.num_inputs}"
            )
        object.__setattr__(self, "bob", bob)
        object.__setattr__(self, "eve", eve)

    def __setattr__(self, name, value):
        raise AttributeError("WiretapPair is immutable")

    @property
    def num_inputs(self):
        return self.bob.num_inputs


def mutual_information(q, channel):
    """Mutual information I(q, W) in nats between input q and the channel output.

    Terms with W(y|x) = 0 contribute zero. A zero output marginal paired
    with positive input mass cannot occur for a valid channel/input pair;
    it is guarded anyway and raises.
    """
    q = _as_prob_vector(q, "input distribution")
    W = channel.rows
    if q.shape[0] != W.shape[0]:
        raise ValueError(f"input dimension {q.shape[0]} does not match channel inputs {W.shape[0]}")
    marginal = q @ W
    joint = q[:, None] * W
    bad = (marginal[None, :] <= 0.0) & (joint > 0.0)
    if np.any(bad):
        raise ValueError("zero output marginal with positive joint mass; channel matrix is inconsistent")
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = np.where(joint > 0.0, W / np.where(marginal[None, :] > 0.0, marginal[None, :], 1.0), 1.0)
        terms = np.where(joint > 0.0, joint * np.log(ratio), 0.0)
    return max(float(terms.sum()), 0.0)


def concatenate(aux, channel):
    """Prepend an auxiliary channel: (aux: V->X) then (channel: X->Y) gives V->Y."""
    if aux.num_outputs != channel.num_inputs:
        raise ValueError(
            f"auxiliary outputs {aux.num_outputs} do not match channel inputs {channel.num_inputs}"
        )
    return DiscreteChannel(aux.rows @ channel.rows)


def lifted_cost(aux, costs):
    """Pull a per-letter cost on X back through an auxiliary channel V->X.

    The lifted cost keeps expectations intact: for any input law q on V,
    E_q[lifted] equals the expected original cost of the induced X.
    """
    costs = np.asarray(costs, dtype=np.float64)
    if costs.shape != (aux.num_outputs,):
        raise ValueError(f"cost vector length {costs.shape} does not match auxiliary outputs {aux.num_outputs}")
    return aux.rows @ costs


class MoreCapableResult:
    """Outcome of the numerical more-capable scan."""

    __slots__ = ("holds", "worst_input", "min_gap")

    def __init__(self, holds, worst_input, min_gap):
        self.holds = bool(holds)
        self.worst_input = np.asarray(worst_input, dtype=np.float64)
        self.min_gap = float(min_gap)

    def __bool__(self):
        return self.holds

    def __repr__(self):
        return f"MoreCapableResult(holds={self.holds}, min_gap={self.min_gap:.3e}, worst_input={self.worst_input.tolist()})"


def _info_gap(q, pair):
    return mutual_information(q, pair.bob) - mutual_information(q, pair.eve)


def _simplex_grid(dim, resolution):
    # All compositions of `resolution` into `dim` nonnegative parts, normalized.
    if dim == 1:
        yield np.array([1.0])
        return

    def rec(remaining, parts):
        if len(parts) == dim - 1:
            yield parts + [remaining]
            return
        for k in range(remaining + 1):
            yield from rec(remaining - k, parts + [k])

    for combo in rec(resolution, []):
        yield np.array(combo, dtype=np.float64) / resolution


def is_more_capable(pair, grid_resolution=1001):
    """Check I(q, W_bob) >= I(q, W_eve) over a grid of input laws.

    Binary inputs are scanned exhaustively on a 1-D grid and the worst
    point is refined by golden section, which is exhaustive to tolerance.
    Larger alphabets use a simplex grid at the given resolution plus
    local refinement; that is a heuristic certificate, not a proof.

    Returns a MoreCapableResult carrying the minimizing input found.
    """
    k = pair.num_inputs
    if k == 2:
        qs = np.linspace(0.0, 1.0, grid_resolution)
        gaps = [_info_gap(np.array([1.0 - t, t]), pair) for t in qs]
        i = int(np.argmin(gaps))
        lo = qs[max(i - 1, 0)]
        hi = qs[min(i + 1, grid_resolution - 1)]
        t_star, gap = golden_min(lambda t: _info_gap(np.array([1.0 - t, t]), pair), lo, hi, tol=1e-12)
        worst = np.array([1.0 - t_star, t_star])
    else:
        # Heuristic for >2 letters: coarse simplex sweep, then coordinate
        # golden refinement around the worst grid point.
        resolution = max(2, min(grid_resolution, 24))
        worst, gap = None, math.inf
        for q in _simplex_grid(k, resolution):
            g = _info_gap(q, pair)
            if g < gap:
                worst, gap = q, g
        for _ in range(3):
            for i in range(k):
                for j in range(k):
                    if i == j:
                        continue
                    budget = worst[i] + worst[j]
                    if budget <= 0.0:
                        continue

                    def move(t, i=i, j=j, budget=budget):
                        q = worst.copy()
                        q[i] = t
                        q[j] = budget - t
                        return _info_gap(q, pair)

                    t_star, g = golden_min(move, 0.0, budget, tol=1e-10)
                    if g < gap:
                        gap = g
                        worst = worst.copy()
                        worst[i] = t_star
                        worst[j] = budget - t_star
    return MoreCapableResult(gap >= -MORE_CAPABLE_TOL, worst, gap)


_CONFIG_KEYS = {"bob", "eve", "costs", "gamma", "q"}


def parse_wiretap_config(doc):
    """Parse the JSON wiretap description used by the CLI.

    Expected keys: "bob" and "eve" (row-stochastic matrices), "costs",
    "gamma", and optionally "q". Unknown keys are rejected. Returns a
    dict with DiscreteChannel / array / float values.
    """
    unknown = set(doc) - _CONFIG_KEYS
    if unknown:
        raise ValueError(f"unknown config keys: {sorted(unknown)}")
    missing = {"bob", "eve", "costs", "gamma"} - set(doc)
    if missing:
        raise ValueError(f"missing config keys: {sorted(missing)}")
    bob = DiscreteChannel(doc["bob"])
    eve = DiscreteChannel(doc["eve"])
    pair = WiretapPair(bob, eve)
    costs = np.asarray(doc["costs"], dtype=np.float64)
    if costs.shape != (pair.num_inputs,):
        raise ValueError("costs length does not match the input alphabet")
    if np.any(costs < 0.0):
        raise ValueError("costs must be nonnegative")
    out = {"pair": pair, "costs": costs, "gamma": float(doc["gamma"]), "q": None}
    if "q" in doc:
        out["q"] = _as_prob_vector(doc["q"], "q")
        if out["q"].shape != (pair.num_inputs,):
            raise ValueError("q length does not match the input alphabet")
    return out


def load_wiretap_config(path):
    with open(path, "r", encoding="utf-8") as fh:
        return parse_wiretap_config(json.load(fh))
