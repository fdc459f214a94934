"""Secrecy measures on explicit finite output ensembles.

An ensemble is a finite family of output distributions (one per message)
together with a target distribution the eavesdropper should ideally see.
This module evaluates the standard secrecy metrics on such ensembles:

* divergence distance: mean KL divergence of members from the target,
* variational distance: mean L1 distance of members from the target,
* leakage: mean KL divergence of members from the ensemble average,
  together with the stealth term (divergence of the average from the
  target); leakage + stealth equals the divergence distance exactly,
* mean member distance to the ensemble average.

All divergences are in nats. Target masses below 1e-300 are treated as
zero for the absolute-continuity checks.
"""

import json

import numpy as np

from .channel_core import _as_prob_vector

ZERO_MASS = 1e-300
IDENTITY_TOL = 1e-10


class OutputEnsemble:
    """M output distributions over a shared finite alphabet plus a target."""

    __slots__ = ("members", "target")

    def __init__(self, members, target):
        members = np.asarray(members, dtype=np.float64)
        if members.ndim != 2 or members.size == 0:
            raise ValueError(f"members must be a non-empty 2-D array, got shape {members.shape}")
        for i, row in enumerate(members):
            _as_prob_vector(row, f"member {i}")
        target = _as_prob_vector(target, "target")
        if target.shape[0] != members.shape[1]:
            raise ValueError("target alphabet does not match the members")
        members = members.copy()
        target = target.copy()
        members.flags.writeable = False
        target.flags.writeable = False
        object.__setattr__(self, "members", members)
        object.__setattr__(self, "target", target)

    def __setattr__(self, name, value):
        raise AttributeError("OutputEnsemble is immutable")

    @property
    def size(self):
        return self.members.shape[0]

    @property
    def average(self):
        return self.members.mean(axis=0)

    @classmethod
    def from_json(cls, doc):
        unknown = set(doc) - {"members", "target"}
        if unknown:
            raise ValueError(f"unknown ensemble keys: {sorted(unknown)}")
        return cls(doc["members"], doc["target"])

    @classmethod
    def load(cls, path):
        with open(path, "r", encoding="utf-8") as fh:
            return cls.from_json(json.load(fh))


def _kl(p, r, what):
    """KL divergence D(p || r) in nats; raises on an absolute-continuity breach."""
    bad = (r <= ZERO_MASS) & (p > 0.0)
    if np.any(bad):
        z = int(np.argmax(bad))
        raise ValueError(f"absolute continuity violated for {what} at symbol {z}")
    mask = p > 0.0
    return float(np.sum(p[mask] * (np.log(p[mask]) - np.log(r[mask]))))


def _tv(p, r):
    return float(np.abs(p - r).sum())


def divergence_distance(ensemble):
    """Mean KL divergence of the members from the target, in nats."""
    t = ensemble.target
    return sum(_kl(m, t, f"member {i} vs target") for i, m in enumerate(ensemble.members)) / ensemble.size


def variational_distance(ensemble):
    """Mean L1 distance of the members from the target."""
    t = ensemble.target
    return sum(_tv(m, t) for m in ensemble.members) / ensemble.size


def mutual_information_measure(ensemble):
    """Leakage / stealth split of the divergence distance.

    Returns (leakage, stealth): leakage is the mean divergence of members
    from the ensemble average, stealth the divergence of the average from
    the target. Their sum reproduces divergence_distance to 1e-10; the
    identity is verified here rather than assumed.
    """
    avg = ensemble.average
    leakage = sum(
        _kl(m, avg, f"member {i} vs ensemble average") for i, m in enumerate(ensemble.members)
    ) / ensemble.size
    stealth = _kl(avg, ensemble.target, "ensemble average vs target")
    total = divergence_distance(ensemble)
    if abs(total - (leakage + stealth)) > IDENTITY_TOL:
        raise AssertionError(
            f"divergence split broke: {total} != {leakage} + {stealth}"
        )
    return leakage, stealth


def mean_distance_to_average(ensemble):
    """Mean L1 distance of the members from the ensemble average."""
    avg = ensemble.average
    return sum(_tv(m, avg) for m in ensemble.members) / ensemble.size


def inequality_slacks(ensemble):
    """Slacks of the standard inequalities between the secrecy measures.

    Returns a dict with entries:

    * ``pinsker``: 2 * divergence - variational^2
    * ``triangle``: 2 * variational - mean distance to average
    * ``split_triangle``: 3 * variational - mean distance to average
      - d(average, target)
    * ``divergence_split_residual``: divergence - leakage - stealth
      (signed; zero up to float error)

    All inequality slacks are nonnegative for any valid ensemble, and the
    residual vanishes to 1e-10.
    """
    div = divergence_distance(ensemble)
    var = variational_distance(ensemble)
    dav = mean_distance_to_average(ensemble)
    leakage, stealth = mutual_information_measure(ensemble)
    avg_gap = _tv(ensemble.average, ensemble.target)
    return {
        "pinsker": 2.0 * div - var * var,
        "triangle": 2.0 * var - dav,
        "split_triangle": 3.0 * var - dav - avg_gap,
        "divergence_split_residual": div - leakage - stealth,
        "divergence": div,
        "variational": var,
        "distance_to_average": dav,
        "leakage": leakage,
        "stealth": stealth,
    }
