"""Reliability and secrecy exponents for cost-constrained wiretap channels.

Subpackages by topic:

* ``channel_core``: finite channels, costed inputs, mutual information,
  concatenation, the more-capable check.
* ``secrecy_metrics``: secrecy measures on explicit output ensembles.
* ``exponent_engine``: cost-tilted exponent functions, their optimizers,
  curve builders, the general secrecy capacity, tradeoff sweeps.
* ``ensemble_sim``: exact small-block ensemble averages certifying the
  exponential bounds.
* ``poisson_wiretap`` and ``gaussian_wiretap``: closed forms for the two
  continuous models.
* ``cli`` and ``figures``: command-line front end and the reference
  figure scenarios.
"""

__version__ = "0.1.0"

from .channel_core import (
    CostedInput,
    DiscreteChannel,
    MoreCapableResult,
    WiretapPair,
    concatenate,
    is_more_capable,
    lifted_cost,
    load_wiretap_config,
    mutual_information,
    parse_wiretap_config,
)
from .exponent_engine import (
    CapacityResult,
    ExponentCurve,
    ExponentOptimum,
    ExponentQuery,
    gallager_e0,
    reliability_curve,
    reliability_exponent,
    reliability_optimum,
    reliability_zero_rate,
    resolvability_e0,
    secrecy_capacity,
    secrecy_curve,
    secrecy_exponent,
    secrecy_optimum,
    secrecy_zero_rate,
    tradeoff_scenarios,
)
from .secrecy_metrics import (
    OutputEnsemble,
    divergence_distance,
    inequality_slacks,
    mean_distance_to_average,
    mutual_information_measure,
    variational_distance,
)

__all__ = [
    "__version__",
    "CapacityResult",
    "CostedInput",
    "DiscreteChannel",
    "ExponentCurve",
    "ExponentOptimum",
    "ExponentQuery",
    "MoreCapableResult",
    "OutputEnsemble",
    "WiretapPair",
    "concatenate",
    "divergence_distance",
    "gallager_e0",
    "inequality_slacks",
    "is_more_capable",
    "lifted_cost",
    "load_wiretap_config",
    "mean_distance_to_average",
    "mutual_information",
    "mutual_information_measure",
    "parse_wiretap_config",
    "reliability_curve",
    "reliability_exponent",
    "reliability_optimum",
    "reliability_zero_rate",
    "resolvability_e0",
    "secrecy_capacity",
    "secrecy_curve",
    "secrecy_exponent",
    "secrecy_optimum",
    "secrecy_zero_rate",
    "tradeoff_scenarios",
    "variational_distance",
]
