"""Scale mixtures of Boolean stable laws.

Submodules: ``sectors``, ``measures``, ``transforms``, ``stable_laws``,
``mixtures``, ``identities``, ``moments``, ``fid``, ``lln``, ``sampler``
and ``cli``.
"""
from .errors import DomainError, NumericalFailure, UnsupportedParameter, UsageError
from .measures import Atomic, Measure, QuadratureSpec, delta, measure_from_json
from .mixtures import MixtureSpec, mixture_density, mixture_eta, mixture_measure
from .stable_laws import (AdmissiblePair, MarchenkoPastur, Pareto, boolean_stable, cauchy_rho,
                          classical_stable, free_stable, monotone_stable)
from .transforms import cauchy, eta, s_transform, voiculescu_phi

__version__ = "0.1.0"

__all__ = [
    "DomainError", "NumericalFailure", "UnsupportedParameter", "UsageError", "Atomic", "Measure",
    "QuadratureSpec", "delta", "measure_from_json", "MixtureSpec", "mixture_density", "mixture_eta",
    "mixture_measure", "AdmissiblePair", "MarchenkoPastur", "Pareto", "boolean_stable", "cauchy_rho",
    "classical_stable", "free_stable", "monotone_stable", "cauchy", "eta", "s_transform",
    "voiculescu_phi",
]
