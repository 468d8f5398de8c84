"""Sublinear recovery of sparse Fourier representations from incomplete samples.

The public surface: signal model and file formats (:mod:`.signal`), box-car
filter machinery (:mod:`.boxcar`), Lagrange gap filling (:mod:`.interpolation`),
randomized estimators (:mod:`.estimators`), isolation and frequency
identification (:mod:`.isolation`, :mod:`.group_testing`), the greedy pursuit
(:mod:`.pursuit`), the brute-force verification oracle (:mod:`.oracle`), and
the benchmark harness behind the ``sparsefourier`` command (:mod:`.bench`,
:mod:`.cli`).
"""

from .signal import (AvailabilityExhausted, AvailabilityMask, FullSignal,
                     ModeSpec, Representation, SampledSignal, bernoulli_mask,
                     eval_exponential, eval_representation, exact_dft,
                     read_representation, read_samples, synthesize,
                     write_representation, write_samples)
from .boxcar import (Boxcar, FilterChain, MissingSampleError, boxcar_freq,
                     boxcar_time, convolution_support, eval_filtered_sample)
from .interpolation import (InterpolationImpossible, NeighborSet1D, Shape2D,
                            WeightSet, find_neighbors_1d, lagrange3,
                            shape_cache_lookup, shape_probability, weights_2d)
from .estimators import (EstimatorConfig, NormEstimate, estimate_coefficient,
                         estimate_norm_greedy, estimate_norm_interpolated)
from .isolation import IsolationSignal, PlainResidual, build_isolation_family
from .group_testing import FrequencyNotFound, MsbResult, group_test, msb
from .pursuit import (PursuitConfig, PursuitReport, iteration_budget, recover,
                      stopping_test)
from .oracle import Spectrum, full_dft, l2_error, optimal_b_term

__version__ = "0.1.0"

__all__ = [
    "AvailabilityExhausted", "AvailabilityMask", "FullSignal", "ModeSpec",
    "Representation", "SampledSignal", "bernoulli_mask", "eval_exponential",
    "eval_representation", "exact_dft", "read_representation", "read_samples",
    "synthesize", "write_representation", "write_samples",
    "Boxcar", "FilterChain", "MissingSampleError", "boxcar_freq",
    "boxcar_time", "convolution_support", "eval_filtered_sample",
    "InterpolationImpossible", "NeighborSet1D", "Shape2D", "WeightSet",
    "find_neighbors_1d", "lagrange3", "shape_cache_lookup",
    "shape_probability", "weights_2d",
    "EstimatorConfig", "NormEstimate", "estimate_coefficient",
    "estimate_norm_greedy", "estimate_norm_interpolated",
    "IsolationSignal", "PlainResidual", "build_isolation_family",
    "FrequencyNotFound", "MsbResult", "group_test", "msb",
    "PursuitConfig", "PursuitReport", "iteration_budget", "recover",
    "stopping_test",
    "Spectrum", "full_dft", "l2_error", "optimal_b_term",
]
