"""Two-sided exit laws of a spectrally positive strictly stable process.

The package computes, for a strictly stable process with index ``alpha`` in
(1, 2] and no negative jumps, the law of the first exit from an interval
``[-b, c]``:

* the density of the exit time on the event that the process leaves through
  the lower boundary (which it can only do continuously),
* the joint law of (exit time, position before the jump, jump size) on the
  event that it leaves through the upper boundary (which it can only do by a
  jump),
* derived quantities: exit-side probabilities, undershoot marginals, moments.

Everything is expressed through Mittag-Leffler functions and the complex
zeros of ``E_{alpha,alpha}``; the residue-series evaluators in
:mod:`stable_exit.exitlaw` are cross-checked against independent
Laplace/Fourier inversion oracles (:mod:`stable_exit.oracle`) and a Monte
Carlo path simulator (:mod:`stable_exit.mcsim`).
"""

from stable_exit.mlf import (
    MlParams,
    MlValue,
    MlLogValue,
    MlOverflowError,
    ml_eval,
    ml_eval_log,
    ml_derivative,
    ml_asymptotic,
)

__version__ = "0.1.0"

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
