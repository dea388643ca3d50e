"""Numerically safe primitives used by the embedding and network code."""

import numpy as np

# Floor applied to every log argument before taking the log.
LOG_CLAMP = 1e-12


def sigmoid(x):
    """Elementwise logistic function, computed in a branch that never
    exponentiates a large positive argument."""
    x = np.asarray(x, dtype=np.float64)
    out = np.empty_like(x)
    pos = x >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-x[pos]))
    ex = np.exp(x[~pos])
    out[~pos] = ex / (1.0 + ex)
    return out


def softmax(v):
    """Probability vector from a logit vector, shifted by the max logit."""
    v = np.asarray(v, dtype=np.float64)
    e = np.exp(v - v.max())
    return e / e.sum()


def safe_log(x):
    """log with the argument clamped to at least LOG_CLAMP."""
    return np.log(np.maximum(x, LOG_CLAMP))


def log_sigmoid(x):
    """log(sigmoid(x)) without overflow for large |x|."""
    x = np.asarray(x, dtype=np.float64)
    # -log(1 + exp(-x)) for x >= 0, x - log(1 + exp(x)) otherwise
    out = np.empty_like(x)
    pos = x >= 0
    out[pos] = -np.log1p(np.exp(-x[pos]))
    out[~pos] = x[~pos] - np.log1p(np.exp(x[~pos]))
    return out
