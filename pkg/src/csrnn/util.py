"""Seed derivation and small numeric helpers shared by several modules."""

import hashlib

import numpy as np


def derive_seed(seed: int, tag: str) -> int:
    """Stable 63-bit sub-seed for one purpose under a top-level seed.

    The rule (SHA-256 over ``"{seed}/{tag}"``) is fixed so that the random
    sub-streams of different components never shift relative to each other
    when unrelated code changes.
    """
    digest = hashlib.sha256(f"{seed}/{tag}".encode()).digest()
    return int.from_bytes(digest[:8], "big") >> 1


def max_rel_error(a: np.ndarray, b: np.ndarray, floor: float = 1e-5) -> float:
    """Largest guarded relative difference between two same-shaped arrays.

    The denominator is floored so that entries that are tiny in both arrays
    (where finite differences are pure round-off noise) do not dominate.
    """
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.size == 0:
        return 0.0
    num = np.abs(a - b)
    den = np.maximum(np.abs(a) + np.abs(b), floor)
    return float((num / den).max())
