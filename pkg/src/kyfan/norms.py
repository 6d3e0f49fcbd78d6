"""Weighted k-norms on vectors, singular spectra, and column profiles.

A weight is a nonincreasing tuple w1 >= ... >= wk > 0 (zero tail entries
beyond position k are allowed).  The three norm families are

* ``weighted_vector_k_norm``:   sum_{i<=k} w_i |x|_i  (sorted absolute values),
* ``weighted_kyfan_norm``:      sum_{i<=k} w_i sigma_i(A),
* ``weighted_column_norm``:     sum_{i<=k} w_i c_i(A)  (sorted column lengths),

and ``dual_weighted_vector_k_norm`` evaluates the dual of the first family in
closed form.  The closed form is cross-validated against explicit candidate
enumeration in :mod:`kyfan.ensembles`, not assumed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .matrixcore import as_matrix, as_vector, column_norms, singular_values

__all__ = [
    "INEQUALITY_TOL",
    "RESIDUAL_TOL",
    "Weight",
    "inequality_holds",
    "residual_vanishes",
    "weighted_vector_k_norm",
    "dual_weighted_vector_k_norm",
    "weighted_kyfan_norm",
    "weighted_column_norm",
    "kyfan_norm",
    "trace_norm",
]

# Repo-wide tolerance policy: an inequality "holds" when
# lhs <= rhs + INEQUALITY_TOL * max(1, rhs); a residual "vanishes" below
# RESIDUAL_TOL * (1 + scale).
INEQUALITY_TOL = 1e-8
RESIDUAL_TOL = 1e-10


def inequality_holds(lhs: float, rhs: float, tol: float = INEQUALITY_TOL) -> bool:
    return lhs <= rhs + tol * max(1.0, rhs)


def residual_vanishes(residual: float, scale: float = 0.0, tol: float = RESIDUAL_TOL) -> bool:
    return residual <= tol * (1.0 + scale)


@dataclass(frozen=True)
class Weight:
    """Nonincreasing nonnegative weights with an active prefix of length k.

    ``entries`` may be longer than ``k`` (e.g. a zero tail); only the first k
    entries enter any norm, and the k-th entry must be strictly positive so
    the induced norms are nondegenerate.
    """

    entries: tuple[float, ...]
    k: int

    def __post_init__(self):
        entries = tuple(float(e) for e in self.entries)
        object.__setattr__(self, "entries", entries)
        k = self.k
        if not isinstance(k, (int, np.integer)) or isinstance(k, bool):
            raise ValueError("k must be an integer")
        object.__setattr__(self, "k", int(k))
        if len(entries) == 0:
            raise ValueError("weight needs at least one entry")
        if not all(np.isfinite(e) for e in entries):
            raise ValueError("weight entries must be finite")
        if any(e < 0 for e in entries):
            raise ValueError("weight entries must be nonnegative")
        if any(entries[i] < entries[i + 1] for i in range(len(entries) - 1)):
            raise ValueError("weight entries must be nonincreasing")
        if not 1 <= self.k <= len(entries):
            raise ValueError(f"k={self.k} out of range for {len(entries)} entries")
        if entries[self.k - 1] <= 0:
            raise ValueError("the k-th weight entry must be strictly positive")

    @classmethod
    def ones(cls, k: int, n: int | None = None) -> "Weight":
        """Unit weights: the plain (unweighted) k-norm family."""
        return cls((1.0,) * (n if n is not None else k), k)

    def prefix_sums(self) -> np.ndarray:
        """Cumulative sums w1, w1+w2, ..., w1+...+wk."""
        return np.cumsum(self.entries[: self.k])


def _abs_sorted_desc(x, w: Weight, *, name: str) -> np.ndarray:
    v = np.abs(as_vector(x, name=name))
    if v.size < w.k:
        raise ValueError(f"{name} has length {v.size} < k={w.k}")
    return np.sort(v)[::-1]


def weighted_vector_k_norm(x, w: Weight) -> float:
    """sum_{i<=k} w_i |x|_i with |x|_1 >= |x|_2 >= ... the sorted moduli."""
    v = _abs_sorted_desc(x, w, name="x")
    return float(np.dot(v[: w.k], w.entries[: w.k]))


def dual_weighted_vector_k_norm(x, w: Weight) -> float:
    """Dual of the weighted vector k-norm.

    Equals the maximum of ||x||_(j) / (w1+...+wj) over j = 1..k-1 together
    with ||x||_(n) / (w1+...+wk), where ||x||_(j) is the sum of the j largest
    moduli.  For k = 1 only the last term applies.
    """
    v = _abs_sorted_desc(x, w, name="x")
    cums = np.cumsum(v)
    ws = w.prefix_sums()
    best = cums[-1] / ws[w.k - 1]
    if w.k > 1:
        partial = cums[: w.k - 1] / ws[: w.k - 1]
        best = max(best, float(partial.max()))
    return float(best)


def weighted_kyfan_norm(a, w: Weight) -> float:
    """sum_{i<=k} w_i sigma_i(A) for square A with n >= k."""
    m = as_matrix(a, square=True, name="A")
    if m.shape[0] < w.k:
        raise ValueError(f"matrix of size {m.shape[0]} < k={w.k}")
    s = singular_values(m)
    return float(np.dot(s[: w.k], w.entries[: w.k]))


def weighted_column_norm(a, w: Weight) -> float:
    """sum_{i<=k} w_i c_i(A) over the sorted Euclidean column lengths."""
    m = as_matrix(a, square=True, name="A")
    if m.shape[0] < w.k:
        raise ValueError(f"matrix of size {m.shape[0]} < k={w.k}")
    c = column_norms(m)
    return float(np.dot(c[: w.k], w.entries[: w.k]))


def kyfan_norm(a, k: int) -> float:
    """Sum of the k largest singular values (unweighted Ky Fan k-norm)."""
    s = singular_values(a)
    k = int(k)
    if not 1 <= k <= s.size:
        raise ValueError(f"k={k} out of range 1..{s.size}")
    return float(s[:k].sum())


def trace_norm(a) -> float:
    """Sum of all singular values."""
    return float(singular_values(a).sum())
