"""Partial-trace operators, commuting regressions, and counterexample search.

For Hermitian A, B the operator under study is

    T(A, B) = Tr_1[ (A ox I + I ox A)(B ox I - I ox B) ]
            = tr(AB) I - tr(A) B + tr(B) A - n AB,

where Tr_1 sums the first Kronecker factor.  The closed form on the right is
what search loops evaluate (n x n work); :func:`lhs_operator` additionally
runs the brute-force Kronecker route and raises if the two disagree, so the
closed form is never trusted silently.

The two open questions ask whether the k-norm of T is bounded by

    question 1:  2 sigma_1(A) ||tr(B) I - n B||_(k)
    question 2:  2 sum_{i<=k} sigma_i(A) sigma_i(tr(B) I - n B)

A positive margin (lhs - rhs) beyond tolerance is a counterexample candidate;
the searches only ever report "no counterexample found within budget",
never nonexistence.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .ensembles import SeededStream, haar_unitary
from .matrixcore import as_matrix, kronecker, partial_trace_first, singular_values
from .norms import INEQUALITY_TOL

__all__ = [
    "QuestionInstance",
    "SearchResult",
    "require_hermitian",
    "trace_deviation",
    "lhs_operator",
    "lhs_operator_brute",
    "question_margin",
    "question_margins_all_k",
    "worst_question_margin",
    "pack_hermitian_pair",
    "unpack_hermitian_pair",
    "search_counterexample",
]


def require_hermitian(a, *, name: str = "matrix", tol: float = 1e-12) -> np.ndarray:
    m = as_matrix(a, square=True, name=name)
    deviation = float(np.linalg.norm(m - m.conj().T))
    if deviation > tol * (1.0 + float(np.linalg.norm(m))):
        raise ValueError(f"{name} is not Hermitian (deviation {deviation:.3e})")
    return m


@dataclass(frozen=True, eq=False)
class QuestionInstance:
    """A Hermitian pair together with the question number and the k under test."""

    A: np.ndarray
    B: np.ndarray
    n: int
    question: int
    k: int

    def __post_init__(self):
        a = require_hermitian(self.A, name="A")
        b = require_hermitian(self.B, name="B")
        if a.shape != b.shape:
            raise ValueError(f"shape mismatch {a.shape} vs {b.shape}")
        object.__setattr__(self, "A", a)
        object.__setattr__(self, "B", b)
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "question", int(self.question))
        object.__setattr__(self, "k", int(self.k))
        if self.n != a.shape[0]:
            raise ValueError(f"n={self.n} does not match matrices of size {a.shape[0]}")
        if self.question not in (1, 2):
            raise ValueError("question must be 1 or 2")
        if not 1 <= self.k <= self.n:
            raise ValueError(f"k={self.k} out of range 1..{self.n}")


@dataclass(frozen=True, eq=False)
class SearchResult:
    best_margin: float
    witness: QuestionInstance | None
    evaluations: int
    strategy: str
    master_seed: int
    question: int
    n: int
    restarts: int


def trace_deviation(b) -> np.ndarray:
    """tr(B) I - n B, the first-factor partial trace of B ox I - I ox B."""
    m = as_matrix(b, square=True, name="B")
    n = m.shape[0]
    return np.trace(m) * np.eye(n, dtype=np.complex128) - n * m


def _closed_form(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    n = a.shape[0]
    ab = a @ b
    eye = np.eye(n, dtype=np.complex128)
    return np.trace(ab) * eye - np.trace(a) * b + np.trace(b) * a - n * ab


def lhs_operator_brute(a, b) -> np.ndarray:
    """The Kronecker route: build the n^2 x n^2 product and trace out factor one."""
    a = require_hermitian(a, name="A")
    b = require_hermitian(b, name="B")
    n = a.shape[0]
    eye = np.eye(n, dtype=np.complex128)
    left = kronecker(a, eye) + kronecker(eye, a)
    right = kronecker(b, eye) - kronecker(eye, b)
    return partial_trace_first(left @ right, n)


def lhs_operator(a, b, *, cross_check: bool = True) -> np.ndarray:
    """tr(AB) I - tr(A) B + tr(B) A - n AB, optionally verified against the
    brute-force Kronecker/partial-trace route.

    With ``cross_check`` the two independently computed operators must agree
    within 1e-10 * (1 + scale) or an ArithmeticError is raised; search loops
    pass ``cross_check=False`` and rely on the suite-level verification.
    """
    a = require_hermitian(a, name="A")
    b = require_hermitian(b, name="B")
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch {a.shape} vs {b.shape}")
    closed = _closed_form(a, b)
    if cross_check:
        brute = lhs_operator_brute(a, b)
        residual = float(np.linalg.norm(brute - closed))
        if residual > 1e-10 * (1.0 + float(np.linalg.norm(closed))):
            raise ArithmeticError(
                f"closed form disagrees with the Kronecker route: residual {residual:.3e}"
            )
    return closed


def question_margins_all_k(a, b, question: int) -> np.ndarray:
    """Margins lhs - rhs for k = 1..n (index k-1) using the closed form."""
    a = require_hermitian(a, name="A")
    b = require_hermitian(b, name="B")
    question = int(question)
    if question not in (1, 2):
        raise ValueError("question must be 1 or 2")
    t = _closed_form(a, b)
    d = trace_deviation(b)
    lhs = np.cumsum(singular_values(t))
    sd = singular_values(d)
    if question == 1:
        rhs = 2.0 * singular_values(a)[0] * np.cumsum(sd)
    else:
        rhs = 2.0 * np.cumsum(singular_values(a) * sd)
    return lhs - rhs


def question_margin(inst: QuestionInstance) -> float:
    """Margin of one instance at its own k (positive = counterexample candidate)."""
    return float(question_margins_all_k(inst.A, inst.B, inst.question)[inst.k - 1])


def worst_question_margin(a, b, question: int, k_values=None) -> tuple[float, int]:
    """Largest margin over the requested k values (default: all of 1..n)."""
    margins = question_margins_all_k(a, b, question)
    ks = range(1, margins.size + 1) if k_values is None else [int(k) for k in k_values]
    best_k = max(ks, key=lambda k: margins[k - 1])
    return float(margins[best_k - 1]), int(best_k)


# ---------------------------------------------------------------------------
# search
# ---------------------------------------------------------------------------


def pack_hermitian_pair(a, b) -> np.ndarray:
    """Flatten a Hermitian pair into 2 n^2 reals (diagonal, then upper re/im)."""
    a = require_hermitian(a, name="A")
    b = require_hermitian(b, name="B")
    return np.concatenate([_pack_one(a), _pack_one(b)])


def _pack_one(h: np.ndarray) -> np.ndarray:
    n = h.shape[0]
    iu = np.triu_indices(n, k=1)
    return np.concatenate([np.diagonal(h).real, h[iu].real, h[iu].imag])


def unpack_hermitian_pair(theta, n: int) -> tuple[np.ndarray, np.ndarray]:
    theta = np.asarray(theta, dtype=np.float64)
    if theta.shape != (2 * n * n,):
        raise ValueError(f"expected {2 * n * n} parameters, got {theta.shape}")
    return _unpack_one(theta[: n * n], n), _unpack_one(theta[n * n :], n)


def _unpack_one(part: np.ndarray, n: int) -> np.ndarray:
    h = np.zeros((n, n), dtype=np.complex128)
    offdiag = (n * (n - 1)) // 2
    diag, re, im = part[:n], part[n : n + offdiag], part[n + offdiag :]
    iu = np.triu_indices(n, k=1)
    h[iu] = re + 1j * im
    h += h.conj().T  # lower triangle is the exact conjugate, so h is Hermitian
    h[np.diag_indices(n)] = diag
    return h


def _split_budget(budget: int, restarts: int) -> list[int]:
    if restarts <= 0:
        return []
    base, rem = divmod(budget, restarts)
    return [base + (1 if r < rem else 0) for r in range(restarts)]


def search_counterexample(
    question: int,
    n: int,
    k_policy="all",
    budget: int = 20000,
    restarts: int = 8,
    s=None,
    *,
    strategy: str = "general",
    tolerance: float = INEQUALITY_TOL,
    step_init: float = 0.5,
    stall_limit: int = 50,
) -> SearchResult:
    """Multi-restart greedy search maximizing the question margin.

    Each restart draws a random Hermitian pair (parameterized by 2 n^2 reals,
    or by two spectra in a shared random eigenbasis when
    ``strategy="commuting"``), then repeatedly perturbs one coordinate by a
    Gaussian step, keeping improvements and halving the step after
    ``stall_limit`` consecutive rejections.  ``budget`` counts margin
    evaluations across all restarts; ties in best margin resolve to the
    earlier restart.  A witness is attached only when the best margin exceeds
    ``tolerance``; a negative result never claims nonexistence.
    """
    question = int(question)
    if question not in (1, 2):
        raise ValueError("question must be 1 or 2")
    n = int(n)
    if n < 1:
        raise ValueError("n must be positive")
    budget = int(budget)
    if budget < 0:
        raise ValueError("budget must be nonnegative")
    restarts = int(restarts)
    if restarts < 1:
        raise ValueError("restarts must be positive")
    if strategy not in ("general", "commuting"):
        raise ValueError(f"unknown strategy {strategy!r}")
    if k_policy != "all":
        k_policy = int(k_policy)
        if not 1 <= k_policy <= n:
            raise ValueError(f"k={k_policy} out of range 1..{n}")
    k_values = None if k_policy == "all" else [k_policy]
    if s is None:
        raise ValueError("a seed stream is required")
    stream = s if isinstance(s, SeededStream) else SeededStream(int(s))

    best_margin = -math.inf
    best_pair = None
    best_k = 1
    evaluations = 0

    for r, quota in enumerate(_split_budget(budget, restarts)):
        if quota <= 0:
            continue
        g = stream.offset(r).generator()
        if strategy == "commuting":
            basis = haar_unitary(n, g)
            dim = 2 * n

            def build(theta):
                a = (basis * theta[:n]) @ basis.conj().T
                b = (basis * theta[n:]) @ basis.conj().T
                return (a + a.conj().T) / 2.0, (b + b.conj().T) / 2.0

        else:
            basis = None
            dim = 2 * n * n

            def build(theta):
                return unpack_hermitian_pair(theta, n)

        theta = g.standard_normal(dim)

        def margin_of(t):
            a, b = build(t)
            return worst_question_margin(a, b, question, k_values)

        current, current_k = margin_of(theta)
        used = 1
        step = step_init
        stalls = 0
        while used < quota:
            candidate = theta.copy()
            candidate[g.integers(dim)] += step * g.standard_normal()
            value, value_k = margin_of(candidate)
            used += 1
            if value > current:
                theta, current, current_k = candidate, value, value_k
                stalls = 0
            else:
                stalls += 1
                if stalls >= stall_limit:
                    step *= 0.5
                    stalls = 0
        evaluations += used
        if current > best_margin:
            best_margin = current
            best_pair = build(theta)
            best_k = current_k

    witness = None
    if best_pair is not None and best_margin > tolerance:
        witness = QuestionInstance(
            A=best_pair[0], B=best_pair[1], n=n, question=question, k=best_k
        )
    return SearchResult(
        best_margin=float(best_margin),
        witness=witness,
        evaluations=evaluations,
        strategy=strategy,
        master_seed=stream.master_seed,
        question=question,
        n=n,
        restarts=restarts,
    )
