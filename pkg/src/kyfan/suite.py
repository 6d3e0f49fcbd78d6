"""Randomized inequality checkers with replayable reports.

Each checker draws seeded trials, evaluates one inequality family at every
requested k, and aggregates violations under the repo tolerance policy:
a trial violates when lhs - rhs > tol * max(1, rhs).  Margins are lhs - rhs,
so positive beyond tolerance means "violated".  The worst trial is kept as a
:class:`Witness` whose matrices re-evaluate to the recorded margin.

Checker ids double as report ids: von-neumann, product-family,
hadamard-family, ahj-given, ahj-sqrt, lemma31, lemma32, hmn-<mask>,
fan-sigma1.
"""

from __future__ import annotations

import dataclasses
import math
import time
from dataclasses import dataclass, field

import numpy as np

from .ensembles import (
    GENERATOR_ID,
    SeededStream,
    ginibre,
    random_contraction,
    random_subunit_columns,
    random_unit_vector,
    sample_unit_columns,
)
from .forms import EntrywiseForm, apply_form, fan_product, right_adjoint_apply
from .matrixcore import column_norms, factor_sqrt, singular_values, svd
from .norms import INEQUALITY_TOL

__all__ = [
    "Witness",
    "CheckReport",
    "check_von_neumann",
    "check_product_family",
    "check_hadamard_family",
    "check_ahj",
    "check_lemma31",
    "check_lemma32",
    "check_hmn",
    "check_fan_sigma1",
    "reproduce_fan_counterexample",
    "von_neumann_equality_witness",
    "reevaluate_margin",
    "PARTS_BY_ID",
]


@dataclass(frozen=True, eq=False)
class Witness:
    """Inputs of one trial plus the k and margin they produced."""

    matrices: dict
    k: int
    margin: float


@dataclass(frozen=True, eq=False)
class CheckReport:
    inequality_id: str
    n: int
    k_range: tuple[int, ...]
    trials: int
    violations: int
    worst_margin: float
    tolerance: float
    master_seed: int
    elapsed_seconds: float
    generator_id: str = GENERATOR_ID
    per_k_worst: dict = field(default_factory=dict)
    details: dict = field(default_factory=dict)
    witness: Witness | None = None


def _as_stream(s) -> SeededStream:
    if isinstance(s, SeededStream):
        return s
    if isinstance(s, (int, np.integer)) and not isinstance(s, bool):
        return SeededStream(int(s))
    raise TypeError("checker seeds must be a SeededStream or an int master seed")


def _run_checker(
    inequality_id: str,
    n: int,
    trials: int,
    s,
    draw,
    parts,
    *,
    tolerance: float = INEQUALITY_TOL,
    k_values=None,
    extra_trials=(),
    observe=None,
    details: dict | None = None,
) -> CheckReport:
    n = int(n)
    trials = int(trials)
    if n < 1:
        raise ValueError("n must be positive")
    if trials < 0:
        raise ValueError("trials must be nonnegative")
    stream = _as_stream(s)
    k_filter = None if k_values is None else {int(k) for k in k_values}
    t0 = time.perf_counter()

    violations = 0
    worst = -math.inf
    worst_k = 0
    worst_mats = None
    per_k: dict[int, float] = {}

    def score(mats):
        nonlocal violations, worst, worst_k, worst_mats
        if observe is not None:
            observe(mats)
        ks, lhs, rhs = parts(mats)
        for i, k in enumerate(ks):
            k = int(k)
            if k_filter is not None and k not in k_filter:
                continue
            m = float(lhs[i]) - float(rhs[i])
            if m > tolerance * max(1.0, float(rhs[i])):
                violations += 1
            if k not in per_k or m > per_k[k]:
                per_k[k] = m
            if m > worst:
                worst, worst_k, worst_mats = m, k, mats

    for t in range(trials):
        score(draw(stream.offset(t).generator()))
    for mats in extra_trials:
        score(dict(mats))

    witness = None
    if worst_mats is not None:
        witness = Witness(matrices=worst_mats, k=worst_k, margin=worst)
    return CheckReport(
        inequality_id=inequality_id,
        n=n,
        k_range=tuple(sorted(per_k)),
        trials=trials + len(tuple(extra_trials)),
        violations=violations,
        worst_margin=worst,
        tolerance=float(tolerance),
        master_seed=stream.master_seed,
        elapsed_seconds=time.perf_counter() - t0,
        per_k_worst=dict(sorted(per_k.items())),
        details=dict(details or {}),
        witness=witness,
    )


# ---------------------------------------------------------------------------
# per-family evaluation (shared by checkers and witness re-evaluation)
# ---------------------------------------------------------------------------


def _parts_von_neumann(mats):
    a, b = mats["A"], mats["B"]
    lhs = abs(np.trace(a @ b))
    rhs = float(np.dot(singular_values(a), singular_values(b)))
    return (a.shape[0],), (lhs,), (rhs,)


def _parts_product_family(mats):
    a, b = mats["A"], mats["B"]
    lhs = np.cumsum(singular_values(a @ b))
    rhs = np.cumsum(singular_values(a) * singular_values(b))
    return range(1, a.shape[0] + 1), lhs, rhs


def _parts_hadamard_family(mats):
    a, b = mats["A"], mats["B"]
    lhs = np.cumsum(singular_values(a * b))
    rhs = np.cumsum(singular_values(a) * singular_values(b))
    return range(1, a.shape[0] + 1), lhs, rhs


def _parts_ahj(mats):
    x, y, b = mats["X"], mats["Y"], mats["B"]
    lhs = np.cumsum(singular_values((x.conj().T @ y) * b))
    rhs = np.cumsum(column_norms(x) * column_norms(y) * singular_values(b))
    return range(1, b.shape[0] + 1), lhs, rhs


def _parts_lemma31(mats):
    form = EntrywiseForm(mats["mask"])
    x, y, s = mats["X"], mats["Y"], mats["S"]
    lhs = singular_values(apply_form(form, x.conj().T @ y, s))[0]
    return (1,), (lhs,), (1.0,)


def _parts_lemma32(mats):
    x, y = mats["X"], mats["Y"]
    u = np.asarray(mats["u"]).ravel()
    v = np.asarray(mats["v"]).ravel()
    q = np.outer(u, v.conj())
    lhs = float(singular_values((x.conj().T @ y) * q).sum())
    return (1,), (lhs,), (1.0,)


def _parts_hmn(mats):
    form = EntrywiseForm(mats["mask"])
    a, b = mats["A"], mats["B"]
    lhs = np.cumsum(singular_values(apply_form(form, a, b)))
    rhs = np.cumsum(singular_values(a) * singular_values(b))
    return range(1, a.shape[0] + 1), lhs, rhs


def _parts_fan_sigma1(mats):
    a, b = mats["A"], mats["B"]
    lhs = max(
        singular_values(fan_product(a, b))[0],
        singular_values(fan_product(a.T, b))[0],
    )
    rhs = singular_values(a)[0] * singular_values(b)[0]
    return (1,), (lhs,), (rhs,)


PARTS_BY_ID = {
    "von-neumann": _parts_von_neumann,
    "product-family": _parts_product_family,
    "hadamard-family": _parts_hadamard_family,
    "ahj-given": _parts_ahj,
    "ahj-sqrt": _parts_ahj,
    "lemma31": _parts_lemma31,
    "lemma31-fan": _parts_lemma31,
    "lemma32": _parts_lemma32,
    "hmn-hadamard": _parts_hmn,
    "hmn-fan": _parts_hmn,
    "hmn-masked": _parts_hmn,
    "fan-sigma1": _parts_fan_sigma1,
}


def reevaluate_margin(inequality_id: str, witness: Witness) -> float:
    """Recompute a stored witness's margin from its matrices."""
    parts = PARTS_BY_ID[inequality_id]
    ks, lhs, rhs = parts(witness.matrices)
    for i, k in enumerate(ks):
        if int(k) == witness.k:
            return float(lhs[i]) - float(rhs[i])
    raise ValueError(f"witness k={witness.k} not produced by {inequality_id}")


# ---------------------------------------------------------------------------
# checkers
# ---------------------------------------------------------------------------


def check_von_neumann(n, trials, s, *, tolerance=INEQUALITY_TOL, k_values=None) -> CheckReport:
    """|tr(AB)| <= sum_i sigma_i(A) sigma_i(B) on complex Gaussian pairs."""

    def draw(g):
        return {"A": ginibre(n, g), "B": ginibre(n, g)}

    return _run_checker(
        "von-neumann", n, trials, s, draw, _parts_von_neumann,
        tolerance=tolerance, k_values=k_values,
    )


def check_product_family(n, trials, s, *, tolerance=INEQUALITY_TOL, k_values=None) -> CheckReport:
    """sum_{i<=k} sigma_i(AB) <= sum_{i<=k} sigma_i(A) sigma_i(B), every k."""

    def draw(g):
        return {"A": ginibre(n, g), "B": ginibre(n, g)}

    return _run_checker(
        "product-family", n, trials, s, draw, _parts_product_family,
        tolerance=tolerance, k_values=k_values,
    )


def check_hadamard_family(n, trials, s, *, tolerance=INEQUALITY_TOL, k_values=None) -> CheckReport:
    """sum_{i<=k} sigma_i(A o B) <= sum_{i<=k} sigma_i(A) sigma_i(B), every k."""

    def draw(g):
        return {"A": ginibre(n, g), "B": ginibre(n, g)}

    return _run_checker(
        "hadamard-family", n, trials, s, draw, _parts_hadamard_family,
        tolerance=tolerance, k_values=k_values,
    )


def check_ahj(n, trials, s, factorization="given", *, tolerance=INEQUALITY_TOL, k_values=None) -> CheckReport:
    """sum_{i<=k} sigma_i(X*Y o B) <= sum_{i<=k} c_i(X) c_i(Y) sigma_i(B).

    factorization="given" samples X, Y, B independently; "sqrt" samples a
    single A, splits it into balanced factors X* Y = A, and tests the same
    bound for that induced factorization.
    """
    if factorization not in ("given", "sqrt"):
        raise ValueError(f"unknown factorization {factorization!r}")

    def draw(g):
        if factorization == "given":
            return {"X": ginibre(n, g), "Y": ginibre(n, g), "B": ginibre(n, g)}
        x, y = factor_sqrt(ginibre(n, g))
        return {"X": x, "Y": y, "B": ginibre(n, g)}

    return _run_checker(
        f"ahj-{factorization}", n, trials, s, draw, _parts_ahj,
        tolerance=tolerance, k_values=k_values,
    )


def check_lemma31(form: EntrywiseForm, n, trials, s, *, tolerance=INEQUALITY_TOL,
                  k_values=None, extra_trials=()) -> CheckReport:
    """sigma_1((X*Y) . S) <= 1 for subunit-column X, Y and a contraction S.

    A theorem for the all-ones mask; for the diagonal-negated mask explicit
    violations exist, and deterministic inputs (e.g. the known 3x3 violating
    triple) can be appended through ``extra_trials`` as {"X","Y","S"} dicts.
    """
    if int(n) != form.n:
        raise ValueError(f"form is {form.n} x {form.n} but n={n}")
    ineq_id = "lemma31" if form.name == "hadamard" else f"lemma31-{form.name}"

    def draw(g):
        return {
            "X": random_subunit_columns(n, g),
            "Y": random_subunit_columns(n, g),
            "S": random_contraction(n, g),
            "mask": form.mask,
        }

    extras = [dict(m, mask=form.mask) for m in extra_trials]
    return _run_checker(
        ineq_id, n, trials, s, draw, _parts_lemma31,
        tolerance=tolerance, k_values=k_values, extra_trials=extras,
    )


def check_lemma32(n, trials, s, *, tolerance=INEQUALITY_TOL, k_values=None) -> CheckReport:
    """trace norm of (X*Y) o (u v*) <= 1 for unit-column X, Y and unit u, v."""

    def draw(g):
        return {
            "X": sample_unit_columns(n, n, g),
            "Y": sample_unit_columns(n, n, g),
            "u": random_unit_vector(n, g)[:, None],
            "v": random_unit_vector(n, g)[:, None],
        }

    return _run_checker(
        "lemma32", n, trials, s, draw, _parts_lemma32,
        tolerance=tolerance, k_values=k_values,
    )


def check_hmn(form: EntrywiseForm, n, trials, s, *, tolerance=INEQUALITY_TOL,
              k_values=None, extra_trials=()) -> CheckReport:
    """Two-phase check of the masked-product norm transfer.

    Hypothesis probe: over the sampled pairs, record the largest ratios
    sigma_1(A . B) / (sigma_1(A) sigma_1(B)) and the same for the adjoint
    form B^T . C.  Conclusion: for every k,
    sum_{i<=k} sigma_i(A . B) <= sum_{i<=k} sigma_i(A) sigma_i(B).
    The report's details flag whether the observations are consistent with
    "ratios stay <= 1 exactly when the family holds" — observed, not proved.
    """
    if int(n) != form.n:
        raise ValueError(f"form is {form.n} x {form.n} but n={n}")
    hyp = {"max_sigma1_ratio": 0.0, "max_adjoint_sigma1_ratio": 0.0}

    def observe(mats):
        a, b = mats["A"], mats["B"]
        denom = singular_values(a)[0] * singular_values(b)[0]
        if denom < 1e-12:
            return
        fwd = singular_values(apply_form(form, a, b))[0] / denom
        adj = singular_values(right_adjoint_apply(form, a, b))[0] / denom
        hyp["max_sigma1_ratio"] = max(hyp["max_sigma1_ratio"], float(fwd))
        hyp["max_adjoint_sigma1_ratio"] = max(hyp["max_adjoint_sigma1_ratio"], float(adj))

    def draw(g):
        return {"A": random_contraction(n, g), "B": random_contraction(n, g), "mask": form.mask}

    extras = [dict(m, mask=form.mask) for m in extra_trials]
    report = _run_checker(
        f"hmn-{form.name}", n, trials, s, draw, _parts_hmn,
        tolerance=tolerance, k_values=k_values, extra_trials=extras, observe=observe,
    )
    hypothesis_ok = (
        hyp["max_sigma1_ratio"] <= 1.0 + tolerance
        and hyp["max_adjoint_sigma1_ratio"] <= 1.0 + tolerance
    )
    details = dict(hyp)
    details["hypothesis_ok"] = hypothesis_ok
    details["hypothesis_status"] = (
        "no violation observed" if hypothesis_ok else "violation observed"
    )
    details["consistent_with_iff"] = hypothesis_ok == (report.violations == 0)
    return dataclasses.replace(report, details=details)


def check_fan_sigma1(n, trials, s, *, tolerance=INEQUALITY_TOL, k_values=None) -> CheckReport:
    """Top singular value of the diagonal-negated product stays below
    sigma_1(A) sigma_1(B), applied both to (A, B) and to (A^T, B)."""

    def draw(g):
        return {"A": ginibre(n, g), "B": ginibre(n, g)}

    return _run_checker(
        "fan-sigma1", n, trials, s, draw, _parts_fan_sigma1,
        tolerance=tolerance, k_values=k_values,
    )


# ---------------------------------------------------------------------------
# exact constructions
# ---------------------------------------------------------------------------


def counterexample_inputs() -> dict:
    """The fixed 3x3 violating triple: X = Y with all columns (1,1,1)/sqrt(3),
    and a rational unitary S whose diagonal-negated product with X*Y has top
    singular value sqrt(13)/3 > 1."""
    x = np.full((3, 3), 1.0 / np.sqrt(3.0), dtype=np.complex128)
    s = np.array([[2, 1, 2], [-2, 2, 1], [1, 2, -2]], dtype=np.complex128) / 3.0
    return {"X": x, "Y": x.copy(), "S": s}


def reproduce_fan_counterexample(*, unitary_tol: float = 1e-12) -> Witness:
    """Reproduce the explicit contraction-norm violation for the
    diagonal-negated product.

    Builds the fixed triple from :func:`counterexample_inputs`, verifies S is
    unitary to ``unitary_tol``, forms the diagonal-negated product of X*Y
    (an all-ones matrix) with S, and returns a witness whose margin is the
    k = 1 excess sigma_1(product) - c_1(X) c_1(Y) sigma_1(S), i.e.
    sigma_1 - 1.  Raises if the construction unexpectedly fails to violate.
    """
    mats = counterexample_inputs()
    x, s = mats["X"], mats["S"]
    unitary_residual = float(np.linalg.norm(s.conj().T @ s - np.eye(3)))
    if unitary_residual > unitary_tol:
        raise ArithmeticError(f"S is not unitary: residual {unitary_residual}")
    gram = x.conj().T @ mats["Y"]
    product = fan_product(gram, s)
    top = float(singular_values(product)[0])
    rhs = float(column_norms(x)[0] * column_norms(mats["Y"])[0] * singular_values(s)[0])
    margin = top - rhs
    if margin <= 0:
        raise ArithmeticError("expected a violation, found none")
    matrices = dict(mats, product=product)
    return Witness(matrices=matrices, k=1, margin=margin)


def von_neumann_equality_witness(b) -> np.ndarray:
    """Rank-one A built from B's top singular pair with |tr(AB)| = sigma_1(B).

    A = v1 u1* has singular values (1, 0, ..., 0) and tr(AB) = u1* B v1
    = sigma_1(B), so the trace bound is attained exactly.
    """
    u, _, v = svd(b)
    return np.outer(v[:, 0], u[:, 0].conj())
