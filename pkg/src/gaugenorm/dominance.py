"""Majorization of s-numbers and its transfer to whole norm families.

If every top-k partial sum of the s-numbers of S is bounded by the matching
partial sum for T, then S is below T in every norm this package evaluates.
Checking the n grid points k/n suffices for the continuum of Ky Fan norms
because t times the Ky Fan t-norm is piecewise linear in t with knots k/n.
"""

from __future__ import annotations

import numpy as np

from . import linalg
from .norms import NormSpec, norm_mat, spec_to_json

HYPOTHESIS_SLACK = 1e-10
CONCLUSION_SLACK = 1e-9


def kyfan_dominates(T: np.ndarray, S: np.ndarray) -> tuple[bool, dict]:
    """Whether T dominates S in every Ky Fan norm, with a certificate.

    The certificate carries both partial-sum tables and the first violating
    k (1-based) when the verdict is negative. The hypothesis side gets 1e-10
    slack so roundoff cannot manufacture a spurious violation when the
    partial sums genuinely dominate.
    """
    if T.shape != S.shape:
        raise ValueError(f"dimension mismatch: {S.shape} vs {T.shape}")
    sums_S = np.cumsum(linalg.s_numbers(S))
    sums_T = np.cumsum(linalg.s_numbers(T))
    violating = None
    for k, (a, b) in enumerate(zip(sums_S, sums_T), start=1):
        if a > b + HYPOTHESIS_SLACK:
            violating = k
            break
    return violating is None, {
        "dominates": violating is None,
        "partial_sums_S": sums_S.tolist(),
        "partial_sums_T": sums_T.tolist(),
        "violating_k": violating,
    }


def dominance_transfer(
    T: np.ndarray, S: np.ndarray, specs: list[NormSpec]
) -> dict:
    """Check |||S||| <= |||T||| across a battery of norm specs.

    Requires the Ky Fan dominance hypothesis to hold; margins are reported
    per spec and a margin below -1e-9 counts as a failure.
    """
    verdict, certificate = kyfan_dominates(T, S)
    if not verdict:
        raise ValueError(
            f"dominance hypothesis fails at k={certificate['violating_k']}"
        )
    entries = []
    passed = True
    for spec in specs:
        nS = norm_mat(spec, S)
        nT = norm_mat(spec, T)
        margin = nT - nS
        ok = margin >= -CONCLUSION_SLACK
        passed = passed and ok
        entries.append(
            {
                "spec": spec_to_json(spec),
                "norm_S": nS,
                "norm_T": nT,
                "margin": margin,
                "ok": ok,
            }
        )
    return {"certificate": certificate, "specs": entries, "passed": passed}


def majorization_pair(
    n: int, rng: "linalg.Rng64", style: str = "contraction"
) -> tuple[np.ndarray, np.ndarray]:
    """A random pair (T, S) with S dominated by T in all Ky Fan norms.

    Three constructions, each a norm contraction applied to a random T:
    multiplying by a contraction, averaging over conjugations by random
    unitaries, and pinching by a random orthogonal partition.
    """
    T = linalg.random_matrix(n, rng.next_u64())
    if style == "contraction":
        A = linalg.random_matrix(n, rng.next_u64())
        A = A / (linalg.operator_norm(A) * (1.0 + rng.uniform()))
        return T, A @ T
    if style == "unitary_mix":
        k = 2 + rng.next_u64() % 3
        weights = [rng.uniform() for _ in range(k)]
        total = sum(weights)
        S = np.zeros_like(T)
        for w in weights:
            U = linalg.random_unitary(n, rng.next_u64())
            S = S + (w / total) * (U @ T @ U.conj().T)
        return T, S
    if style == "pinch":
        return T, linalg.pinch(T, linalg.random_partition(n, rng.next_u64()))
    raise ValueError(f"unknown pair style {style!r}")


def violating_weight(n: int, k: int):
    """The weight whose norm witnesses a failed dominance at level k.

    The flat head weight (n/k on [0, k/n), zero after) turns the k-th
    partial-sum gap directly into a weight-norm gap.
    """
    from .norms import Weight
    from .stepfn import StepFn

    values = [n / k] * k + [0.0] * (n - k)
    return Weight(StepFn.from_uniform(values))
