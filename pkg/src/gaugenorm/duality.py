"""Dual norms on C^n, computed exactly by linear programming.

Every polyhedral norm here is, on the ordered nonnegative cone
y_1 >= ... >= y_n >= 0, a maximum of finitely many linear functionals
r . y. Its dual norm at x is therefore the LP

    maximize (1/n) sum x*_i y_i   over  { y in cone : r . y <= 1 for all r }

with x* the nonincreasing rearrangement of |x| (rearranging the argument is
lossless by the classical pairing inequality). The substitution
y_i = lambda_i + ... + lambda_n turns the ordering constraints into plain
nonnegativity and leaves a standard-form problem with an all-slack feasible
basis, solved by a dense simplex with Bland's rule.

The same row data drives vertex enumeration of norm balls (incremental double
description on the homogenized cone), which powers the double-dual involution
and the finite representation check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import linalg
from .norms import (
    CSup,
    KyFan,
    KyFanZero,
    Lp,
    NormSpec,
    Operator,
    SupOf,
    TBracket,
    Trace,
    Weight,
    norm_mat,
    norm_vec,
)
from .stepfn import StepFn, partial_integral

PIVOT_TOL = 1e-10
VERTEX_DIM_CAP = 12


class UnsupportedSpecError(ValueError):
    """The requested dual computation is not available for this norm kind."""


def simplex_max(c: np.ndarray, B: np.ndarray) -> tuple[float, np.ndarray]:
    """Maximize c . x subject to B x <= 1, x >= 0.

    The all-ones right-hand side keeps the slack basis feasible, so no
    phase-1 is needed. Bland's rule (lowest eligible index enters, lowest
    basis index leaves among ratio ties) guarantees termination.
    """
    B = np.asarray(B, dtype=float)
    c = np.asarray(c, dtype=float)
    m, d = B.shape
    tab = np.zeros((m + 1, d + m + 1))
    tab[:m, :d] = B
    tab[:m, d : d + m] = np.eye(m)
    tab[:m, -1] = 1.0
    tab[m, :d] = -c
    basis = list(range(d, d + m))
    while True:
        enter = -1
        for j in range(d + m):
            if tab[m, j] < -PIVOT_TOL:
                enter = j
                break
        if enter < 0:
            break
        leave = -1
        best = np.inf
        for i in range(m):
            if tab[i, enter] > PIVOT_TOL:
                ratio = tab[i, -1] / tab[i, enter]
                if ratio < best - 1e-15 or (
                    abs(ratio - best) <= 1e-15
                    and (leave < 0 or basis[i] < basis[leave])
                ):
                    best = ratio
                    leave = i
        if leave < 0:
            raise RuntimeError("LP is unbounded; the row set is not a norm ball")
        piv = tab[leave, enter]
        tab[leave] /= piv
        for i in range(m + 1):
            if i != leave and tab[i, enter] != 0.0:
                tab[i] -= tab[i, enter] * tab[leave]
        basis[leave] = enter
    x = np.zeros(d)
    for i, b in enumerate(basis):
        if b < d:
            x[b] = tab[i, -1]
    return float(tab[m, -1]), x


@dataclass
class OrderedConeLP:
    """A pairing maximization over a polyhedral norm ball on the ordered cone.

    ``rows`` are the linear pieces of the norm: on the ordered cone the norm
    of y is max(r . y) and the unit ball is {r . y <= 1 for all r}, together
    with the implicit ordering constraints y_1 >= ... >= y_n >= 0.
    """

    objective: np.ndarray
    rows: list[np.ndarray]

    def solve(self) -> tuple[float, np.ndarray]:
        """Optimal value and an optimal (ordered) y."""
        n = len(self.objective)
        B = np.array([np.cumsum(r) for r in self.rows], dtype=float)
        c = np.cumsum(self.objective)
        value, lam = simplex_max(c, B)
        y = np.cumsum(lam[::-1])[::-1]
        return value, y


def _kyfan_row(t: Fraction | float, n: int) -> np.ndarray:
    """Coefficients r with r . y = Ky Fan t-norm of the ordered vector y."""
    if t == 0:
        r = np.zeros(n)
        r[0] = 1.0
        return r
    tq = Fraction(t) if not isinstance(t, Fraction) else t
    r = np.zeros(n)
    for i in range(n):
        lo = Fraction(i, n)
        hi = Fraction(i + 1, n)
        overlap = min(hi, tq) - lo
        if overlap <= 0:
            break
        r[i] = float(overlap / tq)
    return r


def _weight_row(w: StepFn, n: int) -> np.ndarray:
    """Coefficients r with r . y = pairing of w against y on the n-grid."""

    def head(x: Fraction) -> float:
        return 0.0 if x == 0 else partial_integral(w, x)

    return np.array(
        [head(Fraction(i + 1, n)) - head(Fraction(i, n)) for i in range(n)]
    )


def spec_rows(spec: NormSpec, n: int) -> list[np.ndarray]:
    """Linear pieces of a polyhedral norm on the ordered cone in R^n."""
    if isinstance(spec, (Operator, KyFanZero)):
        return [_kyfan_row(0, n)]
    if isinstance(spec, Trace):
        return [np.full(n, 1.0 / n)]
    if isinstance(spec, KyFan):
        return [_kyfan_row(spec.t, n)]
    if isinstance(spec, Weight):
        return [_weight_row(spec.f, n)]
    if isinstance(spec, SupOf):
        return [_weight_row(w, n) for w in spec.fs]
    if isinstance(spec, TBracket):
        return [float(spec.t) * _kyfan_row(0, n), np.full(n, 1.0 / n)]
    if isinstance(spec, CSup):
        rows = []
        for lo, hi, cv in spec.c.intervals():
            if cv <= 0.0:
                continue
            rows.append(cv * _kyfan_row(lo, n))
            rows.append(cv * _kyfan_row(hi, n))
        return rows
    raise UnsupportedSpecError(f"{type(spec).__name__} has no polyhedral rows")


def _is_polyhedral(spec: NormSpec) -> bool:
    return isinstance(
        spec, (Operator, Trace, KyFan, KyFanZero, Weight, SupOf, TBracket, CSup)
    )


def dual_vec_full(spec: NormSpec, x) -> tuple[float, np.ndarray]:
    """Dual norm of x and a maximizing ordered witness y."""
    v = np.atleast_1d(np.asarray(x, dtype=np.complex128))
    if v.size == 0:
        raise ValueError("empty vector has no norm")
    xstar = np.sort(np.abs(v))[::-1]
    n = xstar.size
    if isinstance(spec, Lp):
        return _lp_dual(float(spec.p), xstar)
    if not _is_polyhedral(spec):
        raise UnsupportedSpecError(f"no dual route for {type(spec).__name__}")
    lp = OrderedConeLP(objective=xstar / n, rows=spec_rows(spec, n))
    return lp.solve()


_CONJUGATE_EXPONENT_CAP = 1e6


def _lp_dual(p: float, xstar: np.ndarray) -> tuple[float, np.ndarray]:
    """Dual of the Lp norm by the conjugate exponent, with a Holder witness."""
    n = xstar.size
    xmax = float(xstar[0])
    if xmax == 0.0:
        return 0.0, np.zeros(n)
    q = math.inf if p == 1.0 else p / (p - 1.0)
    if q > _CONJUGATE_EXPONENT_CAP:
        # pow amplifies a 1-ulp input error by a factor of q, so past this
        # point the direct formula is noise. Use the sup-norm limit: spread
        # the witness over the exact argmax ties, which is feasible and
        # attains the returned value at every q (exponents 1/inf and
        # 1 - 1/inf evaluate to the p = 1 case with no special handling).
        ties = xstar == xmax
        m = int(np.count_nonzero(ties))
        value = xmax * (m / n) ** (1.0 / q)
        y = np.where(ties, (n / m) ** (1.0 - 1.0 / q), 0.0)
        return float(value), y
    # Rescale by the top entry so the q-mean cannot spuriously under- or
    # overflow; entries far below the max underflow to an honest zero.
    ratios = xstar / xmax
    value = xmax * float(np.mean(ratios**q) ** (1.0 / q))
    y = (xstar / value) ** (q - 1.0)
    return value, y


def dual_vec(spec: NormSpec, x) -> float:
    return dual_vec_full(spec, x)[0]


def dual_mat(spec: NormSpec, T: np.ndarray) -> float:
    """Dual norm of a matrix through the dual of its s-number profile."""
    return dual_vec(spec, linalg.s_numbers(T))


def gamma_extreme_points(n: int, k: int) -> list[np.ndarray]:
    """Extreme points of the ordered set Gamma(n, k).

    Gamma is the set of vectors x_1 >= ... >= x_{k-1} >= x_k = ... = x_n >= 0
    (constant tail from index k) whose top-k average is at most 1. Its k+1
    extreme points are the saturated staircases (k/j, ..., k/j, 0, ..., 0)
    for j = 1..k-1, the all-ones vector, and the origin.
    """
    if not 1 <= k <= n:
        raise ValueError(f"k={k} outside 1..{n}")
    points = []
    for j in range(1, k):
        p = np.zeros(n)
        p[:j] = k / j
        points.append(p)
    points.append(np.ones(n))
    points.append(np.zeros(n))
    return points


def ball_vertices(rows: list[np.ndarray], n: int) -> list[np.ndarray]:
    """Vertices of {y in ordered cone : r . y <= 1 for all rows r}.

    Works in staircase coordinates, where the ball is {lambda >= 0,
    B lambda <= 1}, and enumerates rays of the homogenization
    {(lambda, s) : lambda >= 0, s >= 0, B lambda <= s 1} by incremental
    double description with a combinatorial adjacency test. Rays with s > 0
    descale to vertices; a ray with s = 0 would be a recession direction and
    means the rows do not describe a norm ball.
    """
    if n > VERTEX_DIM_CAP:
        raise ValueError(f"vertex enumeration is capped at n={VERTEX_DIM_CAP}")
    d = n + 1
    # constraints a . x <= 0: nonnegativity first, then homogenized rows
    constraints = [-np.eye(d)[i] for i in range(d)]
    for r in rows:
        a = np.zeros(d)
        a[:n] = np.cumsum(r)
        a[n] = -1.0
        constraints.append(a)

    tol = 1e-9
    rays = [np.eye(d)[i] for i in range(d)]

    def tight_mask(ray: np.ndarray, upto: int) -> int:
        mask = 0
        for ci in range(upto):
            if abs(constraints[ci] @ ray) <= tol:
                mask |= 1 << ci
        return mask

    for ci in range(d, len(constraints)):
        a = constraints[ci]
        vals = [float(a @ r) for r in rays]
        keep = [r for r, v in zip(rays, vals) if v <= tol]
        inside = [(r, v) for r, v in zip(rays, vals) if v < -tol]
        outside = [(r, v) for r, v in zip(rays, vals) if v > tol]
        if outside and not inside and not keep:
            return []  # ball is empty; cannot happen for norm rows
        masks = [tight_mask(r, ci) for r in rays]
        pair_masks = {id(r): m for r, m in zip(rays, masks)}
        new_rays = []
        for rp, vp in outside:
            for rq, vq in inside:
                common = pair_masks[id(rp)] & pair_masks[id(rq)]
                adjacent = True
                for other, om in zip(rays, masks):
                    if other is rp or other is rq:
                        continue
                    if om & common == common:
                        adjacent = False
                        break
                if not adjacent:
                    continue
                ray = vp * rq - vq * rp
                norm = np.max(np.abs(ray))
                if norm > tol:
                    new_rays.append(ray / norm)
        rays = keep + new_rays

    vertices = []
    seen = set()
    for r in rays:
        s = r[n]
        if s <= tol * np.max(np.abs(r)):
            raise RuntimeError("unbounded ball: rows do not define a norm")
        lam = np.maximum(r[:n] / s, 0.0)
        y = np.cumsum(lam[::-1])[::-1]
        key = tuple(np.round(y, 9))
        if key not in seen:
            seen.add(key)
            vertices.append(y)
    return vertices


@lru_cache(maxsize=256)
def _primal_vertices_cached(spec: NormSpec, n: int) -> tuple[np.ndarray, ...]:
    return tuple(ball_vertices(spec_rows(spec, n), n))


def primal_vertices(spec: NormSpec, n: int) -> list[np.ndarray]:
    """Vertices of the unit ball of spec on the ordered cone in R^n."""
    return [v.copy() for v in _primal_vertices_cached(spec, n)]


def dual_spec(spec: NormSpec, n: int) -> SupOf:
    """The dual norm re-expressed as a supremum of weight norms.

    The dual of a polyhedral gauge norm at y is the maximum of (1/n) v . y*
    over the primal ball's ordered vertices v; each nonzero vertex therefore
    becomes a step weight of the dual's SupOf form.
    """
    weights = []
    for v in primal_vertices(spec, n):
        if np.max(v) <= 1e-12:
            continue
        clean = np.maximum(np.sort(v)[::-1], 0.0)
        weights.append(StepFn.from_uniform(clean.tolist()))
    if not weights:
        raise RuntimeError("norm ball has no nonzero vertices")
    return SupOf(tuple(weights))


def involution_check(spec: NormSpec, x) -> tuple[float, float]:
    """The norm of x and its double dual, which the duality involution equates.

    The dual ball's polyhedral description comes from the primal ball's
    vertices, so the double dual is computed by the same LP machinery.
    """
    v = np.atleast_1d(np.asarray(x, dtype=np.complex128))
    primal = norm_vec(spec, v)
    double_dual = dual_vec(dual_spec(spec, v.size), v)
    return primal, double_dual


def representation_check(spec: SupOf, T: np.ndarray) -> tuple[float, float]:
    """Norm of T versus its best weight-norm value over the dual ball.

    The right-hand side enumerates the vertices of the dual unit ball (on the
    ordered cone) and pairs each against the s-number profile of T; the
    maximum must reproduce the norm itself.
    """
    if not isinstance(spec, SupOf):
        raise UnsupportedSpecError("representation check expects a SupOf spec")
    n = T.shape[0]
    lhs = norm_mat(spec, T)
    dual_rows = [v / n for v in primal_vertices(spec, n) if np.max(v) > 1e-12]
    dual_verts = ball_vertices(dual_rows, n)
    s = linalg.s_numbers(T)
    rhs = max(float(w @ s) / n for w in dual_verts)
    return lhs, rhs


def holder_check(
    spec: NormSpec, S: np.ndarray, T: np.ndarray
) -> tuple[float, float]:
    """Trace norm of ST versus the product |||S||| |||T|||^#."""
    lhs = linalg.trace_norm(S @ T)
    rhs = norm_mat(spec, S) * dual_mat(spec, T)
    return lhs, rhs
