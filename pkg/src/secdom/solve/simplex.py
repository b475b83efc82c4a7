"""Revised bounded-variable primal simplex.

Rows are turned into logical variables: ``A x - s = 0`` with
``row_lo <= s <= row_hi``, so every constraint sense is just a pair of
bounds and the all-logical basis ``-I`` is always available.  Phase 1
minimises the sum of bound violations of the basic variables, which also
repairs a warm-start basis after a branching bound change.

The basis inverse is a sparse LU factorization followed by an eta file of
at most ``refactor_every`` column replacements.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import sparse
from scipy.sparse.linalg import splu

from .. import kernels

__all__ = ["SimplexEngine", "SimplexError", "Basis", "LpResult",
           "OPTIMAL", "INFEASIBLE", "UNBOUNDED"]

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"

BASIC, AT_LO, AT_UP, FREE = 0, 1, 2, 3


class SimplexError(ArithmeticError):
    """Numerical breakdown or iteration limit."""


@dataclass(frozen=True)
class Basis:
    """Basic column per row (``int32`` bytes) and the status of every column."""

    head: bytes
    status: bytes

    @classmethod
    def capture(cls, head, status) -> "Basis":
        return cls(np.asarray(head, dtype=np.int32).tobytes(),
                   np.asarray(status, dtype=np.uint8).tobytes())


@dataclass
class LpResult:
    status: str
    objective: float
    x: np.ndarray | None
    iterations: int
    basis: Basis | None = None


class SimplexEngine:
    """Solves ``min c.x`` s.t. ``row_lo <= A x <= row_hi``, ``lb <= x <= ub``
    for varying bounds, keeping its factorization between calls."""

    def __init__(self, c, A, row_lo, row_hi, lb, ub, *, pivot_tol=1e-9, feas_tol=1e-7,
                 opt_tol=1e-9, harris_tol=1e-9, refactor_every=64, bland_after=5000,
                 max_iter=None):
        A = sparse.csr_matrix(A, dtype=float)
        self.m, self.n = A.shape
        m, n = self.m, self.n
        self.A = A
        self.AT = A.T.tocsr()
        self.full = sparse.hstack([A, -sparse.identity(m, format="csc")], format="csc")
        self.cost = np.concatenate([np.asarray(c, float), np.zeros(m)])
        self.lo0 = np.concatenate([np.asarray(lb, float), np.asarray(row_lo, float)])
        self.hi0 = np.concatenate([np.asarray(ub, float), np.asarray(row_hi, float)])
        self.pivot_tol = pivot_tol
        self.feas_tol = feas_tol
        self.opt_tol = opt_tol
        self.harris_tol = harris_tol
        self.refactor_every = refactor_every
        self.bland_after = bland_after
        self.max_iter = max_iter if max_iter is not None else 200 * (m + n) + 10_000
        self.eta_rows = np.zeros(refactor_every, dtype=np.int64)
        self.etas = np.zeros((refactor_every, m))
        self.total_iterations = 0
        self._reset_to_slack_basis()

    # -- basis bookkeeping ---------------------------------------------------

    def _reset_to_slack_basis(self):
        m, n = self.m, self.n
        self.head = np.arange(n, n + m, dtype=np.int64)
        self.status = np.full(n + m, AT_LO, dtype=np.int8)
        self.status[n:] = BASIC
        self.x = np.zeros(n + m)
        self._lu = None
        self.n_etas = 0

    def load_basis(self, basis: Basis):
        head = np.frombuffer(basis.head, dtype=np.int32).astype(np.int64)
        status = np.frombuffer(basis.status, dtype=np.uint8).astype(np.int8)
        if len(head) != self.m or len(status) != self.n + self.m:
            raise ValueError("basis does not match the model dimensions")
        if np.array_equal(head, self.head) and np.array_equal(status, self.status):
            return
        self.head = head
        self.status = status.copy()
        self._lu = None
        self.n_etas = 0

    def basis(self) -> Basis:
        return Basis.capture(self.head, self.status)

    def _factor(self):
        if self.m == 0:
            self._lu = None
            self.n_etas = 0
            return
        B = self.full[:, self.head].tocsc()
        try:
            self._lu = splu(B, permc_spec="COLAMD")
        except RuntimeError as exc:
            raise SimplexError(f"singular basis: {exc}") from None
        self.n_etas = 0

    def _ftran(self, v):
        v = self._lu.solve(v)
        if self.n_etas:
            v = kernels.eta_ftran(v, self.eta_rows, self.etas, self.n_etas)
        return v

    def _btran(self, w):
        if self.n_etas:
            w = kernels.eta_btran(np.array(w, dtype=float), self.eta_rows, self.etas,
                                  self.n_etas)
        return self._lu.solve(w, trans="T")

    def _column(self, q):
        col = np.zeros(self.m)
        if q < self.n:
            a = self.full
            start, end = a.indptr[q], a.indptr[q + 1]
            col[a.indices[start:end]] = a.data[start:end]
        else:
            col[q - self.n] = -1.0
        return col

    def _place_nonbasic(self, lo, hi):
        st = self.status
        nb = st != BASIC
        has_lo = np.isfinite(lo)
        has_hi = np.isfinite(hi)
        new = np.where(has_lo, AT_LO, np.where(has_hi, AT_UP, FREE)).astype(np.int8)
        keep_up = (st == AT_UP) & has_hi
        new = np.where(keep_up, AT_UP, new)
        st[nb] = new[nb]
        x = self.x
        x[nb] = 0.0
        at_lo = nb & (st == AT_LO)
        at_up = nb & (st == AT_UP)
        x[at_lo] = lo[at_lo]
        x[at_up] = hi[at_up]

    def _recompute_basics(self):
        if self.m == 0:
            return
        xn = self.x.copy()
        xn[self.head] = 0.0
        rhs = -(self.full @ xn)
        self.x[self.head] = self._ftran(rhs)

    # -- main loop -----------------------------------------------------------

    def solve(self, lb=None, ub=None, basis: Basis | None = None,
              bland: bool = False) -> LpResult:
        """Optimise with structural bounds ``lb``/``ub`` (defaults: the model's).

        Starts from ``basis`` when given, else from the engine's current one.
        """
        lo = self.lo0.copy()
        hi = self.hi0.copy()
        if lb is not None:
            lo[: self.n] = lb
        if ub is not None:
            hi[: self.n] = ub
        if np.any(lo > hi + self.feas_tol):
            return LpResult(INFEASIBLE, math.inf, None, 0, None)
        if basis is not None:
            self.load_basis(basis)
        if self._lu is None and self.m:
            self._factor()
        self._place_nonbasic(lo, hi)
        self._recompute_basics()
        iters = 0
        stalled = 0
        use_bland = bland
        while True:
            status, info = self._iterate(lo, hi, use_bland)
            if status is None:
                iters += 1
                self.total_iterations += 1
                if info:
                    stalled = 0
                else:
                    stalled += 1
                    if stalled >= self.bland_after:
                        use_bland = True
                if iters > self.max_iter:
                    raise SimplexError(f"iteration limit {self.max_iter} reached")
                continue
            if status == OPTIMAL and self.n_etas:
                # confirm on a fresh factorization before declaring optimality
                self._factor()
                self._recompute_basics()
                if self._infeasible_rows(lo, hi).any():
                    continue
            if status == OPTIMAL:
                x = self.x[: self.n].copy()
                return LpResult(OPTIMAL, float(self.cost[: self.n] @ x), x, iters,
                                self.basis())
            return LpResult(status, math.inf if status == INFEASIBLE else -math.inf,
                            None, iters, self.basis())

    def _infeasible_rows(self, lo, hi):
        xb = self.x[self.head]
        tol = self.feas_tol
        return (xb < lo[self.head] - tol) | (xb > hi[self.head] + tol)

    def _iterate(self, lo, hi, bland):
        """One simplex iteration.  Returns ``(None, progressed)`` after a step,
        or ``(status, None)`` when the loop should stop."""
        n, m = self.n, self.m
        head = self.head
        x = self.x
        st = self.status
        tol = self.feas_tol
        xb = x[head]
        lob = lo[head]
        hib = hi[head]
        below = xb < lob - tol
        above = xb > hib + tol
        phase1 = bool(below.any() or above.any())
        if phase1:
            cb = above.astype(float) - below.astype(float)
        else:
            cb = self.cost[head]
        y = self._btran(cb) if m else np.zeros(0)
        d = np.empty(n + m)
        d[:n] = -(self.AT @ y) if phase1 else self.cost[:n] - self.AT @ y
        d[n:] = y
        otol = self.opt_tol
        movable = (st != BASIC) & (lo < hi)
        inc = movable & (((st == AT_LO) | (st == FREE)) & (d < -otol))
        dec = movable & (((st == AT_UP) | (st == FREE)) & (d > otol))
        eligible = inc | dec
        if not eligible.any():
            return (INFEASIBLE if phase1 else OPTIMAL), None
        if bland:
            q = int(np.flatnonzero(eligible)[0])
        else:
            score = np.where(eligible, np.abs(d), -1.0)
            q = int(np.argmax(score))
        direction = 1.0 if inc[q] else -1.0

        alpha = self._ftran(self._column(q)) if m else np.zeros(0)
        delta = -direction * alpha
        ptol = self.pivot_tol
        moving = np.abs(alpha) > ptol
        down = moving & (delta < 0)
        up = moving & (delta > 0)
        # bound each basic variable heads for; phase 1 stops at the first breakpoint
        target = np.full(m, np.nan)
        if phase1:
            target[down & above] = hib[down & above]
            target[up & below] = lob[up & below]
            ok_down = down & ~above & ~below
            ok_up = up & ~below & ~above
        else:
            ok_down, ok_up = down, up
        target[ok_down] = lob[ok_down]
        target[ok_up] = hib[ok_up]
        limited = moving & np.isfinite(target)
        q_range = hi[q] - lo[q]

        if not limited.any():
            if math.isfinite(q_range):
                self._flip(q, direction, q_range, delta, lo, hi)
                return None, q_range > 0
            if phase1:
                raise SimplexError("phase 1 direction without a breakpoint")
            return UNBOUNDED, None

        rows = np.flatnonzero(limited)
        gap = target[rows] - xb[rows]
        rate = delta[rows]
        ratio = np.maximum(gap / rate, 0.0)
        if bland:
            theta = ratio.min()
            ties = rows[ratio <= theta + 1e-12]
            r = int(min(ties, key=lambda t: head[t]))
        else:
            relaxed = np.maximum((gap + np.sign(rate) * self.harris_tol) / rate, 0.0)
            theta_max = relaxed.min()
            cand = ratio <= theta_max
            pick = np.argmax(np.where(cand, np.abs(alpha[rows]), -1.0))
            r = int(rows[pick])
            theta = ratio[pick]
        if math.isfinite(q_range) and q_range <= theta:
            self._flip(q, direction, q_range, delta, lo, hi)
            return None, q_range > 0
        if abs(alpha[r]) < 1e-10:
            raise SimplexError(f"pivot {alpha[r]:.3g} below 1e-10")

        x[q] += direction * theta
        x[head] = xb + delta * theta
        p = int(head[r])
        bound = target[r]
        x[p] = bound
        st[p] = AT_LO if bound == lo[p] else AT_UP
        if lo[p] == hi[p]:
            st[p] = AT_LO
        head[r] = q
        st[q] = BASIC
        if self.n_etas >= self.refactor_every:
            self._factor()
            self._recompute_basics()
        else:
            self.eta_rows[self.n_etas] = r
            self.etas[self.n_etas] = alpha
            self.n_etas += 1
        return None, theta > 1e-12

    def _flip(self, q, direction, q_range, delta, lo, hi):
        self.x[q] = hi[q] if direction > 0 else lo[q]
        self.status[q] = AT_UP if direction > 0 else AT_LO
        self.x[self.head] += delta * q_range
