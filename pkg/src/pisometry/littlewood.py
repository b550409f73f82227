"""Littlewood T_1 norms by linear programming.

A finitely supported real f on a group induces the kernel F(s,t) = f(s^-1 t)
over a finite index set.  Its T_1 norm is the least c_1 + c_2 over splittings
F = f_1 + f_2 with every row abs-sum of f_1 at most c_1 and every column
abs-sum of f_2 at most c_2; after the usual positive/negative variable split
this is a plain LP.  On a full finite group the optimum equals ||f||_1; on a
truncated free-group ball it is a certified lower bound for the group norm,
while any explicit decomposition gives an upper bound.

Functions are kept real-valued so the LP stays exact; a complex f can be
handled by solving real and imaginary parts separately and quoting the larger
value as a lower bound (within sqrt(2) of the complex norm).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import IO, Mapping

import numpy as np
import scipy.sparse
from scipy.optimize import linprog

from .errors import InvalidCertificateError, NumericError
from .freegroup import CayleyBall, Word, word_inverse, word_mul
from .groups import FiniteGroup

__all__ = [
    "GroupIndexSet",
    "FiniteGroupIndexSet",
    "BallIndexSet",
    "LittlewoodInstance",
    "T1Result",
    "group_index_set",
    "ball_index_set",
    "build_instance",
    "t1_norm",
    "verify_decomposition",
    "lq_t1_ratio",
    "result_to_text",
]

LP_VARIABLE_CAP = 2 * 10**5


class GroupIndexSet:
    """Ordered elements with an s^-1 t oracle into the ambient group."""

    elements: list
    labels: list[str]

    def product_inverse(self, s, t):
        raise NotImplementedError

    def __len__(self) -> int:
        return len(self.elements)


class FiniteGroupIndexSet(GroupIndexSet):
    def __init__(self, group: FiniteGroup):
        self.group = group
        self.elements = list(range(group.order))
        self.labels = [f"g{i}" for i in self.elements]

    def product_inverse(self, s: int, t: int) -> int:
        return self.group.mul(self.group.inv(s), t)


class BallIndexSet(GroupIndexSet):
    """Words of a Cayley ball; s^-1 t is a reduced word of length <= 2n."""

    def __init__(self, ball: CayleyBall):
        self.ball = ball
        self.elements = list(ball.words)
        self.labels = ["e" if not w else "_".join(str(g) for g in w) for w in ball.words]

    def product_inverse(self, s: Word, t: Word) -> Word:
        return word_mul(word_inverse(s), t)


def group_index_set(group: FiniteGroup) -> FiniteGroupIndexSet:
    return FiniteGroupIndexSet(group)


def ball_index_set(ball: CayleyBall) -> BallIndexSet:
    return BallIndexSet(ball)


@dataclass
class LittlewoodInstance:
    """The kernel F(s,t) = f(s^-1 t) over an index set, plus f itself."""

    index_set: GroupIndexSet
    f: dict
    F: np.ndarray


def build_instance(f: Mapping, index_set: GroupIndexSet) -> LittlewoodInstance:
    """Assemble F(s,t) = f(s^-1 t); unsupported elements contribute zero."""
    fd = {k: float(v) for k, v in f.items()}
    if not all(np.isfinite(v) for v in fd.values()):
        raise ValueError("function values must be finite reals")
    m = len(index_set)
    F = np.zeros((m, m))
    for i, s in enumerate(index_set.elements):
        for j, t in enumerate(index_set.elements):
            F[i, j] = fd.get(index_set.product_inverse(s, t), 0.0)
    return LittlewoodInstance(index_set=index_set, f=fd, F=F)


@dataclass
class T1Result:
    """LP outcome: value = c1 + c2 with the certifying decomposition."""

    value: float
    f1: np.ndarray
    f2: np.ndarray
    c1: float
    c2: float
    status: str


def _lp_matrices(F: np.ndarray):
    m, mt = F.shape
    ncells = m * mt
    nv = 4 * ncells + 2
    cost = np.zeros(nv)
    cost[-2:] = 1.0

    ii = np.arange(ncells)
    rows = np.concatenate([ii, ii, ii, ii])
    cols = np.concatenate([ii, ii + ncells, ii + 2 * ncells, ii + 3 * ncells])
    vals = np.concatenate([np.ones(ncells), -np.ones(ncells),
                           np.ones(ncells), -np.ones(ncells)])
    A_eq = scipy.sparse.csr_matrix((vals, (rows, cols)), shape=(ncells, nv))
    b_eq = F.ravel()

    rr: list[int] = []
    cc: list[int] = []
    vv: list[float] = []
    for s in range(m):
        cells = s * mt + np.arange(mt)
        rr.extend([s] * (2 * mt + 1))
        cc.extend(cells)
        cc.extend(cells + ncells)
        cc.append(4 * ncells)
        vv.extend([1.0] * (2 * mt) + [-1.0])
    for t in range(mt):
        cells = np.arange(m) * mt + t
        rr.extend([m + t] * (2 * m + 1))
        cc.extend(cells + 2 * ncells)
        cc.extend(cells + 3 * ncells)
        cc.append(4 * ncells + 1)
        vv.extend([1.0] * (2 * m) + [-1.0])
    A_ub = scipy.sparse.csr_matrix((vv, (rr, cc)), shape=(m + mt, nv))
    return cost, A_eq, b_eq, A_ub, np.zeros(m + mt)


def t1_norm(instance: LittlewoodInstance, tol: float = 1e-9) -> T1Result:
    """Solve the decomposition LP to optimality.

    minimize c1 + c2  s.t.  u1 - v1 + u2 - v2 = F,  u, v >= 0,
    sum_t (u1+v1)(s,t) <= c1,  sum_s (u2+v2)(s,t) <= c2.

    The HiGHS backend is deterministic for a fixed instance, so repeated
    solves reproduce byte-identical reports.
    """
    F = instance.F
    m, mt = F.shape
    ncells = m * mt
    if 4 * ncells + 2 > LP_VARIABLE_CAP:
        raise ValueError(f"LP would need {4 * ncells + 2} variables, "
                         f"cap is {LP_VARIABLE_CAP}")
    cost, A_eq, b_eq, A_ub, b_ub = _lp_matrices(F)
    res = linprog(cost, A_ub=A_ub, b_ub=b_ub, A_eq=A_eq, b_eq=b_eq,
                  bounds=(0, None), method="highs",
                  options={"presolve": True, "dual_feasibility_tolerance": tol,
                           "primal_feasibility_tolerance": tol})
    if res.status == 2:
        return T1Result(value=float("nan"), f1=np.zeros_like(F), f2=np.zeros_like(F),
                        c1=float("nan"), c2=float("nan"), status="infeasible")
    if res.status == 1:
        status = "iteration-limit"
    elif res.status == 0:
        status = "optimal"
    else:
        raise NumericError(f"LP solver failed: {res.message}")

    x = res.x
    u1 = x[:ncells].reshape(m, mt)
    v1 = x[ncells:2 * ncells].reshape(m, mt)
    u2 = x[2 * ncells:3 * ncells].reshape(m, mt)
    v2 = x[3 * ncells:4 * ncells].reshape(m, mt)
    c1, c2 = float(x[-2]), float(x[-1])
    f1 = u1 - v1
    f2 = u2 - v2
    if np.abs(f1 + f2 - F).max() > 1e-8:
        raise NumericError("LP solution does not reproduce the kernel to 1e-8")
    if np.abs(f1).sum(axis=1).max() > c1 + 1e-8 or np.abs(f2).sum(axis=0).max() > c2 + 1e-8:
        raise NumericError("LP solution violates its own sup constraints")
    return T1Result(value=c1 + c2, f1=f1, f2=f2, c1=c1, c2=c2, status=status)


def verify_decomposition(instance: LittlewoodInstance, f1: np.ndarray,
                         f2: np.ndarray, tol: float = 1e-8) -> float:
    """Cost of an explicit decomposition: a certified upper bound.

    Raises InvalidCertificateError when f1 + f2 fails to reproduce F.
    """
    f1 = np.asarray(f1, dtype=float)
    f2 = np.asarray(f2, dtype=float)
    if f1.shape != instance.F.shape or f2.shape != instance.F.shape:
        raise ValueError("decomposition shapes do not match the instance")
    gap = np.abs(f1 + f2 - instance.F).max()
    if gap > tol:
        raise InvalidCertificateError(f"f1 + f2 misses F by {gap:.3e} (tol {tol:.1e})")
    return float(np.abs(f1).sum(axis=1).max() + np.abs(f2).sum(axis=0).max())


def lq_t1_ratio(f: Mapping, q: float, t1: float) -> float:
    """(sum |f|^q)^(1/q) / t1, the embedding-constant probe for T_1 into l^q."""
    if not 1.0 <= q < float("inf"):
        raise ValueError("q must lie in [1, inf)")
    vals = np.array([float(v) for v in f.values()])
    lq = float((np.abs(vals) ** q).sum() ** (1.0 / q)) if len(vals) else 0.0
    if t1 <= 0.0:
        if lq == 0.0:
            raise ValueError("ratio undefined for the zero function")
        raise ValueError("t1 = 0 with f != 0 contradicts the norm axioms")
    return lq / t1


def result_to_text(instance: LittlewoodInstance, result: T1Result, fh: IO[str]) -> None:
    """Structured text dump: elements, support of f, LP value and status."""
    idx = instance.index_set
    fh.write(f"elements {len(idx)}\n")
    for lab in idx.labels:
        fh.write(lab + "\n")
    support = [(k, v) for k, v in instance.f.items() if v != 0.0]
    label_of = {e: lab for e, lab in zip(idx.elements, idx.labels)}
    fh.write(f"support {len(support)}\n")
    for k, v in support:
        lab = label_of.get(k)
        if lab is None:
            lab = "e" if k == () else (
                "_".join(str(g) for g in k) if isinstance(k, tuple) else f"g{k}")
        fh.write(f"{lab} {v:.17g}\n")
    fh.write(f"value {result.value:.17g}\n")
    fh.write(f"c1 {result.c1:.17g}\n")
    fh.write(f"c2 {result.c2:.17g}\n")
    fh.write(f"status {result.status}\n")
