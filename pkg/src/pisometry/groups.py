"""Small finite groups as explicit multiplication tables.

Element 0 is always the identity.  Cyclic groups and tiny symmetric groups
cover every finite-group experiment in the package; permutation-matrix
representations are derived from the stored permutation tuples.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "FiniteGroup",
    "cyclic_group",
    "symmetric_group",
    "natural_permutation_matrices",
    "regular_permutation_matrices",
]


@dataclass
class FiniteGroup:
    """A finite group given by its multiplication table.

    table[i, j] is the index of g_i * g_j; inverses are derived.  For
    symmetric groups the underlying permutation tuples are kept so the
    natural action is available.
    """

    name: str
    table: np.ndarray
    permutations: tuple[tuple[int, ...], ...] | None = None
    inverses: np.ndarray = field(init=False, repr=False)

    def __post_init__(self) -> None:
        t = np.asarray(self.table, dtype=np.int64)
        n = t.shape[0]
        if t.shape != (n, n):
            raise ValueError("multiplication table must be square")
        if not (np.all(t[0] == np.arange(n)) and np.all(t[:, 0] == np.arange(n))):
            raise ValueError("element 0 must be the identity")
        inv = np.full(n, -1, dtype=np.int64)
        for i in range(n):
            js = np.nonzero(t[i] == 0)[0]
            if len(js) != 1:
                raise ValueError(f"element {i} does not have a unique inverse")
            inv[i] = js[0]
        self.table = t
        self.inverses = inv

    @property
    def order(self) -> int:
        return self.table.shape[0]

    def mul(self, i: int, j: int) -> int:
        return int(self.table[i, j])

    def inv(self, i: int) -> int:
        return int(self.inverses[i])


def cyclic_group(n: int) -> FiniteGroup:
    """Z/n with elements 0..n-1 and addition mod n."""
    if n < 1:
        raise ValueError("order must be >= 1")
    idx = np.arange(n)
    return FiniteGroup(name=f"Z/{n}", table=(idx[:, None] + idx[None, :]) % n)


def symmetric_group(n: int) -> FiniteGroup:
    """S_n for small n (order capped at 24), elements in lexicographic order."""
    if not 1 <= n <= 4:
        raise ValueError("symmetric groups are provided for 1 <= n <= 4 only")
    perms = tuple(itertools.permutations(range(n)))
    index = {p: k for k, p in enumerate(perms)}
    m = len(perms)
    table = np.zeros((m, m), dtype=np.int64)
    for i, s in enumerate(perms):
        for j, t in enumerate(perms):
            table[i, j] = index[tuple(s[t[k]] for k in range(n))]  # composition s o t
    return FiniteGroup(name=f"S{n}", table=table, permutations=perms)


def natural_permutation_matrices(group: FiniteGroup) -> list[np.ndarray]:
    """n x n permutation matrices of the natural S_n action, P e_j = e_{s(j)}."""
    if group.permutations is None:
        raise ValueError(f"{group.name} carries no permutation action")
    mats = []
    for s in group.permutations:
        n = len(s)
        P = np.zeros((n, n))
        for j in range(n):
            P[s[j], j] = 1.0
        mats.append(P)
    return mats


def regular_permutation_matrices(group: FiniteGroup) -> list[np.ndarray]:
    """|G| x |G| left-regular representation, pi(g) e_h = e_{gh}."""
    n = group.order
    mats = []
    for g in range(n):
        P = np.zeros((n, n))
        for h in range(n):
            P[group.table[g, h], h] = 1.0
        mats.append(P)
    return mats
