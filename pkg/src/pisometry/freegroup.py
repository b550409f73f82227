"""Reduced words of the free group F_r, truncated Cayley balls, and the
symmetrized generator average mu_1 = (1/2r) sum_i (g_i + g_i^{-1}).

Words are tuples of signed generator indices in {+-1, ..., +-r}; a word is
reduced when no letter is followed by its inverse.  Balls enumerate all
reduced words up to a radius in length-then-lexicographic order with letter
order 1 < -1 < 2 < -2 < ..., which keeps every downstream matrix and report
bitwise reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import IO, Iterable, Sequence

import numpy as np
import scipy.sparse

__all__ = [
    "Word",
    "CayleyBall",
    "GeneratorFamily",
    "reduce_word",
    "word_inverse",
    "word_mul",
    "signed_letters",
    "ball",
    "ball_word_count",
    "mu1_truncated",
    "mu1_truncated_sparse",
    "mu1_of_representation",
    "random_lp_isometry",
    "phi_alpha",
    "stacking_map",
    "costacking_map",
]

Word = tuple[int, ...]

DEFAULT_BALL_CAP = 10**6


def signed_letters(r: int) -> list[int]:
    """Signed generators in canonical order: 1, -1, 2, -2, ..., r, -r."""
    return [s * i for i in range(1, r + 1) for s in (1, -1)]


def reduce_word(letters: Iterable[int]) -> Word:
    """Free reduction: cancel adjacent inverse pairs."""
    out: list[int] = []
    for g in letters:
        if out and out[-1] == -g:
            out.pop()
        else:
            out.append(g)
    return tuple(out)


def word_inverse(w: Word) -> Word:
    return tuple(-g for g in reversed(w))


def word_mul(a: Word, b: Word) -> Word:
    return reduce_word(tuple(a) + tuple(b))


def ball_word_count(r: int, n: int) -> int:
    """Closed-form number of reduced words of length <= n."""
    if r == 1:
        return 2 * n + 1
    return 1 + 2 * r * ((2 * r - 1) ** n - 1) // (2 * r - 2)


@dataclass
class CayleyBall:
    """All reduced words of F_r up to a radius, with index and adjacency maps.

    adjacency[i, k] is the index of words[i] * letter_k when the product
    stays in the ball, else -1.  Both endpoints of an edge lie in the ball,
    so the relation is automatically symmetric under the inverse letter.
    """

    r: int
    radius: int
    words: list[Word]
    index: dict[Word, int] = field(repr=False)
    adjacency: np.ndarray = field(repr=False)

    def __len__(self) -> int:
        return len(self.words)

    @property
    def letters(self) -> list[int]:
        return signed_letters(self.r)

    def to_text(self, fh: IO[str]) -> None:
        """Serialize as 'r n count' header plus one word per line (signed ints)."""
        fh.write(f"{self.r} {self.radius} {len(self.words)}\n")
        for w in self.words:
            fh.write(" ".join(str(g) for g in w) + "\n")

    @classmethod
    def from_text(cls, fh: IO[str]) -> "CayleyBall":
        header = fh.readline().split()
        if len(header) != 3:
            raise ValueError("malformed ball header, expected 'r n count'")
        r, radius, count = (int(x) for x in header)
        words = []
        for _ in range(count):
            line = fh.readline()
            if line == "":
                raise ValueError("truncated ball serialization")
            words.append(tuple(int(g) for g in line.split()))
        b = ball(r, radius)
        if b.words != words:
            raise ValueError("serialized word list does not match a canonical ball")
        return b


def ball(r: int, n: int, cap: int = DEFAULT_BALL_CAP) -> CayleyBall:
    """Enumerate the radius-n ball of F_r in length-then-lexicographic order."""
    if r < 1 or n < 0:
        raise ValueError(f"need r >= 1 and n >= 0, got r={r}, n={n}")
    count = ball_word_count(r, n)
    if count > cap:
        raise ValueError(f"ball would hold {count} words, exceeding the cap {cap}")

    letters = signed_letters(r)
    words: list[Word] = [()]
    index: dict[Word, int] = {(): 0}
    frontier: list[Word] = [()]
    for _ in range(n):
        nxt: list[Word] = []
        for w in frontier:
            for g in letters:
                if w and w[-1] == -g:
                    continue
                w2 = w + (g,)
                index[w2] = len(words)
                words.append(w2)
                nxt.append(w2)
        frontier = nxt
    assert len(words) == count

    adjacency = np.full((count, len(letters)), -1, dtype=np.int64)
    for i, w in enumerate(words):
        for k, g in enumerate(letters):
            w2 = w[:-1] if (w and w[-1] == -g) else w + (g,)
            j = index.get(w2)
            if j is not None:
                adjacency[i, k] = j
    return CayleyBall(r=r, radius=n, words=words, index=index, adjacency=adjacency)


def _adjacency_coo(b: CayleyBall) -> tuple[np.ndarray, np.ndarray]:
    rows, cols = np.nonzero(b.adjacency >= 0)
    return rows, b.adjacency[rows, cols]


def mu1_truncated(b: CayleyBall) -> np.ndarray:
    """Dense (1/2r) * adjacency of the ball; edges leaving the ball are dropped.

    The Dirichlet truncation keeps the matrix symmetric with entries in
    {0, 1/2r} and makes its spectral radius monotone in the radius.
    """
    n = len(b)
    out = np.zeros((n, n))
    rows, cols = _adjacency_coo(b)
    out[rows, cols] = 1.0 / (2 * b.r)
    return out


def mu1_truncated_sparse(b: CayleyBall) -> scipy.sparse.csr_matrix:
    """CSR version of mu1_truncated for large balls."""
    rows, cols = _adjacency_coo(b)
    data = np.full(len(rows), 1.0 / (2 * b.r))
    return scipy.sparse.csr_matrix((data, (rows, cols)), shape=(len(b), len(b)))


@dataclass
class GeneratorFamily:
    """r invertible matrices of one dimension, acting as free-group generators.

    Inverses are computed at construction and required to reproduce the
    identity to 1e-12 max-abs residual (one Newton polish step is applied if
    the first solve falls short).
    """

    matrices: list[np.ndarray]
    inverses: list[np.ndarray] = field(default=None, repr=False)  # type: ignore[assignment]

    def __post_init__(self) -> None:
        if not self.matrices:
            raise ValueError("family needs at least one generator")
        mats = [np.asarray(g, dtype=complex) for g in self.matrices]
        d = mats[0].shape[0]
        for g in mats:
            if g.shape != (d, d):
                raise ValueError("all generators must be square of one dimension")
        eye = np.eye(d)
        invs = []
        for k, g in enumerate(mats):
            try:
                gi = np.linalg.inv(g)
            except np.linalg.LinAlgError as exc:
                raise ValueError(f"generator {k} is singular") from exc
            if np.abs(g @ gi - eye).max() > 1e-12:
                gi = gi @ (2.0 * eye - g @ gi)  # Newton polish
            if np.abs(g @ gi - eye).max() > 1e-12:
                raise ValueError(f"generator {k} is too ill-conditioned to invert reliably")
            invs.append(gi)
        self.matrices = mats
        self.inverses = invs

    @property
    def r(self) -> int:
        return len(self.matrices)

    @property
    def dim(self) -> int:
        return self.matrices[0].shape[0]


def mu1_of_representation(fam: GeneratorFamily) -> np.ndarray:
    """(1/2r) sum_i (G_i + G_i^{-1})."""
    acc = np.zeros((fam.dim, fam.dim), dtype=complex)
    for g, gi in zip(fam.matrices, fam.inverses):
        acc += g + gi
    return acc / (2 * fam.r)


def phi_alpha(fam: GeneratorFamily, alpha: float) -> np.ndarray:
    """2r*I + i*alpha * sum_i (G_i + G_i^{-1}), the rescaled Moebius image of mu_1."""
    acc = np.zeros((fam.dim, fam.dim), dtype=complex)
    for g, gi in zip(fam.matrices, fam.inverses):
        acc += g + gi
    return 2 * fam.r * np.eye(fam.dim) + 1j * alpha * acc


def random_lp_isometry(d: int, seed: int) -> np.ndarray:
    """A random surjective isometry of l^p_d for p != 2.

    By the Banach-Lamperti classification these are exactly the products of a
    unimodular diagonal and a permutation, so sampling D*P with uniform
    permutation and independent uniform phases covers the whole isometry
    group.  Deterministic per seed (NumPy default_rng, PCG64).
    """
    if d < 1:
        raise ValueError("dimension must be >= 1")
    rng = np.random.default_rng(seed)
    perm = rng.permutation(d)
    phases = np.exp(2j * np.pi * rng.random(d))
    m = np.zeros((d, d), dtype=complex)
    m[np.arange(d), perm] = phases
    return m


def stacking_map(fam: GeneratorFamily) -> np.ndarray:
    """The (2rd) x d map v -> (v, G_1^{-1} v, ..., v, G_r^{-1} v).

    For isometric families its p->p norm is exactly (2r)^(1/p).
    """
    eye = np.eye(fam.dim)
    blocks: list[np.ndarray] = []
    for gi in fam.inverses:
        blocks.append(eye)
        blocks.append(gi)
    return np.vstack(blocks)


def costacking_map(fam: GeneratorFamily) -> np.ndarray:
    """The d x (2rd) map (v_1, ..., v_2r) -> v_1 + G_1 v_2 + v_3 + G_2 v_4 + ...

    Dual to stacking_map; for isometric families its p->p norm is at most
    (2r)^((p-1)/p).  Composing costack @ blockdiag(A(alpha) (x) I) @ stack
    reproduces phi_alpha exactly.
    """
    eye = np.eye(fam.dim)
    blocks: list[np.ndarray] = []
    for g in fam.matrices:
        blocks.append(eye)
        blocks.append(g)
    return np.hstack(blocks)
