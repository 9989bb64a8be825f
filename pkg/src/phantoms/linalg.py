"""Exact linear algebra over a prime field F_p or over the rationals.

Matrices over F_p are int64 numpy arrays with entries in [0, p).  Matrices
over Q are numpy object arrays holding ``fractions.Fraction``.
"""
from __future__ import annotations

from fractions import Fraction

import numpy as np


class Field:
    """A prime field (``Field(101)``) or the rationals (``Field(None)``)."""

    def __init__(self, p: int | None = 101):
        if p is not None:
            if p < 2 or any(p % d == 0 for d in range(2, int(p ** 0.5) + 1)):
                raise ValueError(f"field characteristic {p} is not prime")
        self.p = p

    def __repr__(self):
        return f"Field({self.p})"

    def __eq__(self, other):
        return isinstance(other, Field) and other.p == self.p

    def __hash__(self):
        return hash(("Field", self.p))

    @property
    def name(self) -> str:
        return "Q" if self.p is None else str(self.p)

    @property
    def is_rational(self) -> bool:
        return self.p is None

    # scalars

    def scalar(self, c):
        if self.p is None:
            return Fraction(c)
        if isinstance(c, Fraction):
            return (c.numerator * pow(c.denominator, -1, self.p)) % self.p
        return int(c) % self.p

    def inverse(self, c):
        if self.p is None:
            return 1 / Fraction(c)
        return pow(int(c), -1, self.p)

    # construction

    def zeros(self, rows: int, cols: int) -> np.ndarray:
        if self.p is None:
            out = np.empty((rows, cols), dtype=object)
            out.fill(Fraction(0))
            return out
        return np.zeros((rows, cols), dtype=np.int64)

    def eye(self, n: int) -> np.ndarray:
        out = self.zeros(n, n)
        for i in range(n):
            out[i, i] = self.scalar(1)
        return out

    def array(self, rows) -> np.ndarray:
        rows = [list(r) for r in rows]
        n = len(rows)
        m = len(rows[0]) if n else 0
        out = self.zeros(n, m)
        for i, r in enumerate(rows):
            for j, c in enumerate(r):
                out[i, j] = self.scalar(c)
        return out

    def coerce(self, a: np.ndarray) -> np.ndarray:
        if self.p is None:
            out = self.zeros(*a.shape)
            for idx, c in np.ndenumerate(a):
                out[idx] = Fraction(c)
            return out
        return np.asarray(a, dtype=np.int64) % self.p

    def random(self, rng: np.random.Generator, shape) -> np.ndarray:
        if self.p is None:
            vals = rng.integers(-9, 10, size=shape)
            return self.coerce(vals)
        return rng.integers(0, self.p, size=shape).astype(np.int64)

    # arithmetic

    def matmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if a.shape[1] != b.shape[0]:
            raise ValueError(f"shape mismatch {a.shape} @ {b.shape}")
        if self.p is None:
            if a.shape[1] == 0:
                return self.zeros(a.shape[0], b.shape[1])
            return a.dot(b)
        if a.shape[1] == 0:
            return np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
        return (a @ b) % self.p

    def add(self, a, b):
        return a + b if self.p is None else (a + b) % self.p

    def sub(self, a, b):
        return a - b if self.p is None else (a - b) % self.p

    def scale(self, c, a):
        c = self.scalar(c)
        return a * c if self.p is None else (a * c) % self.p

    def is_zero(self, a: np.ndarray) -> bool:
        return not np.any(a != 0)

    # elimination

    def rref(self, a: np.ndarray):
        """Reduced row echelon form; returns (R, pivot columns)."""
        if self.p is None:
            return self._rref_q(a)
        p = self.p
        m = np.array(a, dtype=np.int64) % p
        rows, cols = m.shape
        pivots = []
        r = 0
        for c in range(cols):
            if r == rows:
                break
            nz = np.flatnonzero(m[r:, c])
            if nz.size == 0:
                continue
            i = r + nz[0]
            if i != r:
                m[[r, i]] = m[[i, r]]
            m[r] = (m[r] * pow(int(m[r, c]), -1, p)) % p
            col = m[:, c].copy()
            col[r] = 0
            hit = np.flatnonzero(col)
            if hit.size:
                m[hit] = (m[hit] - np.outer(col[hit], m[r])) % p
            pivots.append(c)
            r += 1
        return m[:r], pivots

    def _rref_q(self, a):
        m = self.coerce(a) if a.dtype != object else a.copy()
        rows, cols = m.shape
        pivots = []
        r = 0
        for c in range(cols):
            if r == rows:
                break
            i = next((k for k in range(r, rows) if m[k, c] != 0), None)
            if i is None:
                continue
            if i != r:
                m[[r, i]] = m[[i, r]]
            m[r] = m[r] / m[r, c]
            for k in range(rows):
                if k != r and m[k, c] != 0:
                    m[k] = m[k] - m[k, c] * m[r]
            pivots.append(c)
            r += 1
        return m[:r], pivots

    def rank(self, a: np.ndarray) -> int:
        if a.size == 0:
            return 0
        return len(self.rref(a)[1])

    def nullspace(self, a: np.ndarray) -> np.ndarray:
        """Columns form a basis of {x : a x = 0}."""
        cols = a.shape[1]
        if a.shape[0] == 0:
            return self.eye(cols)
        r, pivots = self.rref(a)
        free = [c for c in range(cols) if c not in set(pivots)]
        out = self.zeros(cols, len(free))
        for j, f in enumerate(free):
            out[f, j] = self.scalar(1)
            for i, pc in enumerate(pivots):
                out[pc, j] = self.scalar(0) - r[i, f] if self.p is None else (-r[i, f]) % self.p
        return out

    def column_basis(self, a: np.ndarray) -> np.ndarray:
        """Independent columns spanning the column space of ``a``."""
        if a.shape[1] == 0:
            return self.zeros(a.shape[0], 0)
        _, pivots = self.rref(a)
        return a[:, pivots]

    def solve(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """Some x with a x = b; raises ValueError when inconsistent."""
        n = a.shape[1]
        aug = np.concatenate([a, b], axis=1) if a.dtype == b.dtype else np.concatenate(
            [self.coerce(a), self.coerce(b)], axis=1)
        r, pivots = self.rref(aug)
        if any(pc >= n for pc in pivots):
            raise ValueError("inconsistent linear system")
        x = self.zeros(n, b.shape[1])
        for i, pc in enumerate(pivots):
            x[pc] = r[i, n:]
        return x

    def complement_basis(self, sub: np.ndarray, dim: int) -> list[int]:
        """Indices of standard basis vectors completing the columns of ``sub``."""
        aug = np.concatenate([sub, self.eye(dim)], axis=1) if sub.shape[1] else self.eye(dim)
        _, pivots = self.rref(aug)
        k = sub.shape[1]
        return [pc - k for pc in pivots if pc >= k]

    def is_invertible(self, a: np.ndarray) -> bool:
        return a.shape[0] == a.shape[1] and self.rank(a) == a.shape[0]


def kron(field: Field, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if field.p is None:
        out = field.zeros(a.shape[0] * b.shape[0], a.shape[1] * b.shape[1])
        for (i, j), c in np.ndenumerate(a):
            if c != 0:
                out[i * b.shape[0]:(i + 1) * b.shape[0], j * b.shape[1]:(j + 1) * b.shape[1]] = b * c
        return out
    return np.kron(a, b) % field.p
