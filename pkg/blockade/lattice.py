"""Exact integer and rational linear algebra.

Matrices are numpy arrays of ``dtype=object`` holding Python ints, so no
entry ever overflows or rounds. Rational results are returned as tuples
of ``fractions.Fraction``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import NamedTuple, Sequence

import numpy as np
import sympy


class SmithForm(NamedTuple):
    """Result of ``smith_normal_form``: ``U @ A @ V == D``."""
    U: np.ndarray
    D: np.ndarray
    V: np.ndarray

    @property
    def diagonal(self) -> tuple[int, ...]:
        n = min(self.D.shape)
        return tuple(int(self.D[i, i]) for i in range(n))


def int_matrix(rows: Sequence[Sequence[int]]) -> np.ndarray:
    """Build an object-dtype integer matrix."""
    return np.array([[int(x) for x in row] for row in rows], dtype=object)


def _pick_pivot(M: np.ndarray, t: int) -> tuple[int, int] | None:
    # Smallest absolute value, ties broken row-major
    best = None
    best_abs = 0
    n, m = M.shape
    for i in range(t, n):
        for j in range(t, m):
            v = M[i, j]
            if v != 0 and (best is None or abs(v) < best_abs):
                best = (i, j)
                best_abs = abs(v)
    return best


def smith_normal_form(A: np.ndarray) -> SmithForm:
    """Smith normal form over the integers with deterministic pivoting.

    Args:
        A: integer matrix (any shape).

    Returns:
        SmithForm (U, D, V) with U, V unimodular, D diagonal with
        nonnegative entries, each dividing the next, and U @ A @ V == D.
    """
    M = np.array(A, dtype=object)
    n, m = M.shape
    U = np.eye(n, dtype=object)
    V = np.eye(m, dtype=object)
    for i in range(n):
        for j in range(n):
            U[i, j] = int(U[i, j])
    for i in range(m):
        for j in range(m):
            V[i, j] = int(V[i, j])

    t = 0
    while t < min(n, m):
        pivot = _pick_pivot(M, t)
        if pivot is None:
            break
        pi, pj = pivot
        if pi != t:
            M[[t, pi]] = M[[pi, t]]
            U[[t, pi]] = U[[pi, t]]
        if pj != t:
            M[:, [t, pj]] = M[:, [pj, t]]
            V[:, [t, pj]] = V[:, [pj, t]]

        clean = True
        p = M[t, t]
        for i in range(t + 1, n):
            q = M[i, t] // p
            if q:
                M[i] = M[i] - q * M[t]
                U[i] = U[i] - q * U[t]
            if M[i, t] != 0:
                clean = False
        for j in range(t + 1, m):
            q = M[t, j] // p
            if q:
                M[:, j] = M[:, j] - q * M[:, t]
                V[:, j] = V[:, j] - q * V[:, t]
            if M[t, j] != 0:
                clean = False
        if not clean:
            # A nonzero remainder smaller than the pivot is left; re-pivot
            continue

        offender = None
        for i in range(t + 1, n):
            for j in range(t + 1, m):
                if M[i, j] % p != 0:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            M[t] = M[t] + M[offender]
            U[t] = U[t] + U[offender]
            continue

        if p < 0:
            M[t] = -M[t]
            U[t] = -U[t]
        t += 1

    return SmithForm(U=U, D=M, V=V)


def determinant(A: np.ndarray) -> int:
    """Exact integer determinant."""
    return int(sympy.Matrix(A.tolist()).det())


def rational_inverse(A: np.ndarray) -> tuple[tuple[Fraction, ...], ...]:
    """Exact inverse of a nonsingular integer matrix, as Fraction rows."""
    inv = sympy.Matrix(A.tolist()).inv()
    rows = []
    for i in range(inv.rows):
        row = []
        for j in range(inv.cols):
            entry = sympy.Rational(inv[i, j])
            row.append(Fraction(int(entry.p), int(entry.q)))
        rows.append(tuple(row))
    return tuple(rows)


def mat_vec(rows: Sequence[Sequence], vec: Sequence) -> tuple:
    """Matrix-vector product over whatever exact number type is given."""
    return tuple(sum((a * b for a, b in zip(row, vec)), 0) for row in rows)
