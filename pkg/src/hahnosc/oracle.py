"""Independent numerical ground truth for the closed-form eigensystems.

A from-scratch symmetric tridiagonal eigensolver (implicit QL sweeps with a
Wilkinson-style shift, eigenvectors accumulated through the plane
rotations).  It shares no series or polynomial code with the rest of the
package; that independence is the point.  Test-time use only, so clarity
beats speed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError, DegenerateError, DomainError
from .model import EigenSystem


@dataclass(frozen=True)
class SymTridiag:
    """Symmetric tridiagonal matrix stored as diagonal + off-diagonal."""

    diagonal: tuple[float, ...]
    offdiagonal: tuple[float, ...]

    def __post_init__(self):
        if len(self.offdiagonal) != max(len(self.diagonal) - 1, 0):
            raise DomainError("offdiagonal must be one entry shorter than diagonal")
        values = list(self.diagonal) + list(self.offdiagonal)
        if not all(math.isfinite(v) for v in values):
            raise DomainError("matrix entries must be finite")

    @property
    def dim(self) -> int:
        return len(self.diagonal)

    def matrix(self) -> np.ndarray:
        n = self.dim
        m = np.zeros((n, n))
        m[np.arange(n), np.arange(n)] = self.diagonal
        for i, c in enumerate(self.offdiagonal):
            m[i, i + 1] = m[i + 1, i] = c
        return m


def eigen_sym_tridiag(m: SymTridiag, tol: float = 1e-11,
                      max_sweeps: int = 50) -> EigenSystem:
    """Full eigendecomposition by implicit QL iteration.

    Eigenvalues come back ascending; the residual ||M v - eps v||_inf of
    every pair is verified against tol * ||M||_inf before returning.
    Deterministic for fixed input.  Raises ConvergenceError (with the
    offending index) if a sweep budget is exhausted or a residual fails.
    """
    n = m.dim
    d = np.array(m.diagonal, dtype=float)
    e = np.zeros(n)
    e[: n - 1] = m.offdiagonal
    z = np.eye(n)
    eps = np.finfo(float).eps

    for l in range(n):
        sweeps = 0
        while True:
            split = l
            while split < n - 1:
                scale = abs(d[split]) + abs(d[split + 1])
                if abs(e[split]) <= eps * scale:
                    break
                split += 1
            if split == l:
                break
            sweeps += 1
            if sweeps > max_sweeps:
                raise ConvergenceError(l)
            # shifted QL sweep over rows l..split
            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = math.hypot(g, 1.0)
            g = d[split] - d[l] + e[l] / (g + math.copysign(r, g))
            s = c = 1.0
            p = 0.0
            underflow = False
            for i in range(split - 1, l - 1, -1):
                f = s * e[i]
                b = c * e[i]
                r = math.hypot(f, g)
                e[i + 1] = r
                if r == 0.0:
                    d[i + 1] -= p
                    e[split] = 0.0
                    underflow = True
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b
                rotated = z[:, i + 1].copy()
                z[:, i + 1] = s * z[:, i] + c * rotated
                z[:, i] = c * z[:, i] - s * rotated
            if underflow:
                continue
            d[l] -= p
            e[l] = g
            e[split] = 0.0

    order = np.argsort(d, kind="stable")
    values = d[order]
    vectors = z[:, order]

    matrix = m.matrix()
    norm = float(np.max(np.sum(np.abs(matrix), axis=1))) if n else 0.0
    residual = matrix @ vectors - vectors * values[None, :]
    worst = np.max(np.abs(residual), axis=0) if n else np.zeros(0)
    for idx in range(n):
        if worst[idx] > tol * max(norm, 1.0):
            raise ConvergenceError(idx, f"residual {worst[idx]:.3e} exceeds budget")
    return EigenSystem(eigenvalues=values, vectors=vectors, field_kind="real")


def align_signs(reference: EigenSystem, candidate: EigenSystem,
                tol: float = 1e-8) -> tuple[EigenSystem, float]:
    """Flip candidate column signs to match the reference and report the
    max entrywise deviation afterwards.

    The sign of each column is fixed at the reference column's entry of
    largest magnitude.  Raises DegenerateError when two reference
    eigenvalues coincide within tol (per-column alignment is then
    ill-posed, and guessing would hide a real failure).
    """
    ref = reference.vectors
    cand = candidate.vectors
    if ref.shape != cand.shape:
        raise DomainError("eigenvector matrices must have matching shapes")
    values = np.asarray(reference.eigenvalues, dtype=float)
    scale = max(1.0, float(np.max(np.abs(values)))) if values.size else 1.0
    if values.size > 1:
        gaps = np.diff(np.sort(values))
        if np.min(gaps) <= tol * scale:
            raise DegenerateError(
                f"eigenvalue gap {np.min(gaps):.3e} below tolerance; "
                "sign alignment is ill-posed")
    aligned = cand.copy()
    for col in range(ref.shape[1]):
        anchor = int(np.argmax(np.abs(ref[:, col])))
        if ref[anchor, col] * aligned[anchor, col] < 0.0:
            aligned[:, col] = -aligned[:, col]
    deviation = float(np.max(np.abs(aligned - ref))) if ref.size else 0.0
    return (EigenSystem(eigenvalues=candidate.eigenvalues, vectors=aligned,
                        field_kind=candidate.field_kind), deviation)
