"""The discrete Hahn-Fourier transform matrix and its closed-form kernel.

The unitary, symmetric matrix F mapping position wavefunctions to momentum
wavefunctions is built by three independent routes: the eigenvector product
U^T V, the entrywise alternating bilinear sums over orthonormal Hahn
functions, and the closed terminating 4F3 (Racah) form of those sums.  The
large-j limit of F is the Bessel-type kernel of the generalized Fourier
transform.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import specfun
from .errors import DomainError
from .model import ModelParams, build_U, build_V, j_phase
from .specfun import HahnParams

SQRT2 = math.sqrt(2.0)


def route_tolerance(j: int) -> float:
    """Tolerance ladder for cross-route agreement; the alternating sums lose
    digits as j grows."""
    if j <= 10:
        return 1e-10
    if j <= 30:
        return 1e-8
    return 1e-6


@dataclass(frozen=True)
class HahnFourierMatrix:
    """Complex symmetric unitary (2j+1) x (2j+1) matrix with F^4 = I."""

    entries: np.ndarray
    route: str
    params: ModelParams

    @property
    def dim(self) -> int:
        return self.entries.shape[0]


# ---------------------------------------------------------------------------
# The alternating dual-Hahn kernel S
# ---------------------------------------------------------------------------

def _S_direct_terms(k: int, l: int, alpha: float, j: int) -> np.ndarray:
    if not (0 <= k <= j and 0 <= l <= j):
        raise DomainError(f"k and l must lie in 0..{j}")
    p = HahnParams(alpha, alpha, j)
    table = specfun.hahn_Q_table(p, max_degree=max(k, l))
    w = np.array([specfun.hahn_weight(n, p) for n in range(j + 1)])
    signs = (-1.0) ** np.arange(j + 1)
    return signs * w * table[k] * table[l]


def S_direct(k: int, l: int, alpha: float, j: int) -> float:
    """Alternating bilinear sum sum_n (-1)^n w(n) Q_k(n) Q_l(n) over the
    symmetric Hahn family on 0..j."""
    return float(np.sum(_S_direct_terms(k, l, alpha, j)))


def S_direct_with_scale(k: int, l: int, alpha: float, j: int) -> tuple[float, float]:
    """The sum together with its magnitude scale sum_n |terms| (for
    parity-zero testing)."""
    terms = _S_direct_terms(k, l, alpha, j)
    return float(np.sum(terms)), float(np.sum(np.abs(terms)))


def S_closed(k: int, l: int, alpha: float, j: int) -> float:
    """Closed form of the alternating kernel: zero when k+l+j is odd, else a
    prefactor times a terminating balanced 4F3(1) chosen by the parities of
    (k, l, j); the (odd k, even l) case reuses the mixed form with the two
    degree indices exchanged."""
    if not (0 <= k <= j and 0 <= l <= j):
        raise DomainError(f"k and l must lie in 0..{j}")
    if (k + l + j) % 2 == 1:
        return 0.0
    if j % 2 == 0:
        J = j // 2
        if k % 2 == 0:
            K, L = k // 2, l // 2
            pref = (4.0 ** J * specfun.pochhammer(0.5, J - K) * specfun.pochhammer(0.5, J - L)
                    * specfun.pochhammer(alpha + 1.0, J)
                    * specfun.pochhammer(alpha + J + 1.0, K)
                    * specfun.pochhammer(alpha + J + 1.0, L)
                    / (float(math.factorial(2 * J)) * specfun.pochhammer(0.5, J)))
            series = specfun.hyp_terminating(
                (-float(K), K + alpha + 0.5, -float(L), L + alpha + 0.5),
                (alpha + J + 1.0, alpha + 1.0, -float(J)), 1.0, min(K, L))
            return pref * series
        K, L = (k - 1) // 2, (l - 1) // 2
        pref = (4.0 ** J * specfun.pochhammer(0.5, J - K) * specfun.pochhammer(0.5, J - L)
                * specfun.pochhammer(alpha + 1.0, J + 1)
                * specfun.pochhammer(alpha + J + 2.0, K)
                * specfun.pochhammer(alpha + J + 2.0, L)
                / (float(math.factorial(2 * J)) * J * specfun.pochhammer(0.5, J)))
        series = specfun.hyp_terminating(
            (-float(K), K + alpha + 1.5, -float(L), L + alpha + 1.5),
            (alpha + J + 2.0, alpha + 1.0, -float(J - 1)), 1.0, min(K, L))
        return pref * series
    if k % 2 == 1:
        return S_closed(l, k, alpha, j)
    J = (j - 1) // 2
    K, L = k // 2, (l - 1) // 2
    pref = (2.0 * 4.0 ** J * specfun.pochhammer(0.5, J - K + 1) * specfun.pochhammer(0.5, J - L)
            * specfun.pochhammer(alpha + 1.0, J + 1)
            * specfun.pochhammer(alpha + J + 2.0, K)
            * specfun.pochhammer(alpha + J + 2.0, L)
            / (float(math.factorial(2 * J + 1)) * specfun.pochhammer(0.5, J + 1)))
    series = specfun.hyp_terminating(
        (-float(K), K + alpha + 0.5, -float(L), L + alpha + 1.5),
        (alpha + J + 2.0, alpha + 1.0, -float(J)), 1.0, min(K, L))
    return pref * series


# ---------------------------------------------------------------------------
# The three construction routes for F
# ---------------------------------------------------------------------------

def _symmetrize(a: np.ndarray) -> np.ndarray:
    out = np.triu(a)
    return out + np.triu(a, 1).T


def _alternating_gram(table: np.ndarray) -> np.ndarray:
    """G[k, l] = sum_n (-1)^n T[k, n] T[l, n], exactly symmetric."""
    signs = (-1.0) ** np.arange(table.shape[1])
    return _symmetrize((table * signs[None, :]) @ table.T)


def _assemble(A: np.ndarray, B: np.ndarray | None, j: int) -> np.ndarray:
    """Assemble F from the even-family gram A ((j+1)^2) and odd-family gram
    B (j^2): corner, middle row/column, and the four signed quadrants."""
    dim = 2 * j + 1
    F = np.zeros((dim, dim), dtype=complex)
    F[j, j] = -1j * A[0, 0]
    if j == 0:
        return F
    up = j + np.arange(1, j + 1)
    down = j - np.arange(1, j + 1)
    border = -1j / SQRT2 * A[1:, 0]
    F[j, up] = F[j, down] = border
    F[up, j] = F[down, j] = border
    even_part = -0.5j * A[1:, 1:]
    odd_part = 0.5 * B
    F[np.ix_(up, up)] = even_part + odd_part
    F[np.ix_(down, down)] = even_part + odd_part
    F[np.ix_(up, down)] = even_part - odd_part
    F[np.ix_(down, up)] = even_part - odd_part
    return F


def F_from_UV(params: ModelParams) -> HahnFourierMatrix:
    """F = U^T V: the change of basis from position to momentum wavefunctions."""
    U = build_U(params).vectors
    V = build_V(params).vectors
    return HahnFourierMatrix(entries=U.T @ V, route="from_uv", params=params)


def F_direct(params: ModelParams) -> HahnFourierMatrix:
    """F assembled entrywise from the alternating bilinear sums of
    orthonormal Hahn functions (exactly symmetric by construction)."""
    j, alpha = params.j, params.alpha
    A = _alternating_gram(specfun.hahn_tilde_table(HahnParams(alpha, alpha, j)))
    B = None
    if j >= 1:
        B = _alternating_gram(
            specfun.hahn_tilde_table(HahnParams(alpha + 1.0, alpha + 1.0, j - 1)))
    return HahnFourierMatrix(entries=_assemble(A, B, j), route="direct_sum",
                             params=params)


def F_closed(params: ModelParams) -> HahnFourierMatrix:
    """F assembled from the closed 4F3 kernel values, normalized by the Hahn
    norms of the appropriate parameter family."""
    j, alpha = params.j, params.alpha
    p0 = HahnParams(alpha, alpha, j)
    h0 = np.array([specfun.hahn_norm(n, p0) for n in range(j + 1)])
    A = np.zeros((j + 1, j + 1))
    for k in range(j + 1):
        for l in range(k, j + 1):
            A[k, l] = A[l, k] = (S_closed(k, l, alpha, j)
                                 / math.sqrt(h0[k] * h0[l]))
    B = None
    if j >= 1:
        p1 = HahnParams(alpha + 1.0, alpha + 1.0, j - 1)
        h1 = np.array([specfun.hahn_norm(n, p1) for n in range(j)])
        B = np.zeros((j, j))
        for k in range(j):
            for l in range(k, j):
                B[k, l] = B[l, k] = (S_closed(k, l, alpha + 1.0, j - 1)
                                     / math.sqrt(h1[k] * h1[l]))
    return HahnFourierMatrix(entries=_assemble(A, B, j), route="closed_form",
                             params=params)


_ROUTES = {"uv": F_from_UV, "direct": F_direct, "closed": F_closed}


def build_F(params: ModelParams, route: str = "uv") -> HahnFourierMatrix:
    if route not in _ROUTES:
        raise DomainError(f"route must be one of {sorted(_ROUTES)}, got {route!r}")
    return _ROUTES[route](params)


def route_deviations(params: ModelParams) -> dict[str, float]:
    """Max entrywise deviations of the direct-sum and closed-form routes
    from the eigenvector route."""
    ref = F_from_UV(params).entries
    return {
        "uv_vs_direct": float(np.max(np.abs(ref - F_direct(params).entries))),
        "uv_vs_closed": float(np.max(np.abs(ref - F_closed(params).entries))),
    }


# ---------------------------------------------------------------------------
# Structural properties
# ---------------------------------------------------------------------------

_EIGENVALUE_LABELS = ("-i", "1", "i", "-1")


def expected_multiplicities(j: int) -> dict[str, int]:
    """Eigenvalue multiplicities of F: (n+1, n, n, n) for j = 2n and
    (n+1, n+1, n+1, n) for j = 2n+1, in the order -i, 1, i, -1."""
    n = j // 2
    if j % 2 == 0:
        counts = (n + 1, n, n, n)
    else:
        counts = (n + 1, n + 1, n + 1, n)
    return dict(zip(_EIGENVALUE_LABELS, counts))


def F_properties(F: HahnFourierMatrix) -> dict:
    """Residual report for the structural claims about F.

    Checks symmetry, unitarity, F^4 = I, that the rows of U are eigenvectors
    with the phase-cycle eigenvalues, and the eigenvalue multiplicities
    counted from that cycle.
    """
    m = F.entries
    dim = F.dim
    eye = np.eye(dim)
    U = build_U(F.params).vectors
    phases = j_phase(dim)
    counts = {label: 0 for label in _EIGENVALUE_LABELS}
    for r in range(dim):
        counts[_EIGENVALUE_LABELS[r % 4]] += 1
    expected = expected_multiplicities(F.params.j)
    return {
        "symmetry": float(np.max(np.abs(m - m.T))),
        "unitarity": float(np.max(np.abs(m @ m.conj().T - eye))),
        "fourth_power": float(np.max(np.abs(np.linalg.matrix_power(m, 4) - eye))),
        "eigen_relation": float(np.max(np.abs(m @ U.T - U.T * phases[None, :]))),
        "multiplicities": counts,
        "expected_multiplicities": expected,
        "multiplicities_ok": counts == expected,
    }


# ---------------------------------------------------------------------------
# Sum splitting and the large-j kernel limit
# ---------------------------------------------------------------------------

def sum_split_check(K: int, L: int, alpha: float, J: int,
                    tol: float = 1e-12) -> bool:
    """Check that the alternating bilinear 4F3 sum folds onto half its range:
    sum_{n=0}^{2J} T_n = 2 (sum_{n<J} T_n + T_J / 2)."""
    if not (0 <= K <= J and 0 <= L <= J):
        raise DomainError("need 0 <= K, L <= J")
    p = HahnParams(alpha, alpha, 2 * J)

    def T(n: int) -> float:
        w = specfun.hahn_weight(n, p)
        args = lambda m: ((-float(m), m + alpha + 0.5, -float(n), float(n - 2 * J)),
                          (alpha + 1.0, -float(J), -float(J) + 0.5))
        f_K = specfun.hyp_terminating(*args(K), 1.0, min(K, n, 2 * J - n))
        f_L = specfun.hyp_terminating(*args(L), 1.0, min(L, n, 2 * J - n))
        value = w * f_K * f_L
        return -value if n % 2 else value

    terms = [T(n) for n in range(2 * J + 1)]
    full = math.fsum(terms)
    halved = 2.0 * (math.fsum(terms[:J]) + 0.5 * terms[J])
    scale = max(1.0, math.fsum(abs(t) for t in terms))
    return abs(full - halved) <= tol * scale


def fourier_kernel(x: float, p: float, alpha: float) -> complex:
    """Large-j limit kernel: (|xp|^(1/2) J_a(|xp|) + i xp |xp|^(-1/2)
    J_{a+1}(|xp|)) / 2, the generalized Fourier transform kernel."""
    u = x * p
    au = abs(u)
    if au == 0.0:
        if alpha <= -0.5:
            raise DomainError("kernel diverges on the axes for alpha <= -1/2")
        return 0j
    real = math.sqrt(au) * specfun.bessel_j(alpha, au)
    imag = u / math.sqrt(au) * specfun.bessel_j(alpha + 1.0, au)
    return 0.5 * (real + 1j * imag)


@dataclass(frozen=True)
class KernelReport:
    j: int
    alpha: float
    bound: float
    window: int
    max_error: float
    points: int


def kernel_limit_error(alpha: float, j: int, grid_bound: float) -> KernelReport:
    """Max deviation of sqrt(j) * F entries from the limit kernel over the
    rescaled grid |x|, |p| <= grid_bound.

    Only the centered window of F is needed, so the entry sums are built
    from Hahn tables truncated at the largest contributing degree rather
    than from the full matrix.
    """
    if j < 50 or j % 2 == 1:
        raise DomainError(f"kernel comparison needs even j >= 50, got {j}")
    limit_sq = grid_bound * grid_bound * j
    kmax = 0
    while kmax + 1 <= j and (kmax + 1) * (2.0 * alpha + kmax + 2.0) <= limit_sq:
        kmax += 1
    A = _alternating_gram(
        specfun.hahn_tilde_table(HahnParams(alpha, alpha, j), max_degree=kmax))
    B = None
    if kmax >= 1:
        B = _alternating_gram(specfun.hahn_tilde_table(
            HahnParams(alpha + 1.0, alpha + 1.0, j - 1), max_degree=kmax - 1))

    def entry(s: int, t: int) -> complex:
        k, l = abs(s), abs(t)
        if k == 0 and l == 0:
            return -1j * A[0, 0]
        if k == 0 or l == 0:
            return -1j / SQRT2 * A[max(k, l), 0]
        same_side = (s > 0) == (t > 0)
        odd_sign = 1.0 if same_side else -1.0
        return -0.5j * A[k, l] + odd_sign * 0.5 * B[k - 1, l - 1]

    sqrt_j = math.sqrt(j)
    grid = {s: math.copysign(math.sqrt(abs(s) * (2.0 * alpha + abs(s) + 1.0)), s) / sqrt_j
            for s in range(-kmax, kmax + 1)}
    worst = 0.0
    points = 0
    for s in range(-kmax, kmax + 1):
        for t in range(-kmax, kmax + 1):
            if (s == 0 or t == 0) and alpha <= -0.5:
                continue  # kernel diverges on the axes there
            target = fourier_kernel(grid[s], grid[t], alpha)
            worst = max(worst, abs(sqrt_j * entry(s, t) - target))
            points += 1
    return KernelReport(j=j, alpha=alpha, bound=grid_bound, window=kmax,
                        max_error=worst, points=points)
