"""The parity-deformed su(2) finite oscillator model.

Builds the (2j+1)-dimensional representation of the deformed algebra, the
tridiagonal position/momentum operators, their closed-form eigensystems,
and the discrete wavefunction tables together with their large-j
(parabose/Laguerre) limits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import specfun
from .errors import DomainError, VerificationError
from .specfun import HahnParams

SQRT2 = math.sqrt(2.0)

# full-table wavefunction cross-checks are run up to this j
_WAVECHECK_MAX_J = 60
_PARABOSE_MAX_LEVEL = 5


@dataclass(frozen=True)
class ModelParams:
    """Representation label j (dimension 2j+1) and deformation alpha > -1."""

    j: int
    alpha: float

    def __post_init__(self):
        if self.j < 0 or self.j != int(self.j):
            raise DomainError(f"j must be a nonnegative integer, got {self.j}")
        if not self.alpha > -1.0:
            raise DomainError(f"alpha must exceed -1, got {self.alpha}")

    @property
    def dim(self) -> int:
        return 2 * self.j + 1


@dataclass(frozen=True)
class RepMatrices:
    """Matrix realization of the algebra generators on the ordered basis
    |j,-j>, ..., |j,j> (row/column index j+m)."""

    J0: np.ndarray
    Jp: np.ndarray
    Jm: np.ndarray
    P: np.ndarray


@dataclass(frozen=True)
class EigenSystem:
    """Ordered eigenvalues with the matching eigenvector columns."""

    eigenvalues: np.ndarray
    vectors: np.ndarray
    field_kind: str  # 'real' | 'complex'


@dataclass(frozen=True)
class TridiagonalOperator:
    """Zero-diagonal tridiagonal operator stored by its couplings M_0..M_{2j-2}.

    kind 'position' realizes the symmetric matrix of 2*q; kind 'momentum'
    the antisymmetric real matrix of 2i*p (upper +M_k, lower -M_k).
    """

    couplings: tuple[float, ...]
    kind: str

    @property
    def dim(self) -> int:
        return len(self.couplings) + 1

    def matrix(self) -> np.ndarray:
        n = self.dim
        m = np.zeros((n, n))
        for k, c in enumerate(self.couplings):
            m[k, k + 1] = c
            m[k + 1, k] = c if self.kind == "position" else -c
        return m

    def operator(self) -> np.ndarray:
        """The physical operator: q = M/2 (real) or the Hermitian p = -i M/2."""
        if self.kind == "position":
            return self.matrix() / 2.0
        return -0.5j * self.matrix()


def build_rep(params: ModelParams) -> RepMatrices:
    """Generator matrices of the deformed algebra acting on W_j.

    The raising entries split by the parity of j+m: for j+m even the factor
    pair is (j-m, j+m+2a+2), for j+m odd it is (j-m+2a+1, j+m+1); the
    lowering matrix is the transpose.  At alpha = -1/2 both branches reduce
    to the classical su(2) values.
    """
    j, alpha = params.j, params.alpha
    dim = params.dim
    m_values = np.arange(-j, j + 1, dtype=float)
    J0 = np.diag(m_values)
    P = np.diag(np.array([(-1.0) ** r for r in range(dim)]))
    Jp = np.zeros((dim, dim))
    for r in range(dim - 1):  # r = j + m
        m = r - j
        if r % 2 == 0:
            c = math.sqrt((j - m) * (j + m + 2.0 * alpha + 2.0))
        else:
            c = math.sqrt((j - m + 2.0 * alpha + 1.0) * (j + m + 1.0))
        Jp[r + 1, r] = c
    return RepMatrices(J0=J0, Jp=Jp, Jm=Jp.T.copy(), P=P)


def _max_abs(m: np.ndarray) -> float:
    return float(np.max(np.abs(m))) if m.size else 0.0


def check_algebra_relations(rep: RepMatrices, params: ModelParams) -> dict[str, float]:
    """Max-norm residuals of the five defining relations of the algebra."""
    alpha = params.alpha
    eye = np.eye(rep.J0.shape[0])
    comm = lambda a, b: a @ b - b @ a
    anti = lambda a, b: a @ b + b @ a
    return {
        "parity_squared": _max_abs(rep.P @ rep.P - eye),
        "parity_J0_commutator": _max_abs(comm(rep.P, rep.J0)),
        "parity_Jplus_anticommutator": _max_abs(anti(rep.P, rep.Jp)),
        "parity_Jminus_anticommutator": _max_abs(anti(rep.P, rep.Jm)),
        "J0_Jplus_commutator": _max_abs(comm(rep.J0, rep.Jp) - rep.Jp),
        "J0_Jminus_commutator": _max_abs(comm(rep.J0, rep.Jm) + rep.Jm),
        "ladder_commutator": _max_abs(
            comm(rep.Jp, rep.Jm) - 2.0 * rep.J0
            - 2.0 * (2.0 * alpha + 1.0) * rep.J0 @ rep.P),
    }


def coupling_M(k: int, params: ModelParams) -> float:
    """Off-diagonal coupling of the tridiagonal position/momentum matrices."""
    if not 0 <= k <= 2 * params.j - 1:
        raise IndexError(f"coupling index {k} outside 0..{2 * params.j - 1}")
    j, alpha = params.j, params.alpha
    if k % 2 == 1:
        return math.sqrt((k + 1.0) * (2.0 * j + 2.0 * alpha - k + 1.0))
    return math.sqrt((k + 2.0 * alpha + 2.0) * (2.0 * j - k))


def build_Mq(params: ModelParams) -> TridiagonalOperator:
    couplings = tuple(coupling_M(k, params) for k in range(2 * params.j))
    return TridiagonalOperator(couplings=couplings, kind="position")


def build_Mp(params: ModelParams) -> TridiagonalOperator:
    couplings = tuple(coupling_M(k, params) for k in range(2 * params.j))
    return TridiagonalOperator(couplings=couplings, kind="momentum")


def hamiltonian(params: ModelParams) -> np.ndarray:
    """Diagonal oscillator Hamiltonian with spectrum n + 1/2, n = 0..2j."""
    return np.diag(np.arange(params.dim, dtype=float) + 0.5)


def check_hamiltonian_equations(params: ModelParams) -> dict[str, float]:
    """Residuals of [H, q] = -i p and [H, p] = i q plus the H spectrum."""
    H = hamiltonian(params).astype(complex)
    q = build_Mq(params).operator().astype(complex)
    p = build_Mp(params).operator()
    res_q = _max_abs(H @ q - q @ H + 1j * p)
    res_p = _max_abs(H @ p - p @ H - 1j * q)
    levels = np.arange(params.dim, dtype=float) + 0.5
    res_spec = _max_abs(np.diag(H).real - levels)
    return {"heisenberg_q": res_q, "heisenberg_p": res_p, "H_spectrum": res_spec}


def spectrum_q(params: ModelParams) -> np.ndarray:
    """Position spectrum +-sqrt(k(2a+k+1)), k = 0..j, sorted ascending.

    The momentum operator has the identical spectrum.
    """
    j, alpha = params.j, params.alpha
    positive = [math.sqrt(k * (2.0 * alpha + k + 1.0)) for k in range(1, j + 1)]
    return np.array([-v for v in reversed(positive)] + [0.0] + positive)


def u2alpha_spectrum(j_half: float, alpha: float) -> np.ndarray:
    """Spectrum of the half-integer-label (even-dimensional) deformed model:
    unit-step values with a gap of size 2*alpha+2 in the middle."""
    two_j = 2.0 * j_half
    if two_j <= 0 or two_j != int(two_j) or int(two_j) % 2 == 0:
        raise DomainError(f"j_half must be a positive half-odd-integer, got {j_half}")
    if not alpha > -1.0:
        raise DomainError(f"alpha must exceed -1, got {alpha}")
    m = int(two_j + 1) // 2  # number of values on each side
    left = [-alpha - m + t for t in range(m)]
    right = [alpha + 1 + t for t in range(m)]
    return np.array(left + right, dtype=float)


def position_eigenvalues(params: ModelParams) -> np.ndarray:
    """Eigenvalues of the doubled operator 2*q in column order (ascending)."""
    return 2.0 * spectrum_q(params)


def build_U(params: ModelParams) -> EigenSystem:
    """Closed-form real orthogonal eigenvector matrix of the 2*q matrix.

    Column j+-k belongs to the eigenvalue +-2 sqrt(k(2a+k+1)).  Even rows 2i
    carry (-1)^i/sqrt(2) times an orthonormal Hahn function with parameters
    (a, a, j); odd rows carry the (a+1, a+1, j-1) family with opposite signs
    in the two half-columns; the middle column has zero odd rows and no
    1/sqrt(2) factor.
    """
    j, alpha = params.j, params.alpha
    dim = params.dim
    U = np.zeros((dim, dim))
    t0 = specfun.hahn_tilde_table(HahnParams(alpha, alpha, j))
    rows_even = 2 * np.arange(j + 1)
    sign_even = (-1.0) ** np.arange(j + 1)
    U[rows_even, j] = sign_even * t0[0]
    if j >= 1:
        t1 = specfun.hahn_tilde_table(HahnParams(alpha + 1.0, alpha + 1.0, j - 1))
        rows_odd = 2 * np.arange(j) + 1
        sign_odd = (-1.0) ** np.arange(j)
        for k in range(1, j + 1):
            even_col = sign_even / SQRT2 * t0[k]
            odd_col = sign_odd / SQRT2 * t1[k - 1]
            U[rows_even, j + k] = even_col
            U[rows_even, j - k] = even_col
            U[rows_odd, j + k] = odd_col
            U[rows_odd, j - k] = -odd_col
    return EigenSystem(eigenvalues=position_eigenvalues(params), vectors=U,
                       field_kind="real")


def j_phase(dim: int) -> np.ndarray:
    """Diagonal of the phase matrix relating V to U: the cycle -i, 1, i, -1."""
    cycle = (-1j, 1.0 + 0j, 1j, -1.0 + 0j)
    return np.array([cycle[r % 4] for r in range(dim)])


def build_V(params: ModelParams) -> EigenSystem:
    """Complex unitary eigenvector matrix of the 2i*p matrix: V = J U with
    row phases -i^(k+1); eigenvalues are +-2i sqrt(k(2a+k+1))."""
    u = build_U(params)
    phases = j_phase(params.dim)
    V = phases[:, None] * u.vectors
    return EigenSystem(eigenvalues=1j * u.eigenvalues, vectors=V,
                       field_kind="complex")


# ---------------------------------------------------------------------------
# Wavefunctions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class WaveTable:
    """values[n, j+k] is the level-n wavefunction at the k-th grid point;
    grid holds the (ascending) spectrum values."""

    values: np.ndarray
    grid: np.ndarray
    kind: str
    params: ModelParams = field(repr=False)


def wavefunction_value(params: ModelParams, level: int, k: int,
                       kind: str = "position") -> complex:
    """Single wavefunction amplitude from the dual-Hahn closed forms.

    `level` is the energy index 0..2j and `k` the signed grid index -j..j.
    Assembled in log space for large j, so it stays usable where the full
    eigenvector matrix would overflow or cost too much.
    """
    j, alpha = params.j, params.alpha
    if not 0 <= level <= 2 * j:
        raise DomainError(f"level must lie in 0..{2 * j}, got {level}")
    if abs(k) > j:
        raise DomainError(f"grid index must lie in -{j}..{j}, got {k}")
    if level % 2 == 0:
        i = level // 2
        p0 = HahnParams(alpha, alpha, j)
        if k == 0:
            value = (-1.0) ** i * specfun.hahn_tilde(0, i, p0)
        else:
            value = (-1.0) ** i / SQRT2 * specfun.hahn_tilde(abs(k), i, p0)
    else:
        i = (level - 1) // 2
        if k == 0:
            value = 0.0
        else:
            p1 = HahnParams(alpha + 1.0, alpha + 1.0, j - 1)
            value = (-1.0) ** i / SQRT2 * specfun.hahn_tilde(abs(k) - 1, i, p1)
            if k < 0:
                value = -value
    if kind == "momentum":
        return complex(j_phase(2 * j + 1)[level] * value)
    if kind != "position":
        raise DomainError(f"kind must be 'position' or 'momentum', got {kind!r}")
    return value


def wavefunctions(params: ModelParams, kind: str = "position",
                  check: bool = True) -> WaveTable:
    """Full wavefunction table from the eigenvector matrix.

    Each entry is re-derived from the dual-Hahn closed forms and the two
    routes are required to agree (VerificationError otherwise); the check
    runs for j <= 60 where the full-table comparison is cheap.
    """
    if kind == "position":
        values = build_U(params).vectors
    elif kind == "momentum":
        values = build_V(params).vectors
    else:
        raise DomainError(f"kind must be 'position' or 'momentum', got {kind!r}")
    table = WaveTable(values=values, grid=spectrum_q(params), kind=kind, params=params)
    if check and params.j <= _WAVECHECK_MAX_J:
        tol = 1e-11 if params.j <= 40 else 1e-9
        worst = 0.0
        for level in range(params.dim):
            for k in range(-params.j, params.j + 1):
                closed = wavefunction_value(params, level, k, kind)
                worst = max(worst, abs(values[level, params.j + k] - closed))
        if worst > tol:
            raise VerificationError(
                f"wavefunction closed forms deviate from eigenvectors by {worst:.3e}")
    return table


def parabose_wavefunction(level: int, alpha: float, x: float) -> float:
    """Continuum (large-j) limit profile: Laguerre-type wavefunction with
    parameter a = alpha + 1."""
    if level < 0:
        raise DomainError(f"level must be nonnegative, got {level}")
    if level % 2 == 0:
        i = level // 2
        norm = math.sqrt(math.factorial(i) / math.gamma(alpha + i + 1.0))
        return ((-1.0) ** i * norm * abs(x) ** (alpha + 0.5)
                * math.exp(-0.5 * x * x) * specfun.laguerre(i, alpha, x * x))
    i = (level - 1) // 2
    norm = math.sqrt(math.factorial(i) / math.gamma(alpha + i + 2.0))
    return ((-1.0) ** i * norm * x * abs(x) ** (alpha + 0.5)
            * math.exp(-0.5 * x * x) * specfun.laguerre(i, alpha + 1.0, x * x))


@dataclass(frozen=True)
class LimitReport:
    j: int
    alpha: float
    level: int
    bound: float
    max_error: float
    points: int


def parabose_limit_error(params: ModelParams, level: int,
                         scaled_grid_bound: float) -> LimitReport:
    """Max deviation of j^(1/4) Phi_level from its continuum profile.

    Evaluated at the native rescaled grid points x_k = q_k / sqrt(j) with
    0 < |x_k| <= bound.  The origin is excluded: the limit profile behaves
    like |x|^(alpha+1/2) there, which diverges for alpha < -1/2, while the
    pointwise limit statement concerns fixed x != 0.
    """
    j, alpha = params.j, params.alpha
    if j < 1:
        raise DomainError("parabose comparison needs j >= 1")
    if level > _PARABOSE_MAX_LEVEL:
        raise DomainError(
            f"limit comparison supported for levels <= {_PARABOSE_MAX_LEVEL}")
    sqrt_j = math.sqrt(j)
    scale = j ** 0.25
    worst = 0.0
    points = 0
    for k in range(1, j + 1):
        x = math.sqrt(k * (2.0 * alpha + k + 1.0)) / sqrt_j
        if x > scaled_grid_bound:
            break
        for signed_k, signed_x in ((k, x), (-k, -x)):
            discrete = scale * wavefunction_value(params, level, signed_k).real
            target = parabose_wavefunction(level, alpha, signed_x)
            worst = max(worst, abs(discrete - target))
            points += 1
    return LimitReport(j=j, alpha=alpha, level=level, bound=scaled_grid_bound,
                       max_error=worst, points=points)
