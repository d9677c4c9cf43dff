"""Exact rational arithmetic twins of the series evaluations.

Ground-truth oracle for the transformation identities and for the closed
form of the alternating dual-Hahn kernel at small sizes.  Scalars are
`fractions.Fraction` values: always in lowest terms with positive
denominator, immutable, and normalized after every operation, which is
exactly the Rational contract this module needs.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

from .errors import BalanceError, DegenerateError, DomainError, PoleInRangeError

Rational = Fraction

HALF = Fraction(1, 2)


def as_rational(value) -> Fraction:
    """Coerce ints, floats (exact dyadic reading) and 'p/q' strings."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, str):
        return Fraction(value)
    return Fraction(value)


def poch(a: Fraction, k: int) -> Fraction:
    """Exact rising factorial."""
    if k < 0:
        raise DomainError(f"pochhammer order must be nonnegative, got {k}")
    result = Fraction(1)
    for i in range(k):
        result *= a + i
    return result


def hyp(numerator: Sequence[Fraction], denominator: Sequence[Fraction],
        argument: Fraction, terms: int) -> Fraction:
    """Exact terminating pFq sum for t = 0..terms.

    Raises PoleInRangeError when a denominator parameter hits zero before
    the running term has vanished.
    """
    numerator = [as_rational(a) for a in numerator]
    denominator = [as_rational(b) for b in denominator]
    argument = as_rational(argument)
    total = Fraction(1)
    term = Fraction(1)
    for t in range(terms):
        num = Fraction(1)
        for a in numerator:
            num *= a + t
        den = Fraction(t + 1)
        for b in denominator:
            factor = b + t
            if factor == 0:
                if num == 0 or term == 0:
                    return total
                raise PoleInRangeError(
                    f"denominator parameter {b} hits zero at term {t + 1}")
            den *= factor
        term *= argument * num / den
        if term == 0:
            break
        total += term
    return total


# ---------------------------------------------------------------------------
# Hahn family, exact
# ---------------------------------------------------------------------------

def hahn_Q(n: int, x: int, alpha: Fraction, beta: Fraction, N: int) -> Fraction:
    if not (0 <= n <= N and 0 <= x <= N):
        raise DomainError(f"n and x must lie in 0..{N}")
    alpha, beta = as_rational(alpha), as_rational(beta)
    return hyp((-n, n + alpha + beta + 1, -x), (alpha + 1, -N), 1, min(n, x))


def hahn_weight(x: int, alpha: Fraction, beta: Fraction, N: int) -> Fraction:
    if not 0 <= x <= N:
        raise DomainError(f"x must lie in 0..{N}")
    alpha, beta = as_rational(alpha), as_rational(beta)
    return (poch(alpha + 1, x) / math.factorial(x)
            * poch(beta + 1, N - x) / math.factorial(N - x))


def hahn_norm(n: int, alpha: Fraction, beta: Fraction, N: int) -> Fraction:
    if not 0 <= n <= N:
        raise DomainError(f"n must lie in 0..{N}")
    alpha, beta = as_rational(alpha), as_rational(beta)
    # split form: the (2n+alpha+beta+1) factor is cancelled against the
    # leading Pochhammer, so alpha+beta = -1 needs no special case
    return (poch(n + alpha + beta + 1, n) * poch(2 * n + alpha + beta + 2, N - n)
            * poch(beta + 1, n) * math.factorial(n)
            / (poch(alpha + 1, n) * poch(N - n + 1, n) * math.factorial(N)))


def hahn_tilde_sq(n: int, x: int, alpha: Fraction, beta: Fraction, N: int) -> Fraction:
    """Signed square of the orthonormal Hahn function: sign(Q) * w Q^2 / h."""
    q = hahn_Q(n, x, alpha, beta, N)
    value = hahn_weight(x, alpha, beta, N) * q * q / hahn_norm(n, alpha, beta, N)
    return value if q >= 0 else -value


# ---------------------------------------------------------------------------
# Alternating dual-Hahn kernel, exact
# ---------------------------------------------------------------------------

def S_direct(k: int, l: int, alpha: Fraction, j: int) -> Fraction:
    """Exact alternating bilinear sum over the symmetric Hahn family."""
    if not (0 <= k <= j and 0 <= l <= j):
        raise DomainError(f"k and l must lie in 0..{j}")
    alpha = as_rational(alpha)
    total = Fraction(0)
    for n in range(j + 1):
        term = (hahn_weight(n, alpha, alpha, j)
                * hahn_Q(k, n, alpha, alpha, j) * hahn_Q(l, n, alpha, alpha, j))
        total += -term if n % 2 else term
    return total


def S_closed(k: int, l: int, alpha: Fraction, j: int) -> Fraction:
    """Exact closed form of the alternating kernel: 0 at odd parity, else a
    prefactor times a terminating balanced 4F3(1)."""
    if not (0 <= k <= j and 0 <= l <= j):
        raise DomainError(f"k and l must lie in 0..{j}")
    alpha = as_rational(alpha)
    if (k + l + j) % 2 == 1:
        return Fraction(0)
    if j % 2 == 0:
        J = j // 2
        if k % 2 == 0 and l % 2 == 0:
            K, L = k // 2, l // 2
            pref = (Fraction(4 ** J) * poch(HALF, J - K) * poch(HALF, J - L)
                    * poch(alpha + 1, J) * poch(alpha + J + 1, K) * poch(alpha + J + 1, L)
                    / (math.factorial(2 * J) * poch(HALF, J)))
            series = hyp((-K, K + alpha + HALF, -L, L + alpha + HALF),
                         (alpha + J + 1, alpha + 1, -J), 1, min(K, L))
            return pref * series
        K, L = (k - 1) // 2, (l - 1) // 2
        pref = (Fraction(4 ** J) * poch(HALF, J - K) * poch(HALF, J - L)
                * poch(alpha + 1, J + 1) * poch(alpha + J + 2, K) * poch(alpha + J + 2, L)
                / (math.factorial(2 * J) * J * poch(HALF, J)))
        series = hyp((-K, K + alpha + Fraction(3, 2), -L, L + alpha + Fraction(3, 2)),
                     (alpha + J + 2, alpha + 1, -J + 1), 1, min(K, L))
        return pref * series
    if k % 2 == 1:
        # odd k, even l: exchange the roles in the mixed-parity form
        return S_closed(l, k, alpha, j)
    J = (j - 1) // 2
    K, L = k // 2, (l - 1) // 2
    pref = (Fraction(2 * 4 ** J) * poch(HALF, J - K + 1) * poch(HALF, J - L)
            * poch(alpha + 1, J + 1) * poch(alpha + J + 2, K) * poch(alpha + J + 2, L)
            / (math.factorial(2 * J + 1) * poch(HALF, J + 1)))
    series = hyp((-K, K + alpha + HALF, -L, L + alpha + Fraction(3, 2)),
                 (alpha + J + 2, alpha + 1, -J), 1, min(K, L))
    return pref * series


# ---------------------------------------------------------------------------
# Identity checks (exact)
# ---------------------------------------------------------------------------

def parity_check(k: int, x: int, alpha: Fraction, N: int) -> bool:
    alpha = as_rational(alpha)
    lhs = hahn_Q(k, x, alpha, alpha, N)
    rhs = hahn_Q(k, N - x, alpha, alpha, N)
    return lhs == (rhs if k % 2 == 0 else -rhs)


def hahn_4f3_check(degree: int, x: int, alpha: Fraction, N: int) -> bool:
    """Exact equality of the symmetric-parameter 4F3 form with the 3F2."""
    alpha = as_rational(alpha)
    direct = hahn_Q(degree, x, alpha, alpha, N)
    terms = min(degree // 2, x, N - x)
    if degree % 2 == 0:
        k = degree // 2
        form = hyp((-k, k + alpha + HALF, -x, x - N),
                   (alpha + 1, Fraction(-N, 2), Fraction(1 - N, 2)), 1, terms)
    else:
        if N == 0:
            raise DegenerateError("odd-degree 4F3 form needs N >= 1")
        k = (degree - 1) // 2
        pref = Fraction(N - 2 * x, N)
        form = pref * hyp((-k, k + alpha + Fraction(3, 2), -x, x - N),
                          (alpha + 1, Fraction(1 - N, 2), Fraction(2 - N, 2)),
                          1, min(k, x, N - x)) if pref else Fraction(0)
    return form == direct


def forward_shift_check(k: int, i: int, alpha: Fraction, j: int) -> bool:
    if not (1 <= k <= j and 0 <= i <= j - 1):
        raise DomainError("need 1 <= k <= j and 0 <= i <= j-1")
    alpha = as_rational(alpha)
    lhs = hahn_Q(k, i, alpha, alpha, j) - hahn_Q(k, i + 1, alpha, alpha, j)
    rhs = (Fraction(k) * (k + 2 * alpha + 1) / ((alpha + 1) * j)
           * hahn_Q(k - 1, i, alpha + 1, alpha + 1, j - 1))
    return lhs == rhs


def thomae_check(a, b, c, N: int, e, f, g) -> bool:
    """Exact Thomae transformation check of a terminating Saalschuetzian 4F3."""
    a, b, c, e, f, g = map(as_rational, (a, b, c, e, f, g))
    if N < 0:
        raise DomainError(f"N must be nonnegative, got {N}")
    if e + f + g != 1 + a + b + c - N:
        raise BalanceError("Saalschuetz balance e+f+g = 1+a+b+c-N violated")
    lhs = hyp((a, b, c, -N), (e, f, g), 1, N)
    den = poch(f, N) * poch(e + f - a - b - c, N)
    if den == 0:
        raise PoleInRangeError("transformed prefactor denominator vanishes")
    pref = poch(f - c, N) * poch(e + f - a - b, N) / den
    rhs = pref * hyp((e - a, e - b, c, -N), (e, e + f - a - b, e + g - a - b), 1, N)
    return lhs == rhs


def _series_pair_id1(n: int, p: int, q: int, r: int, a, b, c):
    s = p + q
    f1 = hyp((-n, n + b + c - 1, -q, q + a + b - 1),
             (b, a + b + c + s - 1, -s), 1, min(n, q))
    f2 = hyp((-n, n + b + c - 1, -r, r + a + c - 1),
             (c, a + b + c + s - 1, -s), 1, min(n, r))
    return f1, f2


def id1_check(p: int, q: int, r: int, a, b, c) -> bool:
    """Exact check of the bilinear 4F3 summation identity (pre-Thomae form)."""
    a, b, c = map(as_rational, (a, b, c))
    if min(p, q, r) < 0:
        raise DomainError("p, q, r must be nonnegative integers")
    s = p + q
    total = Fraction(0)
    for n in range(s + 1):
        ratio_den = b + c + n - 1
        if ratio_den == 0:
            raise PoleInRangeError(f"ratio denominator b+c+n-1 vanishes at n={n}")
        den = poch(b + c + s, n) * poch(1 - a - s, n)
        if den == 0:
            raise PoleInRangeError(f"coefficient denominator vanishes at n={n}")
        coeff = (Fraction(math.comb(s, n)) * (b + c + 2 * n - 1) / ratio_den
                 * poch(b + c, n) * poch(a + b + c + s - 1, n) / den)
        f1, f2 = _series_pair_id1(n, p, q, r, a, b, c)
        total += coeff * f1 * f2
    rhs_den = poch(a, s) * poch(b, q) * poch(c, r)
    if rhs_den == 0:
        raise PoleInRangeError("right-hand prefactor denominator vanishes")
    sign = Fraction(-1) ** ((p - r) % 2)
    rhs = (sign * poch(b + c, s) * poch(a, r) * poch(a, q) / rhs_den
           * hyp((-q, q + a + b - 1, -r, r + a + c - 1),
                 (a, a + b + c + s - 1, -s), 1, min(q, r)))
    return total == rhs


def _series_pair_id2(n: int, p: int, q: int, r: int, a, b, c):
    s = p + q
    f1 = hyp((-n, n + b + c - 1, -q, q + a + b - 1),
             (b, a + b + c + s - 1, -s), 1, min(n, q))
    f2 = hyp((-n, n + b + c - 1, -r, r + 1 - a - c - 2 * s),
             (b, 1 - a - s, -s), 1, min(n, r))
    return f1, f2


def id2_coefficient(n: int, p: int, q: int, a, b, c) -> Fraction:
    """Coefficient of the two 4F3 factors in the n-th summand of the
    post-Thomae bilinear identity."""
    s = p + q
    ratio_den = b + c + n - 1
    if ratio_den == 0:
        raise PoleInRangeError(f"ratio denominator b+c+n-1 vanishes at n={n}")
    den = poch(c, n) * poch(b + c + s, n)
    if den == 0:
        raise PoleInRangeError(f"coefficient denominator vanishes at n={n}")
    return (Fraction(math.comb(s, n)) * (b + c + 2 * n - 1) / ratio_den
            * poch(b + c, n) * poch(b, n) / den)


def id2_check(p: int, q: int, r: int, a, b, c) -> bool:
    """Exact check of the transformed bilinear 4F3 summation identity."""
    a, b, c = map(as_rational, (a, b, c))
    if min(p, q, r) < 0:
        raise DomainError("p, q, r must be nonnegative integers")
    s = p + q
    total = Fraction(0)
    for n in range(s + 1):
        coeff = id2_coefficient(n, p, q, a, b, c)
        f1, f2 = _series_pair_id2(n, p, q, r, a, b, c)
        total += coeff * f1 * f2
    rhs_den = poch(c, p) * poch(a + b + c + s - 1, q) * poch(1 - a - s, r)
    if rhs_den == 0:
        raise PoleInRangeError("right-hand prefactor denominator vanishes")
    sign = Fraction(-1) ** (r % 2)
    rhs = (sign * poch(b + c, s) * poch(1 - c - s, r) / rhs_den
           * hyp((-q, q + a + b - 1, -r, r + 1 - a - c - 2 * s),
                 (b, 1 - c - s, -s), 1, min(q, r)))
    return total == rhs


def limit_substitution_check(J: int, K: int, L: int, alpha) -> bool:
    """Check the bridging step between the bilinear identity and the kernel
    closed form.

    Under the substitution p = J-K, q = K, r = L, a = 1/2, b = alpha+t,
    c = -2J-alpha, the t -> 1 limit of the n-th summand coefficient must be
    (2J)!/(alpha+1)_{2J} * (-1)^n w(n; alpha, alpha, 2J) for n < J.  For the
    middle term n = J the limit is half that when J >= 1; at J = 0 the 0/0
    ratio is identically 1 before the limit, so the full (unhalved) value is
    the correct target there.
    """
    if not (0 <= K <= J and 0 <= L <= J):
        raise DomainError("need 0 <= K, L <= J")
    alpha = as_rational(alpha)
    p, q = J - K, K
    b1 = alpha + 1          # b at t = 1
    c1 = -2 * J - alpha
    factor = Fraction(math.factorial(2 * J)) / poch(alpha + 1, 2 * J)
    for n in range(J):
        coeff = id2_coefficient(n, p, q, HALF, b1, c1)
        target = factor * hahn_weight(n, alpha, alpha, 2 * J)
        if n % 2:
            target = -target
        if coeff != target:
            return False
    # middle term n = J: (t-1) in the ratio numerator cancels the trailing
    # (t-1) factor of (b+c+p+q)_J in the denominator
    if J == 0:
        middle = Fraction(1)
        target = factor * hahn_weight(0, alpha, alpha, 0)
    else:
        middle = (poch(1 - 2 * J, J) * poch(alpha + 1, J)
                  / (Fraction(-J) * poch(-2 * J - alpha, J) * poch(1 - J, J - 1)))
        target = HALF * factor * hahn_weight(J, alpha, alpha, 2 * J)
        if J % 2:
            target = -target
    return middle == target


def sum_split_check(K: int, L: int, alpha, J: int) -> bool:
    """Exact check that the alternating sum of bilinear 4F3 terms folds onto
    half its range: sum_{n=0}^{2J} T_n = 2(sum_{n<J} T_n + T_J/2)."""
    if not (0 <= K <= J and 0 <= L <= J):
        raise DomainError("need 0 <= K, L <= J")
    alpha = as_rational(alpha)

    def T(n: int) -> Fraction:
        w = hahn_weight(n, alpha, alpha, 2 * J)
        f_K = hyp((-K, K + alpha + HALF, -n, n - 2 * J),
                  (alpha + 1, -J, -J + HALF), 1, min(K, n, 2 * J - n))
        f_L = hyp((-L, L + alpha + HALF, -n, n - 2 * J),
                  (alpha + 1, -J, -J + HALF), 1, min(L, n, 2 * J - n))
        value = w * f_K * f_L
        return -value if n % 2 else value

    full = sum((T(n) for n in range(2 * J + 1)), Fraction(0))
    halved = 2 * (sum((T(n) for n in range(J)), Fraction(0)) + T(J) / 2)
    return full == halved
