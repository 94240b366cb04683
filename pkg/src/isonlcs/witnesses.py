"""Non-classicality witnesses: A3, Mandel Q, g2(0), quadrature and
amplitude-squared squeezing.

Every witness is evaluated by matrix algebra on the Case (iii) ladder
operators K_-, K_+, K_0. The closed-form series in :func:`nlcs_moments_series`
and :func:`canonical_number_moments_series` are an independent second route
used by the tests and the acceptance suite.
"""

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.special import logsumexp

from .errors import DomainError, TruncationError, UsageError
from .fockspace import OperatorMatrix, TruncatedBasis, build_rescaled_ladders
from .states import StateVector, nlcs_build, nlcs_log_weights
from .specfun import log_factorial

HERMITIAN_TOL = 1e-12
SQUEEZE_MARGIN = 8
DEFAULT_THETA_POINTS = 720
DEFAULT_R_POINTS = 100


class Ladders:
    """Case (iii) ladder triple with lazily built products and quadratures."""

    def __init__(self, k_minus: OperatorMatrix, k_plus: OperatorMatrix, k_zero: OperatorMatrix):
        self.k_minus, self.k_plus, self.k_zero = k_minus, k_plus, k_zero
        self._cache = {}

    @property
    def basis(self) -> TruncatedBasis:
        return self.k_minus.basis

    @classmethod
    def build(cls, basis: TruncatedBasis):
        return _ladders_cached(basis)

    def _get(self, key, make):
        if key not in self._cache:
            self._cache[key] = make()
        return self._cache[key]

    def lower_power(self, j: int) -> OperatorMatrix:
        return self._get(("K-", j), lambda: self.k_minus.power(j))

    def raise_power(self, j: int) -> OperatorMatrix:
        return self._get(("K+", j), lambda: self.k_plus.power(j))

    def number_power(self, j: int) -> OperatorMatrix:
        return self._get(("K0", j), lambda: self.k_zero.power(j))

    def normal_ordered(self, j: int) -> OperatorMatrix:
        """K_+^j K_-^j."""
        return self._get(("m", j), lambda: self.raise_power(j) @ self.lower_power(j))

    def anti_normal_ordered(self, j: int) -> OperatorMatrix:
        """K_-^j K_+^j."""
        return self._get(("am", j), lambda: self.lower_power(j) @ self.raise_power(j))

    def quadratures(self):
        """(x, p, X, P) with x = (K_+ + K_-)/sqrt2 and X = (K_+^2 + K_-^2)/sqrt2."""

        def make():
            s2 = 1.0 / math.sqrt(2.0)
            kp, km = self.k_plus, self.k_minus
            kp2, km2 = self.raise_power(2), self.lower_power(2)
            return ((kp + km) * s2, (kp - km) * (1j * s2), (kp2 + km2) * s2, (kp2 - km2) * (1j * s2))

        return self._get("quad", make)

    def squared(self, op: OperatorMatrix) -> OperatorMatrix:
        return self._get(("sq", id(op)), lambda: op @ op)


@lru_cache(maxsize=8)
def _ladders_cached(basis):
    return Ladders(*build_rescaled_ladders(basis, "iii"))


def expectation(state: StateVector, op: OperatorMatrix) -> complex:
    """<psi|op|psi>."""
    if state.basis != op.basis:
        raise UsageError(f"state basis n_max={state.basis.n_max} != operator basis n_max={op.basis.n_max}")
    c = state.amplitudes
    return complex(np.vdot(c, op.entries @ c))


def _real_expectation(state, op):
    val = expectation(state, op)
    scale = max(1.0, abs(val))
    if abs(val.imag) > HERMITIAN_TOL * scale:
        raise DomainError(f"expectation of Hermitian {op.label!r} has imaginary part {val.imag:.3e}")
    return val.real


def _require_margin(state: StateVector, margin: int, what: str):
    tail = state.tail_mass(margin)
    if tail > 1e-12:
        raise TruncationError(
            f"{what}: state mass {tail:.3e} within {margin} levels of the truncation edge",
            suggested_n_max=2 * state.basis.n_max,
        )


@dataclass(frozen=True)
class MomentSet:
    """m_j = <K_+^j K_-^j> and mu_j = <(K_+ K_-)^j> for j = 1..4."""

    m: tuple
    mu: tuple
    state_label: str = ""


def moment_set(state: StateVector, ladders: Ladders | None = None) -> MomentSet:
    ladders = ladders or Ladders.build(state.basis)
    _require_margin(state, SQUEEZE_MARGIN, "moment_set")
    m, mu = [], []
    for j in range(1, 5):
        m.append(_real_expectation(state, ladders.normal_ordered(j)))
        mu.append(_real_expectation(state, ladders.number_power(j)))
    # m_1 and mu_1 are the same operator
    mu[0] = m[0]
    return MomentSet(tuple(m), tuple(mu), state.label)


def moment_matrix(values) -> np.ndarray:
    v1, v2, v3, v4 = values
    return np.array([[1.0, v1, v2], [v1, v2, v3], [v2, v3, v4]])


@dataclass(frozen=True)
class A3Result:
    value: float
    det_m: float
    det_mu: float
    degenerate: bool = False


def a3_parameter(ms: MomentSet) -> A3Result:
    """A3 = det m / (det mu - det m).

    A vanishing denominator yields ``degenerate=True`` and ``value=nan``; both
    determinants are always reported.
    """
    det_m = float(np.linalg.det(moment_matrix(ms.m)))
    det_mu = float(np.linalg.det(moment_matrix(ms.mu)))
    denom = det_mu - det_m
    scale = max(1.0, abs(det_mu), abs(det_m))
    if abs(denom) <= 1e-14 * scale:
        return A3Result(math.nan, det_m, det_mu, True)
    return A3Result(det_m / denom, det_m, det_mu)


def mandel_g2(state: StateVector, ladders: Ladders | None = None):
    """Mandel Q and g2(0) from <K_0> and <K_0^2>.

    Returns ``(nan, nan)`` when the mean photon number vanishes.
    """
    ladders = ladders or Ladders.build(state.basis)
    n1 = _real_expectation(state, ladders.k_zero)
    n2 = _real_expectation(state, ladders.number_power(2))
    if n1 <= 0.0:
        return math.nan, math.nan
    return n2 / n1 - n1 - 1.0, (n2 - n1) / (n1 * n1)


def mean_number(state: StateVector, ladders: Ladders | None = None) -> float:
    ladders = ladders or Ladders.build(state.basis)
    return _real_expectation(state, ladders.k_zero)


@dataclass(frozen=True)
class SqueezeReport:
    r: float
    theta: float
    I1: float
    I2: float
    I3: float
    I4: float
    var_x: float
    var_p: float
    var_X: float
    var_P: float


def _variance(state, op, op_sq):
    mean = _real_expectation(state, op)
    return _real_expectation(state, op_sq) - mean * mean


def squeeze_report(state: StateVector, ladders: Ladders | None = None, r=None, theta=None) -> SqueezeReport:
    """All four squeezing identities plus the quadrature variances.

    I1..I4 come from the expectation combinations of the squeezing
    conditions; ``var_*`` come from the Hermitian quadratures
    ``x = (K_+ + K_-)/sqrt2``, ``p = i(K_+ - K_-)/sqrt2`` and their
    squared-amplitude analogues, so ``I1 = 2 var_x - 1`` and
    ``I3 = var_X/2 - <K_0> - 1/2`` are checks, not definitions.
    """
    ladders = ladders or Ladders.build(state.basis)
    _require_margin(state, SQUEEZE_MARGIN, "squeeze_report")
    e = lambda op: expectation(state, op)  # noqa: E731

    a1, b1 = e(ladders.k_minus), e(ladders.k_plus)
    a2, b2 = e(ladders.lower_power(2)), e(ladders.raise_power(2))
    a4, b4 = e(ladders.lower_power(4)), e(ladders.raise_power(4))
    n1 = e(ladders.normal_ordered(1))
    pp_mm = e(ladders.normal_ordered(2))
    mm_pp = e(ladders.anti_normal_ordered(2))

    i1 = a2 + b2 - a1 * a1 - b1 * b1 - 2 * a1 * b1 + 2 * n1
    i2 = -a2 - b2 + a1 * a1 + b1 * b1 - 2 * a1 * b1 + 2 * n1
    cross = 2 * a2 * b2
    i3 = 0.25 * (a4 + b4 - a2 * a2 - b2 * b2 - cross + pp_mm + mm_pp) - n1 - 0.5
    i4 = 0.25 * (-a4 - b4 + a2 * a2 + b2 * b2 - cross + pp_mm + mm_pp) - n1 - 0.5

    vals = []
    for v in (i1, i2, i3, i4):
        if abs(v.imag) > 1e-9 * max(1.0, abs(v)):
            raise DomainError(f"squeezing identity has imaginary part {v.imag:.3e}")
        vals.append(v.real)
    variances = [_variance(state, q, ladders.squared(q)) for q in ladders.quadratures()]
    if r is None:
        r = abs(state.parameter)
    if theta is None:
        theta = math.atan2(state.parameter.imag, state.parameter.real)
    return SqueezeReport(float(r), float(theta), *vals, *variances)


def theta_grid(n_points: int = DEFAULT_THETA_POINTS) -> np.ndarray:
    return 2 * np.pi * np.arange(n_points) / n_points


def r_grid(n_points: int = DEFAULT_R_POINTS, r_max: float = 10.0) -> np.ndarray:
    return r_max * np.arange(1, n_points + 1) / n_points


def quad_squeeze(r: float, thetas, basis: TruncatedBasis, builder=nlcs_build):
    """Squeeze reports along a theta scan of ``alpha = r exp(i theta)``."""
    ladders = Ladders.build(basis)
    return [squeeze_report(builder(r * np.exp(1j * t), basis), ladders, r, t) for t in thetas]


def amp2_squeeze(r: float, thetas, basis: TruncatedBasis, builder=nlcs_build):
    """Same scan as :func:`quad_squeeze`; fourth powers need the edge margin,
    which :func:`squeeze_report` enforces."""
    return quad_squeeze(r, thetas, basis, builder)


# --- series route ---------------------------------------------------------

def _nlcs_log_norm(r, n_terms):
    return logsumexp(nlcs_log_weights(r, n_terms))


def nlcs_moments_series(alpha: complex, n_terms: int = 400):
    """m_j and mu_j of an nlcs from closed-form sums.

    m_j = N^2 sum_{n>=j} |alpha|^(2n) / ((n-j)! (n+2)! (n+3)!)
    mu_j = N^2 sum_{n>=1} |alpha|^(2n) n^(j-1) / ((n-1)! (n+2)! (n+3)!)

    The mu_j sum is <K_0^j> written out; it uses ``(n-1)!`` where the
    printed moment formula shows ``(n-j)!``.
    """
    r = abs(complex(alpha))
    if r == 0:
        return (0.0,) * 4, (0.0,) * 4
    log_norm = _nlcs_log_norm(r, n_terms)
    lr = math.log(r)
    m, mu = [], []
    for j in range(1, 5):
        n = np.arange(j, n_terms + 1)
        logs = 2 * n * lr - log_factorial(n - j) - log_factorial(n + 2) - log_factorial(n + 3)
        m.append(math.exp(logsumexp(logs) - log_norm))
        n = np.arange(1, n_terms + 1)
        logs = (2 * n * lr + (j - 1) * np.log(n) - log_factorial(n - 1)
                - log_factorial(n + 2) - log_factorial(n + 3))
        mu.append(math.exp(logsumexp(logs) - log_norm))
    return tuple(m), tuple(mu)


def canonical_number_moments_series(zeta: complex, n_terms: int = 400):
    """<K_0> and <K_0^2> for a canonical state.

    ``exp(-|zeta|^2) sum_{n>=1} |zeta|^(2n) n^(k-1) / (n-1)!`` for k = 1, 2;
    the exponential prefactor is the state normalization.
    """
    r = abs(complex(zeta))
    if r == 0:
        return 0.0, 0.0
    n = np.arange(1, n_terms + 1)
    base = -r * r + 2 * n * math.log(r) - log_factorial(n - 1)
    return math.exp(logsumexp(base)), math.exp(logsumexp(base + np.log(n)))


def mandel_from_moments(n1: float, n2: float):
    return n2 / n1 - n1 - 1.0, (n2 - n1) / (n1 * n1)
