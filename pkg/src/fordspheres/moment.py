"""First moment of radius sums over consecutive Ford sphere pairs.

Three routes to the same quantity:

  direct      enumerate the fractions at level S, find every unordered
              consecutive pair geometrically, and add the radius sums
              1/(2|s|^2) + 1/(2|s'|^2) in exact rational arithmetic;

  counting    2 * sum over canonical |s| <= S of N(s)/|s|^2, where N(s)
              counts consecutive partner denominators for s as lattice
              points of the consecutivity region coprime to s; under the
              'omega_full' normalization N(s) is the full-plane count,
              under 'omega_quarter' one representative per unit orbit
              (exactly a quarter of the full count);

  main_term   the asymptotic pi * zeta_i^{-1}(2) * (8C - 1) * S^2, with
              C = -int_0^{1/sqrt 2} ln(sqrt 2 u) sqrt(1 - u^2) du.

The counting value under 'omega_full' converges to the main term.  The
direct value agrees with 'omega_quarter' up to the contribution of
denominator pairs on the real axis (which realize eight fraction pairs
instead of four), so the full/direct ratio drifts slowly toward 4; the
calibration helper measures that ratio on the exactly computable range.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np
from scipy.integrate import quad

from .gint import DomainError, GInt, norm
from . import arith, farey, region

DIRECT_CAP_DEFAULT = 12
COUNTING_CAP_DEFAULT = 256
ZETA_RADIUS_DEFAULT = 2000

NORMALIZATIONS = ("omega_full", "omega_quarter")
METHODS = ("direct", "counting", "main_term")


@dataclass(frozen=True)
class ConstantsBundle:
    """Numerical constants feeding the main term.

    main_coeff = pi * zeta_i_inv_2 * (8 C - 1);  z1 = (pi/8) zeta_i_inv_2.
    z2_estimate (fitted intercept of the phi/norm^2 log law minus z1) is
    filled only on request, it needs a large sieve.
    """

    C: float
    zeta_i_2: float
    zeta_i_inv_2: float
    main_coeff: float
    z1: float
    zeta_radius: float
    z2_estimate: float | None = None

    def validate(self) -> None:
        if not self.C > 0.5:
            raise ArithmeticError("C <= 1/2, main coefficient would lose positivity")
        if not self.main_coeff > 0:
            raise ArithmeticError("main coefficient must be positive")


@dataclass(frozen=True)
class MomentReport:
    """One row of a moment sweep."""

    S: int
    method: str
    value: float
    main_term: float
    residual: float
    normalization: str
    elapsed: float


def constant_C(tol: float = 1e-10) -> float:
    """-int_0^{1/sqrt2} ln(sqrt2 u) sqrt(1-u^2) du by adaptive quadrature.

    The integrand has an integrable logarithmic singularity at 0 that
    Gauss-Kronrod subdivision absorbs without help.
    """
    val, err = quad(
        lambda u: -math.log(math.sqrt(2.0) * u) * math.sqrt(1.0 - u * u),
        0.0,
        1.0 / math.sqrt(2.0),
        epsabs=tol,
        epsrel=tol,
        limit=200,
    )
    if err > 100 * tol:
        raise ArithmeticError(f"quadrature error estimate {err} above tolerance")
    return val


def constant_C_tanh_sinh(dps: int = 25) -> float:
    """Same integral by tanh-sinh quadrature (mpmath), an independent scheme."""
    import mpmath

    with mpmath.workdps(dps):
        val = mpmath.quad(
            lambda u: -mpmath.log(mpmath.sqrt(2) * u) * mpmath.sqrt(1 - u * u),
            [0, 1 / mpmath.sqrt(2)],
        )
        return float(val)


def constant_C_series(terms: int = 60) -> float:
    """Series oracle: expanding sqrt(1-u^2) = sum a_k u^(2k) and integrating
    termwise gives C = sum a_k 2^(-k-1/2) / (2k+1)^2, geometrically fast."""
    total = 0.0
    a_k = 1.0
    for k in range(terms):
        total += a_k * 2.0 ** (-k - 0.5) / (2 * k + 1) ** 2
        a_k *= (2 * k - 1) / (2 * k + 2)
    return total


_bundle_cache: dict[tuple[float, bool], ConstantsBundle] = {}


def constants_bundle(zeta_radius: float = ZETA_RADIUS_DEFAULT, with_z2: bool = False) -> ConstantsBundle:
    """Compute (and cache) the constants used by every main-term evaluation."""
    key = (float(zeta_radius), with_z2)
    if key in _bundle_cache:
        return _bundle_cache[key]
    C = constant_C()
    zt = arith.zeta_i_truncated(2, zeta_radius)
    # the truncated product must sit within the tail allowance
    tail = 20.0 / (zeta_radius * zeta_radius)
    if abs(zt.value * zt.inverse_value - 1.0) > tail:
        raise ArithmeticError("zeta truncation inconsistent beyond tail bound")
    z1 = math.pi / 8.0 * zt.inverse_value
    z2 = None
    if with_z2:
        ladder = [64, 128, 256, 512, 1024, 2048]
        _, intercept = fit_phi_over_norm4(ladder)
        z2 = intercept - z1
    bundle = ConstantsBundle(
        C=C,
        zeta_i_2=zt.value,
        zeta_i_inv_2=zt.inverse_value,
        main_coeff=math.pi * zt.inverse_value * (8.0 * C - 1.0),
        z1=z1,
        zeta_radius=float(zeta_radius),
        z2_estimate=z2,
    )
    bundle.validate()
    _bundle_cache[key] = bundle
    return bundle


def main_term(S: int, bundle: ConstantsBundle | None = None) -> float:
    """pi * zeta_i^{-1}(2) * (8C - 1) * S^2."""
    if S < 0:
        raise DomainError("S must be >= 0")
    if bundle is None:
        bundle = constants_bundle()
    return bundle.main_coeff * float(S) * float(S)


def moment_first_direct(S: int, cap: int = DIRECT_CAP_DEFAULT) -> MomentReport:
    """Exact direct evaluation: scan all consecutive fraction pairs.

    Rational accumulation throughout; the float conversion happens once at
    the end.  Pair enumeration grows like S^8 in the worst case, hence the
    cap; use the counting route beyond it.
    """
    if S > cap:
        raise DomainError(
            f"direct method capped at S = {cap} (quartic pair scan); "
            f"use method='counting' for larger S"
        )
    t0 = time.perf_counter()
    total = Fraction(0)
    for f1, f2 in farey.consecutive_pairs(S):
        total += Fraction(1, 2 * norm(f1.den)) + Fraction(1, 2 * norm(f2.den))
    value = float(total)
    mt = main_term(S)
    return MomentReport(
        S=S,
        method="direct",
        value=value,
        main_term=mt,
        residual=value - mt,
        normalization="none",
        elapsed=time.perf_counter() - t0,
    )


def _canonical_denominators(S: int) -> list[GInt]:
    rex, imy, _ = arith.canonical_cells(S * S)
    return [GInt(int(x), int(y)) for x, y in zip(rex, imy)]


def _partner_counts(args: tuple[int, list[tuple[int, int]]]) -> list[int]:
    """Full-plane coprime region counts for a chunk of denominators."""
    S, chunk = args
    out = []
    for a, b in chunk:
        spec = region.OmegaSpec(GInt(a, b), S)
        out.append(region.omega_lattice_count(spec, coprime_filter=True))
    return out


def consecutive_partner_counts(S: int, threads: int = 1) -> list[int]:
    """N(s) for every canonical |s| <= S in sieve order (full-plane counts).

    threads > 1 splits the denominator list into contiguous chunks handled
    by worker processes; the reduction re-concatenates in the original
    order, so the result is identical for any thread count.
    """
    denoms = [(q.re, q.im) for q in _canonical_denominators(S)]
    if threads <= 1 or len(denoms) < 64:
        return _partner_counts((S, denoms))
    import multiprocessing as mp

    chunk_size = (len(denoms) + threads - 1) // threads
    chunks = [(S, denoms[i : i + chunk_size]) for i in range(0, len(denoms), chunk_size)]
    with mp.Pool(processes=threads) as pool:
        parts = pool.map(_partner_counts, chunks)
    return [c for part in parts for c in part]


def moment_first_counting(
    S: int,
    normalization: str = "omega_full",
    threads: int = 1,
    cap: int = COUNTING_CAP_DEFAULT,
) -> MomentReport:
    """Counting evaluation 2 * sum over |s| <= S of N(s) / |s|^2.

    N(s) is the number of lattice points of the consecutivity region
    coprime to s, full-plane or one-per-unit-orbit depending on the
    normalization.  Per-denominator counts are exact integers; the outer
    accumulation is a compensated float sum in fixed sieve order.
    """
    if normalization not in NORMALIZATIONS:
        raise DomainError(f"unknown normalization {normalization!r}")
    if S > cap:
        raise DomainError(f"counting method capped at S = {cap}; raise cap= explicitly")
    t0 = time.perf_counter()
    counts = consecutive_partner_counts(S, threads=threads)
    denoms = _canonical_denominators(S)
    quarter = normalization == "omega_quarter"
    terms = []
    for q, c in zip(denoms, counts):
        c_used = c // 4 if quarter else c
        terms.append(c_used / norm(q))
    value = 2.0 * math.fsum(terms)
    mt = main_term(S)
    return MomentReport(
        S=S,
        method="counting",
        value=value,
        main_term=mt,
        residual=value - mt,
        normalization=normalization,
        elapsed=time.perf_counter() - t0,
    )


def moment_main_term_report(S: int) -> MomentReport:
    t0 = time.perf_counter()
    mt = main_term(S)
    return MomentReport(
        S=S,
        method="main_term",
        value=mt,
        main_term=mt,
        residual=0.0,
        normalization="none",
        elapsed=time.perf_counter() - t0,
    )


def calibration_ratios(S_values: Iterable[int] = range(4, 13)) -> dict[int, float]:
    """counting(omega_full) / direct per S; the measured normalization gap."""
    out = {}
    for S in S_values:
        d = moment_first_direct(S).value
        c = moment_first_counting(S).value
        out[S] = c / d
    return out


# ---------------------------------------------------------------------------
# the intermediate sums behind the main-term derivation
# ---------------------------------------------------------------------------


def sum_A(S: int) -> tuple[float, float]:
    """(sum over |s| <= S of phi_i(s)/|s|^4 * area(s, S), prediction).

    Uses grouped norms: the area depends on s only through |s|, so terms
    with equal norm share one area evaluation.  The prediction is
    (pi/2) zeta_i^{-1}(2) (8C - 1) S^2.
    """
    if S < 1:
        raise DomainError("S must be >= 1")
    sieve = arith.get_sieve(S * S)
    sl = sieve.upto(S)
    norms = sieve.norms[sl]
    phis = sieve.phi[sl].astype(np.float64)
    uniq, inverse = np.unique(norms, return_inverse=True)
    phi_by_norm = np.bincount(inverse, weights=phis)
    fS = float(S)
    fn = uniq.astype(np.float64)
    s_abs = np.sqrt(fn)
    t_star = np.arcsin(s_abs / (math.sqrt(2.0) * fS))
    areas = (
        4.0 * fS * fS * t_star
        + 2.0 * math.sqrt(2.0) * fS * s_abs * np.sqrt(1.0 - fn / (2.0 * fS * fS))
        - 2.0 * fn
    )
    exact = float(np.sum(phi_by_norm / (fn * fn) * areas))
    bundle = constants_bundle()
    prediction = math.pi / 2.0 * bundle.zeta_i_inv_2 * (8.0 * bundle.C - 1.0) * S * S
    return exact, prediction


def sum_B(S: int, epsilon: float = 0.1) -> float:
    """sum over |s| <= S of surrogate_boundary_length / |s|^(2 - epsilon),
    with the constant surrogate 8 pi S."""
    if not 0.0 < epsilon < 1.0:
        raise DomainError("epsilon must be in (0, 1)")
    _, _, nrm = arith.canonical_cells(S * S)
    weights = nrm.astype(np.float64) ** (-(1.0 - epsilon / 2.0))
    return 8.0 * math.pi * S * float(np.sum(weights))


def sum_B_growth(ladder: Sequence[int], epsilon: float = 0.1) -> list[tuple[int, float]]:
    """(S, B(S)/S^(1+epsilon)) along a ladder; the growth diagnostic."""
    return [(S, sum_B(S, epsilon) / S ** (1.0 + epsilon)) for S in ladder]


def sum_phi_over_norm2(S: int) -> tuple[float, float]:
    """(sum of phi_i(s)/|s|^2 over |s| <= S, prediction (pi/4) zeta_i^{-1}(2) S^2)."""
    sieve = arith.get_sieve(S * S)
    sl = sieve.upto(S)
    fn = sieve.norms[sl].astype(np.float64)
    exact = float(np.sum(sieve.phi[sl].astype(np.float64) / fn))
    bundle = constants_bundle()
    return exact, math.pi / 4.0 * bundle.zeta_i_inv_2 * S * S


def sum_phi_over_norm4(S: int) -> float:
    """sum of phi_i(s)/|s|^4 over canonical |s| <= S; grows like
    4 z1 ln S + (z1 + z2)."""
    sieve = arith.get_sieve(S * S)
    sl = sieve.upto(S)
    fn = sieve.norms[sl].astype(np.float64)
    return float(np.sum(sieve.phi[sl].astype(np.float64) / (fn * fn)))


def fit_phi_over_norm4(ladder: Sequence[int]) -> tuple[float, float]:
    """Least-squares fit a*ln(S) + b of sum_phi_over_norm4 over the ladder."""
    xs = np.log(np.array(ladder, dtype=np.float64))
    ys = np.array([sum_phi_over_norm4(S) for S in ladder])
    slope, intercept = np.polyfit(xs, ys, 1)
    return float(slope), float(intercept)


# ---------------------------------------------------------------------------
# sweeps
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SweepResult:
    reports: list[MomentReport]
    errors: list[tuple[int, str, str]]  # (S, method, message)
    bundle: ConstantsBundle


def report_sweep(
    S_values: Sequence[int],
    methods: Sequence[str] = ("direct", "counting"),
    normalization: str = "omega_full",
    threads: int = 1,
    direct_cap: int = DIRECT_CAP_DEFAULT,
    counting_cap: int = COUNTING_CAP_DEFAULT,
) -> SweepResult:
    """Run every (S, method) cell, collecting per-row failures instead of
    aborting the sweep."""
    for m in methods:
        if m not in METHODS:
            raise DomainError(f"unknown method {m!r}")
    reports: list[MomentReport] = []
    errors: list[tuple[int, str, str]] = []
    for S in S_values:
        for m in methods:
            try:
                if m == "direct":
                    reports.append(moment_first_direct(S, cap=direct_cap))
                elif m == "counting":
                    reports.append(
                        moment_first_counting(
                            S, normalization=normalization, threads=threads, cap=counting_cap
                        )
                    )
                else:
                    reports.append(moment_main_term_report(S))
            except Exception as exc:  # noqa: BLE001 - row failures are data
                errors.append((S, m, str(exc)))
    return SweepResult(reports=reports, errors=errors, bundle=constants_bundle())
