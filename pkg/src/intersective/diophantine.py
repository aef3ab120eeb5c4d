"""Fractional-part experiments over primes.

Weighted exponential sums with the prime-in-progression weight
lambda_{m,b}(n) = log(mn + b) when mn + b is prime, evaluation of the
Weyl-type bound formulas, brute-force simultaneous rational approximation,
a constructive witness for the exponential-sum lower bound under a
separation hypothesis, and the minimum of max_i ||v_i(p)|| over primes p,
where v = A (h_1(p), ..., h_k(p)) for an integer polynomial family h and a
real matrix A.

Fractional parts of alpha * n for huge integers n are computed exactly: a
double is a dyadic rational, so alpha * n mod 1 reduces to one big-integer
multiplication and one modular reduction, keeping every reported fractional
part correct to the last bit instead of losing all precision once the
polynomial values pass 2^53.
"""

from __future__ import annotations

import concurrent.futures
import math
import statistics
from dataclasses import dataclass
from math import gcd

import numpy as np

from .arith import primes_in_range
from .polys import IntPoly

MAX_SUM_RANGE = 10 ** 9


@dataclass(frozen=True, init=False)
class RealPoly:
    """Real polynomial alpha_0 + alpha_1 x + ... + alpha_k x^k."""

    coeffs: tuple[float, ...]

    def __init__(self, coeffs=()):
        cs = [float(c) for c in coeffs]
        for c in cs:
            if not math.isfinite(c):
                raise ValueError("coefficients must be finite")
        while cs and cs[-1] == 0.0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1


@dataclass(frozen=True)
class WeightSpec:
    """Progression parameters (m, b) for the weight log(mn + b) at primes."""

    m: int
    b: int

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("m must be a positive integer")
        if not 0 <= self.b < self.m and not (self.m == 1 and self.b == 0):
            raise ValueError("b must lie in [0, m)")
        if gcd(self.b, self.m) != 1:
            raise ValueError("b must be coprime to m")


@dataclass(frozen=True)
class SearchResult:
    """Minimizing prime for max_i ||v_i(p)|| together with the value vector."""

    p: int
    values: tuple[float, ...]
    max_frac: float
    N: int
    d: int | None = None
    r_d: int | None = None


def frac_norm(x: float) -> float:
    """Distance from x to the nearest integer, in [0, 1/2]."""
    if not math.isfinite(x):
        raise ValueError("frac_norm needs a finite value")
    f = x % 1.0
    return min(f, 1.0 - f)


def frac_mul(alpha: float, n: int) -> float:
    """Exact fractional part of alpha * n in [0, 1) for float alpha, int n."""
    num, den = alpha.as_integer_ratio()
    return (num * n) % den / den


def sieve_primes(N: int, progression: tuple[int, int] | None = None) -> list[int]:
    """Primes <= N, restricted to p = r mod d when a progression is given."""
    if N < 1:
        raise ValueError("N must be a positive integer")
    primes = primes_in_range(2, N)
    if progression is None:
        return primes
    d, r = progression
    if d < 1:
        raise ValueError("progression modulus must be positive")
    r %= d
    if gcd(r, d) != 1:
        raise ValueError(f"progression {r} mod {d} is not coprime")
    return [p for p in primes if p % d == r]


def weights(w: WeightSpec, N: int) -> list[float]:
    """Vector of lambda_{m,b}(n) for n = 1..N (index n-1)."""
    if N < 1:
        raise ValueError("N must be a positive integer")
    prime_set = set(primes_in_range(w.m + w.b, w.m * N + w.b))
    return [math.log(w.m * n + w.b) if w.m * n + w.b in prime_set else 0.0
            for n in range(1, N + 1)]


def weight_sum_bounds_check(w: WeightSpec, N: int, L: float) -> tuple[float, float, float]:
    """Weight sum over n = 1..N next to its bracketing quantities N/m^2, N*m.

    Requires m <= N^(1/L); no implied constant is asserted, the three numbers
    are returned for inspection.
    """
    if L <= 0:
        raise ValueError("L must be positive")
    if w.m > N ** (1.0 / L):
        raise ValueError(f"m = {w.m} exceeds N^(1/L) = {N ** (1.0 / L):.3f}")
    total = math.fsum(weights(w, N))
    return total, N / w.m ** 2, N * w.m


class _Neumaier:
    """Compensated scalar accumulator."""

    __slots__ = ("s", "c")

    def __init__(self):
        self.s = 0.0
        self.c = 0.0

    def add(self, x: float) -> None:
        t = self.s + x
        if abs(self.s) >= abs(x):
            self.c += (self.s - t) + x
        else:
            self.c += (x - t) + self.s
        self.s = t

    @property
    def total(self) -> float:
        return self.s + self.c


def _phase(f: RealPoly, n: int) -> float:
    """Exact value of f(n) mod 1."""
    acc = 0.0
    power = 1
    for a in f.coeffs:
        if a:
            acc += frac_mul(a, power)
        power *= n
    return acc % 1.0


def _exp_sum_block(f: RealPoly, w: WeightSpec, lo: int, hi: int) -> complex:
    prime_set = set(primes_in_range(w.m * lo + w.b, w.m * hi + w.b))
    re = _Neumaier()
    im = _Neumaier()
    two_pi = 2.0 * math.pi
    for n in range(lo, hi + 1):
        v = w.m * n + w.b
        if v in prime_set:
            lam = math.log(v)
            theta = two_pi * _phase(f, n)
            re.add(lam * math.cos(theta))
            im.add(lam * math.sin(theta))
    return complex(re.total, im.total)


def exp_sum(f: RealPoly, w: WeightSpec, lo: int, hi: int, *, jobs: int = 1) -> complex:
    """Sum of lambda_{m,b}(n) e(f(n)) over lo <= n <= hi.

    Accumulated with compensated summation; an empty range gives 0. With
    jobs > 1 the range splits into contiguous blocks whose compensated block
    sums are combined in index order, so results are deterministic per job
    count.
    """
    if lo < 1:
        raise ValueError("range must start at 1 or later")
    if hi > MAX_SUM_RANGE:
        raise ValueError(f"range end exceeds guard of {MAX_SUM_RANGE}")
    if hi < lo:
        return complex(0.0, 0.0)
    if jobs <= 1 or hi - lo < 4 * jobs:
        return _exp_sum_block(f, w, lo, hi)
    bounds = _split_range(lo, hi, jobs)
    with concurrent.futures.ProcessPoolExecutor(max_workers=jobs) as pool:
        blocks = list(pool.map(_exp_sum_worker,
                               [(f.coeffs, w.m, w.b, a, b) for a, b in bounds]))
    re = _Neumaier()
    im = _Neumaier()
    for z in blocks:
        re.add(z.real)
        im.add(z.imag)
    return complex(re.total, im.total)


def _exp_sum_worker(payload) -> complex:
    coeffs, m, b, lo, hi = payload
    return _exp_sum_block(RealPoly(coeffs), WeightSpec(m, b), lo, hi)


def _split_range(lo: int, hi: int, parts: int) -> list[tuple[int, int]]:
    n = hi - lo + 1
    size = (n + parts - 1) // parts
    return [(a, min(a + size - 1, hi)) for a in range(lo, hi + 1, size)]


def weyl_bound_eval(k: int, q: float, N: float, m: float, eps: float) -> float:
    """Right-hand side of the Weyl-type exponential sum bound, as written.

    No implied constant: for k > 1 this is
    (N m)^(1+eps) (q^-1 + (N m)^-1/2 + q N^-k)^(4^(1-k)), and for k = 1 it is
    N m (log N)^4 (q^-1/2 + (N m)^-1/5 + N^-1/2 q^1/2).
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if q <= 0 or N <= 0 or m <= 0:
        raise ValueError("q, N, m must be positive")
    if k == 1:
        return N * m * math.log(N) ** 4 * (q ** -0.5 + (N * m) ** -0.2
                                           + N ** -0.5 * q ** 0.5)
    inner = 1.0 / q + (N * m) ** -0.5 + q * N ** float(-k)
    return (N * m) ** (1.0 + eps) * inner ** (4.0 ** (1 - k))


def simultaneous_approx(alphas, Q: int, weights=None) -> tuple[int, list[float]]:
    """Exhaustive scan q = 1..Q minimizing max_j ||q alpha_j|| * weight_j.

    Returns the minimizing q (smallest on ties) and the unweighted vector
    ||q alpha_j|| at that q.
    """
    alphas = [float(a) for a in alphas]
    if Q < 1:
        raise ValueError("Q must be a positive integer")
    if weights is None:
        weights = [1.0] * len(alphas)
    if len(weights) != len(alphas):
        raise ValueError("weights length must match alphas")
    best_q, best_err = 1, math.inf
    for q in range(1, Q + 1):
        err = max((frac_norm(frac_mul(a, q)) * wt
                   for a, wt in zip(alphas, weights)), default=0.0)
        if err < best_err:
            best_q, best_err = q, err
    errs = [frac_norm(frac_mul(a, best_q)) for a in alphas]
    return best_q, errs


def montgomery_witness(xs, cs, M: int) -> tuple[int, float]:
    """Witness t in 1..M with |sum c_n e(t x_n)| >= (sum c_n) / (6M).

    Requires ||x_i|| >= 1/M for every i (violations are reported by index).
    Scans all t and returns the maximizer (largest t on exact ties) with the
    achieved |S_t|; the existence bound is asserted on the way out.
    """
    xs = np.asarray(list(xs), dtype=float)
    cs = np.asarray(list(cs), dtype=float)
    if xs.shape != cs.shape or xs.ndim != 1 or xs.size == 0:
        raise ValueError("xs and cs must be equal-length nonempty vectors")
    if M < 1:
        raise ValueError("M must be a positive integer")
    if np.any(cs < 0):
        raise ValueError("weights must be nonnegative")
    fx = xs % 1.0
    norms = np.minimum(fx, 1.0 - fx)
    bad = np.flatnonzero(norms < 1.0 / M)
    if bad.size:
        raise ValueError(
            f"hypothesis ||x_i|| >= 1/M violated at indices {bad.tolist()}")
    ts = np.arange(1, M + 1)
    sums = np.exp(2j * math.pi * np.outer(ts, xs)) @ cs
    mags = np.abs(sums)
    best = mags.max()
    t = int(np.flatnonzero(mags == best)[-1]) + 1
    floor = float(cs.sum()) / (6.0 * M)
    if best < floor:
        raise ArithmeticError("separation lower bound violated; "
                              "this should be impossible")
    return t, float(best)


def _eval_frac_vector(hs, A, p: int) -> list[float]:
    """||v_i(p)|| for v = A (h_1(p), ..., h_k(p)), computed exactly mod 1."""
    values = [h.eval(p) for h in hs]
    out = []
    for row in A:
        acc = 0.0
        for a, hv in zip(row, values):
            if a:
                acc += frac_mul(a, hv)
        out.append(frac_norm(acc))
    return out


def _search_block(payload):
    h_coeffs, A, primes = payload
    hs = [IntPoly(cs) for cs in h_coeffs]
    best = None
    for p in primes:
        vals = _eval_frac_vector(hs, A, p)
        mf = max(vals)
        if best is None or mf < best[0]:
            best = (mf, p, vals)
    return best


def search_min_frac(hs, A, N: int,
                    progression: tuple[int, int] | None = None, *,
                    jobs: int = 1) -> SearchResult:
    """Minimize max_i ||v_i(p)|| over primes p <= N (optionally p = r mod d).

    Polynomial values are computed as exact integers and reduced mod 1
    exactly before the double-precision max; ties go to the smallest prime.
    """
    hs = [h for h in hs]
    A = [list(map(float, row)) for row in A]
    if not A or any(len(row) != len(hs) for row in A):
        raise ValueError("A must be an l x k matrix with k = len(hs)")
    if N < 2:
        raise ValueError("N must be at least 2")
    primes = sieve_primes(N, progression)
    if not primes:
        raise ValueError("no prime in the requested range/progression")

    if jobs <= 1 or len(primes) < 4 * jobs:
        best = _search_block(([h.coeffs for h in hs], A, primes))
    else:
        size = (len(primes) + jobs - 1) // jobs
        chunks = [primes[i:i + size] for i in range(0, len(primes), size)]
        payloads = [([h.coeffs for h in hs], A, chunk) for chunk in chunks]
        with concurrent.futures.ProcessPoolExecutor(max_workers=jobs) as pool:
            results = [r for r in pool.map(_search_block, payloads) if r]
        best = min(results, key=lambda t: (t[0], t[1]))

    mf, p, vals = best
    d, r_d = progression if progression is not None else (None, None)
    return SearchResult(p=p, values=tuple(vals), max_frac=mf, N=N, d=d, r_d=r_d)


@dataclass(frozen=True)
class ThetaFit:
    """Log-log regression of the search minima against the bound N."""

    slope: float
    intercept: float
    points: tuple[tuple[int, float], ...]


def theta_fit(hs, A, Ns, progression: tuple[int, int] | None = None, *,
              jobs: int = 1) -> ThetaFit:
    """Least-squares slope of log(min max ||v_i(p)||) against log N.

    The slope is an empirical decay exponent for the searched family only;
    it estimates nothing beyond the sampled range. All-zero minima (an
    integral matrix A, say) are rejected since the log is undefined.
    """
    Ns = [int(n) for n in Ns]
    if len(Ns) < 3:
        raise ValueError("need at least three bounds")
    if any(b <= a for a, b in zip(Ns, Ns[1:])):
        raise ValueError("bounds must be strictly increasing")
    points = []
    for n in Ns:
        res = search_min_frac(hs, A, n, progression, jobs=jobs)
        points.append((n, res.max_frac))
    if any(mf == 0.0 for _, mf in points):
        raise ValueError("degenerate: zero minima")
    xs = [math.log(n) for n, _ in points]
    ys = [math.log(mf) for _, mf in points]
    if all(y == ys[0] for y in ys):
        return ThetaFit(slope=0.0, intercept=ys[0], points=tuple(points))
    fit = statistics.linear_regression(xs, ys)
    return ThetaFit(slope=fit.slope, intercept=fit.intercept,
                    points=tuple(points))
