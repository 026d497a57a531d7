"""Young functions and the two standard norms they induce on a windowed model.

The gauge (Luxemburg) norm is the smallest scaling that pushes the modular
integral down to 1; it is found by bisection on a bracketed scaling, so the
returned value always satisfies the defining inequality at value*(1+rtol).
The dual-style norm is evaluated through its infimum form
inf_k (1 + modular(k f)) / k, which is convex in 1/k, so a coarse log-spaced
scan followed by golden-section refinement finds the minimum deterministically.
Infinity is an explicit sentinel (math.inf), never a float overflow.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import RTOL_NORM, NonFiniteIntegrand
from .functions import SparseFunction
from .hypergroups import HypergroupModel

_GRID_DEFAULT = tuple(x / 2.0 for x in range(1, 101))  # 0.5 .. 50.0
_REFUTE_RATIO = 1e6


@dataclass(frozen=True)
class YoungFunction:
    """Convex function vanishing at 0 and unbounded at infinity.

    kind is one of "phi_p" (t^p / p), "exp_minus_linear" (e^t - t - 1),
    "cosh_minus_one", or "tabulated" (piecewise linear through knots, final
    slope extrapolated).  ``delta2`` records doubling regularity: "proven"
    analytically, "refuted", or "unknown".
    """

    kind: str
    p: float | None = None
    knots: tuple[tuple[float, float], ...] | None = None
    delta2: str = "unknown"
    strictly_increasing: bool = True

    def __call__(self, t: float) -> float:
        if t < 0.0:
            raise ValueError("young functions are evaluated on [0, inf)")
        if t == math.inf:
            return math.inf
        if self.kind == "phi_p":
            p = self.p
            if t > 0.0 and p * math.log10(t) > 308.0:
                return math.inf
            return t**p / p
        if self.kind == "exp_minus_linear":
            if t >= 710.0:
                return math.inf
            return math.expm1(t) - t
        if self.kind == "cosh_minus_one":
            if t >= 1420.0:
                return math.inf
            s = math.sinh(t / 2.0)
            return 2.0 * s * s
        return self._tab_eval(t)

    def _tab_eval(self, t: float) -> float:
        ks = self.knots
        if t >= ks[-1][0]:
            t0, y0 = ks[-1]
            return y0 + self._final_slope() * (t - t0)
        lo, hi = 0, len(ks) - 1
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if ks[mid][0] <= t:
                lo = mid
            else:
                hi = mid
        t0, y0 = ks[lo]
        t1, y1 = ks[hi]
        return y0 + (y1 - y0) * (t - t0) / (t1 - t0)

    def _final_slope(self) -> float:
        (t0, y0), (t1, y1) = self.knots[-2], self.knots[-1]
        return (y1 - y0) / (t1 - t0)

    def derivative(self, t: float) -> float:
        """Right derivative; monotone nondecreasing by convexity."""
        if self.kind == "phi_p":
            p = self.p
            if t == 0.0:
                return 1.0 if p == 1.0 else 0.0
            if (p - 1.0) * math.log10(t) > 308.0:
                return math.inf
            return t ** (p - 1.0)
        if self.kind == "exp_minus_linear":
            return math.inf if t >= 710.0 else math.expm1(t)
        if self.kind == "cosh_minus_one":
            return math.inf if t >= 710.0 else math.sinh(t)
        ks = self.knots
        for i in range(len(ks) - 1):
            if t < ks[i + 1][0]:
                return (ks[i + 1][1] - ks[i][1]) / (ks[i + 1][0] - ks[i][0])
        return self._final_slope()


def phi_p(p: float) -> YoungFunction:
    """t^p / p.  Doubling regularity is analytic: ratio constant at 2^p."""
    if p < 1.0:
        raise ValueError("exponent must satisfy p >= 1")
    return YoungFunction(kind="phi_p", p=float(p), delta2="proven")


def exp_minus_linear() -> YoungFunction:
    return YoungFunction(kind="exp_minus_linear", delta2="refuted")


def cosh_minus_one() -> YoungFunction:
    return YoungFunction(kind="cosh_minus_one", delta2="refuted")


def tabulated_young(knots) -> YoungFunction:
    """Piecewise-linear Young function through the given (t, value) knots.

    Requires knots starting at (0, 0), strictly increasing abscissae,
    nondecreasing slopes (convexity), and a strictly positive final slope so
    the extrapolation is unbounded.
    """
    ks = tuple((float(t), float(v)) for t, v in knots)
    if len(ks) < 2 or ks[0] != (0.0, 0.0):
        raise ValueError("knots must start at (0, 0) and contain at least two points")
    slopes = []
    for (t0, y0), (t1, y1) in zip(ks, ks[1:]):
        if t1 <= t0:
            raise ValueError("knot abscissae must be strictly increasing")
        if y1 < y0:
            raise ValueError("knot values must be nondecreasing")
        slopes.append((y1 - y0) / (t1 - t0))
    for s0, s1 in zip(slopes, slopes[1:]):
        if s1 < s0 - 1e-15:
            raise ValueError("knot slopes must be nondecreasing (convexity)")
    if slopes[-1] <= 0.0:
        raise ValueError("final slope must be positive so the function is unbounded")
    strictly = all(y1 > y0 for (_, y0), (_, y1) in zip(ks, ks[1:]))
    return YoungFunction(kind="tabulated", knots=ks, strictly_increasing=strictly)


def young_eval(phi: YoungFunction, t: float) -> float:
    return phi(t)


def young_inverse(phi: YoungFunction, y: float) -> float:
    """Smallest t with phi(t) >= y, by doubling then bisection."""
    if y <= 0.0:
        return 0.0
    hi = 1.0
    while phi(hi) < y:
        hi *= 2.0
        if hi > 1e300:
            raise NonFiniteIntegrand("young function never reaches the target level")
    lo = 0.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if phi(mid) >= y:
            hi = mid
        else:
            lo = mid
        if hi - lo <= 1e-14 * max(hi, 1.0):
            break
    return hi


def complementary_eval(phi: YoungFunction, y: float) -> float:
    """Value of the complementary function sup_x (x y - phi(x)).

    Analytic for the power kinds; exact knot scan for tabulated functions;
    derivative bisection otherwise.  Unbounded suprema return math.inf.
    """
    if y < 0.0:
        raise ValueError("complementary functions are evaluated on [0, inf)")
    if y == 0.0:
        return 0.0
    if phi.kind == "phi_p":
        p = phi.p
        if p == 1.0:
            return 0.0 if y <= 1.0 else math.inf
        q = p / (p - 1.0)
        if q * math.log10(y) > 308.0:
            return math.inf
        return y**q / q
    if phi.kind == "tabulated":
        if y > phi._final_slope():
            return math.inf
        return max(t * y - v for t, v in phi.knots)
    # Convex smooth kinds: maximise x*y - phi(x) where phi'(x) = y.
    hi = 1.0
    while phi.derivative(hi) < y:
        hi *= 2.0
        if hi > 1e9:
            return math.inf
    lo = 0.0
    for _ in range(100):
        mid = 0.5 * (lo + hi)
        if phi.derivative(mid) >= y:
            hi = mid
        else:
            lo = mid
    x = 0.5 * (lo + hi)
    return x * y - phi(x)


@dataclass(frozen=True)
class NormResult:
    """Norm value plus the final bracket of the one-dimensional search.

    For the gauge norm the bracket lives in the same units as the value and
    its width is at most rtol * value.  For the infimum-form norm the bracket
    is over the auxiliary scaling variable.
    """

    value: float
    iterations: int
    bracket: tuple[float, float]

    def __post_init__(self):
        lo, hi = self.bracket
        if not (0.0 <= lo <= hi):
            raise ValueError("bracket must satisfy 0 <= lo <= hi")
        if self.value < 0.0:
            raise ValueError("norms are nonnegative")


def _modular(model: HypergroupModel, f: SparseFunction, phi: YoungFunction,
             scale: float) -> float:
    """Integral of phi(scale * |f|) against the invariant measure."""
    total = 0.0
    for x, v in f.values:
        t = phi(scale * abs(v))
        if t == math.inf:
            return math.inf
        total += t * model.haar[x]
        if total == math.inf:
            return math.inf
    return total


def luxemburg_norm(model: HypergroupModel, f: SparseFunction, phi: YoungFunction,
                   rtol: float = RTOL_NORM) -> NormResult:
    """Gauge norm inf{k > 0 : modular(f/k) <= 1} by bracketed bisection.

    The bracket starts from the heuristic max|f| / phi^{-1}(1 / smallest
    support weight) and is expanded geometrically until it straddles the
    defining inequality.  The returned value is the upper bracket end, so the
    inequality holds at the value itself.
    """
    if f.is_zero():
        return NormResult(0.0, 0, (0.0, 0.0))
    fmax = f.max_abs()
    m_min = min(model.haar[x] for x, _ in f.values)
    try:
        t_inv = young_inverse(phi, 1.0 / m_min)
    except NonFiniteIntegrand:
        t_inv = 0.0
    k0 = fmax / t_inv if t_inv > 0.0 else fmax
    iters = 0

    def excess(k: float) -> bool:
        return _modular(model, f, phi, 1.0 / k) > 1.0

    if excess(k0):
        lo = k0
        hi = k0
        while excess(hi):
            hi *= 2.0
            iters += 1
            if hi > 1e300:
                raise NonFiniteIntegrand("modular never falls to 1")
    else:
        hi = k0
        lo = k0
        while not excess(lo):
            hi = lo
            lo *= 0.5
            iters += 1
            if lo < 1e-300:
                # modular stays below 1 for every positive scaling: norm 0
                return NormResult(0.0, iters, (0.0, 0.0))
    while hi - lo > rtol * hi:
        mid = 0.5 * (lo + hi)
        if excess(mid):
            lo = mid
        else:
            hi = mid
        iters += 1
    return NormResult(hi, iters, (lo, hi))


def orlicz_norm(model: HypergroupModel, f: SparseFunction, phi: YoungFunction,
                rtol: float = RTOL_NORM) -> NormResult:
    """Norm through the infimum form inf_k (1 + modular(k f)) / k.

    The objective is convex in 1/k, hence unimodal along log k.  A log-spaced
    scan brackets the minimiser (extending to the right while the tail keeps
    improving, which covers linear-growth kinds whose infimum sits at
    infinity), then golden-section refines the bracket.
    """
    if f.is_zero():
        return NormResult(0.0, 0, (0.0, 0.0))
    fmax = f.max_abs()

    def objective(logk: float) -> float:
        k = math.exp(logk)
        mod = _modular(model, f, phi, k)
        if mod == math.inf:
            return math.inf
        return (1.0 + mod) / k

    lo = math.log(1e-9 / fmax)
    hi = math.log(1e12 / fmax)
    npts = 61
    iters = 0
    while True:
        step = (hi - lo) / (npts - 1)
        vals = []
        for i in range(npts):
            vals.append(objective(lo + i * step))
            iters += 1
        best = min(range(npts), key=lambda i: (vals[i], i))
        if best == npts - 1 and math.exp(hi) < 1e18 / fmax:
            lo, hi = hi - 2.0 * step, hi + (hi - lo)
            continue
        break
    a = lo + max(best - 1, 0) * step
    b = lo + min(best + 1, npts - 1) * step
    inv_gold = (math.sqrt(5.0) - 1.0) / 2.0
    x1 = b - inv_gold * (b - a)
    x2 = a + inv_gold * (b - a)
    f1, f2 = objective(x1), objective(x2)
    while b - a > 1e-13:
        iters += 1
        if f1 <= f2:
            b, x2, f2 = x2, x1, f1
            x1 = b - inv_gold * (b - a)
            f1 = objective(x1)
        else:
            a, x1, f1 = x1, x2, f2
            x2 = a + inv_gold * (b - a)
            f2 = objective(x2)
        if iters > 4000:
            break
    value = min(vals[best], objective(0.5 * (a + b)), f1, f2)
    return NormResult(value, iters, (math.exp(a), math.exp(b)))


@dataclass(frozen=True)
class Delta2Report:
    state: str                      # "proven" | "refuted" | "unknown"
    constant: float | None          # doubling constant when proven
    grid_max_ratio: float | None


def delta2_check(phi: YoungFunction, grid=_GRID_DEFAULT) -> Delta2Report:
    """Doubling regularity phi(2t) <= K phi(t).

    Proven analytically for the power kind (K = 2^p).  Otherwise grid ratios
    phi(2t)/phi(t) are examined: a ratio beyond 1e6, or a tail that keeps
    doubling, refutes; bounded inconclusive evidence stays unknown.
    """
    if phi.kind == "phi_p":
        return Delta2Report("proven", 2.0**phi.p, None)
    ratios = []
    for t in grid:
        ft = phi(t)
        if ft <= 0.0 or ft == math.inf:
            continue
        f2t = phi(2.0 * t)
        if f2t == math.inf:
            return Delta2Report("refuted", None, math.inf)
        ratios.append(f2t / ft)
    if len(ratios) < 4:
        return Delta2Report("unknown", None, max(ratios, default=None))
    tail = ratios[-max(2, len(ratios) // 4):]
    increasing = all(b > a for a, b in zip(tail, tail[1:]))
    if max(ratios) > _REFUTE_RATIO or (increasing and tail[-1] >= 2.0 * tail[0]):
        return Delta2Report("refuted", None, max(ratios))
    return Delta2Report("unknown", None, max(ratios))


@dataclass(frozen=True)
class L1EmbeddingReport:
    """Evidence that the gauge-normed space embeds into the weighted l1 space.

    Not rigorous: the constant is a minimum over a finite probe set and the
    right derivative at zero is a numerical estimate.
    """

    holds: bool
    right_derivative: float
    derivative_status: str          # "positive" | "zero" | "indeterminate"
    via_finite_window: bool
    constant_estimate: float
    rigorous: bool = False


def l1_embedding_check(model: HypergroupModel, phi: YoungFunction) -> L1EmbeddingReport:
    h = 1e-8
    d1 = phi(h) / h
    d2 = phi(h / 2.0) / (h / 2.0)
    est = 2.0 * d2 - d1
    if est >= 1e-6:
        status = "positive"
    elif abs(est) <= 1e-12:
        status = "zero"
    else:
        status = "indeterminate"
    # The window is finite, so the invariant measure of the carrier is finite
    # and the embedding holds regardless of the derivative.
    via_window = True
    holds = status == "positive" or via_window

    from .functions import indicator, integrate_haar  # local to avoid cycle at import
    probes = []
    step = max(1, len(model.carrier) // 6)
    for x in model.carrier[::step]:
        probes.append(indicator([x]))
    probes.append(indicator(model.carrier))
    mid = model.carrier[len(model.carrier) // 2]
    probes.append(indicator([model.carrier[0], mid]).scale(0.5) + indicator([mid]).scale(0.25))
    best = math.inf
    for g in probes:
        l1 = integrate_haar(model, g.abs_values())
        if l1 <= 0.0:
            continue
        ratio = orlicz_norm(model, g, phi).value / l1
        best = min(best, ratio)
    return L1EmbeddingReport(holds=holds, right_derivative=est,
                             derivative_status=status, via_finite_window=via_window,
                             constant_estimate=best)


def complementary_increasing_on(phi: YoungFunction, grid=(0.25, 0.5, 1.0, 2.0, 4.0)) -> bool:
    """Informational spot check that the complementary function increases."""
    vals = [complementary_eval(phi, y) for y in grid]
    return all(b >= a for a, b in zip(vals, vals[1:])) and any(
        b > a for a, b in zip(vals, vals[1:]))
