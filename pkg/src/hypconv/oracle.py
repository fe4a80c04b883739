"""Numerical estimate of kappa = inf Re W over the unit disk.

Re W is harmonic wherever (zF)' has no zeros, so its minimum over |z| <= r
sits on the circle |z| = r and decreases as r grows.  The oracle scans a
sequence of circles r_k = 1 - 10^(-k), records the minimum on each, and then
decides whether the minima settle (Aitken extrapolation gives the limit)
or keep falling (kappa = -inf).  Zeros of (zF)' are looked for first, since
they make kappa undefined.

For real parameters W(conj z) = conj W(z), so only the upper half circle
is evaluated.
"""

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from . import engine
from .convexity import Kind, OrderOfConvexity, W_eval, p_value
from .errors import DerivativeZero, InconclusiveError

__all__ = [
    "ScanConfig",
    "BoundaryScan",
    "ZeroScanReport",
    "default_radii",
    "boundary_profile",
    "circle_minimum",
    "classify_trend",
    "deep_probe",
    "kappa_numeric",
    "derivative_zero_scan",
    "asymptotic_divergence_check",
    "winding_number",
]


def default_radii(decades=12):
    """1 - 10^(-k) for k = 1..decades."""
    return tuple(1.0 - 10.0 ** (-k) for k in range(1, decades + 1))


@dataclass(frozen=True)
class ScanConfig:
    """Settings for :func:`kappa_numeric`.

    ``theta_samples`` counts points on the full circle; the log-spaced
    cluster near theta = 0 and the dyadic refinement come on top.
    """

    radii: tuple = field(default_factory=default_radii)
    theta_samples: int = 4096
    refine_depth: int = 8
    refine_count: int = 3
    cluster_per_decade: int = 16
    divergence_threshold: float = -1e6
    divergence_growth: float = 10.0
    zero_grid: int = 64
    check_zeros: bool = True
    deep_exponents: tuple = (16, 32, 64, 128, 256)

    def __post_init__(self):
        radii = tuple(float(r) for r in self.radii)
        if not radii or any(not 0.0 < r < 1.0 for r in radii):
            raise ValueError("radii must lie in (0, 1)")
        if any(r2 <= r1 for r1, r2 in zip(radii, radii[1:])):
            raise ValueError("radii must be strictly increasing")
        if self.theta_samples < 4:
            raise ValueError("theta_samples must be at least 4")
        object.__setattr__(self, "radii", radii)


@dataclass(frozen=True)
class ZeroScanReport:
    """Result of searching for zeros of (zF)' in |z| <= r_max."""

    found: bool
    location: complex = None
    min_modulus: float = math.inf
    winding: int = 0
    r_max: float = None


@dataclass
class BoundaryScan:
    """Everything :func:`kappa_numeric` measured.

    ``per_radius_min`` holds (radius, min Re W, argmin theta) triples.
    """

    config: ScanConfig
    per_radius_min: list = field(default_factory=list)
    trend: str = "inconclusive"
    estimate: float = None
    uncertainty: float = None
    zero_report: ZeroScanReport = None
    deep_min: list = field(default_factory=list)
    warnings: list = field(default_factory=list)

    @property
    def radii(self):
        return [r for r, _, _ in self.per_radius_min]

    @property
    def minima(self):
        return [m for _, m, _ in self.per_radius_min]


# ---------------------------------------------------------------- circles


def _re_w(p, r, theta):
    return W_eval(p, r * np.exp(1j * np.asarray(theta, dtype=float))).real


def _half_circle_grid(r, samples, per_decade):
    """theta in [0, pi]: uniform grid plus a log-spaced cluster near 0."""
    uniform = np.linspace(0.0, np.pi, samples // 2 + 1)
    s = 1.0 - r
    lo = math.log10(max(s * 1e-2, 1e-300))
    hi = math.log10(min(0.05, np.pi))
    parts = [uniform]
    if hi > lo:
        n = max(2, int(math.ceil((hi - lo) * per_decade)) + 1)
        parts.append(np.logspace(lo, hi, n))
    return np.unique(np.concatenate(parts))


def _refine(p, r, theta, values, depth, count, lo=0.0, hi=np.pi):
    """Dyadic refinement around the ``count`` lowest local minima."""
    n = theta.size
    if n < 3 or depth <= 0 or count <= 0:
        return theta, values
    interior = np.nonzero((values[1:-1] <= values[:-2]) & (values[1:-1] <= values[2:]))[0] + 1
    cand = list(interior)
    if values[0] <= values[1]:
        cand.append(0)
    if values[-1] <= values[-2]:
        cand.append(n - 1)
    cand = sorted(cand, key=lambda i: values[i])[:count]
    if not cand:
        return theta, values
    centers = theta[cand].astype(float)
    best = values[cand].astype(float)
    idx = np.asarray(cand)
    left = np.where(idx > 0, theta[np.maximum(idx - 1, 0)], theta[idx])
    right = np.where(idx < n - 1, theta[np.minimum(idx + 1, n - 1)], theta[idx])
    h = np.maximum(np.minimum(np.where(idx > 0, centers - left, np.inf), np.where(idx < n - 1, right - centers, np.inf)), 0.0)
    h = np.where(np.isfinite(h), h, 0.0)
    new_t, new_v = [], []
    for _ in range(depth):
        h = h / 2.0
        trial = np.concatenate([np.clip(centers - h, lo, hi), np.clip(centers + h, lo, hi)])
        vals = _re_w(p, r, trial)
        new_t.append(trial)
        new_v.append(vals)
        k = centers.size
        for j in range(k):
            for t, v in ((trial[j], vals[j]), (trial[j + k], vals[j + k])):
                if v < best[j]:
                    best[j] = v
                    centers[j] = t
    theta = np.concatenate([theta] + new_t)
    values = np.concatenate([values] + new_v)
    order = np.argsort(theta, kind="stable")
    return theta[order], values[order]


def circle_minimum(p, r, config=None):
    """(min Re W, argmin theta) on |z| = r, theta in [0, pi].

    Raises
    ------
    DerivativeZero
        If (zF)' vanishes at a sampled point.
    """
    cfg = config or ScanConfig()
    theta = _half_circle_grid(r, cfg.theta_samples, cfg.cluster_per_decade)
    values = _re_w(p, r, theta)
    theta, values = _refine(p, r, theta, values, cfg.refine_depth, cfg.refine_count)
    i = int(np.argmin(values))
    return float(values[i]), float(theta[i])


def boundary_profile(p, r, samples=4096, tol=1e-15, refine_depth=8, check_zeros=True):
    """Re W on the circle |z| = r, sorted by theta in (-pi, pi].

    The grid is ``samples`` uniform points plus a log-spaced cluster near
    theta = 0 and dyadic refinement (``refine_depth`` halvings) around the
    lowest local minima.

    Returns
    -------
    list of (theta, re_w)

    Raises
    ------
    DerivativeZero
        If (zF)' has a zero in |z| <= r (carries the scan report).

    Examples
    --------
    >>> from hypconv.hyp2f1 import Params
    >>> rows = boundary_profile(Params(1, 1, 2), 0.999, samples=64)
    >>> round(min(v for _, v in rows), 5)
    0.50025
    """
    if not 0.0 < r < 1.0:
        raise ValueError("r must lie in (0, 1), got %r" % r)
    if check_zeros:
        report = derivative_zero_scan(p, r)
        if report.found:
            raise DerivativeZero(
                "(zF)' vanishes at z = %s inside |z| <= %g" % (report.location, r),
                location=report.location,
                report=report,
            )
    uniform = -np.pi + 2.0 * np.pi * (np.arange(samples) + 1.0) / samples
    s = 1.0 - r
    lo = math.log10(max(s * 1e-2, 1e-300))
    hi = math.log10(0.05)
    cluster = np.logspace(lo, hi, max(2, int(math.ceil((hi - lo) * 16)) + 1)) if hi > lo else np.empty(0)
    theta = np.unique(np.concatenate([uniform, cluster, -cluster, [0.0]]))
    values = _re_w(p, r, theta)
    theta, values = _refine(p, r, theta, values, refine_depth, 3, lo=-np.pi + 1e-300, hi=np.pi)
    theta, keep = np.unique(theta, return_index=True)
    values = values[keep]
    return [(float(t), float(v)) for t, v in zip(theta, values)]


# ---------------------------------------------------------------- near z = 1


def _re_w_near_one(p, rho, u):
    """Re W at z = 1 - w, w = rho (u + i sqrt(1 - u^2)).

    For c - a - b < 1, W = (1-m)/w - (a+b-2) + N F / (w (zF)') with
    N = p - (1-a)(1-b) w; the pole term has real part (1-m) u / rho
    exactly, which keeps the O(1) real part clear of the O(1/rho)
    imaginary part.  For c - a - b > 1 the poles cancel, so W is formed
    directly from F'' instead.
    """
    w = rho * (u + 1j * np.sqrt(np.maximum(1.0 - u * u, 0.0)))
    f, d1, d2 = engine.hyp2f1_d_near_one(p.a, p.b, p.c, w, scaled=True)
    z = 1.0 - w
    with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
        if p.m < 1.0:
            n = p_value(p) - (1.0 - p.a) * (1.0 - p.b) * w
            tail = n * f / (w * f + z * d1)
            re = (1.0 - p.m) * u / rho - (p.a + p.b - 2.0) + tail.real
        else:
            re = (1.0 + z * (2.0 * d1 + z * d2 / w) / (w * f + z * d1)).real
    return np.where(np.isfinite(re), re, np.inf)


def deep_probe(p, exponents=(16, 32, 64, 128, 256), samples=256, refine_depth=12):
    """Minimum of Re W on arcs |1 - z| = 10^(-k) inside the disk.

    These arcs reach far closer to z = 1 than any circle |z| = r with r a
    double, so slow growth there (a small power of 1/|1-z|, or a
    logarithm) still shows up.  Each arc is parametrised by
    u = Re(1 - z)/|1 - z| in [rho, 1], with u log-spaced toward rho where
    the arc meets the unit circle.

    Returns
    -------
    list of (rho, min Re W, u at the minimum), or an empty list when the
    expansion about z = 1 is unavailable for ``p``.

    Examples
    --------
    >>> from hypconv.hyp2f1 import Params
    >>> rows = deep_probe(Params(-0.736, -0.757, -1.41))
    >>> rows[-1][1] < rows[0][1] < -100
    True
    """
    if p.terminating or any(x <= 0 and x == round(x) for x in (p.c - p.a, p.c - p.b)):
        return []
    m = p.m
    if m != 0.0 and abs(m - round(m)) < 1e-3:
        return []
    if m > 2.0:
        # F'' stays bounded at z = 1, so W does too.
        return []
    # Terms of size |w|^m (and |w|^2 once m > 1) must stay inside the
    # double range.
    exponents = [k for k in exponents if k * max(-m, 0.0) <= 250.0 and (m < 1.0 or k * 2.0 <= 300.0)]
    out = []
    for k in exponents:
        rho = 10.0 ** (-float(k))
        lo = math.log10(rho)
        u = np.unique(np.concatenate([np.linspace(rho, 1.0, samples), np.logspace(lo, 0.0, 4 * int(k) + 8)]))
        u = np.clip(u, rho, 1.0)

        def val(uu):
            return _re_w_near_one(p, rho, uu)

        v = val(u)
        i = int(np.argmin(v))
        lu = np.log(u)
        left, right = lu[max(i - 1, 0)], lu[min(i + 1, u.size - 1)]
        best_l, best_v = lu[i], v[i]
        for _ in range(refine_depth):
            cand = np.array([0.5 * (left + best_l), 0.5 * (best_l + right)])
            cv = val(np.exp(cand))
            j = int(np.argmin(cv))
            if cv[j] < best_v:
                half = 0.5 * (right - left)
                best_l, best_v = cand[j], cv[j]
                left, right = best_l - 0.5 * half, best_l + 0.5 * half
            else:
                left, right = 0.5 * (left + best_l), 0.5 * (best_l + right)
        out.append((rho, float(best_v), float(math.exp(best_l))))
    return out


def _deep_diverges(values, ref):
    """Three falling steps, none shrinking by more than 5%, ending below ``ref``."""
    d = np.diff(values)
    if d.size < 3 or not np.all(d[-3:] < 0):
        return False
    q = d[-2:] / d[-3:-1]
    return bool(np.all(q >= 0.95) and values[-1] < ref)


# ---------------------------------------------------------------- trend


def classify_trend(minima, threshold=-1e6, growth=10.0):
    """Decide whether per-radius minima converge or fall without bound.

    Parameters
    ----------
    minima : sequence of float
        Minima on equally spaced (in log(1-r)) radii.

    Returns
    -------
    (trend, estimate, uncertainty)
        ``trend`` is ``"converging"``, ``"diverging-down"`` or
        ``"inconclusive"``; the estimate is the Aitken limit of the last
        three minima.
    """
    m = np.asarray(minima, dtype=float)
    if m.size >= 2 and m[-1] < threshold and m[-1] <= growth * m[-2] < 0:
        return "diverging-down", -math.inf, None
    if m.size < 4:
        return "inconclusive", None, None
    d = np.diff(m)
    noise = 1e-10 * (1.0 + abs(m[-1]))
    if abs(d[-1]) <= noise and abs(d[-2]) <= noise:
        return "converging", float(m[-1]), float(max(abs(d[-1]), noise))
    with np.errstate(divide="ignore", invalid="ignore"):
        q = d[1:] / d[:-1]
    # Steady or accelerating drops: logarithmic or power-law divergence.
    if q.size >= 3 and np.all(q[-3:] >= 0.95) and np.all(d[-3:] < 0):
        if np.all(np.abs(d[-3:]) > 1e-3 * (1.0 + abs(m[-4]))):
            return "diverging-down", -math.inf, None
    if q.size >= 2 and np.all((q[-2:] >= -0.95) & (q[-2:] <= 0.93)):
        est = _aitken(m[-3:])
        prev = _aitken(m[-4:-1])
        unc = max(abs(est - prev), noise)
        return "converging", float(est), float(unc)
    return "inconclusive", None, None


def _aitken(m3):
    d1 = m3[1] - m3[0]
    d2 = m3[2] - m3[1]
    if d1 == d2 or d1 == 0.0:
        return m3[2]
    q = d2 / d1
    if q >= 1.0:
        return m3[2]
    return m3[2] + d2 * q / (1.0 - q)


def _rounding_floor(per_radius):
    """Rounding error of Re W at each circle minimum; it grows like 1/|1 - z|."""
    eps = np.finfo(float).eps
    return [8.0 * eps * (1.0 + abs(v)) / abs(1.0 - r * cmath.exp(1j * t)) for r, v, t in per_radius]


def kappa_numeric(p, scan=None, tol=1e-15, full_output=False):
    """Estimate the order of convexity by scanning circles toward |z| = 1.

    Parameters
    ----------
    p : Params
    scan : ScanConfig, optional
    full_output : bool
        Also return the :class:`BoundaryScan` diagnostics.

    Returns
    -------
    OrderOfConvexity or (OrderOfConvexity, BoundaryScan)
        ``UNDEFINED`` if (zF)' has a zero, ``MINUS_INFINITY`` if the minima
        diverge, otherwise ``FINITE`` with ``uncertainty`` set.

    Raises
    ------
    InconclusiveError
        When the minima neither settle nor clearly diverge.
    """
    cfg = scan or ScanConfig()
    result = BoundaryScan(cfg)

    def done(kappa):
        return (kappa, result) if full_output else kappa

    if cfg.check_zeros:
        report = derivative_zero_scan(p, cfg.radii[-1], cfg.zero_grid)
        result.zero_report = report
        if report.found:
            result.trend = "undefined"
            return done(OrderOfConvexity(Kind.UNDEFINED, note="(zF)' = 0 at %s" % report.location))
    for r in cfg.radii:
        try:
            value, theta = circle_minimum(p, r, cfg)
        except DerivativeZero as exc:
            result.trend = "undefined"
            return done(OrderOfConvexity(Kind.UNDEFINED, note="(zF)' = 0 near %s" % exc.location))
        result.per_radius_min.append((r, value, theta))
    mins = result.minima
    noise = _rounding_floor(result.per_radius_min)
    for k in range(1, len(mins)):
        if mins[k] > mins[k - 1] + 1e-6 + noise[k]:
            result.warnings.append("minimum rose between r = %.17g and r = %.17g" % (result.radii[k - 1], result.radii[k]))
    # Trailing radii whose step is below their own rounding floor carry no
    # information about the trend.
    keep = len(mins)
    while keep > 4 and abs(mins[keep - 1] - mins[keep - 2]) < noise[keep - 1]:
        keep -= 1
    trend, est, unc = classify_trend(mins[:keep], cfg.divergence_threshold, cfg.divergence_growth)
    if unc is not None:
        unc = max(unc, noise[keep - 1])
    result.trend, result.estimate, result.uncertainty = trend, est, unc
    if trend == "diverging-down":
        return done(OrderOfConvexity(Kind.MINUS_INFINITY))
    # The circles stop at 1 - 10^(-decades); look much closer to z = 1 for
    # growth too slow to show up there.
    deep = deep_probe(p, cfg.deep_exponents) if cfg.deep_exponents else []
    result.deep_min = deep
    dv = [v for _, v, _ in deep]
    ref = est if trend == "converging" else mins[-1]
    slack = max(10.0 * (unc or 0.0), 1e-6 * (1.0 + abs(ref)))
    if dv and _deep_diverges(dv, ref - slack):
        result.trend, result.estimate, result.uncertainty = "diverging-down", -math.inf, None
        result.warnings.append("circle minima looked settled; divergence found closer to z = 1")
        return done(OrderOfConvexity(Kind.MINUS_INFINITY, note="slow divergence near z = 1"))
    if dv and min(dv) < ref - slack:
        result.warnings.append("lower values near z = 1 than on the circles: %.6g" % min(dv))
        trend, est, unc = classify_trend(dv, cfg.divergence_threshold, cfg.divergence_growth)
        result.trend, result.estimate, result.uncertainty = trend, est, unc
        if trend == "converging":
            return done(OrderOfConvexity(Kind.FINITE, est, unc))
        if trend == "diverging-down":
            return done(OrderOfConvexity(Kind.MINUS_INFINITY))
    elif trend == "converging":
        return done(OrderOfConvexity(Kind.FINITE, est, unc))
    raise InconclusiveError(
        "boundary minima neither settle nor diverge: %s" % ", ".join("%.6g" % v for v in mins), scan=result
    )


# ---------------------------------------------------------------- zeros


def _fp_and_slope(p, z):
    """(zF)', its derivative, and the magnitude scale |F| + |zF'|."""
    f, df = engine.hyp2f1_d(p.a, p.b, p.c, z)
    w = 1.0 - z
    q = (p.c - p.a - p.b - 1.0) + (p.a + p.b + 1.0) * w
    zf2 = (p.a * p.b * f - q * df) / w
    fp = f + z * df
    fpp = 2.0 * df + zf2
    return fp, fpp, np.abs(f) + np.abs(z * df)


def winding_number(p, r, base=1024, max_depth=40):
    """Zeros of (zF)' inside |z| = r, counted by the argument principle.

    The circle is sampled adaptively until every phase step is below
    pi/4, with extra points clustered near z = 1.
    """
    theta = _half_circle_grid(r, base, 16)
    theta = np.unique(np.concatenate([theta, -theta]))
    theta = np.concatenate([theta, [theta[0] + 2.0 * np.pi]])
    vals = _fp_and_slope(p, r * np.exp(1j * theta))[0]
    for _ in range(max_depth):
        dphi = np.angle(vals[1:] / vals[:-1])
        bad = np.abs(dphi) > np.pi / 4
        if not bad.any():
            break
        mid = 0.5 * (theta[:-1][bad] + theta[1:][bad])
        mid_vals = _fp_and_slope(p, r * np.exp(1j * mid))[0]
        theta = np.concatenate([theta, mid])
        vals = np.concatenate([vals, mid_vals])
        order = np.argsort(theta, kind="stable")
        theta, vals = theta[order], vals[order]
    total = np.sum(np.angle(vals[1:] / vals[:-1]))
    return int(round(total / (2.0 * np.pi)))


def _newton(p, z0, r_max, iters=40):
    z = complex(z0)
    for _ in range(iters):
        fp, fpp, _ = _fp_and_slope(p, np.array([z]))
        if fpp[0] == 0:
            break
        step = fp[0] / fpp[0]
        z_new = z - step
        if abs(z_new) > r_max:
            z_new = z_new / abs(z_new) * r_max
        if abs(z_new - z) <= 1e-15 * max(1.0, abs(z)):
            z = z_new
            break
        z = z_new
    fp, _, scale = _fp_and_slope(p, np.array([z]))
    return z, abs(fp[0]), float(scale[0])


def _local_winding(p, z, rho, n=64):
    t = np.linspace(0.0, 2.0 * np.pi, n + 1)
    pts = z + rho * np.exp(1j * t)
    vals = _fp_and_slope(p, pts)[0]
    return int(round(np.sum(np.angle(vals[1:] / vals[:-1])) / (2.0 * np.pi)))


def derivative_zero_scan(p, r_max=1.0 - 1e-12, grid=64):
    """Search |z| <= r_max for zeros of (zF)' = F + z F'.

    A polar ``grid`` x ``grid`` mesh flags local minima of |(zF)'| relative
    to |F| + |zF'|; each is polished by Newton's method and accepted when
    the modulus falls below 1e-6 of the local scale and a small circle
    around it winds once.  The argument principle on |z| = r_max gives the
    total count, so a zero missed by the mesh triggers a wider search.

    Examples
    --------
    >>> from hypconv.hyp2f1 import Params
    >>> rep = derivative_zero_scan(Params(-2, 1, 1), 0.9)
    >>> rep.found, round(rep.location.real, 12)
    (True, 0.333333333333)
    """
    radii = r_max * np.arange(1, grid + 1) / grid
    angles = 2.0 * np.pi * np.arange(grid) / grid
    rr, aa = np.meshgrid(radii, angles, indexing="ij")
    zz = (rr * np.exp(1j * aa)).ravel()
    fp, _, scale = _fp_and_slope(p, zz)
    rel = (np.abs(fp) / scale).reshape(grid, grid)
    min_modulus = float(np.min(np.abs(fp)))
    padded = np.pad(rel, ((1, 1), (0, 0)), mode="edge")
    is_min = np.ones_like(rel, dtype=bool)
    for di in (-1, 0, 1):
        for dj in (-1, 0, 1):
            if di == 0 and dj == 0:
                continue
            shifted = np.roll(padded, dj, axis=1)[1 + di : grid + 1 + di]
            is_min &= rel <= shifted
    flat = rel.ravel()
    order = [i for i in np.argsort(flat) if is_min.ravel()[i]][:12]

    def try_from(indices):
        for i in indices:
            z, mod, sc = _newton(p, zz[i], r_max)
            if abs(z) >= r_max or mod > 1e-6 * sc:
                continue
            rho = min(0.5 * r_max / grid, 0.5 * (r_max - abs(z)))
            if rho <= 0 or _local_winding(p, z, rho) >= 1:
                return z, mod
        return None

    hit = try_from(order)
    count = winding_number(p, r_max)
    if hit is None and count > 0:
        hit = try_from(np.argsort(flat)[:200])
    if hit is not None:
        z, mod = hit
        return ZeroScanReport(True, complex(z), min(min_modulus, mod), max(count, 1), r_max)
    if count > 0:
        # Counted but not located: report the best mesh point.
        i = int(np.argmin(flat))
        return ZeroScanReport(True, complex(zz[i]), min_modulus, count, r_max)
    return ZeroScanReport(False, None, min_modulus, count, r_max)


# ---------------------------------------------------------------- asymptotics


def _minus_infinity_window(p):
    ab = p.a * p.b
    if not p.admissible:
        return False
    return (0 < ab < 1 and p.a + p.b <= p.c < 1 + p.a + p.b - ab) or (ab < 0 and p.a + p.b <= p.c < 1 + p.a + p.b)


def asymptotic_divergence_check(p, steps=10):
    """Follow z = 1 - cos(t) e^{it}, t -> +-pi/2, and watch p F/((1-z)(zF)').

    Inside the minus-infinity windows this quantity, which is the part of
    M(z) that survives near z = 1, must tend to -inf along the path.

    Returns
    -------
    str
        ``"diverges"`` on a monotone fall without bound along both
        branches, ``"not-applicable"`` outside the windows.

    Raises
    ------
    InconclusiveError
        If the samples are not monotone or stay bounded.
    """
    if not _minus_infinity_window(p):
        return "not-applicable"
    pv = p_value(p)
    eps = 10.0 ** -np.arange(1, steps + 1, dtype=float)
    for sign in (1.0, -1.0):
        t = sign * (np.pi / 2.0 - eps)
        z = 1.0 - np.cos(t) * np.exp(1j * t)
        f, df = engine.hyp2f1_d(p.a, p.b, p.c, z)
        vals = (pv * f / ((1.0 - z) * (f + z * df))).real
        tail = vals[2:]
        d = np.diff(tail)
        # Logarithmic or power-law fall: decrements do not shrink
        # geometrically, unlike a sequence settling to a finite limit.
        with np.errstate(divide="ignore", invalid="ignore"):
            q = d[1:] / d[:-1]
        if not (np.all(d < 0) and np.all(q[-3:] >= 0.9)):
            raise InconclusiveError(
                "path samples do not fall without bound: %s" % ", ".join("%.4g" % v for v in vals)
            )
    return "diverges"
