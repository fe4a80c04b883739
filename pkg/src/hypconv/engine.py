"""Vectorized evaluation of 2F1(a, b; c; z) and its derivative on the closed disk.

Each point is routed to whichever representation converges fastest there:

* the Maclaurin series when |z| is small,
* the connection formula in powers of 1 - z near z = 1 (non-integer c-a-b),
  or the logarithmic series when c = a + b,
* the Pfaff transformation z -> z/(z-1) on the left half of the disk,
* Taylor continuation along the hypergeometric ODE for everything else
  (the band around exp(+-i pi/3) and near z = 1 when c-a-b is a nonzero
  integer).

All routes return F and F'.  The point z = 1 itself is never evaluated.
"""

import numpy as np

from .special import digamma_real, gamma_real, is_nonpositive_integer, rgamma_real

__all__ = ["hyp2f1_d", "hyp2f1_d_near_one", "hyp2f1_vec"]

# Largest convergence ratio accepted for a direct expansion before falling
# back to continuation.
_RHO_DIRECT = 0.6
# Taylor steps never exceed this fraction of the distance to {0, 1}.
_RHO_STEP = 0.5
# c-a-b closer than this to an integer is treated as integer (the two
# Gamma-weighted terms of the connection formula would cancel).
_NEAR_INT = 1e-3
_EPS = 1e-17


_ROUND = np.finfo(float).eps


def _record(info, terms, err):
    """Accumulate term counts and absolute error estimates into ``info``."""
    if info is not None:
        info["terms"] = info.get("terms", 0) + int(terms)
        info["err"] = info.get("err", 0.0) + float(np.max(err, initial=0.0))


def _series(a, b, c, z, max_terms=20000, info=None):
    """Maclaurin series of 2F1 and its derivative, summed to machine precision."""
    z = np.asarray(z, dtype=complex)
    term = np.ones_like(z)
    total = np.ones_like(z)
    dtotal = np.zeros_like(z)
    abs_sum = np.ones(z.shape)
    small = 0
    n = 0
    coef = 0.0
    for n in range(max_terms):
        # term_{n+1} = term_n * (a+n)(b+n)/((c+n)(n+1)) * z
        coef = (a + n) * (b + n) / ((c + n) * (n + 1.0))
        dtotal = dtotal + term * (coef * (n + 1.0))
        term = term * (coef * z)
        total = total + term
        abs_sum = abs_sum + np.abs(term)
        if coef == 0.0:
            break
        if np.all(np.abs(term) <= _EPS * np.abs(total)):
            small += 1
            if small >= 3 and n >= 8:
                break
        else:
            small = 0
    if info is not None:
        # Geometric tail from the current term ratio, floored at |z| (its limit).
        q = np.maximum(abs(coef) * np.abs(z), np.abs(z))
        with np.errstate(divide="ignore"):
            tail = np.where(q < 1.0, np.abs(term) * q / (1.0 - q), np.inf)
        if coef == 0.0:
            tail = np.zeros(z.shape)
        _record(info, n + 2, tail + _ROUND * (n + 2) * abs_sum)
    return total, dtotal


def _polynomial(a, b, c, z, info=None):
    """Terminating series when a or b is in {0, -1, -2, ...}."""
    n_max = int(-max(x for x in (a, b) if is_nonpositive_integer(x)))
    coefs = [1.0]
    for n in range(n_max):
        coefs.append(coefs[-1] * (a + n) * (b + n) / ((c + n) * (n + 1.0)))
    poly = np.polynomial.Polynomial(coefs)
    if info is not None:
        # Horner rounding only; there is no truncation.
        absval = np.polynomial.Polynomial(np.abs(coefs))(np.abs(z))
        _record(info, n_max + 1, 2.0 * _ROUND * (n_max + 1) * absval)
    return poly(z), poly.deriv()(z)


def _connection(a, b, c, w, info=None):
    """Connection formula in powers of w = 1 - z (c - a - b not an integer)."""
    m = c - a - b
    k1 = gamma_real(c) * gamma_real(m) * rgamma_real(c - a) * rgamma_real(c - b)
    k2 = gamma_real(c) * gamma_real(-m) * rgamma_real(a) * rgamma_real(b)
    i1 = {} if info is not None else None
    i2 = {} if info is not None else None
    s1, ds1 = _series(a, b, 1.0 - m, w, info=i1)
    s2, ds2 = _series(c - a, c - b, 1.0 + m, w, info=i2)
    wm = w**m
    if info is not None:
        # Gamma constants carry about 1e-13 relative error of their own.
        mag = np.abs(k1 * s1) + np.abs(k2 * wm * s2)
        err = abs(k1) * i1["err"] + abs(k2) * np.abs(wm) * i2["err"] + 1e-13 * mag
        _record(info, i1["terms"] + i2["terms"], err)
    f = k1 * s1 + k2 * wm * s2
    df_dw = k1 * ds1 + k2 * (m * wm / w * s2 + wm * ds2)
    return f, -df_dw


def _balanced(a, b, w, info=None):
    """Logarithmic expansion of 2F1(a, b; a+b; 1-w) about w = 0."""
    pref = gamma_real(a + b) * rgamma_real(a) * rgamma_real(b)
    logw = np.log(w)
    h = 2.0 * digamma_real(1.0) - digamma_real(a) - digamma_real(b)
    coef = 1.0
    wk = np.ones_like(w)
    total = (h - logw) * wk
    dtotal = -1.0 / w
    abs_sum = np.abs(total)
    small = 0
    k = 0
    for k in range(20000):
        coef *= (a + k) * (b + k) / ((k + 1.0) ** 2)
        h += 2.0 / (k + 1.0) - 1.0 / (a + k) - 1.0 / (b + k)
        wk_prev = wk
        wk = wk * w
        term = coef * (h - logw) * wk
        total = total + term
        abs_sum = abs_sum + np.abs(term)
        # d/dw [coef (h - log w) w^(k+1)]
        dtotal = dtotal + coef * ((k + 1.0) * (h - logw) - 1.0) * wk_prev
        if np.all(np.abs(term) <= _EPS * np.abs(total)):
            small += 1
            if small >= 3 and k >= 8:
                break
        else:
            small = 0
    if info is not None:
        q = np.abs(w)
        tail = np.abs(term) * q / (1.0 - q)
        _record(info, k + 2, abs(pref) * (tail + _ROUND * (k + 2) * abs_sum) + 1e-13 * np.abs(pref * total))
    return pref * total, -pref * dtotal


def _pfaff(a, b, c, z, info=None):
    """2F1(a,b;c;z) = (1-z)^(-a) 2F1(a, c-b; c; z/(z-1))."""
    w = 1.0 - z
    zeta = z / (z - 1.0)
    inner = {} if info is not None else None
    s, ds = _series(a, c - b, c, zeta, info=inner)
    wa = w ** (-a)
    if info is not None:
        _record(info, inner["terms"], np.abs(wa) * inner["err"] + 4 * _ROUND * np.abs(wa * s))
    f = wa * s
    df = a * wa / w * s - wa * ds / (w * w)
    return f, df


def _taylor_step(a, b, c, z0, f0, df0, h, max_terms=400, info=None):
    """Advance (F, F') from z0 to z0 + h with the ODE Taylor recurrence.

    With F = sum u_n, u_n = t_n h^n, the ODE
    z(1-z) F'' + [c - (a+b+1) z] F' - ab F = 0 re-centred at z0 gives a
    three-term recurrence for u_n.
    """
    w0 = 1.0 - z0
    p0 = z0 * w0
    p1 = w0 - z0
    # c - (a+b+1) z0 written around z = 1; the naive form cancels there.
    q0 = (c - a - b - 1.0) + (a + b + 1.0) * w0
    q1 = -(a + b + 1.0)
    r0 = -a * b
    u_prev = f0
    u_cur = df0 * h
    total = u_prev + u_cur
    dsum = u_cur.copy()
    abs_sum = np.abs(u_prev) + np.abs(u_cur)
    small = 0
    n = 0
    for n in range(max_terms):
        num = (p1 * n + q0) * (n + 1.0) * u_cur * h + (-n * (n - 1.0) + q1 * n + r0) * u_prev * h * h
        u_next = -num / (p0 * (n + 2.0) * (n + 1.0))
        total = total + u_next
        dsum = dsum + (n + 2.0) * u_next
        u_prev, u_cur = u_cur, u_next
        abs_sum = abs_sum + np.abs(u_next)
        # Value and derivative sums converge on different scales.
        mag = np.abs(u_next)
        if np.all(mag <= _EPS * np.abs(total)) and np.all(mag * (n + 2.0) <= _EPS * np.abs(dsum)):
            small += 1
            if small >= 2:
                break
        else:
            small = 0
    if info is not None:
        # Steps stay within half the convergence radius: tail ratio <= 1/2.
        _record(info, n + 3, 2.0 * np.abs(u_cur) + _ROUND * (n + 3) * abs_sum)
    return total, dsum / h


def _continue(a, b, c, z, info=None):
    """Analytic continuation from |z| = 1/2 along the ray to z.

    With ``info`` the per-step error estimates are summed; the ODE can
    amplify earlier errors, so this is an estimate rather than a bound.
    """
    start = 0.5 * z / np.abs(z)
    f, df = _series(a, b, c, start, info=info)
    cur = start.copy()
    active = np.abs(z - cur) > 0
    for _ in range(10000):
        if not active.any():
            break
        idx = np.nonzero(active)[0]
        zc = cur[idx]
        remaining = z[idx] - zc
        dist = np.minimum(np.abs(zc), np.abs(1.0 - zc))
        length = np.abs(remaining)
        scale = np.minimum(1.0, _RHO_STEP * dist / length)
        # Step by the representable displacement so F and F' belong to the
        # stored position; near z = 1 the rounding of zc + h otherwise shows
        # up in F' amplified by F'' ~ 1/(1-z).
        nxt = np.where(scale >= 1.0, z[idx], zc + remaining * scale)
        h = nxt - zc
        f_new, df_new = _taylor_step(a, b, c, zc, f[idx], df[idx], h, info=info)
        f[idx] = f_new
        df[idx] = df_new
        done = scale >= 1.0
        cur[idx] = nxt
        active[idx[done]] = False
    else:  # pragma: no cover - step count is logarithmic in the distance to 1
        raise RuntimeError("continuation did not reach its targets")
    return f, df


def _euler_polynomial(a, b, c, z, info=None):
    """2F1 = (1-z)^(c-a-b) 2F1(c-a, c-b; c; z) when c-a or c-b terminates."""
    m = c - a - b
    w = 1.0 - z
    inner = {} if info is not None else None
    p, dp = _polynomial(c - a, c - b, c, z, info=inner)
    wm = w**m
    if info is not None:
        _record(info, inner["terms"], np.abs(wm) * inner["err"] + 4 * _ROUND * np.abs(wm * p))
    return wm * p, wm * dp - m * wm / w * p


_ROUTE_NAMES = ("series", "connection-formula", "pfaff", "continuation")


def hyp2f1_d(a, b, c, z, info=None):
    """Evaluate 2F1(a, b; c; z) and d/dz 2F1 at every point of ``z``.

    Parameters
    ----------
    a, b, c : float
        Real parameters, ``c`` not a nonpositive integer.
    z : array_like of complex
        Points with |z| <= 1 and z != 1.

    Returns
    -------
    f, df : ndarray of complex
        Same shape as ``z``.

    Other Parameters
    ----------------
    info : dict, optional
        Filled with ``terms`` (total terms summed), ``err`` (absolute error
        estimate, maximum over the points) and ``methods`` (set of routes).
    """
    if is_nonpositive_integer(c):
        raise ValueError("c = %g is a pole of 2F1" % c)
    z = np.asarray(z, dtype=complex)
    shape = z.shape
    z = z.ravel()
    if np.any(np.abs(z) > 1.0 + 1e-14) or np.any(z == 1.0):
        raise ValueError("hyp2f1_d is restricted to the closed unit disk minus z = 1")
    # Euler form first: it keeps the (1-z)^(c-a-b) factor exact near z = 1.
    if info is not None:
        info.setdefault("methods", set())
    if is_nonpositive_integer(c - a) or is_nonpositive_integer(c - b):
        f, df = _euler_polynomial(a, b, c, z, info=info)
        if info is not None:
            info["methods"].add("polynomial")
        return f.reshape(shape), df.reshape(shape)
    if is_nonpositive_integer(a) or is_nonpositive_integer(b):
        f, df = _polynomial(a, b, c, z, info=info)
        if info is not None:
            info["methods"].add("polynomial")
        return f.reshape(shape), df.reshape(shape)

    f = np.empty_like(z)
    df = np.empty_like(z)
    m = c - a - b
    m_int = abs(m - round(m)) < _NEAR_INT
    balanced = m == 0.0

    w = 1.0 - z
    rho_series = np.abs(z)
    rho_conn = np.abs(w) if (balanced or not m_int) else np.full(z.shape, np.inf)
    with np.errstate(divide="ignore", invalid="ignore"):
        rho_pfaff = np.where(z.real < 0.5, np.abs(z) / np.abs(w), np.inf)
    rhos = np.vstack([rho_series, rho_conn, rho_pfaff])
    best = np.argmin(rhos, axis=0)
    best_rho = rhos[best, np.arange(z.size)]
    best[best_rho > _RHO_DIRECT] = 3

    for route in range(4):
        sel = best == route
        if not sel.any():
            continue
        zs = z[sel]
        if info is not None:
            info["methods"].add("balanced-log" if (route == 1 and balanced) else _ROUTE_NAMES[route])
        if route == 0:
            f[sel], df[sel] = _series(a, b, c, zs, info=info)
        elif route == 1:
            if balanced:
                f[sel], df[sel] = _balanced(a, b, w[sel], info=info)
            else:
                f[sel], df[sel] = _connection(a, b, c, w[sel], info=info)
        elif route == 2:
            f[sel], df[sel] = _pfaff(a, b, c, zs, info=info)
        else:
            f[sel], df[sel] = _continue(a, b, c, zs, info=info)
    return f.reshape(shape), df.reshape(shape)


def hyp2f1_d_near_one(a, b, c, w, scaled=False):
    """2F1 and d/dz 2F1 at z = 1 - w, taking the small displacement ``w``.

    Points closer to z = 1 than double precision can represent as z are
    reachable this way, which is what probes of the behaviour at z = 1
    need.  Only the expansions about z = 1 are used, so c - a - b must not
    be a nonzero integer and neither series may terminate.

    Parameters
    ----------
    a, b, c : float
    w : array_like of complex
        Displacements with 0 < |w| <= 0.5 and Re w > 0.
    scaled : bool
        Return (F, w F', w^2 F'') instead of (F, F'); the scaled forms stay
        finite where the derivatives (of order w^(c-a-b-1)) would overflow.

    Raises
    ------
    ValueError
        If the expansion about z = 1 is not available for these parameters.
    """
    if is_nonpositive_integer(c):
        raise ValueError("c = %g is a pole of 2F1" % c)
    if any(is_nonpositive_integer(x) for x in (a, b, c - a, c - b)):
        raise ValueError("terminating parameters; evaluate at z directly")
    m = c - a - b
    balanced = m == 0.0
    if not balanced and abs(m - round(m)) < _NEAR_INT:
        raise ValueError("c - a - b = %g is too close to a nonzero integer" % m)
    w = np.asarray(w, dtype=complex)
    shape = w.shape
    w = w.ravel()
    if np.any(np.abs(w) > 0.5) or np.any(w == 0):
        raise ValueError("hyp2f1_d_near_one needs 0 < |w| <= 0.5")
    if balanced:
        f, df = _balanced(a, b, w)
        if scaled:
            # The second derivative from the equation itself; cancellation
            # here is harmless for callers that only need F and w F'.
            q = (a + b + 1.0) * w - 1.0
            wdf = w * df
            return f.reshape(shape), wdf.reshape(shape), (w * (a * b * w * f - q * wdf) / (1.0 - w)).reshape(shape)
    elif scaled:
        k1 = gamma_real(c) * gamma_real(m) * rgamma_real(c - a) * rgamma_real(c - b)
        k2 = gamma_real(c) * gamma_real(-m) * rgamma_real(a) * rgamma_real(b)
        s1, ds1 = _series(a, b, 1.0 - m, w)
        s2, ds2 = _series(c - a, c - b, 1.0 + m, w)
        # s'' through the derivative of the shifted series, no cancellation.
        d2s1 = a * b / (1.0 - m) * _series(a + 1.0, b + 1.0, 2.0 - m, w)[1]
        d2s2 = (c - a) * (c - b) / (1.0 + m) * _series(c - a + 1.0, c - b + 1.0, 2.0 + m, w)[1]
        wm = w**m
        f = k1 * s1 + k2 * wm * s2
        wdf = -(k1 * w * ds1 + k2 * wm * (m * s2 + w * ds2))
        w2d2f = k1 * w * w * d2s1 + k2 * wm * (w * w * d2s2 + 2.0 * m * w * ds2 + m * (m - 1.0) * s2)
        return f.reshape(shape), wdf.reshape(shape), w2d2f.reshape(shape)
    else:
        f, df = _connection(a, b, c, w)
    return f.reshape(shape), df.reshape(shape)


def hyp2f1_vec(a, b, c, z):
    """Values only; see :func:`hyp2f1_d`."""
    return hyp2f1_d(a, b, c, z)[0]
