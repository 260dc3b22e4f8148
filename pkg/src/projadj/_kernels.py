"""Compiled inner loops for Poisson integrals of step functions."""

import math

import numba
import numpy as np


@numba.njit(cache=True)
def _F(x, delta):
    # (1/pi) * arctan(K tan(x/2)), K = (2 - delta)/delta, branch continuous on [-pi, pi]
    return math.atan2((2.0 - delta) * math.sin(0.5 * x), delta * math.cos(0.5 * x)) / math.pi


@numba.njit(cache=True)
def near_sum(offsets, jumps, eta, delta, lo_off, lo_val, hi_off, hi_val):
    """P(f restricted to a window)(z) for points z = (1-delta) e^{i(center+eta)}.

    ``offsets`` are breakpoint angles relative to the window centre, all inside
    (lo_off, hi_off); ``lo_val``/``hi_val`` are the step values just inside the
    window ends.
    """
    out = np.empty(eta.size)
    for i in range(eta.size):
        e = eta[i]
        d = delta[i]
        s = hi_val * _F(hi_off - e, d) - lo_val * _F(lo_off - e, d)
        acc = 0.0
        for k in range(offsets.size):
            acc += jumps[k] * _F(offsets[k] - e, d)
        out[i] = s - acc
    return out


@numba.njit(cache=True)
def far_coefficients(offsets, jumps, lo_off, lo_val, hi_off, hi_val, scale, order):
    """Scaled Taylor coefficients ``b_m = a_m scale^m`` (m = 1..order) of the far field.

    Centre is 1 in the rotated frame; far breakpoints sit at e^{i offset}.
    """
    acc = np.zeros(order + 1, dtype=np.complex128)
    for k in range(offsets.size + 2):
        if k < offsets.size:
            d = offsets[k]
            c = -jumps[k]
        elif k == offsets.size:
            d = hi_off
            c = hi_val
        else:
            d = lo_off
            c = -lo_val
        if c == 0.0:
            continue
        half = 0.5 * d
        # e^{id} - 1 = 2i sin(d/2) e^{id/2}
        diff = 2.0j * math.sin(half) * complex(math.cos(half), math.sin(half))
        g = scale / diff
        p = 1.0 + 0.0j
        for m in range(1, order + 1):
            p *= g
            acc[m] += c * p
    for m in range(1, order + 1):
        acc[m] *= 1j / (math.pi * m)
    return acc


@numba.njit(cache=True)
def eval_series(coef, zeta):
    """Re sum_{m>=1} coef[m] zeta^m for an array of scaled offsets zeta."""
    out = np.empty(zeta.size)
    order = coef.size - 1
    for i in range(zeta.size):
        # Horner
        acc = 0.0j
        for m in range(order, 0, -1):
            acc = (acc + coef[m]) * zeta[i]
        out[i] = acc.real
    return out


@numba.njit(cache=True)
def direct_sum(breaks, jumps, theta, delta):
    """sum_k J_k F(wrap(t_k - theta)), skipping breakpoints at the antipode."""
    out = np.empty(theta.size)
    two_pi = 2.0 * math.pi
    for i in range(theta.size):
        th = theta[i]
        d = delta[i]
        acc = 0.0
        for k in range(breaks.size):
            # t - th is exact when the two are close; avoid re-rounding it
            x = breaks[k] - th
            if x >= math.pi:
                x -= two_pi
            elif x < -math.pi:
                x += two_pi
            if x == -math.pi:
                continue
            acc += jumps[k] * _F(x, d)
        out[i] = acc
    return out


@numba.njit(cache=True)
def _chord_vec(a, b):
    # e^{ia} - e^{ib} = 2i sin((a-b)/2) e^{i(a+b)/2}
    h = 0.5 * (a - b)
    m = 0.5 * (a + b)
    s = 2.0 * math.sin(h)
    return complex(-s * math.sin(m), s * math.cos(m))


@numba.njit(cache=True)
def build_tree(breaks, jumps, leaf, order):
    """Cells over contiguous runs of sorted breakpoints, with scaled far-field moments.

    Node k (1-based heap order) covers breakpoints ``lo[k]:hi[k]``; ``mom[k, m]``
    is ``sum_j J_j ((e^{i t_j} - e^{i tc[k]}) / rad[k])^m`` and ``sum_jt[k]`` the
    centred first moment ``sum_j J_j (t_j - tc[k])``.
    """
    n = breaks.size
    nleaf = max(1, (n + leaf - 1) // leaf)
    size = 1
    while size < nleaf:
        size *= 2
    total = 2 * size
    lo = np.zeros(total, dtype=np.int64)
    hi = np.zeros(total, dtype=np.int64)
    tc = np.zeros(total)
    rad = np.zeros(total)
    sum_j = np.zeros(total)
    sum_jt = np.zeros(total)
    mom = np.zeros((total, order + 1), dtype=np.complex128)
    for q in range(size):
        k = size + q
        a = min(q * leaf, n)
        b = min(a + leaf, n)
        lo[k] = a
        hi[k] = b
        if b <= a:
            continue
        c = 0.5 * (breaks[a] + breaks[b - 1])
        r = 2.0 * math.sin(0.25 * (breaks[b - 1] - breaks[a]))
        tc[k] = c
        rad[k] = r
        for j in range(a, b):
            sum_j[k] += jumps[j]
            sum_jt[k] += jumps[j] * (breaks[j] - c)
            g = _chord_vec(breaks[j], c)
            if r > 0.0:
                g = g / r
            p = 1.0 + 0.0j
            mom[k, 0] += jumps[j]
            for m in range(1, order + 1):
                p *= g
                mom[k, m] += jumps[j] * p
    binom = np.zeros((order + 1, order + 1))
    for m in range(order + 1):
        binom[m, 0] = 1.0
        for l in range(1, m + 1):
            binom[m, l] = binom[m - 1, l - 1] + (binom[m - 1, l] if l <= m - 1 else 0.0)
    for k in range(size - 1, 0, -1):
        l_, r_ = 2 * k, 2 * k + 1
        lo[k] = lo[l_]
        hi[k] = hi[r_] if hi[r_] > lo[r_] else hi[l_]
        if hi[k] <= lo[k]:
            continue
        a, b = lo[k], hi[k]
        c = 0.5 * (breaks[a] + breaks[b - 1])
        r = 2.0 * math.sin(0.25 * (breaks[b - 1] - breaks[a]))
        tc[k] = c
        rad[k] = r
        for ch in (l_, r_):
            if hi[ch] <= lo[ch]:
                continue
            sum_j[k] += sum_j[ch]
            sum_jt[k] += sum_jt[ch] + (tc[ch] - c) * sum_j[ch]
            if r == 0.0:
                mom[k, 0] += mom[ch, 0]
                continue
            e = _chord_vec(tc[ch], c) / r
            q = rad[ch] / r
            # powers of e and q
            ep = np.empty(order + 1, dtype=np.complex128)
            qp = np.empty(order + 1)
            ep[0] = 1.0
            qp[0] = 1.0
            for m in range(1, order + 1):
                ep[m] = ep[m - 1] * e
                qp[m] = qp[m - 1] * q
            for m in range(order + 1):
                acc = 0.0j
                for l in range(m + 1):
                    acc += binom[m, l] * qp[l] * ep[m - l] * mom[ch, l]
                mom[k, m] += acc
    return lo, hi, tc, rad, sum_j, sum_jt, mom, size


@numba.njit(cache=True)
def tree_sum(breaks, jumps, lo, hi, tc, rad, sum_j, sum_jt, mom, size, theta, delta, sep):
    """``sum_k J_k F(wrap(t_k - theta))`` for each query, using cell moments when well separated."""
    two_pi = 2.0 * math.pi
    order = mom.shape[1] - 1
    out = np.empty(theta.size)
    stack = np.empty(512, dtype=np.int64)
    for i in range(theta.size):
        th = theta[i]
        d = delta[i]
        anti = th + math.pi
        if anti >= two_pi:
            anti -= two_pi
        rot = complex(math.cos(th), math.sin(th))
        acc_arg = 0.0
        acc_lin = 0.0
        acc_dir = 0.0
        stack[0] = 1
        top = 1
        while top > 0:
            top -= 1
            k = stack[top]
            a = lo[k]
            b = hi[k]
            if b <= a:
                continue
            if not (breaks[a] <= anti <= breaks[b - 1]):
                x = tc[k] - th
                if x >= math.pi:
                    x -= two_pi
                elif x < -math.pi:
                    x += two_pi
                # e^{-i th}(e^{i tc} - z) = e^{ix} - 1 + delta
                sh = math.sin(0.5 * x)
                ch = math.cos(0.5 * x)
                re = d - 2.0 * sh * sh
                im = 2.0 * sh * ch
                mag2 = re * re + im * im
                r = rad[k]
                if mag2 >= sep * sep * r * r and mag2 > 0.0:
                    # the wrap shift of t - th is constant on the cell
                    acc_lin += sum_jt[k] + x * sum_j[k]
                    acc_arg += sum_j[k] * math.atan2(im, re)
                    if r > 0.0:
                        ratio = r / (complex(re, im) * rot)
                        p = 1.0 + 0.0j
                        series = 0.0j
                        sign = 1.0
                        for m in range(1, order + 1):
                            p *= ratio
                            series += (sign / m) * mom[k, m] * p
                            sign = -sign
                        acc_arg += series.imag
                    continue
            if k >= size:
                for j in range(a, b):
                    x = breaks[j] - th
                    if x >= math.pi:
                        x -= two_pi
                    elif x < -math.pi:
                        x += two_pi
                    if x == -math.pi:
                        continue
                    acc_dir += jumps[j] * _F(x, d)
                continue
            stack[top] = 2 * k
            stack[top + 1] = 2 * k + 1
            top += 2
        out[i] = acc_dir + (acc_arg - 0.5 * acc_lin) / math.pi
    return out
