"""Dense complex eigensolver kernels, numba-jitted implementation.

Scalar-loop twins of the vectorized routines in ``_kernels_numpy``, compiled
with ``@njit`` when numba is importable; see that module's docstring for the
shared contracts of ``hessenberg_inplace``, ``qr_eigvals``, and ``apply_q``.
When numba is missing the module still imports (plain-Python definitions) but
:mod:`pseudospec.backend` will not select it.
"""
from __future__ import annotations

import numpy as np

try:
    from numba import njit
    HAS_NUMBA = True
except ImportError:
    HAS_NUMBA = False

    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]

        def wrap(func):
            return func

        return wrap

EPS = 2.220446049250313e-16


@njit(cache=True)
def hessenberg_inplace(a):
    """Reduce ``a`` (complex, square) to upper Hessenberg form in place."""
    n = a.shape[0]
    vs = np.zeros((n, n), dtype=np.complex128)
    for k in range(n - 2):
        xnorm = 0.0
        for i in range(k + 1, n):
            xnorm += a[i, k].real ** 2 + a[i, k].imag ** 2
        xnorm = np.sqrt(xnorm)
        if xnorm == 0.0:
            continue
        x0 = a[k + 1, k]
        ax0 = abs(x0)
        phase = x0 / ax0 if ax0 > 0.0 else 1.0 + 0.0j
        alpha = -phase * xnorm
        v0 = x0 - alpha
        vnorm2 = v0.real**2 + v0.imag**2
        vs[k, k + 1] = v0
        for i in range(k + 2, n):
            vs[k, i] = a[i, k]
            vnorm2 += a[i, k].real ** 2 + a[i, k].imag ** 2
        beta = 2.0 / vnorm2
        # two-sided similarity: A <- P A P with P = I - beta v v^H
        for j in range(k, n):
            s = 0.0 + 0.0j
            for i in range(k + 1, n):
                s += np.conj(vs[k, i]) * a[i, j]
            s *= beta
            for i in range(k + 1, n):
                a[i, j] -= s * vs[k, i]
        for i in range(n):
            s = 0.0 + 0.0j
            for j in range(k + 1, n):
                s += a[i, j] * vs[k, j]
            s *= beta
            for j in range(k + 1, n):
                a[i, j] -= s * np.conj(vs[k, j])
        a[k + 1, k] = alpha
        for i in range(k + 2, n):
            a[i, k] = 0.0
    return vs


@njit(cache=True)
def apply_q(vs, y):
    """Map ``y`` from Hessenberg coordinates back to the original basis."""
    n = vs.shape[0]
    out = y.astype(np.complex128).copy()
    for k in range(n - 3, -1, -1):
        vnorm2 = 0.0
        for j in range(k + 1, n):
            vnorm2 += vs[k, j].real ** 2 + vs[k, j].imag ** 2
        if vnorm2 == 0.0:
            continue
        s = 0.0 + 0.0j
        for j in range(k + 1, n):
            s += np.conj(vs[k, j]) * out[j]
        s *= 2.0 / vnorm2
        for j in range(k + 1, n):
            out[j] -= s * vs[k, j]
    return out


@njit(cache=True)
def qr_eigvals(h, max_sweeps):
    """Shifted QR with deflation on upper Hessenberg ``h`` (destroyed)."""
    n = h.shape[0]
    eigs = np.zeros(n, dtype=np.complex128)
    cs = np.zeros(n, dtype=np.complex128)
    sn = np.zeros(n, dtype=np.complex128)
    hi = n - 1
    total = 0
    stall = 0
    nfound = 0
    while hi >= 0:
        if hi == 0:
            eigs[0] = h[0, 0]
            nfound += 1
            break
        deflated = False
        while hi > 0 and abs(h[hi, hi - 1]) <= EPS * (abs(h[hi, hi]) + abs(h[hi - 1, hi - 1])):
            eigs[hi] = h[hi, hi]
            nfound += 1
            hi -= 1
            stall = 0
            deflated = True
        if hi == 0:
            eigs[0] = h[0, 0]
            nfound += 1
            break
        if deflated:
            continue
        lo = hi
        while lo > 0:
            if abs(h[lo, lo - 1]) <= EPS * (abs(h[lo, lo]) + abs(h[lo - 1, lo - 1])):
                h[lo, lo - 1] = 0.0
                break
            lo -= 1
        # Wilkinson shift: root of the trailing 2x2 nearer its last entry
        a = h[hi - 1, hi - 1]
        b = h[hi - 1, hi]
        c = h[hi, hi - 1]
        d = h[hi, hi]
        tr = a + d
        disc = np.sqrt(tr * tr - 4.0 * (a * d - b * c))
        r1 = 0.5 * (tr + disc)
        r2 = 0.5 * (tr - disc)
        shift = r1 if abs(r1 - d) <= abs(r2 - d) else r2
        stall += 1
        if stall % 12 == 0:
            # exceptional shift to break symmetric stalls
            shift = d + 0.75 * abs(h[hi, hi - 1])
        total += 1
        if total > max_sweeps:
            return eigs, nfound, False
        # explicit QR sweep on the active window [lo, hi]
        for i in range(lo, hi + 1):
            h[i, i] -= shift
        for i in range(lo, hi):
            x = h[i, i]
            y = h[i + 1, i]
            r = np.hypot(abs(x), abs(y))
            if r == 0.0:
                cs[i] = 1.0 + 0.0j
                sn[i] = 0.0 + 0.0j
                continue
            ci = np.conj(x) / r
            si = np.conj(y) / r
            cs[i] = ci
            sn[i] = si
            h[i, i] = r
            h[i + 1, i] = 0.0
            for j in range(i + 1, hi + 1):
                t1 = h[i, j]
                t2 = h[i + 1, j]
                h[i, j] = ci * t1 + si * t2
                h[i + 1, j] = -np.conj(si) * t1 + np.conj(ci) * t2
        for i in range(lo, hi):
            ci = cs[i]
            si = sn[i]
            jmax = min(i + 1, hi)
            for row in range(lo, jmax + 1):
                t1 = h[row, i]
                t2 = h[row, i + 1]
                h[row, i] = t1 * np.conj(ci) + t2 * np.conj(si)
                h[row, i + 1] = -t1 * si + t2 * ci
        for i in range(lo, hi + 1):
            h[i, i] += shift
    return eigs, nfound, True
