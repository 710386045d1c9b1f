"""Dense complex eigensolver kernels, pure-numpy implementation.

Vectorized twins of the jitted loops in ``_kernels_numba``; the active set is
chosen by :mod:`pseudospec.backend`.  Both modules expose the same three entry
points with identical contracts:

``hessenberg_inplace(a)``
    Householder reduction of a square complex matrix to upper Hessenberg form,
    in place.  Returns the reflector array ``vs`` (row ``k`` holds the
    Householder vector of step ``k`` in columns ``k+1:``) needed to map
    Hessenberg-coordinate vectors back to the original basis.

``qr_eigvals(h, max_sweeps)``
    Explicit single-shift QR iteration with deflation on an upper Hessenberg
    matrix, eigenvalues only.  Destroys ``h``.  Returns
    ``(eigenvalues, n_deflated, converged)``; ``converged`` is False when the
    sweep budget is exhausted, with ``n_deflated`` telling how far it got.

``apply_q(vs, y)``
    Apply the accumulated Householder transformations to ``y``, mapping an
    eigenvector of the Hessenberg form to an eigenvector of the original
    matrix.
"""
from __future__ import annotations

import numpy as np

EPS = 2.220446049250313e-16


def hessenberg_inplace(a):
    """Reduce ``a`` (complex, square) to upper Hessenberg form in place."""
    n = a.shape[0]
    vs = np.zeros((n, n), dtype=np.complex128)
    for k in range(n - 2):
        x = a[k + 1:, k]
        xnorm = np.sqrt(np.sum(x.real**2 + x.imag**2))
        if xnorm == 0.0:
            continue
        x0 = x[0]
        ax0 = abs(x0)
        phase = x0 / ax0 if ax0 > 0.0 else 1.0 + 0.0j
        alpha = -phase * xnorm
        v = x.copy()
        v[0] = x0 - alpha
        vnorm2 = np.sum(v.real**2 + v.imag**2)
        vs[k, k + 1:] = v
        beta = 2.0 / vnorm2
        # two-sided similarity: A <- P A P with P = I - beta v v^H
        a[k + 1:, k:] -= np.outer(beta * v, np.conj(v) @ a[k + 1:, k:])
        a[:, k + 1:] -= np.outer(a[:, k + 1:] @ v, beta * np.conj(v))
        a[k + 1, k] = alpha
        a[k + 2:, k] = 0.0
    return vs


def apply_q(vs, y):
    """Map ``y`` from Hessenberg coordinates back to the original basis."""
    n = vs.shape[0]
    out = np.array(y, dtype=np.complex128, copy=True)
    for k in range(n - 3, -1, -1):
        v = vs[k]
        vnorm2 = np.sum(v.real**2 + v.imag**2)
        if vnorm2 == 0.0:
            continue
        out -= (2.0 / vnorm2) * (np.conj(v) @ out) * v
    return out


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
        idx = np.arange(lo, hi + 1)
        h[idx, idx] -= shift
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
            t1 = h[i, i + 1:hi + 1].copy()
            t2 = h[i + 1, i + 1:hi + 1]
            h[i, i + 1:hi + 1] = ci * t1 + si * t2
            h[i + 1, i + 1:hi + 1] = -np.conj(si) * t1 + np.conj(ci) * t2
        for i in range(lo, hi):
            ci = cs[i]
            si = sn[i]
            jmax = min(i + 1, hi)
            t1 = h[lo:jmax + 1, i].copy()
            t2 = h[lo:jmax + 1, i + 1]
            h[lo:jmax + 1, i] = t1 * np.conj(ci) + t2 * np.conj(si)
            h[lo:jmax + 1, i + 1] = -t1 * si + t2 * ci
        h[idx, idx] += shift
    return eigs, nfound, True
