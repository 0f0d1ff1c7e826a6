"""Numba-compiled kernel implementations.

Default backend: the hot O(n^3) loops (Householder reductions, QL/QR
iterations, matrix products, assignment search) and the random-number
stream run as ``@njit`` machine code.  Signatures and semantics match
:mod:`randdiag._kernels_numpy` exactly; the RNG kernels produce the
identical bit stream.
"""

import cmath
import math

import numpy as np
from numba import njit

_EPS = 2.0 ** -52
_DOUBLE_SCALE = 2.0 ** -53

_U11 = np.uint64(11)
_U17 = np.uint64(17)
_U23 = np.uint64(23)
_U41 = np.uint64(41)
_U45 = np.uint64(45)
_U19 = np.uint64(19)
_U30 = np.uint64(30)
_U27 = np.uint64(27)
_U31 = np.uint64(31)
_SM_GAMMA = np.uint64(0x9E3779B97F4A7C15)
_SM_MUL1 = np.uint64(0xBF58476D1CE4E5B9)
_SM_MUL2 = np.uint64(0x94D049BB133111EB)


@njit(cache=True)
def _seed_state_impl(seed, out):
    z = seed
    for i in range(4):
        z = z + _SM_GAMMA
        x = z
        x = (x ^ (x >> _U30)) * _SM_MUL1
        x = (x ^ (x >> _U27)) * _SM_MUL2
        out[i] = x ^ (x >> _U31)


def seed_state(seed):
    """Expand a 64-bit seed into a xoshiro256++ state via splitmix64."""
    out = np.empty(4, dtype=np.uint64)
    _seed_state_impl(np.uint64(int(seed) & ((1 << 64) - 1)), out)
    return out


@njit(cache=True)
def fill_uniforms(s, out):
    """Fill ``out`` with doubles in [0, 1) from the xoshiro256++ stream."""
    s0 = s[0]
    s1 = s[1]
    s2 = s[2]
    s3 = s[3]
    for idx in range(out.shape[0]):
        x = s0 + s3
        result = ((x << _U23) | (x >> _U41)) + s0
        t = s1 << _U17
        s2 ^= s0
        s3 ^= s1
        s1 ^= s2
        s0 ^= s3
        s2 ^= t
        s3 = (s3 << _U45) | (s3 >> _U19)
        out[idx] = (result >> _U11) * _DOUBLE_SCALE
    s[0] = s0
    s[1] = s1
    s[2] = s2
    s[3] = s3


@njit(cache=True)
def fill_normals(s, out, has_spare, spare):
    """Fill ``out`` with N(0,1) draws via the Marsaglia polar method.

    Returns the updated ``(has_spare, spare)`` carry so that bulk and
    one-at-a-time draws consume the identical underlying uniform stream.
    """
    s0 = s[0]
    s1 = s[1]
    s2 = s[2]
    s3 = s[3]
    n = out.shape[0]
    idx = 0
    if has_spare and idx < n:
        out[idx] = spare
        idx += 1
        has_spare = False
    while idx < n:
        a = 0.0
        b = 0.0
        q = 0.0
        while True:
            x = s0 + s3
            r1 = ((x << _U23) | (x >> _U41)) + s0
            t = s1 << _U17
            s2 ^= s0
            s3 ^= s1
            s1 ^= s2
            s0 ^= s3
            s2 ^= t
            s3 = (s3 << _U45) | (s3 >> _U19)
            x = s0 + s3
            r2 = ((x << _U23) | (x >> _U41)) + s0
            t = s1 << _U17
            s2 ^= s0
            s3 ^= s1
            s1 ^= s2
            s0 ^= s3
            s2 ^= t
            s3 = (s3 << _U45) | (s3 >> _U19)
            a = 2.0 * ((r1 >> _U11) * _DOUBLE_SCALE) - 1.0
            b = 2.0 * ((r2 >> _U11) * _DOUBLE_SCALE) - 1.0
            q = a * a + b * b
            if 0.0 < q < 1.0:
                break
        f = math.sqrt(-2.0 * math.log(q) / q)
        out[idx] = a * f
        idx += 1
        if idx < n:
            out[idx] = b * f
            idx += 1
        else:
            has_spare = True
            spare = b * f
    s[0] = s0
    s[1] = s1
    s[2] = s2
    s[3] = s3
    return has_spare, spare


@njit(cache=True)
def matmul(a, b):
    """Dense complex matrix product over split real/imag planes."""
    n = a.shape[0]
    kk = a.shape[1]
    m = b.shape[1]
    ar = np.empty((n, kk))
    ai = np.empty((n, kk))
    for i in range(n):
        for l in range(kk):
            z = a[i, l]
            ar[i, l] = z.real
            ai[i, l] = z.imag
    br = np.empty((kk, m))
    bi = np.empty((kk, m))
    for l in range(kk):
        for j in range(m):
            z = b[l, j]
            br[l, j] = z.real
            bi[l, j] = z.imag
    cr = np.zeros((n, m))
    ci = np.zeros((n, m))
    for i in range(n):
        for l in range(kk):
            xr = ar[i, l]
            xi = ai[i, l]
            for j in range(m):
                yr = br[l, j]
                yi = bi[l, j]
                cr[i, j] += xr * yr - xi * yi
                ci[i, j] += xr * yi + xi * yr
    out = np.empty((n, m), dtype=np.complex128)
    for i in range(n):
        for j in range(m):
            out[i, j] = complex(cr[i, j], ci[i, j])
    return out


@njit(cache=True)
def tridiagonalize(m):
    """Reduce a Hermitian matrix to real symmetric tridiagonal form.

    Returns ``(q, d, e)`` with ``q`` unitary, ``d`` the real diagonal and
    ``e`` the real nonnegative subdiagonal (length n-1) such that
    ``m = q @ T @ q*``.  Caller guarantees n >= 2 and a symmetrized input.
    """
    n = m.shape[0]
    a = m.copy()
    d = np.empty(n)
    esub = np.zeros(n, dtype=np.complex128)
    taus = np.zeros(n)
    v = np.empty(n, dtype=np.complex128)
    p = np.empty(n, dtype=np.complex128)
    w = np.empty(n, dtype=np.complex128)
    for k in range(n - 2):
        mlen = n - k - 1
        rest2 = 0.0
        for i in range(1, mlen):
            z = a[k + 1 + i, k]
            rest2 += z.real * z.real + z.imag * z.imag
        alpha = a[k + 1, k]
        if rest2 == 0.0:
            esub[k] = alpha
            continue
        aa = abs(alpha)
        nrm = math.sqrt(aa * aa + rest2)
        ph = alpha / aa if aa > 0.0 else complex(1.0, 0.0)
        beta = -ph * nrm
        v0 = alpha - beta
        av0 = abs(v0)
        tau = 2.0 / (av0 * av0 + rest2)
        a[k + 1, k] = v0
        for i in range(mlen):
            v[i] = a[k + 1 + i, k]
        for i in range(mlen):
            acc = complex(0.0, 0.0)
            for j in range(mlen):
                acc += a[k + 1 + i, k + 1 + j] * v[j]
            p[i] = tau * acc
        vp = 0.0
        for i in range(mlen):
            vp += (v[i].conjugate() * p[i]).real
        corr = 0.5 * tau * vp
        for i in range(mlen):
            w[i] = p[i] - corr * v[i]
        for i in range(mlen):
            vi = v[i]
            wi = w[i]
            for j in range(mlen):
                a[k + 1 + i, k + 1 + j] -= vi * w[j].conjugate() + wi * v[j].conjugate()
        esub[k] = beta
        taus[k] = tau
    esub[n - 2] = a[n - 1, n - 2]
    for i in range(n):
        d[i] = a[i, i].real

    q = np.zeros((n, n), dtype=np.complex128)
    for i in range(n):
        q[i, i] = 1.0
    sacc = np.empty(n, dtype=np.complex128)
    for k in range(n - 3, -1, -1):
        if taus[k] == 0.0:
            continue
        tau = taus[k]
        mlen = n - k - 1
        for j in range(mlen):
            sacc[j] = complex(0.0, 0.0)
        for i in range(mlen):
            vic = a[k + 1 + i, k].conjugate()
            for j in range(mlen):
                sacc[j] += vic * q[k + 1 + i, k + 1 + j]
        for i in range(mlen):
            tv = tau * a[k + 1 + i, k]
            for j in range(mlen):
                q[k + 1 + i, k + 1 + j] -= tv * sacc[j]

    e = np.empty(n - 1)
    phase = complex(1.0, 0.0)
    for k in range(n - 1):
        b = esub[k]
        ab = abs(b)
        e[k] = ab
        if ab > 0.0:
            phase = phase * (b / ab)
        for i in range(n):
            q[i, k + 1] *= phase
    return q, d, e


@njit(cache=True)
def tql2(d, e, vt):
    """Implicit-shift QL on a real symmetric tridiagonal matrix.

    ``d`` (n) and ``e`` (n, last entry zero) are updated in place; ``vt``
    holds basis vectors one per ROW and is rotated in place.  Returns -1 on
    success, or the index that failed to deflate within 30 sweeps.
    """
    n = d.shape[0]
    width = vt.shape[1]
    for l in range(n):
        iters = 0
        while True:
            m = l
            while m < n - 1:
                dd = abs(d[m]) + abs(d[m + 1])
                if abs(e[m]) <= _EPS * dd:
                    break
                m += 1
            if m == l:
                break
            iters += 1
            if iters > 30:
                return l
            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = math.hypot(g, 1.0)
            g = d[m] - d[l] + e[l] / (g + (r if g >= 0.0 else -r))
            s = 1.0
            c = 1.0
            p = 0.0
            underflow = False
            for i in range(m - 1, l - 1, -1):
                f = s * e[i]
                b = c * e[i]
                r = math.hypot(f, g)
                e[i + 1] = r
                if r == 0.0:
                    d[i + 1] -= p
                    e[m] = 0.0
                    underflow = True
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b
                for kcol in range(width):
                    z1 = vt[i, kcol]
                    z2 = vt[i + 1, kcol]
                    vt[i + 1, kcol] = complex(s * z1.real + c * z2.real,
                                              s * z1.imag + c * z2.imag)
                    vt[i, kcol] = complex(c * z1.real - s * z2.real,
                                          c * z1.imag - s * z2.imag)
            if underflow:
                continue
            d[l] -= p
            e[l] = g
            e[m] = 0.0
    return -1


@njit(cache=True)
def hessenberg(a_in):
    """Unitary reduction to upper Hessenberg form: ``a = q @ h @ q*``."""
    n = a_in.shape[0]
    a = a_in.copy()
    taus = np.zeros(n)
    betas = np.zeros(n, dtype=np.complex128)
    v = np.empty(n, dtype=np.complex128)
    sacc = np.empty(n, dtype=np.complex128)
    for k in range(n - 2):
        mlen = n - k - 1
        rest2 = 0.0
        for i in range(1, mlen):
            z = a[k + 1 + i, k]
            rest2 += z.real * z.real + z.imag * z.imag
        alpha = a[k + 1, k]
        if rest2 == 0.0:
            betas[k] = alpha
            continue
        aa = abs(alpha)
        nrm = math.sqrt(aa * aa + rest2)
        ph = alpha / aa if aa > 0.0 else complex(1.0, 0.0)
        beta = -ph * nrm
        v0 = alpha - beta
        av0 = abs(v0)
        tau = 2.0 / (av0 * av0 + rest2)
        a[k + 1, k] = v0
        for i in range(mlen):
            v[i] = a[k + 1 + i, k]
        # left update: rows k+1.., columns k+1..
        for j in range(mlen):
            sacc[j] = complex(0.0, 0.0)
        for i in range(mlen):
            vic = v[i].conjugate()
            for j in range(mlen):
                sacc[j] += vic * a[k + 1 + i, k + 1 + j]
        for i in range(mlen):
            tv = tau * v[i]
            for j in range(mlen):
                a[k + 1 + i, k + 1 + j] -= tv * sacc[j]
        # right update: all rows, columns k+1..
        for i in range(n):
            acc = complex(0.0, 0.0)
            for j in range(mlen):
                acc += a[i, k + 1 + j] * v[j]
            acc *= tau
            for j in range(mlen):
                a[i, k + 1 + j] -= acc * v[j].conjugate()
        betas[k] = beta
        taus[k] = tau
    if n >= 2:
        betas[n - 2] = a[n - 1, n - 2]

    q = np.zeros((n, n), dtype=np.complex128)
    for i in range(n):
        q[i, i] = 1.0
    for k in range(n - 3, -1, -1):
        if taus[k] == 0.0:
            continue
        tau = taus[k]
        mlen = n - k - 1
        for j in range(mlen):
            sacc[j] = complex(0.0, 0.0)
        for i in range(mlen):
            vic = a[k + 1 + i, k].conjugate()
            for j in range(mlen):
                sacc[j] += vic * q[k + 1 + i, k + 1 + j]
        for i in range(mlen):
            tv = tau * a[k + 1 + i, k]
            for j in range(mlen):
                q[k + 1 + i, k + 1 + j] -= tv * sacc[j]

    h = np.zeros((n, n), dtype=np.complex128)
    for i in range(n):
        for j in range(max(i - 1, 0), n):
            h[i, j] = a[i, j]
    for k in range(n - 1):
        h[k + 1, k] = betas[k]
    return q, h


@njit(cache=True)
def _givens(f, g):
    """Rotation [[c, s], [-conj(s), c]] (c real) sending (f, g) to (r, 0)."""
    if g == 0:
        return 1.0, complex(0.0, 0.0), f
    if f == 0:
        ag = abs(g)
        return 0.0, g.conjugate() / ag, complex(ag, 0.0)
    af = abs(f)
    dd = math.sqrt(af * af + g.real * g.real + g.imag * g.imag)
    c = af / dd
    phf = f / af
    s = phf * g.conjugate() / dd
    return c, s, phf * dd


@njit(cache=True)
def _wilkinson(a, b, c, d):
    """Eigenvalue of [[a, b], [c, d]] closest to d, via the stable root pair."""
    tr = a + d
    det = a * d - b * c
    disc = cmath.sqrt(0.25 * tr * tr - det)
    r1 = 0.5 * tr + disc
    r2 = 0.5 * tr - disc
    far = r1 if abs(r1) >= abs(r2) else r2
    if far == 0:
        return complex(0.0, 0.0)
    near = det / far
    return near if abs(near - d) <= abs(far - d) else far


@njit(cache=True)
def schur_qr(h, ut, max_sweeps):
    """Single-shift explicit QR iteration on a Hessenberg matrix, in place.

    ``h`` is reduced toward upper triangular; ``ut`` holds the accumulated
    unitary one COLUMN of U per row.  Returns -1 on success or the stuck
    active index after ``max_sweeps`` total sweeps.
    """
    n = h.shape[0]
    if n <= 1:
        return -1
    cs = np.empty(n)
    ss = np.empty(n, dtype=np.complex128)
    hi = n - 1
    total = 0
    stall = 0
    while hi > 0:
        l = hi
        while l > 0:
            if abs(h[l, l - 1]) <= _EPS * (abs(h[l - 1, l - 1]) + abs(h[l, l])):
                h[l, l - 1] = 0.0
                break
            l -= 1
        if l == hi:
            hi -= 1
            stall = 0
            continue
        total += 1
        if total > max_sweeps:
            return hi
        stall += 1
        if stall % 10 == 0:
            sigma = h[hi, hi] + 0.75 * abs(h[hi, hi - 1])
        else:
            sigma = _wilkinson(h[hi - 1, hi - 1], h[hi - 1, hi],
                               h[hi, hi - 1], h[hi, hi])
        for i in range(l, hi + 1):
            h[i, i] -= sigma
        for k in range(l, hi):
            c, s, r = _givens(h[k, k], h[k + 1, k])
            cs[k] = c
            ss[k] = s
            h[k, k] = r
            h[k + 1, k] = complex(0.0, 0.0)
            sc = s.conjugate()
            for j in range(k + 1, n):
                t1 = h[k, j]
                t2 = h[k + 1, j]
                h[k, j] = c * t1 + s * t2
                h[k + 1, j] = -sc * t1 + c * t2
        for k in range(l, hi):
            c = cs[k]
            s = ss[k]
            sc = s.conjugate()
            for i in range(k + 2):
                t1 = h[i, k]
                t2 = h[i, k + 1]
                h[i, k] = c * t1 + sc * t2
                h[i, k + 1] = -s * t1 + c * t2
            for i in range(n):
                t1 = ut[k, i]
                t2 = ut[k + 1, i]
                ut[k, i] = c * t1 + sc * t2
                ut[k + 1, i] = -s * t1 + c * t2
        for i in range(l, hi + 1):
            h[i, i] += sigma
    return -1


@njit(cache=True)
def qr_decompose(g):
    """Householder QR of a square complex matrix.

    Returns ``(q, rdiag)`` where ``rdiag`` is the (complex) diagonal of R.
    """
    a = g.copy()
    n = a.shape[0]
    taus = np.zeros(n)
    rdiag = np.empty(n, dtype=np.complex128)
    sacc = np.empty(n, dtype=np.complex128)
    for k in range(n):
        mlen = n - k
        rest2 = 0.0
        for i in range(1, mlen):
            z = a[k + i, k]
            rest2 += z.real * z.real + z.imag * z.imag
        alpha = a[k, k]
        if rest2 == 0.0:
            rdiag[k] = alpha
            continue
        aa = abs(alpha)
        nrm = math.sqrt(aa * aa + rest2)
        ph = alpha / aa if aa > 0.0 else complex(1.0, 0.0)
        beta = -ph * nrm
        v0 = alpha - beta
        av0 = abs(v0)
        tau = 2.0 / (av0 * av0 + rest2)
        a[k, k] = v0
        ncols = n - k - 1
        for j in range(ncols):
            sacc[j] = complex(0.0, 0.0)
        for i in range(mlen):
            vic = a[k + i, k].conjugate()
            for j in range(ncols):
                sacc[j] += vic * a[k + i, k + 1 + j]
        for i in range(mlen):
            tv = tau * a[k + i, k]
            for j in range(ncols):
                a[k + i, k + 1 + j] -= tv * sacc[j]
        rdiag[k] = beta
        taus[k] = tau
    q = np.zeros((n, n), dtype=np.complex128)
    for i in range(n):
        q[i, i] = 1.0
    for k in range(n - 1, -1, -1):
        if taus[k] == 0.0:
            continue
        tau = taus[k]
        mlen = n - k
        for j in range(mlen):
            sacc[j] = complex(0.0, 0.0)
        for i in range(mlen):
            vic = a[k + i, k].conjugate()
            for j in range(mlen):
                sacc[j] += vic * q[k + i, k + j]
        for i in range(mlen):
            tv = tau * a[k + i, k]
            for j in range(mlen):
                q[k + i, k + j] -= tv * sacc[j]
    return q, rdiag


@njit(cache=True)
def lsap(cost):
    """Minimum-cost square assignment via shortest augmenting paths.

    Returns ``col4row``: the column assigned to each row.  O(n^3) dual
    (Jonker-Volgenant style) method; one Dijkstra-like search per row.
    """
    n = cost.shape[0]
    u = np.zeros(n)
    v = np.zeros(n)
    shortest = np.empty(n)
    path = np.empty(n, dtype=np.int64)
    col4row = np.full(n, -1, dtype=np.int64)
    row4col = np.full(n, -1, dtype=np.int64)
    sr = np.zeros(n, dtype=np.bool_)
    sc = np.zeros(n, dtype=np.bool_)
    for cur_row in range(n):
        for j in range(n):
            shortest[j] = np.inf
            path[j] = -1
            sr[j] = False
            sc[j] = False
        i = cur_row
        min_val = 0.0
        sink = -1
        while sink == -1:
            sr[i] = True
            lowest = np.inf
            jbest = -1
            for j in range(n):
                if sc[j]:
                    continue
                r = min_val + cost[i, j] - u[i] - v[j]
                if r < shortest[j]:
                    shortest[j] = r
                    path[j] = i
                if shortest[j] < lowest or (shortest[j] == lowest and row4col[j] == -1):
                    lowest = shortest[j]
                    jbest = j
            min_val = lowest
            j = jbest
            if row4col[j] == -1:
                sink = j
            else:
                i = row4col[j]
            sc[j] = True
        u[cur_row] += min_val
        for irow in range(n):
            if sr[irow] and irow != cur_row:
                u[irow] += min_val - shortest[col4row[irow]]
        for j in range(n):
            if sc[j]:
                v[j] -= min_val - shortest[j]
        j = sink
        while True:
            irow = path[j]
            row4col[j] = irow
            jnext = col4row[irow]
            col4row[irow] = j
            j = jnext
            if irow == cur_row:
                break
    return col4row
