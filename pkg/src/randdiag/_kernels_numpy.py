"""Pure-numpy kernel implementations.

Fallback backend used when numba is unavailable or when
``RANDDIAG_BACKEND=numpy`` is set.  Same algorithms and call signatures as
:mod:`randdiag._kernels_numba`; inner loops are vectorized with numpy, outer
loops stay in Python.  The random-number kernels reproduce the numba stream
bit for bit (64-bit integer arithmetic emulated with Python ints).
"""

import math

import numpy as np

_MASK64 = (1 << 64) - 1
_EPS = 2.0 ** -52
_DOUBLE_SCALE = 2.0 ** -53


def _rotl(x, k):
    return ((x << k) | (x >> (64 - k))) & _MASK64


def _splitmix64(z):
    z = (z + 0x9E3779B97F4A7C15) & _MASK64
    x = z
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z, x ^ (x >> 31)


def seed_state(seed):
    """Expand a 64-bit seed into a xoshiro256++ state via splitmix64."""
    out = np.empty(4, dtype=np.uint64)
    z = int(seed) & _MASK64
    for i in range(4):
        z, word = _splitmix64(z)
        out[i] = word
    return out


def fill_uniforms(s, out):
    """Fill ``out`` with doubles in [0, 1) from the xoshiro256++ stream."""
    s0, s1, s2, s3 = int(s[0]), int(s[1]), int(s[2]), int(s[3])
    for idx in range(out.shape[0]):
        x = _rotl((s0 + s3) & _MASK64, 23)
        result = (x + s0) & _MASK64
        t = (s1 << 17) & _MASK64
        s2 ^= s0
        s3 ^= s1
        s1 ^= s2
        s0 ^= s3
        s2 ^= t
        s3 = _rotl(s3, 45)
        out[idx] = (result >> 11) * _DOUBLE_SCALE
    s[0], s[1], s[2], s[3] = s0, s1, s2, s3


def fill_normals(s, out, has_spare, spare):
    """Fill ``out`` with N(0,1) draws via the Marsaglia polar method.

    Returns the updated ``(has_spare, spare)`` carry so that bulk and
    one-at-a-time draws consume the identical underlying uniform stream.
    """
    s0, s1, s2, s3 = int(s[0]), int(s[1]), int(s[2]), int(s[3])
    n = out.shape[0]
    idx = 0
    if has_spare and idx < n:
        out[idx] = spare
        idx += 1
        has_spare = False
    while idx < n:
        while True:
            x = _rotl((s0 + s3) & _MASK64, 23)
            r1 = (x + s0) & _MASK64
            t = (s1 << 17) & _MASK64
            s2 ^= s0
            s3 ^= s1
            s1 ^= s2
            s0 ^= s3
            s2 ^= t
            s3 = _rotl(s3, 45)
            x = _rotl((s0 + s3) & _MASK64, 23)
            r2 = (x + s0) & _MASK64
            t = (s1 << 17) & _MASK64
            s2 ^= s0
            s3 ^= s1
            s1 ^= s2
            s0 ^= s3
            s2 ^= t
            s3 = _rotl(s3, 45)
            a = 2.0 * ((r1 >> 11) * _DOUBLE_SCALE) - 1.0
            b = 2.0 * ((r2 >> 11) * _DOUBLE_SCALE) - 1.0
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
    s[0], s[1], s[2], s[3] = s0, s1, s2, s3
    return has_spare, spare


def matmul(a, b):
    """Dense complex matrix product (numpy-native on this backend)."""
    return a @ b


def tridiagonalize(m):
    """Reduce a Hermitian matrix to real symmetric tridiagonal form.

    Returns ``(q, d, e)`` with ``q`` unitary, ``d`` the real diagonal and
    ``e`` the real nonnegative subdiagonal (length n-1) such that
    ``m = q @ T @ q*``.  Householder reflectors followed by a diagonal phase
    scaling that rotates the subdiagonal onto the nonnegative real axis.
    Caller guarantees n >= 2 and a Hermitian (symmetrized) input.
    """
    n = m.shape[0]
    a = m.copy()
    d = np.empty(n)
    esub = np.zeros(n, dtype=np.complex128)
    taus = np.zeros(n)
    for k in range(n - 2):
        col = a[k + 1:, k]
        rest = col[1:]
        rest2 = float(np.sum(rest.real * rest.real + rest.imag * rest.imag))
        alpha = col[0]
        if rest2 == 0.0:
            esub[k] = alpha
            continue
        aa = abs(alpha)
        nrm = math.sqrt(aa * aa + rest2)
        ph = alpha / aa if aa > 0.0 else 1.0 + 0.0j
        beta = -ph * nrm
        v0 = alpha - beta
        tau = 2.0 / (abs(v0) ** 2 + rest2)
        col[0] = v0
        v = col
        blk = a[k + 1:, k + 1:]
        p = tau * (blk @ v)
        corr = 0.5 * tau * float(np.vdot(v, p).real)
        w = p - corr * v
        blk -= np.outer(v, w.conj())
        blk -= np.outer(w, v.conj())
        esub[k] = beta
        taus[k] = tau
    esub[n - 2] = a[n - 1, n - 2]
    d[:] = np.diagonal(a).real

    q = np.eye(n, dtype=np.complex128)
    for k in range(n - 3, -1, -1):
        if taus[k] == 0.0:
            continue
        v = a[k + 1:, k]
        blk = q[k + 1:, k + 1:]
        blk -= taus[k] * np.outer(v, v.conj() @ blk)

    e = np.empty(n - 1)
    phase = 1.0 + 0.0j
    for k in range(n - 1):
        b = esub[k]
        ab = abs(b)
        e[k] = ab
        if ab > 0.0:
            phase = phase * (b / ab)
        q[:, k + 1] *= phase
    return q, d, e


def tql2(d, e, vt):
    """Implicit-shift QL on a real symmetric tridiagonal matrix.

    ``d`` (n) and ``e`` (n, last entry zero) are updated in place; ``d``
    ends up holding eigenvalues in deflation order.  ``vt`` holds basis
    vectors one per ROW and is rotated in place.  Deflation uses
    ``|e_k| <= eps * (|d_k| + |d_k+1|)``.  Returns -1 on success, or the
    index that failed to deflate within 30 sweeps.
    """
    n = d.shape[0]
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
                row_hi = s * vt[i] + c * vt[i + 1]
                row_lo = c * vt[i] - s * vt[i + 1]
                vt[i + 1] = row_hi
                vt[i] = row_lo
            if underflow:
                continue
            d[l] -= p
            e[l] = g
            e[m] = 0.0
    return -1


def hessenberg(a_in):
    """Unitary reduction to upper Hessenberg form: ``a = q @ h @ q*``."""
    n = a_in.shape[0]
    a = a_in.copy()
    taus = np.zeros(n)
    betas = np.zeros(n, dtype=np.complex128)
    for k in range(n - 2):
        col = a[k + 1:, k]
        rest = col[1:]
        rest2 = float(np.sum(rest.real * rest.real + rest.imag * rest.imag))
        alpha = col[0]
        if rest2 == 0.0:
            betas[k] = alpha
            continue
        aa = abs(alpha)
        nrm = math.sqrt(aa * aa + rest2)
        ph = alpha / aa if aa > 0.0 else 1.0 + 0.0j
        beta = -ph * nrm
        v0 = alpha - beta
        tau = 2.0 / (abs(v0) ** 2 + rest2)
        col[0] = v0
        v = col
        blk = a[k + 1:, k + 1:]
        blk -= tau * np.outer(v, v.conj() @ blk)
        full = a[:, k + 1:]
        full -= tau * np.outer(full @ v, v.conj())
        betas[k] = beta
        taus[k] = tau
    if n >= 2:
        betas[n - 2] = a[n - 1, n - 2]

    q = np.eye(n, dtype=np.complex128)
    for k in range(n - 3, -1, -1):
        if taus[k] == 0.0:
            continue
        v = a[k + 1:, k]
        blk = q[k + 1:, k + 1:]
        blk -= taus[k] * np.outer(v, v.conj() @ blk)

    h = np.triu(a, -1)
    for k in range(n - 1):
        h[k + 1, k] = betas[k]
    return q, h


def _givens(f, g):
    """Rotation [[c, s], [-conj(s), c]] (c real) sending (f, g) to (r, 0)."""
    if g == 0:
        return 1.0, 0.0j, f
    if f == 0:
        ag = abs(g)
        return 0.0, g.conjugate() / ag, complex(ag)
    af = abs(f)
    dd = math.sqrt(af * af + g.real * g.real + g.imag * g.imag)
    c = af / dd
    phf = f / af
    s = phf * g.conjugate() / dd
    return c, s, phf * dd


def _wilkinson(a, b, c, d):
    """Eigenvalue of [[a, b], [c, d]] closest to d, via the stable root pair."""
    tr = a + d
    det = a * d - b * c
    disc = np.sqrt(np.complex128(0.25 * tr * tr - det))
    r1 = 0.5 * tr + disc
    r2 = 0.5 * tr - disc
    far = r1 if abs(r1) >= abs(r2) else r2
    if far == 0:
        return 0.0j
    near = det / far
    return near if abs(near - d) <= abs(far - d) else far


def schur_qr(h, ut, max_sweeps):
    """Single-shift explicit QR iteration on a Hessenberg matrix, in place.

    ``h`` is reduced toward upper triangular; ``ut`` holds the accumulated
    unitary one COLUMN of U per row.  Subdiagonal entries are set exactly to
    zero on deflation.  Wilkinson shift, with an ad-hoc exceptional shift
    every 10 stalled sweeps on the same subdiagonal.  Returns -1 on success
    or the stuck active index after ``max_sweeps`` total sweeps.
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
        diag = np.arange(l, hi + 1)
        h[diag, diag] -= sigma
        for k in range(l, hi):
            c, s, r = _givens(h[k, k], h[k + 1, k])
            cs[k] = c
            ss[k] = s
            h[k, k] = r
            h[k + 1, k] = 0.0
            row1 = h[k, k + 1:].copy()
            row2 = h[k + 1, k + 1:]
            h[k, k + 1:] = c * row1 + s * row2
            h[k + 1, k + 1:] = -s.conjugate() * row1 + c * row2
        for k in range(l, hi):
            c = cs[k]
            s = ss[k]
            rmax = k + 2
            col1 = h[:rmax, k].copy()
            col2 = h[:rmax, k + 1]
            h[:rmax, k] = c * col1 + s.conjugate() * col2
            h[:rmax, k + 1] = -s * col1 + c * col2
            u1 = ut[k].copy()
            u2 = ut[k + 1]
            ut[k] = c * u1 + s.conjugate() * u2
            ut[k + 1] = -s * u1 + c * u2
        h[diag, diag] += sigma
    return -1


def qr_decompose(g):
    """Householder QR of a square complex matrix.

    Returns ``(q, rdiag)`` where ``rdiag`` is the (complex) diagonal of R.
    """
    a = g.copy()
    n = a.shape[0]
    taus = np.zeros(n)
    rdiag = np.empty(n, dtype=np.complex128)
    for k in range(n):
        col = a[k:, k]
        rest = col[1:]
        rest2 = float(np.sum(rest.real * rest.real + rest.imag * rest.imag))
        alpha = col[0]
        if rest2 == 0.0:
            rdiag[k] = alpha
            continue
        aa = abs(alpha)
        nrm = math.sqrt(aa * aa + rest2)
        ph = alpha / aa if aa > 0.0 else 1.0 + 0.0j
        beta = -ph * nrm
        v0 = alpha - beta
        tau = 2.0 / (abs(v0) ** 2 + rest2)
        col[0] = v0
        v = col
        blk = a[k:, k + 1:]
        blk -= tau * np.outer(v, v.conj() @ blk)
        rdiag[k] = beta
        taus[k] = tau
    q = np.eye(n, dtype=np.complex128)
    for k in range(n - 1, -1, -1):
        if taus[k] == 0.0:
            continue
        v = a[k:, k]
        blk = q[k:, k:]
        blk -= taus[k] * np.outer(v, v.conj() @ blk)
    return q, rdiag


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
        shortest[:] = np.inf
        path[:] = -1
        sr[:] = False
        sc[:] = False
        i = cur_row
        min_val = 0.0
        sink = -1
        while sink == -1:
            sr[i] = True
            freeidx = np.flatnonzero(~sc)
            r = min_val + cost[i, freeidx] - u[i] - v[freeidx]
            better = r < shortest[freeidx]
            upd = freeidx[better]
            shortest[upd] = r[better]
            path[upd] = i
            svals = shortest[freeidx]
            pos = int(np.argmin(svals))
            lowest = svals[pos]
            ties = freeidx[svals == lowest]
            unassigned = ties[row4col[ties] == -1]
            j = int(unassigned[0]) if unassigned.size else int(freeidx[pos])
            min_val = float(lowest)
            if row4col[j] == -1:
                sink = j
            else:
                i = int(row4col[j])
            sc[j] = True
        u[cur_row] += min_val
        for irow in np.flatnonzero(sr):
            if irow != cur_row:
                u[irow] += min_val - shortest[col4row[irow]]
        scidx = np.flatnonzero(sc)
        v[scidx] -= min_val - shortest[scidx]
        j = sink
        while True:
            irow = int(path[j])
            row4col[j] = irow
            col4row[irow], j = j, col4row[irow]
            if irow == cur_row:
                break
    return col4row
