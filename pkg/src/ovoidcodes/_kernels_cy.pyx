# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled implementations of the hot enumeration kernels.

Same contracts as the numpy fallback: field elements are packed indices,
canonical projective points are rank-encoded, and enumeration follows the
odometer with the lowest coordinate moving fastest.  Instead of chunked
matrix products these kernels walk the odometer and apply per-digit
deltas, keeping running dot products (sweep) or a running codeword and
weight (histogram).  The sweep and histogram loops release the GIL so
the dispatcher can shard them across threads.
"""

import numpy as np

from libc.stdint cimport int64_t, uint16_t, int8_t


cdef void _neg_table(uint16_t* neg, int q, int p, int m) noexcept nogil:
    # additive inverse per packed index: negate every base-p digit
    cdef int a, t, d, rem, out, pw
    for a in range(q):
        out = 0
        pw = 1
        rem = a
        for t in range(m):
            d = rem % p
            rem //= p
            if d:
                out += (p - d) * pw
            pw *= p
        neg[a] = <uint16_t> out


cdef inline int _decode_rank(int64_t rank, const int64_t* offs, int q,
                             int64_t* c) noexcept nogil:
    """Rank -> canonical flat vector; returns the leading position."""
    cdef int k = 0, j
    while k < 7 and rank >= offs[k + 1]:
        k += 1
    cdef int64_t local = rank - offs[k]
    for j in range(8):
        c[j] = 0
    c[k] = 1
    for j in range(k + 1, 8):
        c[j] = local % q
        local //= q
    return k


cdef inline int64_t _encode_vec(const int64_t* offs, int q,
                                const int64_t* w) noexcept nogil:
    """Canonical flat vector (leading coordinate 1) -> rank."""
    cdef int lead = 0, j
    while w[lead] == 0:
        lead += 1
    cdef int64_t acc = 0
    for j in range(7, lead, -1):
        acc = acc * q + w[j]
    return offs[lead] + acc


def sweep_sections(dual, tables, start, stop):
    """For every canonical point rank in [start, stop): the number of rows i
    of dual with sum_k dual[i,k] * v_k = 0 over F_q."""
    cdef int q = tables.q, p = tables.p, m = tables.m
    cdef const uint16_t[:, ::1] addt = tables.add
    cdef const uint16_t[:, ::1] mult = tables.mul
    dual_arr = np.ascontiguousarray(dual, dtype=np.uint16)
    cdef const uint16_t[:, ::1] dl = dual_arr
    cdef Py_ssize_t r = dl.shape[0]
    cdef int64_t lo = start, hi = stop
    out_arr = np.empty(max(hi - lo, 0), dtype=np.uint16)
    cdef uint16_t[::1] out = out_arr
    neg_arr = np.empty(q, dtype=np.uint16)
    cdef uint16_t[::1] neg = neg_arr
    offs_arr = np.zeros(9, dtype=np.int64)
    for kk in range(8):
        offs_arr[kk + 1] = offs_arr[kk] + q ** (7 - kk)
    cdef const int64_t[::1] offs = offs_arr
    acc_arr = np.zeros(max(r, 1), dtype=np.uint16)
    cdef uint16_t[::1] acc = acc_arr
    cdef int64_t c[8]
    cdef int64_t rank, cnt
    cdef Py_ssize_t i
    cdef int kk2, j, olddig, newdig, delta, dv, a
    if hi <= lo:
        return out_arr
    with nogil:
        _neg_table(&neg[0], q, p, m)
        rank = lo
        while rank < hi:
            kk2 = _decode_rank(rank, &offs[0], q, c)
            cnt = 0
            for i in range(r):
                a = 0
                for j in range(kk2, 8):
                    dv = dl[i, j]
                    if dv and c[j]:
                        a = addt[a, mult[dv, c[j]]]
                acc[i] = <uint16_t> a
                if a == 0:
                    cnt += 1
            out[rank - lo] = <uint16_t> cnt
            rank += 1
            # stay inside the current leading-position block; each step
            # changes one odometer digit plus any carried ones, and the
            # running dot products get only the per-digit delta applied
            while rank < hi and rank < offs[kk2 + 1]:
                j = kk2 + 1
                while True:
                    olddig = <int> c[j]
                    newdig = olddig + 1
                    if newdig == q:
                        newdig = 0
                    c[j] = newdig
                    delta = addt[newdig, neg[olddig]]
                    for i in range(r):
                        dv = dl[i, j]
                        if dv:
                            a = acc[i]
                            if a == 0:
                                cnt -= 1
                            a = addt[a, mult[dv, delta]]
                            if a == 0:
                                cnt += 1
                            acc[i] = <uint16_t> a
                    if newdig != 0:
                        break
                    j += 1
                out[rank - lo] = <uint16_t> cnt
                rank += 1
    return out_arr


def orbit_bfs(mats, tables, seeds, n_points):
    """Multi-seed BFS of <mats> acting on canonical points; labels by seed index.

    Raises if two seeds turn out to lie in the same orbit.
    """
    cdef int q = tables.q
    cdef const uint16_t[:, ::1] addt = tables.add
    cdef const uint16_t[:, ::1] mult = tables.mul
    cdef const uint16_t[::1] invt = tables.inv
    mats_arr = np.ascontiguousarray(mats, dtype=np.uint16)
    cdef const uint16_t[:, :, ::1] mt = mats_arr
    cdef Py_ssize_t ng = mt.shape[0]
    seeds_arr = np.ascontiguousarray(seeds, dtype=np.int64)
    cdef const int64_t[::1] sd = seeds_arr
    cdef int64_t npts = n_points
    labels_arr = np.full(npts, -1, dtype=np.int8)
    cdef int8_t[::1] labels = labels_arr
    queue_arr = np.empty(npts, dtype=np.int64)
    cdef int64_t[::1] queue = queue_arr
    offs_arr = np.zeros(9, dtype=np.int64)
    for kk in range(8):
        offs_arr[kk + 1] = offs_arr[kk] + q ** (7 - kk)
    cdef const int64_t[::1] offs = offs_arr
    cdef int64_t c[8]
    cdef int64_t w[8]
    cdef int64_t head, tail, cur, img
    cdef Py_ssize_t sid, g
    cdef int i, jj, a, ivl, lead, mv
    cdef int err = 0
    for sid in range(sd.shape[0]):
        if labels[sd[sid]] != -1:
            raise RuntimeError("orbit seeds are not in distinct orbits")
        labels[sd[sid]] = <int8_t> sid
        queue[0] = sd[sid]
        head = 0
        tail = 1
        with nogil:
            while head < tail:
                cur = queue[head]
                head += 1
                _decode_rank(cur, &offs[0], q, c)
                for g in range(ng):
                    for i in range(8):
                        a = 0
                        for jj in range(8):
                            mv = mt[g, i, jj]
                            if mv and c[jj]:
                                a = addt[a, mult[mv, c[jj]]]
                        w[i] = a
                    lead = 0
                    while lead < 8 and w[lead] == 0:
                        lead += 1
                    if lead == 8:
                        err = 2
                        break
                    ivl = invt[w[lead]]
                    if ivl != 1:
                        for i in range(lead, 8):
                            w[i] = mult[ivl, w[i]]
                    img = _encode_vec(&offs[0], q, w)
                    if labels[img] == -1:
                        labels[img] = <int8_t> sid
                        queue[tail] = img
                        tail += 1
                    elif labels[img] != <int8_t> sid:
                        err = 1
                        break
                if err:
                    break
        if err == 2:
            raise RuntimeError("singular matrix in orbit BFS")
        if err:
            raise RuntimeError("orbit BFS reached a point labeled by another seed")
    return labels_arr


def codeword_hist(gen, tables, m_start, m_stop):
    """Weight histogram of the codewords msg @ gen for message indices in
    [m_start, m_stop), messages enumerated in odometer order."""
    cdef int q = tables.q, p = tables.p, m = tables.m
    cdef const uint16_t[:, ::1] addt = tables.add
    cdef const uint16_t[:, ::1] mult = tables.mul
    gen_arr = np.ascontiguousarray(gen, dtype=np.uint16)
    cdef const uint16_t[:, ::1] gm = gen_arr
    cdef Py_ssize_t k = gm.shape[0], n = gm.shape[1]
    hist_arr = np.zeros(n + 1, dtype=np.int64)
    cdef int64_t[::1] hist = hist_arr
    neg_arr = np.empty(q, dtype=np.uint16)
    cdef uint16_t[::1] neg = neg_arr
    cw_arr = np.zeros(max(n, 1), dtype=np.uint16)
    cdef uint16_t[::1] cw = cw_arr
    msg_arr = np.zeros(max(k, 1), dtype=np.int64)
    cdef int64_t[::1] msg = msg_arr
    cdef int64_t lo = m_start, hi = m_stop, cur, wt
    cdef Py_ssize_t j, cidx
    cdef int olddig, newdig, delta, gv, a, aa
    if hi <= lo:
        return hist_arr
    with nogil:
        _neg_table(&neg[0], q, p, m)
        cur = lo
        for j in range(k):
            msg[j] = cur % q
            cur //= q
        wt = 0
        for cidx in range(n):
            a = 0
            for j in range(k):
                if gm[j, cidx] and msg[j]:
                    a = addt[a, mult[gm[j, cidx], msg[j]]]
            cw[cidx] = <uint16_t> a
            if a:
                wt += 1
        hist[wt] += 1
        cur = lo + 1
        while cur < hi:
            j = 0
            while True:
                olddig = <int> msg[j]
                newdig = olddig + 1
                if newdig == q:
                    newdig = 0
                msg[j] = newdig
                delta = addt[newdig, neg[olddig]]
                for cidx in range(n):
                    gv = gm[j, cidx]
                    if gv:
                        a = cw[cidx]
                        aa = addt[a, mult[gv, delta]]
                        cw[cidx] = <uint16_t> aa
                        if a == 0:
                            if aa != 0:
                                wt += 1
                        elif aa == 0:
                            wt -= 1
                if newdig != 0:
                    break
                j += 1
            hist[wt] += 1
            cur += 1
    return hist_arr
