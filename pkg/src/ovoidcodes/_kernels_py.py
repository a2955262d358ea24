"""Numpy fallback implementations of the hot enumeration kernels.

All three kernels work on the packed-index encoding of F_q and on the
rank encoding of the canonical projective points of PG(7,q): points with
leading coordinate position k (earlier coordinates zero, coordinate k
equal to 1) form a block of q^(7-k) consecutive ranks, ordered by the
odometer on the trailing coordinates with the lowest one moving fastest.

Arithmetic is exact: F_q values are expanded into their base-p digit
vectors, linear maps over F_q become F_p matrices acting on digits, and
the float32 matmuls below stay far inside the exact-integer range.
"""

import numpy as np

# chunk budgets (entries per temporary), keeps peak memory modest
_SWEEP_BUDGET = 1 << 25
_FRONTIER_CHUNK = 1 << 19


def _offsets(q):
    offs = np.zeros(9, dtype=np.int64)
    for k in range(8):
        offs[k + 1] = offs[k] + q ** (7 - k)
    return offs


def _decode_ranks(ranks, q):
    """Rank array -> (len, 8) array of canonical flat coordinate vectors."""
    offs = _offsets(q)
    out = np.zeros((len(ranks), 8), dtype=np.int64)
    k = np.searchsorted(offs, ranks, side="right") - 1
    local = ranks - offs[k]
    for kk in range(8):
        mask = k == kk
        if not mask.any():
            continue
        L = local[mask]
        out[mask, kk] = 1
        for t in range(7 - kk):
            out[mask, kk + 1 + t] = (L // q**t) % q
    return out


def _encode_vectors(flat, q):
    """Canonical flat vectors -> ranks (leading coordinate must be 1)."""
    offs = _offsets(q)
    k = np.argmax(flat != 0, axis=1)
    L = np.zeros(flat.shape[0], dtype=np.int64)
    for kk in range(8):
        mask = k == kk
        if not mask.any():
            continue
        sub = flat[mask]
        acc = np.zeros(int(mask.sum()), dtype=np.int64)
        for idx in range(7, kk, -1):
            acc = acc * q + sub[:, idx]
        L[mask] = acc
    return offs[k] + L


def _fp_digits(mat, p, m):
    """(..., c) F_q indices -> (..., c*m) base-p digit vectors, low digit first."""
    digs = np.stack([(mat // p**t) % p for t in range(m)], axis=-1)
    return digs.reshape(*mat.shape[:-1], mat.shape[-1] * m)


def _fq_linear_to_fp(mat, tables):
    """F_q coefficient matrix (r, c) -> F_p matrix (r*m, c*m) on digit vectors.

    Row i of mat represents v -> sum_k mat[i,k] * v_k over F_q; the output
    rows give the m digit components of that map on digit-expanded input.
    """
    p, m = tables.p, tables.m
    r, c = mat.shape
    pw = p ** np.arange(m, dtype=np.int64)
    prods = tables.mul[np.asarray(mat, dtype=np.int64)[:, :, None], pw[None, None, :]]
    digs = np.stack([(prods.astype(np.int64) // p**j) % p for j in range(m)], axis=1)
    return digs.reshape(r * m, c * m).astype(np.float32)


def sweep_sections(dual, tables, start, stop):
    """For every canonical point rank in [start, stop): the number of rows i
    of dual with sum_k dual[i,k] * v_k = 0 over F_q."""
    q, p, m = tables.q, tables.p, tables.m
    r = dual.shape[0]
    phi = _fq_linear_to_fp(dual, tables)
    out = np.empty(stop - start, dtype=np.uint16)
    step = max(1024, _SWEEP_BUDGET // max(1, r * m))
    pos = start
    while pos < stop:
        hi = min(stop, pos + step)
        pts = _decode_ranks(np.arange(pos, hi, dtype=np.int64), q)
        ptsp = _fp_digits(pts, p, m).astype(np.float32)
        s = (phi @ ptsp.T).astype(np.int64) % p
        zero = (s == 0).reshape(r, m, -1).all(axis=1)
        out[pos - start : hi - start] = zero.sum(axis=0, dtype=np.int64)
        pos = hi
    return out


def orbit_bfs(mats, tables, seeds, n_points):
    """Multi-seed BFS of <mats> acting on canonical points; labels by seed index.

    Raises if two seeds turn out to lie in the same orbit.
    """
    q, p, m = tables.q, tables.p, tables.m
    pw = p ** np.arange(m, dtype=np.int64)
    mul = tables.mul.astype(np.int64)
    inv = tables.inv.astype(np.int64)
    mps = [_fq_linear_to_fp(mats[g], tables) for g in range(mats.shape[0])]
    labels = np.full(n_points, -1, dtype=np.int8)
    for sid, seed in enumerate(np.asarray(seeds, dtype=np.int64)):
        if labels[seed] != -1:
            raise RuntimeError("orbit seeds are not in distinct orbits")
        labels[seed] = sid
        frontier = np.array([seed], dtype=np.int64)
        while frontier.size:
            images = []
            for lo in range(0, frontier.size, _FRONTIER_CHUNK):
                chunk = frontier[lo : lo + _FRONTIER_CHUNK]
                vp = _fp_digits(_decode_ranks(chunk, q), p, m).astype(np.float32)
                for mp in mps:
                    w = (vp @ mp.T).astype(np.int64) % p
                    wq = (w.reshape(-1, 8, m) * pw[None, None, :]).sum(axis=2)
                    lead = np.argmax(wq != 0, axis=1)
                    lv = wq[np.arange(wq.shape[0]), lead]
                    wq = mul[inv[lv][:, None], wq]
                    images.append(_encode_vectors(wq, q))
            cand = np.unique(np.concatenate(images))
            lab = labels[cand]
            if ((lab != -1) & (lab != sid)).any():
                raise RuntimeError("orbit BFS reached a point labeled by another seed")
            new = cand[lab == -1]
            labels[new] = sid
            frontier = new
    return labels


def codeword_hist(gen, tables, m_start, m_stop):
    """Weight histogram of the codewords msg @ gen for message indices in
    [m_start, m_stop), messages enumerated in odometer order."""
    q, p, m = tables.q, tables.p, tables.m
    k, n = gen.shape
    phi = _fq_linear_to_fp(np.asarray(gen, dtype=np.int64).T, tables)  # (n*m, k*m)
    hist = np.zeros(n + 1, dtype=np.int64)
    step = max(256, _SWEEP_BUDGET // max(1, n * m))
    pos = m_start
    while pos < m_stop:
        hi = min(m_stop, pos + step)
        msgs = np.arange(pos, hi, dtype=np.int64)
        digs = np.stack([(msgs // p**j) % p for j in range(k * m)], axis=1).astype(np.float32)
        s = (digs @ phi.T).astype(np.int64) % p
        weights = (s != 0).reshape(-1, n, m).any(axis=2).sum(axis=1)
        hist += np.bincount(weights, minlength=n + 1)
        pos = hi
    return hist
