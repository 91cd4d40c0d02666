"""Hot enumeration kernels with a numba path and a pure-numpy path.

The numba kernels are used when numba imports and ``FEYNQUAD_DISABLE_NUMBA``
is unset (or ``0``).  Both paths take the same arguments and return the same
values; callers pick one with :func:`get_backend`.

Conventions shared by all kernels: vertices are 0-based, ``ei``/``ej`` are
int64 arrays of edge endpoints, ``signs`` is an int64 array of length ``d``
holding the quadric signature reduced mod q (so -1 is ``q - 1``).  Kernels
work on a half-open range ``[start, stop)`` of a flat enumeration index so
callers can partition the work.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from types import SimpleNamespace

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False

ENV_FLAG = "FEYNQUAD_DISABLE_NUMBA"
BATCH = 1 << 15


def numba_disabled() -> bool:
    return os.environ.get(ENV_FLAG, "0") not in ("", "0", "false", "False")


def default_backend() -> str:
    return "numba" if HAVE_NUMBA and not numba_disabled() else "numpy"


def inverse_table(q: int) -> np.ndarray:
    inv = np.zeros(q, dtype=np.int64)
    for a in range(1, q):
        inv[a] = pow(a, -1, q)
    return inv


# ---------------------------------------------------------------------------
# numpy path


def index_digits(idx: np.ndarray, q: int, m: int) -> np.ndarray:
    """Base-q digits (least significant first) of each index, shape (len(idx), m)."""
    out = np.empty((idx.shape[0], m), dtype=np.int64)
    rest = idx.astype(np.int64, copy=True)
    for k in range(m):
        rest, out[:, k] = np.divmod(rest, q)
    return out


def point_batches(q: int, m: int, start: int = 0, stop: int | None = None, batch: int = BATCH):
    """Yield all points of F_q^m in index order as int64 arrays of shape (B, m)."""
    stop = q**m if stop is None else stop
    for lo in range(start, stop, batch):
        hi = min(lo + batch, stop)
        yield index_digits(np.arange(lo, hi, dtype=np.int64), q, m)


def batched_rank(mats: np.ndarray, q: int, inv: np.ndarray) -> np.ndarray:
    """Rank mod q of every matrix in a (B, r, c) stack, by masked Gauss-Jordan."""
    m = mats % q
    b, r, c = m.shape
    rank = np.zeros(b, dtype=np.int64)
    if r == 0 or c == 0:
        return rank
    used = np.zeros((b, r), dtype=bool)
    rows = np.arange(b)
    for col in range(c):
        cand = (~used) & (m[:, :, col] != 0)
        has = cand.any(axis=1)
        if not has.any():
            continue
        sel = rows[has]
        p = np.argmax(cand[has], axis=1)
        piv = m[sel, p, :] * inv[m[sel, p, col]][:, None] % q
        m[sel, p, :] = piv
        factors = m[sel, :, col].copy()
        factors[np.arange(sel.size), p] = 0
        m[sel] = (m[sel] - factors[:, :, None] * piv[:, None, :]) % q
        used[sel, p] = True
        rank[sel] += 1
    return rank


def _edge_rows_numpy(w: np.ndarray, q, d, n, ei, ej, signs):
    """Constraint rows for each edge: (B, E, d*n)."""
    bsz = w.shape[0]
    ne = ei.shape[0]
    rows = np.zeros((bsz, ne, d * n), dtype=np.int64)
    for k in range(ne):
        i, j = int(ei[k]), int(ej[k])
        v = (w[:, i * d : (i + 1) * d] - w[:, j * d : (j + 1) * d]) * signs % q
        rows[:, k, i * d : (i + 1) * d] = v
        rows[:, k, j * d : (j + 1) * d] = (-v) % q
    return rows


def fibrewise_hist_numpy(q, d, n, ei, ej, signs, start, stop):
    """Signed rank histogram over w-tuples with ``w^1 = 0``.

    ``hist[r]`` is the sum over w in the range and nonempty edge subsets S of
    ``(-1)^(|S|+1)`` for subsets whose constraint rows have rank ``r``.
    """
    dn = d * n
    hist = np.zeros(dn + 1, dtype=np.int64)
    ne = ei.shape[0]
    if ne == 0 or stop <= start:
        return hist
    inv = inverse_table(q)
    free = d * (n - 1)
    for lo in range(start, stop, BATCH):
        hi = min(lo + BATCH, stop)
        digits = index_digits(np.arange(lo, hi, dtype=np.int64), q, free)
        w = np.concatenate([np.zeros((hi - lo, d), dtype=np.int64), digits], axis=1)
        rows = _edge_rows_numpy(w, q, d, n, ei, ej, signs)
        for mask in range(1, 1 << ne):
            members = [k for k in range(ne) if mask >> k & 1]
            sign = 1 if len(members) % 2 else -1
            r = batched_rank(rows[:, members, :], q, inv)
            hist += sign * np.bincount(r, minlength=dn + 1)
    return hist


def _brute_digits_to_zw(x, d, n, pinned):
    dn = d * n
    z = x[:, :dn]
    if pinned:
        w = np.concatenate([np.zeros((x.shape[0], d), dtype=np.int64), x[:, dn:]], axis=1)
    else:
        w = x[:, dn:]
    return z, w


def brute_count_numpy(q, d, n, ei, ej, signs, start, stop, pinned):
    """Tuples in the index range lying on at least one edge quadric."""
    m = 2 * d * n - (d if pinned else 0)
    total = 0
    for x in point_batches(q, m, start, stop):
        z, w = _brute_digits_to_zw(x, d, n, pinned)
        hit = np.zeros(x.shape[0], dtype=bool)
        for k in range(ei.shape[0]):
            i, j = int(ei[k]), int(ej[k])
            dz = z[:, i * d : (i + 1) * d] - z[:, j * d : (j + 1) * d]
            dw = w[:, i * d : (i + 1) * d] - w[:, j * d : (j + 1) * d]
            hit |= (dz * dw * signs).sum(axis=1) % q == 0
        total += int(hit.sum())
    return total


NUMPY = SimpleNamespace(
    name="numpy", fibrewise_hist=fibrewise_hist_numpy, brute_count=brute_count_numpy
)


# ---------------------------------------------------------------------------
# numba path

if HAVE_NUMBA:

    @njit(cache=True, nogil=True)
    def _rank_rows_nb(buf, nrows, ncols, q, inv):
        # in-place elimination on buf[:nrows, :ncols]; stops once rank saturates
        limit = nrows if nrows < ncols else ncols
        r = 0
        for col in range(ncols):
            p = -1
            for i in range(r, nrows):
                if buf[i, col] != 0:
                    p = i
                    break
            if p < 0:
                continue
            if p != r:
                for c in range(ncols):
                    t = buf[r, c]
                    buf[r, c] = buf[p, c]
                    buf[p, c] = t
            f = inv[buf[r, col]]
            for c in range(col, ncols):
                buf[r, c] = buf[r, c] * f % q
            for i in range(r + 1, nrows):
                g = buf[i, col]
                if g != 0:
                    for c in range(col, ncols):
                        buf[i, c] = (buf[i, c] - g * buf[r, c]) % q
            r += 1
            if r == limit:
                break
        return r

    @njit(cache=True, nogil=True)
    def fibrewise_hist_numba(q, d, n, ei, ej, signs, start, stop):
        dn = d * n
        ne = ei.shape[0]
        hist = np.zeros(dn + 1, dtype=np.int64)
        if ne == 0 or stop <= start:
            return hist
        inv = np.zeros(q, dtype=np.int64)
        for a in range(1, q):
            b = 1
            for _ in range(q - 2):
                b = b * a % q
            inv[a] = b
        free = d * (n - 1)
        digits = np.zeros(free, dtype=np.int64)
        rest = start
        for k in range(free):
            digits[k] = rest % q
            rest //= q
        w = np.zeros(dn, dtype=np.int64)
        rows = np.zeros((ne, dn), dtype=np.int64)
        nonzero = np.zeros(ne, dtype=np.bool_)
        buf = np.zeros((ne, dn), dtype=np.int64)
        nsub = 1 << ne
        for _ in range(start, stop):
            for k in range(free):
                w[d + k] = digits[k]
            for k in range(ne):
                i = ei[k]
                j = ej[k]
                nz = False
                for c in range(dn):
                    rows[k, c] = 0
                for t in range(d):
                    v = (w[i * d + t] - w[j * d + t]) * signs[t] % q
                    rows[k, i * d + t] = v
                    rows[k, j * d + t] = (q - v) % q
                    if v != 0:
                        nz = True
                nonzero[k] = nz
            # Gray-code walk over nonempty subsets; parity flips every step
            mask = 0
            size = 0
            for g in range(1, nsub):
                bit = 0
                h = g
                while (h & 1) == 0:
                    h >>= 1
                    bit += 1
                mask ^= 1 << bit
                if (mask >> bit) & 1:
                    size += 1
                else:
                    size -= 1
                cnt = 0
                for k in range(ne):
                    if (mask >> k) & 1 and nonzero[k]:
                        for c in range(dn):
                            buf[cnt, c] = rows[k, c]
                        cnt += 1
                r = 0
                if cnt > 0:
                    r = _rank_rows_nb(buf, cnt, dn, q, inv)
                if size & 1:
                    hist[r] += 1
                else:
                    hist[r] -= 1
            # next w-tuple (odometer)
            k = 0
            while k < free:
                digits[k] += 1
                if digits[k] < q:
                    break
                digits[k] = 0
                k += 1
        return hist

    @njit(cache=True, nogil=True)
    def brute_count_numba(q, d, n, ei, ej, signs, start, stop, pinned):
        dn = d * n
        m = 2 * dn - (d if pinned else 0)
        ne = ei.shape[0]
        x = np.zeros(m, dtype=np.int64)
        rest = start
        for k in range(m):
            x[k] = rest % q
            rest //= q
        off = d if pinned else 0
        total = 0
        for _ in range(start, stop):
            for k in range(ne):
                i = ei[k]
                j = ej[k]
                s = 0
                for t in range(d):
                    dz = x[i * d + t] - x[j * d + t]
                    wi = 0
                    wj = 0
                    if not pinned or i > 0:
                        wi = x[dn + i * d + t - off]
                    if not pinned or j > 0:
                        wj = x[dn + j * d + t - off]
                    s += dz * (wi - wj) * signs[t]
                if s % q == 0:
                    total += 1
                    break
            k = 0
            while k < m:
                x[k] += 1
                if x[k] < q:
                    break
                x[k] = 0
                k += 1
        return total

    NUMBA = SimpleNamespace(
        name="numba", fibrewise_hist=fibrewise_hist_numba, brute_count=brute_count_numba
    )
else:  # pragma: no cover
    NUMBA = None


def get_backend(name: str | None = None) -> SimpleNamespace:
    name = name or default_backend()
    if name == "numba":
        if NUMBA is None:
            raise RuntimeError("numba backend requested but numba is not importable")
        return NUMBA
    if name == "numpy":
        return NUMPY
    raise ValueError(f"unknown backend {name!r}")


def split_range(total: int, parts: int) -> list[tuple[int, int]]:
    parts = max(1, min(parts, total)) if total else 1
    step, extra = divmod(total, parts)
    out, lo = [], 0
    for k in range(parts):
        hi = lo + step + (1 if k < extra else 0)
        out.append((lo, hi))
        lo = hi
    return out


def run_partitioned(fn, total: int, threads: int, chunks_per_thread: int = 4):
    """Evaluate ``fn(lo, hi)`` over a partition of ``[0, total)`` and return the list of results.

    Results come back in range order, so any commutative reduction over them
    is independent of the thread count.
    """
    threads = max(1, int(threads))
    ranges = split_range(total, threads * chunks_per_thread if threads > 1 else 1)
    if threads == 1:
        return [fn(lo, hi) for lo, hi in ranges]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(lambda r: fn(*r), ranges))
