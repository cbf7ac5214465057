"""Hot enumeration kernels over F_p with selectable backends.

Exhaustive searches over coefficient spaces dominate the running time of
the universal checks, so the inner loops live here in two functionally
identical implementations: a vectorised numpy one and a numba-compiled
loop version.  The ``LIELAB_NUMBA`` environment variable picks the
default backend at import time:

    auto (default)   numba when it imports, numpy otherwise
    0 / off          numpy only
    1 / require      numba, raising if it is unavailable

``use_backend()`` switches at runtime.  ``benchmarks/bench_kernels.py``
times the two backends on representative workloads.

All kernels take int64 arrays with entries already reduced mod p.  The
intermediate products stay far below 2**63 for the dimensions handled
here (p <= 7 after reduction steps, dim <= 64).
"""

from __future__ import annotations

import os

import numpy as np

__all__ = [
    "rref_mod_p",
    "batch_rank",
    "batch_ad",
    "batch_mul",
    "batch_sq_kills",
    "batch_minpoly_deg",
    "decode_block",
    "use_backend",
    "active_backend",
    "available_backends",
]


# ---------------------------------------------------------------------------
# numpy implementations


def _rref_np(a: np.ndarray, p: int):
    a = np.array(a, dtype=np.int64) % p
    rows, cols = a.shape
    row = 0
    pivots = []
    for col in range(cols):
        if row == rows:
            break
        nz = np.nonzero(a[row:, col])[0]
        if nz.size == 0:
            continue
        pr = row + int(nz[0])
        if pr != row:
            a[[row, pr]] = a[[pr, row]]
        inv = pow(int(a[row, col]), p - 2, p)
        a[row] = (a[row] * inv) % p
        other = a[:, col].copy()
        other[row] = 0
        a = (a - other[:, None] * a[row][None, :]) % p
        pivots.append(col)
        row += 1
    return a, row, np.array(pivots, dtype=np.int64)


def _batch_rank_np(mats: np.ndarray, p: int) -> np.ndarray:
    a = np.array(mats, dtype=np.int64) % p
    n, rows, cols = a.shape
    inv_table = np.array([0] + [pow(v, p - 2, p) for v in range(1, p)], dtype=np.int64)
    rank = np.zeros(n, dtype=np.int64)
    row = np.zeros(n, dtype=np.int64)
    ridx = np.arange(rows)[None, :]
    for col in range(cols):
        nz = (a[:, :, col] != 0) & (ridx >= row[:, None])
        has = nz.any(axis=1)
        b = np.nonzero(has)[0]
        if b.size == 0:
            continue
        rsel = row[b]
        psel = nz[b].argmax(axis=1)
        tmp = a[b, rsel, :].copy()
        a[b, rsel, :] = a[b, psel, :]
        a[b, psel, :] = tmp
        inv = inv_table[a[b, rsel, col]]
        a[b, rsel, :] = (a[b, rsel, :] * inv[:, None]) % p
        factors = a[b, :, col].copy()
        factors[np.arange(b.size), rsel] = 0
        a[b] = (a[b] - factors[:, :, None] * a[b, rsel, :][:, None, :]) % p
        row[b] += 1
        rank[b] += 1
    return rank


def _batch_ad_np(x: np.ndarray, bt: np.ndarray, p: int) -> np.ndarray:
    # ad(x)[k, j] = sum_i x_i * bt[i, j, k]
    return np.tensordot(x, bt, axes=([1], [0])).transpose(0, 2, 1) % p


def _batch_mul_np(x: np.ndarray, y: np.ndarray, mt: np.ndarray, p: int) -> np.ndarray:
    n = mt.shape[0]
    t = (x @ mt.reshape(n, n * n)).reshape(-1, n, n) % p
    return np.einsum("njk,nj->nk", t, y) % p


def _batch_sq_kills_np(x, bt, targets, p):
    ad = _batch_ad_np(x, bt, p)
    sq = np.matmul(ad, ad) % p
    hit = np.matmul(sq, targets.T % p) % p
    return ~hit.any(axis=(1, 2))


def _batch_minpoly_deg_np(x, mt, unit, p):
    n = mt.shape[0]
    count = x.shape[0]
    stack = np.empty((count, n + 1, n), dtype=np.int64)
    stack[:, 0, :] = unit % p
    cur = x % p
    for k in range(1, n + 1):
        stack[:, k, :] = cur
        if k < n:
            cur = _batch_mul_np(cur, x, mt, p)
    return _batch_rank_np(stack, p)


_NUMPY = {
    "rref_mod_p": _rref_np,
    "batch_rank": _batch_rank_np,
    "batch_ad": _batch_ad_np,
    "batch_mul": _batch_mul_np,
    "batch_sq_kills": _batch_sq_kills_np,
    "batch_minpoly_deg": _batch_minpoly_deg_np,
}


# ---------------------------------------------------------------------------
# numba implementations (separate loop bodies; einsum is not available there)


def _build_numba():
    from numba import njit

    @njit(cache=True)
    def _inv_mod(v, p):
        # Fermat inverse; p is a small prime
        r = 1
        e = p - 2
        b = v % p
        while e > 0:
            if e & 1:
                r = (r * b) % p
            b = (b * b) % p
            e >>= 1
        return r

    @njit(cache=True)
    def rref_jit(a_in, p):
        a = a_in % p
        rows, cols = a.shape
        pivots = np.empty(min(rows, cols), dtype=np.int64)
        row = 0
        for col in range(cols):
            if row == rows:
                break
            pr = -1
            for r in range(row, rows):
                if a[r, col] != 0:
                    pr = r
                    break
            if pr < 0:
                continue
            if pr != row:
                for c in range(cols):
                    t = a[row, c]
                    a[row, c] = a[pr, c]
                    a[pr, c] = t
            inv = _inv_mod(a[row, col], p)
            for c in range(cols):
                a[row, c] = (a[row, c] * inv) % p
            for r in range(rows):
                if r != row and a[r, col] != 0:
                    f = a[r, col]
                    for c in range(cols):
                        a[r, c] = (a[r, c] - f * a[row, c]) % p
            pivots[row] = col
            row += 1
        return a, row, pivots[:row].copy()

    @njit(cache=True)
    def batch_rank_jit(mats, p):
        n, rows, cols = mats.shape
        out = np.empty(n, dtype=np.int64)
        work = np.empty((rows, cols), dtype=np.int64)
        for e in range(n):
            for r in range(rows):
                for c in range(cols):
                    work[r, c] = mats[e, r, c] % p
            row = 0
            for col in range(cols):
                if row == rows:
                    break
                pr = -1
                for r in range(row, rows):
                    if work[r, col] != 0:
                        pr = r
                        break
                if pr < 0:
                    continue
                if pr != row:
                    for c in range(cols):
                        t = work[row, c]
                        work[row, c] = work[pr, c]
                        work[pr, c] = t
                inv = _inv_mod(work[row, col], p)
                for c in range(col, cols):
                    work[row, c] = (work[row, c] * inv) % p
                for r in range(rows):
                    if r != row and work[r, col] != 0:
                        f = work[r, col]
                        for c in range(col, cols):
                            work[r, c] = (work[r, c] - f * work[row, c]) % p
                row += 1
            out[e] = row
        return out

    @njit(cache=True)
    def batch_ad_jit(x, bt, p):
        count, n = x.shape
        out = np.zeros((count, n, n), dtype=np.int64)
        for e in range(count):
            for k in range(n):
                for j in range(n):
                    s = 0
                    for i in range(n):
                        s += x[e, i] * bt[i, j, k]
                    out[e, k, j] = s % p
        return out

    @njit(cache=True)
    def batch_mul_jit(x, y, mt, p):
        count, n = x.shape
        out = np.zeros((count, n), dtype=np.int64)
        for e in range(count):
            for i in range(n):
                xi = x[e, i]
                if xi == 0:
                    continue
                for j in range(n):
                    yj = y[e, j]
                    if yj == 0:
                        continue
                    f = (xi * yj) % p
                    for k in range(n):
                        out[e, k] += f * mt[i, j, k]
            for k in range(n):
                out[e, k] %= p
        return out

    @njit(cache=True)
    def batch_sq_kills_jit(x, bt, targets, p):
        count, n = x.shape
        m = targets.shape[0]
        out = np.empty(count, dtype=np.bool_)
        ad = np.empty((n, n), dtype=np.int64)
        sq = np.empty((n, n), dtype=np.int64)
        for e in range(count):
            for k in range(n):
                for j in range(n):
                    s = 0
                    for i in range(n):
                        s += x[e, i] * bt[i, j, k]
                    ad[k, j] = s % p
            for k in range(n):
                for j in range(n):
                    s = 0
                    for i in range(n):
                        s += ad[k, i] * ad[i, j]
                    sq[k, j] = s % p
            ok = True
            for t in range(m):
                if not ok:
                    break
                for k in range(n):
                    s = 0
                    for j in range(n):
                        s += sq[k, j] * targets[t, j]
                    if s % p != 0:
                        ok = False
                        break
            out[e] = ok
        return out

    @njit(cache=True)
    def batch_minpoly_deg_jit(x, mt, unit, p):
        count, n = x.shape
        out = np.empty(count, dtype=np.int64)
        ech = np.empty((n + 1, n), dtype=np.int64)
        pivcol = np.empty(n + 1, dtype=np.int64)
        v = np.empty(n, dtype=np.int64)
        w = np.empty(n, dtype=np.int64)
        for e in range(count):
            nrows = 0
            deg = 0
            for c in range(n):
                v[c] = unit[c] % p
            while True:
                # reduce v against the echelon rows
                for r in range(nrows):
                    f = v[pivcol[r]] % p
                    if f != 0:
                        for c in range(n):
                            v[c] = (v[c] - f * ech[r, c]) % p
                lead = -1
                for c in range(n):
                    v[c] %= p
                    if lead < 0 and v[c] != 0:
                        lead = c
                if lead < 0:
                    break  # dependent: minimal polynomial reached
                inv = _inv_mod(v[lead], p)
                for c in range(n):
                    ech[nrows, c] = (v[c] * inv) % p
                pivcol[nrows] = lead
                nrows += 1
                deg += 1
                if deg > n:
                    break
                # next power: v = v * x  (current power times the element)
                if deg == 1:
                    for c in range(n):
                        v[c] = x[e, c]
                else:
                    for k in range(n):
                        s = 0
                        for i in range(n):
                            if w[i] == 0:
                                continue
                            for j in range(n):
                                s += w[i] * x[e, j] * mt[i, j, k]
                        v[k] = s % p
                for c in range(n):
                    w[c] = v[c]
            out[e] = deg
        return out

    return {
        "rref_mod_p": rref_jit,
        "batch_rank": batch_rank_jit,
        "batch_ad": batch_ad_jit,
        "batch_mul": batch_mul_jit,
        "batch_sq_kills": batch_sq_kills_jit,
        "batch_minpoly_deg": batch_minpoly_deg_jit,
    }


# ---------------------------------------------------------------------------
# backend selection


_BACKENDS: dict[str, dict] = {"numpy": _NUMPY}
_active_name = "numpy"


def _try_load_numba() -> bool:
    if "numba" in _BACKENDS:
        return True
    try:
        _BACKENDS["numba"] = _build_numba()
        return True
    except ImportError:
        return False


def use_backend(name: str) -> None:
    """Switch kernel backend at runtime ('numpy' or 'numba')."""
    global _active_name
    if name == "numba" and not _try_load_numba():
        raise RuntimeError("numba backend requested but numba is not importable")
    if name not in _BACKENDS:
        raise ValueError(f"unknown backend {name!r}")
    _active_name = name


def active_backend() -> str:
    return _active_name


def available_backends() -> list[str]:
    _try_load_numba()
    return sorted(_BACKENDS)


_flag = os.environ.get("LIELAB_NUMBA", "auto").strip().lower()
if _flag in ("0", "off", "false", "no", "numpy"):
    pass
elif _flag in ("1", "require", "true", "yes"):
    use_backend("numba")
else:
    if _try_load_numba():
        _active_name = "numba"


# ---------------------------------------------------------------------------
# public dispatchers


def rref_mod_p(a: np.ndarray, p: int):
    """Reduced row echelon form mod p; returns (matrix, rank, pivot columns)."""
    if a.shape[0] == 0 or a.shape[1] == 0:
        return a.copy() % p if a.size else np.zeros(a.shape, dtype=np.int64), 0, np.empty(0, dtype=np.int64)
    return _BACKENDS[_active_name]["rref_mod_p"](np.ascontiguousarray(a, dtype=np.int64), p)


def batch_rank(mats: np.ndarray, p: int) -> np.ndarray:
    """Ranks of a stack of matrices (N, rows, cols) mod p."""
    return _BACKENDS[_active_name]["batch_rank"](np.ascontiguousarray(mats, dtype=np.int64), p)


def batch_ad(x: np.ndarray, bt: np.ndarray, p: int) -> np.ndarray:
    """Bracket-action matrices of a batch of elements: out[e] @ v = [x_e, v]."""
    return _BACKENDS[_active_name]["batch_ad"](
        np.ascontiguousarray(x, dtype=np.int64), np.ascontiguousarray(bt, dtype=np.int64), p
    )


def batch_mul(x: np.ndarray, y: np.ndarray, mt: np.ndarray, p: int) -> np.ndarray:
    """Pairwise table products x_e * y_e."""
    return _BACKENDS[_active_name]["batch_mul"](
        np.ascontiguousarray(x, dtype=np.int64),
        np.ascontiguousarray(y, dtype=np.int64),
        np.ascontiguousarray(mt, dtype=np.int64),
        p,
    )


def batch_sq_kills(x: np.ndarray, bt: np.ndarray, targets: np.ndarray, p: int) -> np.ndarray:
    """Mask of elements whose squared bracket action kills every target vector."""
    return _BACKENDS[_active_name]["batch_sq_kills"](
        np.ascontiguousarray(x, dtype=np.int64),
        np.ascontiguousarray(bt, dtype=np.int64),
        np.ascontiguousarray(targets, dtype=np.int64),
        p,
    )


def batch_minpoly_deg(x: np.ndarray, mt: np.ndarray, unit: np.ndarray, p: int) -> np.ndarray:
    """Minimal-polynomial degrees of elements of a unital table algebra.

    Counts the independent members of 1, x, x**2, ... ; once a power falls
    into the span of the earlier ones every later power does too, so the
    count equals the degree.
    """
    return _BACKENDS[_active_name]["batch_minpoly_deg"](
        np.ascontiguousarray(x, dtype=np.int64),
        np.ascontiguousarray(mt, dtype=np.int64),
        np.ascontiguousarray(unit, dtype=np.int64),
        p,
    )


def decode_block(start: int, count: int, p: int, width: int) -> np.ndarray:
    """Coefficient tuples number start..start+count-1 in lexicographic order.

    Tuple number m has digits of m base p, first coordinate most
    significant, so ascending numbers give ascending tuples.
    """
    powers = p ** np.arange(width - 1, -1, -1, dtype=np.int64)
    idx = np.arange(start, start + count, dtype=np.int64)
    return (idx[:, None] // powers[None, :]) % p
