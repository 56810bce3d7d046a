"""Hot numeric kernels over flat row-major probability tensors.

Every kernel takes the joint table as a 1-D float64 array ``p`` of length
nb*na*ne, laid out row-major with Bob outermost, then Alice, then Eve
(cell (i, j, k) lives at ``(i*na + j)*ne + k``).  Each kernel exists in
two builds: ``_nb_*`` (numba @njit, loop style) and ``_np_*`` (vectorized
numpy).  Module-level names bind to the build picked by backend.py.

Conventions shared by both builds:
  - information quantities are in bits (log base 2)
  - cells with probability exactly 0 contribute nothing to entropies
  - gradient contributions are zeroed where the pair-marginal cell is
    below 1e-12 (the log terms are unbounded there)
  - argmax ties resolve to the lowest Alice index
"""

import math

import numpy as np

from . import backend

_INV_LN2 = 1.0 / math.log(2.0)
_GRAD_FLOOR = 1e-12


# ---------------------------------------------------------------------------
# numpy builds
# ---------------------------------------------------------------------------


def _np_pair_tables(p, nb, na, ne):
    """Alice-indexed pair marginals: (alice x bob, alice x eve)."""
    p3 = p.reshape(nb, na, ne)
    q_ab = p3.sum(axis=2).T
    r_ae = p3.sum(axis=0)
    return q_ab, r_ae


def _np_mi_bits(t, rows, cols):
    mask = t > 0.0
    if not mask.any():
        return 0.0
    denom = np.outer(rows, cols)
    return float(np.sum(t[mask] * (np.log2(t[mask]) - np.log2(denom[mask]))))


def _np_tensor_stats(p, nb, na, ne):
    q_ab, r_ae = _np_pair_tables(p, nb, na, ne)
    a = q_ab.sum(axis=1)
    b = q_ab.sum(axis=0)
    e = r_ae.sum(axis=0)
    p_b = float(q_ab.max(axis=0).sum())
    p_e = float(r_ae.max(axis=0).sum())
    i_ab = _np_mi_bits(q_ab, a, b)
    i_ae = _np_mi_bits(r_ae, a, e)
    pos = a > 0.0
    h_a = float(-(a[pos] * np.log2(a[pos])).sum()) if pos.any() else 0.0
    return p_b, p_e, i_ab, i_ae, max(h_a, 0.0)


def _np_penalized_objective(p, nb, na, ne, delta, lam):
    p_b, p_e, i_ab, i_ae, _ = _np_tensor_stats(p, nb, na, ne)
    hinge = delta - (p_b - p_e)
    return (i_ae - i_ab) - lam * (hinge if hinge > 0.0 else 0.0)


def _np_log_term(t, rows, cols):
    """log2(t/(rows x cols)) - 1/ln2 where t >= floor, else 0."""
    out = np.zeros_like(t)
    mask = t >= _GRAD_FLOOR
    if mask.any():
        denom = np.outer(rows, cols)
        out[mask] = np.log2(t[mask] / denom[mask]) - _INV_LN2
    return out


def _np_penalized_gradient(p, nb, na, ne, delta, lam):
    q_ab, r_ae = _np_pair_tables(p, nb, na, ne)
    a = q_ab.sum(axis=1)
    b = q_ab.sum(axis=0)
    e = r_ae.sum(axis=0)
    term_ab = _np_log_term(q_ab, a, b)
    term_ae = _np_log_term(r_ae, a, e)
    g3 = term_ae[None, :, :] - term_ab.T[:, :, None]
    p_b = float(q_ab.max(axis=0).sum())
    p_e = float(r_ae.max(axis=0).sum())
    if delta - (p_b - p_e) > 0.0:
        ind_b = np.zeros_like(q_ab)
        ind_b[np.argmax(q_ab, axis=0), np.arange(nb)] = 1.0
        ind_e = np.zeros_like(r_ae)
        ind_e[np.argmax(r_ae, axis=0), np.arange(ne)] = 1.0
        g3 = g3 + lam * (ind_b.T[:, :, None] - ind_e[None, :, :])
    # cells sitting in an empty pair-marginal row get component 0: the
    # true one-sided slope there is -inf, so no finite value is honest
    # and ascent must not be steered into the cliff
    dead = (q_ab.T[:, :, None] < _GRAD_FLOOR) | (r_ae[None, :, :] < _GRAD_FLOOR)
    g3 = np.where(dead, 0.0, g3)
    return g3.ravel()


def _np_project_simplex(v):
    u = np.sort(v)[::-1]
    css = np.cumsum(u)
    j = np.arange(1, v.size + 1)
    cond = u - (css - 1.0) / j > 0.0
    rho = int(np.nonzero(cond)[0][-1])
    theta = (css[rho] - 1.0) / (rho + 1)
    return np.maximum(v - theta, 0.0)


def _np_best_grid_point(comps, resolution, nb, na, ne, delta):
    best_idx = -1
    best_gap = -np.inf
    inv = 1.0 / resolution
    for row in range(comps.shape[0]):
        p = comps[row].astype(np.float64) * inv
        p_b, p_e, i_ab, i_ae, _ = _np_tensor_stats(p, nb, na, ne)
        if p_b - p_e >= delta:
            gap = i_ae - i_ab
            if gap > best_gap:
                best_gap = gap
                best_idx = row
    return best_idx, best_gap


# ---------------------------------------------------------------------------
# numba builds
# ---------------------------------------------------------------------------

if backend.NUMBA_AVAILABLE:
    from numba import njit

    @njit(cache=True)
    def _nb_tensor_stats(p, nb, na, ne):
        q_ab = np.zeros((na, nb))
        r_ae = np.zeros((na, ne))
        for i in range(nb):
            for j in range(na):
                base = (i * na + j) * ne
                for k in range(ne):
                    v = p[base + k]
                    q_ab[j, i] += v
                    r_ae[j, k] += v
        a = np.zeros(na)
        b = np.zeros(nb)
        e = np.zeros(ne)
        for j in range(na):
            for i in range(nb):
                a[j] += q_ab[j, i]
                b[i] += q_ab[j, i]
            for k in range(ne):
                e[k] += r_ae[j, k]
        p_b = 0.0
        for i in range(nb):
            m = q_ab[0, i]
            for j in range(1, na):
                if q_ab[j, i] > m:
                    m = q_ab[j, i]
            p_b += m
        p_e = 0.0
        for k in range(ne):
            m = r_ae[0, k]
            for j in range(1, na):
                if r_ae[j, k] > m:
                    m = r_ae[j, k]
            p_e += m
        i_ab = 0.0
        for j in range(na):
            for i in range(nb):
                v = q_ab[j, i]
                if v > 0.0:
                    i_ab += v * (math.log2(v) - math.log2(a[j] * b[i]))
        i_ae = 0.0
        for j in range(na):
            for k in range(ne):
                v = r_ae[j, k]
                if v > 0.0:
                    i_ae += v * (math.log2(v) - math.log2(a[j] * e[k]))
        h_a = 0.0
        for j in range(na):
            if a[j] > 0.0:
                h_a -= a[j] * math.log2(a[j])
        if h_a < 0.0:
            h_a = 0.0
        return p_b, p_e, i_ab, i_ae, h_a

    @njit(cache=True)
    def _nb_penalized_objective(p, nb, na, ne, delta, lam):
        p_b, p_e, i_ab, i_ae, _ = _nb_tensor_stats(p, nb, na, ne)
        hinge = delta - (p_b - p_e)
        pen = lam * hinge if hinge > 0.0 else 0.0
        return (i_ae - i_ab) - pen

    @njit(cache=True)
    def _nb_penalized_gradient(p, nb, na, ne, delta, lam):
        q_ab = np.zeros((na, nb))
        r_ae = np.zeros((na, ne))
        for i in range(nb):
            for j in range(na):
                base = (i * na + j) * ne
                for k in range(ne):
                    v = p[base + k]
                    q_ab[j, i] += v
                    r_ae[j, k] += v
        a = np.zeros(na)
        b = np.zeros(nb)
        e = np.zeros(ne)
        for j in range(na):
            for i in range(nb):
                a[j] += q_ab[j, i]
                b[i] += q_ab[j, i]
            for k in range(ne):
                e[k] += r_ae[j, k]
        term_ab = np.zeros((na, nb))
        for j in range(na):
            for i in range(nb):
                v = q_ab[j, i]
                if v >= _GRAD_FLOOR:
                    term_ab[j, i] = math.log2(v / (a[j] * b[i])) - _INV_LN2
        term_ae = np.zeros((na, ne))
        for j in range(na):
            for k in range(ne):
                v = r_ae[j, k]
                if v >= _GRAD_FLOOR:
                    term_ae[j, k] = math.log2(v / (a[j] * e[k])) - _INV_LN2
        p_b = 0.0
        astar_b = np.zeros(nb, dtype=np.int64)
        for i in range(nb):
            jb = 0
            for j in range(1, na):
                if q_ab[j, i] > q_ab[jb, i]:
                    jb = j
            astar_b[i] = jb
            p_b += q_ab[jb, i]
        p_e = 0.0
        astar_e = np.zeros(ne, dtype=np.int64)
        for k in range(ne):
            je = 0
            for j in range(1, na):
                if r_ae[j, k] > r_ae[je, k]:
                    je = j
            astar_e[k] = je
            p_e += r_ae[je, k]
        active = delta - (p_b - p_e) > 0.0
        out = np.empty(nb * na * ne)
        for i in range(nb):
            for j in range(na):
                base = (i * na + j) * ne
                for k in range(ne):
                    if q_ab[j, i] < _GRAD_FLOOR or r_ae[j, k] < _GRAD_FLOOR:
                        out[base + k] = 0.0
                        continue
                    g = term_ae[j, k] - term_ab[j, i]
                    if active:
                        if j == astar_b[i]:
                            g += lam
                        if j == astar_e[k]:
                            g -= lam
                    out[base + k] = g
        return out

    @njit(cache=True)
    def _nb_project_simplex(v):
        n = v.size
        u = np.sort(v)[::-1]
        css = 0.0
        theta = 0.0
        for j in range(n):
            css += u[j]
            t = (css - 1.0) / (j + 1)
            if u[j] - t > 0.0:
                theta = t
        out = np.empty(n)
        for i in range(n):
            x = v[i] - theta
            out[i] = x if x > 0.0 else 0.0
        return out

    @njit(cache=True)
    def _nb_best_grid_point(comps, resolution, nb, na, ne, delta):
        ncells = nb * na * ne
        inv = 1.0 / resolution
        best_idx = -1
        best_gap = -np.inf
        p = np.empty(ncells)
        for row in range(comps.shape[0]):
            for c in range(ncells):
                p[c] = comps[row, c] * inv
            p_b, p_e, i_ab, i_ae, _ = _nb_tensor_stats(p, nb, na, ne)
            if p_b - p_e >= delta:
                gap = i_ae - i_ab
                if gap > best_gap:
                    best_gap = gap
                    best_idx = row
        return best_idx, best_gap


if backend.USING_NUMBA:
    tensor_stats = _nb_tensor_stats
    penalized_objective = _nb_penalized_objective
    penalized_gradient = _nb_penalized_gradient
    project_simplex = _nb_project_simplex
    best_grid_point = _nb_best_grid_point
else:
    tensor_stats = _np_tensor_stats
    penalized_objective = _np_penalized_objective
    penalized_gradient = _np_penalized_gradient
    project_simplex = _np_project_simplex
    best_grid_point = _np_best_grid_point
