"""Numpy fallback for the compiled kernels, same algorithm vectorized across the batch."""

import numpy as np


def jacobi_eigvals_batch(mats, tol_factor=1e-12, max_sweeps=100):
    a = np.array(mats, dtype=np.complex128, copy=True)
    nb, m, _ = a.shape
    trace = np.abs(np.einsum("bii->b", a).real)
    sweeps = np.full(nb, -1, dtype=np.intc)
    iu = np.triu_indices(m, 1)
    rows = np.arange(m)
    with np.errstate(over="ignore"):
        return _sweeps(a, trace, sweeps, iu, rows, tol_factor, max_sweeps)


def _sweeps(a, trace, sweeps, iu, rows, tol_factor, max_sweeps):
    nb, m, _ = a.shape
    for sweep in range(max_sweeps + 1):
        off = np.sqrt(2.0 * np.sum(np.abs(a[:, iu[0], iu[1]]) ** 2, axis=1))
        done = (off <= tol_factor * trace) & (sweeps < 0)
        sweeps[done] = sweep
        if np.all(sweeps >= 0) or sweep == max_sweeps:
            break
        for p in range(m):
            for q in range(p + 1, m):
                apq = a[:, p, q]
                b = np.abs(apq)
                live = b > 0
                safe_b = np.where(live, b, 1.0)
                phase = np.where(live, apq / safe_b, 1.0)
                app = a[:, p, p].real.copy()
                aqq = a[:, q, q].real.copy()
                theta = (aqq - app) / (2.0 * safe_b)
                t = np.sign(theta) / (np.abs(theta) + np.sqrt(theta * theta + 1.0))
                t = np.where(theta == 0, 1.0, t)
                t = np.where(live, t, 0.0)
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                others = rows[(rows != p) & (rows != q)]
                arp = a[:, others, p]
                arq = a[:, others, q] * np.conj(phase)[:, None]
                new_p = c[:, None] * arp - s[:, None] * arq
                new_q = s[:, None] * arp + c[:, None] * arq
                a[:, others, p] = new_p
                a[:, others, q] = new_q
                a[:, p, others] = np.conj(new_p)
                a[:, q, others] = np.conj(new_q)
                a[:, p, p] = app - t * b
                a[:, q, q] = aqq + t * b
                a[:, p, q] = 0
                a[:, q, p] = 0
    vals = np.ascontiguousarray(np.einsum("bii->bi", a).real)
    return vals, sweeps


def entropy_batch(lam):
    lam = np.asarray(lam, dtype=float)
    safe = np.where(lam > 0, lam, 1.0)
    return -np.sum(np.where(lam > 0, lam * np.log(safe), 0.0), axis=1)
