"""Hot numeric kernels: Horner evaluation on the circle, Aberth-Ehrlich
sweeps, and moment-power accumulation.

Each kernel has a numba @njit implementation and a pure-numpy fallback.
Setting the environment variable MAHLER_NO_NUMBA=1 selects the fallback
path; MAHLER_THREADS caps numba's internal parallelism. Both paths are
deterministic for fixed inputs: parallel loops either write disjoint
outputs or reduce over a fixed chunk grid.
"""

from __future__ import annotations

import math
import os

import numpy as np

_MOMENT_CHUNKS = 512


def _env_flag(name: str) -> bool:
    return os.environ.get(name, "").strip().lower() in {"1", "true", "yes", "on"}


NUMBA_ENABLED = not _env_flag("MAHLER_NO_NUMBA")

if NUMBA_ENABLED:
    try:
        import numba
        from numba import njit, prange
    except ImportError:  # pragma: no cover - numba is a declared dependency
        NUMBA_ENABLED = False

if NUMBA_ENABLED:
    threads = os.environ.get("MAHLER_THREADS")
    if threads:
        numba.set_num_threads(max(1, min(int(threads), numba.config.NUMBA_NUM_THREADS)))


# ---------------------------------------------------------------------------
# Horner evaluation at angles on the unit circle

def _horner_numpy(coeffs: np.ndarray, thetas: np.ndarray) -> np.ndarray:
    z = np.exp(1j * thetas)
    if thetas.size <= 64 and coeffs.size > 8 * thetas.size:
        # Few points, high degree: one cumulative-power matrix beats d passes.
        powers = np.ones((coeffs.size, thetas.size), dtype=np.complex128)
        np.multiply.accumulate(np.broadcast_to(z, (coeffs.size, thetas.size)),
                               axis=0, out=powers)
        powers[1:] = powers[:-1].copy()
        powers[0] = 1.0
        return coeffs @ powers
    acc = np.zeros(thetas.size, dtype=np.complex128)
    for c in coeffs[::-1]:
        acc *= z
        acc += c
    return acc


if NUMBA_ENABLED:

    @njit(parallel=True, cache=True)
    def _horner_numba(coeffs, thetas):  # pragma: no cover - jitted
        m = thetas.shape[0]
        d = coeffs.shape[0]
        out = np.empty(m, dtype=np.complex128)
        for i in prange(m):
            z = complex(math.cos(thetas[i]), math.sin(thetas[i]))
            acc = 0.0 + 0.0j
            for k in range(d - 1, -1, -1):
                acc = acc * z + coeffs[k]
            out[i] = acc
        return out


def horner_eval(coeffs: np.ndarray, thetas: np.ndarray) -> np.ndarray:
    """Evaluate sum_k c_k e^{i k theta} at each angle."""
    coeffs = np.ascontiguousarray(coeffs, dtype=np.float64)
    thetas = np.ascontiguousarray(thetas, dtype=np.float64)
    if NUMBA_ENABLED:
        return _horner_numba(coeffs, thetas)
    return _horner_numpy(coeffs, thetas)


# ---------------------------------------------------------------------------
# Aberth-Ehrlich simultaneous root refinement (Jacobi-style sweeps)

_STOP_RESID = 4e-15  # backward-relative residual regarded as fully converged


def _aberth_numpy(coeffs, roots, eps, max_iters):
    d = roots.shape[0]
    degree = coeffs.shape[0] - 1
    rev = coeffs[::-1].copy()
    absdir = np.abs(coeffs)
    absrev = absdir[::-1].copy()
    for it in range(max_iters):
        inside = np.abs(roots) <= 1.0
        p = np.zeros(d, dtype=np.complex128)
        dp = np.zeros(d, dtype=np.complex128)
        den = np.zeros(d, dtype=np.float64)
        zin = roots.copy()
        zin[~inside] = 1.0 / roots[~inside]
        azin = np.abs(zin)
        # p, p' by vectorized Horner: direct coefficients inside, reversed outside
        for k in range(degree, -1, -1):
            dp = dp * zin + p
            p = p * zin + np.where(inside, coeffs[k], rev[k])
            den = den * azin + np.where(inside, absdir[k], absrev[k])
        resid = np.abs(p) / np.maximum(den, 1e-300)
        with np.errstate(divide="ignore", invalid="ignore"):
            nr = np.where(p == 0, 0.0 + 0.0j, p / np.where(dp == 0, 1.0, dp))
            nr[dp == 0] = 0.0
            z = roots
            inv_out = degree / z - (dp / np.where(p == 0, 1.0, p)) / (z * z)
            nr_out = np.where(inv_out == 0, 0.0 + 0.0j, 1.0 / inv_out)
        nr = np.where(inside, nr, nr_out)
        nr = np.where(resid <= _STOP_RESID, 0.0 + 0.0j, nr)
        # pairwise repulsion in blocks to bound memory
        s = np.zeros(d, dtype=np.complex128)
        block = max(1, min(d, 2 ** 21 // max(d, 1) + 1))
        for lo in range(0, d, block):
            hi = min(d, lo + block)
            diff = roots[lo:hi, None] - roots[None, :]
            np.fill_diagonal(diff[:, lo:hi], np.inf)
            s[lo:hi] = np.sum(1.0 / diff, axis=1)
        denom = 1.0 - nr * s
        w = np.where(denom == 0, nr, nr / np.where(denom == 0, 1.0, denom))
        step = np.abs(w)
        cap = 0.5 * (1.0 + np.abs(roots))
        scalefac = np.where(step > cap, cap / np.where(step == 0, 1.0, step), 1.0)
        roots = roots - w * scalefac
        maxupd = float(step.max(initial=0.0))
        if maxupd < eps:
            return roots, it + 1, maxupd
    return roots, max_iters, maxupd


if NUMBA_ENABLED:

    @njit(cache=True)
    def _newton_ratio_nb(coeffs, z):  # pragma: no cover - jitted
        """Return (p/p', backward-relative residual), stable outside the circle."""
        d = coeffs.shape[0] - 1
        if abs(z) <= 1.0:
            p = 0.0 + 0.0j
            dp = 0.0 + 0.0j
            den = 0.0
            az = abs(z)
            for k in range(d, -1, -1):
                dp = dp * z + p
                p = p * z + coeffs[k]
                den = den * az + abs(coeffs[k])
            resid = abs(p) / max(den, 1e-300)
            if dp == 0:
                return 0.0 + 0.0j, resid
            return p / dp, resid
        w = 1.0 / z
        aw = abs(w)
        q = 0.0 + 0.0j
        dq = 0.0 + 0.0j
        den = 0.0
        for k in range(0, d + 1):
            dq = dq * w + q
            q = q * w + coeffs[k]
            den = den * aw + abs(coeffs[k])
        resid = abs(q) / max(den, 1e-300)
        if q == 0:
            return 0.0 + 0.0j, resid
        inv = d / z - dq / (q * z * z)
        if inv == 0:
            return 0.0 + 0.0j, resid
        return 1.0 / inv, resid

    @njit(parallel=True, cache=True)
    def _aberth_numba(coeffs, roots, eps, max_iters):  # pragma: no cover - jitted
        d = roots.shape[0]
        maxupd = 0.0
        for it in range(max_iters):
            new = np.empty(d, dtype=np.complex128)
            steps = np.empty(d, dtype=np.float64)
            for k in prange(d):
                z = roots[k]
                nr, resid = _newton_ratio_nb(coeffs, z)
                if resid <= _STOP_RESID:
                    nr = 0.0 + 0.0j
                s = 0.0 + 0.0j
                for j in range(d):
                    if j != k:
                        diff = z - roots[j]
                        if diff != 0:
                            s += 1.0 / diff
                denom = 1.0 - nr * s
                if denom != 0:
                    w = nr / denom
                else:
                    w = nr
                step = abs(w)
                cap = 0.5 * (1.0 + abs(z))
                if step > cap and step > 0:
                    w *= cap / step
                new[k] = z - w
                steps[k] = step
            roots = new
            maxupd = steps.max()
            if maxupd < eps:
                return roots, it + 1, maxupd
        return roots, max_iters, maxupd


def aberth_iterate(coeffs: np.ndarray, roots: np.ndarray, eps: float,
                   max_iters: int) -> tuple[np.ndarray, int, float]:
    """Run Aberth-Ehrlich sweeps from the given root estimates.

    Returns (roots, iterations_used, last_max_update).
    """
    coeffs = np.ascontiguousarray(coeffs, dtype=np.float64)
    roots = np.ascontiguousarray(roots, dtype=np.complex128)
    if NUMBA_ENABLED:
        return _aberth_numba(coeffs, roots, eps, max_iters)
    return _aberth_numpy(coeffs, roots, eps, max_iters)


# ---------------------------------------------------------------------------
# Moment powers: mean(v^k) for k = 1..k_max over a fixed sample vector

def _power_means_numpy(vals: np.ndarray, k_max: int) -> np.ndarray:
    out = np.empty(k_max, dtype=np.float64)
    running = np.ones_like(vals)
    for k in range(k_max):
        running = running * vals
        out[k] = running.mean()
    return out


if NUMBA_ENABLED:

    @njit(parallel=True, cache=True)
    def _power_means_numba(vals, k_max, nchunks):  # pragma: no cover - jitted
        m = vals.shape[0]
        partial = np.zeros((nchunks, k_max), dtype=np.float64)
        step = (m + nchunks - 1) // nchunks
        for c in prange(nchunks):
            lo = c * step
            hi = min(m, lo + step)
            for i in range(lo, hi):
                v = vals[i]
                p = 1.0
                for k in range(k_max):
                    p *= v
                    partial[c, k] += p
        return partial


def power_means(vals: np.ndarray, k_max: int) -> np.ndarray:
    """mean(vals**k) for k = 1..k_max; entry k-1 holds power k."""
    vals = np.ascontiguousarray(vals, dtype=np.float64)
    if NUMBA_ENABLED:
        partial = _power_means_numba(vals, k_max, _MOMENT_CHUNKS)
        return partial.sum(axis=0) / vals.shape[0]
    return _power_means_numpy(vals, k_max)
