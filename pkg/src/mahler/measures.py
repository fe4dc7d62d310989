"""M_q norms, Mahler measure by singularity-aware quadrature, Jensen-formula
values via Aberth-Ehrlich roots, and moment series of normalized polynomials.
"""

from __future__ import annotations

import dataclasses
import math

import numpy as np

from . import kernels
from .errors import ConvergenceError, DomainError, SizeError
from .evaluate import (CircleSamples, default_grid_size, evaluate_at_roots,
                       evaluate_points, next_power_of_two)
from .polynomials import NormalizedPolynomial, SignPolynomial

TWO_PI = 2.0 * math.pi
_TINY = 1e-300
_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


@dataclasses.dataclass(frozen=True)
class Arc:
    alpha: float
    beta: float

    def __post_init__(self):
        if not 0.0 < self.beta - self.alpha <= TWO_PI + 1e-12:
            raise DomainError("arc must satisfy 0 < beta - alpha <= 2*pi")

    @property
    def length(self) -> float:
        return self.beta - self.alpha

    @property
    def is_full_circle(self) -> bool:
        return abs(self.length - TWO_PI) <= 1e-12

    @classmethod
    def full_circle(cls) -> "Arc":
        return cls(0.0, TWO_PI)


@dataclasses.dataclass(frozen=True)
class QuadratureConfig:
    oversample: int = 64
    refine_threshold: float = 1e-3
    # Cells next to grid-local minima of |f| below this fraction of the max
    # are also refined; sub-grid dips otherwise evade the threshold rule.
    local_min_threshold: float = 0.35
    # Refinement windows are widened by this many cells on each side; the
    # trapezoid runs in between get endpoint-derivative corrections, which
    # kills the O(h^2 f') splice error next to log singularities.
    pad_cells: int = 16
    panel_order: int = 16
    tol: float = 1e-10
    max_depth: int = 30
    max_grid: int = 2 ** 24


@dataclasses.dataclass(frozen=True)
class RootConfig:
    eps: float = 1e-12
    max_iters: int = 500
    max_degree: int = 2 ** 14
    residual_tol: float = 1e-10


@dataclasses.dataclass(frozen=True)
class MeasureResult:
    value: float
    q: float
    arc: Arc
    method: str
    samples_used: int
    error_estimate: float

    def to_json(self) -> dict:
        return {
            "value": self.value,
            "q": self.q,
            "alpha": self.arc.alpha,
            "beta": self.arc.beta,
            "method": self.method,
            "samples": self.samples_used,
            "err": self.error_estimate,
        }


@dataclasses.dataclass(frozen=True)
class RootSet:
    roots: np.ndarray
    leading_coeff: int
    max_residual: float
    iterations: int


@dataclasses.dataclass(frozen=True)
class MomentSeries:
    k_max: int
    values: np.ndarray
    m: int

    def partial_log_sum(self) -> float:
        """sum_{k<=k_max} I_k / k."""
        ks = np.arange(1, self.k_max + 1, dtype=np.float64)
        return float(np.sum(self.values / ks))


# ---------------------------------------------------------------------------
# Arc sampling helpers

def _arc_nodes(arc: Arc, m: int) -> tuple[np.ndarray, np.ndarray]:
    """Grid indices (mod m) and unwrapped angles of nodes strictly inside the arc."""
    h = TWO_PI / m
    alpha = arc.alpha % TWO_PI
    beta = alpha + arc.length
    jlo = math.ceil(alpha / h - 1e-12)
    jhi = math.floor(beta / h + 1e-12)
    js = np.arange(jlo, jhi + 1)
    ts = js * h
    keep = (ts >= alpha - 1e-15) & (ts <= beta + 1e-15)
    js = js[keep]
    ts = ts[keep]
    return js % m, ts


def _trapezoid(x: np.ndarray, y: np.ndarray) -> float:
    return float(np.sum(np.diff(x) * (y[:-1] + y[1:]) * 0.5))


# ---------------------------------------------------------------------------
# M_q for q > 0

def mq_norm(f: SignPolynomial, q: float, arc: Arc | None = None,
            samples: CircleSamples | None = None,
            oversample: int = 16) -> MeasureResult:
    """Normalized q-th integral mean of |f| over the arc, by trapezoid."""
    if not q > 0:
        raise DomainError("q must be positive; use mahler_quadrature for q = 0")
    arc = arc or Arc.full_circle()
    if samples is None:
        samples = evaluate_at_roots(f, default_grid_size(f.degree, oversample))
    absq = np.abs(samples.values)

    if arc.is_full_circle:
        full = float(np.mean(absq ** q))
        half = float(np.mean(absq[::2] ** q))
        value = full ** (1.0 / q)
        err = abs(value - half ** (1.0 / q))
        return MeasureResult(value, q, arc, "quadrature", samples.m, err)

    js, ts = _arc_nodes(arc, samples.m)
    if js.size < 64:
        # Arc too short for the shared grid: dedicated uniform arc grid.
        mloc = 4096
        ts = np.linspace(arc.alpha, arc.beta, mloc)
        ys = np.abs(evaluate_points(f, ts)) ** q
        full = _trapezoid(ts, ys) / arc.length
        half = _trapezoid(ts[::2], ys[::2]) / arc.length
        value = full ** (1.0 / q)
        err = abs(value - half ** (1.0 / q))
        return MeasureResult(value, q, arc, "quadrature", mloc, err)

    alpha = arc.alpha % TWO_PI
    beta = alpha + arc.length
    ends = np.abs(evaluate_points(f, np.array([alpha, beta]))) ** q
    xs = np.concatenate([[alpha], ts, [beta]])
    ys = np.concatenate([[ends[0]], absq[js] ** q, [ends[1]]])
    full = _trapezoid(xs, ys) / arc.length
    xs2 = np.concatenate([[alpha], ts[::2], [beta]])
    ys2 = np.concatenate([[ends[0]], absq[js[::2]] ** q, [ends[1]]])
    half = _trapezoid(xs2, ys2) / arc.length
    value = full ** (1.0 / q)
    err = abs(value - half ** (1.0 / q))
    return MeasureResult(value, q, arc, "quadrature", int(js.size) + 2, err)


# ---------------------------------------------------------------------------
# Mahler measure via quadrature with adaptive refinement at near-zeros

_GL_CACHE: dict[int, tuple[np.ndarray, np.ndarray]] = {}


def _gl_rule(order: int) -> tuple[np.ndarray, np.ndarray]:
    if order not in _GL_CACHE:
        _GL_CACHE[order] = np.polynomial.legendre.leggauss(order)
    return _GL_CACHE[order]


class _LogIntegrator:
    """Adaptive Gauss-Legendre integration of log|f(e^{it})| over cells."""

    def __init__(self, f: SignPolynomial, cfg: QuadratureConfig):
        self.f = f
        self.cfg = cfg
        self.nodes, self.weights = _gl_rule(cfg.panel_order)
        self.unresolved = 0.0
        self.panels = 0
        # Evaluation noise floor on the circle: values below one ulp of the
        # coefficient 1-norm are rounding artifacts, not small |f|. Clipping
        # there (instead of at _TINY) keeps panels at exact zeros honest.
        self.floor = max(_TINY,
                         np.finfo(np.float64).eps * float(np.abs(f.coeffs).sum()))

    def _panel(self, a: float, b: float) -> float:
        mid = 0.5 * (a + b)
        half = 0.5 * (b - a)
        ts = mid + half * self.nodes
        vals = np.abs(evaluate_points(self.f, ts))
        logs = np.log(np.maximum(vals, self.floor))
        self.panels += 1
        return half * float(self.weights @ logs)

    def cell(self, a: float, b: float) -> float:
        return self._cell(a, b, self._panel(a, b), 0)

    def _cell(self, a: float, b: float, one: float, depth: int) -> float:
        mid = 0.5 * (a + b)
        left = self._panel(a, mid)
        right = self._panel(mid, b)
        two = left + right
        gap = abs(one - two)
        if gap < self.cfg.tol:
            return two
        if depth >= self.cfg.max_depth:
            self.unresolved += gap
            return two
        return (self._cell(a, mid, left, depth + 1)
                + self._cell(mid, b, right, depth + 1))


def _node_flags(absv: np.ndarray, cfg: QuadratureConfig,
                periodic: bool) -> np.ndarray:
    maxv = float(absv.max())
    if maxv == 0.0:
        raise DomainError("polynomial vanishes on the whole sample grid")
    flags = absv <= cfg.refine_threshold * maxv
    flags |= absv == 0.0
    if cfg.local_min_threshold > 0 and absv.size >= 3 and absv.min() < maxv:
        if periodic:
            left = np.roll(absv, 1)
            right = np.roll(absv, -1)
            flags |= ((absv <= left) & (absv <= right)
                      & (absv < cfg.local_min_threshold * maxv))
        else:
            interior = np.zeros_like(flags)
            interior[1:-1] = ((absv[1:-1] <= absv[:-2]) & (absv[1:-1] <= absv[2:])
                              & (absv[1:-1] < cfg.local_min_threshold * maxv))
            flags |= interior
    return flags


def _dilate(cells: np.ndarray, pad: int, periodic: bool) -> np.ndarray:
    out = cells.copy()
    n = cells.size
    for s in range(1, pad + 1):
        if periodic:
            out |= np.roll(cells, s) | np.roll(cells, -s)
        else:
            out[s:] |= cells[:n - s]
            out[:n - s] |= cells[s:]
    return out


def _false_runs(mask: np.ndarray, periodic: bool) -> list[tuple[int, int]]:
    """Maximal runs of False cells as (start, stop); a periodic run may wrap,
    encoded with stop > mask.size."""
    n = mask.size
    if not np.any(~mask):
        return []
    if not np.any(mask):
        return [(0, n)]
    idx = np.nonzero(~mask)[0]
    breaks = np.nonzero(np.diff(idx) > 1)[0]
    starts = np.concatenate([[idx[0]], idx[breaks + 1]])
    stops = np.concatenate([idx[breaks] + 1, [idx[-1] + 1]])
    runs = list(zip(starts.tolist(), stops.tolist()))
    if periodic and len(runs) > 1 and runs[0][0] == 0 and runs[-1][1] == n:
        first = runs.pop(0)
        last = runs.pop()
        runs.append((last[0], n + first[1]))
    return runs


def _run_trapezoid(logs: np.ndarray, h: float, start: int, stop: int,
                   periodic: bool) -> float:
    """Uniform trapezoid over cells [start, stop) with endpoint-derivative
    (Euler-Maclaurin) correction; node indices taken mod len(logs) if periodic."""
    n = logs.size
    nodes = np.arange(start, stop + 1)
    if periodic:
        nodes = nodes % n
    L = logs[nodes]
    trap = h * (0.5 * L[0] + 0.5 * L[-1] + float(np.sum(L[1:-1])))
    if stop - start >= 2 and not (periodic and stop - start >= n):
        dleft = (-3.0 * L[0] + 4.0 * L[1] - L[2]) / (2.0 * h)
        dright = (3.0 * L[-1] - 4.0 * L[-2] + L[-3]) / (2.0 * h)
        trap -= h * h / 12.0 * (dright - dleft)
    return trap


def _quadrature_grid(f: SignPolynomial, cfg: QuadratureConfig,
                     samples: CircleSamples | None) -> CircleSamples:
    if samples is not None:
        return samples
    m = min(next_power_of_two(max(4096, cfg.oversample * (f.degree + 1))),
            cfg.max_grid)
    return evaluate_at_roots(f, m)


def mahler_quadrature(f: SignPolynomial, arc: Arc | None = None,
                      cfg: QuadratureConfig | None = None,
                      samples: CircleSamples | None = None) -> MeasureResult:
    """exp of the arc-mean of log|f|; near-zero cells get adaptive panels."""
    arc = arc or Arc.full_circle()
    cfg = cfg or QuadratureConfig()
    samples = _quadrature_grid(f, cfg, samples)
    m = samples.m
    h = TWO_PI / m
    absv = np.abs(samples.values)
    integ = _LogIntegrator(f, cfg)

    if arc.is_full_circle:
        flags = _node_flags(absv, cfg, periodic=True)
        logs = np.log(np.maximum(absv, _TINY))
        if not np.any(flags):
            # pure periodic trapezoid: boundary terms cancel
            total = h * float(np.sum(logs))
        else:
            refine_cells = _dilate(flags | np.roll(flags, -1), cfg.pad_cells, True)
            total = 0.0
            for start, stop in _false_runs(refine_cells, periodic=True):
                if stop - start < 2:
                    refine_cells[start % m] = True
                    continue
                total += _run_trapezoid(logs, h, start, stop, periodic=True)
            for i in np.nonzero(refine_cells)[0]:
                total += integ.cell(h * i, h * (i + 1))
        value = math.exp(total / TWO_PI)
        err = value * (integ.unresolved + cfg.tol * max(integ.panels, 1)) / TWO_PI
        _maybe_raise(integ, cfg, value)
        return MeasureResult(value, 0.0, arc, "quadrature", m, err)

    # Subarc: interior grid nodes, end cells always integrated by panels.
    js, ts = _arc_nodes(arc, m)
    alpha = arc.alpha % TWO_PI
    beta = alpha + arc.length
    if js.size < 64:
        mloc = 4096
        hloc = arc.length / (mloc - 1)
        ts = alpha + hloc * np.arange(mloc)
        vs = np.abs(evaluate_points(f, ts))
        return _arc_quadrature(f, arc, cfg, ts, vs, hloc, alpha, beta, integ)
    vs = absv[js]
    return _arc_quadrature(f, arc, cfg, ts, vs, h, alpha, beta, integ)


def _arc_quadrature(f, arc, cfg, ts, vs, h, alpha, beta, integ):
    """Uniform interior nodes ts with values vs; partial end cells via panels."""
    flags = _node_flags(vs, cfg, periodic=False)
    logs = np.log(np.maximum(vs, _TINY))
    ncells = ts.size - 1
    cells = flags[:-1] | flags[1:]
    refine_cells = _dilate(cells, cfg.pad_cells, False)
    total = 0.0
    if ts[0] - alpha > 1e-15:
        total += integ.cell(alpha, ts[0])
    if beta - ts[-1] > 1e-15:
        total += integ.cell(ts[-1], beta)
    for start, stop in _false_runs(refine_cells, periodic=False):
        if stop - start < 2:
            refine_cells[start] = True
            continue
        total += _run_trapezoid(logs, h, start, stop, periodic=False)
    for i in np.nonzero(refine_cells)[0]:
        total += integ.cell(ts[i], ts[i + 1])
    value = math.exp(total / arc.length)
    err = value * (integ.unresolved + cfg.tol * max(integ.panels, 1)) / arc.length
    _maybe_raise(integ, cfg, value)
    return MeasureResult(value, 0.0, arc, "quadrature", int(ts.size) + 2, err)


def _maybe_raise(integ: _LogIntegrator, cfg: QuadratureConfig, value: float):
    if integ.unresolved > 1e4 * cfg.tol:
        raise ConvergenceError(
            "adaptive refinement exhausted max_depth", best=value,
            unresolved=integ.unresolved, panels=integ.panels)


# ---------------------------------------------------------------------------
# Roots and the Jensen product

def _initial_roots(degree: int) -> np.ndarray:
    ks = np.arange(1, degree + 1, dtype=np.float64)
    phases = TWO_PI * np.mod(ks * _GOLDEN, 1.0)
    return np.exp(1j * phases)


def _backward_residuals(coeffs: np.ndarray, roots: np.ndarray) -> np.ndarray:
    """|f(z)| / sum_k |c_k||z|^k, computed via the reversed polynomial outside."""
    coeffs = np.asarray(coeffs, dtype=np.float64)
    out = np.empty(roots.shape[0], dtype=np.float64)
    inside = np.abs(roots) <= 1.0
    for sel, cs in ((inside, coeffs), (~inside, coeffs[::-1])):
        if not np.any(sel):
            continue
        z = roots[sel] if cs is coeffs else 1.0 / roots[sel]
        p = np.zeros(z.shape, dtype=np.complex128)
        d = np.zeros(z.shape, dtype=np.float64)
        az = np.abs(z)
        for c in cs[::-1]:
            p = p * z + c
            d = d * az + abs(c)
        out[sel] = np.abs(p) / np.maximum(d, _TINY)
    return out


def roots_aberth(f: SignPolynomial, cfg: RootConfig | None = None) -> RootSet:
    """All complex roots by simultaneous Aberth-Ehrlich iteration."""
    cfg = cfg or RootConfig()
    degree = f.degree
    if degree < 1:
        raise DomainError("root finding needs degree >= 1")
    if degree > cfg.max_degree:
        raise SizeError(f"degree {degree} exceeds root-finder cap {cfg.max_degree}")
    coeffs = np.asarray(f.coeffs, dtype=np.float64)
    # Deflate exact roots at the origin (trailing zero coefficients): the
    # backward-relative residual is identically 1 there and never converges.
    nzero = int(np.argmax(coeffs != 0.0))
    coeffs = coeffs[nzero:]
    if nzero == degree:
        return RootSet(roots=np.zeros(nzero, dtype=np.complex128),
                       leading_coeff=int(f.coeffs[-1]), max_residual=0.0,
                       iterations=0)
    roots, iters, maxupd = kernels.aberth_iterate(
        coeffs, _initial_roots(degree - nzero), cfg.eps, cfg.max_iters)
    residuals = _backward_residuals(coeffs, roots)
    if nzero:
        roots = np.concatenate([np.zeros(nzero, dtype=np.complex128), roots])
    max_residual = float(residuals.max())
    if maxupd >= cfg.eps and max_residual > cfg.residual_tol:
        raise ConvergenceError(
            "Aberth iteration did not converge",
            best=RootSet(roots, int(f.coeffs[-1]), max_residual, iters),
            iterations=iters, max_update=maxupd, max_residual=max_residual)
    if max_residual > cfg.residual_tol:
        raise ConvergenceError(
            "root residuals above threshold",
            best=RootSet(roots, int(f.coeffs[-1]), max_residual, iters),
            iterations=iters, max_residual=max_residual)
    return RootSet(roots=roots, leading_coeff=int(f.coeffs[-1]),
                   max_residual=max_residual, iterations=iters)


def mahler_jensen(rs: RootSet) -> MeasureResult:
    """|leading| * prod max(1, |root|), from a converged root set."""
    logs = np.log(np.maximum(np.abs(rs.roots), 1.0))
    value = abs(rs.leading_coeff) * math.exp(float(np.sum(logs)))
    err = value * rs.roots.shape[0] * max(rs.max_residual, 1e-16)
    return MeasureResult(value, 0.0, Arc.full_circle(), "jensen",
                         rs.roots.shape[0], err)


# ---------------------------------------------------------------------------
# Moment series

def _moment_grid(nf: NormalizedPolynomial, m: int | None,
                 oversample: int = 512, cap: int = 2 ** 23) -> CircleSamples:
    degree = nf.base.degree
    if m is None:
        m = min(next_power_of_two(max(16 * (degree + 1), oversample * (degree + 1))),
                max(cap, next_power_of_two(16 * (degree + 1))))
    if m < 16 * (degree + 1):
        raise DomainError("moment grid must satisfy m >= 16*(degree+1)")
    return evaluate_at_roots(nf.base, m)


def moment_series(nf: NormalizedPolynomial, k_max: int,
                  m: int | None = None) -> MomentSeries:
    """I_k = mean over the circle of |scale * base|^k, for k = 1..k_max."""
    if k_max < 1:
        raise DomainError("k_max must be at least 1")
    samples = _moment_grid(nf, m)
    absv = np.abs(samples.values) * nf.scale
    values = kernels.power_means(absv, k_max)
    return MomentSeries(k_max=k_max, values=values, m=samples.m)


def moment_log_identity(nf: NormalizedPolynomial, k_max: int,
                        m: int | None = None,
                        cfg: QuadratureConfig | None = None) -> tuple[float, float, float]:
    """Compare integral of log|f|^2 with the partial even-moment series.

    Returns (lhs, rhs_partial, residual). Requires |f| <= 1 on the circle
    and degree >= 1 (a nonconstant normalized pair member).
    """
    if nf.base.degree < 1:
        raise DomainError("identity requires degree >= 1 (|f| < 1 somewhere)")
    samples = _moment_grid(nf, m)
    absv = np.abs(samples.values) * nf.scale
    if float(absv.max()) > 1.0 + 1e-9:
        raise DomainError("series derivation requires |f| <= 1 on the circle")
    absv = np.minimum(absv, 1.0)
    quad = mahler_quadrature(nf.base, cfg=cfg)
    lhs = 2.0 * TWO_PI * (math.log(quad.value) + math.log(nf.scale))
    means = kernels.power_means(absv, 2 * k_max)
    even = means[1::2]  # entry k-1 holds power 2k
    ks = np.arange(1, k_max + 1, dtype=np.float64)
    rhs_partial = -TWO_PI * float(np.sum(even / ks))
    return lhs, rhs_partial, abs(lhs - rhs_partial)
