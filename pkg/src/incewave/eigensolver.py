"""Spectral decomposition of the coupling matrices.

Eigenvalues come from bisection on Sturm sequences: the number of eigenvalues
below a shift equals the number of sign changes along the leading-principal-
minor recurrence, which only involves the super*sub products and therefore
works directly on the unsymmetric matrix. The double tier runs the recurrence
in float64; the extended tier re-runs the final bisection in double-double
arithmetic, which resolves eigenvalue pairs splitting around the 12th
significant digit, below one ulp of the values themselves.

Eigenvectors come from inverse iteration on the symmetrized matrix (with
reorthogonalization against previously computed members of a near-degenerate
cluster), mapped back through the diagonal similarity scaling. Each cluster is
then rotated to diagonalize the weighted bilinear Gram form, which recovers
the physically correct pair members even when the eigenvalue splitting is
below arithmetic resolution; members are matched to eigenvalues through a
compensated Rayleigh quotient.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import ddcore as ddc
from .bessel import bilinear_weight_kernel
from .errors import (
    InvalidArgumentError,
    InvalidBracketError,
    NumericalFailureError,
)
from .ince_matrix import Parity, TridiagonalMatrix

_EPS = np.finfo(float).eps

# Consecutive eigenvalues closer than this (relative to the spectral scale)
# are treated as one cluster for the eigenvector post-processing.
_CLUSTER_RELGAP = 1e-4


class Tier(Enum):
    DOUBLE = "double"
    EXTENDED = "extended"


@dataclass(frozen=True)
class SpectralSolution:
    """Full spectrum of one coupling matrix.

    eigenvalues are sorted descending (label k = 1..dim indexes this order);
    eigenvectors[k-1] is the coefficient vector D_r over ascending r, with
    sum(D**2) == 1 and the largest-magnitude component positive (ties broken
    toward lower r). At the extended tier eigenvalues_lo holds the
    double-double correction: eigenvalues[i] + eigenvalues_lo[i] is the
    compensated value.
    """

    parity: Parity
    n: int
    a: float
    row_index_lo: int
    row_index_hi: int
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    refinement: Tier
    eigenvalues_lo: np.ndarray | None = None

    def __post_init__(self):
        self.eigenvalues.setflags(write=False)
        self.eigenvectors.setflags(write=False)
        if self.eigenvalues_lo is not None:
            self.eigenvalues_lo.setflags(write=False)

    @property
    def dim(self) -> int:
        return self.eigenvalues.size

    @property
    def row_indices(self) -> np.ndarray:
        return np.arange(self.row_index_lo, self.row_index_hi + 1)

    def eigenvalue_dd(self, k: int) -> tuple[float, float]:
        """Compensated (hi, lo) pair for label k (1-based, descending)."""
        lo = 0.0 if self.eigenvalues_lo is None else self.eigenvalues_lo[k - 1]
        return float(self.eigenvalues[k - 1]), float(lo)


def symmetrize(m: TridiagonalMatrix) -> tuple[np.ndarray, np.ndarray]:
    """Symmetrizing data: off-diagonals c_j = sqrt(super_j*sub_j) and the
    positive diagonal scaling d (d[0] = 1) with diag(d) m diag(d)^-1
    symmetric. A vector v of the symmetric matrix maps back to D = v / d."""
    g = m.offdiag_products()
    if np.any(g < 0):
        raise NumericalFailureError("off-diagonal products must be >= 0 for a valid matrix")
    c = np.sqrt(g)
    d = np.ones(m.dim)
    if m.a > 0 and m.dim > 1:
        d[1:] = np.cumprod(np.sqrt(m.super / m.sub))
    return c, d


# ----------------------------------------------------------------------
# Sturm counts: number of eigenvalues strictly below a shift, from sign
# changes of the minor recurrence p_j = (d_j - x) p_{j-1} - g_{j-1} p_{j-2}.
# A zero minor takes the opposite sign of its predecessor.
# ----------------------------------------------------------------------

_BIG = 1e200
_SMALL = 1e-200
_DOWN = 2.0**-600
_UP = 2.0**600


def _count_f64(diag, g, xs):
    xs = np.atleast_1d(np.asarray(xs, dtype=float))
    cnt = np.zeros(xs.shape, dtype=np.int64)
    sprev = np.ones(xs.shape)
    pm2 = np.ones_like(xs)
    pm1 = diag[0] - xs
    for j in range(len(diag)):
        if j > 0:
            pm2, pm1 = pm1, (diag[j] - xs) * pm1 - g[j - 1] * pm2
            mx = np.maximum(np.abs(pm1), np.abs(pm2))
            f = np.where(mx > _BIG, _DOWN, 1.0)
            f = np.where((mx > 0) & (mx < _SMALL), _UP, f)
            pm1 *= f
            pm2 *= f
        s = np.sign(pm1)
        s = np.where(s == 0, -sprev, s)
        cnt += s != sprev
        sprev = s
    return cnt


def _count_dd(diag, g_dd, xh, xl):
    xh = np.atleast_1d(np.asarray(xh, dtype=float))
    xl = np.atleast_1d(np.asarray(xl, dtype=float))
    gh, gl = g_dd
    cnt = np.zeros(xh.shape, dtype=np.int64)
    sprev = np.ones(xh.shape)
    p2h, p2l = np.ones_like(xh), np.zeros_like(xh)
    p1h, p1l = ddc.dd_add(diag[0], 0.0, -xh, -xl)
    for j in range(len(diag)):
        if j > 0:
            th, tl = ddc.dd_add(diag[j], 0.0, -xh, -xl)
            ah, al = ddc.dd_mul(th, tl, p1h, p1l)
            bh, bl = ddc.dd_mul(gh[j - 1], gl[j - 1], p2h, p2l)
            ph, pl = ddc.dd_sub(ah, al, bh, bl)
            p2h, p2l, p1h, p1l = p1h, p1l, ph, pl
            mx = np.maximum(np.abs(p1h), np.abs(p2h))
            f = np.where(mx > _BIG, _DOWN, 1.0)
            f = np.where((mx > 0) & (mx < _SMALL), _UP, f)
            p1h, p1l = p1h * f, p1l * f
            p2h, p2l = p2h * f, p2l * f
        s = ddc.dd_sign(p1h, p1l)
        s = np.where(s == 0, -sprev, s)
        cnt += s != sprev
        sprev = s
    return cnt


def sturm_count(m: TridiagonalMatrix, eta: float) -> int:
    """Number of eigenvalues of m strictly below eta (float64 arithmetic)."""
    if m.a == 0:
        return int(np.sum(m.diag < eta))
    return int(_count_f64(m.diag, m.offdiag_products(), [eta])[0])


def _gershgorin(m: TridiagonalMatrix) -> tuple[float, float]:
    c = np.sqrt(m.offdiag_products())
    radius = np.zeros(m.dim)
    radius[:-1] += c
    radius[1:] += c
    lo = float(np.min(m.diag - radius))
    hi = float(np.max(m.diag + radius))
    pad = 1e-8 * max(1.0, abs(lo), abs(hi)) + 1.0
    return lo - pad, hi + pad


def _bisect_f64(diag, g, lo, hi, max_iter=120):
    dim = len(diag)
    ks = np.arange(1, dim + 1)
    los = np.full(dim, lo)
    his = np.full(dim, hi)
    for _ in range(max_iter):
        mid = 0.5 * (los + his)
        take = _count_f64(diag, g, mid) >= ks
        his = np.where(take, mid, his)
        los = np.where(take, los, mid)
        if np.all(his - los <= 4 * _EPS * np.maximum(1.0, np.abs(his))):
            break
    return 0.5 * (los + his)


def _bisect_dd(diag, g_dd, loh, lol, hih, hil, ks, target, max_iter=160):
    for _ in range(max_iter):
        mh, ml = ddc.dd_add(loh, lol, hih, hil)
        mh, ml = ddc.dd_scale_pow2(mh, ml, 0.5)
        take = _count_dd(diag, g_dd, mh, ml) >= ks
        hih = np.where(take, mh, hih)
        hil = np.where(take, ml, hil)
        loh = np.where(take, loh, mh)
        lol = np.where(take, lol, ml)
        if np.all((hih - loh) + (hil - lol) <= target):
            break
    mh, ml = ddc.dd_add(loh, lol, hih, hil)
    return ddc.dd_scale_pow2(mh, ml, 0.5)


def _eigenvalues_dd(m: TridiagonalMatrix, seeds: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Extended-tier eigenvalues (ascending), seeded from float64 estimates."""
    dim = m.dim
    ks = np.arange(1, dim + 1)
    g_dd = ddc.two_prod(m.super, m.sub)
    scale = max(1.0, float(np.max(np.abs(seeds))))
    pad = max(1e-10, 1e-11 * scale)
    loh, lol = ddc.dd(seeds - pad)
    hih, hil = ddc.dd(seeds + pad)
    # seed brackets must satisfy count(lo_k) <= k-1 and count(hi_k) >= k; any
    # violation (float64 rounding bias) falls back to the global interval
    glo, ghi = _gershgorin(m)
    bad_lo = _count_dd(m.diag, g_dd, loh, lol) > ks - 1
    bad_hi = _count_dd(m.diag, g_dd, hih, hil) < ks
    loh = np.where(bad_lo, glo, loh)
    lol = np.where(bad_lo, 0.0, lol)
    hih = np.where(bad_hi, ghi, hih)
    hil = np.where(bad_hi, 0.0, hil)
    return _bisect_dd(m.diag, g_dd, loh, lol, hih, hil, ks, 1e-26 * scale)


# ----------------------------------------------------------------------
# Eigenvectors: inverse iteration on the symmetric form
# ----------------------------------------------------------------------


def _solve_shifted(dshift, e, rhs):
    """Solve T x = rhs for tridiagonal T(diag dshift, offdiag e) by Gaussian
    elimination with partial pivoting; tiny pivots are replaced (the standard
    inverse-iteration treatment of a numerically singular shift)."""
    n = dshift.size
    tiny = _EPS * (np.max(np.abs(dshift)) + 2 * (np.max(np.abs(e)) if e.size else 0.0) + 1.0)
    if n == 1:
        return rhs / (dshift[0] if dshift[0] != 0 else tiny)
    dm = dshift.astype(float).copy()
    du = e.astype(float).copy()
    dl = e.astype(float).copy()
    du2 = np.zeros(n - 2) if n > 2 else np.zeros(0)
    x = rhs.astype(float).copy()
    for i in range(n - 1):
        if abs(dm[i]) >= abs(dl[i]):
            if dm[i] == 0.0:
                dm[i] = tiny
            fact = dl[i] / dm[i]
            dm[i + 1] -= fact * du[i]
            x[i + 1] -= fact * x[i]
            if i < n - 2:
                du2[i] = 0.0
        else:
            fact = dm[i] / dl[i]
            dm[i] = dl[i]
            tmp = dm[i + 1]
            dm[i + 1] = du[i] - fact * tmp
            if i < n - 2:
                du2[i] = du[i + 1]
                du[i + 1] *= -fact
            du[i] = tmp
            x[i], x[i + 1] = x[i + 1], x[i] - fact * x[i + 1]
    for i in range(n - 1, -1, -1):
        acc = x[i]
        if i + 1 < n:
            acc -= du[i] * x[i + 1]
        if i + 2 < n:
            acc -= du2[i] * x[i + 2]
        x[i] = acc / (dm[i] if dm[i] != 0 else tiny)
    return x


def _sym_residual(dsym, c, mu, v):
    t = (dsym - mu) * v
    if c.size:
        t[:-1] += c * v[1:]
        t[1:] += c * v[:-1]
    return float(np.max(np.abs(t)))


def _inverse_iteration(dsym, c, mu, label, ortho=(), start_offset=0):
    """One unit eigenvector of the symmetric form at eigenvalue mu,
    reorthogonalized against already-computed cluster members in `ortho`."""
    n = dsym.size
    shifted = dsym - mu
    norm_t = float(np.max(np.abs(dsym)) + 2 * (np.max(np.abs(c)) if c.size else 0.0))
    tight = 64 * _EPS * max(1.0, norm_t)
    order = np.argsort(np.abs(dsym - mu), kind="stable")
    best_v, best_res = None, math.inf
    for attempt in range(min(n, 8)):
        v = np.zeros(n)
        v[order[(attempt + start_offset) % n]] = 1.0
        for _ in range(4):
            w = _solve_shifted(shifted, c, v)
            for u in ortho:
                w -= (u @ w) * u
            nw = np.linalg.norm(w)
            if not np.isfinite(nw) or nw == 0.0:
                break
            v = w / nw
            res = _sym_residual(dsym, c, mu, v)
            if res < best_res:
                best_v, best_res = v.copy(), res
            if res <= tight:
                return v
    if best_v is not None and best_res <= 1e-8 * max(1.0, norm_t):
        return best_v
    raise NumericalFailureError(
        f"inverse iteration failed to converge for eigenvalue label k={label}"
    )


def _bilinear_weight(m: TridiagonalMatrix) -> np.ndarray:
    """Gram kernel of the weighted bilinear inner product in coefficient
    space (see verify.weighted_inner_product)."""
    sigma = 0 if m.parity is Parity.EVEN else 1
    return bilinear_weight_kernel(m.row_indices, sigma, m.a)


def _cluster_slices(vals_desc: np.ndarray) -> list[slice]:
    scale = max(1.0, float(np.max(np.abs(vals_desc))))
    out = []
    i = 0
    while i < vals_desc.size:
        j = i
        while j + 1 < vals_desc.size and vals_desc[j] - vals_desc[j + 1] <= _CLUSTER_RELGAP * scale:
            j += 1
        out.append(slice(i, j + 1))
        i = j + 1
    return out


def _rayleigh_dd(m: TridiagonalMatrix, v: np.ndarray) -> float:
    """Compensated Rayleigh quotient (v . M v) / (v . v)."""
    numh, numl = 0.0, 0.0
    denh, denl = 0.0, 0.0
    for i in range(m.dim):
        th, tl = ddc.two_prod(float(m.diag[i]), v[i])
        if i + 1 < m.dim:
            ph, pl = ddc.two_prod(float(m.super[i]), v[i + 1])
            th, tl = ddc.dd_add(th, tl, ph, pl)
        if i > 0:
            ph, pl = ddc.two_prod(float(m.sub[i - 1]), v[i - 1])
            th, tl = ddc.dd_add(th, tl, ph, pl)
        th, tl = ddc.dd_mul(th, tl, v[i], 0.0)
        numh, numl = ddc.dd_add(numh, numl, th, tl)
        sh, sl = ddc.two_prod(v[i], v[i])
        denh, denl = ddc.dd_add(denh, denl, sh, sl)
    qh, ql = ddc.dd_div(numh, numl, denh, denl)
    return qh + ql


def _fix_signs(vecs_rows: np.ndarray) -> np.ndarray:
    out = vecs_rows.copy()
    for i in range(out.shape[0]):
        j = int(np.argmax(np.abs(out[i])))
        if out[i, j] < 0:
            out[i] = -out[i]
    return out


def _rotate_clusters(m: TridiagonalMatrix, vals_desc, vecs_rows):
    """Diagonalize the bilinear Gram form within every near-degenerate
    cluster and order members by descending Rayleigh quotient."""
    out = vecs_rows.copy()
    weight = None
    for sl in _cluster_slices(vals_desc):
        nmem = sl.stop - sl.start
        if nmem == 1:
            continue
        if weight is None:
            weight = _bilinear_weight(m)
        block = out[sl].T
        gram = block.T @ weight @ block
        gram = 0.5 * (gram + gram.T)
        _, rot = np.linalg.eigh(gram)
        block = block @ rot
        block /= np.sqrt(np.sum(block**2, axis=0))
        quot = np.array([_rayleigh_dd(m, block[:, j]) for j in range(nmem)])
        block = block[:, np.argsort(-quot, kind="stable")]
        out[sl] = block.T
    return out


def eigen_decompose(m: TridiagonalMatrix, tier: Tier = Tier.DOUBLE) -> SpectralSolution:
    """All eigenvalues (descending) and normalized coefficient vectors."""
    dim = m.dim
    want_lo = tier is Tier.EXTENDED

    if dim == 1:
        return SpectralSolution(m.parity, m.n, m.a, m.row_index_lo, m.row_index_hi,
                                np.array([float(m.diag[0])]), np.ones((1, 1)), tier,
                                np.zeros(1) if want_lo else None)

    if m.a == 0:
        order = np.argsort(-m.diag, kind="stable")
        vals = m.diag[order].astype(float)
        vecs = np.eye(dim)[order]
        vecs = _fix_signs(_rotate_clusters(m, vals, vecs))
        return SpectralSolution(m.parity, m.n, m.a, m.row_index_lo, m.row_index_hi,
                                vals, vecs, tier, np.zeros(dim) if want_lo else None)

    g = m.offdiag_products()
    glo, ghi = _gershgorin(m)
    asc = _bisect_f64(m.diag, g, glo, ghi)
    if want_lo:
        eh, el = _eigenvalues_dd(m, asc)
        asc = eh + el  # best float64 rounding of the compensated value
        asc_lo = (eh - asc) + el
    else:
        asc_lo = np.zeros(dim)

    vals_desc = asc[::-1].copy()
    vlo_desc = asc_lo[::-1].copy()

    c, dscale = symmetrize(m)
    vecs = np.empty((dim, dim))
    for sl in _cluster_slices(vals_desc):
        members: list[np.ndarray] = []
        for i in range(sl.start, sl.stop):
            v = _inverse_iteration(m.diag.astype(float), c, vals_desc[i], i + 1,
                                   ortho=members, start_offset=i - sl.start)
            members.append(v)
            vecs[i] = v / dscale
    vecs /= np.sqrt(np.sum(vecs**2, axis=1))[:, None]

    vecs = _fix_signs(_rotate_clusters(m, vals_desc, vecs))
    sol = SpectralSolution(m.parity, m.n, m.a, m.row_index_lo, m.row_index_hi,
                           vals_desc, vecs, tier, vlo_desc if want_lo else None)
    _check_residuals(m, sol)
    return sol


def _check_residuals(m: TridiagonalMatrix, sol: SpectralSolution):
    for i in range(m.dim):
        d = sol.eigenvectors[i]
        t = (m.diag - sol.eigenvalues[i]) * d
        t[:-1] += m.super * d[1:]
        t[1:] += m.sub * d[:-1]
        if np.max(np.abs(t)) > 1e-10 * (abs(sol.eigenvalues[i]) + m.a * m.dim + 1.0):
            raise NumericalFailureError(f"eigenpair residual out of tolerance for label k={i + 1}")


def refine_eigenvalue(m: TridiagonalMatrix, eta0: float,
                      bracket: tuple[float, float] | None = None) -> float:
    """Extended-tier refinement of the eigenvalue nearest eta0.

    With an explicit bracket the interval must isolate exactly one eigenvalue
    by Sturm count, otherwise InvalidBracketError is raised. Bisection runs in
    compensated arithmetic to a bracket width far below 1e-14 * max(1, |eta|).
    """
    eh, el = refine_eigenvalue_dd(m, eta0, bracket)
    return eh + el


def refine_eigenvalue_dd(m: TridiagonalMatrix, eta0: float,
                         bracket: tuple[float, float] | None = None) -> tuple[float, float]:
    """As refine_eigenvalue but returning the compensated (hi, lo) pair."""
    eta0 = float(eta0)
    if not math.isfinite(eta0):
        raise InvalidArgumentError("eta0 must be finite")
    if m.dim == 1:
        return float(m.diag[0]), 0.0
    if m.a == 0:
        return float(m.diag[np.argmin(np.abs(m.diag - eta0))]), 0.0
    g_dd = ddc.two_prod(m.super, m.sub)
    glo, ghi = _gershgorin(m)
    if bracket is not None:
        lo, hi = float(bracket[0]), float(bracket[1])
        if not lo < hi:
            raise InvalidBracketError(f"empty bracket ({lo}, {hi})")
        nlo = int(_count_dd(m.diag, g_dd, lo, 0.0)[0])
        nhi = int(_count_dd(m.diag, g_dd, hi, 0.0)[0])
        if nhi - nlo != 1:
            raise InvalidBracketError(
                f"bracket ({lo}, {hi}) isolates {nhi - nlo} eigenvalues, need exactly 1"
            )
        ks = np.array([nlo + 1])
        loh, lol = ddc.dd(np.array([lo]))
        hih, hil = ddc.dd(np.array([hi]))
    else:
        asc = _bisect_f64(m.diag, m.offdiag_products(), glo, ghi)
        idx = int(np.argmin(np.abs(asc - eta0)))
        lo = 0.5 * (asc[idx - 1] + asc[idx]) if idx > 0 else glo
        hi = 0.5 * (asc[idx + 1] + asc[idx]) if idx < m.dim - 1 else ghi
        ks = np.array([idx + 1])
        loh, lol = ddc.dd(np.array([lo]))
        hih, hil = ddc.dd(np.array([hi]))
        nlo = int(_count_dd(m.diag, g_dd, loh, lol)[0])
        nhi = int(_count_dd(m.diag, g_dd, hih, hil)[0])
        if not (nlo <= idx < nhi):
            loh, lol = ddc.dd(np.array([glo]))
            hih, hil = ddc.dd(np.array([ghi]))
    scale = max(1.0, abs(eta0))
    eh, el = _bisect_dd(m.diag, g_dd, loh, lol, hih, hil, ks, 1e-26 * scale)
    return float(eh[0]), float(el[0])


def eigenvector_for(m: TridiagonalMatrix, eta: float) -> np.ndarray:
    """Normalized, sign-fixed coefficient vector for the eigenvalue at eta.

    eta must sit within the residual tolerance 1e-10*(|eta| + a*dim) of a true
    eigenvalue; anything farther raises InvalidArgumentError.
    """
    eta = float(eta)
    tol = 1e-10 * (abs(eta) + m.a * m.dim + 1.0)
    refined = refine_eigenvalue(m, eta)
    if abs(refined - eta) > tol:
        raise InvalidArgumentError(
            f"eta={eta!r} is not within {tol:.3e} of an eigenvalue (nearest: {refined!r})"
        )
    sol = eigen_decompose(m, Tier.DOUBLE)
    k = int(np.argmin(np.abs(sol.eigenvalues - refined)))
    return sol.eigenvectors[k].copy()
