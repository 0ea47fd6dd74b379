"""Finite complex trigonometric polynomials built from spectral solutions.

An even-family polynomial is sum_r D_r exp(-i r xi) over r = -n+1..n (period
2*pi in xi); an odd-family one is sum_r D_r exp(-i (2r+1) xi/2) over
r = -n..n, which carries half-integer harmonics and is only 4*pi periodic.
The minus branch is the pointwise complex conjugate of the plus branch and
solves the conjugate differential equation.

In the wave phase variable z = xi/2 every polynomial f satisfies

    f'' + a sin(2z) (f' + i s f) + (eta - q a cos(2z)) f = 0

with s = +1 (plus branch) or -1 (minus branch), q = 2n - 1 (even family) or
q = 2n (odd family), and eta the matrix eigenvalue; ode_residual evaluates
the left-hand side directly.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .eigensolver import SpectralSolution
from .errors import InvalidArgumentError
from .ince_matrix import Parity


class Branch(Enum):
    PLUS = "+"
    MINUS = "-"


@dataclass(frozen=True)
class TrigPolynomial:
    parity: Parity
    branch: Branch
    n: int
    k: int
    a: float
    eta: float
    coeffs: np.ndarray  # D_r over ascending r
    q: int

    def __post_init__(self):
        self.coeffs.setflags(write=False)

    @property
    def r_indices(self) -> np.ndarray:
        if self.parity is Parity.EVEN:
            return np.arange(-self.n + 1, self.n + 1)
        return np.arange(-self.n, self.n + 1)

    @property
    def xi_frequencies(self) -> np.ndarray:
        """Harmonic frequencies m_r in exp(-i m_r xi) for the plus branch."""
        r = self.r_indices
        if self.parity is Parity.EVEN:
            return r.astype(float)
        return r + 0.5

    @property
    def period(self) -> float:
        return 2 * np.pi if self.parity is Parity.EVEN else 4 * np.pi


def make_polynomial(sol: SpectralSolution, k: int, branch: Branch = Branch.PLUS) -> TrigPolynomial:
    """Polynomial for eigenvalue label k (1-based, descending order)."""
    if not 1 <= k <= sol.dim:
        raise InvalidArgumentError(f"label k={k} outside 1..{sol.dim}")
    q = 2 * sol.n - 1 if sol.parity is Parity.EVEN else 2 * sol.n
    return TrigPolynomial(sol.parity, branch, sol.n, k, sol.a,
                          float(sol.eigenvalues[k - 1]), sol.eigenvectors[k - 1].copy(), q)


def evaluate(p: TrigPolynomial, xi):
    """Value of the polynomial at phase xi (scalar or array)."""
    xi = np.asarray(xi, dtype=float)
    phases = np.exp(-1j * np.multiply.outer(xi, p.xi_frequencies))
    val = phases @ p.coeffs
    if p.branch is Branch.MINUS:
        val = np.conj(val)
    return val if val.shape else complex(val)


def derivative(p: TrigPolynomial, order: int = 1):
    """Exact term-wise derivative d^order/dxi^order as a callable of xi."""
    if order < 0:
        raise InvalidArgumentError("derivative order must be >= 0")
    freqs = p.xi_frequencies
    dcoeffs = p.coeffs * (-1j * freqs) ** order

    def dval(xi):
        xi = np.asarray(xi, dtype=float)
        phases = np.exp(-1j * np.multiply.outer(xi, freqs))
        val = phases @ dcoeffs
        if p.branch is Branch.MINUS:
            val = np.conj(val)
        return val if val.shape else complex(val)

    return dval


def _z_values(p: TrigPolynomial, z, order: int):
    """(d/dz)^order of the polynomial as a function of z = xi/2."""
    z = np.asarray(z, dtype=float)
    wz = 2.0 * p.xi_frequencies  # f = sum D_r exp(-i w_r z)
    coeffs = p.coeffs * (-1j * wz) ** order
    val = np.exp(-1j * np.multiply.outer(z, wz)) @ coeffs
    return np.conj(val) if p.branch is Branch.MINUS else val


def ode_residual(p: TrigPolynomial, z):
    """Left-hand side of the governing equation at z (zero for true eigenpairs)."""
    z = np.asarray(z, dtype=float)
    f = _z_values(p, z, 0)
    f1 = _z_values(p, z, 1)
    f2 = _z_values(p, z, 2)
    s = 1.0 if p.branch is Branch.PLUS else -1.0
    res = f2 + p.a * np.sin(2 * z) * (f1 + 1j * s * f) + (p.eta - p.q * p.a * np.cos(2 * z)) * f
    return res if res.shape else complex(res)


def harmonic_strengths(p: TrigPolynomial) -> list[tuple[int, float]]:
    """Squared coefficients (r, D_r**2) in ascending r; they sum to 1."""
    return [(int(r), float(c * c)) for r, c in zip(p.r_indices, p.coeffs)]
