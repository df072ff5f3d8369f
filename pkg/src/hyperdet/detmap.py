"""The determinantal map (D, R) -> det(t*I + x*D + y*R).

Point evaluation and exact adjugate-based Jacobians are O(d^3) per point;
the full coefficient vector is recovered by interpolation at a fixed
unit-circle node grid instead of symbolic expansion.
"""
from __future__ import annotations

import math

import numpy as np

from . import kernels
from .errors import IllConditionedNodes, NonRealRoots
from .ternary import TernaryForm, monomial_exponents, univariate_roots

REAL_PAIR_TOL = 1e-12


def pair_dim(d: int) -> int:
    """Number of free coordinates in a pair: d + d(d+1)/2 = d(d+3)/2."""
    return d * (d + 3) // 2


class SymPair:
    """A pair (D, R): D real-or-complex diagonal, R symmetric, both d x d.

    Immutable; the packed coordinate vector lists the d diagonal entries of D
    followed by the upper triangle of R in row-major order.
    """

    __slots__ = ("d", "diag", "sym")

    def __init__(self, diag, sym):
        diag = np.array(diag, dtype=np.complex128).reshape(-1)
        sym = np.array(sym, dtype=np.complex128)
        d = diag.shape[0]
        if sym.shape != (d, d):
            raise ValueError(f"symmetric part must be {d}x{d}, got {sym.shape}")
        # mirror the upper triangle so the matrix is exactly symmetric
        sym = np.triu(sym) + np.triu(sym, k=1).T
        diag.setflags(write=False)
        sym.setflags(write=False)
        self.d = d
        self.diag = diag
        self.sym = sym

    @classmethod
    def zero(cls, d: int) -> SymPair:
        return cls(np.zeros(d), np.zeros((d, d)))

    @classmethod
    def from_vector(cls, d: int, vec) -> SymPair:
        vec = np.asarray(vec, dtype=np.complex128).reshape(-1)
        if vec.shape[0] != pair_dim(d):
            raise ValueError(f"expected {pair_dim(d)} coordinates, got {vec.shape[0]}")
        diag = vec[:d]
        sym = np.zeros((d, d), dtype=np.complex128)
        jj, kk = np.triu_indices(d)
        sym[jj, kk] = vec[d:]
        return cls(diag, sym)

    def to_vector(self) -> np.ndarray:
        jj, kk = np.triu_indices(self.d)
        return np.concatenate([self.diag, self.sym[jj, kk]])

    @property
    def is_real(self) -> bool:
        worst = max(
            float(np.max(np.abs(self.diag.imag))), float(np.max(np.abs(self.sym.imag)))
        )
        return worst < REAL_PAIR_TOL

    @property
    def max_imag(self) -> float:
        return max(
            float(np.max(np.abs(self.diag.imag))), float(np.max(np.abs(self.sym.imag)))
        )

    def real(self) -> SymPair:
        """Drop imaginary parts (caller is responsible for checking max_imag)."""
        return SymPair(self.diag.real, self.sym.real)

    def to_json_dict(self) -> dict:
        if self.is_real:
            return {
                "d": self.d,
                "diag": [float(v) for v in self.diag.real],
                "sym": [[float(v) for v in row] for row in self.sym.real],
            }
        return {
            "d": self.d,
            "diag": [{"re": float(v.real), "im": float(v.imag)} for v in self.diag],
            "sym": [
                [{"re": float(v.real), "im": float(v.imag)} for v in row]
                for row in self.sym
            ],
        }

    @classmethod
    def from_json_dict(cls, obj: dict) -> SymPair:
        def scal(v):
            if isinstance(v, dict):
                return complex(float(v.get("re", 0.0)), float(v.get("im", 0.0)))
            return complex(v)

        d = int(obj["d"])
        diag = [scal(v) for v in obj["diag"]]
        sym = [[scal(v) for v in row] for row in obj["sym"]]
        if len(diag) != d or len(sym) != d or any(len(r) != d for r in sym):
            raise ValueError("pair dimensions inconsistent with d")
        return cls(diag, sym)

    def __repr__(self) -> str:
        return f"SymPair(d={self.d})"


def pencil_at(pair: SymPair, pt) -> np.ndarray:
    """The matrix t*I + x*D + y*R at a point."""
    t, x, y = (complex(v) for v in pt)
    return t * np.eye(pair.d) + x * np.diag(pair.diag) + y * pair.sym


def det_at(pair: SymPair, pt) -> complex:
    """Determinant of the pencil at one point (LU with partial pivoting)."""
    pts = np.asarray([pt], dtype=np.complex128)
    return complex(kernels.batch_det(pair.diag, pair.sym, pts)[0])


def det_grad_at(pair: SymPair, pt):
    """(value, gradient) of the determinant w.r.t. the packed coordinates."""
    pts = np.asarray([pt], dtype=np.complex128)
    dets, grads = kernels.batch_det_grad(pair.diag, pair.sym, pts)
    return complex(dets[0]), grads[0]


def det_many(pair: SymPair, pts: np.ndarray) -> np.ndarray:
    return kernels.batch_det(pair.diag, pair.sym, np.asarray(pts, dtype=np.complex128))


def det_grad_many(pair: SymPair, pts: np.ndarray):
    return kernels.batch_det_grad(
        pair.diag, pair.sym, np.asarray(pts, dtype=np.complex128)
    )


class _Grid:
    """Roots-of-unity evaluation grid for one degree.

    Points are (1, w^a, w^b) with w the (d+1)-th root of unity, so the
    monomial system is an exact 2-d DFT: coefficient recovery is an
    orthogonal projection (condition number 1) instead of a generic solve.
    """

    def __init__(self, d: int):
        n = d + 1
        w = np.exp(2j * np.pi * np.arange(n) / n)
        xa, yb = np.meshgrid(w, w, indexing="ij")
        self.n = n
        self.points = np.stack(
            [np.ones(n * n, dtype=np.complex128), xa.ravel(), yb.ravel()], axis=1
        )
        jj, kk = np.indices((n, n))
        self.mask = jj + kk <= d


_grid_cache: dict[int, _Grid] = {}


def _grid_for(d: int) -> _Grid:
    grid = _grid_cache.get(d)
    if grid is None:
        grid = _grid_cache[d] = _Grid(d)
    return grid


def pair_coeffs(pair: SymPair) -> TernaryForm:
    """Full coefficient recovery of det(t*I + x*D + y*R) as a TernaryForm.

    Evaluates the determinant on the unit-circle grid and projects onto the
    monomials of p(1, x, y); the t^d coefficient (exactly 1 in exact
    arithmetic) is renormalized afterwards.  The off-degree projection mass
    doubles as the residual check.
    """
    d = pair.d
    grid = _grid_for(d)
    vals = det_many(pair, grid.points).reshape(grid.n, grid.n)
    cgrid = np.fft.fft2(vals) / grid.n**2
    scale = max(1.0, float(np.max(np.abs(vals))))
    tail = float(np.max(np.abs(np.where(grid.mask, 0.0, cgrid))))
    if tail > 1e-9 * scale:
        raise IllConditionedNodes(
            f"coefficient recovery residual {tail:.3e} exceeds 1e-9 * {scale:.3e}"
        )
    cgrid = np.where(grid.mask, cgrid, 0.0)
    lead = cgrid[0, 0]
    if lead != 1.0:
        cgrid = cgrid / lead
        cgrid[0, 0] = 1.0
    return TernaryForm(d, cgrid)


def coeff_jacobian(pair: SymPair) -> np.ndarray:
    """Jacobian of the monomial coefficients w.r.t. the packed coordinates.

    Row order matches graded-lex monomials (t^d first); shape (n_monomials, m).
    """
    d = pair.d
    grid = _grid_for(d)
    _, grads = det_grad_many(pair, grid.points)
    m = grads.shape[1]
    jac_grid = np.fft.fft2(grads.reshape(grid.n, grid.n, m), axes=(0, 1)) / grid.n**2
    rows = [jac_grid[j, k, :] for (_, j, k) in monomial_exponents(d)]
    return np.stack(rows)


def extract_diag_candidates(form: TernaryForm, imag_tol: float = 1e-7) -> np.ndarray:
    """Sorted real roots of p(t, -1, 0): the forced diagonal of any representation."""
    roots = univariate_roots(form.restrict_direction(-1.0, 0.0))
    worst = float(np.max(np.abs(roots.imag))) if roots.size else 0.0
    if worst >= imag_tol:
        raise NonRealRoots(
            f"roots of p(t,-1,0) have imaginary parts up to {worst:.3e}; "
            "input is not hyperbolic"
        )
    return np.sort(roots.real)


def fiber_counts(d: int) -> tuple[int, int]:
    """(complex, real) fiber cardinalities over a smooth hyperbolic polynomial."""
    if d < 1:
        raise ValueError("d must be >= 1")
    g = math.comb(d - 1, 2)
    classes_c = (2**g * (2**g + 1)) // 2
    classes_r = 2**g
    sym = 2 ** (d - 1) * math.factorial(d)
    return classes_c * sym, classes_r * sym
