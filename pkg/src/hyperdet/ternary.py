"""Dense homogeneous ternary forms in (t, x, y) with numeric hyperbolicity tests.

A form of degree d is stored as a dense (d+1) x (d+1) grid indexed by the
(x, y)-exponents (j, k); the t-exponent is d - j - k.  Entries with
j + k > d are identically zero.  All instances are immutable.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    DegenerateLeadingCoefficient,
    DegreeMismatch,
    LeadingCoefficientZero,
    NotReal,
    ZeroDirection,
)

REAL_COEFF_TOL = 1e-12
DEFAULT_HYP_TOL = 1e-7
DEFAULT_HYP_DIRS = 64

# Fixed stream for the random half of the direction sample; the certificate is
# deterministic across calls and processes.
_DIRECTION_SEED = 0x5EED0D1B


def n_monomials(degree: int) -> int:
    """Number of degree-`degree` monomials in three variables."""
    return (degree + 1) * (degree + 2) // 2


def monomial_exponents(degree: int) -> list[tuple[int, int, int]]:
    """Exponent triples (i, j, k), i+j+k = degree, in graded-lex order."""
    out = []
    for i in range(degree, -1, -1):
        for j in range(degree - i, -1, -1):
            out.append((i, j, degree - i - j))
    return out


class TernaryForm:
    """Immutable dense homogeneous polynomial in (t, x, y)."""

    __slots__ = ("degree", "_c")

    def __init__(self, degree: int, grid: np.ndarray):
        if degree < 0:
            raise ValueError("degree must be non-negative")
        c = np.array(grid, dtype=np.complex128)
        if c.shape != (degree + 1, degree + 1):
            raise ValueError(f"grid must be ({degree + 1}, {degree + 1}), got {c.shape}")
        jj, kk = np.indices(c.shape)
        c[jj + kk > degree] = 0.0
        c.setflags(write=False)
        self.degree = degree
        self._c = c

    # --- constructors -------------------------------------------------

    @classmethod
    def from_terms(cls, degree: int, terms: dict[tuple[int, int, int], complex]) -> TernaryForm:
        grid = np.zeros((degree + 1, degree + 1), dtype=np.complex128)
        for (i, j, k), coeff in terms.items():
            if i < 0 or j < 0 or k < 0 or i + j + k != degree:
                raise ValueError(f"exponent triple {(i, j, k)} does not sum to degree {degree}")
            grid[j, k] += coeff
        return cls(degree, grid)

    @classmethod
    def from_vector(cls, degree: int, vec) -> TernaryForm:
        vec = np.asarray(vec, dtype=np.complex128)
        if vec.shape != (n_monomials(degree),):
            raise ValueError("coefficient vector has wrong length")
        grid = np.zeros((degree + 1, degree + 1), dtype=np.complex128)
        for (_, j, k), coeff in zip(monomial_exponents(degree), vec):
            grid[j, k] = coeff
        return cls(degree, grid)

    @classmethod
    def t_power(cls, degree: int) -> TernaryForm:
        """The monic pure power t^degree."""
        grid = np.zeros((degree + 1, degree + 1), dtype=np.complex128)
        grid[0, 0] = 1.0
        return cls(degree, grid)

    # --- accessors ----------------------------------------------------

    @property
    def grid(self) -> np.ndarray:
        """Read-only (x,y)-exponent coefficient grid."""
        return self._c

    def coeff(self, i: int, j: int, k: int) -> complex:
        if i + j + k != self.degree or min(i, j, k) < 0:
            raise ValueError(f"{(i, j, k)} is not a degree-{self.degree} monomial")
        return complex(self._c[j, k])

    def vector(self) -> np.ndarray:
        """Coefficients in graded-lex monomial order."""
        return np.array([self._c[j, k] for (_, j, k) in monomial_exponents(self.degree)])

    @property
    def leading_coeff(self) -> complex:
        """Coefficient of t^d."""
        return complex(self._c[0, 0])

    @property
    def max_abs_coeff(self) -> float:
        return float(np.max(np.abs(self._c)))

    @property
    def is_real(self) -> bool:
        return float(np.max(np.abs(self._c.imag))) < REAL_COEFF_TOL

    def real_part(self, rel_tol: float = 1e-9) -> TernaryForm:
        """Drop imaginary parts, requiring them small relative to the coefficient scale."""
        scale = max(1.0, self.max_abs_coeff)
        worst = float(np.max(np.abs(self._c.imag)))
        if worst > rel_tol * scale:
            raise NotReal(f"imaginary parts up to {worst:.3e} exceed {rel_tol:.1e} * scale")
        return TernaryForm(self.degree, self._c.real.astype(np.complex128))

    def monic(self) -> TernaryForm:
        """Normalize so coeff(t^d) = 1; rejects forms with vanishing lead."""
        lead = self.leading_coeff
        if abs(lead) <= 1e-12 * max(1.0, self.max_abs_coeff):
            raise LeadingCoefficientZero("coeff(t^d) vanishes; cannot normalize")
        if lead == 1.0:
            return self
        grid = self._c / lead
        grid[0, 0] = 1.0
        return TernaryForm(self.degree, grid)

    # --- arithmetic (same-degree linear space) -------------------------

    def __add__(self, other: TernaryForm) -> TernaryForm:
        self._check_degree(other)
        return TernaryForm(self.degree, self._c + other._c)

    def __sub__(self, other: TernaryForm) -> TernaryForm:
        self._check_degree(other)
        return TernaryForm(self.degree, self._c - other._c)

    def __mul__(self, scalar) -> TernaryForm:
        return TernaryForm(self.degree, self._c * complex(scalar))

    __rmul__ = __mul__

    def _check_degree(self, other: TernaryForm) -> None:
        if self.degree != other.degree:
            raise DegreeMismatch(f"degrees {self.degree} and {other.degree} differ")

    # --- evaluation and calculus ---------------------------------------

    def evaluate(self, pt) -> complex:
        """Value at a point of C^3."""
        t, x, y = (complex(v) for v in pt)
        d = self.degree
        tp = np.array([t**n for n in range(d + 1)])
        xp = np.array([x**n for n in range(d + 1)])
        yp = np.array([y**n for n in range(d + 1)])
        jj, kk = np.indices(self._c.shape)
        ii = np.clip(d - jj - kk, 0, d)
        return complex(np.sum(self._c * tp[ii] * np.outer(xp, yp)))

    def restrict_direction(self, u: float, v: float) -> np.ndarray:
        """Coefficients of p(t, u, v) in t, leading (t^d) coefficient first."""
        if u == 0 and v == 0:
            raise ZeroDirection("direction (0, 0) is not allowed")
        d = self.degree
        u = complex(u)
        v = complex(v)
        up = np.array([u**n for n in range(d + 1)])
        vp = np.array([v**n for n in range(d + 1)])
        weighted = self._c * np.outer(up, vp)
        # entry n is the coefficient of t^(d-n): the anti-diagonal j + k = n
        out = np.empty(d + 1, dtype=np.complex128)
        flipped = weighted[::-1]
        for n in range(d + 1):
            out[n] = np.trace(flipped, offset=n - d)
        return out

    def gradient_at(self, pt) -> tuple[complex, complex, complex]:
        """(df/dt, df/dx, df/dy) at pt."""
        d = self.degree
        if d == 0:
            return (0j, 0j, 0j)
        jj, kk = np.indices(self._c.shape)
        tw = np.clip(d - jj - kk, 0, None)
        gt = TernaryForm(d - 1, (self._c * tw)[:d, :d])
        gx = TernaryForm(d - 1, (self._c * jj)[1:, :d])
        gy = TernaryForm(d - 1, (self._c * kk)[:d, 1:])
        return (gt.evaluate(pt), gx.evaluate(pt), gy.evaluate(pt))

    def diff_t(self, order: int = 1) -> TernaryForm:
        """order-th derivative in t; degree drops accordingly."""
        if not 0 <= order <= self.degree:
            raise ValueError(f"order must lie in [0, {self.degree}]")
        d = self.degree
        grid = self._c
        for step in range(order):
            deg = d - step
            jj, kk = np.indices(grid.shape)
            grid = grid * np.clip(deg - jj - kk, 0, None)
            grid = _shrink(grid, deg)
        return TernaryForm(d - order, grid)

    def distance(self, other: TernaryForm) -> float:
        """Max absolute coefficient difference."""
        self._check_degree(other)
        return float(np.max(np.abs(self._c - other._c)))

    # --- serialization --------------------------------------------------

    def to_json_dict(self) -> dict:
        terms = []
        for (i, j, k) in monomial_exponents(self.degree):
            c = self._c[j, k]
            if c == 0:
                continue
            term = {"exp": [i, j, k], "re": float(c.real)}
            if c.imag != 0.0:
                term["im"] = float(c.imag)
            terms.append(term)
        return {"degree": self.degree, "terms": terms}

    @classmethod
    def from_json_dict(cls, obj: dict) -> TernaryForm:
        degree = int(obj["degree"])
        terms: dict[tuple[int, int, int], complex] = {}
        for term in obj["terms"]:
            exp = term["exp"]
            if len(exp) != 3 or any(int(e) != e or e < 0 for e in exp):
                raise ValueError(f"bad exponent triple {exp}")
            i, j, k = (int(e) for e in exp)
            if i + j + k != degree:
                raise ValueError(f"exponent triple {exp} does not sum to degree {degree}")
            c = complex(float(term.get("re", 0.0)), float(term.get("im", 0.0)))
            terms[(i, j, k)] = terms.get((i, j, k), 0.0) + c
        return cls.from_terms(degree, terms)

    def __repr__(self) -> str:
        nterms = int(np.count_nonzero(self._c))
        return f"TernaryForm(degree={self.degree}, terms={nterms})"


def _shrink(grid: np.ndarray, deg: int) -> np.ndarray:
    """Drop the last row/column: reinterpret a degree-deg grid at degree deg-1."""
    return grid[: deg, : deg].copy() if deg >= 1 else grid[:1, :1].copy()


# --- univariate root finding ------------------------------------------------


def univariate_roots(coeffs) -> np.ndarray:
    """Roots of a univariate polynomial given leading-first coefficients.

    Uses companion-matrix eigenvalues (numpy's balanced QR path).
    """
    coeffs = np.asarray(coeffs, dtype=np.complex128)
    if coeffs.ndim != 1 or coeffs.size == 0:
        raise ValueError("need a nonempty 1-d coefficient array")
    scale = float(np.max(np.abs(coeffs)))
    if scale == 0.0 or abs(coeffs[0]) <= 1e-14 * scale:
        raise DegenerateLeadingCoefficient("leading coefficient is numerically zero")
    if coeffs.size == 1:
        return np.empty(0, dtype=np.complex128)
    return _batched_roots(coeffs[None, :])[0]


def _batched_roots(rows: np.ndarray) -> np.ndarray:
    """Roots of a stack of same-degree polynomials, rows leading-first."""
    n, w = rows.shape
    d = w - 1
    if d == 0:
        return np.empty((n, 0), dtype=np.complex128)
    monic = rows / rows[:, :1]
    if d == 1:
        return -monic[:, 1:]
    comp = np.zeros((n, d, d), dtype=np.complex128)
    comp[:, 0, :] = -monic[:, 1:]
    idx = np.arange(d - 1)
    comp[:, idx + 1, idx] = 1.0
    return np.linalg.eigvals(comp)


@dataclass(frozen=True)
class HyperbolicityReport:
    """Sampled real-rootedness certificate (numerical evidence, not a proof)."""

    is_hyperbolic: bool
    is_strict: bool
    max_imag: float
    min_gap: float
    witness_direction: tuple[float, float]

    def to_json_dict(self) -> dict:
        return {
            "is_hyperbolic": self.is_hyperbolic,
            "is_strict": self.is_strict,
            "max_imag": self.max_imag,
            "min_gap": self.min_gap,
            "witness_direction": list(self.witness_direction),
        }


def check_hyperbolic(
    form: TernaryForm,
    n_dirs: int = DEFAULT_HYP_DIRS,
    tol: float = DEFAULT_HYP_TOL,
) -> HyperbolicityReport:
    """Sample directions and test real-rootedness of every restriction.

    Directions are n_dirs points evenly spaced on the half-circle plus n_dirs
    pseudo-random ones (fixed stream, so the certificate is deterministic).
    Root imaginary parts are normalized by (1 + |root|); hyperbolic means all
    stay below tol, strict additionally needs every pairwise root gap above
    tol.
    """
    if not form.is_real:
        raise NotReal("hyperbolicity is defined for real forms only")
    d = form.degree
    angles = np.pi * np.arange(n_dirs) / n_dirs
    rng = np.random.default_rng(_DIRECTION_SEED)
    angles = np.concatenate([angles, rng.uniform(0.0, np.pi, n_dirs)])
    dirs = np.stack([np.cos(angles), np.sin(angles)], axis=1)

    if d == 0:
        return HyperbolicityReport(True, True, 0.0, math.inf, (1.0, 0.0))

    rows = np.stack([form.restrict_direction(u, v) for (u, v) in dirs])
    roots = _batched_roots(rows)

    norm_imag = np.abs(roots.imag) / (1.0 + np.abs(roots))
    per_dir_imag = norm_imag.max(axis=1)
    max_imag = float(per_dir_imag.max())
    worst_dir = int(per_dir_imag.argmax())

    if d >= 2:
        diff = np.abs(roots[:, :, None] - roots[:, None, :])
        iu = np.triu_indices(d, k=1)
        per_dir_gap = diff[:, iu[0], iu[1]].min(axis=1)
        min_gap = float(per_dir_gap.min())
        tightest_dir = int(per_dir_gap.argmin())
    else:
        min_gap = math.inf
        tightest_dir = 0

    is_hyperbolic = max_imag < tol
    is_strict = is_hyperbolic and min_gap > tol
    witness = worst_dir if not is_hyperbolic else tightest_dir
    return HyperbolicityReport(
        is_hyperbolic=is_hyperbolic,
        is_strict=is_strict,
        max_imag=max_imag,
        min_gap=min_gap,
        witness_direction=(float(dirs[witness, 0]), float(dirs[witness, 1])),
    )
