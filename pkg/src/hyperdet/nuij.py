"""Nuij smoothing operators and the one-parameter families they generate.

The family s -> N_s(p) deforms any hyperbolic p (at s=1) to a universal
strictly hyperbolic endpoint (at s=0) while staying hyperbolic throughout.
Two variants: the original composition of 2d shift operators along x and y,
and a randomized one driven by e = max(d, 2) random linear forms.

Per-monomial coefficient polynomials in s are recovered by interpolation at
2d+1 Chebyshev nodes (the family is polynomial of degree <= 2d in s) and
stored in the Chebyshev basis, which keeps evaluation and the analytic
s-derivative stable.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.polynomial import chebyshev as cheb

from .errors import EndpointNotStrict
from .ternary import TernaryForm, check_hyperbolic

# Linear-form rejection threshold: |a| + |b| below this is "too close to zero".
_FORM_MIN_SIZE = 0.1
_ENDPOINT_RESAMPLES = 10


@dataclass(frozen=True)
class LinearFormSet:
    """Linear forms a*x + b*y driving a randomized path."""

    forms: tuple[tuple[float, float], ...]

    def __post_init__(self):
        if not self.forms:
            raise ValueError("need at least one linear form")
        for a, b in self.forms:
            if abs(a) + abs(b) == 0.0:
                raise ValueError("linear form is identically zero")

    @property
    def e(self) -> int:
        return len(self.forms)

    @classmethod
    def sample(cls, d: int, rng: np.random.Generator) -> LinearFormSet:
        e = max(d, 2)
        forms = []
        while len(forms) < e:
            a, b = rng.uniform(-1.0, 1.0, size=2)
            if abs(a) + abs(b) >= _FORM_MIN_SIZE:
                forms.append((float(a), float(b)))
        return cls(tuple(forms))

    def to_json_dict(self) -> dict:
        return {"forms": [[a, b] for a, b in self.forms]}

    @classmethod
    def from_json_dict(cls, obj: dict) -> LinearFormSet:
        return cls(tuple((float(a), float(b)) for a, b in obj["forms"]))


@dataclass(frozen=True)
class PathKind:
    """Original (x/y shift operators) or randomized (given linear forms)."""

    variant: str
    forms: LinearFormSet | None = None

    def __post_init__(self):
        if self.variant not in ("original", "randomized"):
            raise ValueError(f"unknown path variant {self.variant!r}")
        if self.variant == "randomized" and self.forms is None:
            raise ValueError("randomized path needs a LinearFormSet")
        if self.variant == "original" and self.forms is not None:
            raise ValueError("original path takes no linear forms")

    @classmethod
    def original(cls) -> PathKind:
        return cls("original")

    @classmethod
    def randomized(cls, forms: LinearFormSet) -> PathKind:
        return cls("randomized", forms)

    @classmethod
    def randomized_sampled(cls, d: int, seed: int) -> PathKind:
        """Sample forms, resampling until the universal endpoint certifies strict."""
        for attempt in range(_ENDPOINT_RESAMPLES):
            rng = np.random.default_rng([seed, d, attempt, 0x4E75696A])
            kind = cls("randomized", LinearFormSet.sample(d, rng))
            try:
                fixed_endpoint(d, kind)
            except EndpointNotStrict:
                continue
            return kind
        raise EndpointNotStrict(
            f"no strict randomized endpoint after {_ENDPOINT_RESAMPLES} form samples"
        )


def apply_T(form: TernaryForm, linear: tuple[float, float], s: complex) -> TernaryForm:
    """p -> p + s * (a*x + b*y) * dp/dt."""
    a, b = linear
    d = form.degree
    c = form.grid
    jj, kk = np.indices(c.shape)
    g = c * np.clip(d - jj - kk, 0, None)  # dp/dt, kept on the degree-d grid
    out = np.array(c)
    s = complex(s)
    if a != 0:
        out[1:, :] += (s * a) * g[:-1, :]
    if b != 0:
        out[:, 1:] += (s * b) * g[:, :-1]
    return TernaryForm(d, out)


def apply_G(form: TernaryForm, s: complex) -> TernaryForm:
    """p(t, x, y) -> p(t, s*x, s*y)."""
    d = form.degree
    jj, kk = np.indices(form.grid.shape)
    powers = np.where(jj + kk <= d, complex(s) ** np.minimum(jj + kk, d), 0.0)
    return TernaryForm(d, form.grid * powers)


def _factor_list(degree: int, kind: PathKind) -> list[tuple[float, float]]:
    """Operator factors left-to-right; the rightmost factor is applied first."""
    if kind.variant == "original":
        return [(1.0, 0.0)] * degree + [(0.0, 1.0)] * degree
    return list(kind.forms.forms)


def apply_F(form: TernaryForm, s: complex, kind: PathKind) -> TernaryForm:
    """Composition of shift operators for either path variant."""
    out = form
    for linear in reversed(_factor_list(form.degree, kind)):
        out = apply_T(out, linear, s)
    return out


def expand_F_randomized(form: TernaryForm, s: complex, forms: LinearFormSet) -> TernaryForm:
    """Closed-form expansion: sum over k of s^k * sigma_k(forms) * d^k p / dt^k.

    sigma_k is the k-th elementary symmetric polynomial in the linear forms
    (a homogeneous (x, y)-form of degree k).  Agrees with the operator
    composition to machine precision.
    """
    d = form.degree
    # sigmas[k][a] = coefficient of x^a y^(k-a) in sigma_k
    sigmas = [np.array([1.0 + 0j])]
    for a, b in forms.forms:
        new = [np.array([1.0 + 0j])]
        for k in range(1, len(sigmas) + 1):
            grown = np.zeros(k + 1, dtype=np.complex128)
            if k < len(sigmas):
                grown += sigmas[k]
            lower = sigmas[k - 1]
            grown[1 : k + 1] += a * lower  # times a*x
            grown[:k] += b * lower  # times b*y
            new.append(grown)
        sigmas = new

    s = complex(s)
    out = np.zeros((d + 1, d + 1), dtype=np.complex128)
    for k in range(0, min(forms.e, d) + 1):
        dk = form.diff_t(k).grid  # degree d-k grid
        rows = dk.shape[0]
        weight = (s**k) * sigmas[k]
        for a in range(k + 1):
            coeff = weight[a]
            if coeff == 0:
                continue
            b = k - a
            out[a : a + rows, b : b + rows] += coeff * dk
    return TernaryForm(d, out)


def family_value(base: TernaryForm, s: complex, kind: PathKind) -> TernaryForm:
    """Direct evaluation N_s(p) = F_{1-s}(G_s(p))."""
    return apply_F(apply_G(base, s), 1.0 - complex(s), kind)


def fixed_endpoint(d: int, kind: PathKind) -> TernaryForm:
    """The universal endpoint F_1(t^d): independent of the deformed polynomial.

    Certifies strict hyperbolicity numerically; a failed certificate (possible
    for a degenerate randomized form set) raises EndpointNotStrict.
    """
    if d < 1:
        raise ValueError("d must be >= 1")
    out = apply_F(TernaryForm.t_power(d), 1.0, kind).real_part(rel_tol=1e-12)
    report = check_hyperbolic(out)
    if not report.is_strict:
        raise EndpointNotStrict(
            f"endpoint certificate failed (max_imag={report.max_imag:.2e}, "
            f"min_gap={report.min_gap:.2e})"
        )
    return out


class NuijFamily:
    """Precomputed coefficient polynomials in s for one deformation family."""

    __slots__ = ("base", "kind", "d", "_cheb", "_dcheb")

    def __init__(self, base: TernaryForm, kind: PathKind):
        self.base = base
        self.kind = kind
        d = base.degree
        self.d = d
        n_nodes = 2 * d + 1
        # Chebyshev nodes for u in (-1, 1); s = (u + 1) / 2
        u = np.cos(np.pi * (2 * np.arange(n_nodes) + 1) / (2 * n_nodes))
        s_nodes = (u + 1.0) / 2.0
        values = np.stack(
            [family_value(base, s, kind).vector() for s in s_nodes]
        )  # (n_nodes, n_monomials)
        self._cheb = cheb.chebfit(u, values, deg=n_nodes - 1)
        # d/ds = 2 d/du
        self._dcheb = cheb.chebder(self._cheb, m=1, scl=2.0, axis=0)

    def at(self, s: complex) -> TernaryForm:
        """The family member at parameter s (complex s allowed)."""
        u = 2.0 * complex(s) - 1.0
        return TernaryForm.from_vector(self.d, cheb.chebval(u, self._cheb))

    def s_derivative(self, s: complex) -> TernaryForm:
        """Coefficient-wise derivative d N_s(p) / ds at s."""
        u = 2.0 * complex(s) - 1.0
        return TernaryForm.from_vector(self.d, cheb.chebval(u, self._dcheb))

    def s_degree_profile(self, rel_tol: float = 1e-10) -> int:
        """Observed degree in s across all coefficient polynomials."""
        power = np.stack(
            [cheb.cheb2poly(self._cheb[:, i]) for i in range(self._cheb.shape[1])],
            axis=1,
        )
        # rescale from u = 2s - 1 back to s: poly in u -> poly in s
        n = power.shape[0]
        comp = np.zeros_like(power)
        # substitute u = 2s - 1 via Horner on coefficient rows
        for row in power[::-1]:
            comp = _poly_shift_scale(comp, row)
        scale = float(np.max(np.abs(comp))) if comp.size else 0.0
        if scale == 0.0:
            return 0
        mags = np.max(np.abs(comp), axis=1)
        above = np.nonzero(mags > rel_tol * scale)[0]
        return int(above[-1]) if above.size else 0

    def __repr__(self) -> str:
        return f"NuijFamily(d={self.d}, kind={self.kind.variant})"


def _poly_shift_scale(acc: np.ndarray, row: np.ndarray) -> np.ndarray:
    """One Horner step of substituting u = 2s - 1: acc <- acc*(2s-1) + row."""
    out = np.zeros_like(acc)
    out[1:] += 2.0 * acc[:-1]
    out -= acc
    out[0] += row
    return out
