"""Numeric verification of polytube residues at isolated points.

For a local biholomorphism f = (f_1, ..., f_k) with f(0) = 0, the limit
of (2 pi i)^(-k) * integral over {|f_j| = eps_j} of g * df_1/f_1 ^ ... ^
df_k/f_k is g(0).  The tube is parametrized by solving f(y) = u with
damped Newton iteration for u on the product of circles; pulling the
integrand back along that parametrization leaves the plain average of
g(y(theta)) over the angular grid (each df_j/f_j pulls back to i dtheta_j
and the 1/(2 pi)^k normalization turns the integral into a mean).

The product trapezoid rule on the torus is spectrally accurate for the
smooth periodic pullback, and is exact for the identity map whenever g is
a polynomial of degree below the grid size.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Sequence

from .errors import TubeError
from .poly import Poly, as_fraction

_JACOBIAN_THRESHOLD = 1e-12


def _solve_linear(matrix: list[list[complex]], rhs: list[complex]) -> list[complex]:
    """Gaussian elimination with partial pivoting on a small complex system."""
    n = len(matrix)
    a = [row[:] + [rhs[i]] for i, row in enumerate(matrix)]
    for col in range(n):
        pivot = max(range(col, n), key=lambda r: abs(a[r][col]))
        if abs(a[pivot][col]) < 1e-300:
            raise TubeError("singular Jacobian encountered during Newton iteration")
        a[col], a[pivot] = a[pivot], a[col]
        inv = 1.0 / a[col][col]
        for r in range(col + 1, n):
            factor = a[r][col] * inv
            if factor:
                for c in range(col, n + 1):
                    a[r][c] -= factor * a[col][c]
    out = [0j] * n
    for r in range(n - 1, -1, -1):
        acc = a[r][n] - sum(a[r][c] * out[c] for c in range(r + 1, n))
        out[r] = acc / a[r][r]
    return out


def _compile(p: Poly) -> list[tuple[complex, tuple[int, ...]]]:
    return [(complex(c), m) for m, c in p.terms.items()]


def _eval_compiled(compiled, point: Sequence[complex]) -> complex:
    total = 0j
    for coeff, mono in compiled:
        term = coeff
        for idx, e in enumerate(mono):
            if e:
                term *= point[idx] ** e
        total += term
    return total


class LocalMap:
    """k polynomial maps C^k -> C forming a regular sequence at 0.

    The components must vanish at the origin and have numerically
    invertible Jacobian there (local biholomorphism onto its image).
    """

    def __init__(self, codim: int, components: Sequence[Poly]):
        self.codim = int(codim)
        self.components = tuple(components)
        if self.codim < 1:
            raise ValueError("codimension must be at least 1")
        if len(self.components) != self.codim:
            raise ValueError(f"need {self.codim} map components, got {len(self.components)}")
        names = self.components[0].vars
        if len(names) != self.codim:
            raise ValueError("map components must use one variable per factor")
        for f in self.components:
            if f.vars != names:
                raise ValueError("map components must share variables")
            if f.constant_term() != 0:
                raise ValueError(f"map component {f} does not vanish at the origin")
        self.vars = names
        self._compiled = [_compile(f) for f in self.components]
        self._jacobian = [
            [_compile(f.partial(name)) for name in names] for f in self.components
        ]
        det0 = _complex_det(self.jacobian_at([0j] * self.codim))
        if abs(det0) <= _JACOBIAN_THRESHOLD:
            raise ValueError(
                f"Jacobian determinant at the origin is {det0}; the map is not a "
                "local biholomorphism"
            )

    def value_at(self, point: Sequence[complex]) -> list[complex]:
        return [_eval_compiled(c, point) for c in self._compiled]

    def jacobian_at(self, point: Sequence[complex]) -> list[list[complex]]:
        return [
            [_eval_compiled(entry, point) for entry in row] for row in self._jacobian
        ]


def _complex_det(matrix: list[list[complex]]) -> complex:
    n = len(matrix)
    a = [row[:] for row in matrix]
    det = 1 + 0j
    for col in range(n):
        pivot = max(range(col, n), key=lambda r: abs(a[r][col]))
        if abs(a[pivot][col]) == 0:
            return 0j
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            det = -det
        det *= a[col][col]
        inv = 1.0 / a[col][col]
        for r in range(col + 1, n):
            factor = a[r][col] * inv
            if factor:
                for c in range(col, n):
                    a[r][c] -= factor * a[col][c]
    return det


@dataclass(frozen=True)
class QuadratureConfig:
    """Radii, grid size, Newton tolerance, and the Richardson ladder.

    ``radii`` holds one radius per factor.  ``richardson`` lists the
    scale factors applied to all radii for the extrapolation ladder; the
    radii are tied proportionally.
    """

    radii: tuple[float, ...]
    points: int = 64
    newton_tol: float = 1e-12
    richardson: tuple[float, ...] = (1.0, 0.5)
    max_newton: int = 50

    def __post_init__(self):
        object.__setattr__(self, "radii", tuple(float(r) for r in self.radii))
        object.__setattr__(self, "richardson", tuple(float(s) for s in self.richardson))
        if any(r <= 0 for r in self.radii):
            raise ValueError("radii must be positive")
        if self.points < 2 or self.points & (self.points - 1):
            raise ValueError(f"points per circle must be a power of 2, got {self.points}")
        if not self.richardson:
            raise ValueError("richardson ladder must be nonempty")

    @classmethod
    def for_map(cls, codim: int, eps: float | Sequence[float] = 0.1, **kwargs) -> "QuadratureConfig":
        if isinstance(eps, (int, float)):
            radii = (float(eps),) * codim
        else:
            radii = tuple(float(e) for e in eps)
        if len(radii) != codim:
            raise ValueError(f"need {codim} radii, got {len(radii)}")
        return cls(radii=radii, **kwargs)


def tube_point(
    local_map: LocalMap, u: Sequence[complex], cfg: QuadratureConfig
) -> list[complex]:
    """Solve f(y) = u by damped Newton iteration from the linearization seed."""
    u = list(u)
    j0 = local_map.jacobian_at([0j] * local_map.codim)
    y = _solve_linear(j0, u)

    def residual(point):
        value = local_map.value_at(point)
        res = [value[i] - u[i] for i in range(len(u))]
        return res, max(abs(r) for r in res)

    res, norm = residual(y)
    for _ in range(cfg.max_newton):
        if norm < cfg.newton_tol:
            return y
        step = _solve_linear(local_map.jacobian_at(y), res)
        t = 1.0
        while True:
            candidate = [y[i] - t * step[i] for i in range(len(y))]
            cand_res, cand_norm = residual(candidate)
            if cand_norm < norm or t <= 1 / 64:
                break
            t /= 2
        y, res, norm = candidate, cand_res, cand_norm
    if norm < cfg.newton_tol:
        return y
    raise TubeError(
        f"Newton iteration did not reach tolerance {cfg.newton_tol} within "
        f"{cfg.max_newton} steps (residual {norm:.3e}); reduce the radii"
    )


def polytube_residue(
    local_map: LocalMap, test_function: Poly, cfg: QuadratureConfig, scale: float = 1.0
) -> complex:
    """Mean of the test function over the parametrized polytube.

    Deterministic ordered accumulation over the full angular grid, so the
    result is bit-reproducible for a fixed grid size.
    """
    if test_function.vars != local_map.vars:
        raise ValueError("test function must use the map variables")
    k = local_map.codim
    n = cfg.points
    radii = [r * scale for r in cfg.radii]
    circles = [
        [radii[i] * cmath.exp(2j * cmath.pi * t / n) for t in range(n)] for i in range(k)
    ]
    g = _compile(test_function)
    total = 0j
    for angles in product(range(n), repeat=k):
        u = [circles[i][angles[i]] for i in range(k)]
        y = tube_point(local_map, u, cfg)
        total += _eval_compiled(g, y)
    return total / (n ** k)


def richardson_limit(values: Sequence[tuple[float, complex]]) -> complex:
    """Linear-in-eps extrapolation to 0 from the last two samples."""
    if len(values) < 2:
        raise ValueError("need at least two samples to extrapolate")
    eps = [e for e, _ in values]
    if len(set(eps)) != len(eps):
        raise ValueError(f"radii must be distinct, got {eps}")
    (e1, v1), (e2, v2) = values[-2], values[-1]
    return (v2 * e1 - v1 * e2) / (e1 - e2)


@dataclass(frozen=True)
class RichardsonResult:
    samples: tuple[tuple[float, complex], ...]
    raw: complex
    extrapolated: complex


def residue_with_extrapolation(
    local_map: LocalMap, test_function: Poly, cfg: QuadratureConfig
) -> RichardsonResult:
    """Residues along the Richardson ladder plus the extrapolated limit."""
    samples = tuple(
        (s, polytube_residue(local_map, test_function, cfg, scale=s))
        for s in cfg.richardson
    )
    raw = samples[-1][1]
    extrapolated = richardson_limit(samples) if len(samples) > 1 else raw
    return RichardsonResult(samples=samples, raw=raw, extrapolated=extrapolated)


def compose_linear(matrix: Sequence[Sequence[object]], local_map: LocalMap) -> LocalMap:
    """The map M . f for an exactly invertible rational matrix M."""
    rows = [[as_fraction(v) for v in row] for row in matrix]
    k = local_map.codim
    if len(rows) != k or any(len(r) != k for r in rows):
        raise ValueError(f"matrix must be {k}x{k}")
    if _fraction_det(rows) == 0:
        raise ValueError("matrix is not invertible")
    components = []
    for row in rows:
        acc = Poly.zero(local_map.vars)
        for coeff, f in zip(row, local_map.components):
            if coeff:
                acc = acc + f * coeff
        components.append(acc)
    return LocalMap(k, components)


def _fraction_det(rows: list[list[Fraction]]) -> Fraction:
    n = len(rows)
    if n == 1:
        return rows[0][0]
    total = Fraction(0)
    for j in range(n):
        if not rows[0][j]:
            continue
        minor = [[row[c] for c in range(n) if c != j] for row in rows[1:]]
        term = rows[0][j] * _fraction_det(minor)
        total += term if j % 2 == 0 else -term
    return total


def transformation_check(
    local_map: LocalMap,
    matrix: Sequence[Sequence[object]],
    test_function: Poly,
    cfg: QuadratureConfig,
) -> tuple[complex, complex]:
    """Residue computed with f and with M.f; the two must agree.

    Replacing the generators by M.f multiplies the residue current by
    det(M)^(-1) and the Jacobian form d(Mf) by det(M), so the pairing is
    unchanged; numerically both runs converge to the same value.
    """
    first = residue_with_extrapolation(local_map, test_function, cfg).extrapolated
    second = residue_with_extrapolation(
        compose_linear(matrix, local_map), test_function, cfg
    ).extrapolated
    return first, second
