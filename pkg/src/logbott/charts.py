"""Chart-level analysis of logarithmic vector fields.

A field on an SNC chart is stored through its frame coefficients: for a
boundary coordinate z_i the stored polynomial a_i multiplies z_i d/dz_i,
for the remaining coordinates it multiplies d/dz_i directly.  The
analyzer extracts the vanishing ideal, the conormal Bott matrix of a
declared component, a nondegeneracy verdict, and the transverse boundary
weights.  Everything is chart-local; coordinate changes between charts
are the caller's business.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .poly import Poly, determinant

NONDEGENERATE = "nondegenerate"
DEGENERATE = "degenerate"
INDETERMINATE = "indeterminate"


def default_coords(dim: int) -> tuple[str, ...]:
    return tuple(f"z{i}" for i in range(1, dim + 1))


@dataclass(frozen=True)
class LogChartField:
    """A logarithmic vector field in one SNC chart.

    ``log_indices`` are the 1-based coordinates cutting the boundary
    divisor in this chart; ``coeffs[i-1]`` is the frame coefficient of
    coordinate i.
    """

    dim: int
    log_indices: frozenset[int]
    coeffs: tuple[Poly, ...]

    def __post_init__(self):
        object.__setattr__(self, "log_indices", frozenset(self.log_indices))
        object.__setattr__(self, "coeffs", tuple(self.coeffs))
        if self.dim < 1:
            raise ValueError("chart dimension must be positive")
        if len(self.coeffs) != self.dim:
            raise ValueError(f"need {self.dim} coefficient polynomials, got {len(self.coeffs)}")
        if not self.log_indices <= set(range(1, self.dim + 1)):
            raise ValueError(f"log indices {sorted(self.log_indices)} out of range")
        names = self.coeffs[0].vars
        if len(names) != self.dim:
            raise ValueError("coefficient polynomials must use one variable per coordinate")
        for p in self.coeffs:
            if p.vars != names:
                raise ValueError("all coefficients must share the chart variables")

    @property
    def coords(self) -> tuple[str, ...]:
        return self.coeffs[0].vars

    def coord_name(self, index: int) -> str:
        return self.coords[index - 1]

    def ordinary_components(self) -> list[Poly]:
        """Components in the plain coordinate frame: a_i z_i or a_i."""
        out = []
        for i, a in enumerate(self.coeffs, start=1):
            if i in self.log_indices:
                out.append(a * Poly.gen(self.coords, self.coord_name(i)))
            else:
                out.append(a)
        return out


@dataclass(frozen=True)
class ComponentChart:
    """A declared zero component Z = {normal coordinates = 0} in the chart."""

    normal_coords: tuple[int, ...]

    def __post_init__(self):
        idxs = tuple(sorted(set(int(i) for i in self.normal_coords)))
        if len(idxs) != len(self.normal_coords):
            raise ValueError("repeated normal coordinate")
        object.__setattr__(self, "normal_coords", idxs)

    def split(self, dim: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
        normal = self.normal_coords
        if not normal or normal[-1] > dim or normal[0] < 1:
            raise ValueError(f"normal coordinates {normal} out of range for dimension {dim}")
        tangent = tuple(i for i in range(1, dim + 1) if i not in normal)
        return tangent, normal


def zero_ideal(v: LogChartField) -> list[Poly]:
    """Generators of the vanishing ideal of the field in this chart."""
    return v.ordinary_components()


def bott_matrix(v: LogChartField, chart: ComponentChart) -> list[list[Poly]]:
    """Conormal action on the classes of the normal coordinates.

    Entry (b, c) is the y_c-derivative of the normal component w_b of the
    field, restricted to Z.  The transpose acts on the normal bundle.
    Requires the field to vanish on the declared Z, i.e. every normal
    component to lie in the ideal of the normal coordinates.
    """
    _, normal = chart.split(v.dim)
    normal_names = [v.coord_name(i) for i in normal]
    normal_positions = [i - 1 for i in normal]
    components = v.ordinary_components()
    rows = []
    for b in normal:
        w = components[b - 1]
        for mono in w.terms:
            if all(mono[pos] == 0 for pos in normal_positions):
                witness = Poly(v.coords, {mono: w.terms[mono]})
                raise ValueError(
                    f"field does not vanish on the declared component: component of "
                    f"{v.coord_name(b)} contains the transverse-free term {witness}"
                )
        rows.append([w.partial(name).subs_zero(normal_names) for name in normal_names])
    return rows


@dataclass(frozen=True)
class NondegeneracyVerdict:
    status: str
    det: Poly
    constant: Fraction | None = None
    samples: tuple[tuple[tuple[Fraction, ...], Fraction], ...] = ()

    def __str__(self):
        if self.status == NONDEGENERATE:
            return f"Nondegenerate (det = {self.constant})"
        if self.status == DEGENERATE:
            return "Degenerate (det identically 0)"
        zeros = sum(1 for _, value in self.samples if value == 0)
        return (
            f"Indeterminate: det = {self.det} is non-constant; sampled "
            f"{len(self.samples)} points, {zeros} with det = 0"
        )


def _lcg_rationals(seed: int, count: int) -> list[Fraction]:
    # Fixed-constant LCG so sampling grids are reproducible across platforms.
    state = (seed * 6364136223846793005 + 1442695040888963407) % (1 << 64)
    out = []
    for _ in range(count):
        state = (state * 6364136223846793005 + 1442695040888963407) % (1 << 64)
        num = (state >> 33) % 19 - 9
        state = (state * 6364136223846793005 + 1442695040888963407) % (1 << 64)
        den = (state >> 33) % 4 + 1
        out.append(Fraction(num, den))
    return out


def check_nondegenerate(
    matrix: Sequence[Sequence[Poly]], seed: int = 0, samples: int = 25
) -> NondegeneracyVerdict:
    """Decide pointwise invertibility of a Bott matrix along Z.

    Decides symbolically when the determinant restricts to a constant;
    otherwise evaluates it on a deterministic grid of rational points and
    reports the evidence without claiming a verdict.
    """
    det = determinant(matrix)
    if det.is_zero:
        return NondegeneracyVerdict(DEGENERATE, det)
    if det.is_constant():
        return NondegeneracyVerdict(NONDEGENERATE, det, constant=det.constant_term())
    active = [name for i, name in enumerate(det.vars) if any(m[i] for m in det.terms)]
    values = _lcg_rationals(seed, samples * len(active))
    evidence = []
    for s in range(samples):
        point = {name: values[s * len(active) + j] for j, name in enumerate(active)}
        value = det.eval(point)
        evidence.append((tuple(point[name] for name in active), value))
    return NondegeneracyVerdict(INDETERMINATE, det, samples=tuple(evidence))


def log_eigenvalues(v: LogChartField, chart: ComponentChart) -> list[tuple[int, Poly]]:
    """Transverse boundary weights: a_i restricted to Z, per boundary index.

    Each boundary coordinate must cut the declared component, i.e. belong
    to its normal coordinates.
    """
    _, normal = chart.split(v.dim)
    normal_set = set(normal)
    normal_names = [v.coord_name(i) for i in normal]
    out = []
    for i in sorted(v.log_indices):
        if i not in normal_set:
            raise ValueError(
                f"boundary coordinate {v.coord_name(i)} does not vanish on the "
                f"declared component"
            )
        out.append((i, v.coeffs[i - 1].subs_zero(normal_names)))
    return out
