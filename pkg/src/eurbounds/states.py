"""Density matrices, qubit observables and the two-qubit state families."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, NamedTuple

import numpy as np

from .exceptions import InvalidStateError, ParameterError
from .linalg import (
    HERMITIAN_TOL,
    I4,
    SIGMA_X,
    SIGMA_Y,
    SIGMA_Z,
    bloch_operator,
    hermitian_eigensystem,
    hermiticity_error,
    tensor_product,
)

TRACE_TOL = 1e-10
PSD_TOL = 1e-9
ANGLE_TOL = 1e-12
TWO_PI = 2.0 * math.pi

KET_0 = np.array([1, 0], dtype=complex)
KET_1 = np.array([0, 1], dtype=complex)


def ket(bits: str) -> np.ndarray:
    """Computational basis ket, e.g. ``ket("01")`` is |0>_A |1>_B."""
    out = np.array([1], dtype=complex)
    for b in bits:
        out = np.kron(out, KET_0 if b == "0" else KET_1)
    return out


def projector(psi) -> np.ndarray:
    psi = np.asarray(psi, dtype=complex)
    return np.outer(psi, psi.conj())


SINGLET = (ket("01") - ket("10")) / math.sqrt(2)
PHI_PLUS = (ket("00") + ket("11")) / math.sqrt(2)


class Violation(NamedTuple):
    kind: str  # "shape", "finite", "hermitian", "trace" or "positivity"
    message: str


@dataclass(frozen=True)
class Validity:
    violations: tuple[Violation, ...] = ()

    @property
    def valid(self) -> bool:
        return not self.violations

    @property
    def kinds(self) -> list[str]:
        return [v.kind for v in self.violations]

    def __bool__(self) -> bool:
        return self.valid


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """An immutable 2x2 or 4x4 matrix meant to be a quantum state.

    Construction does not validate; call :func:`validate` or :func:`as_state`.
    The spectrum is computed once and cached.
    """

    matrix: np.ndarray
    label: str | None = field(default=None)

    def __post_init__(self):
        m = np.array(self.matrix, dtype=complex)
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def __array__(self, dtype=None, copy=None):
        return self.matrix if dtype is None else self.matrix.astype(dtype)

    @cached_property
    def eigenvalues(self) -> np.ndarray:
        return hermitian_eigensystem(self.matrix).eigenvalues

    @cached_property
    def validity(self) -> Validity:
        m = self.matrix
        if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] not in (2, 4):
            return Validity((Violation("shape", f"expected 2x2 or 4x4, got {m.shape}"),))
        if not np.all(np.isfinite(m)):
            return Validity((Violation("finite", "matrix has NaN or Inf entries"),))
        found = []
        herr = hermiticity_error(m)
        if herr > HERMITIAN_TOL:
            found.append(Violation("hermitian", f"max |M - M†| = {herr:.3e}"))
        tr = np.trace(m)
        if abs(tr - 1.0) > TRACE_TOL:
            found.append(Violation("trace", f"trace = {tr:.12g}"))
        if herr <= HERMITIAN_TOL:
            low = self.eigenvalues[0]
            if low < -PSD_TOL:
                found.append(Violation("positivity", f"smallest eigenvalue {low:.3e} < 0"))
        return Validity(tuple(found))

    def __repr__(self):
        tag = f", label={self.label!r}" if self.label else ""
        return f"DensityMatrix(dim={self.dim}{tag})"


def validate(rho) -> Validity:
    """Check hermiticity, unit trace and positivity; never raises."""
    if not isinstance(rho, DensityMatrix):
        try:
            rho = DensityMatrix(rho)
        except (TypeError, ValueError) as exc:
            return Validity((Violation("shape", str(exc)),))
    return rho.validity


def as_state(rho, dim: int | None = None) -> DensityMatrix:
    """Coerce ``rho`` to a validated :class:`DensityMatrix` or raise InvalidStateError."""
    if not isinstance(rho, DensityMatrix):
        rho = DensityMatrix(rho)
    v = rho.validity
    if not v.valid:
        raise InvalidStateError("invalid density matrix: " + "; ".join(x.message for x in v.violations), v.violations)
    if dim is not None and rho.dim != dim:
        raise InvalidStateError(f"expected a {dim}x{dim} state, got {rho.dim}x{rho.dim}", ())
    return rho


@dataclass(frozen=True)
class Observable:
    """Projective qubit observable n·σ with n = (sinθ cosφ, sinθ sinφ, cosθ)."""

    theta: float
    phi: float = 0.0

    def __post_init__(self):
        th, ph = float(self.theta), float(self.phi)
        if not (math.isfinite(th) and math.isfinite(ph)):
            raise ParameterError("observable angles must be finite")
        if not (-ANGLE_TOL <= th <= math.pi + ANGLE_TOL):
            raise ParameterError(f"theta must lie in [0, pi], got {th}")
        if not (-ANGLE_TOL <= ph < TWO_PI):
            raise ParameterError(f"phi must lie in [0, 2pi), got {ph}")
        object.__setattr__(self, "theta", min(max(th, 0.0), math.pi))
        object.__setattr__(self, "phi", max(ph, 0.0))

    @classmethod
    def from_direction(cls, n) -> "Observable":
        n = np.asarray(n, dtype=float)
        norm = np.linalg.norm(n)
        if norm == 0 or not np.isfinite(norm):
            raise ParameterError("direction must be a nonzero finite vector")
        x, y, z = n / norm
        rxy = math.hypot(x, y)
        theta = math.atan2(rxy, z)  # acos(z) loses precision near the poles
        if rxy < 1e-15 or theta in (0.0, math.pi):
            phi = 0.0
        else:
            phi = math.atan2(y, x) % TWO_PI
            if phi >= TWO_PI:
                phi = 0.0
        return cls(theta, phi)

    @classmethod
    def axis(cls, name: str) -> "Observable":
        try:
            return _AXES[name.lower()]
        except KeyError:
            raise ParameterError(f"unknown axis {name!r}; use x, y or z") from None

    @property
    def direction(self) -> np.ndarray:
        st = math.sin(self.theta)
        return np.array([st * math.cos(self.phi), st * math.sin(self.phi), math.cos(self.theta)])

    @property
    def operator(self) -> np.ndarray:
        return bloch_operator(self.direction)

    def flipped(self) -> "Observable":
        return Observable.from_direction(-self.direction)


_AXES = {
    "z": Observable(0.0, 0.0),
    "x": Observable(math.pi / 2, 0.0),
    "y": Observable(math.pi / 2, math.pi / 2),
}
SIGMA_X_OBS = _AXES["x"]
SIGMA_Y_OBS = _AXES["y"]
SIGMA_Z_OBS = _AXES["z"]


def _unit_interval(name: str, value: float) -> float:
    value = float(value)
    if not (0.0 <= value <= 1.0):
        raise ParameterError(f"{name} must lie in [0, 1], got {value}")
    return value


def pure_entangled(alpha: float) -> DensityMatrix:
    """Projector onto √α|01> − √(1−α)|10>."""
    alpha = _unit_interval("alpha", alpha)
    psi = math.sqrt(alpha) * ket("01") - math.sqrt(1.0 - alpha) * ket("10")
    return DensityMatrix(projector(psi), label=f"pe(alpha={alpha:g})")


def werner(p: float) -> DensityMatrix:
    p = _unit_interval("p", p)
    m = (1.0 - p) / 4.0 * I4 + p * projector(SINGLET)
    return DensityMatrix(m, label=f"werner(p={p:g})")


def bell_diagonal(p: float) -> DensityMatrix:
    """p |Φ+><Φ+| + (1−p) |ψ−><ψ−|; the second component is taken to be the singlet."""
    p = _unit_interval("p", p)
    m = p * projector(PHI_PLUS) + (1.0 - p) * projector(SINGLET)
    return DensityMatrix(m, label=f"bd(p={p:g})")


def mixed_marginal_eigenvalues(cx: float, cy: float, cz: float) -> np.ndarray:
    return np.array(
        [
            (1 - cx - cy - cz) / 4,
            (1 - cx + cy + cz) / 4,
            (1 + cx - cy + cz) / 4,
            (1 + cx + cy - cz) / 4,
        ]
    )


def mixed_marginal(cx: float, cy: float, cz: float) -> DensityMatrix:
    """(I + cx σx⊗σx + cy σy⊗σy + cz σz⊗σz) / 4, both marginals I/2."""
    lam = mixed_marginal_eigenvalues(cx, cy, cz)
    for j, value in enumerate(lam):
        if not (-1e-12 <= value <= 1.0 + 1e-12):
            raise ParameterError(f"invalid (cx, cy, cz) = ({cx}, {cy}, {cz}): eigenvalue lambda_{j} = {value:.6g} not in [0, 1]")
    m = I4 + cx * np.kron(SIGMA_X, SIGMA_X) + cy * np.kron(SIGMA_Y, SIGMA_Y) + cz * np.kron(SIGMA_Z, SIGMA_Z)
    return DensityMatrix(m / 4.0, label=f"mm(cx={cx:g},cy={cy:g},cz={cz:g})")


def classical_state(p: float) -> DensityMatrix:
    p = _unit_interval("p", p)
    m = p * projector(ket("00")) + (1.0 - p) * projector(ket("11"))
    return DensityMatrix(m, label=f"classical(p={p:g})")


def product_copy(rho) -> DensityMatrix:
    """Two independent copies of a single-qubit state, ρ ⊗ ρ."""
    rho = as_state(rho, dim=2)
    return DensityMatrix(tensor_product(rho.matrix, rho.matrix), label="product_copy")


def random_state(seed: int, rank: int = 4) -> DensityMatrix:
    """Random two-qubit state of the given rank.

    A 4 x rank complex Gaussian matrix G (numpy PCG64 seeded with ``seed``) is
    turned into G G† / Tr(G G†), which is the reduced state of a random
    purification with a rank-dimensional ancilla.
    """
    if not (1 <= int(rank) <= 4):
        raise ParameterError(f"rank must be in [1, 4], got {rank}")
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((4, rank)) + 1j * rng.standard_normal((4, rank))
    m = g @ g.conj().T
    m = m / np.trace(m).real
    return DensityMatrix(0.5 * (m + m.conj().T), label=f"random(seed={seed},rank={rank})")


def random_direction(rng: np.random.Generator) -> np.ndarray:
    v = rng.standard_normal(3)
    return v / np.linalg.norm(v)


def random_observable(rng: np.random.Generator) -> Observable:
    return Observable.from_direction(random_direction(rng))


def random_mub_pair(rng: np.random.Generator) -> tuple[Observable, Observable]:
    """Two observables with orthogonal Bloch directions (mutually unbiased)."""
    u = random_direction(rng)
    w = rng.standard_normal(3)
    w -= (w @ u) * u
    w /= np.linalg.norm(w)
    return Observable.from_direction(u), Observable.from_direction(w)


# CLI vocabulary: family name -> (constructor, ordered parameter names)
FAMILIES: dict[str, tuple[Callable[..., DensityMatrix], tuple[str, ...]]] = {
    "werner": (werner, ("p",)),
    "pe": (pure_entangled, ("alpha",)),
    "bd": (bell_diagonal, ("p",)),
    "mm": (mixed_marginal, ("cx", "cy", "cz")),
    "classical": (classical_state, ("p",)),
}


def make_state(family: str, **params: float) -> DensityMatrix:
    try:
        ctor, names = FAMILIES[family]
    except KeyError:
        raise ParameterError(f"unknown state family {family!r}; choose from {', '.join(FAMILIES)}") from None
    missing = [n for n in names if params.get(n) is None]
    if missing:
        raise ParameterError(f"family {family!r} needs parameter(s): {', '.join(missing)}")
    return ctor(*(float(params[n]) for n in names))
