"""Transition matrices exp(itA) of the quantum walk, exact and float.

Because every adjacency eigenvalue here is an integer, exp(itA) at a time
t = 2*pi*a/b has entries in Q(zeta_b): the spectral identity gives
H(t) = sum_r zeta_b^(a*theta_r mod b) E_r with exact rational idempotents
E_r.  Float mode evaluates the same sum in complex doubles and exists as an
independent oracle and for arbitrary real times; it never feeds
certificates.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .cyclotomic import CycloElement, root_of_unity
from .graphs import DEFAULT_SIZE_CAP
from .rings import RingProduct
from .spectral import SpectralDecomposition, frac_matrix_to_float, idempotents_structured


@dataclass(frozen=True)
class ExactTime:
    """The time t = 2*pi * numerator / denominator, in lowest terms."""

    numerator: int
    denominator: int = 1

    def __post_init__(self) -> None:
        if self.denominator < 1:
            raise ValueError("denominator must be positive")
        frac = Fraction(self.numerator, self.denominator)
        object.__setattr__(self, "numerator", frac.numerator)
        object.__setattr__(self, "denominator", frac.denominator)

    @classmethod
    def of(cls, value) -> "ExactTime":
        frac = Fraction(value)
        return cls(frac.numerator, frac.denominator)

    @property
    def fraction(self) -> Fraction:
        return Fraction(self.numerator, self.denominator)

    def scaled(self, factor: int) -> "ExactTime":
        return ExactTime.of(self.fraction * factor)

    def __add__(self, other: "ExactTime") -> "ExactTime":
        return ExactTime.of(self.fraction + other.fraction)

    def to_float(self) -> float:
        return 2.0 * cmath.pi * self.numerator / self.denominator

    def render(self) -> str:
        return f"{self.numerator}/{self.denominator} of 2pi"


@dataclass(eq=False)
class TransitionMatrix:
    """exp(itA) with either exact cyclotomic or complex double entries."""

    mode: str  # "exact" | "float"
    time: ExactTime | float
    matrix: np.ndarray

    @property
    def size(self) -> int:
        return self.matrix.shape[0]

    def entry(self, j: int, l: int):
        return self.matrix[j, l]

    def column(self, j: int) -> np.ndarray:
        return self.matrix[:, j]

    def conjugate_transpose(self) -> np.ndarray:
        if self.mode == "exact":
            return np.array(
                [[e.conjugate() for e in row] for row in self.matrix.T], dtype=object
            )
        return self.matrix.conj().T

    def unitarity_defect(self) -> float:
        """Max |(H H*)_{jl} - delta_{jl}|; exactly 0.0 in exact mode."""
        product = self.matrix @ self.conjugate_transpose()
        n = self.size
        if self.mode == "exact":
            eye = np.array([[CycloElement(1, [int(i == j)]) for j in range(n)]
                            for i in range(n)], dtype=object)
            return 0.0 if (product == eye).all() else 1.0
        return float(np.abs(product - np.eye(n)).max())

    def to_json(self) -> dict:
        if self.mode == "exact":
            body = [[e.to_json() for e in row] for row in self.matrix]
            time: dict = {"exact": self.time.render()}
        else:
            body = [[[z.real, z.imag] for z in row] for row in self.matrix]
            time = {"float": float(self.time)}
        return {"mode": self.mode, "time": time, "matrix": body}


def transition_exact(dec: SpectralDecomposition, t: ExactTime) -> TransitionMatrix:
    """H(2*pi*a/b) as a matrix of cyclotomic elements of order b."""
    a, b = t.numerator, t.denominator
    total: np.ndarray | None = None
    for (theta, _), idem in dec:
        scalar = root_of_unity(b, a * theta)
        term = np.array(
            [[scalar * x for x in row] for row in idem], dtype=object
        )
        total = term if total is None else total + term
    return TransitionMatrix("exact", t, total)


def transition_float(dec: SpectralDecomposition, t: float) -> TransitionMatrix:
    """H(t) in complex doubles at an arbitrary real time."""
    n = dec.size
    total = np.zeros((n, n), dtype=np.complex128)
    for (theta, _), idem in dec:
        total += cmath.exp(1j * theta * t) * frac_matrix_to_float(idem)
    return TransitionMatrix("float", t, total)


def transition_tensor_factored(
    x_dec: SpectralDecomposition,
    y_ring: RingProduct,
    t: ExactTime,
    size_cap: int = DEFAULT_SIZE_CAP,
) -> TransitionMatrix:
    """H of a tensor product graph, factored through one side's spectrum.

    For the tensor of a graph X with spectral idempotents E_r and a ring
    graph Y this evaluates sum_r E_r (x) H_Y(theta_r * t), which equals the
    direct transition matrix of the product ring entrywise.
    """
    y_dec = idempotents_structured(y_ring, size_cap)
    total: np.ndarray | None = None
    for (theta, _), idem in x_dec:
        h_y = transition_exact(y_dec, t.scaled(theta))
        term = np.kron(idem, h_y.matrix)
        total = term if total is None else total + term
    return TransitionMatrix("exact", t, total)


def exact_column_norm(h: TransitionMatrix, j: int) -> CycloElement:
    """sum_l |H_{l,j}|^2, exactly; equals 1 by unitarity."""
    acc = CycloElement.zero()
    for e in h.column(j):
        acc = acc + e.abs_squared()
    return acc
