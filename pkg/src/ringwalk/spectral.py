"""Exact spectral decomposition of unitary Cayley graph adjacency matrices.

Each local factor (n, m) contributes eigenvalues n-m (simple), -m
(multiplicity n/m - 1) and, when m > 1, 0 (multiplicity (n/m)(m-1)); a
product multiplies eigenvalues across factors.  The orthogonal projections
onto the eigenspaces are assembled as Kronecker products of per-factor
projections, with equal eigenvalue products merged by summing, so every
matrix returned is the true spectral idempotent of its eigenvalue.

All matrices are numpy object arrays of Fraction; nothing here is
approximate except the explicit float conversion helper.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

import numpy as np

from .cyclotomic import frac_to_str
from .graphs import DEFAULT_SIZE_CAP, _check_cap
from .rings import RingProduct


def frac_eye(n: int) -> np.ndarray:
    out = np.full((n, n), Fraction(0), dtype=object)
    for i in range(n):
        out[i, i] = Fraction(1)
    return out


def frac_ones(n: int) -> np.ndarray:
    return np.full((n, n), Fraction(1), dtype=object)


def frac_matrix_from_int(matrix) -> np.ndarray:
    return np.array(
        [[Fraction(int(x)) for x in row] for row in matrix], dtype=object
    )


def frac_matrix_to_float(matrix: np.ndarray) -> np.ndarray:
    return np.array(matrix, dtype=np.float64)


def rational_matrix_to_json(matrix: np.ndarray) -> list[list[str]]:
    return [[frac_to_str(x) for x in row] for row in matrix]


@dataclass(frozen=True)
class Spectrum:
    """Distinct integer eigenvalues with multiplicities, sorted descending."""

    entries: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        eigs = [e for e, _ in self.entries]
        if sorted(set(eigs), reverse=True) != eigs:
            raise ValueError("eigenvalues must be distinct and sorted descending")
        if any(m < 1 for _, m in self.entries):
            raise ValueError("multiplicities must be positive")

    @property
    def eigenvalues(self) -> tuple[int, ...]:
        return tuple(e for e, _ in self.entries)

    @property
    def total_multiplicity(self) -> int:
        return sum(m for _, m in self.entries)

    def to_json(self) -> list[dict]:
        return [{"eigenvalue": e, "multiplicity": m} for e, m in self.entries]


@dataclass(eq=False)
class SpectralDecomposition:
    """Spectrum plus the exact rational idempotent for each eigenvalue."""

    spectrum: Spectrum
    idempotents: tuple[np.ndarray, ...]

    @property
    def size(self) -> int:
        return self.idempotents[0].shape[0]

    def __iter__(self):
        return iter(zip(self.spectrum.entries, self.idempotents))


def _local_spectrum(size: int, ideal_size: int) -> list[tuple[int, int]]:
    q = size // ideal_size
    entries = [(size - ideal_size, 1), (-ideal_size, q - 1)]
    if ideal_size > 1:
        entries.append((0, q * (ideal_size - 1)))
    return entries


def spectrum_of(ring: RingProduct) -> Spectrum:
    """Distinct eigenvalues of the Cayley graph with multiplicities."""
    merged: dict[int, int] = {1: 1}
    for f in ring.factors:
        step: dict[int, int] = {}
        for eig, mult in merged.items():
            for local_eig, local_mult in _local_spectrum(f.size, f.ideal_size):
                key = eig * local_eig
                step[key] = step.get(key, 0) + mult * local_mult
        merged = step
    entries = tuple(sorted(merged.items(), key=lambda kv: -kv[0]))
    spec = Spectrum(entries)
    assert spec.total_multiplicity == ring.size
    return spec


def _local_idempotents(size: int, ideal_size: int) -> dict[int, np.ndarray]:
    n, m = size, ideal_size
    q = n // m
    top = frac_ones(n) * Fraction(1, n)
    out = {n - m: top}
    if m > 1:
        # projection onto vectors summing to zero inside every coset block
        out[0] = frac_eye(n) - np.kron(frac_eye(q), frac_ones(m)) * Fraction(1, m)
    out[-m] = frac_eye(n) - sum(out.values())
    return out


def idempotents_structured(
    ring: RingProduct, size_cap: int = DEFAULT_SIZE_CAP
) -> SpectralDecomposition:
    """Spectral idempotents assembled factor by factor via Kronecker products."""
    _check_cap(ring, size_cap)
    merged: dict[int, np.ndarray] = {1: np.full((1, 1), Fraction(1), dtype=object)}
    for f in ring.factors:
        step: dict[int, np.ndarray] = {}
        for eig, mat in merged.items():
            for local_eig, local_mat in _local_idempotents(f.size, f.ideal_size).items():
                key = eig * local_eig
                term = np.kron(mat, local_mat)
                step[key] = step[key] + term if key in step else term
        merged = step
    spectrum = spectrum_of(ring)
    idems = []
    for eig, mult in spectrum.entries:
        mat = merged.pop(eig)
        assert mat.trace() == mult
        mat.flags.writeable = False
        idems.append(mat)
    assert not merged
    return SpectralDecomposition(spectrum, tuple(idems))


def _matrix_powers(matrix_obj: np.ndarray, count: int) -> list[np.ndarray]:
    """matrix^0 .. matrix^(count-1) as object arrays of exact Python ints.

    Uses int64 matmul when a row-sum bound certifies no overflow.
    """
    n = matrix_obj.shape[0]
    powers = [np.array(np.eye(n, dtype=np.int64).tolist(), dtype=object)]
    if count == 1:
        return powers
    row_bound = max(1, max(int(sum(abs(int(x)) for x in row)) for row in matrix_obj))
    if row_bound ** (count - 1) < 2 ** 62:
        fast = np.array([[int(x) for x in row] for row in matrix_obj], dtype=np.int64)
        acc = np.eye(n, dtype=np.int64)
        for _ in range(count - 1):
            acc = acc @ fast
            powers.append(np.array(acc.tolist(), dtype=object))
    else:
        acc = powers[0]
        for _ in range(count - 1):
            acc = acc @ matrix_obj
            powers.append(acc)
    return powers


def verify_decomposition(dec: SpectralDecomposition, adjacency=None) -> bool:
    """Exact check of the three spectral identities (plus traces).

    Verifies E_r E_s = delta_rs E_r, sum E_r = I and, when the adjacency
    matrix is given, sum theta_r E_r = A, together with trace(E_r) equal to
    the stated multiplicity.  Works on denominator-cleared integer matrices
    so the check is exact and cheap.
    """
    n = dec.size
    den = 1
    for idem in dec.idempotents:
        for row in idem:
            for x in row:
                q = x.denominator
                den = den * q // gcd(den, q)
    scaled = []
    use_fast = den * den * n < 2 ** 62
    for idem in dec.idempotents:
        ints = [[int(x * den) for x in row] for row in idem]
        scaled.append(np.array(ints, dtype=np.int64 if use_fast else object))

    if use_fast:
        eye = den * np.eye(n, dtype=np.int64)
    else:
        eye = np.array(
            [[den * int(i == j) for j in range(n)] for i in range(n)], dtype=object
        )
    if not ((sum(scaled) == eye).all()):
        return False
    for (eig, mult), N in zip(dec.spectrum.entries, scaled):
        if N.trace() != den * mult:
            return False
    if adjacency is not None:
        recon = sum(eig * N for (eig, _), N in zip(dec.spectrum.entries, scaled))
        target = den * np.array(
            [[int(x) for x in row] for row in adjacency],
            dtype=np.int64 if use_fast else object,
        )
        if not (recon == target).all():
            return False
    for r, N_r in enumerate(scaled):
        for s, N_s in enumerate(scaled):
            product = N_r @ N_s
            expected = den * N_r if r == s else 0 * N_r
            if not (product == expected).all():
                return False
    return True


def idempotents_lagrange(matrix, spectrum: Spectrum) -> SpectralDecomposition:
    """Independent idempotent construction via Lagrange interpolation.

    E_r = prod_{s != r} (A - theta_s I) / (theta_r - theta_s), valid for any
    diagonalizable A whose distinct eigenvalues are exactly the given ones.
    Raises ValueError when the reconstruction checks reveal a wrong input
    spectrum.
    """
    a_obj = np.array([[int(x) for x in row] for row in matrix], dtype=object)
    n = a_obj.shape[0]
    eigs = spectrum.eigenvalues
    powers = _matrix_powers(a_obj, len(eigs))
    idems = []
    for r, theta_r in enumerate(eigs):
        poly = [1]
        denom = 1
        for s, theta_s in enumerate(eigs):
            if s == r:
                continue
            poly = [0] + poly
            for k in range(len(poly) - 1):
                poly[k] -= theta_s * poly[k + 1]
            denom *= theta_r - theta_s
        numer = sum(coef * powers[k] for k, coef in enumerate(poly))
        mat = numer * Fraction(1, denom)
        mat.flags.writeable = False
        idems.append(mat)

    ident = sum(idems)
    recon = sum(theta * E for theta, E in zip(eigs, idems))
    if not (ident == frac_eye(n)).all() or not (recon == frac_matrix_from_int(matrix)).all():
        raise ValueError("spectrum does not match the matrix")
    for (eig, mult), E in zip(spectrum.entries, idems):
        if E.trace() != mult:
            raise ValueError(
                f"stated multiplicity {mult} of eigenvalue {eig} is wrong"
            )
    return SpectralDecomposition(spectrum, tuple(idems))
