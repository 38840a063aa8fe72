"""Unitary Cayley graphs of ring products as explicit adjacency matrices.

Vertices are indexed mixed-radix over the factors (factor 0 most
significant).  Inside a local factor with n elements and ideal size m the
cosets form consecutive blocks of m vertices: local index v belongs to
coset v // m at offset v % m.  Two vertices are adjacent exactly when their
coset indices differ in every factor, which makes the adjacency matrix the
Kronecker product of complete-multipartite factor matrices.
"""

from __future__ import annotations

import io
from dataclasses import dataclass

import numpy as np

from .rings import RingProduct, prime_power, unit_count

DEFAULT_SIZE_CAP = 4096


class SizeCapExceeded(RuntimeError):
    """Ring too large for dense materialization."""


def _check_cap(ring: RingProduct, size_cap: int) -> None:
    if ring.size > size_cap:
        raise SizeCapExceeded(
            f"ring has {ring.size} vertices, above the cap of {size_cap}"
        )


@dataclass(frozen=True)
class VertexIndex:
    """A vertex as a flat index plus its per-factor (coset, offset) pairs."""

    flat: int
    per_factor: tuple[tuple[int, int], ...]

    @classmethod
    def from_flat(cls, ring: RingProduct, flat: int) -> "VertexIndex":
        if not 0 <= flat < ring.size:
            raise IndexError(f"vertex {flat} out of range for |R| = {ring.size}")
        coords = []
        rest = flat
        for f in reversed(ring.factors):
            local = rest % f.size
            rest //= f.size
            coords.append((local // f.ideal_size, local % f.ideal_size))
        return cls(flat, tuple(reversed(coords)))


def _coset_indices(ring: RingProduct, flat: int) -> list[int]:
    cosets = []
    rest = flat
    for f in reversed(ring.factors):
        cosets.append((rest % f.size) // f.ideal_size)
        rest //= f.size
    cosets.reverse()
    return cosets


def is_adjacent(ring: RingProduct, u: int, v: int) -> bool:
    """True iff u and v lie in different cosets in every factor."""
    for w in (u, v):
        if not 0 <= w < ring.size:
            raise IndexError(f"vertex {w} out of range for |R| = {ring.size}")
    return all(a != b for a, b in zip(_coset_indices(ring, u), _coset_indices(ring, v)))


def _local_adjacency(size: int, ideal_size: int) -> np.ndarray:
    q = size // ideal_size
    blocks = np.ones((q, q), dtype=np.int8) - np.eye(q, dtype=np.int8)
    return np.kron(blocks, np.ones((ideal_size, ideal_size), dtype=np.int8))


def adjacency_matrix(ring: RingProduct, size_cap: int = DEFAULT_SIZE_CAP) -> np.ndarray:
    """Dense 0/1 adjacency matrix in mixed-radix vertex order."""
    _check_cap(ring, size_cap)
    out = np.ones((1, 1), dtype=np.int8)
    for f in ring.factors:
        out = np.kron(out, _local_adjacency(f.size, f.ideal_size))
    return out


class UnitaryCayleyGraph:
    """A ring product together with its (lazily materialized) graph data."""

    def __init__(self, ring: RingProduct, size_cap: int = DEFAULT_SIZE_CAP) -> None:
        self.ring = ring
        self.size_cap = size_cap
        self._adjacency: np.ndarray | None = None
        self._decomposition = None

    @property
    def vertex_count(self) -> int:
        return self.ring.size

    @property
    def degree(self) -> int:
        return unit_count(self.ring)

    def adjacency(self) -> np.ndarray:
        if self._adjacency is None:
            self._adjacency = adjacency_matrix(self.ring, self.size_cap)
            self._adjacency.flags.writeable = False
        return self._adjacency

    def decomposition(self):
        if self._decomposition is None:
            from .spectral import idempotents_structured

            self._decomposition = idempotents_structured(self.ring, self.size_cap)
        return self._decomposition

    def is_adjacent(self, u: int, v: int) -> bool:
        return is_adjacent(self.ring, u, v)


# ---------------------------------------------------------------------------
# vertex labelings for Z_n style rings


def element_vertex(ring: RingProduct, element: int) -> int:
    """Flat vertex index of a residue of Z_n under the CRT decomposition.

    Only defined when every factor is a Z_{p^k} style descriptor
    (size p^k, ideal p^(k-1)) with pairwise distinct primes, i.e. the ring
    was parsed from a single Z<n> atom.
    """
    primes = set()
    locals_: list[int] = []
    for f in ring.factors:
        q = f.residue_size
        pp = prime_power(f.size)
        if pp is None or q != pp[0]:
            raise ValueError(f"factor ({f.size},{f.ideal_size}) is not Z_(p^k) shaped")
        p = pp[0]
        if p in primes:
            raise ValueError("factors do not come from a squarefree-by-prime CRT split")
        primes.add(p)
        r = element % f.size
        locals_.append((r % p) * f.ideal_size + r // p)
    flat = 0
    for f, local in zip(ring.factors, locals_):
        flat = flat * f.size + local
    return flat


def crt_vertex_map(ring: RingProduct) -> list[int]:
    """perm[x] = flat index of ring element x, for Z_n style rings."""
    return [element_vertex(ring, x) for x in range(ring.size)]


# ---------------------------------------------------------------------------
# matrix export formats


def adjacency_to_json_rows(matrix: np.ndarray) -> list[list[int]]:
    return [[int(x) for x in row] for row in matrix]


def adjacency_to_csv(matrix: np.ndarray) -> str:
    buf = io.StringIO()
    for row in matrix:
        buf.write(",".join(str(int(x)) for x in row))
        buf.write("\n")
    return buf.getvalue()


def adjacency_to_matrix_market(matrix: np.ndarray) -> str:
    """MatrixMarket coordinate format, 1-based indices."""
    n = matrix.shape[0]
    entries = [(i + 1, j + 1) for i in range(n) for j in range(n) if matrix[i, j]]
    buf = io.StringIO()
    buf.write("%%MatrixMarket matrix coordinate pattern general\n")
    buf.write(f"{n} {n} {len(entries)}\n")
    for i, j in entries:
        buf.write(f"{i} {j}\n")
    return buf.getvalue()
