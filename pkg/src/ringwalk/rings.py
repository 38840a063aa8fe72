"""Ring expressions and their decomposition into local factors.

A finite commutative ring splits into a product of finite local rings, and
the unitary Cayley graph of a local ring only depends on the pair
(ring size n, maximal ideal size m).  This module parses expressions like
``"Z12"``, ``"F9 x Z2"`` or ``"GR(16,4)"`` into an ordered product of such
(n, m) descriptors and exposes the ring-level quantities derived from them.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from functools import reduce


class RingExpressionError(ValueError):
    """Malformed ring expression or descriptor that is not a local ring."""


def factorize(n: int) -> dict[int, int]:
    """Prime factorization of n >= 2 as {prime: exponent}."""
    if n < 2:
        raise ValueError(f"cannot factorize {n}")
    factors: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            factors[d] = factors.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        factors[n] = factors.get(n, 0) + 1
    return factors

def prime_power(n: int) -> tuple[int, int] | None:
    """Return (p, k) with n = p**k, or None if n is not a prime power."""
    if n < 2:
        return None
    factors = factorize(n)
    if len(factors) != 1:
        return None
    ((p, k),) = factors.items()
    return p, k


@dataclass(frozen=True)
class LocalDescriptor:
    """A finite local ring reduced to (size, maximal ideal size).

    For a local ring with n elements and maximal ideal of size m the
    residue field has q = n/m elements, which forces q to be a prime power
    and m to be a power of q (the ideal filtration is a chain of residue
    field vector spaces).  m = 1 exactly for fields.  The optional label is
    display-only and never takes part in comparisons.
    """

    size: int
    ideal_size: int
    label: str | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        n, m = self.size, self.ideal_size
        if n < 2:
            raise RingExpressionError(f"ring size {n} is too small (need >= 2)")
        if m < 1 or n % m != 0:
            raise RingExpressionError(f"ideal size {m} does not divide ring size {n}")
        q = n // m
        if q < 2 or prime_power(q) is None:
            raise RingExpressionError(
                f"residue field size {q} of ({n},{m}) is not a prime power"
            )
        if not _is_power_of(m, q):
            raise RingExpressionError(
                f"({n},{m}) is not a local ring: ideal size {m} "
                f"is not a power of the residue field size {q}"
            )

    @property
    def residue_size(self) -> int:
        """Number of elements of the residue field, n/m."""
        return self.size // self.ideal_size

    @property
    def is_field(self) -> bool:
        return self.ideal_size == 1

    @property
    def unit_count(self) -> int:
        return self.size - self.ideal_size

    @property
    def display_name(self) -> str:
        if self.label is not None:
            return self.label
        if self.is_field:
            return f"F{self.size}"
        return f"GR({self.size},{self.ideal_size})"


def _is_power_of(m: int, q: int) -> bool:
    if m == 1:
        return True
    while m % q == 0:
        m //= q
    return m == 1


@dataclass(frozen=True)
class RingProduct:
    """Ordered product of local descriptors.

    The factor order is significant: it fixes the vertex indexing of the
    Cayley graph, so no normalization or sorting is ever applied.
    """

    factors: tuple[LocalDescriptor, ...]

    def __post_init__(self) -> None:
        if not self.factors:
            raise RingExpressionError("a ring needs at least one local factor")

    @property
    def size(self) -> int:
        return reduce(lambda acc, f: acc * f.size, self.factors, 1)

    @property
    def combined_ideal_size(self) -> int:
        return reduce(lambda acc, f: acc * f.ideal_size, self.factors, 1)

    def __len__(self) -> int:
        return len(self.factors)

    def __iter__(self):
        return iter(self.factors)


def unit_count(ring: RingProduct) -> int:
    """Number of units, i.e. the regularity degree of the Cayley graph."""
    return reduce(lambda acc, f: acc * f.unit_count, ring.factors, 1)


_QUOTIENT_ATOM = re.compile(r"^z2\[x\]/\(x\^2\)$")
_Z_ATOM = re.compile(r"^z(\d+)$")
_F_ATOM = re.compile(r"^f(\d+)$")
_GR_ATOM = re.compile(r"^gr\((\d+),(\d+)\)$")


def _split_atoms(expr: str) -> list[str]:
    """Split on 'x' separators that sit outside any brackets."""
    atoms: list[str] = []
    depth = 0
    current: list[str] = []
    for ch in expr:
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
            if depth < 0:
                raise RingExpressionError(f"unbalanced brackets in {expr!r}")
        if ch == "x" and depth == 0:
            atoms.append("".join(current))
            current = []
        else:
            current.append(ch)
    if depth != 0:
        raise RingExpressionError(f"unbalanced brackets in {expr!r}")
    atoms.append("".join(current))
    return atoms


def _parse_atom(atom: str) -> list[LocalDescriptor]:
    if not atom:
        raise RingExpressionError("empty factor in ring expression")
    if _QUOTIENT_ATOM.match(atom):
        return [LocalDescriptor(4, 2, label="Z2[x]/(x^2)")]
    if m := _Z_ATOM.match(atom):
        n = int(m.group(1))
        if n < 2:
            raise RingExpressionError(f"Z{n} has no unitary Cayley graph (need n >= 2)")
        return [
            LocalDescriptor(p ** k, p ** (k - 1), label=f"Z{p ** k}")
            for p, k in sorted(factorize(n).items())
        ]
    if m := _F_ATOM.match(atom):
        q = int(m.group(1))
        if prime_power(q) is None:
            raise RingExpressionError(f"F{q}: {q} is not a prime power")
        return [LocalDescriptor(q, 1, label=f"F{q}")]
    if m := _GR_ATOM.match(atom):
        n, ideal = int(m.group(1)), int(m.group(2))
        return [LocalDescriptor(n, ideal, label=f"GR({n},{ideal})")]
    raise RingExpressionError(f"unrecognized ring factor {atom!r}")


def parse_ring_expr(expr: str) -> RingProduct:
    """Parse a ring expression into a flattened ordered product.

    Grammar (case- and whitespace-insensitive)::

        ring := atom ('x' atom)*
        atom := 'Z'<n> | 'F'<q> | 'Z2[x]/(x^2)' | 'GR(' n ',' m ')'

    Z<n> is decomposed into one factor per prime power of n (ascending
    primes); F<q> requires a prime power q; GR(n,m) is a raw descriptor
    validated against the local ring constraints.
    """
    if not expr or not expr.strip():
        raise RingExpressionError("empty ring expression")
    cleaned = re.sub(r"\s+", "", expr).lower()
    descriptors: list[LocalDescriptor] = []
    for atom in _split_atoms(cleaned):
        descriptors.extend(_parse_atom(atom))
    return RingProduct(tuple(descriptors))


def render_ring(ring: RingProduct) -> str:
    """Canonical rendering; parse_ring_expr(render_ring(r)) == r."""
    return " x ".join(f.display_name for f in ring.factors)
