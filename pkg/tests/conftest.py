"""Shared enumeration helpers and the acceptance pass/fail reporter."""

from __future__ import annotations

import numpy as np

from ringwalk.rings import LocalDescriptor, RingProduct, prime_power


def valid_descriptors(max_size: int) -> list[LocalDescriptor]:
    """Every admissible (size, ideal_size) local descriptor with size <= max_size."""
    out = []
    for q in range(2, max_size + 1):
        if prime_power(q) is None:
            continue
        m = 1
        while q * m <= max_size:
            out.append(LocalDescriptor(q * m, m))
            m *= q
    return sorted(out, key=lambda d: (d.size, d.ideal_size))


def enumerate_rings(max_size: int) -> list[RingProduct]:
    """All ring products with size <= max_size, factors in canonical order.

    Factor permutations only permute vertices, so one representative per
    multiset is exhaustive for the structural properties under test.
    """
    descs = valid_descriptors(max_size)
    out: list[RingProduct] = []

    def extend(prefix: list[LocalDescriptor], start: int, budget: int) -> None:
        for i in range(start, len(descs)):
            d = descs[i]
            if d.size > budget:
                continue
            seq = prefix + [d]
            out.append(RingProduct(tuple(seq)))
            extend(seq, i, budget // d.size)

    extend([], 0, max_size)
    return out


def float_grid_flags(dec, max_denominator: int = 60) -> dict:
    """Map pair (j, l) -> grid times 2*pi*k/N where revival shows in floats.

    A time is flagged for source j when |H_jj|^2 + |H_lj|^2 >= 1 - 1e-8
    while |H_jj| <= 1 - 1e-8 (revival with periodicity excluded).
    """
    from ringwalk.spectral import frac_matrix_to_float

    n = dec.size
    idems = [frac_matrix_to_float(idem) for idem in dec.idempotents]
    eigs = dec.spectrum.eigenvalues
    flagged: dict[tuple[int, int], list[tuple[int, int]]] = {}
    for denom in range(1, max_denominator + 1):
        for k in range(1, denom):
            t = 2.0 * np.pi * k / denom
            h = sum(np.exp(1j * e * t) * p for e, p in zip(eigs, idems))
            a2 = np.abs(h) ** 2
            stay2 = np.diag(a2)
            cond = (a2 + stay2[None, :] >= 1 - 1e-8) & (
                stay2[None, :] <= (1 - 1e-8) ** 2
            )
            for j in range(n):
                for l in range(j + 1, n):
                    if cond[l, j]:
                        flagged.setdefault((j, l), []).append((k, denom))
    return flagged


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_acceptance" in report.nodeid:
        name = report.nodeid.split("::")[-1]
        outcome = "PASS" if report.passed else "FAIL"
        print(f"\n[acceptance] {name}: {outcome}")
