import dataclasses
from fractions import Fraction

import pytest

from ringwalk.cyclotomic import CycloElement, root_of_unity
from ringwalk.graphs import UnitaryCayleyGraph, crt_vertex_map, element_vertex
from ringwalk.rings import parse_ring_expr
from ringwalk.spectral import idempotents_structured
from ringwalk.revival import (
    REASON_CROSS_DIVISIBLE,
    REASON_NOT_COSPECTRAL,
    REASON_SAME_VERTEX,
    certificate_admits_time_in_pi_over_q,
    check_certificate,
    decide_qfr,
    search_all_pairs,
    sign_vector,
)
from ringwalk.walk import ExactTime

from conftest import enumerate_rings, float_grid_flags


def ring(expr):
    return parse_ring_expr(expr)


def decomposition(expr):
    return idempotents_structured(ring(expr))


class TestSignVector:
    def test_hexagon_pair(self):
        sv = sign_vector(decomposition("Z6"), 0, 3)
        assert sv.cospectral
        assert sv.eigenvalues == (2, 1, -1, -2)
        assert sv.signs == (1, -1, 1, -1)
        plus, minus = sv.sign_classes()
        assert plus == [2, -1] and minus == [1, -2]

    def test_triangle_has_no_cospectral_pair(self):
        dec = decomposition("F3")
        for j in range(3):
            for l in range(j + 1, 3):
                assert not sign_vector(dec, j, l).cospectral

    def test_four_cycle_antipodal_pair(self):
        sv = sign_vector(decomposition("Z4"), 0, 1)
        assert sv.cospectral
        assert sv.eigenvalues == (2, 0, -2)
        assert sv.signs == (1, -1, 1)

    def test_needs_distinct_vertices(self):
        with pytest.raises(ValueError):
            sign_vector(decomposition("Z4"), 1, 1)


class TestDecide:
    def test_hexagon_certificate(self):
        decision = decide_qfr(decomposition("Z6"), 0, 3)
        assert decision.is_revival
        cert = decision.certificate
        assert cert.g == 3 and cert.c == 1
        assert cert.minimal_time == ExactTime(1, 3)
        assert cert.alpha == Fraction(-1, 2)
        assert cert.beta == (root_of_unity(3, 2) - root_of_unity(3, 1)) * Fraction(1, 2)
        assert cert.kind == "QFR"

    def test_four_cycle_is_perfect_transfer(self):
        decision = decide_qfr(decomposition("Z4"), 0, 1)
        cert = decision.certificate
        assert cert.g == 4 and cert.c == 2
        assert cert.minimal_time == ExactTime(1, 4)
        assert cert.alpha == 0 and cert.alpha.is_zero
        assert cert.beta == -1
        assert cert.kind == "PST"

    def test_four_cycle_adjacent_pair_fails(self):
        decision = decide_qfr(decomposition("Z4"), 0, 2)
        assert not decision.is_revival
        assert decision.reason == REASON_NOT_COSPECTRAL

    @pytest.mark.parametrize("q", [3, 5, 7, 9])
    def test_odd_field_times_k2(self, q):
        dec = idempotents_structured(ring(f"F{q} x Z2"))
        decision = decide_qfr(dec, 0, 1)
        cert = decision.certificate
        assert cert.g == q
        assert cert.c == (q - 2) % q
        assert cert.minimal_time == ExactTime(1, q)
        cos = (root_of_unity(q, 1) + root_of_unity(q, q - 1)) * Fraction(1, 2)
        assert cert.alpha == cos
        assert cert.kind == "QFR"

    def test_k2_has_a_time_continuum(self):
        decision = decide_qfr(decomposition("Z2"), 0, 1)
        cert = decision.certificate
        assert cert.g == 0 and cert.c == 2
        assert cert.minimal_time == ExactTime(1, 4)  # pi/2
        assert cert.kind == "PST"
        assert "every real t" in cert.time_set

    def test_same_vertex(self):
        decision = decide_qfr(decomposition("Z4"), 2, 2)
        assert decision.reason == REASON_SAME_VERTEX

    def test_cross_difference_divisible(self):
        # the (4,2)-style pair inside F3 x Z4 collapses: g = 2 divides c = 2
        dec = idempotents_structured(ring("F3 x Z4"))
        decision = decide_qfr(dec, 0, 1)
        assert not decision.is_revival
        assert decision.reason == REASON_CROSS_DIVISIBLE

    def test_matched_pairs_of_the_disconnected_square(self):
        dec = idempotents_structured(ring("Z2 x Z2"))
        matched = decide_qfr(dec, 0, 3)
        assert matched.is_revival and matched.certificate.g == 0
        assert not decide_qfr(dec, 0, 1).is_revival
        assert not decide_qfr(dec, 0, 2).is_revival


class TestCertificateCheck:
    @pytest.mark.parametrize(
        "expr,pair",
        [("Z6", (0, 3)), ("Z4", (0, 1)), ("Z2", (0, 1)), ("F5 x Z2", (0, 1)),
         ("Z2 x Z2", (0, 3)), ("F4 x Z2", (0, 1))],
    )
    def test_genuine_certificates_verify(self, expr, pair):
        graph = UnitaryCayleyGraph(ring(expr))
        decision = decide_qfr(graph.decomposition(), *pair)
        assert decision.is_revival
        assert check_certificate(graph, decision)

    def test_tampered_beta_fails(self):
        graph = UnitaryCayleyGraph(ring("Z6"))
        decision = decide_qfr(graph.decomposition(), 0, 3)
        bad_cert = dataclasses.replace(
            decision.certificate, beta=CycloElement.zero(), alpha=CycloElement.one()
        )
        bad = dataclasses.replace(decision, certificate=bad_cert)
        assert not check_certificate(graph, bad)

    def test_tampered_time_fails(self):
        graph = UnitaryCayleyGraph(ring("Z6"))
        decision = decide_qfr(graph.decomposition(), 0, 3)
        bad_cert = dataclasses.replace(decision.certificate, minimal_time=ExactTime(1, 5))
        bad = dataclasses.replace(decision, certificate=bad_cert)
        assert not check_certificate(graph, bad)

    def test_rejects_none_decisions(self):
        graph = UnitaryCayleyGraph(ring("Z4"))
        decision = decide_qfr(graph.decomposition(), 0, 2)
        with pytest.raises(ValueError):
            check_certificate(graph, decision)


class TestAllPairs:
    @pytest.mark.parametrize("expr", ["Z8", "Z16", "Z18", "Z24"])
    def test_rings_with_no_revival(self, expr):
        assert not any(d.is_revival for d in search_all_pairs(ring(expr)))

    @pytest.mark.parametrize("expr", ["Z2", "Z4", "Z6", "Z10", "Z14"])
    def test_rings_with_revival(self, expr):
        assert any(d.is_revival for d in search_all_pairs(ring(expr)))

    def test_hexagon_revives_only_on_antipodes(self):
        perm = crt_vertex_map(ring("Z6"))
        revived = {
            tuple(sorted(d.pair)) for d in search_all_pairs(ring("Z6")) if d.is_revival
        }
        antipodes = {
            tuple(sorted((perm[a], perm[(a + 3) % 6]))) for a in range(6)
        }
        assert revived == antipodes

    def test_scan_order_is_lexicographic(self):
        pairs = [d.pair for d in search_all_pairs(ring("Z6"))]
        assert pairs == [(j, l) for j in range(6) for l in range(j + 1, 6)]


class TestStructuralProperties:
    def test_direction_symmetry(self):
        for r in enumerate_rings(12):
            dec = idempotents_structured(r)
            for j in range(r.size):
                for l in range(j + 1, r.size):
                    fwd = decide_qfr(dec, j, l)
                    back = decide_qfr(dec, l, j)
                    assert fwd.verdict == back.verdict
                    assert fwd.reason == back.reason
                    if fwd.is_revival:
                        assert fwd.certificate.minimal_time == back.certificate.minimal_time
                        assert fwd.certificate.alpha == back.certificate.alpha
                        assert fwd.certificate.beta == back.certificate.beta

    def test_alpha_over_beta_is_purely_imaginary(self):
        for r in enumerate_rings(16):
            for decision in search_all_pairs(r):
                if not decision.is_revival:
                    continue
                cert = decision.certificate
                balance = (
                    cert.alpha * cert.beta.conjugate()
                    + cert.alpha.conjugate() * cert.beta
                )
                assert balance.is_zero

    def test_alpha_beta_norm_and_kind(self):
        for r in enumerate_rings(16):
            for decision in search_all_pairs(r):
                if not decision.is_revival:
                    continue
                cert = decision.certificate
                assert cert.alpha.abs_squared() + cert.beta.abs_squared() == 1
                assert not cert.beta.is_zero
                assert (cert.kind == "PST") == cert.alpha.is_zero

    def test_every_certificate_verifies(self):
        for r in enumerate_rings(16):
            graph = UnitaryCayleyGraph(r)
            for decision in search_all_pairs(r):
                if decision.is_revival:
                    assert check_certificate(graph, decision), (r, decision.pair)

    def test_vertex_transitivity_of_decision_multisets(self):
        for r in enumerate_rings(12):
            dec = idempotents_structured(r)
            summaries = []
            for base in range(r.size):
                rows = []
                for other in range(r.size):
                    if other == base:
                        continue
                    d = decide_qfr(dec, base, other)
                    key = (
                        d.verdict,
                        d.reason,
                        d.certificate.minimal_time if d.certificate else None,
                        d.certificate.kind if d.certificate else None,
                    )
                    rows.append(key)
                summaries.append(sorted(rows, key=repr))
            assert all(s == summaries[0] for s in summaries[1:])


class TestFloatGridCompleteness:
    def test_detector_agrees_with_dense_search(self):
        """Grid revival sightings and exact verdicts coincide for |R| <= 12."""
        for r in enumerate_rings(12):
            dec = idempotents_structured(r)
            flags = float_grid_flags(dec)
            for j in range(r.size):
                for l in range(j + 1, r.size):
                    decision = decide_qfr(dec, j, l)
                    seen = flags.get((j, l), [])
                    if decision.is_revival:
                        cert = decision.certificate
                        assert seen, (r, j, l)
                        for k, denom in seen:
                            assert _grid_time_certified(cert, k, denom)
                    else:
                        assert not seen, (r, j, l, seen)


def _grid_time_certified(cert, k, denom):
    """Is the grid time 2*pi*k/denom inside the certified time set?"""
    frac = Fraction(k, denom)
    if cert.g > 0:
        scaled = frac * cert.g
        if scaled.denominator != 1:
            return False
        return (scaled.numerator * cert.c) % cert.g != 0
    excluded = frac * abs(cert.c)
    return excluded.denominator != 1


class TestLatticeTimeSet:
    """The certified time description is exact over the whole lattice."""

    @pytest.mark.parametrize(
        "expr,pair", [("Z6", (0, 3)), ("Z4", (0, 1)), ("F5 x Z2", (0, 1)),
                      ("F8 x Z2", (0, 1))],
    )
    def test_every_lattice_point_behaves_as_described(self, expr, pair):
        from ringwalk.walk import transition_exact

        dec = idempotents_structured(ring(expr))
        j, l = pair
        cert = decide_qfr(dec, j, l).certificate
        assert cert.g > 0
        for a in range(1, cert.g + 1):
            column = transition_exact(dec, ExactTime(a, cert.g)).column(j)
            for idx, entry in enumerate(column):
                if idx not in (j, l):
                    assert entry.is_zero
            if (a * cert.c) % cert.g == 0:
                # excluded lattice points are exactly the periodic returns
                assert column[l].is_zero
                assert column[j].abs_squared() == 1
            else:
                assert not column[l].is_zero
                norm = column[j].abs_squared() + column[l].abs_squared()
                assert norm == 1


class TestRestrictedTimeIntersection:
    def test_hexagon_certificate_meets_pi_over_three(self):
        cert = decide_qfr(decomposition("Z6"), 0, 3).certificate
        assert certificate_admits_time_in_pi_over_q(cert, 3)

    def test_lattice_miss(self):
        # g = 4 lattice with only odd multiples certified never hits k*pi/3
        cert = decide_qfr(decomposition("Z4"), 0, 1).certificate
        assert cert.g == 4
        assert certificate_admits_time_in_pi_over_q(cert, 2)
        assert not certificate_admits_time_in_pi_over_q(cert, 3)

    def test_continuum_certificates_hit_everything(self):
        cert = decide_qfr(decomposition("Z2"), 0, 1).certificate
        assert cert.g == 0
        assert certificate_admits_time_in_pi_over_q(cert, 3)
