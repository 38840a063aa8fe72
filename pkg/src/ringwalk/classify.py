"""Structural classification of rings by known revival results.

The rules encode established facts about fractional revival on unitary
Cayley graphs: the complete local-ring characterization, the bound on the
combined maximal-ideal size, the even-order requirement, the
perfect-state-transfer products built from characteristic-2 factors, the
odd-field-times-F2 family with its explicit revival time, and the partial
no-go for odd-field-times-(4,2) products at times k*pi/q.  Anything the
rules do not cover is reported UNKNOWN rather than extrapolated; the
detector's answer for UNKNOWN rings is a computational result, labeled as
such.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graphs import DEFAULT_SIZE_CAP, _check_cap
from .revival import (
    RevivalDecision,
    certificate_admits_time_in_pi_over_q,
    decide_qfr,
    search_all_pairs,
)
from .rings import LocalDescriptor, RingProduct, render_ring
from .spectral import idempotents_structured
from .walk import ExactTime

YES = "YES"
NO = "NO"
UNKNOWN = "UNKNOWN"

_RULES = {
    "local-classification": (
        "the only local rings whose graphs revive are the 2-element field "
        "and the two 4-element rings with a 2-element maximal ideal"
    ),
    "local-ideal-too-large": (
        "a local ring with maximal ideal larger than 2 has no strongly "
        "cospectral pair on its 0-eigenspace"
    ),
    "field-larger-than-two": (
        "complete graphs on q >= 3 field elements have no strongly "
        "cospectral vertices"
    ),
    "product-ideal-too-large": (
        "revival requires the product of the factors' maximal-ideal sizes "
        "to be at most 2"
    ),
    "odd-order": "revival forces the ring order to be even",
    "char-two-pst-product": (
        "a reviving local factor times characteristic-2 fields admits "
        "perfect state transfer"
    ),
    "odd-field-times-k2": (
        "F_q x F_2 with q an odd prime power revives at time 2*pi/q"
    ),
    "odd-field-times-c4-partial": (
        "F_q x (4,2)-type products cannot revive at any time k*pi/q; "
        "other times are not covered by the rules"
    ),
    "uncovered": "no classification rule applies",
}


@dataclass(frozen=True)
class RuleBasis:
    tag: str
    citation: str

    @classmethod
    def of(cls, tag: str) -> "RuleBasis":
        return cls(tag, _RULES[tag])

    def to_json(self) -> dict:
        return {"tag": self.tag, "citation": self.citation}


@dataclass(frozen=True)
class RestrictedTimes:
    """The excluded time set {k*pi/q : k integer} of a partial no-go."""

    pi_denominator: int

    def describe(self) -> str:
        return f"k*pi/{self.pi_denominator} for every integer k"


@dataclass(eq=False)
class ClassificationResult:
    verdict: str
    basis: RuleBasis
    witness: RevivalDecision | None = None
    restricted_no_times: RestrictedTimes | None = None

    def to_json(self) -> dict:
        out: dict = {"verdict": self.verdict, "basis": self.basis.to_json()}
        if self.witness is not None and self.witness.certificate is not None:
            cert = self.witness.certificate
            out["witness"] = {
                "pair": list(cert.pair),
                "time": cert.minimal_time.render(),
                "kind": cert.kind,
            }
        if self.restricted_no_times is not None:
            out["restricted_no_times"] = self.restricted_no_times.describe()
        return out


_SPECIAL = {(2, 1), (4, 2)}


def _shape(f: LocalDescriptor) -> tuple[int, int]:
    return (f.size, f.ideal_size)


def _witness_on_pair(ring: RingProduct, j: int, l: int, size_cap: int) -> RevivalDecision:
    decision = decide_qfr(idempotents_structured(ring, size_cap), j, l)
    assert decision.is_revival, "classification witness pair failed to revive"
    return decision


def _first_revival(ring: RingProduct, size_cap: int) -> RevivalDecision:
    dec = idempotents_structured(ring, size_cap)
    for j in range(dec.size):
        for l in range(j + 1, dec.size):
            decision = decide_qfr(dec, j, l)
            if decision.is_revival:
                return decision
    raise AssertionError("classification promised a revival but none was found")


def classify_ring(
    ring: RingProduct, size_cap: int = DEFAULT_SIZE_CAP
) -> ClassificationResult:
    """Apply the rule cascade; first matching rule wins."""
    factors = ring.factors

    if len(factors) == 1:
        f = factors[0]
        if _shape(f) in _SPECIAL:
            witness = _witness_on_pair(ring, 0, 1, size_cap)
            return ClassificationResult(
                YES, RuleBasis.of("local-classification"), witness=witness
            )
        if f.ideal_size > 2:
            return ClassificationResult(NO, RuleBasis.of("local-ideal-too-large"))
        assert f.is_field and f.size >= 3, "ideal size 2 only occurs at ring size 4"
        return ClassificationResult(NO, RuleBasis.of("field-larger-than-two"))

    if ring.combined_ideal_size > 2:
        return ClassificationResult(NO, RuleBasis.of("product-ideal-too-large"))
    if ring.size % 2 == 1:
        return ClassificationResult(NO, RuleBasis.of("odd-order"))

    shapes = [_shape(f) for f in factors]
    if all(n & (n - 1) == 0 for n, _ in shapes) and any(s in _SPECIAL for s in shapes):
        # characteristic-2 throughout with a reviving special factor
        witness = _first_revival(ring, size_cap)
        return ClassificationResult(
            YES, RuleBasis.of("char-two-pst-product"), witness=witness
        )

    if len(factors) == 2:
        fields = sorted(shapes)  # (2,1) sorts before (q,1), q >= 3
        if fields[0] == (2, 1) and fields[1][1] == 1 and fields[1][0] % 2 == 1:
            q = fields[1][0]
            k2_index = shapes.index((2, 1))
            stride = 1
            for f in factors[k2_index + 1 :]:
                stride *= f.size
            witness = _witness_on_pair(ring, 0, stride, size_cap)
            assert witness.certificate.minimal_time == ExactTime(1, q)
            return ClassificationResult(
                YES, RuleBasis.of("odd-field-times-k2"), witness=witness
            )
        if (4, 2) in shapes:
            other = shapes[1 - shapes.index((4, 2))]
            if other[1] == 1 and other[0] % 2 == 1:
                return ClassificationResult(
                    UNKNOWN,
                    RuleBasis.of("odd-field-times-c4-partial"),
                    restricted_no_times=RestrictedTimes(other[0]),
                )

    return ClassificationResult(UNKNOWN, RuleBasis.of("uncovered"))


@dataclass(eq=False)
class CrossCheckReport:
    ring: RingProduct
    oracle: ClassificationResult
    decisions: list[RevivalDecision]
    consistent: bool

    @property
    def detector_verdict(self) -> str:
        return "QFR" if any(d.is_revival for d in self.decisions) else "NONE"

    @property
    def certificates(self) -> list[RevivalDecision]:
        return [d for d in self.decisions if d.is_revival]

    def to_json(self) -> dict:
        out = {
            "ring": render_ring(self.ring),
            "oracle": self.oracle.to_json(),
            "detector": {
                "verdict": self.detector_verdict,
                "certificates": [d.to_json() for d in self.certificates],
            },
            "consistent": self.consistent,
        }
        if self.oracle.verdict == UNKNOWN:
            out["detector"]["source"] = "computational"
        return out


def cross_check(
    ring: RingProduct, size_cap: int = DEFAULT_SIZE_CAP
) -> CrossCheckReport:
    """Run the rule oracle against the exhaustive detector and compare.

    YES demands at least one detected certificate, NO demands none, and a
    partial no-go demands that no certified time set reaches into the
    excluded lattice.  For UNKNOWN rings the detector's verdict stands on
    its own as a computational answer.
    """
    _check_cap(ring, size_cap)
    oracle = classify_ring(ring, size_cap)
    decisions = search_all_pairs(ring, size_cap)
    certs = [d for d in decisions if d.is_revival]

    if oracle.verdict == YES:
        consistent = bool(certs)
    elif oracle.verdict == NO:
        consistent = not certs
    elif oracle.restricted_no_times is not None:
        q = oracle.restricted_no_times.pi_denominator
        consistent = not any(
            certificate_admits_time_in_pi_over_q(d.certificate, q) for d in certs
        )
    else:
        consistent = True
    return CrossCheckReport(ring, oracle, decisions, consistent)
