"""Naive Clifford search over raw exponent sets.

Independent of the ideal enumeration; used to validate it on small genus.
"""
import logging
from typing import List, Tuple

from ..errors import GenusTooLargeError, SmoothCurveError
from ..semigroup import NumericalSemigroup
from . import CliffordResult, PartialSearch, finish_search

logger = logging.getLogger(__name__)

ORACLE_MAX_GENUS = 12


def _naive_gonality(S: NumericalSemigroup) -> int:
    best = None
    for a in range(1, S.conductor + 1):
        extra = sum(1 for s in range(S.conductor)
                    if S.contains(s) and not S.contains(a + s))
        deg = a + extra
        if best is None or deg < best:
            best = deg
    return best


def _shift(S: NumericalSemigroup, a: int) -> int:
    # (a + S) ∩ [0, β) built from the member list
    bits = 0
    for s in S.small_elements:
        if a + s < S.conductor:
            bits |= 1 << (a + s)
    return bits


def _evaluate(S: NumericalSemigroup, fbits: int,
              a_max: int) -> Tuple[int, int, int]:
    beta = S.conductor
    h0 = sum(1 for n in range(a_max + 1)
             if n >= beta or (fbits >> n) & 1)
    h1 = sum(1 for gap in S.gaps
             if gap > a_max and not (fbits >> gap) & 1)
    deg = a_max + sum(1 for gap in S.gaps if (fbits >> gap) & 1)
    return h0, h1, deg


def clifford_brute_oracle(S: NumericalSemigroup,
                          max_extra_generators: int) -> CliffordResult:
    """Clifford search over every exponent set A ⊆ [1, γ - 1], |A| <= cap.

    Raises
    ------
    GenusTooLargeError
        Above genus 12.
    """
    if S.genus == 0:
        raise SmoothCurveError("The curve is smooth (genus 0 semigroup).")
    if S.genus > ORACLE_MAX_GENUS:
        raise GenusTooLargeError(
            "Brute-force oracle is limited to genus {0}, got {1}.".format(
                ORACLE_MAX_GENUS, S.genus)
        )
    if max_extra_generators < 0:
        raise ValueError("Generator cap can't be negative.")

    shifts = {a: _shift(S, a) for a in range(1, S.frobenius)}
    partial = PartialSearch()
    seen = set()

    # increasing exponent sets: (last exponent, ideal bits, size)
    stack: List[Tuple[int, int, int]] = [(0, S.bits, 0)]
    while stack:
        last, fbits, size = stack.pop()
        if size > 0:
            key = (fbits, last)
            if key not in seen:
                seen.add(key)
                h0, h1, deg = _evaluate(S, fbits, last)
                partial.evaluated += 1
                if h0 >= 2 and h1 >= 2:
                    partial.offer(deg - 2 * (h0 - 1), h0, key)
        if size == max_extra_generators:
            continue
        for a in range(last + 1, S.frobenius):
            stack.append((a, fbits | shifts[a], size + 1))

    logger.debug("oracle %s: %d distinct sheaves", S, partial.evaluated)
    return finish_search(S, _naive_gonality(S), partial)
