import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import unique
from typing import (Dict, Iterator, List, NamedTuple, Optional, Tuple,
                    TypedDict)

from ..enums import TypeBaseEnum
from ..errors import (CliffordUndefinedError, ConsistencyError,
                      DegreeTooSmallError, SmoothCurveError)
from ..scroll import canonical_exponents, realizing_curve_exponents
from ..semigroup import (IdealPrefix, NumericalSemigroup, SemigroupDict,
                         bits_below, from_generators, ideal_prefixes,
                         iter_ideal_bits, popcount)
from ..sheaf import MonomialSheaf, SheafDict, SheafKey, make_sheaf

logger = logging.getLogger(__name__)

SCHEMA_VERSION = 1

_PREFIXES_PER_JOB = 4  # ideal prefixes handed to each worker, on average


def _require_singular(S: NumericalSemigroup) -> None:
    if S.genus == 0:
        raise SmoothCurveError("The curve is smooth (genus 0 semigroup), "
                               "its invariants are not computed here.")


# ------------------------------------------------------------------ gonality
def degree_of_pencil(S: NumericalSemigroup, a: int) -> int:
    """Degree a + #((a + S) - S) of the pencil O<1, t^a>."""
    if a < 1:
        raise ValueError("Pencil exponent must be positive.")
    return a + popcount(S.translate_bits(a) & S.gap_bits)


def gonality(S: NumericalSemigroup) -> Tuple[int, List[int]]:
    """Gonality and every exponent a whose pencil O<1, t^a> computes it.

    Parameters
    ----------
    S : NumericalSemigroup
        Semigroup of a singular curve (genus >= 1).

    Returns
    -------
    Tuple[int, List[int]]
        Minimal degree and the sorted minimizing exponents.

    Notes
    -----
    The pencil of t^α has degree α, and a pencil of t^a has degree at least
    a, so the scan stops as soon as a passes the best degree found.
    """
    _require_singular(S)

    best = S.multiplicity
    witnesses: List[int] = []
    a = 1
    while a <= best:
        deg = degree_of_pencil(S, a)
        if deg < best:
            best = deg
            witnesses = [a]
        elif deg == best:
            witnesses.append(a)
        a += 1
    return best, witnesses


# ----------------------------------------------------------- clifford search
class Candidate(NamedTuple):
    bits: int
    a_max: int
    h0: int
    h1: int
    degree: int


def _minimal_gap_generators(S: NumericalSemigroup) -> Dict[int, int]:
    # gap a -> bits of the smaller gaps t with a - t a nonzero member of S
    gaps = S.gaps
    below = {}
    for a in gaps:
        bits = 0
        for t in gaps:
            if t >= a:
                break
            if S.contains(a - t):
                bits |= 1 << t
        below[a] = bits
    return below


def iter_candidates(S: NumericalSemigroup,
                    prefix: Optional[IdealPrefix] = None
                    ) -> Iterator[Candidate]:
    """Every sheaf of the Clifford search space, each one evaluated.

    Pairs (V, a_max): V an ideal S ⊆ V ⊆ N, a_max a member of V at or above
    its largest minimal generator and below the second largest gap missing
    from V. Every yielded sheaf has h0 >= 2 and h1 >= 2.
    """
    gap_bits = S.gap_bits
    below = _minimal_gap_generators(S)
    gaps_desc = sorted(S.gaps, reverse=True)

    for V in iter_ideal_bits(S, prefix):
        included = V & gap_bits
        missing = [gap for gap in gaps_desc if not (V >> gap) & 1]
        if len(missing) < 2:
            continue
        top = missing[1]  # h1 >= 2 needs two missing gaps above a_max

        m_max = 0
        for gap in gaps_desc:
            if (included >> gap) & 1 and included & below[gap] == 0:
                m_max = gap
                break

        start = max(m_max, 1)
        extra = popcount(included)
        h0 = popcount(V & bits_below(start))
        h1 = sum(1 for gap in missing if gap >= start)
        for n in range(start, top):
            if (V >> n) & 1:
                h0 += 1
                yield Candidate(V, n, h0, h1, n + extra)
            else:
                h1 -= 1


@dataclass
class PartialSearch:
    """Running minimum of a Clifford search, reduced by `finish_search`.

    `entries` holds (ideal bits, top exponent, h0) of each minimizer, in
    the order they were offered or merged.
    """
    clifford: Optional[int] = None
    entries: List[Tuple[int, int, int]] = field(default_factory=list)
    evaluated: int = 0
    minimal_scroll: bool = False

    def offer(self, cliff: int, h0: int, key: SheafKey) -> None:
        if self.clifford is None or cliff < self.clifford:
            self.clifford = cliff
            self.entries = []
        if cliff == self.clifford:
            self.entries.append((key[0], key[1], h0))

    def merge(self, other: 'PartialSearch') -> None:
        self.evaluated += other.evaluated
        self.minimal_scroll = self.minimal_scroll or other.minimal_scroll
        if other.clifford is None:
            return
        if self.clifford is None or other.clifford < self.clifford:
            self.clifford = other.clifford
            self.entries = list(other.entries)
        elif other.clifford == self.clifford:
            self.entries.extend(other.entries)


def _search_prefix(args: Tuple[NumericalSemigroup, Optional[IdealPrefix],
                               int]) -> PartialSearch:
    S, prefix, gon = args
    partial = PartialSearch()
    for cand in iter_candidates(S, prefix):
        partial.evaluated += 1
        cliff = cand.degree - 2 * (cand.h0 - 1)
        partial.offer(cliff, cand.h0, (cand.bits, cand.a_max))
        # sheaf of minimal scrollar dimension not computing the gonality
        if cand.degree - cand.h0 + 1 == gon - 1 and cand.degree > gon:
            partial.minimal_scroll = True
    return partial


@dataclass
class CliffordResult:
    """Outcome of a Clifford index search.

    `computing_sheaves` holds every minimizer; `witnesses` the ones of
    minimal h0, which give the Clifford dimension. Both are sorted by their
    section exponents.
    """
    clifford: int
    dimension: int
    computing_sheaves: List[MonomialSheaf]
    witnesses: List[MonomialSheaf]
    evaluated: int = 0
    minimal_scroll: bool = False


def _sections_order(sheaf: MonomialSheaf) -> List[int]:
    return sheaf.sections


def finish_search(S: NumericalSemigroup, gon: int,
                  partial: PartialSearch) -> CliffordResult:
    """Turn a reduced search into a result, applying the genus <= 3 rule.

    For genus <= 3 the Clifford index is 0 (dimension 1) on curves of
    gonality 2 and undefined otherwise.
    """
    sheaves = [MonomialSheaf.from_key(S, bits, a_max)
               for bits, a_max, _ in partial.entries]
    sheaves.sort(key=_sections_order)

    if S.genus <= 3:
        if gon != 2:
            if sheaves:
                raise ConsistencyError(
                    "Genus {0} curve of gonality {1} has contributing "
                    "sheaves.".format(S.genus, gon)
                )
            raise CliffordUndefinedError(
                "Clifford index is undefined for genus {0} curves of "
                "gonality {1}.".format(S.genus, gon)
            )
        if sheaves and partial.clifford != 0:
            raise ConsistencyError(
                "Genus {0} curve of gonality 2 has minimal contributing "
                "Clifford index {1}.".format(S.genus, partial.clifford)
            )
        witnesses = [F for F in sheaves if F.invariants.h0 == 2]
        return CliffordResult(0, 1, sheaves, witnesses, partial.evaluated,
                              partial.minimal_scroll)

    if partial.clifford is None:
        raise CliffordUndefinedError(
            "No sheaf contributes to the Clifford index of {0}.".format(S)
        )

    min_h0 = min(h0 for _, _, h0 in partial.entries)
    witnesses = [F for F in sheaves if F.invariants.h0 == min_h0]
    return CliffordResult(partial.clifford, min_h0 - 1, sheaves, witnesses,
                          partial.evaluated, partial.minimal_scroll)


def clifford_of_curve(S: NumericalSemigroup, jobs: int = 1,
                      gon: Optional[int] = None) -> CliffordResult:
    """Clifford index, Clifford dimension and computing sheaves of the curve.

    Parameters
    ----------
    S : NumericalSemigroup
        Semigroup of the unicuspidal monomial curve.
    jobs : int, optional
        Worker processes; the ideal space is split by prefixes on the
        largest gaps and reduced in prefix order, by default 1.
    gon : int, optional
        Gonality, when the caller already computed it.

    Returns
    -------
    CliffordResult
        Exhaustive minimum over the (ideal, top exponent) search space.

    Raises
    ------
    SmoothCurveError
        For the full monoid.
    CliffordUndefinedError
        For genus <= 3 curves of gonality > 2.
    """
    _require_singular(S)
    if not isinstance(jobs, int) or jobs < 1:
        raise ValueError("Number of jobs must be a positive integer.")

    if gon is None:
        gon, _ = gonality(S)

    total = PartialSearch()
    if jobs == 1:
        total.merge(_search_prefix((S, None, gon)))
    else:
        depth = min(S.genus, (jobs * _PREFIXES_PER_JOB).bit_length())
        prefixes = ideal_prefixes(S, depth)
        with ProcessPoolExecutor(max_workers=jobs) as executor:
            partials = executor.map(_search_prefix,
                                    [(S, p, gon) for p in prefixes])
            for partial in partials:
                total.merge(partial)

    logger.debug("%s: %d candidate sheaves, %d minimizers",
                 S, total.evaluated, len(total.entries))
    return finish_search(S, gon, total)


# ---------------------------------------------------------------- trigonal
@unique
class TrigonalPattern(TypeBaseEnum):
    PATTERN_I = 'PatternI'
    PATTERN_II = 'PatternII'
    PATTERN_III = 'PatternIII'
    NOT_TRIGONAL = 'NotTrigonal'
    GONALITY_LE2 = 'GonalityLE2'


class TrigonalDict(TypedDict):
    pattern: str
    alpha: Optional[int]
    k: Optional[int]
    ell: Optional[int]


@dataclass(frozen=True)
class TrigonalClass:
    pattern: TrigonalPattern
    alpha: Optional[int] = None
    k: Optional[int] = None
    ell: Optional[int] = None

    @property
    def is_trigonal(self) -> bool:
        return self.pattern in (TrigonalPattern.PATTERN_I,
                                TrigonalPattern.PATTERN_II,
                                TrigonalPattern.PATTERN_III)

    def render(self) -> str:
        params = [p for p in (self.alpha, self.k, self.ell) if p is not None]
        if self.pattern == TrigonalPattern.PATTERN_III or not params:
            return self.pattern.value
        return '{0}({1})'.format(self.pattern.value,
                                 ','.join(str(p) for p in params))

    def to_dict(self) -> TrigonalDict:
        return {'pattern': self.pattern.value, 'alpha': self.alpha,
                'k': self.k, 'ell': self.ell}

    @classmethod
    def from_dict(cls, data: TrigonalDict) -> 'TrigonalClass':
        return cls(TrigonalPattern(data['pattern']), data['alpha'],
                   data['k'], data['ell'])


def classify_trigonal(S: NumericalSemigroup) -> TrigonalClass:
    """Match S against the three trigonal shapes.

    The shapes are {0, α, α+2, ..., α+2k, →} (k >= 1),
    {0, α, ..., α+k, α+k+ℓ, →} (k >= 0, ℓ >= 2) and α = 3, tried in that
    order, for α >= 3 and α != β.
    """
    _require_singular(S)

    alpha = S.multiplicity
    beta = S.conductor
    if alpha <= 2 or alpha == beta:
        return TrigonalClass(TrigonalPattern.GONALITY_LE2)

    members = S.small_elements[1:]
    if (beta - alpha) % 2 == 0 and members == list(range(alpha, beta, 2)):
        return TrigonalClass(TrigonalPattern.PATTERN_II, alpha,
                             (beta - alpha) // 2)

    top = members[-1]
    if members == list(range(alpha, top + 1)):
        return TrigonalClass(TrigonalPattern.PATTERN_I, alpha, top - alpha,
                             beta - top)

    if alpha == 3:
        return TrigonalClass(TrigonalPattern.PATTERN_III, alpha)

    return TrigonalClass(TrigonalPattern.NOT_TRIGONAL)


# ------------------------------------------------------------- closed forms
@dataclass
class ClosedForm:
    """Invariants a family of curves is known to have."""
    semigroup: NumericalSemigroup
    clifford: int
    clifford_dimension: int
    gonality: Optional[int] = None
    witness_exponents: Optional[List[int]] = None
    noninvertible_only: bool = False

    def matches(self, report: 'CurveReport') -> bool:
        if report.clifford != self.clifford:
            return False
        if report.clifford_dimension != self.clifford_dimension:
            return False
        if self.gonality is not None and report.gonality != self.gonality:
            return False
        if self.witness_exponents is not None:
            witness = make_sheaf(self.semigroup, self.witness_exponents)
            if witness not in report.computing_sheaves:
                return False
        if self.noninvertible_only and any(
            F.invariants.invertible for F in report.computing_sheaves
        ):
            return False
        return True


def plane_closed_form(alpha: int) -> ClosedForm:
    """Plane curve (1 : t^α : t^(α+1)) of degree d = α + 1.

    Clifford dimension 2, Clifford index d - 4, gonality d - 1, computed by
    the invertible sheaf O<1, t^(α+1)>.
    """
    if not isinstance(alpha, int):
        raise TypeError("Multiplicity must be an integer.")
    if alpha < 4:
        raise DegreeTooSmallError(
            "Plane curve degree {0} is below 5.".format(alpha + 1)
        )
    return ClosedForm(
        semigroup=from_generators([alpha, alpha + 1]),
        clifford=alpha - 3,
        clifford_dimension=2,
        gonality=alpha,
        witness_exponents=[alpha + 1],
    )


def nonplanar_generators(alpha: int) -> List[int]:
    """α, 2α - 1, ..., α² - (α - 1)."""
    return [i * alpha - (i - 1) for i in range(1, alpha + 1)]


def nonplanar_family(alpha: int) -> Tuple[NumericalSemigroup, ClosedForm]:
    if not isinstance(alpha, int):
        raise TypeError("Multiplicity must be an integer.")
    if alpha < 4:
        raise DegreeTooSmallError(
            "The nonplanar family starts at multiplicity 4, got {0}.".format(
                alpha)
        )
    S = from_generators(nonplanar_generators(alpha))
    return S, ClosedForm(
        semigroup=S,
        clifford=alpha - 3,
        clifford_dimension=2,
        noninvertible_only=True,
    )


# ---------------------------------------------------------------- relations
class RelationCheck(NamedTuple):
    name: str
    holds: bool


def _relations(genus: int, gon: int, result: CliffordResult,
               trigonal: TrigonalClass) -> List[RelationCheck]:
    cliff = result.clifford
    cliffd = result.dimension
    # sheaf-level statements apply where the index is not set by convention
    general = genus >= 4

    scroll_hypotheses = general and gon < genus and cliff >= gon - 3
    return [
        RelationCheck('clifford_nonnegative', cliff >= 0),
        RelationCheck('clifford_zero_iff_gonality_two',
                      (cliff == 0) == (gon == 2)),
        RelationCheck('gonality_at_most_genus', genus < 2 or gon <= genus),
        RelationCheck('clifford_at_most_gonality_minus_two',
                      not gon < genus or cliff <= gon - 2),
        RelationCheck('extremal_clifford_has_dimension_one',
                      not (gon < genus and cliff == gon - 2) or cliffd == 1),
        RelationCheck('dimension_one_is_extremal',
                      not general or cliffd != 1 or cliff == gon - 2),
        RelationCheck('full_gonality_has_dimension_two',
                      not general or gon != genus or cliffd >= 2),
        RelationCheck('trigonal_has_clifford_one',
                      not general or gon != 3 or cliff == 1),
        RelationCheck('trigonal_class_matches_gonality',
                      trigonal.is_trigonal == (gon == 3)),
        RelationCheck('minimal_scroll_iff_dimension_two',
                      not scroll_hypotheses
                      or result.minimal_scroll == (cliffd == 2)),
    ]


def relations_report(S: NumericalSemigroup,
                     jobs: int = 1) -> List[RelationCheck]:
    gon, _ = gonality(S)
    result = clifford_of_curve(S, jobs, gon)
    return _relations(S.genus, gon, result, classify_trigonal(S))


# ------------------------------------------------------------------- report
class CurveDict(TypedDict):
    schema_version: int
    semigroup: SemigroupDict
    gonality: int
    gonality_witnesses: List[int]
    clifford: Optional[int]
    clifford_dimension: Optional[int]
    computing_sheaves: List[SheafDict]
    clifford_witnesses: List[SheafDict]
    trigonal_class: TrigonalDict
    relations: Dict[str, bool]
    canonical_exponents: List[int]
    realizing_exponents: List[int]


@dataclass
class CurveReport:
    semigroup: NumericalSemigroup
    gonality: int
    gonality_witnesses: List[int]
    clifford: Optional[int]  # None when undefined
    clifford_dimension: Optional[int]
    computing_sheaves: List[MonomialSheaf]
    clifford_witnesses: List[MonomialSheaf]
    trigonal_class: TrigonalClass
    relations: List[RelationCheck]
    canonical_exponents: List[int]
    realizing_exponents: List[int]

    @property
    def relations_ok(self) -> bool:
        return all(check.holds for check in self.relations)

    def to_dict(self) -> CurveDict:
        return {
            'schema_version': SCHEMA_VERSION,
            'semigroup': self.semigroup.to_dict(),
            'gonality': self.gonality,
            'gonality_witnesses': list(self.gonality_witnesses),
            'clifford': self.clifford,
            'clifford_dimension': self.clifford_dimension,
            'computing_sheaves': [F.to_dict()
                                  for F in self.computing_sheaves],
            'clifford_witnesses': [F.to_dict()
                                   for F in self.clifford_witnesses],
            'trigonal_class': self.trigonal_class.to_dict(),
            'relations': {c.name: c.holds for c in self.relations},
            'canonical_exponents': list(self.canonical_exponents),
            'realizing_exponents': list(self.realizing_exponents),
        }

    @classmethod
    def from_dict(cls, data: CurveDict) -> 'CurveReport':
        if data.get('schema_version') != SCHEMA_VERSION:
            raise ValueError("Unsupported report schema version: "
                             "{0}.".format(data.get('schema_version')))

        S = from_generators(data['semigroup']['min_generators'])
        if S.gaps != data['semigroup']['gaps']:
            raise ValueError("Report generators and gaps disagree.")

        return cls(
            semigroup=S,
            gonality=data['gonality'],
            gonality_witnesses=list(data['gonality_witnesses']),
            clifford=data['clifford'],
            clifford_dimension=data['clifford_dimension'],
            computing_sheaves=[make_sheaf(S, d['exponents'])
                               for d in data['computing_sheaves']],
            clifford_witnesses=[make_sheaf(S, d['exponents'])
                                for d in data['clifford_witnesses']],
            trigonal_class=TrigonalClass.from_dict(data['trigonal_class']),
            relations=[RelationCheck(name, holds)
                       for name, holds in data['relations'].items()],
            canonical_exponents=list(data['canonical_exponents']),
            realizing_exponents=list(data['realizing_exponents']),
        )


def analyze_curve(S: NumericalSemigroup, jobs: int = 1) -> CurveReport:
    """Every invariant of the curve in one report.

    The Clifford fields are None when the index is undefined (genus <= 3
    and gonality > 2); relations are then left empty.
    """
    _require_singular(S)

    gon, gon_witnesses = gonality(S)
    trigonal = classify_trigonal(S)
    try:
        result: Optional[CliffordResult] = clifford_of_curve(S, jobs, gon)
    except CliffordUndefinedError as err:
        logger.info("%s", err)
        result = None

    if result is None:
        clifford = dimension = None
        computing: List[MonomialSheaf] = []
        witnesses: List[MonomialSheaf] = []
        relations: List[RelationCheck] = []
    else:
        clifford = result.clifford
        dimension = result.dimension
        computing = result.computing_sheaves
        witnesses = result.witnesses
        relations = _relations(S.genus, gon, result, trigonal)
        failed = [c.name for c in relations if not c.holds]
        if failed:
            logger.warning("%s: relations failed: %s", S, ', '.join(failed))

    return CurveReport(
        semigroup=S,
        gonality=gon,
        gonality_witnesses=gon_witnesses,
        clifford=clifford,
        clifford_dimension=dimension,
        computing_sheaves=computing,
        clifford_witnesses=witnesses,
        trigonal_class=trigonal,
        relations=relations,
        canonical_exponents=canonical_exponents(S),
        realizing_exponents=realizing_curve_exponents(S),
    )
