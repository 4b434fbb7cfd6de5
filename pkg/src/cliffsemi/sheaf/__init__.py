import logging
from dataclasses import dataclass
from typing import Iterable, List, Optional, Tuple, TypedDict

from ..errors import ConsistencyError, NotAPencilSourceError
from ..semigroup import NumericalSemigroup, ValueIdeal, bits_below, popcount

logger = logging.getLogger(__name__)

# (bits of the value ideal inside [0, β), top exponent)
SheafKey = Tuple[int, int]


def value_ideal_bits(S: NumericalSemigroup, exps: Iterable[int]) -> int:
    """Bits of S ∪ ⋃(a + S) inside the window [0, β)."""
    bits = S.bits
    for a in exps:
        bits |= S.translate_bits(a)
    return bits


def sheaf_counts(S: NumericalSemigroup, fbits: int,
                 a_max: int) -> Tuple[int, int, int]:
    """(h0, h1, degree) of the sheaf with value ideal bits `fbits`.

    Notes
    -----
    h0 counts the ideal members in [0, a_max], members past the conductor
    included. h1 counts the gaps above a_max outside the ideal, and the
    degree splits as a_max at infinity plus #(F minus S) at the singular
    point.
    """
    beta = S.conductor
    upto = bits_below(a_max + 1)
    h0 = popcount(fbits & upto)
    if a_max >= beta:
        h0 += a_max + 1 - beta
    h1 = popcount(S.gap_bits & ~fbits & ~upto)
    deg = a_max + popcount(fbits & S.gap_bits)
    return h0, h1, deg


def _count_members(S: NumericalSemigroup, low: int, high: int) -> int:
    # members of S in [low, high], members past the conductor included
    if high < low:
        return 0
    beta = S.conductor
    window = bits_below(min(high, beta - 1) + 1) & ~bits_below(low)
    small = popcount(S.bits & window)
    if high >= beta:
        small += high - max(low, beta) + 1
    return small


class SheafDict(TypedDict):
    exponents: List[int]
    h0: int
    h1: int
    deg: int
    cliff: int
    scd: Optional[int]
    invertible: bool
    bpf: bool


@dataclass(frozen=True)
class SheafInvariants:
    h0: int
    h1: int
    degree: int
    clifford: int
    scrollar_dim: Optional[int]  # None when h0 < 2
    invertible: bool
    contributes_clifford: bool
    base_point_free: bool


class MonomialSheaf:
    """Torsion-free rank-1 sheaf O<1, t^a1, ..., t^an> on a monomial curve.

    The sheaf is determined by its value ideal F = S ∪ ⋃(ai + S) at the
    singular point and by the top exponent an, which is the degree of its
    stalk at infinity. The structure sheaf is the empty exponent list.
    """

    def __init__(self, base: NumericalSemigroup, exponents: Iterable[int]):
        if not isinstance(base, NumericalSemigroup):
            raise TypeError("Base must be a NumericalSemigroup.")

        exps = set()
        for e in exponents:
            if not isinstance(e, int) or isinstance(e, bool):
                raise TypeError("Sheaf exponents must be integers.")
            exps.add(e)

        # t^{-a1} F: the smallest generator (1 included) moves to 0
        shift = min(exps | {0})
        exps = sorted(e - shift for e in exps | {0} if e != shift)

        self._base = base
        self._exponents = tuple(exps)
        self._a_max = exps[-1] if exps else 0
        self._bits = value_ideal_bits(base, self._exponents)
        self._invariants = self._compute_invariants()

    @classmethod
    def from_key(cls, base: NumericalSemigroup, fbits: int,
                 a_max: int) -> 'MonomialSheaf':
        """Sheaf with value ideal bits `fbits` and top exponent `a_max`.

        The exponents are the global-section exponents F ∩ [1, a_max], which
        generate the ideal whenever a_max is one of its members.
        """
        sections = _sections(base, fbits, a_max)
        sheaf = cls(base, sections)
        if sheaf.key != (fbits, a_max):
            raise ConsistencyError(
                "Sections {0} don't regenerate the value ideal.".format(
                    sections)
            )
        return sheaf

    # ----------------------------------------------------------------- data
    @property
    def base(self) -> NumericalSemigroup:
        return self._base

    @property
    def exponents(self) -> List[int]:
        return list(self._exponents)

    @property
    def a_max(self) -> int:
        return self._a_max

    @property
    def value_ideal(self) -> ValueIdeal:
        return ValueIdeal(self._base, self._bits, self._base.conductor)

    @property
    def bits(self) -> int:
        return self._bits

    @property
    def key(self) -> SheafKey:
        return self._bits, self._a_max

    @property
    def sections(self) -> List[int]:
        """Exponents of the nonconstant global sections, F ∩ [1, a_max]."""
        return _sections(self._base, self._bits, self._a_max)

    @property
    def invariants(self) -> SheafInvariants:
        return self._invariants

    def pencils(self) -> List[Tuple[int, int]]:
        """Every pair u < v of global-section exponents (0 included)."""
        exps = [0] + self.sections
        return [(u, v) for i, u in enumerate(exps) for v in exps[i + 1:]]

    def hom_omega_exponents(self) -> List[int]:
        """γ - G', G' the gaps above a_max outside the value ideal."""
        gamma = self._base.frobenius
        return sorted(gamma - gap for gap in self._dual_gaps())

    def _dual_gaps(self) -> List[int]:
        return [gap for gap in self._base.gaps
                if gap > self._a_max and not (self._bits >> gap) & 1]

    def _compute_invariants(self) -> SheafInvariants:
        h0, h1, deg = sheaf_counts(self._base, self._bits, self._a_max)
        cliff = deg - 2 * (h0 - 1)

        formula = cliff_formula_route(self)
        if formula != cliff:
            raise ConsistencyError(
                "Clifford index {0} of {1} disagrees with the gap-count "
                "formula {2}.".format(cliff, self.render(), formula)
            )

        invertible = self._bits == self._base.bits
        if invertible and cliff_invertible_route(self) != cliff:
            raise ConsistencyError(
                "Clifford index of the invertible sheaf {0} disagrees with "
                "the translation formula.".format(self.render())
            )

        if h0 - h1 != deg - self._base.genus + 1:
            raise ConsistencyError(
                "Riemann-Roch fails for {0}: h0={1}, h1={2}, deg={3}, "
                "g={4}.".format(self.render(), h0, h1, deg, self._base.genus)
            )

        return SheafInvariants(
            h0=h0,
            h1=h1,
            degree=deg,
            clifford=cliff,
            scrollar_dim=deg - h0 + 1 if h0 >= 2 else None,
            invertible=invertible,
            contributes_clifford=h0 >= 2 and h1 >= 2,
            base_point_free=invertible,
        )

    def render(self) -> str:
        """Display form "O<1,t^4,t^5>" or "O<1,t>"; the structure sheaf is
        "O"."""
        sections = self.sections
        if len(sections) == 0:
            return 'O'
        return 'O<1,{0}>'.format(','.join(_monomial(e) for e in sections))

    def to_dict(self) -> SheafDict:
        inv = self._invariants
        return {
            'exponents': self.exponents,
            'h0': inv.h0,
            'h1': inv.h1,
            'deg': inv.degree,
            'cliff': inv.clifford,
            'scd': inv.scrollar_dim,
            'invertible': inv.invertible,
            'bpf': inv.base_point_free,
        }

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MonomialSheaf):
            return NotImplemented
        return self._base == other._base and self.key == other.key

    def __hash__(self) -> int:
        return hash((self._base, self.key))

    def __repr__(self) -> str:
        return 'MonomialSheaf({0}, {1})'.format(self._base, self.render())


def _monomial(e: int) -> str:
    return 't' if e == 1 else 't^{0}'.format(e)


def _sections(S: NumericalSemigroup, fbits: int, a_max: int) -> List[int]:
    beta = S.conductor
    out = [n for n in range(1, min(a_max, beta - 1) + 1) if (fbits >> n) & 1]
    out.extend(range(max(beta, 1), a_max + 1))
    return out


def make_sheaf(S: NumericalSemigroup, exps: Iterable[int]) -> MonomialSheaf:
    return MonomialSheaf(S, exps)


def structure_sheaf(S: NumericalSemigroup) -> MonomialSheaf:
    return MonomialSheaf(S, [])


def h0(F: MonomialSheaf) -> int:
    return F.invariants.h0


def h1(F: MonomialSheaf) -> int:
    return F.invariants.h1


def degree(F: MonomialSheaf) -> int:
    return F.invariants.degree


def hom_omega_exponents(F: MonomialSheaf) -> List[int]:
    return F.hom_omega_exponents()


def clifford_index(F: MonomialSheaf) -> int:
    return F.invariants.clifford


def contributes_clifford(F: MonomialSheaf) -> bool:
    return F.invariants.contributes_clifford


def is_invertible(F: MonomialSheaf) -> bool:
    return F.invariants.invertible


def is_base_point_free(F: MonomialSheaf) -> bool:
    return F.invariants.base_point_free


def scrollar_dimension(F: MonomialSheaf) -> int:
    scd = F.invariants.scrollar_dim
    if scd is None:
        raise NotAPencilSourceError(
            "{0} has h0 = {1}, a pencil needs at least two sections.".format(
                F.render(), F.invariants.h0)
        )
    return scd


def is_generated_by_sections(F: MonomialSheaf) -> bool:
    """True when the sections in [0, a_max] regenerate the value ideal."""
    return value_ideal_bits(F.base, F.sections) == F.bits


def cliff_formula_route(F: MonomialSheaf) -> int:
    """#((G - E) ∩ [1, a]) - #(S ∩ [1, a]) + #((E - S) ∩ [a + 1, γ])."""
    S = F.base
    a = F.a_max
    gaps = S.gap_bits
    extra = F.bits & gaps  # E - S, the same for any generating set of F
    upto = bits_below(a + 1)
    return (popcount(gaps & ~extra & upto)
            - _count_members(S, 1, a)
            + popcount(extra & ~upto))


def cliff_invertible_route(F: MonomialSheaf) -> int:
    """#(G ∩ [1, a]) - #(S ∩ [1, a]); valid when F is invertible."""
    S = F.base
    a = F.a_max
    return (popcount(S.gap_bits & bits_below(a + 1))
            - _count_members(S, 1, a))
