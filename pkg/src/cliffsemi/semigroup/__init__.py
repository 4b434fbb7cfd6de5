import logging
from functools import reduce
from math import gcd
from typing import Dict, Iterator, List, Optional, Sequence, Tuple, TypedDict

import numpy as np

from ..errors import (BaseMismatchError, EmptyInputError, NotASemigroupError,
                      NotCofiniteError, ParseError)

logger = logging.getLogger(__name__)

# (number of largest gaps already decided, bits of the gaps included among them)
IdealPrefix = Tuple[int, int]

_GAPS_TAG = 'gaps:'


def _bits_of(values: Sequence[int]) -> int:
    bits = 0
    for v in values:
        bits |= 1 << v
    return bits


def popcount(bits: int) -> int:
    return bin(bits).count('1')


def bits_below(n: int) -> int:
    """Bits of [0, n)."""
    return (1 << max(n, 0)) - 1


def _members_of(bits: int) -> List[int]:
    out = []
    n = 0
    while bits:
        if bits & 1:
            out.append(n)
        bits >>= 1
        n += 1
    return out


class SemigroupDict(TypedDict):
    min_generators: List[int]
    gaps: List[int]
    frobenius: int
    genus: int
    gorenstein: bool
    nearly_normal: bool


class NumericalSemigroup:
    """Cofinite submonoid S of the naturals.

    Members below the conductor are stored as the bits of a Python integer
    (bit n set iff n is in S); every n at or above the conductor is a member.
    Instances are immutable; use `from_generators`, `from_gaps` or
    `parse_semigroup` to build one.
    """

    def __init__(self, bits: int, conductor: int):
        if not isinstance(bits, int) or not isinstance(conductor, int):
            raise TypeError("Semigroup mask and conductor must be integers.")
        if conductor < 0:
            raise ValueError("Conductor can't be negative.")

        self._conductor = conductor
        self._full = (1 << conductor) - 1
        self._bits = bits & self._full
        if conductor > 0:
            self._bits |= 1  # 0 is always a member
        self._gaps = tuple(_members_of(self._full & ~self._bits))
        self._translates: Dict[int, int] = {}
        self._min_generators: Optional[Tuple[int, ...]] = None

    # ------------------------------------------------------------- builders
    @classmethod
    def from_generators(cls, gens: Sequence[int]) -> 'NumericalSemigroup':
        """Semigroup generated by `gens`.

        Parameters
        ----------
        gens : Sequence[int]
            Positive integers; redundancy is allowed.

        Returns
        -------
        NumericalSemigroup
            The generated monoid with all derived fields available.

        Raises
        ------
        EmptyInputError
            If `gens` is empty.
        NotCofiniteError
            If the generators are not coprime.
        """
        gens = list(gens)
        if len(gens) == 0:
            raise EmptyInputError("At least one generator is required.")

        for g in gens:
            if not isinstance(g, (int, np.integer)) or isinstance(g, bool):
                raise TypeError("Generators must be integers.")
            if g < 1:
                raise ValueError("Generators must be positive.")

        gens = sorted(set(int(g) for g in gens))
        if reduce(gcd, gens) != 1:
            raise NotCofiniteError(
                "Generators {0} have gcd {1}, the complement of the monoid "
                "is infinite.".format(gens, reduce(gcd, gens))
            )

        smallest = gens[0]
        reach = []
        run = 0
        n = 0
        while True:
            member = n == 0 or any(
                n - g >= 0 and reach[n - g] for g in gens
            )
            reach.append(member)
            run = run + 1 if member else 0
            if run == smallest:
                conductor = n - smallest + 1
                break
            n += 1

        bits = _bits_of([i for i in range(conductor) if reach[i]])
        return cls(bits, conductor)

    @classmethod
    def from_gaps(cls, gaps: Sequence[int]) -> 'NumericalSemigroup':
        """Semigroup whose gap set is exactly `gaps`.

        Raises
        ------
        NotASemigroupError
            Reporting the first pair of members (x, y), x <= y, whose sum is
            listed as a gap.
        """
        for g in gaps:
            if not isinstance(g, (int, np.integer)) or isinstance(g, bool):
                raise TypeError("Gaps must be integers.")
            if g < 1:
                raise ValueError("Gaps must be positive integers.")

        gap_set = set(int(g) for g in gaps)
        if len(gap_set) == 0:
            return cls(0, 0)

        frobenius = max(gap_set)
        conductor = frobenius + 1
        members = [n for n in range(conductor) if n not in gap_set]
        for i, x in enumerate(members[1:], start=1):
            for y in members[i:]:
                if x + y > frobenius:
                    break
                if x + y in gap_set:
                    raise NotASemigroupError((x, y))

        return cls(_bits_of(members), conductor)

    # ------------------------------------------------------------ invariants
    @property
    def conductor(self) -> int:
        """Conductor β: every n >= β is a member."""
        return self._conductor

    @property
    def frobenius(self) -> int:
        """Largest gap γ = β - 1 (-1 for the full monoid)."""
        return self._conductor - 1

    @property
    def gaps(self) -> List[int]:
        return list(self._gaps)

    @property
    def genus(self) -> int:
        """Number of gaps, g = δ."""
        return len(self._gaps)

    @property
    def multiplicity(self) -> int:
        """α = min(S minus {0})."""
        rest = self._bits >> 1
        if rest == 0:
            return max(self._conductor, 1)
        return (rest & -rest).bit_length()

    @property
    def min_generators(self) -> List[int]:
        if self._min_generators is None:
            self._min_generators = tuple(self._compute_min_generators())
        return list(self._min_generators)

    @property
    def bits(self) -> int:
        """Members below the conductor as integer bits."""
        return self._bits

    @property
    def gap_bits(self) -> int:
        return self._full & ~self._bits

    @property
    def window_bits(self) -> int:
        """All positions of the window [0, β)."""
        return self._full

    @property
    def membership_mask(self) -> np.ndarray:
        """Boolean mask over [0, γ + 1]; the last entry (β) is always True."""
        mask = np.ones(self._conductor + 1, dtype=bool)
        mask[list(self._gaps)] = False
        return mask

    @property
    def small_elements(self) -> List[int]:
        """Members strictly below the conductor."""
        return _members_of(self._bits)

    @property
    def is_smooth(self) -> bool:
        """True for the full monoid (no singular point)."""
        return self._conductor == 0

    def contains(self, n: int) -> bool:
        if n < 0:
            return False
        if n >= self._conductor:
            return True
        return bool((self._bits >> n) & 1)

    def __contains__(self, n: int) -> bool:
        return self.contains(n)

    def translate_bits(self, a: int) -> int:
        """Bits of (a + S) inside the window [0, β), for a >= 0."""
        try:
            return self._translates[a]
        except KeyError:
            shifted = (self._bits << a) & self._full
            self._translates[a] = shifted
            return shifted

    def _compute_min_generators(self) -> List[int]:
        if self._conductor == 0:
            return [1]

        alpha = self.multiplicity
        limit = self._conductor + alpha
        gens = []
        for n in range(1, limit):
            if not self.contains(n):
                continue
            decomposable = any(
                self.contains(x) and self.contains(n - x)
                for x in range(alpha, n - alpha + 1)
            )
            if not decomposable:
                gens.append(n)
        return gens

    def is_gorenstein(self) -> bool:
        """Symmetric test through the conductor: β = 2g."""
        return self._conductor == 2 * self.genus

    def is_symmetric(self) -> bool:
        """Symmetric test through the canonical ideal: K and S agree on [0, γ].
        """
        return canonical_ideal(self).bits == self._bits

    def is_nearly_normal(self) -> bool:
        """α = β, i.e. S = {0} ∪ [α, ∞). False for the full monoid."""
        if self.genus == 0:
            return False
        return self.multiplicity == self._conductor

    def to_dict(self) -> SemigroupDict:
        return {
            'min_generators': self.min_generators,
            'gaps': self.gaps,
            'frobenius': self.frobenius,
            'genus': self.genus,
            'gorenstein': self.is_gorenstein(),
            'nearly_normal': self.is_nearly_normal(),
        }

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, NumericalSemigroup):
            return NotImplemented
        return (self._conductor == other._conductor
                and self._bits == other._bits)

    def __hash__(self) -> int:
        return hash((self._conductor, self._bits))

    def __repr__(self) -> str:
        return 'NumericalSemigroup<{0}>'.format(
            ','.join(str(g) for g in self.min_generators)
        )

    def __getstate__(self) -> dict:
        return {'bits': self._bits, 'conductor': self._conductor}

    def __setstate__(self, state: dict) -> None:
        self.__init__(state['bits'], state['conductor'])


def from_generators(gens: Sequence[int]) -> NumericalSemigroup:
    return NumericalSemigroup.from_generators(gens)


def from_gaps(gaps: Sequence[int]) -> NumericalSemigroup:
    return NumericalSemigroup.from_gaps(gaps)


def parse_semigroup(text: str) -> NumericalSemigroup:
    """Parse "5,9,13,17,21" (generators) or "gaps:1,2,3,5,6,9" (gap set)."""
    if not isinstance(text, str):
        raise TypeError("Semigroup text must be a string.")

    body = text.strip().replace(' ', '')
    from_gap_list = body.startswith(_GAPS_TAG)
    if from_gap_list:
        body = body[len(_GAPS_TAG):]

    try:
        values = [int(v) for v in body.split(',') if v != '']
    except ValueError:
        raise ParseError("Can't read '{0}' as a comma-separated integer "
                         "list.".format(text))

    if from_gap_list:
        return NumericalSemigroup.from_gaps(values)

    if len(values) == 0:
        raise EmptyInputError("No generators given in '{0}'.".format(text))
    return NumericalSemigroup.from_generators(values)


class ValueIdeal:
    """Relative ideal V of a semigroup S inside the naturals (V + S ⊆ V).

    Members below `tail_start` are stored as integer bits; every n at or
    above `tail_start` is a member.
    """

    def __init__(self, base: NumericalSemigroup, bits: int, tail_start: int):
        if not isinstance(base, NumericalSemigroup):
            raise TypeError("Base must be a NumericalSemigroup.")
        if tail_start < 0:
            raise ValueError("Tail start can't be negative.")

        below = (1 << tail_start) - 1
        missing = below & ~bits
        self._tail = missing.bit_length()
        self._bits = bits & ((1 << self._tail) - 1)
        self._base = base

    @classmethod
    def from_generators(cls, base: NumericalSemigroup,
                        gens: Sequence[int]) -> 'ValueIdeal':
        """Union of the translates g + S."""
        gens = [int(g) for g in gens]
        if len(gens) == 0:
            raise EmptyInputError("An ideal needs at least one generator.")
        if min(gens) < 0:
            raise ValueError("Ideal generators must be non-negative.")

        tail = min(gens) + base.conductor
        bits = 0
        for g in gens:
            bits |= base.bits << g
        return cls(base, bits, tail)

    @property
    def base(self) -> NumericalSemigroup:
        return self._base

    @property
    def bits(self) -> int:
        return self._bits

    @property
    def tail_start(self) -> int:
        """Smallest t with [t, ∞) contained in the ideal."""
        return self._tail

    @property
    def window(self) -> int:
        return max(self._base.conductor, self._tail)

    @property
    def mask(self) -> np.ndarray:
        """Boolean mask over [0, window]."""
        size = self.window + 1
        mask = np.zeros(size, dtype=bool)
        mask[self._tail:] = True
        members = _members_of(self._bits)
        if members:
            mask[members] = True
        return mask

    def contains(self, n: int) -> bool:
        if n < 0:
            return False
        if n >= self._tail:
            return True
        return bool((self._bits >> n) & 1)

    def __contains__(self, n: int) -> bool:
        return self.contains(n)

    def members_below(self, bound: int) -> List[int]:
        """Members in [0, bound)."""
        return [n for n in range(max(bound, 0)) if self.contains(n)]

    @property
    def min_generators(self) -> List[int]:
        """Minimal S-module generators, sorted."""
        base = self._base
        positive = [s for s in range(1, self.window + base.multiplicity + 1)
                    if base.contains(s)]
        gens = []
        for a in range(self._tail + base.multiplicity):
            if not self.contains(a):
                continue
            reachable = any(
                self.contains(a - s) for s in positive if s <= a
            )
            if not reachable:
                gens.append(a)
        return gens

    def is_ideal(self) -> bool:
        """Checks V + S ⊆ V on the truncated window."""
        base = self._base
        span = self.window + base.conductor + 1
        for v in range(self._tail):
            if not self.contains(v):
                continue
            for s in range(span):
                if base.contains(s) and not self.contains(v + s):
                    return False
        return True

    def contains_base(self) -> bool:
        """S ⊆ V; members of S at or above the tail are always in V."""
        base = self._base
        return (self._tail <= base.conductor
                and base.bits & bits_below(self._tail) & ~self._bits == 0)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ValueIdeal):
            return NotImplemented
        return (self._base == other._base and self._tail == other._tail
                and self._bits == other._bits)

    def __hash__(self) -> int:
        return hash((self._base, self._tail, self._bits))

    def __repr__(self) -> str:
        return 'ValueIdeal({0}, members={1}, tail={2})'.format(
            self._base, _members_of(self._bits), self._tail
        )


def canonical_ideal(S: NumericalSemigroup) -> ValueIdeal:
    """Standard canonical ideal K = {a >= 0 | γ - a not in S}."""
    gamma = S.frobenius
    bits = 0
    for a in range(S.conductor):
        if not S.contains(gamma - a):
            bits |= 1 << a
    return ValueIdeal(S, bits, S.conductor)


def ideal_difference(A: ValueIdeal, B: ValueIdeal) -> ValueIdeal:
    """A - B = {z >= 0 | z + B ⊆ A}.

    Raises
    ------
    BaseMismatchError
        If the ideals are relative to different semigroups.
    """
    if A.base != B.base:
        raise BaseMismatchError("Ideals have different base semigroups: "
                                "{0} and {1}.".format(A.base, B.base))

    explicit = _members_of(B.bits)
    bits = 0
    for z in range(A.tail_start):
        if z + B.tail_start < A.tail_start:
            continue
        if all(A.contains(z + b) for b in explicit):
            bits |= 1 << z
    return ValueIdeal(A.base, bits, A.tail_start)


def _ideal_order_data(S: NumericalSemigroup) -> Tuple[List[int], List[int]]:
    # gaps from largest to smallest, and for each of them the bits of the
    # larger gaps it reaches by adding a nonzero member of S
    gaps_desc = sorted(S.gaps, reverse=True)
    gap_bits = S.gap_bits
    reach = []
    for x in gaps_desc:
        reach.append((S.translate_bits(x) & ~(1 << x)) & gap_bits)
    return gaps_desc, reach


def _walk_ideals(gaps_desc: List[int], reach: List[int], start: int,
                 included: int) -> Iterator[int]:
    stack = [(start, included)]
    # depth-first, excluding before including: ascending order of the bits
    while stack:
        i, chosen = stack.pop()
        if i == len(gaps_desc):
            yield chosen
            continue
        x = gaps_desc[i]
        if reach[i] & ~chosen == 0:
            stack.append((i + 1, chosen | (1 << x)))
        stack.append((i + 1, chosen))


def ideal_prefixes(S: NumericalSemigroup, depth: int) -> List[IdealPrefix]:
    """Feasible decisions on the `depth` largest gaps, in enumeration order.

    Enumerating the ideals of every prefix in turn reproduces the full
    `enumerate_ideals` stream.
    """
    gaps_desc, reach = _ideal_order_data(S)
    depth = max(0, min(depth, len(gaps_desc)))
    head = gaps_desc[:depth]
    head_reach = reach[:depth]
    prefixes = []
    for chosen in _walk_ideals(head, head_reach, 0, 0):
        prefixes.append((depth, chosen))
    return prefixes


def iter_ideal_bits(S: NumericalSemigroup,
                    prefix: Optional[IdealPrefix] = None) -> Iterator[int]:
    """Bits (over [0, β)) of every ideal S ⊆ V ⊆ N, ascending gap-bits order.
    """
    gaps_desc, reach = _ideal_order_data(S)
    start, chosen = prefix if prefix is not None else (0, 0)
    for included in _walk_ideals(gaps_desc, reach, start, chosen):
        yield S.bits | included


def enumerate_ideals(S: NumericalSemigroup,
                     prefix: Optional[IdealPrefix] = None
                     ) -> Iterator[ValueIdeal]:
    """Every relative ideal V with S ⊆ V ⊆ N, each exactly once.

    The order is ascending in the bits of the included gaps V ∩ G (largest
    gap decided first, exclusion before inclusion).
    """
    for bits in iter_ideal_bits(S, prefix):
        yield ValueIdeal(S, bits, S.conductor)


def semigroup_children(S: NumericalSemigroup) -> List[NumericalSemigroup]:
    """Children in the semigroup tree: remove a minimal generator above γ."""
    children = []
    for x in S.min_generators:
        if x <= S.frobenius:
            continue
        conductor = x + 1
        bits = (S.bits | (((1 << conductor) - 1) & ~S.window_bits)) \
            & ~(1 << x)
        children.append(NumericalSemigroup(bits, conductor))
    return children


def enumerate_semigroups(max_genus: int) -> Iterator[NumericalSemigroup]:
    """Every numerical semigroup of genus <= `max_genus`, exactly once.

    Walks the semigroup tree rooted at N level by level (genus by genus);
    children of a node come in increasing order of the removed generator.
    """
    if not isinstance(max_genus, int):
        raise TypeError("Maximum genus must be an integer.")
    if max_genus < 0:
        raise ValueError("Maximum genus can't be negative.")

    level = [NumericalSemigroup(0, 0)]
    for genus in range(max_genus + 1):
        logger.debug("genus %d: %d semigroups", genus, len(level))
        for S in level:
            yield S
        if genus == max_genus:
            break
        level = [child for S in level for child in semigroup_children(S)]


def count_semigroups_by_genus(max_genus: int) -> List[int]:
    counts = [0] * (max_genus + 1)
    for S in enumerate_semigroups(max_genus):
        counts[S.genus] += 1
    return counts
