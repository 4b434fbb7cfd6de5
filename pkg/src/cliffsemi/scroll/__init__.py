import logging
from dataclasses import dataclass
from typing import List, Tuple, TypedDict

import numpy as np

from ..errors import (ChainConsistencyError, EmptyDualError,
                      InvalidPencilError, SmoothCurveError)
from ..semigroup import NumericalSemigroup
from ..sheaf import MonomialSheaf, scrollar_dimension

logger = logging.getLogger(__name__)


def canonical_exponents(S: NumericalSemigroup) -> List[int]:
    """Exponents γ - G of the canonical coordinates x0, x1, ..., x(g-1)."""
    if S.genus == 0:
        raise SmoothCurveError("A smooth rational curve has no canonical "
                               "model.")
    return sorted(S.frobenius - gap for gap in S.gaps)


def canonical_model_text(S: NumericalSemigroup) -> str:
    """Parametrization "(1:t^5:...:t^18)" of the canonical model."""
    terms = ['1' if b == 0 else 't^{0}'.format(b)
             for b in canonical_exponents(S)]
    return '({0})'.format(':'.join(terms))


def realizing_curve_exponents(S: NumericalSemigroup) -> List[int]:
    """Exponents n1 < ... < nm of a unicuspidal monomial curve with
    semigroup S, ending in two consecutive integers (smooth at infinity).
    """
    if S.genus == 0:
        raise SmoothCurveError("The full monoid has no singular point.")

    exps = S.min_generators
    if len(exps) >= 2 and exps[-1] - exps[-2] == 1:
        return exps
    if S.contains(exps[-1] + 1):
        return exps + [exps[-1] + 1]
    return exps + [S.conductor, S.conductor + 1]


@dataclass(frozen=True)
class Pencil:
    """Two global sections t^u, t^v (u < v) of a monomial sheaf."""
    sheaf: MonomialSheaf
    u: int
    v: int

    def __post_init__(self):
        if self.u == self.v:
            raise InvalidPencilError("Pencil sections must be distinct.")
        if self.u > self.v:
            u, v = self.v, self.u
            object.__setattr__(self, 'u', u)
            object.__setattr__(self, 'v', v)

        sections = [0] + self.sheaf.sections
        for e in (self.u, self.v):
            if e not in sections:
                raise InvalidPencilError(
                    "t^{0} is not a global section of {1}.".format(
                        e, self.sheaf.render())
                )

    @property
    def step(self) -> int:
        return self.v - self.u

    @property
    def is_standard(self) -> bool:
        """Both sections invertible at the singular point (u, v in S)."""
        S = self.sheaf.base
        return S.contains(self.u) and S.contains(self.v)


class ScrollDict(TypedDict):
    invariants: List[int]
    dim: int
    degree: int
    ambient: int
    smooth: bool
    text: str


@dataclass(frozen=True)
class ScrollType:
    """Rational normal scroll S(m1, ..., md) in P^N, N = e + d - 1."""
    invariants: Tuple[int, ...]

    @property
    def dim(self) -> int:
        return len(self.invariants)

    @property
    def degree_e(self) -> int:
        return sum(self.invariants)

    @property
    def ambient(self) -> int:
        return self.degree_e + self.dim - 1

    @property
    def is_smooth(self) -> bool:
        return all(m > 0 for m in self.invariants)

    def render(self) -> str:
        return 'S({0}) in P^{1}'.format(
            ','.join(str(m) for m in self.invariants), self.ambient
        )

    def to_dict(self) -> ScrollDict:
        return {
            'invariants': list(self.invariants),
            'dim': self.dim,
            'degree': self.degree_e,
            'ambient': self.ambient,
            'smooth': self.is_smooth,
            'text': self.render(),
        }


@dataclass
class PencilMatrix:
    """2 x h1 matrix of canonical coordinate indices, entry (r, j) the
    index of column exponent j plus u (r = 0) or v (r = 1).
    """
    columns: List[int]
    entries: np.ndarray

    def render(self) -> str:
        rows = ['[{0}]'.format(','.join('x{0}'.format(k) for k in row))
                for row in self.entries.tolist()]
        return '[{0}]'.format(','.join(rows))

    def to_list(self) -> List[List[int]]:
        return self.entries.tolist()


def _columns(p: Pencil) -> List[int]:
    columns = p.sheaf.hom_omega_exponents()
    if len(columns) == 0:
        raise EmptyDualError(
            "{0} has h1 = 0, the dual module is empty.".format(
                p.sheaf.render())
        )
    return columns


def pencil_matrix(p: Pencil) -> PencilMatrix:
    columns = _columns(p)
    coords = canonical_exponents(p.sheaf.base)
    index = {b: k for k, b in enumerate(coords)}

    entries = np.zeros((2, len(columns)), dtype=int)
    for r, shift in enumerate((p.u, p.v)):
        for j, c in enumerate(columns):
            try:
                entries[r, j] = index[c + shift]
            except KeyError:
                raise ChainConsistencyError(
                    "Exponent {0} is not a canonical coordinate.".format(
                        c + shift)
                )
    return PencilMatrix(columns, entries)


def scroll_type(p: Pencil) -> ScrollType:
    """Scroll swept by the pencil around the canonical model.

    The column exponents split into maximal chains c, c + step, ... with
    step = v - u; each chain length is one scroll invariant, padded with
    zeros up to the scrollar dimension.
    """
    columns = _columns(p)
    d = scrollar_dimension(p.sheaf)
    present = set(columns)

    chains = []
    for c in columns:
        if c - p.step in present:
            continue
        length = 1
        while c + length * p.step in present:
            length += 1
        chains.append(length)

    if len(chains) > d:
        raise ChainConsistencyError(
            "{0} chains exceed the scrollar dimension {1}.".format(
                len(chains), d)
        )

    scroll = ScrollType(tuple(sorted(chains + [0] * (d - len(chains)),
                                     reverse=True)))

    genus = p.sheaf.base.genus
    if scroll.degree_e != p.sheaf.invariants.h1:
        raise ChainConsistencyError(
            "Scroll degree {0} differs from h1 = {1}.".format(
                scroll.degree_e, p.sheaf.invariants.h1)
        )
    if scroll.ambient != genus - 1:
        raise ChainConsistencyError(
            "Scroll {0} does not sit in P^{1}.".format(
                scroll.render(), genus - 1)
        )
    logger.debug("pencil (%d,%d) of %s: %s", p.u, p.v, p.sheaf.render(),
                 scroll.render())
    return scroll
