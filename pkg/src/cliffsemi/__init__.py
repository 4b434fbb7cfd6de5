import logging
from concurrent.futures import ProcessPoolExecutor
from enum import unique
from typing import Dict, List, Optional, Union

import pandas as pd
from tqdm import tqdm

from .enums import FrameColumnMapperEnum, TypeBaseEnum
from .errors import (BaseMismatchError, ChainConsistencyError,
                     CliffordUndefinedError, CliffsemiError, ConsistencyError,
                     DegreeTooSmallError, EmptyDualError, EmptyInputError,
                     GenusTooLargeError, InvalidPencilError,
                     NotAPencilSourceError, NotASemigroupError,
                     NotCofiniteError, ParseError, SmoothCurveError)
from .scroll import (Pencil, PencilMatrix, ScrollType, canonical_exponents,
                     canonical_model_text, pencil_matrix,
                     realizing_curve_exponents, scroll_type)
from .semigroup import (NumericalSemigroup, ValueIdeal, canonical_ideal,
                        count_semigroups_by_genus, enumerate_ideals,
                        enumerate_semigroups, from_gaps, from_generators,
                        ideal_difference, ideal_prefixes, parse_semigroup)
from .sheaf import (MonomialSheaf, SheafInvariants, clifford_index,
                    contributes_clifford, degree, h0, h1,
                    hom_omega_exponents, is_base_point_free, is_invertible,
                    make_sheaf, scrollar_dimension)
from .solvers import (ClosedForm, CliffordResult, CurveReport, PartialSearch,
                      RelationCheck, TrigonalClass, TrigonalPattern,
                      analyze_curve, classify_trigonal, clifford_of_curve,
                      degree_of_pencil, finish_search, gonality,
                      iter_candidates, nonplanar_family, nonplanar_generators,
                      plane_closed_form, relations_report)
from .solvers.oracle import ORACLE_MAX_GENUS, clifford_brute_oracle

logger = logging.getLogger(__name__)

SURVEY_VERSION = 'v1'
ORACLE_SWEEP_MAX_GENUS = 8

SMOOTH = 'smooth'
UNDEFINED = 'undefined'


@unique
class SurveyFrameMapper(FrameColumnMapperEnum):
    GENUS = 'Genus'
    MIN_GENERATORS = 'Minimal generators'
    GAPS = 'Gaps'
    GORENSTEIN = 'Gorenstein'
    GON = 'Gonality'
    CLIFF = 'Clifford index'
    CLIFFD = 'Clifford dimension'
    TRIGONAL_CLASS = 'Trigonal class'
    CLIFF_IS_GON_MINUS_3 = 'Cliff = gon - 3'
    RELATIONS_OK = 'Relations hold'


@unique
class OracleFrameMapper(FrameColumnMapperEnum):
    GENUS = 'Genus'
    MIN_GENERATORS = 'Minimal generators'
    CLIFF = 'Clifford index'
    ORACLE_CLIFF = 'Oracle Clifford index'
    CLIFFD = 'Clifford dimension'
    ORACLE_CLIFFD = 'Oracle Clifford dimension'
    WITNESSES_AGREE = 'Witness sets agree'
    FORMULAS_AGREE = 'Formulas agree'
    CANDIDATES = 'Candidates checked'
    AGREE = 'Agreement'


SVFM = SurveyFrameMapper
ORFM = OracleFrameMapper

Cell = Union[int, bool, str]


def _join(values: List[int]) -> str:
    return ','.join(str(v) for v in values)


def _semigroup_cells(S: NumericalSemigroup) -> Dict[str, Cell]:
    return {
        SVFM.GENUS.name: S.genus,
        SVFM.MIN_GENERATORS.name: _join(S.min_generators),
        SVFM.GAPS.name: _join(S.gaps),
        SVFM.GORENSTEIN.name: S.is_gorenstein(),
    }


def _report_cells(report: CurveReport) -> Dict[str, Cell]:
    row = _semigroup_cells(report.semigroup)
    row[SVFM.GON.name] = report.gonality
    row[SVFM.TRIGONAL_CLASS.name] = report.trigonal_class.render()
    if report.clifford is None:
        row[SVFM.CLIFF.name] = UNDEFINED
        row[SVFM.CLIFFD.name] = UNDEFINED
        row[SVFM.CLIFF_IS_GON_MINUS_3.name] = UNDEFINED
    else:
        row[SVFM.CLIFF.name] = report.clifford
        row[SVFM.CLIFFD.name] = report.clifford_dimension
        row[SVFM.CLIFF_IS_GON_MINUS_3.name] = \
            report.clifford == report.gonality - 3
    row[SVFM.RELATIONS_OK.name] = report.relations_ok
    return row


def _survey_row(S: NumericalSemigroup) -> Dict[str, Cell]:
    if not S.is_smooth:
        return _report_cells(analyze_curve(S))

    row = _semigroup_cells(S)
    for col in (SVFM.GON, SVFM.CLIFF, SVFM.CLIFFD, SVFM.TRIGONAL_CLASS,
                SVFM.CLIFF_IS_GON_MINUS_3):
        row[col.name] = SMOOTH
    row[SVFM.RELATIONS_OK.name] = True
    return row


def calculate_report_table(report: CurveReport) -> pd.DataFrame:
    """Single-row survey table of an already computed report."""
    return pd.DataFrame([_report_cells(report)], columns=SVFM.columns())


def _rows(func, items: list, jobs: int, progress: bool, desc: str) -> list:
    # results always come back in the order of `items`
    bar = tqdm(total=len(items), desc=desc, disable=not progress)
    rows = []
    if jobs == 1:
        for item in items:
            rows.append(func(item))
            bar.update()
    else:
        with ProcessPoolExecutor(max_workers=jobs) as executor:
            for row in executor.map(func, items):
                rows.append(row)
                bar.update()
    bar.close()
    return rows


def calculate_survey_table(max_genus: int, jobs: int = 1,
                           progress: bool = False) -> pd.DataFrame:
    """One row per semigroup of genus <= `max_genus`, in tree order.

    Parameters
    ----------
    max_genus : int
        Largest genus surveyed.
    jobs : int, optional
        Worker processes, by default 1.
    progress : bool, optional
        Show a progress bar on stderr, by default False.

    Returns
    -------
    pd.DataFrame
        Columns from `SurveyFrameMapper`. Solver columns hold 'smooth' for
        the full monoid and 'undefined' where the Clifford index is.
    """
    if not isinstance(max_genus, int):
        raise TypeError("Maximum genus must be an integer.")
    if max_genus < 0:
        raise ValueError("Maximum genus can't be negative.")
    if not isinstance(jobs, int) or jobs < 1:
        raise ValueError("Number of jobs must be a positive integer.")

    semigroups = list(enumerate_semigroups(max_genus))
    logger.info("surveying %d semigroups up to genus %d", len(semigroups),
                max_genus)
    rows = _rows(_survey_row, semigroups, jobs, progress, 'Survey')
    return pd.DataFrame(rows, columns=SVFM.columns())


def _outcome(func, *args) -> Optional[CliffordResult]:
    try:
        return func(*args)
    except CliffordUndefinedError:
        return None


def _check_candidates(S: NumericalSemigroup) -> Optional[int]:
    # rebuilds every visited sheaf; construction checks the gap-count
    # formulas and Riemann-Roch
    checked = 0
    for cand in iter_candidates(S):
        try:
            F = MonomialSheaf.from_key(S, cand.bits, cand.a_max)
        except ConsistencyError as err:
            logger.error("%s: %s", S, err)
            return None
        inv = F.invariants
        if (inv.h0, inv.h1, inv.degree) != (cand.h0, cand.h1, cand.degree):
            logger.error("%s: search counts differ for %s", S, F.render())
            return None
        checked += 1
    return checked


def _oracle_row(S: NumericalSemigroup) -> Dict[str, Cell]:
    main = _outcome(clifford_of_curve, S)
    brute = _outcome(clifford_brute_oracle, S, S.genus)

    def cells(result):
        if result is None:
            return UNDEFINED, UNDEFINED
        return result.clifford, result.dimension

    cliff, cliffd = cells(main)
    o_cliff, o_cliffd = cells(brute)

    if main is None or brute is None:
        witnesses = main is None and brute is None
    else:
        witnesses = ({F.key for F in main.computing_sheaves}
                     == {F.key for F in brute.computing_sheaves})

    checked = _check_candidates(S)
    formulas = checked is not None

    return {
        ORFM.GENUS.name: S.genus,
        ORFM.MIN_GENERATORS.name: _join(S.min_generators),
        ORFM.CLIFF.name: cliff,
        ORFM.ORACLE_CLIFF.name: o_cliff,
        ORFM.CLIFFD.name: cliffd,
        ORFM.ORACLE_CLIFFD.name: o_cliffd,
        ORFM.WITNESSES_AGREE.name: witnesses,
        ORFM.FORMULAS_AGREE.name: formulas,
        ORFM.CANDIDATES.name: checked if checked is not None else 0,
        ORFM.AGREE.name: (witnesses and formulas and cliff == o_cliff
                          and cliffd == o_cliffd),
    }


def calculate_oracle_table(max_genus: int, jobs: int = 1,
                           progress: bool = False) -> pd.DataFrame:
    """Ideal-based search against the brute-force oracle, genus 1 to cap."""
    if not isinstance(max_genus, int):
        raise TypeError("Maximum genus must be an integer.")
    if max_genus > ORACLE_SWEEP_MAX_GENUS:
        raise GenusTooLargeError(
            "Oracle sweeps are limited to genus {0}, got {1}.".format(
                ORACLE_SWEEP_MAX_GENUS, max_genus)
        )
    if max_genus < 1:
        raise ValueError("Oracle sweeps need genus at least 1.")

    semigroups = [S for S in enumerate_semigroups(max_genus) if S.genus > 0]
    rows = _rows(_oracle_row, semigroups, jobs, progress, 'Oracle')
    table = pd.DataFrame(rows, columns=ORFM.columns())
    logger.info("oracle: %d of %d semigroups agree",
                int(table[ORFM.AGREE.name].sum()), len(table))
    return table
