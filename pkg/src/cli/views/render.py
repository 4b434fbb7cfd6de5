import json
from typing import Dict, List, Optional

import pandas as pd

from cliffsemi import (SURVEY_VERSION, CurveReport, MonomialSheaf, Pencil,
                       PencilMatrix, ScrollType, SurveyFrameMapper,
                       canonical_model_text)

SURVEY_HEADER = '# cliffsemi-survey {0}'.format(SURVEY_VERSION)
ORACLE_HEADER = '# cliffsemi-oracle {0}'.format(SURVEY_VERSION)


def _flag(value: bool) -> str:
    return 'true' if value else 'false'


def _join(values: List[int]) -> str:
    return ','.join(str(v) for v in values)


def _sheaf_list(sheaves: List[MonomialSheaf]) -> str:
    return ', '.join(F.render() for F in sheaves) if sheaves else '-'


# ------------------------------------------------------------------ analyze
def report_text(report: CurveReport, extras: Dict[str, str]) -> str:
    S = report.semigroup
    lines = [
        'semigroup: <{0}>'.format(_join(S.min_generators)),
        'gaps: {0}'.format(_join(S.gaps)),
        'genus: {0}  frobenius: {1}  multiplicity: {2}  conductor: {3}'
        .format(S.genus, S.frobenius, S.multiplicity, S.conductor),
        'gorenstein: {0}  nearly normal: {1}'.format(
            _flag(S.is_gorenstein()), _flag(S.is_nearly_normal())),
        'gonality: {0} (pencils {1})'.format(
            report.gonality,
            ', '.join(MonomialSheaf(S, [a]).render()
                      for a in report.gonality_witnesses)),
        'clifford index: {0}'.format(report.clifford),
        'clifford dimension: {0}'.format(report.clifford_dimension),
        'clifford witnesses: {0}'.format(
            _sheaf_list(report.clifford_witnesses)),
        'computing sheaves: {0}'.format(len(report.computing_sheaves)),
        'trigonal class: {0}'.format(report.trigonal_class.render()),
    ]

    failed = [c.name for c in report.relations if not c.holds]
    if failed:
        lines.append('relations: FAILED {0}'.format(', '.join(failed)))
    else:
        lines.append('relations: all {0} hold'.format(len(report.relations)))

    lines.append('canonical model: {0}'.format(canonical_model_text(S)))
    lines.append('realizing curve: (1:{0})'.format(':'.join(
        't^{0}'.format(n) for n in report.realizing_exponents)))

    for key, value in extras.items():
        lines.append('{0}: {1}'.format(key, value))
    return '\n'.join(lines) + '\n'


def report_json(report: CurveReport, extras: Dict[str, bool]) -> str:
    data = dict(report.to_dict())
    data.update(extras)
    return json.dumps(data, indent=2) + '\n'


# ------------------------------------------------------------------- scroll
def scroll_record(pencil: Pencil, matrix: PencilMatrix,
                  scroll: ScrollType) -> dict:
    return {
        'sheaf': pencil.sheaf.to_dict(),
        'sheaf_text': pencil.sheaf.render(),
        'dual_exponents': list(matrix.columns),
        'pencil': [pencil.u, pencil.v],
        'nonstandard_pencil': not pencil.is_standard,
        'matrix': matrix.to_list(),
        'matrix_text': matrix.render(),
        'scroll': scroll.to_dict(),
    }


def scroll_text(pencil: Pencil, matrix: PencilMatrix,
                scroll: ScrollType) -> str:
    inv = pencil.sheaf.invariants
    flag = '' if pencil.is_standard else ' nonstandard_pencil'
    lines = [
        'sheaf: {0}'.format(pencil.sheaf.render()),
        'h0: {0}  h1: {1}  deg: {2}  scd: {3}'.format(
            inv.h0, inv.h1, inv.degree, inv.scrollar_dim),
        'dual exponents: {0}'.format(_join(matrix.columns)),
        'pencil: ({0},{1}){2}'.format(pencil.u, pencil.v, flag),
        'matrix: {0}'.format(matrix.render()),
        'scroll: {0}'.format(scroll.render()),
    ]
    return '\n'.join(lines) + '\n'


def scroll_json(pencil: Pencil, matrix: PencilMatrix,
                scroll: ScrollType) -> str:
    return json.dumps(scroll_record(pencil, matrix, scroll), indent=2) + '\n'


def scroll_csv(pencil: Pencil, matrix: PencilMatrix,
               scroll: ScrollType) -> str:
    frame = pd.DataFrame([{
        'sheaf': pencil.sheaf.render(),
        'u': pencil.u,
        'v': pencil.v,
        'nonstandard_pencil': not pencil.is_standard,
        'matrix': matrix.render(),
        'scroll': scroll.render(),
    }])
    return frame.to_csv(index=False)


# ------------------------------------------------------------------- tables
def table_text(table: pd.DataFrame, mapper) -> str:
    if table.empty:
        return '(no rows)\n'
    shown = table.rename(columns=dict(zip(mapper.columns(),
                                          mapper.headers())))
    return shown.to_string(index=False) + '\n'


def table_csv(table: pd.DataFrame, header: Optional[str]) -> str:
    shown = table.rename(columns=lambda c: c.lower())
    body = shown.to_csv(index=False)
    if header is None:
        return body
    return header + '\n' + body


def table_json(table: pd.DataFrame) -> str:
    records = json.loads(table.rename(columns=lambda c: c.lower())
                         .to_json(orient='records'))
    return json.dumps({'schema_version': 1, 'rows': records}, indent=2) + '\n'


def report_csv(table: pd.DataFrame) -> str:
    """Single analyze report in the survey row layout."""
    return table_csv(table[SurveyFrameMapper.columns()], SURVEY_HEADER)
