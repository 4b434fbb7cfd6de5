import argparse
import logging
import sys
from typing import Dict, List, Optional

from cliffsemi import (CliffordUndefinedError, ConsistencyError, CurveReport,
                       OracleFrameMapper, Pencil, SurveyFrameMapper,
                       analyze_curve, calculate_oracle_table,
                       calculate_report_table, calculate_survey_table,
                       clifford_brute_oracle, make_sheaf, pencil_matrix,
                       scroll_type)

from .base import (EXIT_INPUT, EXIT_INTERNAL, EXIT_OK, configure_logging,
                   exit_code_for, my_exception_hook)
from .models.config import (Command, InputKind, OutputFormat, RunConfig,
                            parse_int_list)
from .views import render

logger = logging.getLogger(__name__)

PROG = 'cliffsemi'


class UsageError(Exception):
    pass


class ArgumentParser(argparse.ArgumentParser):
    """Parser whose usage errors leave with the input error code."""

    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write('{0}: error: {1}\n'.format(self.prog, message))
        sys.exit(EXIT_INPUT)


def _common_options() -> argparse.ArgumentParser:
    common = ArgumentParser(add_help=False)
    common.add_argument('--format', choices=OutputFormat.values_list(),
                        default=OutputFormat.TEXT.value,
                        help="output format (default: text)")
    common.add_argument('--max-genus', type=int, default=None,
                        help="genus bound (default: CLIFFSEMI_MAX_GENUS "
                             "or 25)")
    common.add_argument('--jobs', type=int, default=1,
                        help="worker processes (default: 1)")
    common.add_argument('--no-progress', action='store_true',
                        help="hide progress bars")
    common.add_argument('-v', '--verbose', action='count', default=0,
                        help="more logging (-v info, -vv debug)")
    common.add_argument('--log-file', default=None,
                        help="write the log to this file instead of stderr")
    return common


def _input_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument('semigroup', nargs='?', default=None,
                        help="generators '5,9,13' or 'gaps:1,2,5'")
    group = parser.add_mutually_exclusive_group()
    group.add_argument('--gens', help="comma-separated generators")
    group.add_argument('--gaps', help="comma-separated gaps")
    group.add_argument('--plane-family', type=int, metavar='ALPHA',
                       help="plane curve <α,α+1>")
    group.add_argument('--nonplanar-family', type=int, metavar='ALPHA',
                       help="nonplanar curve <α,2α-1,...,α²-α+1>")


def build_parser() -> ArgumentParser:
    parser = ArgumentParser(
        prog=PROG,
        description="Clifford index, gonality and scrolls of unicuspidal "
                    "monomial curves."
    )
    sub = parser.add_subparsers(dest='command', metavar='COMMAND')
    sub.required = True
    common = _common_options()

    analyze = sub.add_parser('analyze', parents=[common],
                             help="full report on one curve")
    _input_options(analyze)
    analyze.add_argument('--with-oracle', action='store_true',
                         help="cross-check with the brute-force search")

    scroll = sub.add_parser('scroll', parents=[common],
                            help="pencil matrix and scroll type")
    _input_options(scroll)
    scroll.add_argument('--sheaf', required=True,
                        help="sheaf exponents a1,...,an of O<1,t^a1,...>")
    scroll.add_argument('--pencil', required=True,
                        help="section exponents u,v")

    sub.add_parser('survey', parents=[common],
                   help="table over all semigroups up to --max-genus")
    sub.add_parser('oracle', parents=[common],
                   help="search against brute force up to --max-genus")
    return parser


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    config = RunConfig(Command(args.command))
    config.output_format = OutputFormat(args.format)
    config.jobs = args.jobs
    config.progress = not args.no_progress and sys.stderr.isatty()
    if args.max_genus is not None:
        config.max_genus = args.max_genus

    if config.command in (Command.ANALYZE, Command.SCROLL):
        selectors = [
            (InputKind.GENERATORS, args.gens),
            (InputKind.GAPS, args.gaps),
            (InputKind.PLANE_FAMILY, args.plane_family),
            (InputKind.NONPLANAR_FAMILY, args.nonplanar_family),
        ]
        chosen = [(k, v) for k, v in selectors if v is not None]
        if args.semigroup is not None:
            chosen.append((InputKind.TEXT, args.semigroup))
        if len(chosen) != 1:
            raise UsageError("give exactly one semigroup: positional "
                             "generators, --gens, --gaps or a family")
        kind, value = chosen[0]
        config.set_input(kind, str(value))

    if config.command == Command.ANALYZE:
        config.with_oracle = args.with_oracle
    if config.command == Command.SCROLL:
        config.sheaf = parse_int_list(args.sheaf)
        config.pencil = parse_int_list(args.pencil)
    if config.command in (Command.SURVEY, Command.ORACLE) \
            and args.max_genus is None:
        raise UsageError("{0} needs --max-genus".format(
            config.command.value))
    return config


# ----------------------------------------------------------------- commands
def cmd_analyze(config: RunConfig) -> str:
    S = config.semigroup()
    report: CurveReport = analyze_curve(S, config.jobs)
    if report.clifford is None:
        raise CliffordUndefinedError(
            "Clifford index of {0} is undefined (genus {1}, gonality "
            "{2}).".format(S, S.genus, report.gonality)
        )

    failed = [c.name for c in report.relations if not c.holds]
    if failed:
        raise ConsistencyError("Relations failed for {0}: {1}.".format(
            S, ', '.join(failed)))

    extras: Dict[str, bool] = {}
    form = config.closed_form()
    if form is not None:
        if not form.matches(report):
            raise ConsistencyError(
                "{0} disagrees with its family's closed form.".format(S))
        extras['closed_form_agrees'] = True

    if config.with_oracle:
        oracle = clifford_brute_oracle(S, S.genus)
        keys = {F.key for F in report.computing_sheaves}
        agree = (oracle.clifford == report.clifford
                 and oracle.dimension == report.clifford_dimension
                 and {F.key for F in oracle.computing_sheaves} == keys)
        if not agree:
            raise ConsistencyError(
                "Brute-force search disagrees on {0}: Clifford index {1}, "
                "dimension {2}.".format(S, oracle.clifford, oracle.dimension)
            )
        extras['oracle_agrees'] = True

    fmt = config.output_format
    if fmt == OutputFormat.JSON:
        return render.report_json(report, extras)
    if fmt == OutputFormat.CSV:
        return render.report_csv(calculate_report_table(report))
    return render.report_text(
        report, {k.replace('_', ' '): 'true' for k in extras}
    )


def cmd_scroll(config: RunConfig) -> str:
    S = config.semigroup()
    sheaf = make_sheaf(S, config.sheaf)
    u, v = config.pencil
    pencil = Pencil(sheaf, u, v)
    matrix = pencil_matrix(pencil)
    scroll = scroll_type(pencil)
    if not pencil.is_standard:
        logger.info("pencil (%d,%d) is not invertible at the singular point",
                    pencil.u, pencil.v)

    fmt = config.output_format
    if fmt == OutputFormat.JSON:
        return render.scroll_json(pencil, matrix, scroll)
    if fmt == OutputFormat.CSV:
        return render.scroll_csv(pencil, matrix, scroll)
    return render.scroll_text(pencil, matrix, scroll)


def cmd_survey(config: RunConfig) -> str:
    table = calculate_survey_table(config.max_genus, config.jobs,
                                   config.progress)
    fmt = config.output_format
    if fmt == OutputFormat.JSON:
        return render.table_json(table)
    if fmt == OutputFormat.CSV:
        return render.table_csv(table, render.SURVEY_HEADER)
    return render.table_text(table, SurveyFrameMapper)


def cmd_oracle(config: RunConfig) -> str:
    table = calculate_oracle_table(config.max_genus, config.jobs,
                                   config.progress)
    agree = bool(table[OracleFrameMapper.AGREE.name].all())

    fmt = config.output_format
    if fmt == OutputFormat.JSON:
        out = render.table_json(table)
    elif fmt == OutputFormat.CSV:
        out = render.table_csv(table, render.ORACLE_HEADER)
    else:
        out = render.table_text(table, OracleFrameMapper) + \
            'oracle: {0} semigroups up to genus {1}, all agree\n'.format(
                len(table), config.max_genus)

    if not agree:
        for _, row in table[~table[OracleFrameMapper.AGREE.name]].iterrows():
            logger.error("mismatch: %s", row.to_dict())
        raise ConsistencyError("Brute-force oracle disagrees with the ideal "
                               "search.")
    return out


_COMMANDS = {
    Command.ANALYZE: cmd_analyze,
    Command.SCROLL: cmd_scroll,
    Command.SURVEY: cmd_survey,
    Command.ORACLE: cmd_oracle,
}


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(args.verbose, args.log_file)

    try:
        config = _config_from_args(args)
        out = _COMMANDS[config.command](config)
    except UsageError as err:
        parser.print_usage(sys.stderr)
        sys.stderr.write('{0}: error: {1}\n'.format(PROG, err))
        return EXIT_INPUT
    except Exception as err:
        code = exit_code_for(err)
        if code == EXIT_INTERNAL and not isinstance(err, ConsistencyError):
            raise
        logger.debug("command failed", exc_info=True)
        sys.stderr.write('{0}: error: {1}\n'.format(PROG, err))
        return code

    sys.stdout.write(out)
    return EXIT_OK


def run() -> None:
    sys.excepthook = my_exception_hook
    sys.exit(main())


if __name__ == '__main__':
    run()
