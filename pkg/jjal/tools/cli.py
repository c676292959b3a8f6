import argparse
import logging
import sys

import jjal
from jjal import exceptions
from jjal.io import synth
from jjal.io.pipeline import PipelineConfig, run_pipeline


logger = logging.getLogger(__name__)

EXIT_CODES = {
    'config': 2,
    'input': 3,
    'physics': 4,
    'numerics': 5,
    'fit': 6,
    'internal': 70,
}

# Flags that belong to the run, not to the command options.
RUN_FLAGS = ('func', 'command', 'design', 'out', 'seed', 'format', 'verbose', 'inputs', 'set')


def _value(text):
    for kind in (int, float):
        try:
            return kind(text)
        except ValueError:
            pass
    return text


def _assignments(items):
    options = {}
    for item in items or []:
        key, separator, value = item.partition('=')
        if not separator:
            raise exceptions.ConfigError('Expected key=value, got {!r}.'.format(item), item)
        options[key.strip().replace('-', '_')] = _value(value.strip())
    return options


def _run(args):
    options = {key: value for key, value in vars(args).items() if key not in RUN_FLAGS}
    options.update(_assignments(getattr(args, 'set', None)))

    config = PipelineConfig(
        command=args.command,
        options=options,
        output_directory=args.out,
        design=args.design,
        inputs=list(getattr(args, 'inputs', None) or []),
        seed=args.seed,
        output_format=args.format,
    )
    document = run_pipeline(config)

    for name, table in sorted(document.payload['tables'].items()):
        if isinstance(table, str):
            print('{}: {}'.format(name, table))
    print('result: {}.json'.format(config.stem))


def _common():
    parser = argparse.ArgumentParser(add_help=False)
    parser.add_argument('--design', help='design file or bundled sample name (sample_i, sample_ii, sample_iii)')
    parser.add_argument('--out', default='.', help='output directory')
    parser.add_argument('--seed', type=int, default=0, help='seed of the synthetic generators')
    parser.add_argument('--format', choices=['csv', 'json'], default='csv', help='table output format')
    parser.add_argument('-v', '--verbose', action='count', default=0, help='-v for info, -vv for debug logging')
    return parser


def _add(subparsers, name, command, common, help_text):
    parser = subparsers.add_parser(name, parents=[common], help=help_text)
    parser.set_defaults(func=_run, command=command)
    return parser


def _build_parser():
    common = _common()
    parser = argparse.ArgumentParser(prog='jjal', description=jjal.__description__)
    parser.add_argument('--version', action='version', version='%(prog)s {}'.format(jjal.__version__))
    subparsers = parser.add_subparsers(title='commands', required=True)

    parser_dispersion = _add(subparsers, 'dispersion', 'dispersion', common, 'eigenmodes and dimers of a design')
    parser_dispersion.add_argument('--flux', type=float, nargs='+', default=[0.0], help='flux bias in Phi_0')
    parser_dispersion.add_argument('--fmax-ghz', dest='fmax_ghz', type=float, default=9.0,
                                   help='dimer cut-off frequency')

    parser_kerr = _add(subparsers, 'kerr', 'kerr', common, 'self- and cross-Kerr coefficients')
    parser_kerr.add_argument('--retained', type=int, default=8, help='number of lowest modes')
    parser_kerr.add_argument('--flux', type=float, default=0.0)

    parser_s11 = _add(subparsers, 's11', 's11', common, 'reflection sweep and resonances')
    parser_s11.add_argument('--flux', type=float, default=0.0)
    parser_s11.add_argument('--start-ghz', dest='start_ghz', type=float, default=1.0)
    parser_s11.add_argument('--stop-ghz', dest='stop_ghz', type=float, default=9.0)
    parser_s11.add_argument('--step-mhz', dest='step_mhz', type=float, default=1.0)

    for name, help_text in (('fit-fluxmap', 'fit a flux modulation map'), ('fit-dimer', 'fit a dimer reflection'),
                            ('fit-gain', 'fit a gain profile')):
        fit = _add(subparsers, name, name, common, help_text)
        fit.add_argument('inputs', nargs=1, metavar='CSV')

    parser_noise = _add(subparsers, 'noise-vis', 'noise-vis', common, 'noise visibility from two spectra')
    parser_noise.add_argument('inputs', nargs=2, metavar=('PUMP_ON_CSV', 'PUMP_OFF_CSV'))

    parser_calibrate = subparsers.add_parser('calibrate', help='qubit readout calibrations')
    calibrations = parser_calibrate.add_subparsers(title='calibrations', required=True)

    transmon = _add(calibrations, 'transmon', 'calibrate transmon', common, 'transmon levels')
    chi = _add(calibrations, 'chi', 'calibrate chi', common, 'dispersive shift')
    for level_parser in (transmon, chi):
        level_parser.add_argument('--ej-ghz', dest='ej_ghz', type=float, required=True)
        level_parser.add_argument('--ec-ghz', dest='ec_ghz', type=float, required=True)
        level_parser.add_argument('--ng', type=float, default=0.0)
    transmon.add_argument('--levels', type=int, default=4)
    chi.add_argument('--fr-ghz', dest='fr_ghz', type=float, required=True)
    chi.add_argument('--g-mhz', dest='g_mhz', type=float, required=True)
    chi.add_argument('--kappa-mhz', dest='kappa_mhz', type=float, default=1.0)

    nmeas = _add(calibrations, 'nmeas', 'calibrate nmeas', common, 'measurement photon number')
    nmeas.add_argument('--nbar', type=float, required=True)
    nmeas.add_argument('--kappa-mhz', dest='kappa_mhz', type=float, required=True)
    nmeas.add_argument('--gamma-mhz', dest='gamma_mhz', type=float, default=0.0)
    nmeas.add_argument('--tm-ns', dest='tm_ns', type=float, required=True)
    nmeas.add_argument('--sigma', type=float)
    nmeas.add_argument('--chain-efficiency', dest='chain_efficiency', type=float, default=0.5)

    efficiency = _add(calibrations, 'efficiency', 'calibrate efficiency', common, 'measurement efficiency')
    efficiency.add_argument('--sigma', type=float, required=True)
    efficiency.add_argument('--chain-efficiency', dest='chain_efficiency', type=float, default=0.5)

    flux = _add(calibrations, 'flux', 'calibrate flux', common, 'photon flux of a tone')
    flux.add_argument('--power-dbm', dest='power_dbm', type=float, required=True)
    flux.add_argument('--freq-ghz', dest='freq_ghz', type=float, required=True)

    pointer = _add(calibrations, 'pointer', 'calibrate pointer', common, 'pointer state angle')
    pointer.add_argument('--chi-khz', dest='chi_khz', type=float, required=True)
    pointer.add_argument('--kappa-mhz', dest='kappa_mhz', type=float, required=True)

    stark = _add(calibrations, 'stark', 'calibrate stark', common, 'photon number from AC-Stark shifts')
    stark.add_argument('inputs', nargs=1, metavar='CSV')
    stark.add_argument('--fr0-hz', dest='fr0_hz', type=float, required=True)
    stark.add_argument('--chi-khz', dest='chi_khz', type=float, required=True)

    ramsey = _add(calibrations, 'ramsey', 'calibrate ramsey', common, 'Ramsey fringe fit')
    ramsey.add_argument('inputs', nargs=1, metavar='CSV')
    ramsey.add_argument('--mode', choices=['single', 'double'], default='single')

    jumps = _add(calibrations, 'jumps', 'calibrate jumps', common, 'latching filter on a quantum jump record')
    jumps.add_argument('inputs', nargs=1, metavar='CSV')
    jumps.add_argument('--means', required=True, help='state means, for example g=0,e=8')
    jumps.add_argument('--sigma', type=float, required=True, help='band half width')

    temp = _add(calibrations, 'temp', 'calibrate temp', common, 'qubit temperature from populations')
    temp.add_argument('inputs', nargs='*', metavar='JSON', help='populations file, in place of --populations')
    temp.add_argument('--populations', help='comma separated, ground state first')
    temp.add_argument('--energies-ghz', dest='energies_ghz', help='comma separated level energies')
    temp.add_argument('--f01-ghz', dest='f01_ghz', type=float)
    temp.add_argument('--ej-ghz', dest='ej_ghz', type=float)
    temp.add_argument('--ec-ghz', dest='ec_ghz', type=float)

    parser_synth = subparsers.add_parser('synth', help='seeded synthetic data')
    generators = parser_synth.add_subparsers(title='generators', required=True)
    for name in synth.GENERATORS:
        generator = _add(generators, name, 'synth {}'.format(name), common, '{} data'.format(name))
        generator.add_argument('--set', action='append', metavar='KEY=VALUE', help='generator option')

    return parser


def main(argv=None):

    """
        **Entry point of the ``jjal`` command**

        :param argv: Arguments, ``sys.argv[1:]`` when omitted
        :type argv: list
        :return: Exit code, 0 on success
        :rtype: int
    """

    args = _build_parser().parse_args(argv)
    level = {0: logging.WARNING, 1: logging.INFO}.get(args.verbose, logging.DEBUG)
    logging.basicConfig(level=level, format='%(levelname)s %(name)s: %(message)s')

    try:
        args.func(args)
    except exceptions.JJALError as e:
        print('error[{}]: {}'.format(e.category, e.message), file=sys.stderr)
        return EXIT_CODES[e.category]
    except OSError as e:
        print('error[input]: {}'.format(e), file=sys.stderr)
        return EXIT_CODES['input']
    except Exception as e:
        logger.debug('Unexpected failure', exc_info=True)
        print('error[internal]: {}'.format(e), file=sys.stderr)
        return EXIT_CODES['internal']
    return 0


if __name__ == '__main__':
    sys.exit(main())
