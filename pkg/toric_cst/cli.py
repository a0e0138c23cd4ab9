"""
Command line surface of the pipeline.

Exit codes: 0 success, 1 unexpected failure, 2 usage or configuration error, 3 file or format error,
4 numerical failure.
"""
import argparse
import datetime
import json
import logging
import sys

from toric_cst import __version__, log
from toric_cst.command import COMMAND_STAGE, Command
from toric_cst.config.loader import ConfigLoader
from toric_cst.exceptions import CommandExecutionFailureException, ConfigurationException, DomainException, \
    FileFormatException, NumericalFailureException, ShapeMismatchException
from toric_cst.harmonics import SphereGrid
from toric_cst.harmonics.transform import roundtrip_error
from toric_cst.kernel.diagnostics import kernel_report, render_report, write_report_csv
from toric_cst.phantoms.metrics import nmae, nmse
from toric_cst.phantoms.noise import RNG_ALGORITHM
from toric_cst.reconstruct.solver import LCurvePoint
from toric_cst.session import Session
from toric_cst.storage import FILE_KIND
from toric_cst.storage.formats import read_data, read_matrix_set, read_volume, write_data, write_harmonics, \
    write_matrix_set, write_volume
from toric_cst.storage.manifest import RunManifest
from toric_cst.storage.slices import SLICE_FORMAT, slice_export

logger = logging.getLogger(__name__)

EXIT_INTERNAL = 1
EXIT_USAGE = 2
EXIT_IO = 3
EXIT_NUMERICAL = 4


class Run:
    """
    State of one command line invocation: the session (when a configuration is given) and the manifest inputs
    """

    def __init__(self, args):
        self.args = args
        self.session = None
        self.config_hash = None
        self.inputs = []
        self.outputs = []
        self.results = None
        config_path = getattr(args, 'config', None)
        if config_path:
            config, self.config_hash = ConfigLoader.load_file(config_path)
            self.session = Session(config, threads=args.threads, cache_dir=getattr(args, 'cache_dir', None))
            self.inputs.append(config_path)

    def execute(self, name: str, stage: str, func, *args, **kwargs):
        if self.session is not None:
            return self.session.execute(Command(name=name, stage=stage, func=func), *args, **kwargs)
        return Command(name=name, stage=stage, func=func).run(*args, **kwargs)

    def manifest(self) -> RunManifest:
        session = self.session
        return RunManifest(
            stage=self.args.command,
            version=__version__,
            created_at=datetime.datetime.now(datetime.timezone.utc),
            config=session.config.serialize() if session else None,
            config_hash=self.config_hash,
            inputs=self.inputs,
            outputs=self.outputs,
            rng={'algorithm': RNG_ALGORITHM, 'seed': session.config.noise.seed} if session else None,
            timings=dict(session.timings) if session else {},
            results=self.results
        )

    def finish(self):
        manifest = self.manifest()
        for path in self.outputs:
            manifest.write(path)
        if not self.outputs:
            # stdout carries the results only
            print(json.dumps(manifest.serialize(), sort_keys=True), file=sys.stderr)
        if self.results is not None:
            print(json.dumps(self.results, indent=2, sort_keys=True))


def _write_json(path: str, document):
    with open(path, 'w') as stream:
        json.dump(document, stream, indent=2, sort_keys=True)


def _file_kind(path: str) -> bytes:
    with open(path, 'rb') as stream:
        magic = stream.read(5)
    if magic not in FILE_KIND.get_available_kinds():
        raise FileFormatException('{} is not a toric_cst file'.format(path))
    return magic


def run_phantom(run: Run):
    volume = run.session.phantoms.make()
    write_volume(run.args.out, volume)
    run.outputs.append(run.args.out)


def run_project(run: Run):
    volume = read_volume(run.args.input)
    run.inputs.append(run.args.input)
    data = run.session.projections.project(volume, true_surface=run.args.true_surface)
    write_data(run.args.out, data)
    run.outputs.append(run.args.out)


def run_noise(run: Run):
    noise = run.session.config.noise
    if run.args.snr_db is not None:
        noise.snr_db = run.args.snr_db
    if run.args.seed is not None:
        noise.seed = run.args.seed
    data = read_data(run.args.input)
    run.inputs.append(run.args.input)
    noisy, epsilon = run.session.phantoms.noise(data, noise)
    write_data(run.args.out, noisy)
    run.outputs.append(run.args.out)
    run.results = {'snr_db': noise.snr_db, 'epsilon_percent': epsilon, 'rng': RNG_ALGORITHM, 'seed': noise.seed}


def run_build_matrices(run: Run):
    matrices = run.session.matrices.build()
    write_matrix_set(run.args.out, matrices)
    run.outputs.append(run.args.out)


def _write_lcurve(path: str, points):
    with open(path, 'w') as stream:
        stream.write(','.join(LCurvePoint._fields) + '\n')
        for point in points:
            stream.write(','.join('{:.17g}'.format(value) for value in point) + '\n')


def run_reconstruct(run: Run):
    args, session = run.args, run.session
    if args.lambda_ is not None:
        session.config.scan.lambda_ = args.lambda_
    data = read_data(args.input)
    run.inputs.append(args.input)
    if args.matrices:
        matrices = read_matrix_set(args.matrices)
        run.inputs.append(args.matrices)
    else:
        matrices = session.matrices.build()
    result = session.reconstructions.reconstruct(data, matrices)
    write_volume(args.out, result.volume)
    run.outputs.append(args.out)
    if args.coefficients:
        write_harmonics(args.coefficients, result.coefficients, radii=matrices.p_grid)
        run.outputs.append(args.coefficients)
    if args.residuals_csv:
        with open(args.residuals_csv, 'w') as stream:
            stream.write('l,m,residual\n')
            N = session.config.scan.N
            for l in range(N + 1):
                for m in range(-l, l + 1):
                    stream.write('{},{},{:.17g}\n'.format(l, m, result.residuals[l, m + N]))
        run.outputs.append(args.residuals_csv)
    if args.lcurve_csv:
        lambdas = args.lcurve_lambdas or session.config.recon.lcurve_lambdas or [1e-4, 1e-3, 1e-2, 1e-1, 1.0]
        _write_lcurve(args.lcurve_csv, session.reconstructions.lcurve(data, matrices, lambdas))
        run.outputs.append(args.lcurve_csv)
    run.results = {'lambda': result.lambdas if len(set(result.lambdas)) > 1 else result.lambda_,
                   'timings': result.timings}


def run_metrics(run: Run):
    reference, estimate = read_volume(run.args.reference), read_volume(run.args.estimate)
    run.inputs.extend([run.args.reference, run.args.estimate])
    run.results = run.execute('metrics', COMMAND_STAGE.METRICS, lambda f, g: {'nmse': nmse(f, g), 'nmae': nmae(f, g)},
                              reference.values, estimate.values)
    if run.args.out:
        _write_json(run.args.out, run.results)
        run.outputs.append(run.args.out)


def run_kernel_check(run: Run):
    args = run.args
    if run.session is not None:
        scan = run.session.config.scan
        R, r_m, r_M = scan.R, scan.r_m, scan.r_M
        l_max = args.l_max if args.l_max is not None else scan.N
    else:
        if None in (args.R, args.r_m, args.r_M):
            raise ConfigurationException('kernel-check needs --config or all of --R, --r-m, --r-M')
        R, r_m, r_M = args.R, args.r_m, args.r_M
        l_max = args.l_max if args.l_max is not None else 20
    rows = run.execute('kernel-report', COMMAND_STAGE.KERNEL_CHECK, kernel_report, l_max, R, r_m, r_M)
    print(render_report(rows))
    if args.csv:
        write_report_csv(rows, args.csv)
        run.outputs.append(args.csv)
    ratios = [row.ratio for row in rows]
    run.results = {'roots': len(rows), 'min_ratio': min(ratios, default=None), 'max_ratio': max(ratios, default=None)}


def run_sht_roundtrip(run: Run):
    args = run.args
    grid = SphereGrid(args.N, n_theta=args.n_theta, sampling=args.sampling)
    error = run.execute('sht-roundtrip', COMMAND_STAGE.SHT_ROUNDTRIP, roundtrip_error, grid, args.count, args.seed)
    run.results = {'N': args.N, 'n_theta': grid.n_theta, 'sampling': args.sampling, 'max_error': error}
    if args.out:
        _write_json(args.out, run.results)
        run.outputs.append(args.out)


def run_slice(run: Run):
    args = run.args
    source = read_volume(args.input) if _file_kind(args.input) == FILE_KIND.VOLUME else read_data(args.input)
    run.inputs.append(args.input)
    run.execute('slice', COMMAND_STAGE.SLICE, slice_export, source, args.axis, args.index, args.out, args.format)
    run.outputs.append(args.out)


HANDLERS = {
    COMMAND_STAGE.PHANTOM: run_phantom,
    COMMAND_STAGE.PROJECT: run_project,
    COMMAND_STAGE.NOISE: run_noise,
    COMMAND_STAGE.BUILD_MATRICES: run_build_matrices,
    COMMAND_STAGE.RECONSTRUCT: run_reconstruct,
    COMMAND_STAGE.METRICS: run_metrics,
    COMMAND_STAGE.KERNEL_CHECK: run_kernel_check,
    COMMAND_STAGE.SHT_ROUNDTRIP: run_sht_roundtrip,
    COMMAND_STAGE.SLICE: run_slice
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='toric-cst', description='Compton scattering tomography on toric manifolds')
    parser.add_argument('--threads', type=int, default=None, help='worker cap (default TORIC_CST_THREADS or CPUs)')
    parser.add_argument('--quiet', action='store_true', help='warnings and errors only')
    parser.add_argument('--json-log', action='store_true', help='one JSON object per log record')
    parser.add_argument('--version', action='version', version=__version__)
    commands = parser.add_subparsers(dest='command', metavar='command')
    commands.required = True

    command = commands.add_parser(COMMAND_STAGE.PHANTOM, help='voxelize the configured phantom')
    command.add_argument('--config', required=True)
    command.add_argument('--out', required=True)

    command = commands.add_parser(COMMAND_STAGE.PROJECT, help='simulate toric projections of a volume')
    command.add_argument('--config', required=True)
    command.add_argument('--in', dest='input', required=True)
    command.add_argument('--out', required=True)
    command.add_argument('--true-surface', action='store_true', help='geometric surface integrals')

    command = commands.add_parser(COMMAND_STAGE.NOISE, help='add Gaussian noise at a given SNR')
    command.add_argument('--config', required=True)
    command.add_argument('--in', dest='input', required=True)
    command.add_argument('--out', required=True)
    command.add_argument('--snr-db', type=float, default=None)
    command.add_argument('--seed', type=int, default=None)

    command = commands.add_parser(COMMAND_STAGE.BUILD_MATRICES, help='assemble the matrices A_0..A_N')
    command.add_argument('--config', required=True)
    command.add_argument('--out', required=True)
    command.add_argument('--cache-dir', default=None)

    command = commands.add_parser(COMMAND_STAGE.RECONSTRUCT, help='invert toric projections')
    command.add_argument('--config', required=True)
    command.add_argument('--in', dest='input', required=True)
    command.add_argument('--out', required=True)
    command.add_argument('--matrices', default=None, help='matrix set file, assembled when absent')
    command.add_argument('--cache-dir', default=None)
    command.add_argument('--lambda', dest='lambda_', type=float, default=None)
    command.add_argument('--coefficients', default=None, help='also store f_lm(r_q)')
    command.add_argument('--residuals-csv', default=None)
    command.add_argument('--lcurve-csv', default=None)
    command.add_argument('--lcurve-lambdas', type=float, nargs='+', default=None)

    command = commands.add_parser(COMMAND_STAGE.METRICS, help='NMSE and NMAE of an estimate')
    command.add_argument('reference')
    command.add_argument('estimate')
    command.add_argument('--out', default=None)

    command = commands.add_parser(COMMAND_STAGE.KERNEL_CHECK, help='kernel diagonal roots and gradient ratios')
    command.add_argument('--config', default=None)
    command.add_argument('--R', type=float, default=None)
    command.add_argument('--r-m', dest='r_m', type=float, default=None)
    command.add_argument('--r-M', dest='r_M', type=float, default=None)
    command.add_argument('--l-max', type=int, default=None)
    command.add_argument('--csv', default=None)

    command = commands.add_parser(COMMAND_STAGE.SHT_ROUNDTRIP, help='spherical harmonics transform roundtrip error')
    command.add_argument('--N', type=int, required=True)
    command.add_argument('--n-theta', type=int, default=None)
    command.add_argument('--sampling', choices=['gauss', 'uniform'], default='gauss')
    command.add_argument('--count', type=int, default=1)
    command.add_argument('--seed', type=int, default=0)
    command.add_argument('--out', default=None)

    command = commands.add_parser(COMMAND_STAGE.SLICE, help='export one plane as PGM or CSV')
    command.add_argument('input')
    command.add_argument('--axis', type=int, default=2)
    command.add_argument('--index', type=int, required=True)
    command.add_argument('--format', choices=[SLICE_FORMAT.PGM, SLICE_FORMAT.CSV], default=SLICE_FORMAT.PGM)
    command.add_argument('--out', required=True)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE
    log.configure(quiet=args.quiet, json_log=args.json_log)
    try:
        run = Run(args)
        HANDLERS[args.command](run)
        run.finish()
    except ConfigurationException as e:
        print('configuration error: {}'.format(e), file=sys.stderr)
        return EXIT_USAGE
    except (FileFormatException, OSError) as e:
        print('file error: {}'.format(e), file=sys.stderr)
        return EXIT_IO
    except (NumericalFailureException, DomainException, ShapeMismatchException,
            CommandExecutionFailureException) as e:
        print('numerical error: {}'.format(e), file=sys.stderr)
        return EXIT_NUMERICAL
    except Exception as e:
        logger.exception('{} failed unexpectedly'.format(args.command))
        print('internal error: {!r}'.format(e), file=sys.stderr)
        return EXIT_INTERNAL
    return 0


if __name__ == '__main__':
    sys.exit(main())
