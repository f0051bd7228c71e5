import sys
import math
import logging
import argparse
from concurrent.futures import ThreadPoolExecutor
import numpy as np

from geometry.algebra import SU2Element, SO3Element, klein_omega_components
from geometry.geodesics import GeodesicParams, geodesic_batch, geodesic_trace
from distance.su2_distance import distance_su2
from distance.so3_distance import distance_so3
from distance.cutlocus import classify_cut_locus_so3, in_cut_locus_su2_L2
from data_processing.loader import parse_matrix, parse_su2_components
from data_processing.writer import write_csv, write_json
from cli.suites import SUITES, SuiteContext, run_suites
from utils.config import Settings, load_grid_preset
from utils.errors import SubRiemannError, UsageError
from utils.helpers import format_number_custom, make_rng

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2

SU2_DIAMETER = 2.0 * math.pi
SO3_DIAMETER_BOUND = math.pi * math.sqrt(3.0)
SPHERE_TOL = 1e-6

SU2_COLUMNS = ['A_re', 'A_im', 'B_re', 'B_im']
SO3_COLUMNS = [f'm{i}{j}' for i in range(1, 4) for j in range(1, 4)]


def _print_fields(fields: dict):
    for key, value in fields.items():
        print(f"{key}={format_number_custom(value)}")


class CliInstance:
    """Argument surface of the `srdist` command; one handler per subcommand."""

    def __init__(self, settings: Settings):
        self.settings = settings
        self.parser = argparse.ArgumentParser(
            prog='srdist',
            description="Sub-Riemannian distances, geodesics and cut loci on SU(2) and SO(3).")
        self.parser.add_argument('--verbose', action='store_true', help="Log at DEBUG level to stderr")
        self._setup_commands()

    def _setup_commands(self):
        sub = self.parser.add_subparsers(dest='command', required=True)

        dist = sub.add_parser('dist', help="Distance from the identity")
        dist.add_argument('group', choices=['su2', 'so3'])
        for flag in ('--a-re', '--a-im', '--b-re', '--b-im'):
            dist.add_argument(flag, type=float)
        dist.add_argument('--matrix', help="Row-major rotation 'm11,...,m33'")
        dist.add_argument('--json', action='store_true', help="JSON instead of key=value lines")
        dist.set_defaults(handler=self.cmd_dist)

        geodesic = sub.add_parser('geodesic', help="Sample a geodesic from the identity")
        geodesic.add_argument('--group', choices=['su2', 'so3'], default='su2')
        geodesic.add_argument('--phi0', type=float, required=True)
        geodesic.add_argument('--beta', type=float, required=True)
        geodesic.add_argument('--t-max', type=float, required=True)
        geodesic.add_argument('--steps', type=int, required=True)
        geodesic.add_argument('--format', choices=['csv', 'json'], default='csv')
        geodesic.add_argument('--out', default=None)
        geodesic.set_defaults(handler=self.cmd_geodesic)

        sphere = sub.add_parser('sphere', help="Sample the metric sphere of a given radius")
        sphere.add_argument('--group', choices=['su2', 'so3'], default='su2')
        sphere.add_argument('--radius', type=float, required=True)
        sphere.add_argument('--samples', type=int, required=True)
        sphere.add_argument('--seed', type=int, default=None)
        sphere.add_argument('--format', choices=['csv', 'json'], default='csv')
        sphere.add_argument('--out', default=None)
        sphere.set_defaults(handler=self.cmd_sphere)

        cutlocus = sub.add_parser('cutlocus', help="Cut-locus stratum of an element")
        target = cutlocus.add_mutually_exclusive_group(required=True)
        target.add_argument('--matrix', help="Row-major rotation 'm11,...,m33'")
        target.add_argument('--su2', help="'a_re,a_im,b_re,b_im'")
        cutlocus.set_defaults(handler=self.cmd_cutlocus)

        verify = sub.add_parser('verify', help="Run verification suites")
        verify.add_argument('--suite', choices=['all'] + list(SUITES), default='all')
        verify.add_argument('--n', type=int, default=200)
        verify.add_argument('--seed', type=int, default=0)
        verify.add_argument('--preset', default=None, help="Oracle grid preset (default from SRDIST_ORACLE_PRESET)")
        verify.add_argument('--workers', type=int, default=None)
        verify.set_defaults(handler=self.cmd_verify)

    def run(self, argv: list[str] | None = None) -> int:
        try:
            args = self.parser.parse_args(argv)
        except SystemExit as e:
            # argparse exits 0 for --help and 2 for bad arguments
            return EXIT_OK if not e.code else EXIT_USAGE

        if args.verbose:
            logging.getLogger().setLevel(logging.DEBUG)

        try:
            return args.handler(args)
        except (SubRiemannError, ValueError) as e:
            logger.debug(f"Command '{args.command}' failed", exc_info=True)
            print(str(e), file=sys.stderr)
            return EXIT_USAGE

    def cmd_dist(self, args) -> int:
        if args.group == 'su2':
            components = (args.a_re, args.a_im, args.b_re, args.b_im)
            if any(c is None for c in components):
                raise UsageError("Error: dist su2 needs --a-re, --a-im, --b-re and --b-im.")
            element = SU2Element(*components)
            result = distance_su2(element)
            params = dict(zip(['a_re', 'a_im', 'b_re', 'b_im'], components))
        else:
            if args.matrix is None:
                raise UsageError("Error: dist so3 needs --matrix.")
            element = parse_matrix(args.matrix)
            result = distance_so3(element)
            params = {'matrix': args.matrix}

        logger.info(f"dist {args.group}: {result.case_label.value}, t={result.t!r}")
        if args.json:
            write_json(args.group, 'dist', params, [result.as_dict()])
        else:
            _print_fields(result.as_dict())
        return EXIT_OK

    def cmd_geodesic(self, args) -> int:
        if args.steps <= 0:
            raise UsageError(f"Error: --steps must be positive, got {args.steps}.")
        if not (math.isfinite(args.t_max) and args.t_max > 0):
            raise UsageError(f"Error: --t-max must be positive, got {args.t_max}.")

        times, components = geodesic_trace(GeodesicParams(args.phi0, args.beta), args.t_max, args.steps)
        if args.group == 'su2':
            columns = SU2_COLUMNS
            values = np.stack(components, axis=-1)
        else:
            columns = SO3_COLUMNS
            values = klein_omega_components(*components).reshape(len(times), 9)

        records = [{'t': float(t), **dict(zip(columns, row.tolist()))} for t, row in zip(times, values)]
        params = {'phi0': args.phi0, 'beta': args.beta, 't_max': args.t_max, 'steps': args.steps}
        self._write(args, 'geodesic', params, records, ['t'] + columns)
        return EXIT_OK

    def _sphere_record(self, group: str, radius: float, phi0: float, beta: float, components) -> dict | None:
        if group == 'su2':
            element = SU2Element(*components)
            result = distance_su2(element)
            fields = dict(zip(SU2_COLUMNS, element.as_array().tolist()))
        else:
            m = klein_omega_components(*components)
            result = distance_so3(SO3Element(m))
            fields = dict(zip(SO3_COLUMNS, m.ravel().tolist()))
        if abs(result.t - radius) > SPHERE_TOL:
            return None
        return {**fields, 'r': result.t, 'phi0': phi0, 'beta': beta, 'case': result.case_label.value}

    def cmd_sphere(self, args) -> int:
        diameter = SU2_DIAMETER if args.group == 'su2' else SO3_DIAMETER_BOUND
        radius = args.radius
        if not (math.isfinite(radius) and 0.0 < radius <= diameter):
            raise UsageError(f"Error: --radius must lie in (0, {diameter!r}] for {args.group}, got {radius}.")
        if args.samples <= 0:
            raise UsageError(f"Error: --samples must be positive, got {args.samples}.")

        rng = make_rng(args.seed)
        # geodesics with 2 pi / sqrt(1+beta^2) < radius are past their cut time
        window = math.sqrt(max(0.0, (2.0 * math.pi / radius) ** 2 - 1.0))
        phis = rng.uniform(0.0, 2.0 * math.pi, args.samples)
        betas = rng.uniform(-window, window, args.samples)
        endpoints = np.stack(geodesic_batch(phis, betas, radius), axis=-1)

        jobs = [(args.group, radius, float(p), float(b), row.tolist()) for p, b, row in zip(phis, betas, endpoints)]
        if self.settings.workers > 1:
            with ThreadPoolExecutor(max_workers=self.settings.workers) as executor:
                candidates = list(executor.map(lambda job: self._sphere_record(*job), jobs))
        else:
            candidates = [self._sphere_record(*job) for job in jobs]
        records = [r for r in candidates if r is not None]

        empirical_max = max((r['r'] for r in records), default=0.0)
        print(f"sphere {args.group} r={radius!r}: kept {len(records)}, discarded {len(jobs) - len(records)}, "
              f"max distance {empirical_max!r}",
              file=sys.stderr)

        columns = (SU2_COLUMNS if args.group == 'su2' else SO3_COLUMNS) + ['r', 'phi0', 'beta', 'case']
        params = {'radius': radius, 'samples': args.samples, 'seed': args.seed}
        self._write(args, 'sphere', params, records, columns)
        return EXIT_OK

    def cmd_cutlocus(self, args) -> int:
        if args.matrix is not None:
            classification = classify_cut_locus_so3(parse_matrix(args.matrix))
            fields = {'tag': classification.tag.value, **classification.witness}
        else:
            g = parse_su2_components(args.su2)
            fields = {
                'tag': in_cut_locus_su2_L2(g).value,
                're_a': abs(g.a_re),
                'abs_b': g.abs_b,
                'im_a': abs(g.a_im),
            }
        _print_fields(fields)
        return EXIT_OK

    def cmd_verify(self, args) -> int:
        if args.n <= 0:
            raise UsageError(f"Error: --n must be positive, got {args.n}.")
        workers = args.workers if args.workers is not None else self.settings.workers
        if workers < 1:
            raise UsageError(f"Error: --workers must be at least 1, got {workers}.")

        grid = load_grid_preset(args.preset or self.settings.oracle_preset)
        ctx = SuiteContext(n=args.n, rng=make_rng(args.seed), grid=grid, workers=workers)
        names = list(SUITES) if args.suite == 'all' else [args.suite]

        results = run_suites(names, ctx)
        for result in results:
            print(result.line())
        failed = [r for r in results if not r.ok]
        print(f"{len(results) - len(failed)}/{len(results)} checks passed")
        return EXIT_OK if not failed else EXIT_CHECK_FAILED

    def _write(self, args, command: str, params: dict, records: list[dict], columns: list[str]):
        if args.format == 'json':
            write_json(args.group, command, params, records, args.out)
        else:
            write_csv(records, columns, args.out)
