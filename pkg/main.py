#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Main entry point for cyclekit

Commands:
    render SCENE|DIR|FIGURE [-o OUT]
    verify SUITE|all [--samples N] [--seed S] [--tol T]
    spectrum MATRIX-FILE|example [--svg OUT] [--poly c0,c1,...]
    measure KIND A B [CD] [--sigma S] [--sigma-breve S] [--s S]
    analytic cauchy|taylor|dirac [ARGS]
    help

Exit codes: 0 success (all checks pass), 1 a check failed, 2 usage or input error.
"""

import argparse
import logging
import os
import re
import sys
from typing import List, Optional

from config import init_settings, setup_logging
from cycle_space import FsccParams
from errors import CycleKitError
from hypercomplex import as_sigma
from validation import parse_point, validate_input

logger = logging.getLogger('CycleKit.Main')

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2

_NEGATIVE = re.compile(r'^-[\d.]')


class UsageError(Exception):
    """Bad command-line arguments."""


def print_usage():
    """Print usage information."""
    print("Usage: cyclekit COMMAND [ARGS] [OPTIONS]")
    print("")
    print("Commands:")
    print("  render SCENE [-o OUT]            - Render a scene file, a directory of scenes,")
    print("                                     or a built-in figure (k-orbits, zero-radius,")
    print("                                     orthogonality, s-orthogonality) to SVG")
    print("  verify SUITE [--samples N] [--seed S] [--tol T]")
    print("                                   - Run a verification suite (moebius, fscc,")
    print("                                     orthogonality, ghosts, metric, spectrum,")
    print("                                     analytic) or 'all'")
    print("  spectrum FILE [--svg OUT] [--poly c0,c1,...]")
    print("                                   - Jet spectrum of a matrix file ('example' for")
    print("                                     the built-in block matrix)")
    print("  measure KIND A B [CD]            - distance, extremal, centre, focus or")
    print("                                     perpendicular; points as u,v")
    print("  analytic cauchy U [DEGREE]       - Cauchy integral of z^DEGREE at U = re,im")
    print("  analytic taylor A [COUNT]        - Taylor coefficients of the coherent state at A")
    print("  analytic dirac                   - Dirac residual order under grid refinement")
    print("  help                             - Show this help message")
    print("")
    print("Options:")
    print("  -o, --output OUT    Output file or directory")
    print("  --sigma S           Point-space sigma: -1, 0, 1 or e, p, h (default -1)")
    print("  --sigma-breve S     Cycle-space sigma (default: same as --sigma)")
    print("  --s S               Sign parameter s (default 1)")
    print("  --config PATH       Settings file (default config.yaml)")
    print("")
    print("Examples:")
    print("  cyclekit render k-orbits -o k_orbits.svg")
    print("  cyclekit verify fscc --samples 100 --seed 7")
    print("  cyclekit spectrum example --svg spectrum.svg")
    print("  cyclekit measure focus 0,1 2,0.5 --sigma h")


def _protect_negative(argv: List[str]) -> List[str]:
    """Keep '-1,0.5' style values from being read as options."""
    return [' ' + arg if _NEGATIVE.match(arg) else arg for arg in argv]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description='cyclekit - cycles, jet spectra and Hardy-space numerics',
                                     add_help=False)
    parser.add_argument('command', nargs='?', default='help')
    parser.add_argument('args', nargs='*', help='Command arguments')
    parser.add_argument('-o', '--output', default=None)
    parser.add_argument('--svg', default=None)
    parser.add_argument('--samples', type=int, default=None)
    parser.add_argument('--seed', type=int, default=None)
    parser.add_argument('--tol', type=float, default=None)
    parser.add_argument('--poly', default=None)
    parser.add_argument('--length', default='centre')
    parser.add_argument('--sigma', default='-1')
    parser.add_argument('--sigma-breve', dest='sigma_breve', default=None)
    parser.add_argument('--s', type=float, default=1.0)
    parser.add_argument('--config', default=None)
    return parser


def _write(text: str, target: Optional[str]) -> None:
    if target:
        with open(target, 'w', encoding='utf-8', newline='\n') as f:
            f.write(text)
        logger.info(f"Wrote {target}")
    else:
        sys.stdout.write(text)


def command_render(arguments: List[str], options, settings) -> int:
    from render import BUILTIN_FIGURES, render_builtin, render_directory, render_file

    if len(arguments) != 1:
        raise UsageError("render takes one scene file, directory or figure name")
    source = arguments[0]
    precision = settings.render.precision
    if os.path.isdir(source):
        results = render_directory(source, options.output, precision)
        for path, result in results.items():
            print(f"{path} {result}")
        return EXIT_OK if all(not r.startswith('Error') for r in results.values()) else EXIT_USAGE
    if source in BUILTIN_FIGURES:
        svg = render_builtin(source, settings.render.samples_per_curve, precision)
    else:
        svg = render_file(source, precision)
    _write(svg, options.output)
    return EXIT_OK


def command_verify(arguments: List[str], options, settings) -> int:
    from verification import default_runner

    runner = default_runner()
    if len(arguments) != 1:
        raise UsageError("verify takes one suite name or 'all'")
    name = arguments[0].lower()
    if name == 'all':
        verdicts = runner.run_all(options.samples, options.seed, options.tol)
    else:
        verdicts = runner.run(name, options.samples, options.seed, options.tol)
    for verdict in verdicts:
        print(verdict.line())
    return EXIT_OK if all(v.passed for v in verdicts) else EXIT_FAIL


def command_spectrum(arguments: List[str], options, settings) -> int:
    from jet_calculus import (HoloMap, apply_poly, example_matrix, jet_spectrum,
                              mapped_jordan_structure, parse_matrix_text, spectral_map)
    from render import render_spectrum

    if len(arguments) != 1:
        raise UsageError("spectrum takes one matrix file or 'example'")
    if arguments[0] == 'example':
        matrix = example_matrix()
    else:
        try:
            with open(arguments[0], 'r', encoding='utf-8') as f:
                text = f.read()
        except OSError as e:
            raise UsageError(f"Cannot read matrix file {arguments[0]}: {str(e)}") from e
        is_valid, message = validate_input(text, 'matrix', max_order=settings.numerics.max_matrix_order)
        if not is_valid:
            raise UsageError(message)
        matrix = parse_matrix_text(text)

    numerics = settings.numerics
    spectrum = jet_spectrum(matrix, rank_tol=numerics.jet_rank_tol, max_order=numerics.max_matrix_order,
                            cluster_tol=numerics.jet_cluster_tol)
    for point in spectrum:
        print(f"{point.lam.real:.9f} {point.lam.imag:.9f} {point.k}")

    if options.poly:
        try:
            phi = HoloMap([complex(c.strip()) for c in options.poly.split(',')])
        except ValueError as e:
            raise UsageError(f"Cannot read polynomial coefficients '{options.poly}'") from e
        image = spectral_map(spectrum, phi)
        print("# spectral map")
        for point in image:
            print(f"{point.lam.real:.9f} {point.lam.imag:.9f} {point.k}")
        for point in image.clamped:
            print(f"# clamped {point.lam.real:.9f} {point.lam.imag:.9f} {point.k}")
        print("# jordan structure of phi(a)")
        mapped = jet_spectrum(apply_poly(phi, matrix), rank_tol=numerics.jet_rank_tol,
                              max_order=numerics.max_matrix_order, cluster_tol=numerics.jet_cluster_tol)
        for point in mapped:
            print(f"{point.lam.real:.9f} {point.lam.imag:.9f} {point.k}")
        predicted = mapped_jordan_structure(spectrum, phi)
        logger.info(f"Predicted structure has {len(predicted)} block(s)")

    if options.svg:
        _write(render_spectrum(spectrum, settings.render.precision), options.svg)
    return EXIT_OK


def command_measure(arguments: List[str], options, params: FsccParams, settings) -> int:
    from metric_geometry import (LengthKind, distance_sq, extremal_distance_sq, is_perpendicular,
                                 length)

    if len(arguments) < 3:
        raise UsageError("measure takes KIND A B")
    kind_name = arguments[0].lower()
    try:
        A, B = parse_point(arguments[1]), parse_point(arguments[2])
    except ValueError as e:
        raise UsageError(str(e)) from e
    sigma = as_sigma(options.sigma)

    if kind_name == 'distance':
        print(f"distance_sq {distance_sq(A, B, sigma):.12g}")
    elif kind_name == 'extremal':
        print(f"extremal_distance_sq {extremal_distance_sq(A, B, sigma, params.sigma_breve):.12g}")
    elif kind_name == 'centre':
        print(f"length {length(A, B, LengthKind.from_centre(sigma, params.sigma_breve), params):.12g}")
    elif kind_name == 'focus':
        print(f"length {length(A, B, LengthKind.from_focus(sigma), params):.12g}")
    elif kind_name == 'perpendicular':
        if len(arguments) != 4:
            raise UsageError("measure perpendicular takes A B CD")
        try:
            CD = parse_point(arguments[3])
        except ValueError as e:
            raise UsageError(str(e)) from e
        kinds = {'distance': LengthKind.distance(sigma),
                 'centre': LengthKind.from_centre(sigma, params.sigma_breve),
                 'focus': LengthKind.from_focus(sigma)}
        if options.length not in kinds:
            raise UsageError(f"--length must be one of {', '.join(kinds)}")
        numerics = settings.numerics
        perpendicular = is_perpendicular((A, B), CD, kinds[options.length], params, step=numerics.fd_step,
                                         confirm_step=numerics.fd_confirm_step, tol=numerics.perpendicular_tol)
        print(f"perpendicular {perpendicular}")
    else:
        raise UsageError(f"Unknown measure kind: {kind_name}")
    return EXIT_OK


def command_analytic(arguments: List[str], options, settings) -> int:
    from hardy_analytic import (CircleFunction, HalfPlanePatch, cauchy_transform, dirac_residual,
                                observed_order, taylor_coeffs, taylor_coeffs_by_quadrature)

    if not arguments:
        raise UsageError("analytic takes cauchy, taylor or dirac")
    what = arguments[0].lower()
    size = settings.analytic.grid_size
    try:
        if what == 'cauchy':
            u = complex(*parse_point(arguments[1]))
            degree = int(arguments[2]) if len(arguments) > 2 else 1
            f = CircleFunction.from_callable(lambda z: z ** degree, size)
            value = cauchy_transform(f, u)
            print(f"cauchy {value.real:.15g} {value.imag:.15g}")
            print(f"exact {(u ** degree).real:.15g} {(u ** degree).imag:.15g}")
        elif what == 'taylor':
            a = complex(*parse_point(arguments[1]))
            count = int(arguments[2]) if len(arguments) > 2 else 8
            closed = taylor_coeffs(a, count)
            quadrature = taylor_coeffs_by_quadrature(a, count, size)
            for n, (x, y) in enumerate(zip(closed, quadrature), start=1):
                print(f"{n} {x.real:.15g} {x.imag:.15g} {abs(x - y):.3e}")
        elif what == 'dirac':
            patch_settings = settings.analytic.patch
            errors = []
            for points in (33, 65, 129):
                patch = HalfPlanePatch(patch_settings.xmin, patch_settings.xmax, patch_settings.ymin,
                                       patch_settings.ymax, points)
                values = patch.sample(lambda grid: 1.0 / (grid + 1j))
                ix, iy = patch.index_of(2.1j)
                errors.append(abs(dirac_residual(patch, values, ix, iy)))
                print(f"grid {points} residual {errors[-1]:.6e}")
            print("orders " + ' '.join(f"{order:.4f}" for order in observed_order(errors)))
        else:
            raise UsageError(f"Unknown analytic command: {what}")
    except (IndexError, ValueError) as e:
        if isinstance(e, CycleKitError):
            raise
        raise UsageError(f"Bad arguments for analytic {what}: {str(e)}") from e
    return EXIT_OK


def main(argv: Optional[List[str]] = None) -> int:
    """Parse arguments, run one command and return its exit code."""
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else argv
    try:
        options = parser.parse_args(_protect_negative(argv))
    except SystemExit:
        print_usage()
        return EXIT_USAGE
    command = options.command.lower()
    arguments = [arg.strip() for arg in options.args]

    try:
        settings = init_settings(options.config)
        setup_logging(settings.logging.level, settings.logging.file)
        if options.seed is not None:
            settings.verification.seed = options.seed

        if command == 'help':
            print_usage()
            return EXIT_OK

        elif command == 'render':
            return command_render(arguments, options, settings)

        elif command == 'verify':
            return command_verify(arguments, options, settings)

        elif command == 'spectrum':
            return command_spectrum(arguments, options, settings)

        elif command == 'measure':
            sigma = as_sigma(options.sigma.strip())
            sigma_breve = as_sigma(options.sigma_breve.strip()) if options.sigma_breve else sigma
            return command_measure(arguments, options, FsccParams(sigma_breve, options.s), settings)

        elif command == 'analytic':
            return command_analytic(arguments, options, settings)

        else:
            print(f"Unknown command: {command}")
            print_usage()
            return EXIT_USAGE

    except UsageError as e:
        logger.error(f"Usage error: {str(e)}")
        print(f"Error: {str(e)}", file=sys.stderr)
        return EXIT_USAGE
    except CycleKitError as e:
        logger.error(f"{type(e).__name__}: {str(e)}")
        print(f"Error: {str(e)}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
