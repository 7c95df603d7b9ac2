"""Spectral uncertainty laboratory: Python front end to the C++ core."""
import json

from . import _speclab
from ._speclab import (InvalidInput, NumericalFailure, arc_length, delta_exponent,
                       fd_energies, spectrum, tube_measure)

__version__ = _speclab.__version__


def uncertainty_suite(seed=20240601, valid=125, metric="2+sin"):
    return json.loads(_speclab.uncertainty_suite(seed, valid, metric))


def fr_sweep(kmin=3, kmax=7, unit_scale=False):
    return json.loads(_speclab.fr_sweep(kmin, kmax, unit_scale))


def sharpness_sweep(ls, C=0.0):
    return json.loads(_speclab.sharpness_sweep(list(ls), C))


def weyl_scan(manifold, metric="2+sin", lo=10.0, hi=200.0, points=40):
    return json.loads(_speclab.weyl_scan(manifold, metric, lo, hi, points))


def tubular_sweep(Rs, lo=20.0, hi=60.0, mode="stability"):
    return json.loads(_speclab.tubular_sweep(list(Rs), lo, hi, mode))


def br_scan(lo=10.0, hi=50.0, R=32.0, offsets=9):
    return json.loads(_speclab.br_scan(lo, hi, R, offsets))


def run(*args):
    """Run a CLI subcommand in process; returns (exit code, stdout, stderr)."""
    return _speclab.cli([str(a) for a in args])
