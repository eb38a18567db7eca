"""Spectral analysis of Gribov block operator matrices."""

import json as _json

from . import _core
from ._core import (
    GribovError,
    __version__,
    build_g,
    build_h0,
    build_h0_beta,
    build_h1,
    build_s,
    build_scalar_gribov,
    counting,
    eigenbasis_condition,
    eigenvalues,
    eigenvectors,
    example_p6,
)

__all__ = [
    "GribovError",
    "__version__",
    "assemble",
    "build_g",
    "build_h0",
    "build_h0_beta",
    "build_h1",
    "build_s",
    "build_scalar_gribov",
    "counting",
    "eigenbasis_condition",
    "eigenvalues",
    "eigenvectors",
    "example_p6",
    "report",
    "spec_schema",
    "stabilized_spectrum",
    "validate_spec",
]


def _text(spec):
    return spec if isinstance(spec, str) else _json.dumps(spec)


def spec_schema():
    return _json.loads(_core.spec_schema())


def validate_spec(spec):
    """List of (field, reason) pairs; empty when the spec is accepted."""
    return _core.validate_spec(_text(spec))


def assemble(spec, trunc):
    return _core.assemble(_text(spec), trunc)


def stabilized_spectrum(spec, trunc, growth=2.0, rel_tol=1e-6):
    return _core.stabilized_spectrum(_text(spec), trunc, growth, rel_tol)


def report(command, spec_path="", **options):
    """Runs a report command on a spec file and returns the parsed document."""
    return _json.loads(_core.report(command, str(spec_path), **options))
