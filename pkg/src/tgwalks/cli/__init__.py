"""Command-line layer: file formats, generators, bench harness, entry point."""

from .files import (
    FormatError,
    emit_instance,
    emit_rep,
    emit_space_time,
    parse_input,
    parse_instance,
    parse_rep,
)
from .generate import canonical_times, lb_arr, lb_dep, random_positive, zero_heavy
from .main import main

__all__ = [
    "FormatError",
    "canonical_times",
    "emit_instance",
    "emit_rep",
    "emit_space_time",
    "lb_arr",
    "lb_dep",
    "main",
    "parse_input",
    "parse_instance",
    "parse_rep",
    "random_positive",
    "zero_heavy",
]
