"""Exact derived-category computations over Artinian local algebras."""

import json

from ._core import (
    Complex,
    Error,
    Ring,
    auslander_membership,
    bass_numbers,
    betti_numbers,
    corpus_names,
    gc_dimension,
    invariants,
    is_semidualizing,
    run_cli,
)


def dcx(*args):
    """Run a dcx subcommand in-process; returns (exit code, parsed report or None, stderr)."""
    code, out, err = run_cli([str(a) for a in args])
    return code, (json.loads(out) if out.strip() else None), err


__all__ = [
    "Complex",
    "Error",
    "Ring",
    "auslander_membership",
    "bass_numbers",
    "betti_numbers",
    "corpus_names",
    "dcx",
    "gc_dimension",
    "invariants",
    "is_semidualizing",
    "run_cli",
]
