"""Square roots of H-nonnegative matrices in indefinite inner product spaces."""

import json

from ._core import (
    CanonicalBlock,
    CanonicalPair,
    IndefSqrtError,
    Mode,
    SegrePairing,
    StabilityLevel,
    best_stability,
    canonicalize,
    check_square,
    existence,
    is_h_nonnegative,
    jordan_structure,
    pairings,
    square_root,
    synthesize,
    witness,
)
from ._core import run as _run

__all__ = [
    "CanonicalBlock",
    "CanonicalPair",
    "IndefSqrtError",
    "Mode",
    "SegrePairing",
    "StabilityLevel",
    "best_stability",
    "canonicalize",
    "check_square",
    "existence",
    "is_h_nonnegative",
    "jordan_structure",
    "pairings",
    "run",
    "square_root",
    "synthesize",
    "witness",
]


def _encode(m):
    return [[[complex(z).real, complex(z).imag] for z in row] for row in m]


def run(command, B, H, *, A=None, tolerance=None, **options):
    """Run a CLI command on (B, H); returns (exit_code, report dict)."""
    problem = {"B": _encode(B), "H": _encode(H)}
    if A is not None:
        problem["A"] = _encode(A)
    if tolerance is not None:
        problem["tolerance"] = dict(tolerance)
    code, text = _run(command, json.dumps(problem), **options)
    return code, json.loads(text)
