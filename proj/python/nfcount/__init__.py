from fractions import Fraction

from ._core import (
    CertificationError,
    Field,
    InputError,
    InternalInconsistency,
    PrimeDataUnavailable,
    chebotarev,
    run_suite,
    scan_pure,
)

__all__ = [
    "CertificationError",
    "Field",
    "InputError",
    "InternalInconsistency",
    "PrimeDataUnavailable",
    "chebotarev",
    "integral_basis",
    "run_suite",
    "scan_pure",
]


def integral_basis(field):
    """Integral basis columns as Fractions in power-basis coordinates."""
    return [[Fraction(c) for c in col] for col in field.basis]
