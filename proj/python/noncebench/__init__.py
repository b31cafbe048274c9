"""Nonce-search benchmark primitives backed by the C++ core."""

from noncebench._core import (
    Header,
    SearchOutcome,
    TTestResult,
    VerificationResult,
    brute_force_search,
    decode_nbits_hex,
    display_hex,
    double_sha256,
    ifl_search,
    sample_heights,
    two_sample_t,
    verify,
)


def decode_nbits(bits: int) -> int:
    """Expand compact bits into the 256-bit target as a Python int."""
    return int(decode_nbits_hex(bits), 16)


__all__ = [
    "Header",
    "SearchOutcome",
    "TTestResult",
    "VerificationResult",
    "brute_force_search",
    "decode_nbits",
    "decode_nbits_hex",
    "display_hex",
    "double_sha256",
    "ifl_search",
    "sample_heights",
    "two_sample_t",
    "verify",
]
