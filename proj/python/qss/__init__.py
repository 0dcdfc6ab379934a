"""Bell-pair quantum secret sharing: simulator, lookup tables and security analysis."""

from fractions import Fraction

from . import _qss
from ._qss import (
    BellLabel,
    BsmOutcome,
    IncompleteShares,
    PauliCorrection,
    attack_sweep,
    cli,
    decode_classical,
    encrypted_qubit_mixedness,
    end_to_end_correction,
    infer_remote_bsm,
    mutual_information,
    run_qss22,
    run_qss55,
    swap_result,
    teleport_correction,
    verify_tables,
)

__all__ = [
    "BellLabel",
    "BsmOutcome",
    "IncompleteShares",
    "PauliCorrection",
    "attack_sweep",
    "cli",
    "decode_classical",
    "encrypted_qubit_mixedness",
    "end_to_end_correction",
    "exact_detection_rate",
    "infer_remote_bsm",
    "mutual_information",
    "run_qss22",
    "run_qss55",
    "swap_result",
    "teleport_correction",
    "verify_tables",
]


def exact_detection_rate(attack: str) -> Fraction:
    """Probability that the sender rejects under `attack`, by exhaustive enumeration."""
    return Fraction(*_qss.exact_detection_rate(attack))
