"""Pairing-free certificateless signcryption for vehicle-to-roadside traffic.

Vehicles sign and encrypt safety reports under short-lived pseudonyms; a
roadside unit verifies whole batches with a constant number of scalar
multiplications and decrypts only what verified. A trace authority can
strip a pseudonym when a dispute demands it. All group arithmetic runs on
instrumented prime-order curves so tests and benchmarks can assert exact
operation counts.
"""

from .bench import CSV_COLUMNS, MODES, BenchConfig, BenchRow, render_csv, run_bench, write_csv
from .codec import Reader, Timestamp, encode, encode_items, point_bytes, scalar_bytes
from .errors import ParseError, ProtocolError, RegistrationError, TraceError
from .group import (
    CURVES,
    DEFAULT_CURVE,
    IDENTITY,
    Curve,
    OpCounter,
    Point,
    SystemParams,
    count_ops,
    get_curve,
)
from .hashes import hash_to_scalar, keystream, xor_bytes
from .kmc import Kmc, MasterKey, PartialKey, RSUCertificate, key_binding_hash
from .rsu import BatchResult, Rsu, RSUKeyMaterial
from .schnorr import SchnorrSignature, schnorr_sign, schnorr_verify
from .sim import BASE_TIME, Scenario, SimReport, replay_attack_check, run_scenario
from .system import setup_system
from .tra import PseudoID, Tra, TraceKey, check_pid_validity, make_pid_request, unmask
from .vehicle import (
    DEFAULT_FRESHNESS_WINDOW,
    BroadcastPacket,
    SigncryptedMessage,
    VehicleKeyMaterial,
    enroll,
    refresh_pseudonym,
    register,
    signcrypt,
    validate_broadcast,
)

__version__ = "0.1.0"

__all__ = [
    "BASE_TIME",
    "BatchResult",
    "BenchConfig",
    "BenchRow",
    "BroadcastPacket",
    "CSV_COLUMNS",
    "CURVES",
    "Curve",
    "DEFAULT_CURVE",
    "DEFAULT_FRESHNESS_WINDOW",
    "IDENTITY",
    "Kmc",
    "MODES",
    "MasterKey",
    "OpCounter",
    "ParseError",
    "PartialKey",
    "Point",
    "ProtocolError",
    "PseudoID",
    "RSUCertificate",
    "RSUKeyMaterial",
    "Reader",
    "RegistrationError",
    "Rsu",
    "Scenario",
    "SchnorrSignature",
    "SigncryptedMessage",
    "SimReport",
    "SystemParams",
    "Timestamp",
    "Tra",
    "TraceError",
    "TraceKey",
    "VehicleKeyMaterial",
    "check_pid_validity",
    "count_ops",
    "encode",
    "encode_items",
    "enroll",
    "get_curve",
    "hash_to_scalar",
    "key_binding_hash",
    "keystream",
    "make_pid_request",
    "point_bytes",
    "refresh_pseudonym",
    "register",
    "render_csv",
    "replay_attack_check",
    "run_bench",
    "run_scenario",
    "scalar_bytes",
    "schnorr_sign",
    "schnorr_verify",
    "setup_system",
    "signcrypt",
    "unmask",
    "validate_broadcast",
    "write_csv",
]
