"""Scheme parameters, digest, serialization and randomness helpers."""
from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass, field

from Crypto.Hash import keccak

from .groups import G1Elem, G2Elem, GtElem, MalformedEncoding, Scalar
from .hash_to_curve import SUITE_ID


@dataclass(frozen=True)
class SchemeParams:
    security_parameter: int = 100
    curve_id: str = "BN254"
    hash_to_g1_suite: str = SUITE_ID
    g: G1Elem = field(default_factory=G1Elem.generator)
    g_hat: G2Elem = field(default_factory=G2Elem.generator)


_DEFAULT = None


def default_params() -> SchemeParams:
    global _DEFAULT
    if _DEFAULT is None:
        _DEFAULT = SchemeParams()
    return _DEFAULT


def keccak_digest(msg: bytes) -> bytes:
    """Ethereum keccak-256 (original padding, not FIPS SHA3-256)."""
    return keccak.new(digest_bits=256, data=msg).digest()


ELEMENT_TYPES = {
    "scalar": Scalar,
    "g1": G1Elem,
    "g2": G2Elem,
    "gt": GtElem,
}


def serialize(e) -> bytes:
    return e.to_bytes()


def deserialize(data: bytes, kind):
    """Decode ``data`` as ``kind`` (a type from ELEMENT_TYPES or its name)."""
    cls = ELEMENT_TYPES[kind] if isinstance(kind, str) else kind
    if not isinstance(data, (bytes, bytearray)):
        raise MalformedEncoding("expected bytes")
    return cls.from_bytes(bytes(data))


def to_hex(e) -> str:
    return e.to_bytes().hex()


def from_hex(text: str, kind):
    try:
        data = bytes.fromhex(text)
    except ValueError as exc:
        raise MalformedEncoding(f"invalid hex: {exc}") from None
    return deserialize(data, kind)


def make_rng(seed: int | None = None) -> random.Random:
    """Seeded stream for reproducible runs; OS entropy when ``seed`` is None."""
    if seed is None:
        return random.SystemRandom()
    return random.Random(seed)


def derive_seed(seed: int, label: str) -> int:
    h = hashlib.sha256(seed.to_bytes(8, "big") + label.encode()).digest()
    return int.from_bytes(h[:8], "big")
