"""Type-3 bilinear group interface over BN254."""
from .core import (
    ELEMENT_TYPES,
    SchemeParams,
    default_params,
    derive_seed,
    deserialize,
    from_hex,
    keccak_digest,
    make_rng,
    serialize,
    to_hex,
)
from .groups import (
    FIELD_MODULUS,
    ORDER,
    G1Elem,
    G2Elem,
    GtElem,
    MalformedEncoding,
    Scalar,
    count_pairings,
    pair,
    pairing_check,
    pairing_product,
    random_scalar,
)


def hash_to_g1(msg: bytes) -> G1Elem:
    return G1Elem.hash(msg)


__all__ = [
    "ELEMENT_TYPES",
    "FIELD_MODULUS",
    "ORDER",
    "G1Elem",
    "G2Elem",
    "GtElem",
    "MalformedEncoding",
    "Scalar",
    "SchemeParams",
    "count_pairings",
    "default_params",
    "derive_seed",
    "deserialize",
    "from_hex",
    "hash_to_g1",
    "keccak_digest",
    "make_rng",
    "pair",
    "pairing_check",
    "pairing_product",
    "random_scalar",
    "serialize",
    "to_hex",
]
