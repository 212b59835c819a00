"""Schnorr signatures over G1, the DS scheme certifying users' enrollment."""
from __future__ import annotations

from dataclasses import dataclass

from ..codec import Encodable
from ..pairing import G1Elem, Scalar, SchemeParams, default_params, random_scalar
from .proofs import fs_challenge

DS_TAG = b"NICKPAY/DS/SCHNORR/v1"


@dataclass(frozen=True)
class DsSignature(Encodable):
    challenge: Scalar
    response: Scalar

    FIELDS = (("challenge", Scalar), ("response", Scalar))


@dataclass(frozen=True)
class UserKeyPair:
    usk: Scalar
    upk: G1Elem


def ds_keygen(params: SchemeParams | None, rng) -> UserKeyPair:
    params = params or default_params()
    sk = random_scalar(rng)
    return UserKeyPair(usk=sk, upk=params.g ** sk)


def ds_sign(usk: Scalar, msg: bytes, rng, params: SchemeParams | None = None) -> DsSignature:
    params = params or default_params()
    k = random_scalar(rng)
    pk = params.g ** usk
    c = fs_challenge(DS_TAG, pk, params.g ** k, msg)
    return DsSignature(challenge=c, response=k - c * usk)


def ds_verify(upk: G1Elem, msg: bytes, sig: DsSignature, params: SchemeParams | None = None) -> bool:
    params = params or default_params()
    if upk.is_identity():
        return False
    commitment = (params.g ** sig.response) * (upk ** sig.challenge)
    return fs_challenge(DS_TAG, upk, commitment, msg) == sig.challenge
