"""Fiat-Shamir signature proofs of knowledge used by the NGS instantiation.

Every proof is a (challenge, response...) tuple. The prover picks random
commitments, derives ``c = keccak(tag || statement || commitments || msg) mod r``
and answers ``rsp = rnd - c * witness``. The verifier recomputes the
commitments from the responses and compares challenges.
"""
from __future__ import annotations

from dataclasses import dataclass

from ..codec import Encodable
from ..pairing import (
    ORDER,
    G1Elem,
    G2Elem,
    GtElem,
    Scalar,
    SchemeParams,
    keccak_digest,
    pairing_product,
    random_scalar,
)

SIG_TAG = b"NICKPAY/NGS/SIG/v1"
JOIN_TAG = b"NICKPAY/NGS/JOIN/v1"
OPEN_TAG = b"NICKPAY/NGS/OPEN/v1"


def fs_challenge(tag: bytes, *parts) -> Scalar:
    buf = bytearray(tag)
    for part in parts:
        buf += part if isinstance(part, (bytes, bytearray)) else part.to_bytes()
    return Scalar(int.from_bytes(keccak_digest(bytes(buf)), "big") % ORDER)


# -- SPK{(alpha): w = u^alpha}(m) ---------------------------------------------

@dataclass(frozen=True)
class NgsSignature(Encodable):
    challenge: Scalar
    response: Scalar

    FIELDS = (("challenge", Scalar), ("response", Scalar))


def prove_dlog(u: G1Elem, w: G1Elem, v: G1Elem, alpha: Scalar, msg: bytes, rng) -> NgsSignature:
    k = random_scalar(rng)
    c = fs_challenge(SIG_TAG, u, v, w, u ** k, msg)
    return NgsSignature(challenge=c, response=k - c * alpha)


def verify_dlog(u: G1Elem, w: G1Elem, v: G1Elem, msg: bytes, sig: NgsSignature) -> bool:
    if u.is_identity():
        return False
    commitment = (u ** sig.response) * (w ** sig.challenge)
    return fs_challenge(SIG_TAG, u, v, w, commitment, msg) == sig.challenge


# -- PK_J{(alpha, s): f = g^a, w = u^a, S = g^s, f' = g^a Z^s} ------------------

@dataclass(frozen=True)
class JoinProof(Encodable):
    challenge: Scalar
    resp_alpha: Scalar
    resp_s: Scalar

    FIELDS = (("challenge", Scalar), ("resp_alpha", Scalar), ("resp_s", Scalar))


def prove_join(params: SchemeParams, opk: G2Elem, f, u, w, s_hat, f_prime, alpha, s, rng) -> JoinProof:
    ka = random_scalar(rng)
    ks = random_scalar(rng)
    commitments = (
        params.g ** ka,
        u ** ka,
        params.g_hat ** ks,
        (params.g_hat ** ka) * (opk ** ks),
    )
    c = fs_challenge(JOIN_TAG, opk, f, u, w, s_hat, f_prime, *commitments)
    return JoinProof(challenge=c, resp_alpha=ka - c * alpha, resp_s=ks - c * s)


def verify_join(params: SchemeParams, opk: G2Elem, f, u, w, s_hat, f_prime, proof: JoinProof) -> bool:
    c, ra, rs = proof.challenge, proof.resp_alpha, proof.resp_s
    commitments = (
        (params.g ** ra) * (f ** c),
        (u ** ra) * (w ** c),
        (params.g_hat ** rs) * (s_hat ** c),
        (params.g_hat ** ra) * (opk ** rs) * (f_prime ** c),
    )
    return fs_challenge(JOIN_TAG, opk, f, u, w, s_hat, f_prime, *commitments) == c


# -- PK_O{(tau): e(w, g_hat) = e(u, tau), rho = e(g, tau)} --------------------

@dataclass(frozen=True)
class OpenProof(Encodable):
    challenge: Scalar
    response: G2Elem

    FIELDS = (("challenge", Scalar), ("response", G2Elem))


def prove_open(params: SchemeParams, u: G1Elem, w: G1Elem, rho: GtElem, tau: G2Elem, rng) -> OpenProof:
    k_hat = params.g_hat ** random_scalar(rng)
    t1 = pairing_product([(u, k_hat)])
    t2 = pairing_product([(params.g, k_hat)])
    c = fs_challenge(OPEN_TAG, u, w, rho, t1, t2)
    # group-2 analogue of rsp = rnd - c * witness
    return OpenProof(challenge=c, response=k_hat / (tau ** c))


def verify_open(params: SchemeParams, u: G1Elem, w: G1Elem, rho: GtElem, proof: OpenProof) -> bool:
    """Recompute commitments: e(u, Z) * e(w, g_hat)^c and e(g, Z) * rho^c."""
    if u.is_identity():
        return False
    c, z_hat = proof.challenge, proof.response
    t1 = pairing_product([(u, z_hat), (w ** c, params.g_hat)])
    t2 = pairing_product([(params.g, z_hat)]) * (rho ** c)
    return fs_challenge(OPEN_TAG, u, w, rho, t1, t2) == c
