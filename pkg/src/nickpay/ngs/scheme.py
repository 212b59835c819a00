"""Nicknames for group signatures: keys, enrollment, nicknames, signing, opening.

Master public keys and nicknames are G1 triples (u, v, w) with v = u^x w^y
under the issuer key (x, y) and w = u^alpha for the member's secret alpha.
Re-randomizing the triple by a common exponent keeps it in the member's class.
"""
from __future__ import annotations

import enum
import threading
from dataclasses import dataclass, field

from ..codec import Encodable
from ..pairing import (
    G1Elem,
    G2Elem,
    GtElem,
    Scalar,
    SchemeParams,
    default_params,
    make_rng,
    pair,
    pairing_check,
    random_scalar,
)
from .ds import DsSignature, UserKeyPair, ds_keygen, ds_sign, ds_verify
from .proofs import (
    JoinProof,
    NgsSignature,
    OpenProof,
    prove_dlog,
    prove_join,
    prove_open,
    verify_dlog,
    verify_join,
    verify_open,
)


class NgsError(Exception):
    """Base class for scheme-level failures."""


class NotOwner(NgsError):
    """The master secret does not control the nickname being signed for."""


class UnknownUser(NgsError, KeyError):
    pass


class RejectReason(enum.Enum):
    DUPLICATE_F = "DuplicateF"
    BAD_PROOF = "BadProof"
    BAD_DS_SIG = "BadDsSig"
    ALREADY_ENROLLED = "AlreadyEnrolled"


class IssuanceRejected(NgsError):
    def __init__(self, reason: RejectReason):
        super().__init__(reason.value)
        self.reason = reason


# ---------------------------------------------------------------------------
# Keys and secrets
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class IssuerSecretKey(Encodable):
    x: Scalar
    y: Scalar

    FIELDS = (("x", Scalar), ("y", Scalar))


@dataclass(frozen=True)
class IssuerPublicKey(Encodable):
    x_hat: G2Elem
    y_hat: G2Elem

    FIELDS = (("x_hat", G2Elem), ("y_hat", G2Elem))


@dataclass(frozen=True)
class IssuerKeyPair:
    isk: IssuerSecretKey
    ipk: IssuerPublicKey


@dataclass(frozen=True)
class OpenerKeyPair:
    osk: Scalar
    opk: G2Elem


@dataclass(frozen=True)
class MasterSecret(Encodable):
    alpha: Scalar

    FIELDS = (("alpha", Scalar),)


@dataclass(frozen=True)
class Trapdoor(Encodable):
    tau: G2Elem

    FIELDS = (("tau", G2Elem),)


@dataclass(frozen=True)
class Nickname(Encodable):
    u: G1Elem
    v: G1Elem
    w: G1Elem

    FIELDS = (("u", G1Elem), ("v", G1Elem), ("w", G1Elem))


# A master public key is just the issuer-published representative of a class.
MasterPublicKey = Nickname


@dataclass(frozen=True)
class EncryptedTrapdoor(Encodable):
    """ElGamal ciphertext of tau under the opener key: (g_hat^s, tau * opk^s)."""

    s_hat: G2Elem
    f_prime: G2Elem

    FIELDS = (("s_hat", G2Elem), ("f_prime", G2Elem))

    def decrypt(self, osk: Scalar) -> Trapdoor:
        return Trapdoor(self.f_prime / (self.s_hat ** osk))


@dataclass(frozen=True)
class JoinRequest(Encodable):
    f: G1Elem
    w: G1Elem
    enc_trapdoor: EncryptedTrapdoor
    proof_join: JoinProof
    sig_ds: DsSignature

    FIELDS = (
        ("f", G1Elem),
        ("w", G1Elem),
        ("enc_trapdoor", EncryptedTrapdoor),
        ("proof_join", JoinProof),
        ("sig_ds", DsSignature),
    )


@dataclass(frozen=True)
class RegEntry(Encodable):
    f: G1Elem
    enc_trapdoor: EncryptedTrapdoor
    rho: GtElem
    sig_ds: DsSignature

    FIELDS = (
        ("f", G1Elem),
        ("enc_trapdoor", EncryptedTrapdoor),
        ("rho", GtElem),
        ("sig_ds", DsSignature),
    )


@dataclass(frozen=True)
class OpeningProof(Encodable):
    rho: GtElem
    sig_ds: DsSignature
    proof_open: OpenProof

    FIELDS = (("rho", GtElem), ("sig_ds", DsSignature), ("proof_open", OpenProof))


@dataclass
class GroupState:
    """Issuer-side tables: mpk, reg, upk, and every f seen at enrollment."""

    mpk_table: dict = field(default_factory=dict)
    reg_table: dict = field(default_factory=dict)
    upk_table: dict = field(default_factory=dict)
    seen_f: set = field(default_factory=set)
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False, compare=False)

    def register_user(self, user_id: str, upk: G1Elem) -> None:
        """Publish a CA-certified DS public key."""
        with self._lock:
            self.upk_table[user_id] = upk

    def snapshot(self) -> "GroupState":
        with self._lock:
            return GroupState(
                dict(self.mpk_table), dict(self.reg_table), dict(self.upk_table), set(self.seen_f)
            )

    def to_dict(self) -> dict:
        snap = self.snapshot()
        return {
            "mpk": {k: v.to_dict() for k, v in sorted(snap.mpk_table.items())},
            "reg": {k: v.to_dict() for k, v in sorted(snap.reg_table.items())},
            "upk": {k: v.to_bytes().hex() for k, v in sorted(snap.upk_table.items())},
            "seen_f": sorted(f.to_bytes().hex() for f in snap.seen_f),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "GroupState":
        return cls(
            mpk_table={k: Nickname.from_dict(v) for k, v in data["mpk"].items()},
            reg_table={k: RegEntry.from_dict(v) for k, v in data["reg"].items()},
            upk_table={k: G1Elem.from_bytes(bytes.fromhex(v)) for k, v in data["upk"].items()},
            seen_f={G1Elem.from_bytes(bytes.fromhex(f)) for f in data["seen_f"]},
        )


# ---------------------------------------------------------------------------
# Algorithms
# ---------------------------------------------------------------------------

def ikg(params: SchemeParams | None, rng) -> IssuerKeyPair:
    params = params or default_params()
    x, y = random_scalar(rng), random_scalar(rng)
    return IssuerKeyPair(
        IssuerSecretKey(x, y), IssuerPublicKey(params.g_hat ** x, params.g_hat ** y)
    )


def okg(params: SchemeParams | None, rng) -> OpenerKeyPair:
    params = params or default_params()
    z = random_scalar(rng)
    return OpenerKeyPair(osk=z, opk=params.g_hat ** z)


def ukg(params: SchemeParams | None, rng) -> UserKeyPair:
    return ds_keygen(params, rng)


def join(usk: Scalar, ipk: IssuerPublicKey, opk: G2Elem, params: SchemeParams | None, rng):
    """User half of enrollment. Returns ``(msk, tau, request)``.

    ``ipk`` is accepted for interface symmetry; the request only depends on
    the opener key, which the trapdoor is escrowed under.
    """
    params = params or default_params()
    alpha = random_scalar(rng)
    s = random_scalar(rng)
    f = params.g ** alpha
    u = G1Elem.hash(f.to_bytes())
    w = u ** alpha
    tau = params.g_hat ** alpha
    enc = EncryptedTrapdoor(params.g_hat ** s, tau * (opk ** s))
    proof = prove_join(params, opk, f, u, w, enc.s_hat, enc.f_prime, alpha, s, rng)
    rho = pair(f, params.g_hat)
    sig = ds_sign(usk, rho.to_bytes(), rng, params)
    request = JoinRequest(f=f, w=w, enc_trapdoor=enc, proof_join=proof, sig_ds=sig)
    return MasterSecret(alpha), Trapdoor(tau), request


def iss(
    user_id: str,
    isk: IssuerSecretKey,
    req: JoinRequest,
    opk: G2Elem,
    state: GroupState,
    params: SchemeParams | None = None,
) -> GroupState:
    """Issuer half of enrollment; mutates and returns ``state``.

    Raises IssuanceRejected with the first failing check; the state is only
    written once every check has passed.
    """
    params = params or default_params()
    with state._lock:
        if user_id not in state.upk_table:
            raise UnknownUser(user_id)
        if req.f in state.seen_f:
            raise IssuanceRejected(RejectReason.DUPLICATE_F)
        if user_id in state.mpk_table:
            raise IssuanceRejected(RejectReason.ALREADY_ENROLLED)
        u = G1Elem.hash(req.f.to_bytes())
        enc = req.enc_trapdoor
        if req.f.is_identity() or not verify_join(
            params, opk, req.f, u, req.w, enc.s_hat, enc.f_prime, req.proof_join
        ):
            raise IssuanceRejected(RejectReason.BAD_PROOF)
        rho = pair(req.f, params.g_hat)
        if not ds_verify(state.upk_table[user_id], rho.to_bytes(), req.sig_ds, params):
            raise IssuanceRejected(RejectReason.BAD_DS_SIG)
        v = (u ** isk.x) * (req.w ** isk.y)
        state.seen_f.add(req.f)
        state.reg_table[user_id] = RegEntry(req.f, enc, rho, req.sig_ds)
        state.mpk_table[user_id] = Nickname(u, v, req.w)
    return state


def nick(mpk: Nickname, rng, r: Scalar | int | None = None) -> Nickname:
    """Fresh representative of ``mpk``'s class. ``r`` overrides the randomizer."""
    r = random_scalar(rng) if r is None else Scalar(r)
    if not r:
        raise ValueError("randomizer must be non-zero")
    return Nickname(mpk.u ** r, mpk.v ** r, mpk.w ** r)


def trace(tau: Trapdoor, nk: Nickname, params: SchemeParams | None = None) -> bool:
    params = params or default_params()
    if nk.u.is_identity():
        return False
    return pairing_check([(nk.u, tau.tau)], [(nk.w, params.g_hat)])


def sign(nk: Nickname, msk: MasterSecret, m: bytes, rng) -> NgsSignature:
    if nk.u.is_identity() or nk.u ** msk.alpha != nk.w:
        raise NotOwner("master secret does not control this nickname")
    return prove_dlog(nk.u, nk.w, nk.v, msk.alpha, m, rng)


def gvf(ipk: IssuerPublicKey, nk: Nickname, params: SchemeParams | None = None) -> bool:
    """Group membership: e(v, g_hat) == e(u, X) e(w, Y); three pairings."""
    params = params or default_params()
    if nk.u.is_identity():
        return False
    return pairing_check([(nk.v, params.g_hat)], [(nk.u, ipk.x_hat), (nk.w, ipk.y_hat)])


def uvf(nk: Nickname, m: bytes, sig: NgsSignature) -> bool:
    """Signature validity under the nickname; evaluates no pairing."""
    return verify_dlog(nk.u, nk.w, nk.v, m, sig)


def open(osk: Scalar, nk: Nickname, state: GroupState, rng=None, params: SchemeParams | None = None):
    """Identify the member behind ``nk``.

    Returns ``(user_id, OpeningProof)`` or ``None`` when no registered
    trapdoor matches. Entries are scanned in ascending user-id order.
    """
    params = params or default_params()
    if nk.u.is_identity():
        return None
    snap = state.snapshot()
    for user_id in sorted(snap.reg_table):
        entry = snap.reg_table[user_id]
        tau = entry.enc_trapdoor.decrypt(osk)
        if trace(tau, nk, params) and entry.rho == pair(params.g, tau.tau):
            proof = prove_open(params, nk.u, nk.w, entry.rho, tau.tau, rng or make_rng())
            return user_id, OpeningProof(entry.rho, entry.sig_ds, proof)
    return None


def judge(
    nk: Nickname,
    ipk: IssuerPublicKey,
    user_id: str,
    proof: OpeningProof,
    state: GroupState,
    params: SchemeParams | None = None,
) -> bool:
    params = params or default_params()
    upk = state.upk_table.get(user_id)
    if upk is None:
        return False
    # all three checks are evaluated, matching the three-condition verdict
    proof_ok = verify_open(params, nk.u, nk.w, proof.rho, proof.proof_open)
    sig_ok = ds_verify(upk, proof.rho.to_bytes(), proof.sig_ds, params)
    member_ok = gvf(ipk, nk, params)
    return proof_ok and sig_ok and member_ok
