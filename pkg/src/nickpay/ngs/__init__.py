"""NGS signature scheme over BN254."""
from .ds import DsSignature, UserKeyPair, ds_keygen, ds_sign, ds_verify
from .proofs import JoinProof, NgsSignature, OpenProof, fs_challenge
from .scheme import (
    EncryptedTrapdoor,
    GroupState,
    IssuanceRejected,
    IssuerKeyPair,
    IssuerPublicKey,
    IssuerSecretKey,
    JoinRequest,
    MasterPublicKey,
    MasterSecret,
    NgsError,
    Nickname,
    NotOwner,
    OpenerKeyPair,
    OpeningProof,
    RegEntry,
    RejectReason,
    Trapdoor,
    UnknownUser,
    gvf,
    ikg,
    iss,
    join,
    judge,
    nick,
    okg,
    open,
    sign,
    trace,
    ukg,
    uvf,
)

__all__ = [
    "DsSignature",
    "EncryptedTrapdoor",
    "GroupState",
    "IssuanceRejected",
    "IssuerKeyPair",
    "IssuerPublicKey",
    "IssuerSecretKey",
    "JoinProof",
    "JoinRequest",
    "MasterPublicKey",
    "MasterSecret",
    "NgsError",
    "NgsSignature",
    "Nickname",
    "NotOwner",
    "OpenProof",
    "OpenerKeyPair",
    "OpeningProof",
    "RegEntry",
    "RejectReason",
    "Trapdoor",
    "UnknownUser",
    "UserKeyPair",
    "ds_keygen",
    "ds_sign",
    "ds_verify",
    "fs_challenge",
    "gvf",
    "ikg",
    "iss",
    "join",
    "judge",
    "nick",
    "okg",
    "open",
    "sign",
    "trace",
    "ukg",
    "uvf",
]
