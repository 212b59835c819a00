"""Simulated on-chain state: mpk registry, nickname accounts, mint and transfer.

This mirrors the behaviour of the registry, verifier and token contracts
without an EVM. Every settlement runs all checks before touching state, so a
rejected operation leaves the ledger bit-identical.
"""
from __future__ import annotations

import enum
import json
import threading
from collections import Counter
from dataclasses import dataclass, field

from . import ngs
from .errors import (
    AmountOverflow,
    BadAuthoritySig,
    BadSignature,
    Forbidden,
    InsufficientFunds,
    InvalidAmount,
    NotInGroup,
    RecipientNotInGroup,
    RegistryConflict,
    StaleAuthorityNonce,
    StaleNonce,
    UnknownSenderAccount,
)
from .ngs import DsSignature, IssuerPublicKey, NgsSignature, Nickname
from .pairing import G1Elem, MalformedEncoding, Scalar, keccak_digest
from .typed_data import MAX_AMOUNT, Domain, TransferBody, TypedTransferMessage, typed_digest

MINT_TAG = b"NICKPAY/MINT/v1"
LEDGER_FORMAT = "nickpay-ledger"
LEDGER_VERSION = 1


class Role(enum.Enum):
    ISSUER = "issuer"
    SUPERVISOR = "supervisor"
    AUTHORITY = "authority"
    USER = "user"
    RELAYER = "relayer"
    AUDITOR = "auditor"


class EventKind(enum.Enum):
    MINT = "MINT"
    TRANSFER = "TRANSFER"


def nickname_address(nk: Nickname) -> bytes:
    """32-byte account key: keccak over the serialized (u, v, w)."""
    return keccak_digest(nk.to_bytes())


@dataclass
class Account:
    nickname: Nickname
    balance: int = 0
    nonce: int = 0

    def to_dict(self) -> dict:
        return {"nickname": self.nickname.hex(), "balance": self.balance, "nonce": self.nonce}

    @classmethod
    def from_dict(cls, data: dict) -> "Account":
        return cls(Nickname.from_hex(data["nickname"]), int(data["balance"]), int(data["nonce"]))


@dataclass(frozen=True)
class AnnouncementEvent:
    kind: EventKind
    recipient: Nickname
    amount: int
    sequence: int

    def to_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "recipient": self.recipient.hex(),
            "amount": self.amount,
            "sequence": self.sequence,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "AnnouncementEvent":
        return cls(
            EventKind(data["kind"]), Nickname.from_hex(data["recipient"]),
            int(data["amount"]), int(data["sequence"]),
        )


def mint_payload(recipient: Nickname, amount: int, nonce: int) -> bytes:
    """Bytes the minting authority signs: tag || recipient || amount || nonce."""
    return MINT_TAG + recipient.to_bytes() + amount.to_bytes(16, "big") + nonce.to_bytes(8, "big")


@dataclass(frozen=True)
class MintTx:
    recipient: Nickname
    amount: int
    nonce: int
    authority_sig: DsSignature

    def payload(self) -> bytes:
        return mint_payload(self.recipient, self.amount, self.nonce)

    def to_dict(self) -> dict:
        return {
            "recipient": self.recipient.hex(),
            "amount": self.amount,
            "nonce": self.nonce,
            "authority_sig": self.authority_sig.hex(),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "MintTx":
        return cls(
            Nickname.from_hex(data["recipient"]), int(data["amount"]), int(data["nonce"]),
            DsSignature.from_hex(data["authority_sig"]),
        )


def make_mint_tx(authority_sk: Scalar, recipient: Nickname, amount: int, nonce: int, rng) -> MintTx:
    if not 0 < amount <= MAX_AMOUNT:
        raise InvalidAmount(f"amount {amount} out of range")
    sig = ngs.ds_sign(authority_sk, mint_payload(recipient, amount, nonce), rng)
    return MintTx(recipient, amount, nonce, sig)


@dataclass(frozen=True)
class TransferTx:
    sender: Nickname
    recipient: Nickname
    amount: int
    nonce: int
    sig: NgsSignature

    def body(self) -> TransferBody:
        return TransferBody(self.sender, self.recipient, self.amount, self.nonce)

    def to_dict(self) -> dict:
        d = self.body().to_dict()
        d["sig"] = self.sig.hex()
        return d

    @classmethod
    def from_dict(cls, data: dict) -> "TransferTx":
        body = TransferBody.from_dict({k: data[k] for k in ("sender", "recipient", "amount", "nonce")})
        return cls(body.sender, body.recipient, body.amount, body.nonce, NgsSignature.from_hex(data["sig"]))


def _check_amount(amount) -> None:
    if not isinstance(amount, int) or isinstance(amount, bool) or not 0 < amount <= MAX_AMOUNT:
        raise InvalidAmount(f"amount must be in [1, 2^128), got {amount!r}")


@dataclass
class LedgerState:
    """Single-writer ledger. Mutations go through ``mint``/``transfer``/``register_mpk``."""

    authority_key: G1Elem
    issuer_pub: IssuerPublicKey
    domain: Domain = field(default_factory=Domain)
    accounts: dict = field(default_factory=dict)
    registry: dict = field(default_factory=dict)
    events: list = field(default_factory=list)
    authority_nonce: int = 0
    total_minted: int = 0
    # instrumentation, not part of the persisted state
    calls: Counter = field(default_factory=Counter, repr=False, compare=False)
    _lock: threading.RLock = field(default_factory=threading.RLock, repr=False, compare=False)

    # -- verification hooks (counted) --

    def _gvf(self, nk: Nickname) -> bool:
        self.calls["gvf"] += 1
        return ngs.gvf(self.issuer_pub, nk)

    def _uvf(self, nk: Nickname, digest: bytes, sig: NgsSignature) -> bool:
        self.calls["uvf"] += 1
        return ngs.uvf(nk, digest, sig)

    def transfer_digest(self, body: TransferBody) -> bytes:
        return typed_digest(TypedTransferMessage(self.domain, body))

    # -- registry --

    def register_mpk(self, caller: Role, user_id: str, mpk: Nickname) -> None:
        if caller is not Role.ISSUER:
            raise Forbidden(f"{caller.value} may not write the registry")
        with self._lock:
            current = self.registry.get(user_id)
            if current is not None and current != mpk:
                raise RegistryConflict(f"{user_id} already has a different mpk")
            self.registry[user_id] = mpk

    def get_mpk(self, user_id: str) -> Nickname | None:
        return self.registry.get(user_id)

    # -- settlement --

    def _credit_check(self, addr: bytes, amount: int) -> None:
        acct = self.accounts.get(addr)
        if acct is not None and acct.balance + amount > MAX_AMOUNT:
            raise AmountOverflow("credit would exceed the 128-bit balance bound")

    def _credit(self, nk: Nickname, addr: bytes, amount: int) -> None:
        acct = self.accounts.get(addr)
        if acct is None:
            acct = self.accounts[addr] = Account(nk)
        acct.balance += amount

    def _emit(self, kind: EventKind, recipient: Nickname, amount: int) -> AnnouncementEvent:
        ev = AnnouncementEvent(kind, recipient, amount, len(self.events))
        self.events.append(ev)
        return ev

    def mint(self, tx: MintTx) -> AnnouncementEvent:
        with self._lock:
            _check_amount(tx.amount)
            if not self._gvf(tx.recipient):
                raise NotInGroup("recipient nickname fails group verification")
            if not ngs.ds_verify(self.authority_key, tx.payload(), tx.authority_sig):
                raise BadAuthoritySig("mint not signed by the minting authority")
            if tx.nonce != self.authority_nonce:
                raise StaleAuthorityNonce(f"expected authority nonce {self.authority_nonce}, got {tx.nonce}")
            addr = nickname_address(tx.recipient)
            self._credit_check(addr, tx.amount)
            if self.total_minted + tx.amount > MAX_AMOUNT:
                raise AmountOverflow("total supply would exceed the 128-bit bound")

            self.authority_nonce += 1
            self.total_minted += tx.amount
            self._credit(tx.recipient, addr, tx.amount)
            return self._emit(EventKind.MINT, tx.recipient, tx.amount)

    def transfer(self, tx: TransferTx) -> AnnouncementEvent:
        with self._lock:
            _check_amount(tx.amount)
            body = tx.body()
            if not self._gvf(tx.recipient):
                raise RecipientNotInGroup("recipient nickname fails group verification")
            if not self._uvf(tx.sender, self.transfer_digest(body), tx.sig):
                raise BadSignature("signature does not verify under the sender nickname")
            src_addr = nickname_address(tx.sender)
            src = self.accounts.get(src_addr)
            if src is None:
                raise UnknownSenderAccount("sender nickname has no account")
            if tx.nonce != src.nonce:
                raise StaleNonce(f"expected nonce {src.nonce}, got {tx.nonce}")
            if src.balance < tx.amount:
                raise InsufficientFunds(f"balance {src.balance} < {tx.amount}")
            dst_addr = nickname_address(tx.recipient)
            if dst_addr != src_addr:
                self._credit_check(dst_addr, tx.amount)

            src.balance -= tx.amount
            src.nonce += 1
            self._credit(tx.recipient, dst_addr, tx.amount)
            return self._emit(EventKind.TRANSFER, tx.recipient, tx.amount)

    # -- reads --

    def get_balance(self, addr: bytes) -> int:
        acct = self.accounts.get(addr)
        return acct.balance if acct else 0

    def get_nonce(self, addr: bytes) -> int:
        acct = self.accounts.get(addr)
        return acct.nonce if acct else 0

    def scan_events(self, from_sequence: int = 0) -> list:
        if from_sequence < 0:
            raise ValueError("from_sequence must be non-negative")
        with self._lock:
            return list(self.events[from_sequence:])

    def total_balance(self) -> int:
        return sum(a.balance for a in self.accounts.values())

    # -- persistence --

    def to_dict(self) -> dict:
        with self._lock:
            return {
                "format": LEDGER_FORMAT,
                "version": LEDGER_VERSION,
                "domain": self.domain.to_dict(),
                "authority_key": self.authority_key.to_bytes().hex(),
                "issuer_pub": self.issuer_pub.to_dict(),
                "authority_nonce": self.authority_nonce,
                "total_minted": self.total_minted,
                "registry": {k: v.hex() for k, v in sorted(self.registry.items())},
                "accounts": {k.hex(): v.to_dict() for k, v in sorted(self.accounts.items())},
                "events": [e.to_dict() for e in self.events],
            }

    @classmethod
    def from_dict(cls, data: dict) -> "LedgerState":
        if data.get("format") != LEDGER_FORMAT or data.get("version") != LEDGER_VERSION:
            raise MalformedEncoding("not a ledger document of a supported version")
        accounts = {}
        for key, raw in data["accounts"].items():
            acct = Account.from_dict(raw)
            if nickname_address(acct.nickname).hex() != key:
                raise MalformedEncoding(f"account key {key} does not match its nickname")
            accounts[bytes.fromhex(key)] = acct
        return cls(
            authority_key=G1Elem.from_bytes(bytes.fromhex(data["authority_key"])),
            issuer_pub=IssuerPublicKey.from_dict(data["issuer_pub"]),
            domain=Domain.from_dict(data["domain"]),
            accounts=accounts,
            registry={k: Nickname.from_hex(v) for k, v in data["registry"].items()},
            events=[AnnouncementEvent.from_dict(e) for e in data["events"]],
            authority_nonce=int(data["authority_nonce"]),
            total_minted=int(data["total_minted"]),
        )

    def to_json(self) -> str:
        return canonical_json(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> "LedgerState":
        return cls.from_dict(json.loads(text))

    def export_events_jsonl(self) -> str:
        return "".join(canonical_json(e.to_dict()) + "\n" for e in self.scan_events(0))


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=True)
