"""Typed structured-data hashing for transfer messages (EIP-712 pattern).

digest = keccak(0x19 0x01 || keccak(domain encoding) || keccak(body encoding))

Encodings are sequences of 32-byte words: type hash first, then one word per
field. Strings and byte blobs contribute their keccak; integers are
big-endian, left-padded. This is not the Solidity ABI, only its shape.
"""
from __future__ import annotations

from dataclasses import dataclass

from .ngs import Nickname
from .pairing import MalformedEncoding, keccak_digest

DOMAIN_TYPE = b"NickPayDomain(string name,string version,string ledgerId)"
TRANSFER_TYPE = b"Transfer(bytes96 sender,bytes96 recipient,uint128 amount,uint64 nonce)"
PREFIX = b"\x19\x01"

MAX_AMOUNT = 2**128 - 1
MAX_NONCE = 2**64 - 1


class _UInt:
    """Fixed-width unsigned integer range check."""

    SIZE = 0

    @classmethod
    def check(cls, value: int) -> int:
        if not isinstance(value, int) or isinstance(value, bool) or value < 0 or value >= 1 << (8 * cls.SIZE):
            raise ValueError(f"value out of range for uint{8 * cls.SIZE}: {value!r}")
        return value


class UInt128(_UInt):
    SIZE = 16


class UInt64(_UInt):
    SIZE = 8


def _word(n: int) -> bytes:
    return n.to_bytes(32, "big")


@dataclass(frozen=True)
class Domain:
    name: str = "NickPay"
    version: str = "1"
    ledger_id: str = "nickpay-sim-1"

    def encode(self) -> bytes:
        return b"".join((
            keccak_digest(DOMAIN_TYPE),
            keccak_digest(self.name.encode()),
            keccak_digest(self.version.encode()),
            keccak_digest(self.ledger_id.encode()),
        ))

    def separator(self) -> bytes:
        return keccak_digest(self.encode())

    def to_dict(self) -> dict:
        return {"name": self.name, "version": self.version, "ledger_id": self.ledger_id}

    @classmethod
    def from_dict(cls, data: dict) -> "Domain":
        if not isinstance(data, dict) or set(data) != {"name", "version", "ledger_id"}:
            raise MalformedEncoding("domain: unexpected fields")
        if not all(isinstance(v, str) for v in data.values()):
            raise MalformedEncoding("domain: fields must be strings")
        return cls(**data)


@dataclass(frozen=True)
class TransferBody:
    sender: Nickname
    recipient: Nickname
    amount: int
    nonce: int

    SIZE = Nickname.SIZE * 2 + UInt128.SIZE + UInt64.SIZE

    def __post_init__(self):
        UInt128.check(self.amount)
        UInt64.check(self.nonce)

    def encode(self) -> bytes:
        return b"".join((
            keccak_digest(TRANSFER_TYPE),
            keccak_digest(self.sender.to_bytes()),
            keccak_digest(self.recipient.to_bytes()),
            _word(self.amount),
            _word(self.nonce),
        ))

    def struct_hash(self) -> bytes:
        return keccak_digest(self.encode())

    def to_bytes(self) -> bytes:
        return (
            self.sender.to_bytes()
            + self.recipient.to_bytes()
            + self.amount.to_bytes(UInt128.SIZE, "big")
            + self.nonce.to_bytes(UInt64.SIZE, "big")
        )

    @classmethod
    def from_bytes(cls, data: bytes) -> "TransferBody":
        if len(data) != cls.SIZE:
            raise MalformedEncoding(f"TransferBody needs {cls.SIZE} bytes, got {len(data)}")
        n = Nickname.SIZE
        return cls(
            sender=Nickname.from_bytes(data[:n]),
            recipient=Nickname.from_bytes(data[n:2 * n]),
            amount=int.from_bytes(data[2 * n:2 * n + 16], "big"),
            nonce=int.from_bytes(data[2 * n + 16:], "big"),
        )

    def to_dict(self) -> dict:
        return {
            "sender": self.sender.hex(),
            "recipient": self.recipient.hex(),
            "amount": self.amount,
            "nonce": self.nonce,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "TransferBody":
        if not isinstance(data, dict) or set(data) != {"sender", "recipient", "amount", "nonce"}:
            raise MalformedEncoding("transfer body: unexpected fields")
        try:
            return cls(
                sender=Nickname.from_hex(data["sender"]),
                recipient=Nickname.from_hex(data["recipient"]),
                amount=data["amount"],
                nonce=data["nonce"],
            )
        except (TypeError, ValueError) as exc:
            if isinstance(exc, MalformedEncoding):
                raise
            raise MalformedEncoding(f"transfer body: {exc}") from None


@dataclass(frozen=True)
class TypedTransferMessage:
    domain: Domain
    body: TransferBody

    def to_dict(self) -> dict:
        return {"domain": self.domain.to_dict(), "body": self.body.to_dict()}

    @classmethod
    def from_dict(cls, data: dict) -> "TypedTransferMessage":
        return cls(Domain.from_dict(data["domain"]), TransferBody.from_dict(data["body"]))


def typed_digest(msg: TypedTransferMessage) -> bytes:
    return keccak_digest(PREFIX + msg.domain.separator() + msg.body.struct_hash())

