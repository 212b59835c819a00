"""Meta-transactions: typed transfer messages signed off-chain, relayed on-chain.

The wallet signs ``typed_digest(message)`` under its sender nickname; any
relayer can submit the package. ``execute`` plays the forwarder: it checks the
signature against the ledger's own domain, then hands the transfer over.
"""
from __future__ import annotations

import json
from dataclasses import dataclass

from . import ngs
from .errors import BadSignature
from .ledger import AnnouncementEvent, LedgerState, TransferTx, canonical_json
from .ngs import MasterSecret, NgsSignature
from .pairing import MalformedEncoding
from .typed_data import Domain, TransferBody, TypedTransferMessage, typed_digest

ENVELOPE_FORMAT = "nickpay-metatx"
ENVELOPE_VERSION = 1


@dataclass(frozen=True)
class MetaTransaction:
    message: TypedTransferMessage
    ngs_sig: NgsSignature
    relayer_id: str

    def to_dict(self) -> dict:
        return {
            "format": ENVELOPE_FORMAT,
            "version": ENVELOPE_VERSION,
            "message": self.message.to_dict(),
            "ngs_sig": self.ngs_sig.hex(),
            "relayer_id": self.relayer_id,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "MetaTransaction":
        if not isinstance(data, dict) or data.get("format") != ENVELOPE_FORMAT or data.get("version") != ENVELOPE_VERSION:
            raise MalformedEncoding("not a meta-transaction envelope")
        try:
            return cls(
                TypedTransferMessage.from_dict(data["message"]),
                NgsSignature.from_hex(data["ngs_sig"]),
                str(data["relayer_id"]),
            )
        except (KeyError, TypeError) as exc:
            raise MalformedEncoding(f"meta-transaction envelope: {exc}") from None

    def to_json(self) -> str:
        return canonical_json(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> "MetaTransaction":
        try:
            data = json.loads(text)
        except ValueError as exc:
            raise MalformedEncoding(f"meta-transaction envelope: {exc}") from None
        return cls.from_dict(data)

    def with_relayer(self, relayer_id: str) -> "MetaTransaction":
        return MetaTransaction(self.message, self.ngs_sig, relayer_id)


def transfer_message(domain: Domain, sender, recipient, amount: int, nonce: int) -> TypedTransferMessage:
    return TypedTransferMessage(domain, TransferBody(sender, recipient, amount, nonce))


def build_meta_tx(msg: TypedTransferMessage, msk: MasterSecret, rng, relayer_id: str = "relayer") -> MetaTransaction:
    sig = ngs.sign(msg.body.sender, msk, typed_digest(msg), rng)
    return MetaTransaction(msg, sig, relayer_id)


def execute(mtx: MetaTransaction, ledger: LedgerState) -> AnnouncementEvent:
    """Forward ``mtx`` to ``ledger``. The relayer identity is not consulted."""
    body = mtx.message.body
    # digest under the ledger's own domain, so a message signed for another
    # ledger (or mutated in transit) fails here
    digest = ledger.transfer_digest(body)
    if mtx.message.domain != ledger.domain or not ngs.uvf(body.sender, digest, mtx.ngs_sig):
        raise BadSignature("meta-transaction signature does not verify")
    return ledger.transfer(TransferTx(body.sender, body.recipient, body.amount, body.nonce, mtx.ngs_sig))
