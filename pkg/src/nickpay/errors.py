"""Settlement and harness errors with stable numeric codes.

Codes are part of the CLI contract (exit status and ``--json`` output) and
must never be renumbered. Cryptographic-layer errors from ``nickpay.ngs`` and
``nickpay.pairing`` are mapped onto codes by :func:`error_code`.
"""
from __future__ import annotations


class NickPayError(Exception):
    code = 1

    @property
    def name(self) -> str:
        return type(self).__name__


# -- ledger -------------------------------------------------------------------

class LedgerError(NickPayError):
    code = 10


class Forbidden(LedgerError):
    code = 11


class NotInGroup(LedgerError):
    code = 12


class BadAuthoritySig(LedgerError):
    code = 13


class StaleAuthorityNonce(LedgerError):
    code = 14


class RecipientNotInGroup(LedgerError):
    code = 15


class BadSignature(LedgerError):
    code = 16


class StaleNonce(LedgerError):
    code = 17


class InsufficientFunds(LedgerError):
    code = 18


class UnknownSenderAccount(LedgerError):
    code = 19


class AmountOverflow(LedgerError):
    code = 20


class InvalidAmount(LedgerError):
    code = 21


class RegistryConflict(LedgerError):
    code = 22


# -- harness ------------------------------------------------------------------

class HarnessError(NickPayError):
    code = 30


class AlreadySetUp(HarnessError):
    code = 31


class NotSetUp(HarnessError):
    code = 32


class JoinRejected(HarnessError):
    code = 33

    def __init__(self, cause: str):
        super().__init__(cause)
        self.cause = cause


class NotAMember(HarnessError):
    code = 34


class UnknownActor(HarnessError):
    code = 35


class StateFileError(HarnessError):
    code = 36


# codes for errors raised below the settlement layer
NOT_OWNER = 40
ISSUANCE_REJECTED = 41
MALFORMED_ENCODING = 42
INVALID_ARGUMENT = 2


def error_code(exc: BaseException) -> int:
    from .ngs import IssuanceRejected, NotOwner
    from .pairing import MalformedEncoding

    if isinstance(exc, NickPayError):
        return exc.code
    if isinstance(exc, NotOwner):
        return NOT_OWNER
    if isinstance(exc, IssuanceRejected):
        return ISSUANCE_REJECTED
    if isinstance(exc, MalformedEncoding):
        return MALFORMED_ENCODING
    return INVALID_ARGUMENT
