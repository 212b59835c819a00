"""Signatures of the public entry points encode who may see what."""
import inspect

from nickpay import ngs
from nickpay.ledger import LedgerState


def params_of(fn):
    return list(inspect.signature(fn).parameters)


def test_gvf_takes_no_signature_or_message():
    names = params_of(ngs.gvf)
    assert names[:2] == ["ipk", "nk"]
    assert not {"sig", "m", "msg"} & set(names)


def test_uvf_takes_no_issuer_key():
    assert params_of(ngs.uvf) == ["nk", "m", "sig"]


def test_open_takes_no_message_or_signature():
    names = params_of(ngs.open)
    assert names[:3] == ["osk", "nk", "state"]
    assert not {"sig", "m", "msg"} & set(names)


def test_trace_needs_only_trapdoor_and_nickname():
    assert params_of(ngs.trace)[:2] == ["tau", "nk"]


def test_nick_is_public():
    # anyone can derive a nickname from the published master key
    assert params_of(ngs.nick)[0] == "mpk"
    assert not {"msk", "tau", "isk", "osk"} & set(params_of(ngs.nick))


def test_judge_uses_public_data_only():
    names = set(params_of(ngs.judge))
    assert not {"osk", "isk", "msk", "tau"} & names


def test_ledger_verification_has_no_secret_inputs():
    for meth in (LedgerState.mint, LedgerState.transfer):
        assert params_of(meth) == ["self", "tx"]
