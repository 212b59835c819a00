import sys
from dataclasses import dataclass, field
from pathlib import Path

import pytest

from nickpay import ngs
from nickpay.ledger import LedgerState, Role
from nickpay.pairing import default_params, make_rng

sys.path.insert(0, str(Path(__file__).parent))

GOLDEN_DIR = Path(__file__).parent / "golden"


@dataclass
class Group:
    """A small enrolled group built directly on the scheme API."""

    issuer: ngs.IssuerKeyPair
    opener: ngs.OpenerKeyPair
    state: ngs.GroupState
    keys: dict = field(default_factory=dict)   # uid -> UserKeyPair
    msk: dict = field(default_factory=dict)
    tau: dict = field(default_factory=dict)

    def mpk(self, uid):
        return self.state.mpk_table[uid]


def build_group(seed: int, users=("alice", "bob")) -> Group:
    rng = make_rng(seed)
    params = default_params()
    g = Group(ngs.ikg(params, rng), ngs.okg(params, rng), ngs.GroupState())
    for uid in users:
        enroll(g, uid, rng)
    return g


def enroll(g: Group, uid: str, rng):
    kp = ngs.ukg(None, rng)
    g.state.register_user(uid, kp.upk)
    msk, tau, req = ngs.join(kp.usk, g.issuer.ipk, g.opener.opk, None, rng)
    ngs.iss(uid, g.issuer.isk, req, g.opener.opk, g.state)
    g.keys[uid], g.msk[uid], g.tau[uid] = kp, msk, tau
    return req


@pytest.fixture(scope="session")
def group():
    return build_group(1234, ("alice", "bob", "carol"))


@pytest.fixture(scope="session")
def rng():
    return make_rng(99)


@dataclass
class Chain:
    group: Group
    authority: ngs.UserKeyPair
    ledger: LedgerState


@pytest.fixture
def chain(group):
    """Fresh ledger over the shared group, with every mpk registered."""
    authority = ngs.ds_keygen(None, make_rng(7))
    ledger = LedgerState(authority_key=authority.upk, issuer_pub=group.issuer.ipk)
    for uid, mpk in group.state.mpk_table.items():
        ledger.register_mpk(Role.ISSUER, uid, mpk)
    return Chain(group, authority, ledger)
