"""Randomized ledger runs checked against a plain-Python balance model."""
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st
from hypothesis.stateful import RuleBasedStateMachine, initialize, invariant, rule

from conftest import build_group
from nickpay import ngs
from nickpay.errors import LedgerError
from nickpay.ledger import LedgerState, Role, make_mint_tx, nickname_address
from nickpay.meta_tx import build_meta_tx, execute, transfer_message
from nickpay.pairing import make_rng

USERS = ("alice", "bob", "carol")
GROUP = build_group(4321, USERS)
AUTHORITY = ngs.ds_keygen(None, make_rng(77))


class LedgerMachine(RuleBasedStateMachine):
    @initialize(seed=st.integers(0, 2**32))
    def setup(self, seed):
        self.rng = make_rng(seed)
        self.ledger = LedgerState(authority_key=AUTHORITY.upk, issuer_pub=GROUP.issuer.ipk)
        for uid in USERS:
            self.ledger.register_mpk(Role.ISSUER, uid, GROUP.mpk(uid))
        self.owned = []          # (uid, nickname) for every credited account
        self.model = {}          # address -> balance
        self.minted = 0
        self.settled_transfers = 0

    @rule(uid=st.sampled_from(USERS), amount=st.integers(1, 1000))
    def mint(self, uid, amount):
        nk = ngs.nick(GROUP.mpk(uid), self.rng)
        tx = make_mint_tx(AUTHORITY.usk, nk, amount, self.ledger.authority_nonce, self.rng)
        self.ledger.mint(tx)
        self.owned.append((uid, nk))
        addr = nickname_address(nk)
        self.model[addr] = self.model.get(addr, 0) + amount
        self.minted += amount

    @rule(data=st.data(), dst=st.sampled_from(USERS), amount=st.integers(1, 1500),
          fresh=st.booleans())
    def transfer(self, data, dst, amount, fresh):
        if not self.owned:
            return
        uid, src = data.draw(st.sampled_from(self.owned))
        if fresh:
            recipient = ngs.nick(GROUP.mpk(dst), self.rng)
        else:
            dst, recipient = data.draw(st.sampled_from(self.owned))
        src_addr = nickname_address(src)
        msg = transfer_message(self.ledger.domain, src, recipient, amount, self.ledger.get_nonce(src_addr))
        mtx = build_meta_tx(msg, GROUP.msk[uid], self.rng)
        before = self.ledger.to_json()
        if self.model.get(src_addr, 0) < amount:
            try:
                execute(mtx, self.ledger)
            except LedgerError:
                assert self.ledger.to_json() == before
                return
            raise AssertionError("overspend settled")
        execute(mtx, self.ledger)
        self.settled_transfers += 1
        dst_addr = nickname_address(recipient)
        self.model[src_addr] -= amount
        self.model[dst_addr] = self.model.get(dst_addr, 0) + amount
        self.owned.append((dst, recipient))

    @rule()
    def replay_last_transfer_is_stale(self):
        # re-signing with an already used nonce must never settle
        spent = [(u, nk) for u, nk in self.owned if self.ledger.get_nonce(nickname_address(nk)) > 0]
        if not spent:
            return
        uid, src = spent[0]
        msg = transfer_message(self.ledger.domain, src, src, 1, 0)
        mtx = build_meta_tx(msg, GROUP.msk[uid], self.rng)
        before = self.ledger.to_json()
        try:
            execute(mtx, self.ledger)
        except LedgerError as exc:
            assert exc.name == "StaleNonce"
        else:
            raise AssertionError("replayed nonce settled")
        assert self.ledger.to_json() == before

    @invariant()
    def conservation(self):
        if hasattr(self, "ledger"):
            assert self.ledger.total_balance() == self.ledger.total_minted == self.minted

    @invariant()
    def balances_match_model(self):
        if hasattr(self, "ledger"):
            for addr, bal in self.model.items():
                assert self.ledger.get_balance(addr) == bal

    @invariant()
    def nonces_count_settled_transfers(self):
        if hasattr(self, "ledger"):
            assert sum(a.nonce for a in self.ledger.accounts.values()) == self.settled_transfers


LedgerMachine.TestCase.settings = settings(
    max_examples=15, stateful_step_count=12, deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
TestLedgerMachine = LedgerMachine.TestCase
