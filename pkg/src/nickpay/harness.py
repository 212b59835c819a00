"""Multi-actor scenario engine.

Actors (issuer, supervisor, minting authority, users, relayer, auditor) each
own only their own secrets and talk to one another through serialized
messages. A single world seed fans out into per-actor streams; every draw is
taken from ``derive_seed(seed, "<actor>/<counter>")`` so the counters alone
are enough to resume a persisted world deterministically.
"""
from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from typing import Callable

from . import ngs
from .errors import (
    AlreadySetUp,
    JoinRejected,
    NickPayError,
    NotAMember,
    NotSetUp,
    StateFileError,
    UnknownActor,
)
from .ledger import (
    AnnouncementEvent,
    LedgerState,
    MintTx,
    Role,
    canonical_json,
    make_mint_tx,
    nickname_address,
)
from .meta_tx import MetaTransaction, build_meta_tx, execute, transfer_message
from .ngs import (
    GroupState,
    IssuanceRejected,
    IssuerKeyPair,
    IssuerPublicKey,
    IssuerSecretKey,
    JoinRequest,
    MasterSecret,
    Nickname,
    OpenerKeyPair,
    OpeningProof,
    Trapdoor,
    UserKeyPair,
)
from .pairing import G1Elem, G2Elem, MalformedEncoding, Scalar, default_params, derive_seed, make_rng

WORLD_FORMAT = "nickpay-world"
WORLD_VERSION = 1


class _Stream:
    """Counter-indexed randomness for one actor."""

    def __init__(self, seed: int, label: str, counter: int = 0):
        self.seed = seed
        self.label = label
        self.counter = counter

    def next(self):
        rng = make_rng(derive_seed(self.seed, f"{self.label}/{self.counter}"))
        self.counter += 1
        return rng


# ---------------------------------------------------------------------------
# Actors
# ---------------------------------------------------------------------------

class IssuerActor:
    def __init__(self, keys: IssuerKeyPair, opk: G2Elem, group: GroupState):
        self._keys = keys
        self._opk = opk
        self._group = group

    @property
    def ipk(self) -> IssuerPublicKey:
        return self._keys.ipk

    def handle_join(self, user_id: str, request_hex: str) -> dict:
        """Step 2: run Iss on a serialized request; reply with mpk or a reason."""
        try:
            req = JoinRequest.from_hex(request_hex)
            ngs.iss(user_id, self._keys.isk, req, self._opk, self._group)
        except IssuanceRejected as exc:
            return {"type": "join-reject", "reason": exc.reason.value}
        except MalformedEncoding:
            return {"type": "join-reject", "reason": "BadProof"}
        return {"type": "join-issue", "mpk": self._group.mpk_table[user_id].hex()}

    def handle_accept(self, user_id: str, message: dict, ledger: LedgerState) -> None:
        """Step 3 acknowledgement: publish the accepted mpk on the ledger."""
        mpk = self._group.mpk_table.get(user_id)
        if mpk is None or message.get("mpk") != mpk.hex():
            raise JoinRejected("AcceptMismatch")
        ledger.register_mpk(Role.ISSUER, user_id, mpk)


class SupervisorActor:
    """Holds osk; reads the public reg table only."""

    def __init__(self, keys: OpenerKeyPair, group: GroupState, stream: _Stream):
        self._keys = keys
        self._group = group
        self._stream = stream

    @property
    def opk(self) -> G2Elem:
        return self._keys.opk

    def handle_open(self, nk_hex: str) -> dict:
        nk = Nickname.from_hex(nk_hex)
        found = ngs.open(self._keys.osk, nk, self._group, self._stream.next())
        if found is None:
            return {"type": "open-result", "outcome": "NOT_FOUND"}
        user_id, proof = found
        return {"type": "open-result", "outcome": "FOUND", "user_id": user_id, "proof": proof.hex()}


class AuthorityActor:
    """Minting authority: a standalone DS identity outside the group."""

    def __init__(self, keys: UserKeyPair, stream: _Stream):
        self._keys = keys
        self._stream = stream

    @property
    def public_key(self) -> G1Elem:
        return self._keys.upk

    def handle_mint_request(self, nk_hex: str, amount: int, nonce: int) -> str:
        tx = make_mint_tx(self._keys.usk, Nickname.from_hex(nk_hex), amount, nonce, self._stream.next())
        return canonical_json(tx.to_dict())


class RelayerActor:
    def __init__(self, relayer_id: str):
        self.relayer_id = relayer_id

    def relay(self, envelope: str, ledger: LedgerState) -> AnnouncementEvent:
        mtx = MetaTransaction.from_json(envelope).with_relayer(self.relayer_id)
        return execute(mtx, ledger)


class AuditorActor:
    """Runs Judge on public data only."""

    def judge(self, ipk: IssuerPublicKey, group: GroupState, nk_hex: str, user_id: str, proof_hex: str) -> bool:
        try:
            proof = OpeningProof.from_hex(proof_hex)
        except MalformedEncoding:
            return False
        return ngs.judge(Nickname.from_hex(nk_hex), ipk, user_id, proof, group)


class UserActor:
    def __init__(self, user_id: str, keys: UserKeyPair, stream: _Stream):
        self.user_id = user_id
        self._keys = keys
        self._stream = stream
        self.msk: MasterSecret | None = None
        self.tau: Trapdoor | None = None
        self.mpk: Nickname | None = None
        # wallet view of the ledger, advanced incrementally by sync()
        self.scan_cursor = 0
        self.owned: list = []  # addresses in first-seen order
        self.sent_total = 0

    @property
    def upk(self) -> G1Elem:
        return self._keys.upk

    @property
    def is_member(self) -> bool:
        return self.msk is not None

    def join_request(self, world_seed: int, ipk: IssuerPublicKey, opk: G2Elem):
        """Step 1. Join randomness is a fixed per-user stream, so a repeated
        join replays the same f and the issuer sees a duplicate."""
        rng = make_rng(derive_seed(world_seed, f"user/{self.user_id}/join"))
        msk, tau, req = ngs.join(self._keys.usk, ipk, opk, None, rng)
        return (msk, tau, req), req.hex()

    def accept_issue(self, pending, response: dict, ipk: IssuerPublicKey) -> dict:
        """Step 3: keep msk and tau only if the returned mpk is well formed."""
        if response.get("type") != "join-issue":
            raise JoinRejected(response.get("reason", "Rejected"))
        msk, tau, req = pending
        try:
            mpk = Nickname.from_hex(response["mpk"])
        except MalformedEncoding:
            raise JoinRejected("BadIssuerResponse") from None
        if mpk.w != req.w or mpk.u != G1Elem.hash(req.f.to_bytes()) or not ngs.gvf(ipk, mpk):
            raise JoinRejected("BadIssuerResponse")
        self.msk, self.tau, self.mpk = msk, tau, mpk
        return {"type": "join-accept", "mpk": mpk.hex()}

    def fresh_nickname(self) -> Nickname:
        return ngs.nick(self.mpk, self._stream.next())

    def nickname_for(self, mpk: Nickname) -> Nickname:
        return ngs.nick(mpk, self._stream.next())

    def owns(self, nk: Nickname) -> bool:
        return self.tau is not None and ngs.trace(self.tau, nk)

    def sync(self, ledger: LedgerState) -> None:
        for ev in ledger.scan_events(self.scan_cursor):
            addr = nickname_address(ev.recipient)
            if addr not in self.owned and self.owns(ev.recipient):
                self.owned.append(addr)
            self.scan_cursor = ev.sequence + 1

    def pick_source(self, ledger: LedgerState, amount: int):
        """Richest owned account; ties go to the earliest seen."""
        self.sync(ledger)
        best = None
        for addr in self.owned:
            if best is None or ledger.get_balance(addr) > ledger.get_balance(best):
                best = addr
        return None if best is None else ledger.accounts[best].nickname

    def sign_transfer(self, ledger: LedgerState, sender: Nickname, recipient: Nickname, amount: int) -> str:
        nonce = ledger.get_nonce(nickname_address(sender))
        msg = transfer_message(ledger.domain, sender, recipient, amount, nonce)
        return build_meta_tx(msg, self.msk, self._stream.next(), relayer_id="").to_json()


# ---------------------------------------------------------------------------
# World
# ---------------------------------------------------------------------------

@dataclass
class WorldState:
    rng_seed: int
    params: object = field(default_factory=default_params)
    issuer_actor: IssuerActor | None = None
    supervisor: SupervisorActor | None = None
    authority: AuthorityActor | None = None
    relayer: RelayerActor = field(default_factory=lambda: RelayerActor("relayer-1"))
    auditor: AuditorActor = field(default_factory=AuditorActor)
    users: dict = field(default_factory=dict)
    group: GroupState = field(default_factory=GroupState)
    ledger: LedgerState | None = None
    transcript: list = field(default_factory=list)
    # fault injection; never persisted
    hooks: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def is_set_up(self) -> bool:
        return self.ledger is not None

    @property
    def issuer(self) -> IssuerKeyPair | None:
        return self.issuer_actor._keys if self.issuer_actor else None

    @property
    def opener(self) -> OpenerKeyPair | None:
        return self.supervisor._keys if self.supervisor else None

    def stream(self, label: str) -> _Stream:
        return _Stream(self.rng_seed, label)

    def require_setup(self) -> None:
        if not self.is_set_up:
            raise NotSetUp("run setup first")

    def user(self, user_id: str) -> UserActor:
        try:
            return self.users[user_id]
        except KeyError:
            raise UnknownActor(f"unknown user {user_id!r}") from None

    def member(self, user_id: str) -> UserActor:
        u = self.users.get(user_id)
        if u is None or not u.is_member:
            raise NotAMember(f"{user_id!r} is not a group member")
        return u

    def record(self, entry: dict) -> dict:
        entry = {"step": len(self.transcript), **entry}
        self.transcript.append(entry)
        return entry

    def transcript_jsonl(self) -> str:
        return "".join(canonical_json(e) + "\n" for e in self.transcript)

    # -- persistence --

    def to_dict(self) -> dict:
        out = {
            "format": WORLD_FORMAT,
            "version": WORLD_VERSION,
            "rng_seed": self.rng_seed,
            "relayer_id": self.relayer.relayer_id,
            "group": self.group.to_dict(),
            "transcript": self.transcript,
            "users": {},
        }
        if self.is_set_up:
            ia, sv, au = self.issuer_actor, self.supervisor, self.authority
            out["issuer"] = {"isk": ia._keys.isk.to_dict(), "ipk": ia._keys.ipk.to_dict()}
            out["supervisor"] = {
                "osk": sv._keys.osk.to_bytes().hex(),
                "opk": sv._keys.opk.to_bytes().hex(),
                "counter": sv._stream.counter,
            }
            out["authority"] = {
                "sk": au._keys.usk.to_bytes().hex(),
                "pk": au._keys.upk.to_bytes().hex(),
                "counter": au._stream.counter,
            }
            out["ledger"] = self.ledger.to_dict()
        for uid, u in sorted(self.users.items()):
            out["users"][uid] = {
                "usk": u._keys.usk.to_bytes().hex(),
                "upk": u._keys.upk.to_bytes().hex(),
                "msk": u.msk.hex() if u.msk else None,
                "tau": u.tau.hex() if u.tau else None,
                "mpk": u.mpk.hex() if u.mpk else None,
                "counter": u._stream.counter,
                "scan_cursor": u.scan_cursor,
                "owned": [a.hex() for a in u.owned],
                "sent_total": u.sent_total,
            }
        return out

    def to_json(self) -> str:
        return canonical_json(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict) -> "WorldState":
        if not isinstance(data, dict) or data.get("format") != WORLD_FORMAT:
            raise StateFileError("not a NickPay world state file")
        if data.get("version") != WORLD_VERSION:
            raise StateFileError(f"unsupported state version {data.get('version')!r}")
        try:
            return cls._from_dict(data)
        except (KeyError, TypeError, ValueError) as exc:
            raise StateFileError(f"corrupt state file: {exc}") from None

    @classmethod
    def _from_dict(cls, data: dict) -> "WorldState":
        def scalar(h):
            return Scalar.from_bytes(bytes.fromhex(h))

        seed = int(data["rng_seed"])
        world = cls(rng_seed=seed, relayer=RelayerActor(data["relayer_id"]))
        world.group = GroupState.from_dict(data["group"])
        world.transcript = list(data["transcript"])
        if "ledger" in data:
            iss_keys = IssuerKeyPair(
                IssuerSecretKey.from_dict(data["issuer"]["isk"]),
                IssuerPublicKey.from_dict(data["issuer"]["ipk"]),
            )
            sv = data["supervisor"]
            opener = OpenerKeyPair(scalar(sv["osk"]), G2Elem.from_bytes(bytes.fromhex(sv["opk"])))
            au = data["authority"]
            auth = UserKeyPair(scalar(au["sk"]), G1Elem.from_bytes(bytes.fromhex(au["pk"])))
            world.issuer_actor = IssuerActor(iss_keys, opener.opk, world.group)
            world.supervisor = SupervisorActor(opener, world.group, _Stream(seed, "supervisor", sv["counter"]))
            world.authority = AuthorityActor(auth, _Stream(seed, "authority", au["counter"]))
            world.ledger = LedgerState.from_dict(data["ledger"])
        for uid, raw in data["users"].items():
            keys = UserKeyPair(scalar(raw["usk"]), G1Elem.from_bytes(bytes.fromhex(raw["upk"])))
            u = UserActor(uid, keys, _Stream(seed, f"user/{uid}", raw["counter"]))
            u.msk = MasterSecret.from_hex(raw["msk"]) if raw["msk"] else None
            u.tau = Trapdoor.from_hex(raw["tau"]) if raw["tau"] else None
            u.mpk = Nickname.from_hex(raw["mpk"]) if raw["mpk"] else None
            u.scan_cursor = int(raw["scan_cursor"])
            u.owned = [bytes.fromhex(a) for a in raw["owned"]]
            u.sent_total = int(raw["sent_total"])
            world.users[uid] = u
        return world

    @classmethod
    def from_json(cls, text: str) -> "WorldState":
        try:
            data = json.loads(text)
        except ValueError as exc:
            raise StateFileError(f"state file is not JSON: {exc}") from None
        return cls.from_dict(data)


def new_world(seed: int | None = None) -> WorldState:
    if seed is None:
        seed = make_rng().getrandbits(64)
    if not 0 <= seed < 2**64:
        raise ValueError("seed must be an unsigned 64-bit integer")
    return WorldState(rng_seed=seed)


# ---------------------------------------------------------------------------
# Protocol flows
# ---------------------------------------------------------------------------

def run_setup(world: WorldState) -> WorldState:
    if world.is_set_up:
        raise AlreadySetUp("world is already set up")
    params = world.params
    issuer = ngs.ikg(params, world.stream("setup/issuer").next())
    opener = ngs.okg(params, world.stream("setup/opener").next())
    authority = ngs.ds_keygen(params, world.stream("setup/authority").next())
    world.issuer_actor = IssuerActor(issuer, opener.opk, world.group)
    world.supervisor = SupervisorActor(opener, world.group, world.stream("supervisor"))
    world.authority = AuthorityActor(authority, world.stream("authority"))
    world.ledger = LedgerState(authority_key=authority.upk, issuer_pub=issuer.ipk)
    world.record({
        "op": "setup",
        "seed": world.rng_seed,
        "ipk": issuer.ipk.hex(),
        "opk": opener.opk.to_bytes().hex(),
        "authority": authority.upk.to_bytes().hex(),
    })
    return world


def _get_or_create_user(world: WorldState, user_id: str) -> UserActor:
    if user_id not in world.users:
        keys = ngs.ukg(world.params, world.stream(f"ukg/{user_id}").next())
        world.users[user_id] = UserActor(user_id, keys, world.stream(f"user/{user_id}"))
        world.group.register_user(user_id, keys.upk)  # CA publishes upk
    return world.users[user_id]


def run_join(world: WorldState, user_id: str) -> WorldState:
    """Three-step enrollment: request, issue, user-side acceptance."""
    world.require_setup()
    if not user_id or not isinstance(user_id, str):
        raise ValueError("user id must be a non-empty string")
    user = _get_or_create_user(world, user_id)
    issuer = world.issuer_actor
    pending, req_hex = user.join_request(world.rng_seed, issuer.ipk, world.supervisor.opk)

    response = issuer.handle_join(user_id, req_hex)
    corrupt = world.hooks.get("corrupt_issue")
    if corrupt is not None and response.get("type") == "join-issue":
        response = corrupt(response)

    try:
        ack = user.accept_issue(pending, response, issuer.ipk)
    except JoinRejected as exc:
        world.record({"op": "join", "user": user_id, "error": "JoinRejected", "cause": exc.cause})
        raise
    issuer.handle_accept(user_id, ack, world.ledger)
    world.record({"op": "join", "user": user_id, "mpk": user.mpk.hex()})
    return world


def flip_v(response: dict) -> dict:
    """Fault hook for run_join: replace v in the issued mpk with v * g."""
    mpk = Nickname.from_hex(response["mpk"])
    bad = Nickname(mpk.u, mpk.v * G1Elem.generator(), mpk.w)
    return {**response, "mpk": bad.hex()}


def run_mint(world: WorldState, user_id: str, amount: int) -> AnnouncementEvent:
    world.require_setup()
    user = world.member(user_id)
    nk = user.fresh_nickname()
    tx_json = world.authority.handle_mint_request(nk.hex(), amount, world.ledger.authority_nonce)
    try:
        ev = world.ledger.mint(MintTx.from_dict(json.loads(tx_json)))
    except NickPayError as exc:
        world.record({"op": "mint", "user": user_id, "amount": amount, "error": exc.name})
        raise
    world.record({"op": "mint", "user": user_id, "amount": amount, "nickname": nk.hex(), "sequence": ev.sequence})
    return ev


def run_transfer(world: WorldState, sender_id: str, recipient_id: str, amount: int) -> AnnouncementEvent:
    world.require_setup()
    sender = world.member(sender_id)
    mpk = world.ledger.get_mpk(recipient_id)
    if mpk is None:
        raise NotAMember(f"{recipient_id!r} has no registered master public key")
    source = sender.pick_source(world.ledger, amount)
    if source is None:
        # nothing received yet; the ledger reports the missing account
        source = sender.fresh_nickname()
    nk_r = sender.nickname_for(mpk)
    envelope = sender.sign_transfer(world.ledger, source, nk_r, amount)
    tamper = world.hooks.get("tamper_meta_tx")
    if tamper is not None:
        envelope = tamper(envelope)
    try:
        ev = world.relayer.relay(envelope, world.ledger)
    except (NickPayError, MalformedEncoding) as exc:
        name = exc.name if isinstance(exc, NickPayError) else type(exc).__name__
        world.record({"op": "transfer", "from": sender_id, "to": recipient_id, "amount": amount, "error": name})
        raise
    sender.sent_total += amount
    world.record({
        "op": "transfer", "from": sender_id, "to": recipient_id, "amount": amount,
        "sender_nickname": source.hex(), "nickname": nk_r.hex(), "sequence": ev.sequence,
    })
    return ev


@dataclass(frozen=True)
class ScanEntry:
    event: AnnouncementEvent
    owned: bool


def run_scan(world: WorldState, user_id: str) -> list:
    world.require_setup()
    user = world.member(user_id)
    entries = [ScanEntry(ev, user.owns(ev.recipient)) for ev in world.ledger.scan_events(0)]
    user.sync(world.ledger)
    received = sum(e.event.amount for e in entries if e.owned)
    world.record({
        "op": "scan", "user": user_id, "events": len(entries),
        "owned": [e.event.sequence for e in entries if e.owned], "received": received,
    })
    return entries


def wallet_balance(world: WorldState, user_id: str) -> int:
    """Sum of ledger balances over every address the user can trace."""
    user = world.member(user_id)
    user.sync(world.ledger)
    return sum(world.ledger.get_balance(a) for a in user.owned)


@dataclass(frozen=True)
class AuditReport:
    nickname: str
    outcome: str  # FOUND or NOT_FOUND
    user_id: str | None = None
    proof: str | None = None
    verdict: str | None = None  # ACCEPTED or REJECTED

    def to_dict(self) -> dict:
        return {k: v for k, v in self.__dict__.items() if v is not None}


def run_open(world: WorldState, nk_hex: str) -> dict:
    world.require_setup()
    result = world.supervisor.handle_open(nk_hex)
    world.record({"op": "open", "nickname": nk_hex, **{k: v for k, v in result.items() if k != "type"}})
    return result


def run_audit(world: WorldState, nk_hex: str) -> AuditReport:
    """Supervisor opens; the auditor independently judges what it receives."""
    world.require_setup()
    result = world.supervisor.handle_open(nk_hex)
    if result["outcome"] == "NOT_FOUND":
        report = AuditReport(nk_hex, "NOT_FOUND")
    else:
        proof_hex = result["proof"]
        tamper = world.hooks.get("tamper_opening_proof")
        if tamper is not None:
            proof_hex = tamper(proof_hex)
        ok = world.auditor.judge(world.ledger.issuer_pub, world.group, nk_hex, result["user_id"], proof_hex)
        report = AuditReport(nk_hex, "FOUND", result["user_id"], proof_hex, "ACCEPTED" if ok else "REJECTED")
    world.record({"op": "audit", **report.to_dict()})
    return report


def flip_proof_bit(proof_hex: str, bit: int = 0) -> str:
    """Fault hook for run_audit: flip one bit of the serialized opening proof."""
    raw = bytearray(bytes.fromhex(proof_hex))
    raw[bit // 8 % len(raw)] ^= 1 << (bit % 8)
    return raw.hex()


# ---------------------------------------------------------------------------
# Scripts
# ---------------------------------------------------------------------------

class StepKind(enum.Enum):
    SETUP = "SETUP"
    JOIN = "JOIN"
    MINT = "MINT"
    TRANSFER = "TRANSFER"
    SCAN = "SCAN"
    OPEN = "OPEN"
    AUDIT = "AUDIT"


@dataclass(frozen=True)
class Step:
    kind: StepKind
    args: tuple = ()


@dataclass
class ScenarioScript:
    steps: list = field(default_factory=list)

    def add(self, kind: StepKind, *args) -> "ScenarioScript":
        self.steps.append(Step(kind, tuple(args)))
        return self


def resolve_nickname(world: WorldState, ref) -> str:
    """A nickname reference is hex, ``event:<seq>`` or ``last-transfer``."""
    if isinstance(ref, str) and ref.startswith("event:"):
        return world.ledger.events[int(ref[6:])].recipient.hex()
    if ref == "last-transfer":
        for e in reversed(world.transcript):
            if e.get("op") == "transfer" and "error" not in e:
                return e["nickname"]
        raise ValueError("no settled transfer yet")
    return ref


def run_step(world: WorldState, step: Step):
    k, a = step.kind, step.args
    if k is StepKind.SETUP:
        return run_setup(world)
    if k is StepKind.JOIN:
        return run_join(world, *a)
    if k is StepKind.MINT:
        return run_mint(world, *a)
    if k is StepKind.TRANSFER:
        return run_transfer(world, *a)
    if k is StepKind.SCAN:
        return run_scan(world, *a)
    if k is StepKind.OPEN:
        return run_open(world, resolve_nickname(world, a[0]))
    if k is StepKind.AUDIT:
        return run_audit(world, resolve_nickname(world, a[0]))
    raise ValueError(f"unknown step {k}")


def run_script(world: WorldState, script: ScenarioScript, strict: bool = True,
               after_step: Callable | None = None) -> WorldState:
    """Run every step. With ``strict=False`` settlement errors are recorded
    in the transcript and the script carries on."""
    for i, step in enumerate(script.steps):
        try:
            run_step(world, step)
        except NickPayError:
            if strict:
                raise
        if after_step is not None:
            after_step(world, i, step)
    return world


def demo_script(users=("alice", "bob", "carol")) -> ScenarioScript:
    a, b, c = users
    s = ScenarioScript().add(StepKind.SETUP)
    for u in users:
        s.add(StepKind.JOIN, u)
    s.add(StepKind.MINT, a, 100).add(StepKind.MINT, b, 50)
    s.add(StepKind.TRANSFER, a, b, 40).add(StepKind.TRANSFER, b, c, 30)
    for u in users:
        s.add(StepKind.SCAN, u)
    s.add(StepKind.OPEN, "last-transfer").add(StepKind.AUDIT, "last-transfer")
    return s


def random_script(seed: int, n_steps: int = 200, users=("u0", "u1", "u2", "u3", "u4"),
                  max_amount: int = 100) -> ScenarioScript:
    """Setup and joins followed by ``n_steps`` random mints and transfers."""
    rng = make_rng(derive_seed(seed, "script"))
    s = ScenarioScript().add(StepKind.SETUP)
    for u in users:
        s.add(StepKind.JOIN, u)
    for i in range(n_steps):
        if i < len(users) or rng.random() < 0.35:
            s.add(StepKind.MINT, users[i % len(users)] if i < len(users) else rng.choice(users),
                  rng.randint(1, max_amount))
        else:
            src, dst = rng.sample(users, 2)
            s.add(StepKind.TRANSFER, src, dst, rng.randint(1, max_amount))
    return s


def run_demo(seed: int = 42, split_at: int | None = None) -> WorldState:
    """Full storyline. With ``split_at`` the world is exported to JSON after
    that many steps and a freshly loaded copy finishes the run."""
    world = new_world(seed)
    steps = demo_script().steps
    head = steps if split_at is None else steps[:split_at]
    run_script(world, ScenarioScript(list(head)))
    if split_at is not None:
        world = WorldState.from_json(world.to_json())
        run_script(world, ScenarioScript(list(steps[split_at:])))
    return world
