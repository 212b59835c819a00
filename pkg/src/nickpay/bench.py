"""Latency benchmark for the on-chain verification paths.

Reports median wall time of gvf, uvf, mint and transfer settlement plus the
pairing count of each verifier, and renders a bar chart next to the JSON/CSV.
"""
from __future__ import annotations

import csv
import json
import statistics
import time
from pathlib import Path

from . import ngs
from .ledger import LedgerState, TransferTx, make_mint_tx
from .pairing import count_pairings, derive_seed, make_rng
from .typed_data import TransferBody

OPS = ("gvf", "uvf", "mint", "transfer")


def _fixture(seed: int):
    rng = make_rng(derive_seed(seed, "bench"))
    issuer = ngs.ikg(None, rng)
    opener = ngs.okg(None, rng)
    authority = ngs.ds_keygen(None, rng)
    group = ngs.GroupState()
    keys = ngs.ukg(None, rng)
    group.register_user("bench", keys.upk)
    msk, _tau, req = ngs.join(keys.usk, issuer.ipk, opener.opk, None, rng)
    ngs.iss("bench", issuer.isk, req, opener.opk, group)
    mpk = group.mpk_table["bench"]
    ledger = LedgerState(authority_key=authority.upk, issuer_pub=issuer.ipk)
    return rng, issuer, authority, msk, mpk, ledger


def run_bench(iterations: int = 1000, seed: int = 0) -> dict:
    rng, issuer, authority, msk, mpk, ledger = _fixture(seed)
    nk_a, nk_b = ngs.nick(mpk, rng), ngs.nick(mpk, rng)
    samples = {op: [] for op in OPS}

    with count_pairings() as gvf_pairings:
        ngs.gvf(issuer.ipk, nk_a)
    sig0 = ngs.sign(nk_a, msk, b"bench", rng)
    with count_pairings() as uvf_pairings:
        ngs.uvf(nk_a, b"bench", sig0)

    # inputs are built ahead so only verification and settlement are timed
    mints = [make_mint_tx(authority.usk, nk_a, 10, i, rng) for i in range(iterations)]
    transfers = []
    for i in range(iterations):
        body = TransferBody(nk_a, nk_b, 1, i)
        sig = ngs.sign(nk_a, msk, ledger.transfer_digest(body), rng)
        transfers.append(TransferTx(nk_a, nk_b, 1, i, sig))

    for i in range(iterations):
        t = time.perf_counter()
        ngs.gvf(issuer.ipk, nk_a)
        samples["gvf"].append(time.perf_counter() - t)
        t = time.perf_counter()
        ngs.uvf(nk_a, b"bench", sig0)
        samples["uvf"].append(time.perf_counter() - t)
        t = time.perf_counter()
        ledger.mint(mints[i])
        samples["mint"].append(time.perf_counter() - t)
        t = time.perf_counter()
        ledger.transfer(transfers[i])
        samples["transfer"].append(time.perf_counter() - t)

    return {
        "iterations": iterations,
        "seed": seed,
        "pairings": {"gvf": gvf_pairings(), "uvf": uvf_pairings()},
        "median_ms": {op: statistics.median(v) * 1e3 for op, v in samples.items()},
        "p90_ms": {op: statistics.quantiles(v, n=10)[-1] * 1e3 if len(v) > 1 else v[0] * 1e3
                   for op, v in samples.items()},
    }


def write_report(result: dict, out_dir) -> dict:
    """Write bench.json, bench.csv and bench.png under ``out_dir``."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    paths = {"json": out / "bench.json", "csv": out / "bench.csv", "png": out / "bench.png"}

    paths["json"].write_text(json.dumps(result, indent=2, sort_keys=True) + "\n")
    with paths["csv"].open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["op", "median_ms", "p90_ms", "pairings", "iterations"])
        for op in OPS:
            w.writerow([op, f"{result['median_ms'][op]:.4f}", f"{result['p90_ms'][op]:.4f}",
                        result["pairings"].get(op, ""), result["iterations"]])

    fig, ax = plt.subplots(figsize=(6, 3.5))
    medians = [result["median_ms"][op] for op in OPS]
    bars = ax.bar(OPS, medians, color=["#4c72b0", "#55a868", "#c44e52", "#8172b2"])
    ax.bar_label(bars, fmt="%.2f")
    ax.margins(y=0.15)
    ax.set_ylabel("median latency (ms)")
    ax.set_title(f"Verification and settlement, n={result['iterations']}")
    fig.tight_layout()
    fig.savefig(paths["png"], dpi=120)
    plt.close(fig)
    return {k: str(v) for k, v in paths.items()}
