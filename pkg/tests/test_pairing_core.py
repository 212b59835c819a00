"""Group arithmetic, pairing, hashing, sampling, digest and encoding."""
import os
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nickpay.pairing import (
    ELEMENT_TYPES,
    FIELD_MODULUS,
    ORDER,
    G1Elem,
    G2Elem,
    GtElem,
    MalformedEncoding,
    Scalar,
    SchemeParams,
    count_pairings,
    default_params,
    deserialize,
    from_hex,
    hash_to_g1,
    keccak_digest,
    make_rng,
    pair,
    pairing_check,
    pairing_product,
    random_scalar,
    serialize,
    to_hex,
)
from nickpay.pairing import bn254
from nickpay.pairing.hash_to_curve import SUITE_ID, expand_message_xmd, hash_to_g1_point

import oracles

g, gh = G1Elem.generator(), G2Elem.generator()


# -- parameters ---------------------------------------------------------------

def test_curve_constants_match_reference():
    assert ORDER == oracles.R and FIELD_MODULUS == oracles.P
    u = 4965661367192848881
    assert ORDER == 36 * u**4 + 36 * u**3 + 18 * u**2 + 6 * u + 1
    assert FIELD_MODULUS == 36 * u**4 + 36 * u**3 + 24 * u**2 + 6 * u + 1


def test_group_order_is_prime():
    from gmpy2 import is_prime

    assert is_prime(ORDER, 50)
    assert is_prime(FIELD_MODULUS, 50)


def test_scheme_params_pin_curve_and_suite():
    p = default_params()
    assert p.curve_id == "BN254"
    assert p.hash_to_g1_suite == SUITE_ID == "BN254G1_XMD:SHA-256_SVDW_RO_"
    assert not p.g.is_identity() and not p.g_hat.is_identity()
    assert p.security_parameter == 100
    assert p == SchemeParams()


def test_generators_match_py_ecc():
    from py_ecc.optimized_bn128 import G1, G2

    assert g.pt == oracles.from_py_ecc(G1)
    assert gh.pt == oracles.from_py_ecc(G2)
    assert g.in_subgroup() and gh.in_subgroup()


# -- scalar mult vs py_ecc ----------------------------------------------------

@pytest.mark.parametrize("k", [1, 2, 3, 5, 2**64 + 7, ORDER - 1])
def test_g1_mul_matches_py_ecc(k):
    from py_ecc.optimized_bn128 import G1, multiply

    assert (g ** k).pt == oracles.from_py_ecc(multiply(G1, k))


def test_g1_random_mul_matches_py_ecc():
    from py_ecc.optimized_bn128 import G1, add, multiply

    rng = random.Random(5)
    for _ in range(20):
        a, b = rng.randrange(1, ORDER), rng.randrange(1, ORDER)
        assert (g ** a * g ** b).pt == oracles.from_py_ecc(add(multiply(G1, a), multiply(G1, b)))


def test_g2_random_mul_matches_py_ecc():
    from py_ecc.optimized_bn128 import G2, multiply

    rng = random.Random(6)
    for _ in range(10):
        k = rng.randrange(1, ORDER)
        assert (gh ** k).pt == oracles.from_py_ecc(multiply(G2, k))


def test_group_laws():
    a, b = g ** 11, g ** 31
    assert a * b == g ** 42
    assert a / a == G1Elem.identity()
    assert a * G1Elem.identity() == a
    assert g ** ORDER == G1Elem.identity()
    assert gh ** 0 == G2Elem.identity()
    assert (gh ** 3) * (gh ** 4).inverse() == gh ** -1


# -- pairing ------------------------------------------------------------------

def test_pairing_matches_py_ecc_on_generators():
    ours = bn254.f12_to_coeffs(pair(g, gh).f)
    assert ours == oracles.py_ecc_pairing_coeffs(g.pt, gh.pt)


def test_pairing_matches_py_ecc_on_random_points():
    rng = random.Random(8)
    for _ in range(2):
        a = g ** rng.randrange(1, ORDER)
        b = gh ** rng.randrange(1, ORDER)
        assert bn254.f12_to_coeffs(pair(a, b).f) == oracles.py_ecc_pairing_coeffs(a.pt, b.pt)


def test_pairing_bilinear_small_exponents():
    assert pair(g ** 3, gh ** 5) == pair(g, gh) ** 15


def test_pairing_identity_inputs():
    assert pair(G1Elem.identity(), gh).is_identity()
    assert pair(g, G2Elem.identity()).is_identity()


def test_pairing_non_degenerate():
    e = pair(g, gh)
    assert not e.is_identity()
    assert (e ** ORDER).is_identity()


def test_pairing_bilinear_randomized_100_trials():
    rng = make_rng(2024)
    for _ in range(100):
        a = g ** random_scalar(rng)
        b = gh ** random_scalar(rng)
        x = random_scalar(rng)
        assert pair(a ** x, b) == pair(a, b ** x)


def test_pairing_product_is_product_of_pairings():
    rng = make_rng(3)
    pairs = [(g ** random_scalar(rng), gh ** random_scalar(rng)) for _ in range(3)]
    prod = GtElem.identity()
    for a, b in pairs:
        prod = prod * pair(a, b)
    assert pairing_product(pairs) == prod


def test_pairing_check_and_counter():
    with count_pairings() as n:
        assert pairing_check([(g ** 6, gh)], [(g ** 2, gh ** 3)])
        assert not pairing_check([(g ** 6, gh)], [(g ** 2, gh ** 4)])
    assert n() == 4


def test_gt_arithmetic():
    e = pair(g, gh)
    assert e * e.inverse() == GtElem.identity()
    assert e ** -1 == e.inverse()
    assert (e ** 5) / (e ** 2) == e ** 3


# -- hashing to G1 ------------------------------------------------------------

def test_expand_message_matches_reference():
    dst = b"QUUX-V01-CS02-with-expander-SHA256-128"
    for msg in (b"", b"abc", b"a" * 200):
        for n in (32, 96, 128):
            assert expand_message_xmd(msg, dst, n) == oracles._xmd(msg, dst, n)


def test_expand_message_rfc_vector():
    # RFC 9380 appendix K.1, expand_message_xmd(SHA-256), msg "", len 0x20
    out = expand_message_xmd(b"", b"QUUX-V01-CS02-with-expander-SHA256-128", 0x20)
    assert out.hex() == "68a985b87eb6b46952128911f2a4412bbc302a9d759667f87f7a21d803f07235"


def test_hash_to_g1_published_bn254_vector():
    # BN254G1_XMD:SHA-256_SVDW_RO_ vector with the QUUX test DST, msg ""
    x, y = hash_to_g1_point(b"", dst=b"QUUX-V01-CS02-with-BN254G1_XMD:SHA-256_SVDW_RO_")
    assert int(x) == 0x0A976AB906170DB1F9638D376514DBF8C42AEF256A54BBD48521F20749E59E86
    assert int(y) == 0x02925EAD66B9E68BFC309B014398640AB55F6619AB59BC1FAB2210AD4C4D53D5


def test_hash_to_g1_matches_reference_implementation():
    rng = random.Random(11)
    from nickpay.pairing.hash_to_curve import DEFAULT_DST

    for _ in range(25):
        msg = rng.randbytes(rng.randrange(0, 80))
        assert tuple(int(c) for c in hash_to_g1(msg).pt) == oracles.hash_to_g1_reference(msg, DEFAULT_DST)


def test_hash_to_g1_deterministic_and_in_subgroup():
    h = hash_to_g1(b"nickpay")
    assert h == hash_to_g1(b"nickpay")
    assert h.in_subgroup()
    assert bn254.g1_mul(h.pt, bn254.R, reduce=False) is None


def test_hash_to_g1_no_collisions_in_10k_corpus():
    seen = set()
    for i in range(10_000):
        seen.add(hash_to_g1(i.to_bytes(4, "big")).to_bytes())
    assert len(seen) == 10_000


# -- random scalars -----------------------------------------------------------

def test_random_scalar_reproducible_under_seed():
    r1, r2 = make_rng(5), make_rng(5)
    assert [random_scalar(r1) for _ in range(5)] == [random_scalar(r2) for _ in range(5)]


def test_random_scalar_never_zero_over_10k_draws():
    rng = make_rng(0)
    draws = [random_scalar(rng) for _ in range(10_000)]
    assert all(d.value != 0 and 0 < d.value < ORDER for d in draws)


def test_distinct_seeds_give_distinct_first_draws():
    firsts = {random_scalar(make_rng(s)).value for s in range(50)}
    assert len(firsts) == 50


def test_scalar_arithmetic():
    a, b = Scalar(ORDER - 1), Scalar(2)
    assert a + b == 1
    assert (a * b).value == ORDER - 2
    assert b.inverse() * b == 1
    assert -Scalar(0) == 0
    with pytest.raises(ZeroDivisionError):
        Scalar(0).inverse()


# -- serialization ------------------------------------------------------------

def _samples(rng):
    s = random_scalar(rng)
    return [s, g ** s, gh ** s, pair(g, gh) ** s]


def test_round_trip_random_elements():
    rng = make_rng(44)
    for _ in range(25):
        for e in _samples(rng):
            data = serialize(e)
            assert len(data) == type(e).SIZE
            assert deserialize(data, type(e)) == e
            assert from_hex(to_hex(e), type(e)) == e


def test_round_trip_identities():
    for e in (G1Elem.identity(), G2Elem.identity(), GtElem.identity(), Scalar(0)):
        assert deserialize(serialize(e), type(e)) == e


def test_fixed_sizes():
    assert {k: v.SIZE for k, v in ELEMENT_TYPES.items()} == {"scalar": 32, "g1": 32, "g2": 64, "gt": 384}


@pytest.mark.parametrize("kind", ["scalar", "g1", "g2", "gt"])
def test_truncated_and_extended_rejected(kind):
    e = _samples(make_rng(1))[["scalar", "g1", "g2", "gt"].index(kind)]
    data = serialize(e)
    for bad in (data[:-1], data + b"\x00", b""):
        with pytest.raises(MalformedEncoding):
            deserialize(bad, kind)


def test_unreduced_scalar_rejected():
    with pytest.raises(MalformedEncoding):
        deserialize(ORDER.to_bytes(32, "big"), "scalar")


def test_g1_off_curve_rejected():
    x = 0
    while True:
        x += 1
        if pow((x**3 + 3) % FIELD_MODULUS, (FIELD_MODULUS - 1) // 2, FIELD_MODULUS) != 1:
            break
    with pytest.raises(MalformedEncoding):
        deserialize(x.to_bytes(32, "big"), "g1")


def test_g1_unreduced_x_rejected():
    data = bytearray((FIELD_MODULUS + 1).to_bytes(32, "big"))
    with pytest.raises(MalformedEncoding):
        deserialize(bytes(data), "g1")


def test_non_canonical_identity_rejected():
    for kind, size in (("g1", 32), ("g2", 64)):
        bad = bytearray(size)
        bad[0] = 0x40
        bad[-1] = 1
        with pytest.raises(MalformedEncoding):
            deserialize(bytes(bad), kind)
        bad = bytearray(size)
        bad[0] = 0xC0
        with pytest.raises(MalformedEncoding):
            deserialize(bytes(bad), kind)


def _twist_point_outside_subgroup():
    """Decompress x = (k, 0) until the twist point is not r-torsion."""
    for k in range(1, 200):
        x = (k % FIELD_MODULUS, 0)
        rhs = bn254.f2_add(bn254.f2_mul(bn254.f2_sqr(x), x), bn254.B2)
        from nickpay.pairing.groups import _fp2_sqrt

        y = _fp2_sqrt(rhs)
        if y is None:
            continue
        pt = (tuple(map(bn254.mpz, x)), y)
        if not bn254.g2_in_subgroup(pt):
            return pt
    raise AssertionError("no off-subgroup twist point found")


def test_g2_wrong_order_point_rejected():
    pt = _twist_point_outside_subgroup()
    assert bn254.g2_on_curve(pt)
    data = G2Elem(pt).to_bytes()  # encoder does not check membership
    with pytest.raises(MalformedEncoding, match="subgroup"):
        deserialize(data, "g2")


def test_gt_outside_subgroup_rejected():
    # a generic Fp12 element (not an r-th power residue)
    bogus = bytearray(384)
    bogus[31] = 2
    with pytest.raises(MalformedEncoding):
        deserialize(bytes(bogus), "gt")
    with pytest.raises(MalformedEncoding):
        deserialize(bytes(384), "gt")


def test_invalid_hex_rejected():
    with pytest.raises(MalformedEncoding):
        from_hex("zz" * 32, "g1")


@settings(max_examples=200, deadline=None)
@given(st.binary(min_size=32, max_size=32))
def test_adversarial_g1_bytes_decode_to_subgroup_or_fail(data):
    try:
        e = deserialize(data, "g1")
    except MalformedEncoding:
        return
    assert e.is_identity() or e.in_subgroup()
    assert serialize(e) == data  # canonical: one encoding per element


@settings(max_examples=60, deadline=None)
@given(st.binary(min_size=64, max_size=64))
def test_adversarial_g2_bytes_decode_to_subgroup_or_fail(data):
    try:
        e = deserialize(data, "g2")
    except MalformedEncoding:
        return
    assert e.is_identity() or e.in_subgroup()
    assert serialize(e) == data


def test_sign_flag_selects_other_root():
    e = g ** 12345
    data = bytearray(serialize(e))
    data[0] ^= 0x80
    assert deserialize(bytes(data), "g1") == e.inverse()


# -- keccak -------------------------------------------------------------------

KECCAK_VECTORS = [
    b"",
    b"abc",
    b"The quick brown fox jumps over the lazy dog",
    b"a" * 135,
    b"a" * 136,
    b"a" * 137,
    bytes(range(256)),
    b"\x00" * 1000,
    "nickname".encode() * 50,
    os.urandom(4096),
]


def test_keccak_empty_string_known_digest():
    expected = "c5d2460186f7233c927e7db2dcc703c0e500b653ca82273b7bfad8045d85a470"
    assert oracles.keccak256(b"").hex() == expected
    assert keccak_digest(b"").hex() == expected


@pytest.mark.parametrize("msg", KECCAK_VECTORS, ids=[f"v{i}" for i in range(len(KECCAK_VECTORS))])
def test_keccak_matches_independent_oracle(msg):
    assert keccak_digest(msg) == oracles.keccak256(msg)


def test_keccak_is_not_sha3():
    import hashlib

    assert keccak_digest(b"") != hashlib.sha3_256(b"").digest()


def test_keccak_avalanche_smoke():
    rng = random.Random(1)
    for _ in range(50):
        msg = bytearray(rng.randbytes(40))
        d0 = keccak_digest(bytes(msg))
        msg[rng.randrange(40)] ^= 1 << rng.randrange(8)
        d1 = keccak_digest(bytes(msg))
        assert d0 != d1
        diff = bin(int.from_bytes(d0, "big") ^ int.from_bytes(d1, "big")).count("1")
        assert 64 < diff < 192


@pytest.mark.parametrize("k", [0, 1, 2, 15, 16, 17, 255, 256, ORDER - 1, ORDER, ORDER + 5, 2**255 + 3])
def test_generator_fast_path_matches_generic(k):
    assert bn254.g1_mul_gen(k) == bn254.g1_mul(bn254.G1_GEN, k)
    assert bn254.g2_mul_gen(k) == bn254.g2_mul(bn254.G2_GEN, k)


def test_generator_fast_path_against_oracle():
    from py_ecc.optimized_bn128 import G1, G2, multiply

    rng = make_rng(31)
    for _ in range(5):
        k = random_scalar(rng)
        assert (G1Elem.generator() ** k).pt == oracles.from_py_ecc(multiply(G1, int(k)))
        assert (G2Elem.generator() ** k).pt == oracles.from_py_ecc(multiply(G2, int(k)))
