"""Hash-to-G1 for BN254 following RFC 9380 (expand_message_xmd + SvdW map).

Suite: ``BN254G1_XMD:SHA-256_SVDW_RO_``. G1 has cofactor 1, so clearing the
cofactor is the identity map.
"""
from __future__ import annotations

import hashlib

from gmpy2 import invert, mpz

from .bn254 import B1, P, g1_add

SUITE_ID = "BN254G1_XMD:SHA-256_SVDW_RO_"
DEFAULT_DST = b"NICKPAY-V01-CS01-with-" + SUITE_ID.encode()

# SvdW constants for y^2 = x^3 + 3 with Z = 1 (the RFC 9380 find_z_svdw result).
Z = mpz(1)
_L = 48  # ceil((ceil(log2(p)) + 128) / 8)


def _g(x):
    return (x * x * x + B1) % P


def _sqrt(a):
    # p = 3 (mod 4)
    return pow(a, (P + 1) // 4, P)


def _is_square(a):
    return a == 0 or pow(a, (P - 1) // 2, P) == 1


def _sgn0(a):
    return int(a) & 1


_C1 = _g(Z)
_C2 = (-Z * invert(mpz(2), P)) % P
_c3 = _sqrt((-_g(Z) * (3 * Z * Z)) % P)
_C3 = _c3 if _sgn0(_c3) == 0 else (-_c3) % P
_C4 = (-4 * _g(Z) * invert(3 * Z * Z, P)) % P


def expand_message_xmd(msg: bytes, dst: bytes, len_in_bytes: int) -> bytes:
    b_in_bytes, r_in_bytes = 32, 64
    ell = -(-len_in_bytes // b_in_bytes)
    if ell > 255 or len_in_bytes > 65535 or len(dst) > 255:
        raise ValueError("expand_message_xmd: requested length or DST too long")
    dst_prime = dst + bytes([len(dst)])
    msg_prime = (
        bytes(r_in_bytes) + msg + len_in_bytes.to_bytes(2, "big") + b"\x00" + dst_prime
    )
    b0 = hashlib.sha256(msg_prime).digest()
    bi = hashlib.sha256(b0 + b"\x01" + dst_prime).digest()
    out = [bi]
    for i in range(2, ell + 1):
        bi = hashlib.sha256(bytes(x ^ y for x, y in zip(b0, bi)) + bytes([i]) + dst_prime).digest()
        out.append(bi)
    return b"".join(out)[:len_in_bytes]


def hash_to_field(msg: bytes, count: int, dst: bytes = DEFAULT_DST) -> list:
    uniform = expand_message_xmd(msg, dst, count * _L)
    return [
        mpz(int.from_bytes(uniform[i * _L:(i + 1) * _L], "big")) % P for i in range(count)
    ]


def map_to_curve_svdw(u):
    """Straight-line Shallue-van de Woestijne map (RFC 9380, appendix F.1)."""
    tv1 = u * u % P * _C1 % P
    tv2 = (1 + tv1) % P
    tv1 = (1 - tv1) % P
    tv3 = tv1 * tv2 % P
    tv3 = invert(tv3, P) if tv3 else mpz(0)
    tv4 = u * tv1 % P * tv3 % P * _C3 % P
    x1 = (_C2 - tv4) % P
    gx1 = _g(x1)
    e1 = _is_square(gx1)
    x2 = (_C2 + tv4) % P
    gx2 = _g(x2)
    e2 = _is_square(gx2) and not e1
    x3 = tv2 * tv2 % P * tv3 % P
    x3 = (x3 * x3 % P * _C4 + Z) % P
    x = x1 if e1 else (x2 if e2 else x3)
    y = _sqrt(_g(x))
    if _sgn0(u) != _sgn0(y):
        y = (-y) % P
    return (x, y)


def hash_to_g1_point(msg: bytes, dst: bytes = DEFAULT_DST):
    u0, u1 = hash_to_field(msg, 2, dst)
    return g1_add(map_to_curve_svdw(u0), map_to_curve_svdw(u1))
