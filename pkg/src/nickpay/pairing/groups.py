"""Public group-element and scalar types over BN254.

Group laws use multiplicative notation: ``a * b`` is the group operation,
``a ** k`` exponentiation by a scalar, ``a / b`` is ``a * b ** -1``.
"""
from __future__ import annotations

import contextlib
import functools
import threading

from gmpy2 import invert, mpz

from . import bn254 as _c
from .hash_to_curve import hash_to_g1_point

ORDER = int(_c.R)
FIELD_MODULUS = int(_c.P)


class MalformedEncoding(ValueError):
    """Bytes that are not the canonical encoding of a valid element."""


# ---------------------------------------------------------------------------
# Scalars
# ---------------------------------------------------------------------------

class Scalar:
    __slots__ = ("value",)
    SIZE = 32

    def __init__(self, value: int):
        self.value = int(value) % ORDER

    def __int__(self):
        return self.value

    __index__ = __int__

    def __repr__(self):
        return f"Scalar({self.value:#x})"

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.value == other.value
        if isinstance(other, int):
            return self.value == other % ORDER
        return NotImplemented

    def __hash__(self):
        return hash(("Scalar", self.value))

    def __bool__(self):
        return self.value != 0

    def __add__(self, other):
        return Scalar(self.value + int(other))

    __radd__ = __add__

    def __sub__(self, other):
        return Scalar(self.value - int(other))

    def __rsub__(self, other):
        return Scalar(int(other) - self.value)

    def __mul__(self, other):
        if isinstance(other, (Scalar, int)):
            return Scalar(self.value * int(other))
        return NotImplemented

    __rmul__ = __mul__

    def __neg__(self):
        return Scalar(-self.value)

    def inverse(self) -> "Scalar":
        if self.value == 0:
            raise ZeroDivisionError("zero scalar has no inverse")
        return Scalar(int(invert(self.value, ORDER)))

    def to_bytes(self) -> bytes:
        return self.value.to_bytes(self.SIZE, "big")

    @classmethod
    def from_bytes(cls, data: bytes) -> "Scalar":
        if len(data) != cls.SIZE:
            raise MalformedEncoding(f"scalar needs {cls.SIZE} bytes, got {len(data)}")
        v = int.from_bytes(data, "big")
        if v >= ORDER:
            raise MalformedEncoding("scalar not reduced modulo the group order")
        return cls(v)


def random_scalar(rng) -> Scalar:
    """Uniform non-zero scalar drawn from ``rng`` (a :class:`random.Random`)."""
    return Scalar(rng.randrange(1, ORDER))


def _exponent(k) -> int:
    return int(k) % ORDER


# ---------------------------------------------------------------------------
# Pairing instrumentation
# ---------------------------------------------------------------------------

class _PairingCounter(threading.local):
    def __init__(self):
        self.count = 0


pairing_counter = _PairingCounter()


@contextlib.contextmanager
def count_pairings():
    """Yield a callable returning the number of pairings evaluated in the block.

    Inside the block the callable reports the running count; after exit it
    keeps returning the total for the block.
    """
    start = pairing_counter.count
    frozen = []
    try:
        yield lambda: frozen[0] if frozen else pairing_counter.count - start
    finally:
        frozen.append(pairing_counter.count - start)


# ---------------------------------------------------------------------------
# Sqrt helpers for decompression
# ---------------------------------------------------------------------------

def _fp_sqrt(a):
    a = mpz(a) % _c.P
    y = pow(a, (_c.P + 1) // 4, _c.P)
    return y if y * y % _c.P == a else None


def _fp2_sqrt(a):
    a0, a1 = a
    if a1 == 0:
        r = _fp_sqrt(a0)
        if r is not None:
            return (r, mpz(0))
        r = _fp_sqrt(-a0)
        return None if r is None else (mpz(0), r)
    n = _fp_sqrt(a0 * a0 + a1 * a1)
    if n is None:
        return None
    half = invert(mpz(2), _c.P)
    for cand in ((a0 + n) * half % _c.P, (a0 - n) * half % _c.P):
        x0 = _fp_sqrt(cand)
        if x0 is not None and x0 != 0:
            x1 = a1 * invert(2 * x0, _c.P) % _c.P
            y = (x0, x1)
            if _c.f2_sqr(y) == (a0 % _c.P, a1 % _c.P):
                return y
    return None


def _sgn0_fp2(y):
    return int(y[0] & 1) if y[0] != 0 else int(y[1] & 1)


_FLAG_SIGN = 0x80
_FLAG_INF = 0x40


# ---------------------------------------------------------------------------
# G1
# ---------------------------------------------------------------------------

class G1Elem:
    """Element of G1; ``pt`` is an affine (x, y) tuple or ``None`` for identity."""

    __slots__ = ("pt",)
    SIZE = 32

    def __init__(self, pt):
        self.pt = pt

    @classmethod
    def generator(cls) -> "G1Elem":
        return cls(_c.G1_GEN)

    @classmethod
    def identity(cls) -> "G1Elem":
        return cls(None)

    @classmethod
    def hash(cls, msg: bytes) -> "G1Elem":
        return cls(hash_to_g1_point(msg))

    def is_identity(self) -> bool:
        return self.pt is None

    def in_subgroup(self) -> bool:
        """Check ``self ** r == 1`` with the raw, unreduced group order."""
        return _c.g1_on_curve(self.pt) and _c.g1_mul(self.pt, _c.R, reduce=False) is None

    def __mul__(self, other: "G1Elem") -> "G1Elem":
        return G1Elem(_c.g1_add(self.pt, other.pt))

    def __pow__(self, k) -> "G1Elem":
        if self.pt == _c.G1_GEN:
            return G1Elem(_c.g1_mul_gen(_exponent(k)))
        return G1Elem(_c.g1_mul(self.pt, _exponent(k)))

    def inverse(self) -> "G1Elem":
        return G1Elem(_c.g1_neg(self.pt))

    def __truediv__(self, other: "G1Elem") -> "G1Elem":
        return self * other.inverse()

    def __eq__(self, other):
        return isinstance(other, G1Elem) and self.pt == other.pt

    def __hash__(self):
        return hash(("G1", self.pt))

    def __repr__(self):
        return f"G1Elem({self.to_bytes().hex()})"

    def to_bytes(self) -> bytes:
        if self.pt is None:
            return bytes([_FLAG_INF]) + bytes(self.SIZE - 1)
        x, y = self.pt
        out = bytearray(int(x).to_bytes(self.SIZE, "big"))
        if y & 1:
            out[0] |= _FLAG_SIGN
        return bytes(out)

    @classmethod
    def from_bytes(cls, data: bytes) -> "G1Elem":
        if len(data) != cls.SIZE:
            raise MalformedEncoding(f"G1 element needs {cls.SIZE} bytes, got {len(data)}")
        flags = data[0] & 0xC0
        body = bytes([data[0] & 0x3F]) + data[1:]
        if flags & _FLAG_INF:
            if flags != _FLAG_INF or any(body):
                raise MalformedEncoding("non-canonical G1 identity encoding")
            return cls(None)
        x = mpz(int.from_bytes(body, "big"))
        if x >= _c.P:
            raise MalformedEncoding("G1 x-coordinate not reduced")
        y = _fp_sqrt(x * x * x + _c.B1)
        if y is None:
            raise MalformedEncoding("G1 x-coordinate is not on the curve")
        if (y & 1) != bool(flags & _FLAG_SIGN):
            y = (-y) % _c.P
        if y == 0 and flags & _FLAG_SIGN:
            raise MalformedEncoding("non-canonical G1 sign flag")
        # cofactor 1: every curve point lies in the prime-order group
        return cls((x, y))


# ---------------------------------------------------------------------------
# G2
# ---------------------------------------------------------------------------

@functools.lru_cache(maxsize=256)
def _prepared(pt):
    return _c.g2_prepare(pt)


class G2Elem:
    __slots__ = ("pt",)
    SIZE = 64

    def __init__(self, pt):
        self.pt = pt

    @classmethod
    def generator(cls) -> "G2Elem":
        return cls(_c.G2_GEN)

    @classmethod
    def identity(cls) -> "G2Elem":
        return cls(None)

    def is_identity(self) -> bool:
        return self.pt is None

    def in_subgroup(self) -> bool:
        return _c.g2_in_subgroup(self.pt)

    def __mul__(self, other: "G2Elem") -> "G2Elem":
        return G2Elem(_c.g2_add(self.pt, other.pt))

    def __pow__(self, k) -> "G2Elem":
        if self.pt == _c.G2_GEN:
            return G2Elem(_c.g2_mul_gen(_exponent(k)))
        return G2Elem(_c.g2_mul(self.pt, _exponent(k)))

    def inverse(self) -> "G2Elem":
        return G2Elem(_c.g2_neg(self.pt))

    def __truediv__(self, other: "G2Elem") -> "G2Elem":
        return self * other.inverse()

    def __eq__(self, other):
        return isinstance(other, G2Elem) and self.pt == other.pt

    def __hash__(self):
        return hash(("G2", self.pt))

    def __repr__(self):
        return f"G2Elem({self.to_bytes().hex()})"

    def to_bytes(self) -> bytes:
        if self.pt is None:
            return bytes([_FLAG_INF]) + bytes(self.SIZE - 1)
        (x0, x1), y = self.pt
        out = bytearray(int(x1).to_bytes(32, "big") + int(x0).to_bytes(32, "big"))
        if _sgn0_fp2(y):
            out[0] |= _FLAG_SIGN
        return bytes(out)

    @classmethod
    def from_bytes(cls, data: bytes) -> "G2Elem":
        if len(data) != cls.SIZE:
            raise MalformedEncoding(f"G2 element needs {cls.SIZE} bytes, got {len(data)}")
        flags = data[0] & 0xC0
        body = bytes([data[0] & 0x3F]) + data[1:]
        if flags & _FLAG_INF:
            if flags != _FLAG_INF or any(body):
                raise MalformedEncoding("non-canonical G2 identity encoding")
            return cls(None)
        x1 = mpz(int.from_bytes(body[:32], "big"))
        x0 = mpz(int.from_bytes(body[32:], "big"))
        if x0 >= _c.P or x1 >= _c.P:
            raise MalformedEncoding("G2 x-coordinate not reduced")
        x = (x0, x1)
        y = _fp2_sqrt(_c.f2_add(_c.f2_mul(_c.f2_sqr(x), x), _c.B2))
        if y is None:
            raise MalformedEncoding("G2 x-coordinate is not on the twist")
        if _sgn0_fp2(y) != bool(flags & _FLAG_SIGN):
            y = _c.f2_neg(y)
        if y == _c.F2_ZERO and flags & _FLAG_SIGN:
            raise MalformedEncoding("non-canonical G2 sign flag")
        pt = (x, y)
        if not _c.g2_in_subgroup(pt):
            raise MalformedEncoding("G2 point outside the prime-order subgroup")
        return cls(pt)

    def prepared(self):
        return _prepared(self.pt)


# ---------------------------------------------------------------------------
# GT
# ---------------------------------------------------------------------------

class GtElem:
    """Element of the order-r subgroup of Fp12^*."""

    __slots__ = ("f",)
    SIZE = 384

    def __init__(self, f):
        self.f = f

    @classmethod
    def identity(cls) -> "GtElem":
        return cls(_c.F12_ONE)

    def is_identity(self) -> bool:
        return self.f == _c.F12_ONE

    def __mul__(self, other: "GtElem") -> "GtElem":
        return GtElem(_c.f12_mul(self.f, other.f))

    def __pow__(self, k) -> "GtElem":
        return GtElem(_c.f12_cyclo_pow(self.f, _exponent(k)))

    def inverse(self) -> "GtElem":
        # unitary: inverse is the conjugate
        return GtElem(_c.f12_conj(self.f))

    def __truediv__(self, other: "GtElem") -> "GtElem":
        return self * other.inverse()

    def __eq__(self, other):
        return isinstance(other, GtElem) and self.f == other.f

    def __hash__(self):
        return hash(("GT", self.f))

    def __repr__(self):
        return f"GtElem({self.to_bytes()[:8].hex()}...)"

    def _coeffs(self):
        (g0, g1, g2), (h0, h1, h2) = self.f
        for c in (g0, g1, g2, h0, h1, h2):
            yield from c

    def to_bytes(self) -> bytes:
        return b"".join(int(c).to_bytes(32, "big") for c in self._coeffs())

    @classmethod
    def from_bytes(cls, data: bytes) -> "GtElem":
        if len(data) != cls.SIZE:
            raise MalformedEncoding(f"GT element needs {cls.SIZE} bytes, got {len(data)}")
        vals = [mpz(int.from_bytes(data[i:i + 32], "big")) for i in range(0, cls.SIZE, 32)]
        if any(v >= _c.P for v in vals):
            raise MalformedEncoding("GT coefficient not reduced")
        f2 = [(vals[i], vals[i + 1]) for i in range(0, 12, 2)]
        f = ((f2[0], f2[1], f2[2]), (f2[3], f2[4], f2[5]))
        if f == ((_c.F2_ZERO,) * 3, (_c.F2_ZERO,) * 3) or _c.f12_pow(f, _c.R) != _c.F12_ONE:
            raise MalformedEncoding("GT element outside the order-r subgroup")
        return cls(f)


# ---------------------------------------------------------------------------
# Pairing
# ---------------------------------------------------------------------------

def pairing_product(pairs) -> GtElem:
    """Return prod e(a_i, b_i) with one shared Miller loop and final exponentiation.

    Each (a, b) pair counts as one pairing evaluation.
    """
    pairs = list(pairs)
    pairing_counter.count += len(pairs)
    live = [(a.pt, b.prepared()) for a, b in pairs if a.pt is not None and b.pt is not None]
    if not live:
        return GtElem.identity()
    return GtElem(_c.final_exponentiation(_c.miller_loop(live)))


def pair(a: G1Elem, b: G2Elem) -> GtElem:
    return pairing_product([(a, b)])


def pairing_check(lhs, rhs) -> bool:
    """True iff prod e(lhs) == prod e(rhs); evaluates len(lhs) + len(rhs) pairings."""
    pairs = list(lhs) + [(a.inverse(), b) for a, b in rhs]
    return pairing_product(pairs).is_identity()
