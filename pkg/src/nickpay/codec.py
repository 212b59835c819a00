"""Fixed-layout binary and hex/JSON encoding for protocol structures.

A structure lists its fields in ``FIELDS`` as ``(name, type)`` pairs where
every type has a fixed ``SIZE`` plus ``to_bytes``/``from_bytes``. The binary
form is the plain concatenation in declaration order, with no length prefixes.
"""
from __future__ import annotations

from typing import ClassVar

from .pairing import MalformedEncoding


class Encodable:
    FIELDS: ClassVar[tuple] = ()
    SIZE: ClassVar[int] = 0

    def __init_subclass__(cls, **kwargs):
        super().__init_subclass__(**kwargs)
        if cls.FIELDS:
            cls.SIZE = sum(t.SIZE for _, t in cls.FIELDS)

    def to_bytes(self) -> bytes:
        return b"".join(getattr(self, name).to_bytes() for name, _ in self.FIELDS)

    @classmethod
    def from_bytes(cls, data: bytes):
        if len(data) != cls.SIZE:
            raise MalformedEncoding(f"{cls.__name__} needs {cls.SIZE} bytes, got {len(data)}")
        values = {}
        offset = 0
        for name, typ in cls.FIELDS:
            values[name] = typ.from_bytes(data[offset:offset + typ.SIZE])
            offset += typ.SIZE
        return cls(**values)

    def hex(self) -> str:
        return self.to_bytes().hex()

    @classmethod
    def from_hex(cls, text: str):
        try:
            data = bytes.fromhex(text)
        except ValueError as exc:
            raise MalformedEncoding(f"invalid hex for {cls.__name__}: {exc}") from None
        return cls.from_bytes(data)

    def to_dict(self) -> dict:
        out = {}
        for name, typ in self.FIELDS:
            value = getattr(self, name)
            out[name] = value.to_dict() if isinstance(value, Encodable) else value.to_bytes().hex()
        return out

    @classmethod
    def from_dict(cls, data: dict):
        if not isinstance(data, dict) or set(data) != {name for name, _ in cls.FIELDS}:
            raise MalformedEncoding(f"{cls.__name__}: unexpected fields")
        values = {}
        for name, typ in cls.FIELDS:
            raw = data[name]
            if isinstance(raw, dict) and issubclass(typ, Encodable):
                values[name] = typ.from_dict(raw)
            elif isinstance(raw, str):
                try:
                    values[name] = typ.from_bytes(bytes.fromhex(raw))
                except ValueError as exc:
                    if isinstance(exc, MalformedEncoding):
                        raise
                    raise MalformedEncoding(f"{cls.__name__}.{name}: {exc}") from None
            else:
                raise MalformedEncoding(f"{cls.__name__}.{name}: expected hex string")
        return cls(**values)
