"""Normal-form codecs: psi (word -> element) and its inverse for each shipped structure."""

from __future__ import annotations

import itertools
from abc import ABC, abstractmethod
from collections.abc import Mapping, Sequence
from typing import Any

from cadist.exceptions import ConfigurationError, StructureError
from cadist.groups.base import Word
from cadist.groups.models import LampState, ZkElement

TRACK_PAD = "_"


class Codec(ABC):
    """psi: L -> G and a normal-form map G -> L."""

    name: str

    @abstractmethod
    def decode(self, word: Sequence[str]) -> Any: ...

    @abstractmethod
    def encode(self, g: Any) -> Word: ...

    def params(self) -> dict[str, Any]:
        return {}

    def spec(self) -> dict[str, Any]:
        return {"name": self.name, "params": self.params()}


class UnaryCodec(Codec):
    """Z as t^k or T^k."""

    name = "unary"

    def __init__(self, up: str = "t", down: str = "T") -> None:
        self.up = up
        self.down = down

    def decode(self, word: Sequence[str]) -> ZkElement:
        n = 0
        for token in word:
            if token == self.up:
                n += 1
            elif token == self.down:
                n -= 1
            else:
                raise StructureError(f"Not a unary word: {list(word)}")
        return (n,)

    def encode(self, g: ZkElement) -> Word:
        (n,) = g
        return (self.up,) * n if n >= 0 else (self.down,) * -n

    def params(self) -> dict[str, Any]:
        return {"up": self.up, "down": self.down}


def zigzag(n: int) -> int:
    return 2 * n if n >= 0 else -2 * n - 1


def unzigzag(z: int) -> int:
    return z // 2 if z % 2 == 0 else -(z + 1) // 2


def bits_lsb(z: int) -> Word:
    out: list[str] = []
    while z:
        out.append(str(z & 1))
        z >>= 1
    return tuple(out)


def from_bits_lsb(word: Sequence[str]) -> int:
    z = 0
    for i, bit in enumerate(word):
        if bit not in ("0", "1"):
            raise StructureError(f"Not a binary word: {list(word)}")
        z |= int(bit) << i
    return z


class ZigzagCodec(Codec):
    """Z through n -> 2n (n >= 0), -2n-1 (n < 0), written least significant bit first."""

    name = "zigzag"

    def decode(self, word: Sequence[str]) -> ZkElement:
        return (unzigzag(from_bits_lsb(word)),)

    def encode(self, g: ZkElement) -> Word:
        (n,) = g
        return bits_lsb(zigzag(n))


def track_letters(components: Sequence[str], width: int = 2) -> list[str]:
    """Track letters over components plus the blank, minus the all-blank letter."""
    symbols = [*components, TRACK_PAD]
    return [
        "".join(parts)
        for parts in itertools.product(symbols, repeat=width)
        if any(p != TRACK_PAD for p in parts)
    ]


def split_tracks(word: Sequence[str], width: int = 2) -> list[Word]:
    tracks: list[list[str]] = [[] for _ in range(width)]
    for letter in word:
        if len(letter) != width:
            raise StructureError(f"Not a track letter: {letter!r}")
        for i, part in enumerate(letter):
            if part != TRACK_PAD:
                tracks[i].append(part)
    return [tuple(t) for t in tracks]


def join_tracks(tracks: Sequence[Sequence[str]]) -> Word:
    length = max((len(t) for t in tracks), default=0)
    return tuple(
        "".join(t[j] if j < len(t) else TRACK_PAD for t in tracks) for j in range(length)
    )


class ZigzagPairCodec(Codec):
    """Z^2 as two zigzag-binary words read in parallel tracks."""

    name = "zigzag2"

    def __init__(self) -> None:
        self._inner = ZigzagCodec()

    def decode(self, word: Sequence[str]) -> ZkElement:
        wx, wy = split_tracks(word)
        return (self._inner.decode(wx)[0], self._inner.decode(wy)[0])

    def encode(self, g: ZkElement) -> Word:
        x, y = g
        return join_tracks([self._inner.encode((x,)), self._inner.encode((y,))])


def fold(position: int) -> int:
    """Lamp position -> letter index: 0, 1, -1, 2, -2, ... at 0, 1, 2, 3, 4, ..."""
    return 2 * position - 1 if position > 0 else -2 * position


def unfold(index: int) -> int:
    if index == 0:
        return 0
    return (index + 1) // 2 if index % 2 else -(index // 2)


LAMP_OFF, LAMP_ON, CURSOR_OFF, CURSOR_ON = "0", "1", "o", "x"


class LamplighterCodec(Codec):
    """Z2 wr Z as folded lamp bits with the cursor letter marking its position.

    Letter i describes lamp unfold(i); the word stops at the last lit lamp
    or the cursor, whichever is further, so the identity is "o".
    """

    name = "lamplighter-folded"

    def decode(self, word: Sequence[str]) -> LampState:
        lamps = set()
        cursor = None
        for i, letter in enumerate(word):
            if letter in (LAMP_ON, CURSOR_ON):
                lamps.add(unfold(i))
            if letter in (CURSOR_OFF, CURSOR_ON):
                if cursor is not None:
                    raise StructureError(f"Two cursor letters in {list(word)}")
                cursor = unfold(i)
            elif letter not in (LAMP_OFF, LAMP_ON):
                raise StructureError(f"Unknown lamplighter letter {letter!r}")
        if cursor is None:
            raise StructureError(f"No cursor letter in {list(word)}")
        return LampState(frozenset(lamps), cursor)

    def encode(self, g: LampState) -> Word:
        cursor_index = fold(g.cursor)
        lit = {fold(p) for p in g.lamps}
        length = 1 + max(lit | {cursor_index})
        out = []
        for i in range(length):
            on = i in lit
            if i == cursor_index:
                out.append(CURSOR_ON if on else CURSOR_OFF)
            else:
                out.append(LAMP_ON if on else LAMP_OFF)
        return tuple(out)


class BlockCodec(Codec):
    """psi' = psi o rho^-1 for a letter-to-block substitution of uniform length."""

    name = "blocks"

    def __init__(self, inner: Codec, rho: Mapping[str, Sequence[str]]) -> None:
        self.inner = inner
        self.rho = {letter: tuple(block) for letter, block in rho.items()}
        lengths = {len(b) for b in self.rho.values()}
        if len(lengths) != 1 or 0 in lengths:
            raise StructureError(f"Blocks must share one non-zero length, got {lengths}")
        (self.width,) = lengths
        self._back = {block: letter for letter, block in self.rho.items()}
        if len(self._back) != len(self.rho):
            raise StructureError("Block substitution is not injective on letters")

    def unblock(self, word: Sequence[str]) -> Word:
        if len(word) % self.width:
            raise StructureError(f"Word length {len(word)} is not a multiple of {self.width}")
        out = []
        for j in range(0, len(word), self.width):
            block = tuple(word[j : j + self.width])
            if block not in self._back:
                raise StructureError(f"Unknown block {block}")
            out.append(self._back[block])
        return tuple(out)

    def decode(self, word: Sequence[str]) -> Any:
        return self.inner.decode(self.unblock(word))

    def encode(self, g: Any) -> Word:
        return tuple(s for letter in self.inner.encode(g) for s in self.rho[letter])

    def params(self) -> dict[str, Any]:
        return {"inner": self.inner.spec(), "rho": {k: list(v) for k, v in self.rho.items()}}


def codec_from_spec(spec: Mapping[str, Any]) -> Codec:
    """Rebuild a codec from its {"name", "params"} record.

    Raises:
        ConfigurationError: If the codec name is not registered
    """
    name = spec.get("name")
    params = dict(spec.get("params") or {})
    if name == UnaryCodec.name:
        return UnaryCodec(**params)
    if name == ZigzagCodec.name:
        return ZigzagCodec()
    if name == ZigzagPairCodec.name:
        return ZigzagPairCodec()
    if name == LamplighterCodec.name:
        return LamplighterCodec()
    if name == BlockCodec.name:
        return BlockCodec(codec_from_spec(params["inner"]), params["rho"])
    raise ConfigurationError(
        f"Unknown codec: {name}. Valid codecs: unary, zigzag, zigzag2, lamplighter-folded, blocks"
    )
