"""Instance representation: alphabets, string sets, occurrence/successor tables.

Strings are interned to symbol indices (0..m-1) at construction so that the
count and successor tables can be indexed in O(1). Everything here is
immutable after construction and safe to share across workers.
"""

from __future__ import annotations

import string as _string
from dataclasses import dataclass, field
from typing import IO, Iterable, Sequence

import numpy as np

#: Canonical symbol pool, ascending by code point. Generated instances take
#: their alphabet from a prefix of this pool, and header-format parsing pads
#: missing (unobserved) symbols from it so that writing and re-reading an
#: instance reproduces the same alphabet.
SYMBOL_POOL = _string.digits + _string.ascii_uppercase + _string.ascii_lowercase

ABSENT = -1  # successor-table sentinel: symbol does not occur in the suffix


class InstanceFormatError(ValueError):
    """Raised when an instance file cannot be parsed."""


@dataclass(frozen=True)
class Alphabet:
    """An ordered alphabet of distinct single-character symbols."""

    symbols: tuple[str, ...]
    _index: dict[str, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if len(self.symbols) == 0:
            raise ValueError("alphabet must contain at least one symbol")
        if len(set(self.symbols)) != len(self.symbols):
            raise ValueError("alphabet symbols must be unique")
        if any(len(s) != 1 for s in self.symbols):
            raise ValueError("alphabet symbols must be single characters")
        object.__setattr__(self, "_index", {s: i for i, s in enumerate(self.symbols)})

    @property
    def size(self) -> int:
        return len(self.symbols)

    def index(self, symbol: str) -> int:
        try:
            return self._index[symbol]
        except KeyError:
            raise KeyError(f"symbol {symbol!r} not in alphabet") from None

    def encode(self, text: str) -> np.ndarray:
        """Map a character string to an int32 index array."""
        return np.fromiter(
            (self.index(ch) for ch in text), dtype=np.int32, count=len(text)
        )

    def decode(self, indices: Iterable[int]) -> str:
        return "".join(self.symbols[i] for i in indices)

    @classmethod
    def from_pool(cls, m: int) -> "Alphabet":
        """First ``m`` symbols of the canonical pool (m <= 62)."""
        if not 1 <= m <= len(SYMBOL_POOL):
            raise ValueError(f"pool alphabet size must be in [1, {len(SYMBOL_POOL)}]")
        return cls(tuple(SYMBOL_POOL[:m]))


@dataclass(frozen=True)
class StringSet:
    """A set of strings over a shared alphabet, stored as index arrays."""

    alphabet: Alphabet
    strings: tuple[np.ndarray, ...]

    def __post_init__(self) -> None:
        if len(self.strings) == 0:
            raise ValueError("a string set needs at least one string")
        m = self.alphabet.size
        interned = []
        for s in self.strings:
            arr = np.asarray(s, dtype=np.int32)
            if arr.ndim != 1:
                raise ValueError("strings must be one-dimensional index arrays")
            if arr.size and (arr.min() < 0 or arr.max() >= m):
                raise ValueError("symbol index out of alphabet range")
            arr.flags.writeable = False
            interned.append(arr)
        object.__setattr__(self, "strings", tuple(interned))

    @property
    def n(self) -> int:
        return len(self.strings)

    @property
    def m(self) -> int:
        return self.alphabet.size

    @property
    def lengths(self) -> tuple[int, ...]:
        return tuple(len(s) for s in self.strings)

    @property
    def min_length(self) -> int:
        return min(self.lengths)

    @property
    def max_length(self) -> int:
        return max(self.lengths)

    def texts(self) -> list[str]:
        return [self.alphabet.decode(s) for s in self.strings]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, StringSet):
            return NotImplemented
        return self.alphabet == other.alphabet and len(self.strings) == len(
            other.strings
        ) and all(np.array_equal(a, b) for a, b in zip(self.strings, other.strings))

    @classmethod
    def from_texts(cls, texts: Sequence[str], alphabet: Alphabet | None = None) -> "StringSet":
        """Build a set from character strings, inferring the alphabet if absent."""
        if alphabet is None:
            observed = sorted(set().union(*map(set, texts)) if texts else set())
            alphabet = Alphabet(tuple(observed))
        return cls(alphabet, tuple(alphabet.encode(t) for t in texts))


@dataclass(frozen=True)
class OccTable:
    """Suffix occurrence counts: ``cnt[i, pos, sym]`` = #sym in string i from pos on."""

    cnt: np.ndarray  # int32, shape (n, max_len + 1, m)

    def count(self, i: int, pos: int, sym: int) -> int:
        return int(self.cnt[i, pos, sym])


@dataclass(frozen=True)
class SuccTable:
    """Next-occurrence index: ``nxt[i, pos, sym]`` = smallest q >= pos with
    string i's symbol q equal to sym, or ``ABSENT``."""

    nxt: np.ndarray  # int32, shape (n, max_len + 1, m)

    def next(self, i: int, pos: int, sym: int) -> int:
        return int(self.nxt[i, pos, sym])


def build_tables(s: StringSet) -> tuple[OccTable, SuccTable]:
    """Precompute suffix counts and successor indices for every string.

    Rows beyond a string's own length are never consulted (positions are
    bounded by the string length) and stay zero/absent.
    """
    n, m, lmax = s.n, s.m, s.max_length
    cnt = np.zeros((n, lmax + 1, m), dtype=np.int32)
    nxt = np.full((n, lmax + 1, m), ABSENT, dtype=np.int32)
    for i, arr in enumerate(s.strings):
        for pos in range(len(arr) - 1, -1, -1):
            cnt[i, pos] = cnt[i, pos + 1]
            nxt[i, pos] = nxt[i, pos + 1]
            sym = arr[pos]
            cnt[i, pos, sym] += 1
            nxt[i, pos, sym] = pos
    cnt.flags.writeable = False
    nxt.flags.writeable = False
    return OccTable(cnt), SuccTable(nxt)


def upper_bound(s: StringSet, positions: Sequence[int], occ: OccTable | None = None) -> int:
    """Sum over symbols of the minimum per-string occurrence count in the
    remainders defined by ``positions`` — an upper limit on how much common
    subsequence can still be collected."""
    if occ is None:
        occ, _ = build_tables(s)
    pos = np.asarray(positions, dtype=np.int64)
    if pos.shape != (s.n,):
        raise ValueError("positions must have one entry per string")
    lengths = np.array(s.lengths, dtype=np.int64)
    if (pos < 0).any() or (pos > lengths).any():
        raise ValueError("position out of range")
    per_string = occ.cnt[np.arange(s.n), pos, :]  # (n, m)
    return int(per_string.min(axis=0).sum())


def is_common_subsequence(candidate: str | Sequence[int], s: StringSet) -> bool:
    """True iff ``candidate`` can be obtained from every string by deleting
    symbols without reordering."""
    if isinstance(candidate, str):
        cand = s.alphabet.encode(candidate)
    else:
        cand = np.asarray(candidate, dtype=np.int32)
    for arr in s.strings:
        it = iter(arr.tolist())
        if not all(any(ch == x for x in it) for ch in cand.tolist()):
            return False
    return True


def parse_instance(text: str | IO[str], fmt: str = "header") -> StringSet:
    """Parse an instance from text in ``header`` or ``raw`` format.

    header: first line ``n m``; then n lines ``length string``. The alphabet
    is the set of observed characters, padded from ``SYMBOL_POOL`` when fewer
    than m distinct characters occur.
    raw: one string per non-empty line; alphabet inferred from observed
    characters in ascending order.
    """
    if hasattr(text, "read"):
        text = text.read()  # type: ignore[union-attr]
    lines = [ln.rstrip("\r\n") for ln in str(text).splitlines()]
    lines = [ln for ln in lines if ln.strip() != ""]
    if not lines:
        raise InstanceFormatError("empty instance text")

    if fmt == "raw":
        texts = [ln.strip() for ln in lines]
        return StringSet.from_texts(texts)
    if fmt != "header":
        raise ValueError(f"unknown instance format {fmt!r}")

    head = lines[0].split()
    if len(head) != 2:
        raise InstanceFormatError(f"malformed header line {lines[0]!r}")
    try:
        n, m = int(head[0]), int(head[1])
    except ValueError:
        raise InstanceFormatError(f"malformed header line {lines[0]!r}") from None
    if n < 1:
        raise InstanceFormatError(f"declared string count must be positive, got {n}")
    if m < 1:
        raise InstanceFormatError(f"declared alphabet size must be positive, got {m}")
    body = lines[1:]
    if len(body) != n:
        raise InstanceFormatError(f"declared {n} strings but found {len(body)}")

    texts = []
    for ln in body:
        parts = ln.split(None, 1)
        if not parts:
            raise InstanceFormatError(f"malformed string line {ln!r}")
        try:
            declared = int(parts[0])
        except ValueError:
            raise InstanceFormatError(f"malformed string line {ln!r}") from None
        payload = parts[1].strip() if len(parts) > 1 else ""
        if declared != len(payload):
            raise InstanceFormatError(
                f"declared length {declared} but string has {len(payload)} characters"
            )
        texts.append(payload)

    observed = sorted(set().union(*map(set, texts)) if texts else set())
    if len(observed) > m:
        raise InstanceFormatError(
            f"{len(observed)} distinct characters exceed declared alphabet size {m}"
        )
    symbols = list(observed)
    if len(symbols) < m:
        seen = set(symbols)
        for ch in SYMBOL_POOL:
            if len(symbols) == m:
                break
            if ch not in seen:
                symbols.append(ch)
                seen.add(ch)
        if len(symbols) < m:
            raise InstanceFormatError(
                f"cannot pad alphabet to size {m} from the canonical pool"
            )
        symbols.sort()
    return StringSet.from_texts(texts, Alphabet(tuple(symbols)))


def write_instance(s: StringSet, fmt: str = "header") -> str:
    """Serialize an instance so that :func:`parse_instance` round-trips it."""
    texts = s.texts()
    if fmt == "raw":
        return "".join(t + "\n" for t in texts)
    if fmt != "header":
        raise ValueError(f"unknown instance format {fmt!r}")
    out = [f"{s.n} {s.m}"]
    out.extend(f"{len(t)} {t}" for t in texts)
    return "\n".join(out) + "\n"
