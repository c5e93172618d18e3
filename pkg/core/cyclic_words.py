"""Free homotopy classes as conjugacy classes in a free group.

Layer: Domain
Dependencies: none (pure value types)

Letters are encoded as small integers: generator i with exponent +1 is 2*i,
with exponent -1 it is 2*i + 1. Integer order therefore realizes the letter
order a < A < b < B < ... used for canonical rotations, and inversion is
``code ^ 1``.
"""

from __future__ import annotations

import string
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from enum import Enum
from itertools import product

from core.errors import RankMismatchError, WordParseError

ALPHABET = string.ascii_lowercase
MAX_RANK = len(ALPHABET)

# A group element (conjugator) as a freely reduced tuple of letter codes.
GroupWord = tuple[int, ...]


@dataclass(frozen=True, order=True)
class Letter:
    """One generator or inverse generator."""

    generator_index: int
    exponent_sign: int = 1

    def __post_init__(self) -> None:
        if self.generator_index < 0:
            raise RankMismatchError(f"negative generator index {self.generator_index}")
        if self.exponent_sign not in (1, -1):
            raise WordParseError(str(self.exponent_sign), "exponent sign must be +1 or -1")

    @property
    def code(self) -> int:
        return 2 * self.generator_index + (0 if self.exponent_sign == 1 else 1)

    @classmethod
    def from_code(cls, code: int) -> Letter:
        return cls(code >> 1, -1 if code & 1 else 1)

    def __str__(self) -> str:
        return letter_symbol(self.code)


def letter_symbol(code: int) -> str:
    symbol = ALPHABET[code >> 1]
    return symbol.upper() if code & 1 else symbol


def _as_codes(word: Iterable[Letter | int]) -> list[int]:
    return [item.code if isinstance(item, Letter) else int(item) for item in word]


def _check_rank(codes: Iterable[int], rank: int) -> None:
    limit = 2 * rank
    for code in codes:
        if code < 0 or code >= limit:
            raise RankMismatchError(
                f"letter {letter_symbol(code)!r} outside rank {rank}"
                if 0 <= code < 2 * MAX_RANK
                else f"letter code {code} outside rank {rank}"
            )


def free_reduce(word: Iterable[Letter | int]) -> GroupWord:
    """Cancel adjacent inverse pairs."""
    stack: list[int] = []
    for code in _as_codes(word):
        if stack and stack[-1] == code ^ 1:
            stack.pop()
        else:
            stack.append(code)
    return tuple(stack)


def invert(word: Sequence[int]) -> GroupWord:
    return tuple(code ^ 1 for code in reversed(word))


def multiply(*words: Sequence[int]) -> GroupWord:
    """Reduced product of group words."""
    out: list[int] = []
    for word in words:
        for code in word:
            if out and out[-1] == code ^ 1:
                out.pop()
            else:
                out.append(code)
    return tuple(out)


def word_power(word: Sequence[int], exponent: int) -> GroupWord:
    if exponent == 0 or not word:
        return ()
    base = tuple(word) if exponent > 0 else invert(word)
    return free_reduce(base * abs(exponent))


def _strip_conjugation(reduced: GroupWord) -> GroupWord:
    start, end = 0, len(reduced)
    while end - start >= 2 and reduced[start] == reduced[end - 1] ^ 1:
        start += 1
        end -= 1
    return reduced[start:end]


def _least_rotation(codes: GroupWord) -> GroupWord:
    # Quadratic scan; class words stay short.
    if not codes:
        return codes
    return min(codes[i:] + codes[:i] for i in range(len(codes)))


@dataclass(frozen=True, order=True)
class CyclicWord:
    """Cyclically reduced word in canonical (least) rotation.

    Construct through ``cyclically_reduce``; the constructor does not normalize.
    """

    letters: GroupWord
    rank: int = 2

    def __len__(self) -> int:
        return len(self.letters)

    @property
    def is_trivial(self) -> bool:
        return not self.letters

    def __str__(self) -> str:
        return format_word(self.letters)

    @classmethod
    def trivial(cls, rank: int = 2) -> CyclicWord:
        return cls((), rank)


def cyclically_reduce(word: Iterable[Letter | int], rank: int = 2) -> CyclicWord:
    """Free reduction, removal of the conjugating prefix, least rotation."""
    codes = _as_codes(word)
    _check_rank(codes, rank)
    core = _strip_conjugation(free_reduce(codes))
    return CyclicWord(_least_rotation(core), rank)


def iota(w: CyclicWord) -> CyclicWord:
    """Orientation reversal: reverse the word and invert every letter."""
    return CyclicWord(_least_rotation(invert(w.letters)), w.rank)


def power(w: CyclicWord, m: int) -> CyclicWord:
    """w concatenated m times; m = 0 gives the trivial class."""
    if m < 0:
        raise WordParseError(str(m), "power exponent must be nonnegative")
    if m == 0 or w.is_trivial:
        return CyclicWord.trivial(w.rank)
    # The canonical rotation of w^m is (canonical w)^m.
    return CyclicWord(w.letters * m, w.rank)


def is_reversible(w: CyclicWord) -> bool:
    """True iff w is conjugate to its inverse in the free group."""
    return iota(w) == w


def _same_rank(v: CyclicWord, w: CyclicWord) -> None:
    if v.rank != w.rank:
        raise RankMismatchError(f"mixed ranks {v.rank} and {w.rank}")


def classes_equal_tilde(v: CyclicWord, w: CyclicWord) -> bool:
    _same_rank(v, w)
    return v == w or v == iota(w)


class ClassRelation(Enum):
    EQUAL = "equal"
    NEGATED = "negated"
    DISTINCT = "distinct"


def classes_equal_under(v: CyclicWord, w: CyclicWord) -> ClassRelation:
    _same_rank(v, w)
    if v == w:
        return ClassRelation.EQUAL
    if v == iota(w):
        return ClassRelation.NEGATED
    return ClassRelation.DISTINCT


def exponent_sums(w: CyclicWord) -> tuple[int, ...]:
    sums = [0] * w.rank
    for code in w.letters:
        sums[code >> 1] += -1 if code & 1 else 1
    return tuple(sums)


def primitive_root(w: CyclicWord) -> tuple[CyclicWord, int]:
    """Return (root, m) with w = root^m and root not a proper power."""
    n = len(w)
    for period in range(1, n + 1):
        if n % period == 0 and w.letters == w.letters[:period] * (n // period):
            # A rotation of a canonical word's period block is itself canonical.
            return CyclicWord(w.letters[:period], w.rank), n // period
    return w, 1


@dataclass(frozen=True, order=True)
class ClassTilde:
    """Undirected class: w and iota(w) identified."""

    representative: CyclicWord

    @classmethod
    def of(cls, w: CyclicWord) -> ClassTilde:
        return cls(min(w, iota(w)))

    def __str__(self) -> str:
        return str(self.representative)


@dataclass(frozen=True, order=True)
class ClassUnder:
    """Sign-twisted class: w identified with minus iota(w); trivial class is zero."""

    representative: CyclicWord
    sign: int = 1

    @classmethod
    def of(cls, w: CyclicWord) -> ClassUnder | None:
        if w.is_trivial:
            return None
        flipped = iota(w)
        if flipped < w:
            return cls(flipped, -1)
        return cls(w, 1)

    def __str__(self) -> str:
        return str(self.representative)


# --- text form ---------------------------------------------------------------


def format_word(letters: Sequence[int]) -> str:
    if not letters:
        return "1"
    return " ".join(letter_symbol(code) for code in letters)


def _parse_token(token: str, rank: int) -> list[int]:
    if "^" in token:
        base, _, exponent_text = token.partition("^")
        if len(base) != 1 or not base.isalpha():
            raise WordParseError(token)
        try:
            exponent = int(exponent_text)
        except ValueError:
            raise WordParseError(token, "malformed exponent") from None
        code = _parse_letter(base, token, rank)
        return list(word_power((code,), exponent))
    return [_parse_letter(char, token, rank) for char in token]


def _parse_letter(char: str, token: str, rank: int) -> int:
    if not char.isascii() or not char.isalpha():
        raise WordParseError(token)
    index = ALPHABET.index(char.lower())
    if index >= rank:
        raise RankMismatchError(f"generator {char!r} outside rank {rank} in token {token!r}")
    return 2 * index + (1 if char.isupper() else 0)


def parse_word(text: str, rank: int = 2) -> GroupWord:
    """Parse "a b A B" / "a^3 b^-1" / "abAB" into a freely reduced group word."""
    codes: list[int] = []
    for token in text.split():
        if token == "1":
            continue
        codes.extend(_parse_token(token, rank))
    return free_reduce(codes)


def parse_class(text: str, rank: int = 2) -> CyclicWord:
    return cyclically_reduce(parse_word(text, rank), rank)


# --- enumeration -------------------------------------------------------------


def enumerate_reduced_words(rank: int, max_length: int) -> list[GroupWord]:
    """All freely reduced words of length <= max_length in shortlex order."""
    words: list[GroupWord] = [()]
    frontier: list[GroupWord] = [()]
    alphabet = range(2 * rank)
    for _ in range(max_length):
        nxt = [
            word + (code,)
            for word in frontier
            for code in alphabet
            if not word or word[-1] != code ^ 1
        ]
        words.extend(nxt)
        frontier = nxt
    return words


def enumerate_classes(
    rank: int, max_length: int, *, include_trivial: bool = True
) -> list[CyclicWord]:
    """Every conjugacy class with a cyclically reduced word of length <= max_length."""
    classes: set[CyclicWord] = set()
    for length in range(1, max_length + 1):
        for codes in product(range(2 * rank), repeat=length):
            if any(codes[i] == codes[i - 1] ^ 1 for i in range(length)):
                continue
            classes.add(CyclicWord(_least_rotation(codes), rank))
    ordered = sorted(classes, key=lambda w: (len(w), w.letters))
    if include_trivial:
        ordered.insert(0, CyclicWord.trivial(rank))
    return ordered
