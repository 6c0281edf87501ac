"""Letters and words over a doubled alphabet.

A letter is stored as a small integer code ``2 * base + neg`` where ``neg``
is 1 for a formal inverse.  The inverse of a letter is therefore ``code ^ 1``,
which keeps automaton lookups on plain ints.

Text syntax: a lowercase character is a generator and the matching uppercase
character is its inverse, so ``"abBA"`` is ``a b b^-1 a^-1``.
"""

from __future__ import annotations

from typing import Iterable, Sequence


class Letter(int):
    """A signed letter; behaves as its integer code."""

    __slots__ = ()

    def __new__(cls, base: int, sign: int = 1) -> "Letter":
        if base < 0:
            raise ValueError(f"negative letter base {base}")
        if sign not in (1, -1):
            raise ValueError(f"letter sign must be +1 or -1, got {sign}")
        return super().__new__(cls, 2 * base + (sign < 0))

    @classmethod
    def from_code(cls, code: int) -> "Letter":
        return cls(code >> 1, -1 if code & 1 else 1)

    @property
    def base(self) -> int:
        return int(self) >> 1

    @property
    def sign(self) -> int:
        return -1 if int(self) & 1 else 1

    def inverse(self) -> "Letter":
        return Letter.from_code(int(self) ^ 1)

    def __repr__(self) -> str:
        return f"Letter({self.base}, {self.sign:+d})"


class Word(tuple):
    """Immutable finite sequence of letters; the empty word is the identity."""

    __slots__ = ()

    def __new__(cls, letters: Iterable[int] = ()) -> "Word":
        # letters are kept as plain codes; Letter compares equal to its code
        return super().__new__(cls, letters)

    def __add__(self, other: Sequence[int]) -> "Word":
        return Word(tuple.__add__(self, tuple(other)))

    def __mul__(self, k: int) -> "Word":
        return Word(tuple.__mul__(self, k))

    def __getitem__(self, item):
        got = tuple.__getitem__(self, item)
        return Word(got) if isinstance(item, slice) else got

    def inverse(self) -> "Word":
        return Word(x ^ 1 for x in reversed(self))

    def power(self, k: int) -> "Word":
        """``w^k``; negative ``k`` gives powers of the inverse."""
        return self * k if k >= 0 else self.inverse() * (-k)

    def reduced(self) -> "Word":
        """Free reduction: erase factors x x^-1 until none remain."""
        out: list[int] = []
        for x in self:
            if out and out[-1] == x ^ 1:
                out.pop()
            else:
                out.append(x)
        return Word(out)

    def is_dyck(self) -> bool:
        return not self.reduced()

    def max_base(self) -> int:
        return max((x >> 1 for x in self), default=-1)

    def __repr__(self) -> str:
        return f"Word({format_word(self)!r})"


def gen(base: int, power: int = 1) -> Word:
    """The word x^power for the generator with index ``base``."""
    return Word([Letter(base)]).power(power)


def parse_word(text: str, alphabet: Sequence[str]) -> Word:
    """Parse ``text`` in letter syntax; whitespace is ignored.

    ``"1"`` and the empty string both denote the empty word.
    """
    index = {name: i for i, name in enumerate(alphabet)}
    letters = []
    text = "".join(text.split())
    if text == "1":
        return Word()
    for ch in text:
        low = ch.lower()
        if low not in index:
            raise ValueError(f"letter {ch!r} is not in alphabet {list(alphabet)}")
        letters.append(Letter(index[low], 1 if ch == low else -1))
    return Word(letters)


def format_word(w: Sequence[int], alphabet: Sequence[str] | None = None) -> str:
    if not w:
        return "1"
    chars = []
    for x in w:
        base = x >> 1
        name = alphabet[base] if alphabet is not None else chr(ord("a") + base)
        chars.append(name.upper() if x & 1 else name)
    return "".join(chars)


def validate_alphabet(alphabet: Sequence[str]) -> tuple[str, ...]:
    names = tuple(alphabet)
    if not names:
        raise ValueError("alphabet must be nonempty")
    if len(set(names)) != len(names):
        raise ValueError(f"alphabet has repeated names: {list(names)}")
    for name in names:
        if len(name) != 1 or not name.islower():
            raise ValueError(f"alphabet names must be single lowercase characters, got {name!r}")
    return names
