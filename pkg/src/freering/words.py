"""Reduced words in a free group of finite rank.

Letters are signed integers: ``i`` stands for the generator x_i and ``-i`` for
its inverse.  The identity is the empty word.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from math import gcd
from typing import Iterable, Iterator, Sequence

from .errors import InvalidLetter, PreconditionError, RankMismatch


def _check_letters(letters: Sequence[int], rank: int) -> None:
    for a in letters:
        if a == 0:
            raise InvalidLetter("zero is not a letter")
        if abs(a) > rank:
            raise InvalidLetter(f"letter {a} out of range for rank {rank}")


def reduce_letters(letters: Iterable[int]) -> tuple[int, ...]:
    out: list[int] = []
    for a in letters:
        if out and out[-1] == -a:
            out.pop()
        else:
            out.append(a)
    return tuple(out)


def mul_letters(u: tuple[int, ...], v: tuple[int, ...]) -> tuple[int, ...]:
    """Product of two already reduced letter tuples."""
    k = 0
    n = min(len(u), len(v))
    lu = len(u)
    while k < n and u[lu - 1 - k] == -v[k]:
        k += 1
    if k == 0:
        return u + v
    return u[: lu - k] + v[k:]


def inv_letters(u: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(-a for a in reversed(u))


def shortlex_key(letters: Sequence[int]) -> tuple:
    # x1 < x1^-1 < x2 < x2^-1 < ...
    return (len(letters), tuple((abs(a), a < 0) for a in letters))


@dataclass(frozen=True, slots=True)
class Word:
    rank: int
    letters: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.rank < 1:
            raise ValueError("rank must be positive")
        letters = tuple(self.letters)
        _check_letters(letters, self.rank)
        for a, b in zip(letters, letters[1:]):
            if a == -b:
                raise InvalidLetter(f"letters {list(letters)} are not freely reduced")
        object.__setattr__(self, "letters", letters)

    @classmethod
    def identity(cls, rank: int) -> Word:
        return cls(rank, ())

    @classmethod
    def generator(cls, i: int, rank: int) -> Word:
        return cls(rank, (i,))

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[int]:
        return iter(self.letters)

    def is_identity(self) -> bool:
        return not self.letters

    def _same_rank(self, other: Word) -> None:
        if self.rank != other.rank:
            raise RankMismatch(f"rank {self.rank} vs {other.rank}")

    def __mul__(self, other: Word) -> Word:
        if not isinstance(other, Word):
            return NotImplemented
        self._same_rank(other)
        return Word(self.rank, mul_letters(self.letters, other.letters))

    def inverse(self) -> Word:
        return Word(self.rank, inv_letters(self.letters))

    __invert__ = inverse

    def __pow__(self, k: int) -> Word:
        base = self if k >= 0 else self.inverse()
        out = Word.identity(self.rank)
        for _ in range(abs(k)):
            out = out * base
        return out

    def shortlex(self) -> tuple:
        return shortlex_key(self.letters)

    def __str__(self) -> str:
        return format_letters(self.letters)


def format_letters(letters: Sequence[int]) -> str:
    if not letters:
        return "1"
    parts = []
    i = 0
    while i < len(letters):
        j = i
        while j < len(letters) and letters[j] == letters[i]:
            j += 1
        a, run = letters[i], j - i
        e = run if a > 0 else -run
        parts.append(f"x{abs(a)}" if e == 1 else f"x{abs(a)}^{e}")
        i = j
    return "*".join(parts)


def reduce(letters: Iterable[int], rank: int) -> Word:
    letters = tuple(letters)
    _check_letters(letters, rank)
    return Word(rank, reduce_letters(letters))


def mul(u: Word, v: Word) -> Word:
    return u * v


def inv(u: Word) -> Word:
    return u.inverse()


def cyclic_reduce(u: Word) -> tuple[Word, Word]:
    """Split ``u`` as ``conjugator * core * conjugator^-1`` with a cyclically reduced core."""
    a = u.letters
    k = 0
    while 2 * k + 1 < len(a) and a[k] == -a[len(a) - 1 - k]:
        k += 1
    return Word(u.rank, a[k: len(a) - k]), Word(u.rank, a[:k])


def _smallest_period(seq: Sequence[int]) -> int:
    # KMP failure function; the period divides the length when the word is a power
    n = len(seq)
    fail = [0] * n
    k = 0
    for i in range(1, n):
        while k and seq[i] != seq[k]:
            k = fail[k - 1]
        if seq[i] == seq[k]:
            k += 1
        fail[i] = k
    p = n - fail[-1]
    return p if n % p == 0 else n


def primitive_root(u: Word) -> tuple[Word, int]:
    """Return ``(root, k)`` with ``u == root**k`` and ``root`` not a proper power."""
    if u.is_identity():
        raise PreconditionError("the identity has no primitive root")
    core, conj = cyclic_reduce(u)
    p = _smallest_period(core.letters)
    root_core = Word(u.rank, core.letters[:p])
    return conj * root_core * conj.inverse(), len(core) // p


def abelianize(u: Word) -> tuple[int, ...]:
    vec = [0] * u.rank
    for a in u.letters:
        vec[abs(a) - 1] += 1 if a > 0 else -1
    return tuple(vec)


def is_proper_power_vector(vec: Sequence[int]) -> bool:
    g = 0
    for e in vec:
        g = gcd(g, e)
    return g > 1


def letters_of_rank(rank: int) -> list[int]:
    out = []
    for i in range(1, rank + 1):
        out += [i, -i]
    return out


def sphere(rank: int, n: int) -> Iterator[Word]:
    """Reduced words of length exactly ``n``, in shortlex order."""
    alphabet = letters_of_rank(rank)

    def grow(prefix: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
        if len(prefix) == n:
            yield prefix
            return
        for a in alphabet:
            if prefix and prefix[-1] == -a:
                continue
            yield from grow(prefix + (a,))

    for letters in grow(()):
        yield Word(rank, letters)


def ball(rank: int, radius: int) -> list[Word]:
    """All reduced words of length at most ``radius`` in shortlex order."""
    out: list[Word] = []
    for n in range(radius + 1):
        out.extend(sphere(rank, n))
    return out


def raw_sequences(rank: int, max_len: int) -> Iterator[tuple[int, ...]]:
    """Every (not necessarily reduced) letter sequence up to ``max_len``."""
    alphabet = letters_of_rank(rank)
    for n in range(max_len + 1):
        yield from product(alphabet, repeat=n)
