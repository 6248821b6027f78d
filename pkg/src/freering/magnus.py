"""Truncated free power series, the Magnus embedding and the Bergman order.

Monomials in the noncommuting variables y_1..y_n are tuples of indices.
Within a degree they are ordered left-lexicographically with
y_1 < y_2 < ... < y_n, so ``y1*y1 < y1*y2 < y2*y1``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import comb
from typing import Iterable, Mapping, Optional

from .errors import RankMismatch
from .words import Word
from .coeffs import Coeff, as_coeff, coeff_str

Monomial = tuple[int, ...]


def monomial_key(mono: Monomial) -> tuple:
    return (len(mono), mono)


@lru_cache(maxsize=None)
def monomials_of_degree(rank: int, d: int) -> tuple[Monomial, ...]:
    return tuple(product(range(1, rank + 1), repeat=d))


class PowerSeries:
    """Element of Q<<y_1..y_n>> known up to (and including) ``degree_bound``."""

    __slots__ = ("rank", "degree_bound", "terms")

    def __init__(self, rank: int, degree_bound: int, terms: Mapping[Monomial, Coeff] | None = None):
        if degree_bound < 0:
            raise ValueError("degree bound must be nonnegative")
        self.rank = rank
        self.degree_bound = degree_bound
        clean: dict[Monomial, Coeff] = {}
        for mono, c in (terms or {}).items():
            mono = tuple(mono)
            if any(not 1 <= i <= rank for i in mono):
                raise ValueError(f"monomial {mono} outside rank {rank}")
            if len(mono) > degree_bound:
                continue
            c = as_coeff(c)
            if c:
                clean[mono] = c
        self.terms = clean

    @classmethod
    def one(cls, rank: int, degree_bound: int) -> PowerSeries:
        return cls(rank, degree_bound, {(): 1})

    @classmethod
    def variable(cls, i: int, rank: int, degree_bound: int) -> PowerSeries:
        return cls(rank, degree_bound, {(i,): 1})

    def _check(self, other: PowerSeries) -> None:
        if self.rank != other.rank:
            raise RankMismatch(f"rank {self.rank} vs {other.rank}")
        if self.degree_bound != other.degree_bound:
            raise ValueError(f"degree bound {self.degree_bound} vs {other.degree_bound}")

    def constant(self) -> Coeff:
        return self.terms.get((), 0)

    def component(self, d: int) -> dict[Monomial, Coeff]:
        return {m: c for m, c in self.terms.items() if len(m) == d}

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PowerSeries):
            return NotImplemented
        return (self.rank, self.degree_bound, self.terms) == (other.rank, other.degree_bound, other.terms)

    def __hash__(self) -> int:
        return hash((self.rank, self.degree_bound, frozenset(self.terms.items())))

    def __add__(self, other: PowerSeries) -> PowerSeries:
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return PowerSeries(self.rank, self.degree_bound, out)

    def __neg__(self) -> PowerSeries:
        return PowerSeries(self.rank, self.degree_bound, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: PowerSeries) -> PowerSeries:
        return self + (-other)

    def __mul__(self, other: PowerSeries) -> PowerSeries:
        return ps_mul(self, other)

    def __repr__(self) -> str:
        return f"PowerSeries({self})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for mono in sorted(self.terms, key=monomial_key):
            c = self.terms[mono]
            name = "*".join(f"y{i}" for i in mono)
            if not mono:
                parts.append(coeff_str(c))
            elif c == 1:
                parts.append(name)
            elif c == -1:
                parts.append("-" + name)
            else:
                parts.append(f"{coeff_str(c)}*{name}")
        return " + ".join(parts).replace("+ -", "- ")


def ps_mul(f: PowerSeries, g: PowerSeries) -> PowerSeries:
    f._check(g)
    D = f.degree_bound
    out: dict[Monomial, Coeff] = {}
    for m1, c1 in f.terms.items():
        room = D - len(m1)
        for m2, c2 in g.terms.items():
            if len(m2) <= room:
                m = m1 + m2
                out[m] = out.get(m, 0) + c1 * c2
    return PowerSeries(f.rank, D, out)


def ps_inv(f: PowerSeries) -> PowerSeries:
    """Two-sided inverse of a series with nonzero constant term, truncated."""
    c0 = f.constant()
    if not c0:
        raise ZeroDivisionError("series with zero constant term is not a unit")
    inv0 = Fraction(1) / Fraction(c0)
    # f = c0 * (1 + g), g without constant term; (1+g)^-1 = sum (-g)^k
    g = PowerSeries(f.rank, f.degree_bound, {m: c * inv0 for m, c in f.terms.items() if m})
    one = PowerSeries.one(f.rank, f.degree_bound)
    acc = one
    power = one
    for _ in range(f.degree_bound):
        power = ps_mul(power, -g)
        if not power.terms:
            break
        acc = acc + power
    return PowerSeries(f.rank, f.degree_bound, {m: c * inv0 for m, c in acc.terms.items()})


def _run_coefficients(e: int, limit: int) -> list[int]:
    # (1+y)^e truncated; negative e uses binom(-e) = (-1)^j binom(|e|+j-1, j)
    if e > 0:
        return [comb(e, j) for j in range(min(e, limit) + 1)]
    k = -e
    return [(-1) ** j * comb(k + j - 1, j) for j in range(limit + 1)]


@lru_cache(maxsize=None)
def _offsets(rank: int, D: int) -> tuple[int, ...]:
    out = [0]
    for d in range(D + 1):
        out.append(out[-1] + rank ** d)
    return tuple(out)


@lru_cache(maxsize=None)
def _append_table(rank: int, D: int, idx: int) -> tuple[tuple[int, int, int], ...]:
    """Triples (t, src, dst): appending y_idx^t to monomial ``src`` gives ``dst``.

    Dense positions list monomials degree by degree, each degree in
    left-lexicographic order, matching :func:`monomials_of_degree`.
    """
    off = _offsets(rank, D)
    table = []
    for t in range(1, D + 1):
        for d in range(D - t + 1):
            for j in range(rank ** d):
                dst = j
                for _ in range(t):
                    dst = dst * rank + (idx - 1)
                table.append((t, off[d] + j, off[d + t] + dst))
    return tuple(table)


@lru_cache(maxsize=1 << 17)
def _embed_dense(letters: tuple[int, ...], D: int, rank: int) -> tuple[int, ...]:
    vec = [0] * _offsets(rank, D)[-1]
    vec[0] = 1
    i = 0
    n = len(letters)
    while i < n:
        j = i
        while j < n and letters[j] == letters[i]:
            j += 1
        a = letters[i]
        e = (j - i) if a > 0 else -(j - i)
        i = j
        coeffs = _run_coefficients(e, D)
        top = len(coeffs) - 1
        new = vec[:]
        for t, src, dst in _append_table(rank, D, abs(a)):
            if t <= top:
                c = vec[src]
                if c:
                    new[dst] += coeffs[t] * c
        vec = new
    return tuple(vec)


def _embed_letters(letters: tuple[int, ...], D: int, rank: Optional[int] = None) -> dict[Monomial, int]:
    rank = rank or max((abs(a) for a in letters), default=1)
    vec = _embed_dense(letters, D, rank)
    out: dict[Monomial, int] = {}
    pos = 0
    for d in range(D + 1):
        for mono in monomials_of_degree(rank, d):
            if vec[pos]:
                out[mono] = vec[pos]
            pos += 1
    return out


def embed_word(u: Word, D: int) -> PowerSeries:
    """Image of ``u`` under x_i -> 1 + y_i, truncated beyond degree ``D``."""
    if D < 0:
        raise ValueError("degree bound must be nonnegative")
    return PowerSeries(u.rank, D, _embed_letters(u.letters, D, u.rank))


@dataclass(frozen=True)
class OrderVerdict:
    order: str  # "Less" | "Equal" | "Greater"
    degree: Optional[int] = field(default=None)

    @property
    def sign(self) -> int:
        return {"Less": -1, "Equal": 0, "Greater": 1}[self.order]


_NAMES = {-1: "Less", 0: "Equal", 1: "Greater"}


def _cmp_component(f: Mapping[Monomial, Coeff], g: Mapping[Monomial, Coeff]) -> int:
    """Compare two homogeneous components: sign of the smallest monomial in ``g - f``."""
    for mono in sorted(set(f) | set(g)):
        diff = g.get(mono, 0) - f.get(mono, 0)
        if diff:
            return -1 if diff > 0 else 1
    return 0


def ps_cmp(f: PowerSeries, g: PowerSeries) -> OrderVerdict:
    """Order two series by their first differing homogeneous component."""
    f._check(g)
    for d in range(f.degree_bound + 1):
        s = _cmp_component(f.component(d), g.component(d))
        if s:
            return OrderVerdict(_NAMES[s], d)
    return OrderVerdict("Equal")


def bergman_cmp(u: Word, v: Word) -> OrderVerdict:
    if u.rank != v.rank:
        raise RankMismatch(f"rank {u.rank} vs {v.rank}")
    if u.letters == v.letters:
        return OrderVerdict("Equal")
    for D in range(1, len(u) + len(v) + 1):
        fu = _embed_letters(u.letters, D, u.rank)
        fv = _embed_letters(v.letters, D, u.rank)
        s = _cmp_component(
            {m: c for m, c in fu.items() if len(m) == D},
            {m: c for m, c in fv.items() if len(m) == D},
        )
        if s:
            return OrderVerdict(_NAMES[s], D)
    raise RuntimeError(f"no disagreement found between {u} and {v}; Magnus embedding is injective")


class BergmanKey:
    """Sort key realizing the Bergman order on reduced letter tuples.

    Comparing keys compares the coefficient vectors of the Magnus images degree
    by degree, which is the same total order as :func:`bergman_cmp`.
    """

    __slots__ = ("letters", "rank", "_levels")

    def __init__(self, letters: tuple[int, ...], rank: int):
        self.letters = letters
        self.rank = rank
        self._levels: list[tuple] = []

    def level(self, d: int) -> tuple:
        if d <= len(self._levels):
            return self._levels[d - 1]
        if d == 1:
            vec = [0] * self.rank
            for a in self.letters:
                vec[abs(a) - 1] += 1 if a > 0 else -1
            self._levels = [tuple(vec)]
            return self._levels[0]
        # refine geometrically: most comparisons settle at degree two
        D = max(d, 2 * len(self._levels)) if len(self._levels) > 1 else 2
        series = _embed_dense(self.letters, D, self.rank)
        off = _offsets(self.rank, D)
        self._levels = [series[off[k]:off[k + 1]] for k in range(1, D + 1)]
        return self._levels[d - 1]

    def _cmp(self, other: BergmanKey) -> int:
        if self.letters == other.letters:
            return 0
        cap = len(self.letters) + len(other.letters)
        for d in range(1, cap + 1):
            a, b = self.level(d), other.level(d)
            if a != b:
                return -1 if a < b else 1
        raise RuntimeError("Magnus images agree beyond the length bound")

    def __lt__(self, other: BergmanKey) -> bool:
        return self._cmp(other) < 0

    def __gt__(self, other: BergmanKey) -> bool:
        return self._cmp(other) > 0

    def __le__(self, other: BergmanKey) -> bool:
        return self._cmp(other) <= 0

    def __ge__(self, other: BergmanKey) -> bool:
        return self._cmp(other) >= 0

    def __eq__(self, other: object) -> bool:
        return isinstance(other, BergmanKey) and self.letters == other.letters

    def __hash__(self) -> int:
        return hash(self.letters)


@lru_cache(maxsize=262144)
def bergman_key(letters: tuple[int, ...], rank: int) -> BergmanKey:
    return BergmanKey(letters, rank)


def word_key(u: Word) -> BergmanKey:
    return bergman_key(u.letters, u.rank)


def bergman_sorted(words: Iterable[Word]) -> list[Word]:
    return sorted(words, key=word_key)
