"""Encoding words and group-ring elements as framed products.

A word ``t`` of length m becomes

    A_{m,0} (1 - M_1) A_{m,1} (1 - M_2) ... (1 - M_m) A_{m,m}

with M_i the length-i prefix of t and A_{m,i} = (1-c)(1-a)^(1+i)(1-b) built
from three marker words.  The products are carried in factored form; see
:class:`freering.groupring.FactoredElem`.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product
from typing import Mapping, Optional, Sequence, Union

from .coeffs import Coeff, as_coeff, coeff_from_json, coeff_to_json
from .errors import AmbiguityError, DecodeError, IndeterminateDivision, PreconditionError
from .groupring import (
    FactoredElem,
    GroupRingElem,
    divide_factored_verdict,
    irreducibility_certificate,
    is_trivial_unit,
)
from .linsolve import solve_sparse
from .words import Word, abelianize, ball, letters_of_rank, shortlex_key

Letters = tuple[int, ...]
Code = Union[FactoredElem, GroupRingElem]

# expanded products above this many terms are left factored in JSON output
EXPAND_LIMIT = 20000


def _power_word(e1: int, e2: int, rank: int) -> Word:
    return Word(rank, (1,) * e1 + (2,) * e2)


def _one_minus(u: Word) -> GroupRingElem:
    return GroupRingElem.one_minus(u)


@dataclass(frozen=True)
class MarkerFamily:
    m: int
    a: Word
    b: Word
    c: Word

    @property
    def rank(self) -> int:
        return self.a.rank


def dominates_short_words(marker: Word, m: int) -> bool:
    """Degree-one certificate that ``marker`` exceeds every word shorter than m/2.

    The first Magnus level of a word is its abelianization, and the order
    compares it lexicographically first.  A word u with |u| < m/2 has first
    exponent sum at most |u|, so a larger first exponent sum decides.
    """
    longest = (m - 1) // 2
    return abelianize(marker)[0] > longest


def validate_family(fam: MarkerFamily) -> None:
    words = {"a": fam.a, "b": fam.b, "c": fam.c}
    for name, u in words.items():
        cert = irreducibility_certificate(_one_minus(u))
        if cert.verdict != "Irreducible":
            raise PreconditionError(f"1 - {name} = 1 - {u} has certificate {cert.verdict}")
        if not dominates_short_words(u, fam.m):
            raise PreconditionError(f"marker {name} = {u} does not dominate words of length < {fam.m}/2")
    names = list(words)
    for i, p in enumerate(names):
        for q in names[i + 1:]:
            u, v = words[p], words[q]
            if u * v == v * u:
                raise PreconditionError(f"markers {p} and {q} commute")


@lru_cache(maxsize=None)
def markers(m: int, rank: int = 2) -> MarkerFamily:
    if m < 1:
        raise PreconditionError("m must be positive")
    if rank < 2:
        raise PreconditionError("marker words need rank at least 2")
    fam = MarkerFamily(
        m,
        a=_power_word(m + 2, m + 3, rank),
        b=_power_word(m, m + 1, rank),
        c=_power_word(m + 1, m + 2, rank),
    )
    validate_family(fam)
    return fam


def block(a: Word, b: Word, c: Word, i: int) -> GroupRingElem:
    """(1 - c)(1 - a)^(1+i)(1 - b), expanded."""
    if i < 0:
        raise PreconditionError("block index must be nonnegative")
    return _one_minus(c) * _one_minus(a) ** (1 + i) * _one_minus(b)


@lru_cache(maxsize=512)
def _cached_block(a: Word, b: Word, c: Word, i: int) -> GroupRingElem:
    return block(a, b, c, i)


def a_block(fam: MarkerFamily, i: int) -> GroupRingElem:
    return _cached_block(fam.a, fam.b, fam.c, i)


# -- word codec -------------------------------------------------------------

@dataclass(frozen=True)
class WordCode:
    m: int
    w: FactoredElem

    @property
    def rank(self) -> int:
        return self.w.rank

    def to_json(self) -> dict:
        out = {"m": self.m, "rank": self.rank, "factors": self.w.to_json()}
        if self.w.expanded_size_bound() <= EXPAND_LIMIT:
            out["w"] = self.w.expand().to_json()
        return out

    @classmethod
    def from_json(cls, obj: Mapping) -> WordCode:
        if "factors" in obj:
            w = FactoredElem.from_json(obj["factors"])
        else:
            w = FactoredElem.of(GroupRingElem.from_json(obj["w"]))
        return cls(int(obj["m"]), w)


def _check_tuple(t: Sequence[int], rank: int) -> Letters:
    t = tuple(int(a) for a in t)
    if not t:
        raise PreconditionError("cannot encode the empty tuple")
    Word(rank, t)  # validates letters and reducedness
    return t


def encode_word(t: Sequence[int], rank: Optional[int] = None) -> WordCode:
    rank = rank or max(2, max((abs(a) for a in t), default=2))
    t = _check_tuple(t, rank)
    m = len(t)
    fam = markers(m, rank)
    factors = [a_block(fam, 0)]
    for i in range(1, m + 1):
        factors.append(_one_minus(Word(rank, t[:i])))
        factors.append(a_block(fam, i))
    return WordCode(m, FactoredElem(rank, factors))


def _as_factored(w: Code) -> FactoredElem:
    return w if isinstance(w, FactoredElem) else FactoredElem.of(w)


def _strip(
    w: FactoredElem, d: GroupRingElem, side: str, budget: int, window: int
) -> Optional[FactoredElem]:
    q, _ = divide_factored_verdict(w, d, side, budget, max_factors=window)
    return q


def _is_one(w: FactoredElem) -> bool:
    if not w.factors:
        return w.scalar == 1
    if w.expanded_size_bound() > EXPAND_LIMIT:
        return False
    return w.expand() == 1


def decode_word(code: WordCode, budget: int = 4096, window: int = 2) -> Letters:
    """Recover the encoded tuple by successive exact left divisions.

    Each division is tried against the leading ``window`` factors of what
    remains.  A success is an exact quotient of the whole product; when the
    code is held as a single expanded element every verdict is exact.
    """
    m, rank = code.m, code.rank
    fam = markers(m, rank)
    rest = _strip(code.w, a_block(fam, 0), "left", budget, window)
    if rest is None:
        raise DecodeError("head block A_{m,0} does not divide the code")
    prefix: Letters = ()
    for i in range(1, m + 1):
        blk = a_block(fam, i)
        hits = []
        for letter in letters_of_rank(rank):
            if prefix and prefix[-1] == -letter:
                continue
            cand = prefix + (letter,)
            q = _strip(rest, _one_minus(Word(rank, cand)) * blk, "left", budget, window)
            if q is not None:
                hits.append((cand, q))
        if not hits:
            raise DecodeError(f"no candidate letter divides the code at step {i}")
        if len(hits) > 1:
            raise AmbiguityError(f"{len(hits)} candidate letters divide the code at step {i}")
        prefix, rest = hits[0]
    if not _is_one(rest):
        raise DecodeError("code does not end after the last block")
    return prefix


# -- element codec ------------------------------------------------------------

@dataclass(frozen=True)
class FqCode:
    w: FactoredElem
    s: int
    m: int
    const: Coeff = 0

    def to_json(self) -> dict:
        out = {"s": self.s, "m": self.m, "const": coeff_to_json(self.const), "factors": self.w.to_json()}
        if self.w.expanded_size_bound() <= EXPAND_LIMIT:
            out["w"] = self.w.expand().to_json()
        return out

    @classmethod
    def from_json(cls, obj: Mapping) -> FqCode:
        if "factors" in obj:
            w = FactoredElem.from_json(obj["factors"])
        else:
            w = FactoredElem.of(GroupRingElem.from_json(obj["w"]))
        return cls(w, int(obj["s"]), int(obj["m"]), coeff_from_json(obj.get("const", {"num": 0, "den": 1})))


def fq_parts(f: GroupRingElem) -> tuple[list[Letters], list[Coeff], int]:
    """Support in shortlex order, matching coefficients, and m = 2 * max length."""
    if f.is_zero():
        raise PreconditionError("cannot pack the zero element")
    if () in f.terms:
        raise PreconditionError("the identity word must not be in the support")
    support = sorted(f.terms, key=shortlex_key)
    return support, [f.terms[k] for k in support], 2 * max(len(k) for k in support)


def fq_payloads(f: GroupRingElem) -> list[GroupRingElem]:
    support, alphas, _ = fq_parts(f)
    h = GroupRingElem.zero(f.rank)
    out = []
    for M, alpha in zip(support, alphas):
        h = h + GroupRingElem.scalar(f.rank, alpha) - GroupRingElem(f.rank, {M: alpha})
        out.append(h)
    return out


def pack_fq(f: GroupRingElem) -> tuple[FactoredElem, int, int]:
    support, _, m = fq_parts(f)
    s = len(support)
    fam = markers(m, f.rank)
    factors = [a_block(fam, 1)]
    for i, h in enumerate(fq_payloads(f), start=1):
        factors.append(h)
        factors.append(a_block(fam, i + 1))
    return FactoredElem(f.rank, factors), s, m


def pack_element(f: GroupRingElem) -> FqCode:
    """Code for an arbitrary element: the identity coefficient travels beside it."""
    c = f.constant_term()
    w, s, m = pack_fq(f - c)
    return FqCode(w, s, m, c)


def check_fq(w: Code, f: GroupRingElem, budget: int = 4096) -> bool:
    if f.is_zero() or () in f.terms or f.rank < 2:
        return False
    w = _as_factored(w)
    if w.is_zero() or w.rank != f.rank:
        return False
    packed, s, m = pack_fq(f)
    if packed != w:
        return False
    fam = markers(m, f.rank)
    # conditions i) and iv): the outer blocks strip off exactly
    if _strip(w, a_block(fam, 1), "left", budget, 2) is None:
        return False
    if _strip(w, a_block(fam, s + 1), "right", budget, 2) is None:
        return False
    # condition iii): consecutive payloads differ by alpha (1 - M)
    support, alphas, _ = fq_parts(f)
    payloads = fq_payloads(f)
    prev = GroupRingElem.zero(f.rank)
    for M, alpha, h in zip(support, alphas, payloads):
        step = h - prev
        if step != GroupRingElem(f.rank, {(): alpha, M: -alpha}):
            return False
        prev = h
    return True


# exact 2x2 integer representations of F_2 with x1 -> [[k+1,k],[1,1]], x2 -> [[1,1],[k,k+1]];
# further generators go to products of the first two, which keeps a ring homomorphism.
# The images have trace k+2 != 2: for unipotent images 1 - x and 1 - x^-1 would be proportional.
_SKETCH_KS = (1, 2, 3, 5, 8)

Mat2 = tuple


def _m2mul(a: Mat2, b: Mat2) -> Mat2:
    return (
        a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
        a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3],
    )


@lru_cache(maxsize=None)
def _sketch_generators(k: int, rank: int) -> dict[int, Mat2]:
    x1, x2 = (k + 1, k, 1, 1), (1, 1, k, k + 1)
    gens = {1: x1, 2: x2}
    prev = x2
    for i in range(3, rank + 1):
        prev = _m2mul(prev, x1 if i % 2 else x2)
        gens[i] = prev
    out = {}
    for i, (a, b, c, d) in gens.items():
        out[i] = (a, b, c, d)
        out[-i] = (d, -b, -c, a)  # determinant one
    return out


@lru_cache(maxsize=1 << 16)
def _sketch_word(letters: Letters, k: int, rank: int) -> Mat2:
    if not letters:
        return (1, 0, 0, 1)
    if len(letters) == 1:
        return _sketch_generators(k, rank)[letters[0]]
    h = len(letters) // 2
    return _m2mul(_sketch_word(letters[:h], k, rank), _sketch_word(letters[h:], k, rank))


@lru_cache(maxsize=4096)
def _sketch_elem(f: GroupRingElem, k: int) -> Mat2:
    acc = [0, 0, 0, 0]
    for letters, c in f.terms.items():
        m = _sketch_word(letters, k, f.rank)
        for i in range(4):
            acc[i] += c * m[i]
    return tuple(as_coeff(x) for x in acc)


def _sketch(w: FactoredElem, k: int) -> Mat2:
    out = (w.scalar, 0, 0, w.scalar)
    for f in w.factors:
        out = _m2mul(out, _sketch_elem(f, k))
    return out


def _rational_root(x: Fraction, n: int) -> list[Fraction]:
    """All rational y with y**n == x."""
    x = Fraction(x)
    if x == 0:
        return [Fraction(0)]
    if x < 0 and n % 2 == 0:
        return []

    def iroot(v: int) -> Optional[int]:
        v = abs(v)
        lo, hi = 0, 1 << (v.bit_length() // n + 1)
        while lo < hi:
            mid = (lo + hi) // 2
            if mid ** n < v:
                lo = mid + 1
            else:
                hi = mid
        return lo if lo ** n == v else None

    num, den = iroot(x.numerator), iroot(x.denominator)
    if num is None or den is None:
        return []
    y = Fraction(num, den)
    if x < 0:
        return [-y]
    return [y, -y] if n % 2 == 0 else [y]


def _index_tuples(s: int) -> list[tuple[int, ...]]:
    # monomials alpha_{j1} ... alpha_{js} with j_i <= i, the shape of the product of payloads
    return list(product(*[range(i + 1) for i in range(s)]))


def decode_fq_small(w: Code, max_len: int, max_terms: int, rank: Optional[int] = None) -> Optional[GroupRingElem]:
    """Brute-force preimage of an element code over small supports.

    Every support of at most ``max_terms`` nonidentity words of length at
    most ``max_len`` is tried.  The code is multilinear in the payloads, so
    with the products of coefficients as unknowns an exact 2x2 integer
    representation turns each support into a small linear system; its
    solutions are then verified exactly against the code.  Returns the unique
    preimage, ``None`` when there is none, and raises
    :class:`AmbiguityError` when two different elements have this code.
    :class:`IndeterminateDivision` is raised if some support's system is
    underdetermined, since candidates could then be missed.
    """
    w = _as_factored(w)
    rank = rank or w.rank
    if w.is_zero():
        return None
    words = [u.letters for u in ball(rank, max_len) if u.letters]
    target = {k: _sketch(w, k) for k in _SKETCH_KS}
    found: list[GroupRingElem] = []
    for s in range(1, max_terms + 1):
        J = _index_tuples(s)
        for support in combinations(words, s):
            m = 2 * max(len(k) for k in support)
            fam = markers(m, rank)
            blocks = [a_block(fam, i) for i in range(1, s + 2)]
            pieces = [GroupRingElem(rank, {(): 1, M: -1}) for M in support]
            equations = []
            for k in _SKETCH_KS:
                bm = [_sketch_elem(b, k) for b in blocks]
                pm = [_sketch_elem(p, k) for p in pieces]
                cols = {}
                for j in J:
                    acc = bm[0]
                    for i, ji in enumerate(j):
                        acc = _m2mul(_m2mul(acc, pm[ji]), bm[i + 1])
                    cols[j] = acc
                for e in range(4):
                    equations.append(({j: cols[j][e] for j in J}, target[k][e]))
            sol = solve_sparse(equations, J)
            if sol is None:
                continue
            if not sol.unique:
                raise IndeterminateDivision(f"sketch system for support {support} is underdetermined")
            beta = sol.values
            lead = beta[(0,) * s]
            for a0 in _rational_root(lead, s):
                if a0 == 0:
                    continue
                alphas = [a0] + [
                    Fraction(beta[(0,) * (s - 1) + (i,)]) / a0 ** (s - 1) for i in range(1, s)
                ]
                if any(a == 0 for a in alphas):
                    continue
                cand = GroupRingElem(rank, dict(zip(support, alphas)))
                if cand not in found and pack_fq(cand)[0] == w:
                    found.append(cand)
    if len(found) > 1:
        raise AmbiguityError(f"{len(found)} elements share this code: " + ", ".join(map(str, found)))
    return found[0] if found else None


# -- the (a_m, m) chain ----------------------------------------------------------

BASE_A = (1, 2)
BASE_B = (2, 3)
BASE_C = (3, 4)


def chain_markers(rank: int = 2) -> tuple[Word, Word, Word]:
    return tuple(_power_word(*e, rank) for e in (BASE_A, BASE_B, BASE_C))


def chain_block(i: int, rank: int = 2) -> GroupRingElem:
    a, b, c = chain_markers(rank)
    return _cached_block(a, b, c, i)


def am_chain(m: int, rank: int = 2) -> FactoredElem:
    """C_1 (1 - a_2) C_2 ... (1 - a_m) C_m with a_i the marker a of markers(i)."""
    if m < 2:
        raise PreconditionError("the chain needs m >= 2")
    factors = [chain_block(1, rank)]
    for i in range(2, m + 1):
        factors.append(_one_minus(markers(i, rank).a))
        factors.append(chain_block(i, rank))
    return FactoredElem(rank, factors)


def am_chain_verify(w: Code, m: int, budget: int = 4096) -> bool:
    if m < 2:
        raise PreconditionError("the chain needs m >= 2")
    w = _as_factored(w)
    rank = w.rank
    if w.is_zero() or rank < 2:
        return False
    # head and tail
    rest = _strip(w, chain_block(1, rank), "left", budget, 2)
    if rest is None or _strip(w, chain_block(m, rank), "right", budget, 2) is None:
        return False
    for i in range(2, m + 1):
        payload = _one_minus(markers(i, rank).a)
        # beta is the identity coefficient; beta - payload must be a trivial unit
        beta = payload.constant_term()
        if not beta or is_trivial_unit(GroupRingElem.scalar(rank, beta) - payload) is None:
            return False
        rest = _strip(rest, payload * chain_block(i, rank), "left", budget, 2)
        if rest is None:
            return False
    return _is_one(rest)
