"""Commutative Laurent polynomials over Q and the polynomial-subring machinery.

Covers exact divisibility, membership in K[P] and K[g, g^-1], the sampled
check of the formula  forall a exists b : (P - a) | (Q - b),  and the tuple
codes (sum a_i P^i, P^n) together with their transport between bases.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Mapping, Optional, Sequence

from .coeffs import Coeff, as_coeff, coeff_div, coeff_str, coeff_from_json, coeff_to_json
from .errors import NotInKP, PreconditionError, RankMismatch

Exps = tuple[int, ...]


def glex_key(e: Exps) -> tuple:
    return (sum(e), e)


class LaurentPoly:
    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[Sequence[int], Coeff] | None = None):
        if nvars < 1:
            raise ValueError("need at least one variable")
        self.nvars = nvars
        clean: dict[Exps, Coeff] = {}
        for e, c in (terms or {}).items():
            e = tuple(e)
            if len(e) != nvars:
                raise ValueError(f"exponent vector {e} has wrong length")
            c = as_coeff(c)
            if c:
                clean[e] = c
        self.terms = clean
        self._hash: int | None = None

    @classmethod
    def _raw(cls, nvars: int, terms: dict[Exps, Coeff]) -> LaurentPoly:
        obj = cls.__new__(cls)
        obj.nvars = nvars
        obj.terms = terms
        obj._hash = None
        return obj

    @classmethod
    def const(cls, nvars: int, c: Coeff) -> LaurentPoly:
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def monomial(cls, exps: Sequence[int], c: Coeff = 1) -> LaurentPoly:
        return cls(len(exps), {tuple(exps): c})

    @classmethod
    def variable(cls, i: int, nvars: int) -> LaurentPoly:
        e = [0] * nvars
        e[i - 1] = 1
        return cls(nvars, {tuple(e): 1})

    @classmethod
    def univariate(cls, coeffs: Mapping[int, Coeff]) -> LaurentPoly:
        return cls(1, {(k,): c for k, c in coeffs.items()})

    def _check(self, other: LaurentPoly) -> None:
        if self.nvars != other.nvars:
            raise RankMismatch(f"{self.nvars} vs {other.nvars} variables")

    def _lift(self, other) -> LaurentPoly:
        if isinstance(other, LaurentPoly):
            self._check(other)
            return other
        return LaurentPoly.const(self.nvars, as_coeff(other))

    def is_zero(self) -> bool:
        return not self.terms

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def constant_term(self) -> Coeff:
        return self.terms.get((0,) * self.nvars, 0)

    def min_exps(self) -> Exps:
        return tuple(min(e[i] for e in self.terms) for i in range(self.nvars))

    def max_exps(self) -> Exps:
        return tuple(max(e[i] for e in self.terms) for i in range(self.nvars))

    def shift(self, exps: Sequence[int]) -> LaurentPoly:
        """Multiply by the monomial X^exps."""
        return LaurentPoly._raw(
            self.nvars, {tuple(a + b for a, b in zip(e, exps)): c for e, c in self.terms.items()}
        )

    def __eq__(self, other: object) -> bool:
        if isinstance(other, LaurentPoly):
            return self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == LaurentPoly.const(self.nvars, other)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    def __add__(self, other) -> LaurentPoly:
        other = self._lift(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return LaurentPoly._raw(self.nvars, {e: as_coeff(c) for e, c in out.items()})

    __radd__ = __add__

    def __neg__(self) -> LaurentPoly:
        return LaurentPoly._raw(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> LaurentPoly:
        return self + (-self._lift(other))

    def __rsub__(self, other) -> LaurentPoly:
        return self._lift(other) - self

    def __mul__(self, other) -> LaurentPoly:
        if not isinstance(other, LaurentPoly):
            c = as_coeff(other)
            if not c:
                return LaurentPoly(self.nvars)
            return LaurentPoly._raw(self.nvars, {e: as_coeff(v * c) for e, v in self.terms.items()})
        self._check(other)
        out: dict[Exps, Coeff] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return LaurentPoly(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> LaurentPoly:
        if k < 0:
            if not self.is_monomial():
                raise PreconditionError("only monomials are invertible")
            (e, c), = self.terms.items()
            return LaurentPoly._raw(self.nvars, {tuple(k * a for a in e): as_coeff(Fraction(c) ** k)})
        out = LaurentPoly.const(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def sorted_terms(self) -> list[tuple[Exps, Coeff]]:
        return sorted(self.terms.items(), key=lambda t: glex_key(t[0]))

    def __repr__(self) -> str:
        return f"LaurentPoly({self})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        names = ["X"] if self.nvars == 1 else [f"X{i + 1}" for i in range(self.nvars)]
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k)
            if not mono:
                parts.append(coeff_str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{coeff_str(c)}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def to_json(self) -> dict:
        return {
            "nvars": self.nvars,
            "terms": [dict(coeff_to_json(c), exps=list(e)) for e, c in self.sorted_terms()],
        }

    @classmethod
    def from_json(cls, obj: dict) -> LaurentPoly:
        out: dict[Exps, Coeff] = {}
        for t in obj["terms"]:
            e = tuple(t["exps"])
            if e in out:
                raise ValueError(f"duplicate exponent {list(e)}")
            out[e] = coeff_from_json(t)
        return cls(obj["nvars"], out)


def _normalize(f: LaurentPoly) -> tuple[LaurentPoly, Exps]:
    """Split off the largest monomial factor: ``f == shift(g, m)`` with g monomial-free."""
    m = f.min_exps()
    return f.shift(tuple(-a for a in m)), m


def _poly_divide(f: dict[Exps, Coeff], d: dict[Exps, Coeff]) -> Optional[dict[Exps, Coeff]]:
    # single-divisor division with graded-lex leading terms; exact or None
    lt_d = max(d, key=glex_key)
    lc_d = d[lt_d]
    r = dict(f)
    q: dict[Exps, Coeff] = {}
    while r:
        lt = max(r, key=glex_key)
        if any(a < b for a, b in zip(lt, lt_d)):
            return None
        t = tuple(a - b for a, b in zip(lt, lt_d))
        c = coeff_div(r[lt], lc_d)
        q[t] = c
        for e, v in d.items():
            k = tuple(a + b for a, b in zip(e, t))
            nv = r.get(k, 0) - c * v
            if nv:
                r[k] = as_coeff(nv)
            else:
                r.pop(k, None)
    return q


def divides_exact(d: LaurentPoly, f: LaurentPoly) -> Optional[LaurentPoly]:
    """Return ``q`` with ``d * q == f``, or ``None`` if ``d`` does not divide ``f``."""
    d._check(f)
    if d.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if f.is_zero():
        return LaurentPoly(f.nvars)
    dn, dm = _normalize(d)
    fn, fm = _normalize(f)
    q = _poly_divide(fn.terms, dn.terms)
    if q is None:
        return None
    return LaurentPoly(f.nvars, q).shift(tuple(a - b for a, b in zip(fm, dm)))


def binomial_irreducible(m: int, n: int) -> bool:
    """Whether 1 - X1^m X2^n is irreducible in the Laurent ring (gcd criterion)."""
    if m == 0 and n == 0:
        raise PreconditionError("(m, n) = (0, 0) gives the zero polynomial")
    return gcd(m, n) == 1


def binomial_factorization(m: int, n: int) -> list[LaurentPoly]:
    """Explicit factors of 1 - X1^m X2^n when gcd(m, n) = d > 1."""
    d = gcd(m, n)
    if d <= 1:
        raise PreconditionError("binomial is irreducible")
    g = LaurentPoly.monomial((m // d, n // d))
    one = LaurentPoly.const(2, 1)
    geometric = LaurentPoly(2, {(i * m // d, i * n // d): 1 for i in range(d)})
    return [one - g, geometric]


def _check_base(P: LaurentPoly) -> None:
    if P.nvars != 1:
        raise PreconditionError("base polynomial must be univariate")
    if len(P.terms) < 3:
        raise PreconditionError("base polynomial must be a sum of at least three monomials")


@lru_cache(maxsize=256)
def _powers(P: LaurentPoly, n: int) -> tuple[LaurentPoly, ...]:
    out = [LaurentPoly.const(P.nvars, 1)]
    for _ in range(n):
        out.append(out[-1] * P)
    return tuple(out)


def powers_of(P: LaurentPoly, n: int) -> tuple[LaurentPoly, ...]:
    """``(P^0, ..., P^n)``, cached."""
    cached = _powers(P, max(n, 8))
    return cached[: n + 1]


def _degree_count(Q: LaurentPoly, P: LaurentPoly) -> Optional[int]:
    # the only N with Q = sum_{i<=N} c_i P^i, c_N != 0, read off an extreme exponent
    lo, hi = P.min_exps()[0], P.max_exps()[0]
    qlo, qhi = Q.min_exps()[0], Q.max_exps()[0]
    if hi > 0:
        if qhi <= 0 or qhi % hi:
            return None
        return qhi // hi
    if qlo >= 0 or qlo % lo:
        return None
    return qlo // lo


def in_KP(Q: LaurentPoly, P: LaurentPoly) -> Optional[tuple[Coeff, ...]]:
    """Coefficients ``(c_0..c_N)`` with ``Q == sum c_i P^i``, or ``None``."""
    _check_base(P)
    Q._check(P)
    if Q.is_zero():
        return (0,)
    if Q.is_constant():
        return (Q.constant_term(),)
    N = _degree_count(Q, P)
    if N is None:
        return None
    # P^i has a single extreme term, so the system is triangular: peel from that side
    lo, hi = P.min_exps()[0], P.max_exps()[0]
    step = hi if hi > 0 else lo
    lead = P.terms[(step,)]
    rest = dict(Q.terms)
    coeffs: list[Coeff] = [0] * (N + 1)
    for i, p in zip(range(N, -1, -1), reversed(powers_of(P, N))):
        edge = i * step
        if any((e[0] > edge) if step > 0 else (e[0] < edge) for e in rest):
            return None
        c = coeff_div(rest.get((edge,), 0), lead ** i)
        if c:
            coeffs[i] = c
            for e, v in p.terms.items():
                nv = rest.get(e, 0) - c * v
                if nv:
                    rest[e] = as_coeff(nv)
                else:
                    rest.pop(e, None)
    return None if rest else tuple(coeffs)


def _umod(a: dict[int, Coeff], d: dict[int, Coeff]) -> dict[int, Coeff]:
    # univariate remainder, exponents nonnegative
    deg_d = max(d)
    lc = d[deg_d]
    r = dict(a)
    while r:
        top = max(r)
        if top < deg_d:
            break
        c = coeff_div(r[top], lc)
        shift = top - deg_d
        for k, v in d.items():
            nv = r.get(k + shift, 0) - c * v
            if nv:
                r[k + shift] = as_coeff(nv)
            else:
                r.pop(k + shift, None)
    return r


def beta_for(Q: LaurentPoly, P: LaurentPoly, alpha: Coeff) -> Optional[Coeff]:
    """The scalar ``b`` with ``(P - alpha) | (Q - b)``, or ``None`` when none exists."""
    D, _ = _normalize(P - alpha)
    dpoly = {e[0]: c for e, c in D.terms.items()}
    if max(dpoly) == 0:
        raise PreconditionError("P - alpha is a unit")
    k = max(0, -Q.min_exps()[0]) if not Q.is_zero() else 0
    r1 = _umod({e[0] + k: c for e, c in Q.terms.items()}, dpoly)
    r2 = _umod({k: 1}, dpoly)
    if not r1:
        return 0
    # r1 must be a scalar multiple of r2 (r2 != 0 because X is a unit mod D)
    e0 = next(iter(r2))
    beta = coeff_div(r1.get(e0, 0), r2[e0])
    if set(r1) != set(r2) or any(r1[e] != beta * r2[e] for e in r2):
        return None
    return beta


@dataclass(frozen=True)
class PsiResult:
    passed: bool
    witness: Optional[Coeff] = None

    @property
    def verdict(self) -> str:
        return "Pass" if self.passed else "Fail"


def psi_check(Q: LaurentPoly, P: LaurentPoly, samples: Iterable[Coeff]) -> PsiResult:
    """Sampled check of  forall a exists b : (P - a) | (Q - b).

    A failure is a genuine refutation; a pass only corroborates membership.
    """
    _check_base(P)
    Q._check(P)
    for alpha in samples:
        alpha = as_coeff(alpha)
        if beta_for(Q, P, alpha) is None:
            return PsiResult(False, alpha)
    return PsiResult(True)


def in_K_g(Q: LaurentPoly, g: Sequence[int]) -> Optional[tuple[Coeff, ...]]:
    """Coefficients of ``Q`` in powers of the monomial X^g over the window -N..N."""
    g = tuple(g)
    if len(g) != Q.nvars:
        raise RankMismatch("exponent vector has wrong length")
    if not any(g):
        raise PreconditionError("g must be a nonzero exponent vector")
    j = next(i for i, a in enumerate(g) if a)
    coeffs: dict[int, Coeff] = {}
    for e, c in Q.terms.items():
        if e[j] % g[j]:
            return None
        k = e[j] // g[j]
        if tuple(k * a for a in g) != e:
            return None
        coeffs[k] = c
    N = max((abs(k) for k in coeffs), default=0)
    return tuple(coeffs.get(k, 0) for k in range(-N, N + 1))


def powers_predicate(x: LaurentPoly, g: LaurentPoly) -> bool:
    """x is a unit outside K with (g - 1) | (x - 1)."""
    if not g.is_monomial() or g.is_constant():
        raise PreconditionError("g must be a non-constant monomial")
    if not x.is_monomial() or x.is_constant():
        return False
    return divides_exact(g - 1, x - 1) is not None


@dataclass(frozen=True)
class TupleCode:
    value: LaurentPoly
    marker: LaurentPoly
    base: LaurentPoly

    def to_json(self) -> dict:
        return {"value": self.value.to_json(), "marker": self.marker.to_json(), "base": self.base.to_json()}

    @classmethod
    def from_json(cls, obj: dict) -> TupleCode:
        return cls(*(LaurentPoly.from_json(obj[k]) for k in ("value", "marker", "base")))


def tuple_encode(alphas: Sequence[Coeff], P: LaurentPoly) -> TupleCode:
    _check_base(P)
    if not alphas:
        raise PreconditionError("cannot encode the empty tuple")
    n = len(alphas) - 1
    pw = powers_of(P, n)
    acc: dict[Exps, Coeff] = {}
    for a, p in zip(alphas, pw):
        a = as_coeff(a)
        if a:
            for e, c in p.terms.items():
                acc[e] = acc.get(e, 0) + a * c
    return TupleCode(LaurentPoly(1, acc), pw[n], P)


def _marker_exponent(marker: LaurentPoly, P: LaurentPoly) -> Optional[int]:
    if marker == 1:
        return 0
    if marker.is_zero():
        return None
    n = _degree_count(marker, P)
    if n is None or powers_of(P, n)[n] != marker:
        return None
    return n


def tuple_decode(code: TupleCode) -> tuple[Coeff, ...]:
    P = code.base
    _check_base(P)
    n = _marker_exponent(code.marker, P)
    if n is None:
        raise NotInKP("marker is not a power of the base")
    coeffs = in_KP(code.value, P)
    if coeffs is None:
        raise NotInKP("value does not lie in K[base]")
    if len(coeffs) > n + 1:
        raise NotInKP("value has higher degree than the marker allows")
    return tuple(coeffs) + (0,) * (n + 1 - len(coeffs))


def nu_transport(code: TupleCode, Q: LaurentPoly) -> TupleCode:
    """Re-encode the tuple carried by ``code`` over the base ``Q``."""
    return tuple_encode(tuple_decode(code), Q)
