"""The thirteen acceptance criteria, one test each.

Run as a script for one PASS/FAIL line per criterion::

    python3 tests/test_acceptance.py

Under pytest each criterion is a test; ``-s`` shows the same lines.
"""
import random
import sys
import time
from itertools import combinations, permutations, product
from math import gcd
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from oracles import brute_left_quotient, nonmember_certificate, unfound_members  # noqa: E402

from freering.codec import (  # noqa: E402
    am_chain,
    am_chain_verify,
    check_fq,
    decode_fq_small,
    decode_word,
    encode_word,
    pack_fq,
)
from freering.errors import AmbiguityError  # noqa: E402
from freering.geometry import fold, is_free_basis, malnormality_probe, member_in, word_metric  # noqa: E402
from freering.groupring import (  # noqa: E402
    GroupRingElem,
    brute_inverse_search,
    centralizer_root,
    divide_exact,
    is_trivial_unit,
    specialize_abelian,
    specialize_powers,
)
from freering.laurent import (  # noqa: E402
    LaurentPoly,
    binomial_factorization,
    binomial_irreducible,
    in_K_g,
    in_KP,
    nu_transport,
    psi_check,
    tuple_decode,
    tuple_encode,
)
from freering.magnus import PowerSeries, bergman_cmp, ps_cmp  # noqa: E402
from freering.words import Word, abelianize, ball, inv_letters, primitive_root, shortlex_key, sphere  # noqa: E402

E = GroupRingElem
COEFFS = (1, -1, 2, -2)


def _report(n, ok, detail):
    print(f"{'PASS' if ok else 'FAIL'} criterion {n}: {detail}", flush=True)
    return ok, detail


def _random_word(rng, rank, lo, hi):
    letters = [a for i in range(1, rank + 1) for a in (i, -i)]
    out = []
    n = rng.randint(lo, hi)
    while len(out) < n:
        a = rng.choice(letters)
        if not out or out[-1] != -a:
            out.append(a)
    return tuple(out)


def _random_elem(rng, rank, max_terms, max_len, coeffs=COEFFS):
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        terms[_random_word(rng, rank, 0, max_len)] = rng.choice(coeffs)
    return E(rank, terms)


def criterion_1():
    failures = 0
    count = 0
    for n in range(1, 6):
        for u in sphere(2, n):
            count += 1
            failures += decode_word(encode_word(u.letters, 2)) != u.letters
    rng = random.Random(101)
    for _ in range(500):
        t = _random_word(rng, 3, 1, 8)
        count += 1
        failures += decode_word(encode_word(t, 3)) != t
    return _report(1, failures == 0, f"{count} round trips, {failures} failures")


def criterion_2():
    tuples = [u.letters for n in range(1, 5) for u in sphere(2, n)]
    codes = {t: encode_word(t, 2).w for t in tuples}
    by_fp = {}
    for t, w in codes.items():
        by_fp.setdefault(w.fingerprint(), []).append(t)
    # distinct fingerprints prove distinct elements; shared ones are compared exactly
    collisions = 0
    for group in by_fp.values():
        for s, t in combinations(group, 2):
            collisions += codes[s] == codes[t]
    pairs = len(tuples) * (len(tuples) - 1) // 2
    return _report(2, collisions == 0, f"{pairs} pairs of {len(tuples)} tuples, {collisions} equal codes")


def _annihilation_with_distinct_exponents(m, n):
    f = 1 - E.from_word(Word(2, (1,) * m + (2,) * n))
    if not specialize_powers(f, (-n, m)).is_zero():
        return False
    exps = [-n * i + m * j for i in range(m) for j in range(n)]
    return len(set(exps)) == len(exps)


def criterion_3():
    bad = []
    X1, X2 = LaurentPoly.variable(1, 2), LaurentPoly.variable(2, 2)
    for m, n in product(range(1, 7), repeat=2):
        a = binomial_irreducible(m, n)
        b = gcd(m, n) == 1
        c = _annihilation_with_distinct_exponents(m, n)
        if not a == b == c:
            bad.append((m, n))
        if gcd(m, n) > 1:
            p, q = binomial_factorization(m, n)
            if p * q != 1 - X1 ** m * X2 ** n or p.is_constant() or q.is_constant():
                bad.append((m, n, "factorization"))
    return _report(3, not bad, f"36 pairs checked, mismatches: {bad or 'none'}")


def criterion_4():
    B = ball(2, 4)
    n = len(B)
    S = np.zeros((n, n), dtype=np.int8)
    for i, u in enumerate(B):
        for j, v in enumerate(B):
            S[i, j] = bergman_cmp(u, v).sign
    total = bool(np.all((S == 0) == np.eye(n, dtype=bool)))
    antisym = bool(np.all(S == -S.T))
    G = (S > 0).astype(np.int64)
    transitive = not np.any((G @ G > 0) & (G == 0))
    rng = random.Random(404)
    invariant = 0
    for _ in range(10_000):
        u, v, w = (Word(2, _random_word(rng, 2, 0, 6)) for _ in range(3))
        s = bergman_cmp(u, v).sign
        invariant += bergman_cmp(w * u, w * v).sign == s and bergman_cmp(u * w, v * w).sign == s
    anchor1 = bergman_cmp(Word(2, (1,)), Word(2, (2,))).order == "Greater"
    f = PowerSeries(2, 1, {(): 1, (1,): 2, (2,): 3})
    g = PowerSeries(2, 1, {(): 1, (1,): 3, (2,): 2})
    anchor2 = ps_cmp(f, g).order == "Less"
    ok = total and antisym and transitive and invariant == 10_000 and anchor1 and anchor2
    detail = (
        f"radius-4 ball ({n} words): total={total} antisymmetric={antisym} transitive={transitive}; "
        f"invariance {invariant}/10000; anchors {anchor1 and anchor2}"
    )
    return _report(4, ok, detail)


def criterion_5():
    words = [u.letters for u in ball(2, 2)]
    disagreements = 0
    count = 0
    for k in (1, 2, 3):
        for support in combinations(words, k):
            for coeffs in product(COEFFS, repeat=k):
                f = E(2, dict(zip(support, coeffs)))
                count += 1
                unit = is_trivial_unit(f) is not None
                disagreements += unit != (brute_inverse_search(f, 2, 50) is not None)
    non_inv = 0
    hs = [u for u in ball(2, 3) if u.letters]
    for h in hs:
        f = 1 - E.from_word(h)
        non_inv += is_trivial_unit(f) is None and brute_inverse_search(f, 4, 10**6) is None
    ok = disagreements == 0 and non_inv == len(hs)
    return _report(5, ok, f"{count} elements, {disagreements} disagreements; 1-h non-invertible {non_inv}/{len(hs)}")


def criterion_6():
    rng = random.Random(606)
    wrong = 0
    for _ in range(1000):
        d = _random_elem(rng, 2, 5, 3)
        q = _random_elem(rng, 2, 5, 3)
        wrong += divide_exact(d * q, d) != q
    refused = confirmed = exact = 0
    for _ in range(300):
        d = _random_elem(rng, 2, 3, 2)
        if len(d) < 2:
            continue
        w = d * _random_elem(rng, 2, 3, 2) + rng.choice(COEFFS) * E.from_word(Word(2, _random_word(rng, 2, 0, 2)))
        q = divide_exact(w, d)
        if q is None:
            refused += 1
            radius = max(len(k) for k in w.terms) + max(len(k) for k in d.terms) if not w.is_zero() else 0
            confirmed += brute_left_quotient(w, d, radius) is None
        else:
            exact += d * q == w
    ok = wrong == 0 and confirmed == refused
    detail = f"1000 round trips, {wrong} wrong; perturbed: {refused} refusals, {confirmed} confirmed by the oracle, {exact} exact quotients"
    return _report(6, ok, detail)


def criterion_7():
    rng = random.Random(707)
    bad = 0
    members = 0
    for _ in range(200):
        r = Word(2, _random_word(rng, 2, 1, 5))
        k = rng.randint(1, 4)
        g = r ** k
        root, j = centralizer_root(g)
        if not (primitive_root(root)[1] == 1 and root * g == g * root and root ** j == g):
            bad += 1
            continue
        exps = {i: rng.choice(COEFFS) for i in rng.sample(range(-3, 4), 3)}
        f = sum((c * E.from_word(root ** i) for i, c in exps.items()), E.zero(2))
        # every support word is a power of the root
        supp_ok = all(Word(2, u).is_identity() or centralizer_root(Word(2, u))[0] in (root, root.inverse()) for u in f.terms)
        ab = abelianize(root)
        if any(ab):
            N = max(abs(i) for i in exps)
            coeffs = in_K_g(specialize_abelian(f), ab)
            expected = tuple(exps.get(i, 0) for i in range(-N, N + 1))
            supp_ok = supp_ok and coeffs == expected
        members += supp_ok
    ok = bad == 0 and members == 200
    return _report(7, ok, f"200 powers: {bad} root failures, {members}/200 sampled elements recognized in K[r, r^-1]")


def criterion_8():
    X = LaurentPoly.univariate({1: 1})
    P = X + X ** 2 + X ** 3
    Q = X ** -1 + 1 + X ** 2
    R = 2 * X ** -2 - X + X ** 3
    failures = 0
    count = 0
    for n in range(1, 9):
        for t in product(range(-2, 3), repeat=n):
            count += 1
            code = tuple_encode(t, P)
            if tuple_decode(code) != t:
                failures += 1
                continue
            cq = nu_transport(code, Q)
            cr = nu_transport(cq, R)
            back = nu_transport(cr, P)
            failures += not (tuple_decode(cq) == tuple_decode(cr) == t and back == code)
    return _report(8, failures == 0, f"{count} tuples over bases P, Q, R, {failures} failures")


def criterion_9():
    X = LaurentPoly.univariate({1: 1})
    P = X ** -1 + 2 + X ** 2
    rng = random.Random(909)
    members_ok = 0
    for _ in range(100):
        coeffs = [rng.randint(-3, 3) for _ in range(rng.randint(1, 4))]
        Qm = tuple_encode(coeffs, P).value
        members_ok += psi_check(Qm, P, range(1, 21)).passed
    refuted = 0
    tried = 0
    while tried < 100:
        Qn = LaurentPoly.univariate({rng.randint(-4, 4): rng.randint(-3, 3) for _ in range(rng.randint(1, 4))})
        if Qn.is_constant() or in_KP(Qn, P) is not None:
            continue
        tried += 1
        res = psi_check(Qn, P, range(1, 101))
        refuted += (not res.passed) and res.witness in range(1, 101)
    ok = members_ok == 100 and refuted == 100
    return _report(9, ok, f"members passing {members_ok}/100, certified non-members refuted {refuted}/100")


def criterion_10():
    base = [Word(2, (1, 2, 2)), Word(2, (1, 1, 2, 2, 2)), Word(2, (1, 1, 1, 2, 2, 2, 2))]
    units = [c * E.from_word(u) for u in ball(2, 2) for c in COEFFS]
    violations = 0
    relations = 0
    for a, b, c in permutations(base):
        for n, m in product((1, 2), repeat=2):
            p = E.one_minus(c) ** n * E.one_minus(a) ** m * E.one_minus(b) ** n
            left = {}
            for g in units:
                left.setdefault(frozenset((g * p).terms.items()), []).append(g)
            for h in units:
                for g in left.get(frozenset((p * h).terms.items()), []):
                    relations += 1
                    violations += not (g == h and is_trivial_unit(g)[1].is_identity())
    return _report(10, violations == 0, f"{relations} relations g p = p h found, {violations} with g != h or non-scalar")


def _metric_axioms():
    B = ball(2, 3)
    D = {(u, v): word_metric(u, v) for u in B for v in B}
    for u in B:
        for v in B:
            if (D[u, v] == 0) != (u == v) or D[u, v] != D[v, u]:
                return False
            for w in B:
                if D[u, w] > D[u, v] + D[v, w]:
                    return False
    return True


def criterion_11():
    metric = _metric_axioms()
    gens = [u for u in ball(2, 3) if u.letters and shortlex_key(u.letters) <= shortlex_key(inv_letters(u.letters))]
    sets = [Y for k in range(4) for Y in combinations(gens, k)]
    U = ball(2, 5)
    disagreements = 0
    for Y in sets:
        graph = fold(list(Y), 2)
        adj = graph.adjacency()
        members = {u.letters for u in U if member_in(graph, u, adj)}
        disagreements += len(unfound_members(Y, members))
        disagreements += sum(not nonmember_certificate(Y, u.letters, 2) for u in U if u.letters not in members)
    W = lambda *ls: Word(2, ls)  # noqa: E731
    bases = (
        is_free_basis([W(1), W(2)])
        and is_free_basis([W(1), W(1, 2, -1)])
        and not is_free_basis([W(1, 1), W(2)])
        and not is_free_basis([W(1, 2), W(2, 1)])
    )
    probe = malnormality_probe([W(1, 1)], 4)
    mal = probe.verdict == "ViolatedAt" and probe.witness == W(1)
    ok = metric and disagreements == 0 and bases and mal
    detail = (
        f"metric axioms {metric}; {len(sets)} generating sets x {len(U)} words, {disagreements} disagreements; "
        f"basis examples {bases}; malnormality witness {mal}"
    )
    return _report(11, ok, detail)


def criterion_12():
    results = []
    for m in range(2, 7):
        w = am_chain(m)
        mismatched = [k for k in range(2, 8) if k != m]
        results.append(am_chain_verify(w, m) and not any(am_chain_verify(w, k) for k in mismatched))
    return _report(12, all(results), f"m = 2..6 against m' = 2..7: {results}")


def small_fq_corpus():
    words = [u.letters for u in ball(2, 2) if u.letters]
    out = []
    for k in (1, 2):
        for support in combinations(words, k):
            for coeffs in product(COEFFS, repeat=k):
                out.append(E(2, dict(zip(support, coeffs))))
    return out


def criterion_13():
    corpus = small_fq_corpus()
    packed = [pack_fq(f)[0] for f in corpus]
    checked = sum(check_fq(w, f) for w, f in zip(packed, corpus))
    by_fp = {}
    for i, w in enumerate(packed):
        by_fp.setdefault(w.fingerprint(), []).append(i)
    shared = sum(packed[i] == packed[j] for group in by_fp.values() for i, j in combinations(group, 2))
    inverted = ambiguous = 0
    for w, f in zip(packed, corpus):
        try:
            inverted += decode_fq_small(w, 2, 2) == f
        except AmbiguityError:
            ambiguous += 1
    ok = checked == len(corpus) and shared == 0 and inverted == len(corpus) and ambiguous == 0
    detail = (
        f"{len(corpus)} elements: check_fq {checked}/{len(corpus)}; {shared} pairs share a code; "
        f"decode inverts {inverted}, {ambiguous} ambiguity errors"
    )
    return _report(13, ok, detail)


CRITERIA = [globals()[f"criterion_{i}"] for i in range(1, 14)]


@pytest.mark.parametrize("check", CRITERIA, ids=[f"criterion_{i}" for i in range(1, 14)])
def test_criterion(check):
    ok, detail = check()
    assert ok, detail


if __name__ == "__main__":
    start = time.time()
    results = [check()[0] for check in CRITERIA]
    print(f"{sum(results)}/{len(results)} criteria pass in {time.time() - start:.0f}s")
    sys.exit(0 if all(results) else 1)
