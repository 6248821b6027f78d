from fractions import Fraction

from hypothesis import HealthCheck, settings, strategies as st

from freering.groupring import GroupRingElem
from freering.words import Word, reduce_letters

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


def letter_lists(rank, max_len):
    letters = [a for i in range(1, rank + 1) for a in (i, -i)]
    return st.lists(st.sampled_from(letters), max_size=max_len)


def words(rank=2, max_len=4):
    return letter_lists(rank, max_len).map(lambda ls: Word(rank, reduce_letters(ls)))


SMALL_COEFFS = st.sampled_from([1, -1, 2, -2, 3, Fraction(1, 2), Fraction(-2, 3)])


def elems(rank=2, max_terms=4, max_len=3, coeffs=SMALL_COEFFS):
    return st.dictionaries(
        words(rank, max_len).map(lambda w: w.letters), coeffs, max_size=max_terms
    ).map(lambda d: GroupRingElem(rank, d))


def nonzero_elems(rank=2, max_terms=4, max_len=3, coeffs=SMALL_COEFFS):
    return elems(rank, max_terms, max_len, coeffs).filter(lambda f: not f.is_zero())


def naive_reduce(letters):
    """Reference free reduction: rescan until no adjacent pair cancels."""
    letters = list(letters)
    changed = True
    while changed:
        changed = False
        for i in range(len(letters) - 1):
            if letters[i] == -letters[i + 1]:
                del letters[i:i + 2]
                changed = True
                break
    return tuple(letters)
