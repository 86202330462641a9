"""Reduced words in a free group on k generators.

A word is a tuple of nonzero ints: ``i`` is generator i (1-based) and ``-i``
its inverse.
"""
from itertools import product

from .errors import NonReducedWord


def letters(k):
    return [s for i in range(1, k + 1) for s in (i, -i)]


def letter_key(s):
    # order 1 < -1 < 2 < -2 < ...
    return (abs(s), s < 0)


def is_reduced(w):
    return all(w[i] != -w[i + 1] for i in range(len(w) - 1))


def check_reduced(w):
    if not is_reduced(w):
        raise NonReducedWord(f"word {list(w)} is not reduced")
    return tuple(w)


def free_reduce(w):
    out = []
    for s in w:
        if out and out[-1] == -s:
            out.pop()
        else:
            out.append(s)
    return tuple(out)


def inverse_word(w):
    return tuple(-s for s in reversed(w))


def is_cyclically_reduced(w):
    return is_reduced(w) and (len(w) < 2 or w[0] != -w[-1])


def rotations(w):
    return [w[i:] + w[:i] for i in range(len(w))] or [()]


def necklace(w):
    """Lexicographically least cyclic rotation under ``letter_key``."""
    return min(rotations(tuple(w)), key=lambda r: [letter_key(s) for s in r])


def reduced_words(k, n):
    """All reduced words of length exactly n, in a fixed deterministic order."""
    if n == 0:
        yield ()
        return
    alphabet = letters(k)
    stack = [(s,) for s in reversed(alphabet)]
    while stack:
        w = stack.pop()
        if len(w) == n:
            yield w
            continue
        for s in reversed(alphabet):
            if s != -w[-1]:
                stack.append(w + (s,))


def words_up_to(k, n, include_empty=False):
    out = [()] if include_empty else []
    for m in range(1, n + 1):
        out.extend(reduced_words(k, m))
    return out


def count_reduced(k, n):
    return 1 if n == 0 else 2 * k * (2 * k - 1) ** (n - 1)


def conjugacy_representatives(k, max_len):
    """One cyclically reduced necklace per conjugacy class, lengths 1..max_len.

    A generator and its inverse lie in different classes; proper powers are kept.
    """
    reps = []
    for n in range(1, max_len + 1):
        for w in reduced_words(k, n):
            if is_cyclically_reduced(w) and necklace(w) == w:
                reps.append(w)
    return reps


def all_words_brute(k, n):
    """Every length-n string over the alphabet, reduced or not (test oracle)."""
    return list(product(letters(k), repeat=n))
