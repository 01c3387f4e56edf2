"""Brute-force reference multiplication in the tensor algebra quotient.

Words in the generators multiply by concatenation and reduce to the
ascending normal form with the two rewriting rules

    ... e_l e_j ...  ->  - ... e_j e_l ...   (l > j)
    ... e_j e_j ...  ->  d_j ...

This is deliberately independent of the bit-mask kernel (no XOR, no popcount
parity); the verification suite compares the two on small dimensions.
"""

from __future__ import annotations

from .clifford import BilinearForm, Multivector


def reduce_word(word: tuple[int, ...], diag) -> tuple[tuple[int, ...], float]:
    """Normal-order a generator word, returning (ascending word, sign/metric factor)."""
    out: list[int] = []
    coeff = 1.0
    for letter in word:
        pos = len(out)
        while pos > 0 and out[pos - 1] > letter:
            coeff = -coeff
            pos -= 1
        if pos > 0 and out[pos - 1] == letter:
            coeff *= diag[letter]
            out.pop(pos - 1)
        else:
            out.insert(pos, letter)
    return tuple(out), coeff


def _mask_to_word(mask: int) -> tuple[int, ...]:
    word = []
    j = 0
    while mask:
        if mask & 1:
            word.append(j)
        mask >>= 1
        j += 1
    return tuple(word)


def _word_to_mask(word: tuple[int, ...]) -> int:
    mask = 0
    for j in word:
        mask |= 1 << j
    return mask


def oracle_mul(x: Multivector, y: Multivector) -> Multivector:
    """Reference product computed by word concatenation and rewriting."""
    diag = list(x.form.diag)
    acc: dict[int, complex] = {}
    for ma, ca in x.terms().items():
        wa = _mask_to_word(ma)
        for mb, cb in y.terms().items():
            word, factor = reduce_word(wa + _mask_to_word(mb), diag)
            key = _word_to_mask(word)
            acc[key] = acc.get(key, 0j) + ca * cb * factor
    return Multivector(x.form, acc)
