"""
Word-algebra suites: the letter-array oracle and the periodic-word laws.
"""

from __future__ import annotations

import logging

from algebra import naive
from algebra.words import (
    InfiniteWord,
    c_len,
    char_at,
    com,
    cyclic_decomposition,
    invert,
    mult,
    split,
)
from algebra.zn import ZnVec
from suites.base import Scale, SuiteResult, random_letters, random_position, random_z2_word, suite_rng
from utils.errors import NoCommonMaxError

logger = logging.getLogger(__name__)

ALPHABET = ["a", "b"]
MAX_LETTERS = 64
POSITIONS_PER_WORD = 32


def _letters(w: InfiniteWord) -> list:
    return list(w.finite_letters()) if w.blocks else []


def word_oracle(scale: Scale, seed: int) -> SuiteResult:
    """com, mult, invert, split and cyclic decomposition against the naive oracle (n = 1)."""
    rng = suite_rng(seed, "word_oracle")
    bad = 0
    first_bad = ""
    for _ in range(scale.words):
        u = random_letters(rng, ALPHABET, int(rng.integers(0, MAX_LETTERS + 1)))
        # v shares a random head with u^-1 so products cancel
        share = int(rng.integers(0, len(u) + 1))
        head = naive.inv(u)[:share]
        v = head + random_letters(rng, ALPHABET, int(rng.integers(0, MAX_LETTERS - share + 1)), head[-1] if head else None)
        U, V = InfiniteWord.from_letters(u, 1), InfiniteWord.from_letters(v, 1)
        k = int(rng.integers(0, len(u) + 1))
        checks = {
            "com": _letters(com(U, V)) == naive.com(u, v),
            "mult": _letters(mult(U, V)) == naive.mult(u, v),
            "invert": _letters(invert(U)) == naive.inv(u),
            "split": tuple(map(_letters, split(U, ZnVec.of(k)))) == naive.split(u, k),
        }
        if u:
            c, core = cyclic_decomposition(U)
            nc, ncore = naive.cyclic_decomposition(u)
            checks["cyclic"] = (_letters(c), _letters(core)) == (nc, ncore)
        failed = [name for name, ok in checks.items() if not ok]
        if failed:
            bad += 1
            first_bad = first_bad or f"{failed} on u={U}, v={V}"
    detail = first_bad or "block algebra matches the letter arrays"
    return SuiteResult("word_oracle", bad == 0, scale.words, bad, detail)


def periodic_laws(scale: Scale, seed: int) -> SuiteResult:
    """Length of products, involution and pointwise inversion on random Z^2-words."""
    rng = suite_rng(seed, "periodic_laws")
    one = ZnVec.unit(2)
    bad = skipped = 0
    first_bad = ""
    for _ in range(scale.periodic_words):
        u, v = random_z2_word(rng, ALPHABET), random_z2_word(rng, ALPHABET)
        problems: list[str] = []
        try:
            c = c_len(invert(u), v)
            if mult(u, v).length != u.length + v.length - c * 2:
                problems.append("product length")
        except NoCommonMaxError:
            skipped += 1
        if invert(invert(u)) != u:
            problems.append("involution")
        w = invert(u)
        for _ in range(POSITIONS_PER_WORD):
            beta = random_position(rng, w)
            if char_at(w, beta) != char_at(u, u.length - beta + one).inverse():
                problems.append(f"inverse letter at {beta}")
                break
        if problems:
            bad += 1
            first_bad = first_bad or f"{problems} on u={u}, v={v}"
    if skipped:
        logger.info("periodic_laws: %d pairs without a common maximum", skipped)
    detail = first_bad or f"laws hold ({skipped} pairs without a common maximum)"
    return SuiteResult("periodic_laws", bad == 0, scale.periodic_words, bad, detail, {"skipped": skipped})
