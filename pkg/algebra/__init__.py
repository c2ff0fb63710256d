"""
Z^n lattice arithmetic and the algebra of reduced Z^n-words.
"""

from algebra.zn import ZnVec, Ordering, cmp, add, sub, neg, scale, in_segment, succ, pred, height
from algebra.letters import Letter, letter
from algebra.words import (
    Block,
    BlockKind,
    InfiniteWord,
    RawWord,
    c_len,
    char_at,
    com,
    concat,
    cyclic_decomposition,
    first_letter,
    invert,
    is_cyclically_reduced,
    is_reduced,
    last_letter,
    length,
    mult,
    periodic_word,
    power,
    prefix,
    raw_concat,
    split,
    suffix,
)
from algebra.grammar import parse_word, format_word
