"""
Explicit letter-array reference implementation for finite words.

Used as an oracle by the tests and the self-test suites: every operation
here works on plain lists of letters, one position at a time.
"""

from __future__ import annotations

from algebra.letters import Letter


def inv(word: list[Letter]) -> list[Letter]:
    return [x.inverse() for x in reversed(word)]


def reduce(word: list[Letter]) -> list[Letter]:
    out: list[Letter] = []
    for x in word:
        if out and out[-1] == x.inverse():
            out.pop()
        else:
            out.append(x)
    return out


def com(u: list[Letter], v: list[Letter]) -> list[Letter]:
    k = 0
    while k < len(u) and k < len(v) and u[k] == v[k]:
        k += 1
    return u[:k]


def mult(u: list[Letter], v: list[Letter]) -> list[Letter]:
    c = len(com(inv(u), v))
    return u[: len(u) - c] + v[c:]


def split(w: list[Letter], k: int) -> tuple[list[Letter], list[Letter]]:
    return w[:k], w[k:]


def cyclic_decomposition(w: list[Letter]) -> tuple[list[Letter], list[Letter]]:
    k = 0
    while 2 * (k + 1) < len(w) and w[k] == w[len(w) - 1 - k].inverse():
        k += 1
    c = inv(w[:k])
    return c, w[k : len(w) - k]
