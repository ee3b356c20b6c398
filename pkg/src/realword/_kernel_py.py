"""Pure-Python fallback for the compiled word kernel.

Must mirror realword._kernel exactly; realword.words selects whichever is
importable.  Keep these functions tiny: they sit in the innermost loop of
every search in the package.
"""

from __future__ import annotations


def reduce_ids(ids) -> tuple:
    stack: list[int] = []
    push = stack.append
    pop = stack.pop
    for v in ids:
        if stack and stack[-1] == -v:
            pop()
        else:
            push(v)
    return tuple(stack)


def concat_ids(a, b) -> tuple:
    i = len(a)
    j = 0
    nb = len(b)
    while i > 0 and j < nb and a[i - 1] == -b[j]:
        i -= 1
        j += 1
    return tuple(a[:i]) + tuple(b[j:])


def invert_ids(a) -> tuple:
    return tuple(-v for v in reversed(a))
