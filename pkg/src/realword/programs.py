"""Reference machine programs used across tests, the CLI and the selftest.

SIGN is the canonical example: the smallest program with a single accepting
path and a nonempty proper input set (it halts exactly on r1 >= 1).  The
others cover the remaining instruction shapes: multi-branch sign analysis,
guarded multiplication and division, and immediate halting.
"""

from __future__ import annotations

from .machine import BssProgram, parse_program

# halts iff r1 - 1 >= 0; loops forever otherwise
SIGN_SRC = """\
1: set r2 -1
2: add r0 r1 r2     # r0 = r1 - 1
3: brgeq 6
4: set r0 0
5: brgeq 4          # spin
6: halt
"""

# three-way sign analysis: halts iff r1 >= 1 or r1 < -1
POLY3_SRC = """\
1: add r0 r1 r4      # r0 = r1 (r4 is always 0)
2: brgeq 8           # r1 >= 0 ?
3: set r2 1
4: add r0 r1 r2      # r0 = r1 + 1
5: brgeq 13          # -1 <= r1 < 0: spin
6: set r0 0
7: brgeq 15          # r1 < -1: halt
8: set r2 -1
9: add r0 r1 r2      # r0 = r1 - 1
10: brgeq 15         # r1 >= 1: halt
11: set r0 0
12: brgeq 11         # 0 <= r1 < 1: spin
13: set r0 0
14: brgeq 13
15: halt
"""

# halts iff r1^2 - 4 >= 0 (exercises mul and the zero-guard transform)
SQUARE_SRC = """\
1: mul r2 r1 r1      # r2 = r1^2
2: set r3 -4
3: add r0 r2 r3      # r0 = r1^2 - 4
4: brgeq 7
5: set r0 0
6: brgeq 5
7: halt
"""

# halts iff 1/r1 - 1/2 >= 0, i.e. 0 < r1 <= 2; diverges on r1 = 0 via div
RECIP_SRC = """\
1: set r2 1
2: div r3 r2 r1      # r3 = 1 / r1 (diverges when r1 = 0)
3: set r4 -1/2
4: add r0 r3 r4      # r0 = 1/r1 - 1/2
5: brgeq 8
6: set r0 0
7: brgeq 6
8: halt
"""

# halts immediately on every input
HALT_SRC = """\
1: halt
"""

# halts iff 2*r1 - 3 >= 0 (doubling through add with equal sources)
DOUBLE_SRC = """\
1: add r2 r1 r1      # r2 = 2 r1
2: set r3 -3
3: add r0 r2 r3
4: brgeq 7
5: set r0 0
6: brgeq 5
7: halt
"""


def sign_program() -> BssProgram:
    return parse_program(SIGN_SRC)


def poly3_program() -> BssProgram:
    return parse_program(POLY3_SRC)


def square_program() -> BssProgram:
    return parse_program(SQUARE_SRC)


def recip_program() -> BssProgram:
    return parse_program(RECIP_SRC)


def halt_program() -> BssProgram:
    return parse_program(HALT_SRC)


def double_program() -> BssProgram:
    return parse_program(DOUBLE_SRC)


ALL_PROGRAMS = {
    "sign": sign_program,
    "poly3": poly3_program,
    "square": square_program,
    "recip": recip_program,
    "halt": halt_program,
    "double": double_program,
}
