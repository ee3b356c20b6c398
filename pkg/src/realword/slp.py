"""Straight-line execution paths of register machine runs.

A path is a branch-resolved, single-assignment program: registers 1..d hold
the input, every later register d < i <= D is assigned exactly once by an
operation over strictly earlier registers, and guards pin down the branch
outcomes taken along the way.  The operation alphabet is deliberately small
(assign / copy / add / neg / mul / inv / geq / lt): machine subtraction and
division are split into neg+add and inv+mul during extraction.

The input set of a path (the inputs that follow exactly its branch
outcomes) is decided by replaying the operations and checking every guard;
the replay also produces the unique single-assignment extension
(r_1,...,r_D) of a member input.

Paths are enumerated without input values by running the machine "forced":
branch outcomes come from an explicit decision string instead of register
contents.  The stream is frozen as follows: paths are grouped by budget
B = d + F where F is the exact halting step count of the forced run, a
budget block lists d = 0..B in order, and within fixed (d, F) paths are
ordered by their branch-decision strings (shorter strings first, and the
>= 0 outcome sorting before the < 0 outcome position-wise).  Index n maps
to (block, offset) through the Cantor pairing; offsets past the end of a
block yield None and callers skip them.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .machine import BssProgram, Trace, step, HALTED
from .rationals import RatVec, unpair

PathOp = tuple  # ('assign', i, c) ('copy', i, j) ('add', i, j, k) ('neg', i, j)
#                 ('mul', i, j, k) ('inv', i, j) ('geq', j) ('lt', j)

_VALUE_OPS = ("assign", "copy", "add", "neg", "mul", "inv")


class MalformedTrace(Exception):
    """Trace steps are not related by the machine's small-step function."""


@dataclass(frozen=True)
class Path:
    d: int
    D: int
    ops: tuple[PathOp, ...]
    guard_string: str = ""  # '1' per >=0 outcome, '0' per <0 outcome

    def __post_init__(self):
        nxt = self.d + 1
        for op in self.ops:
            kind = op[0]
            if kind in _VALUE_OPS:
                if op[1] != nxt:
                    raise ValueError(f"targets must be consecutive, got {op}")
                for src in op[2:] if kind != "assign" else ():
                    if not (1 <= src < op[1]):
                        raise ValueError(f"operand out of range in {op}")
                nxt += 1
            elif kind in ("geq", "lt"):
                if not (1 <= op[1] < nxt):
                    raise ValueError(f"guard references unassigned register in {op}")
            else:
                raise ValueError(f"unknown path op {kind!r}")
        if nxt - 1 != self.D:
            raise ValueError(f"D={self.D} but ops assign up to {nxt - 1}")


def replay(path: Path, input_vec: Sequence[Fraction]) -> Optional[tuple[Fraction, ...]]:
    """Values r_1..r_D when the input follows the path, else None.

    A failed guard (or an inversion of 0, which guarded paths never
    request) means the input does not belong to the path.
    """
    if len(input_vec) != path.d:
        raise ValueError(f"input dimension {len(input_vec)} != path.d {path.d}")
    vals: list[Fraction] = [Fraction(0)] + [Fraction(v) for v in input_vec]
    for op in path.ops:
        kind = op[0]
        if kind == "assign":
            vals.append(op[2])
        elif kind == "copy":
            vals.append(vals[op[2]])
        elif kind == "add":
            vals.append(vals[op[2]] + vals[op[3]])
        elif kind == "neg":
            vals.append(-vals[op[2]])
        elif kind == "mul":
            vals.append(vals[op[2]] * vals[op[3]])
        elif kind == "inv":
            if vals[op[2]] == 0:
                return None
            vals.append(1 / vals[op[2]])
        elif kind == "geq":
            if not vals[op[1]] >= 0:
                return None
        else:  # lt
            if not vals[op[1]] < 0:
                return None
    return tuple(vals[1:])


def path_membership(path: Path, input_vec: Sequence[Fraction]) -> bool:
    return replay(path, input_vec) is not None


def path_extend(path: Path, input_vec: Sequence[Fraction]) -> Optional[RatVec]:
    return replay(path, input_vec)


class _Builder:
    """Shared single-assignment renaming for trace extraction and forced runs."""

    def __init__(self, d: int):
        self.regmap = {r: r for r in range(1, d + 1)}
        self.next = d + 1
        self.ops: list[PathOp] = []
        self.bits: list[str] = []

    def clone(self) -> "_Builder":
        b = _Builder.__new__(_Builder)
        b.regmap = dict(self.regmap)
        b.next = self.next
        b.ops = list(self.ops)
        b.bits = list(self.bits)
        return b

    def alloc(self) -> int:
        t = self.next
        self.next += 1
        return t

    def read(self, reg: int) -> int:
        ssa = self.regmap.get(reg)
        if ssa is None:
            ssa = self.alloc()
            self.ops.append(("assign", ssa, Fraction(0)))
            self.regmap[reg] = ssa
        return ssa

    def emit(self, ins, i_reg: int, j_reg: int, taken: Optional[bool]):
        if ins.kind == "assign":
            t = self.alloc()
            self.ops.append(("assign", t, ins.const))
            self.regmap[ins.target] = t
        elif ins.kind == "compute":
            ra = self.read(ins.a)
            rb = self.read(ins.b)
            if ins.op == "add":
                t = self.alloc()
                self.ops.append(("add", t, ra, rb))
            elif ins.op == "sub":
                tn = self.alloc()
                self.ops.append(("neg", tn, rb))
                t = self.alloc()
                self.ops.append(("add", t, ra, tn))
            elif ins.op == "mul":
                t = self.alloc()
                self.ops.append(("mul", t, ra, rb))
            else:  # div
                ti = self.alloc()
                self.ops.append(("inv", ti, rb))
                t = self.alloc()
                self.ops.append(("mul", t, ra, ti))
            self.regmap[ins.target] = t
        elif ins.kind == "copy":
            rj = self.read(j_reg)
            t = self.alloc()
            self.ops.append(("copy", t, rj))
            self.regmap[i_reg] = t
        elif ins.kind == "branch":
            r0 = self.read(0)
            self.ops.append(("geq", r0) if taken else ("lt", r0))
            self.bits.append("1" if taken else "0")
        else:
            raise ValueError(ins.kind)

    def path(self, d: int) -> Path:
        return Path(d, self.next - 1, tuple(self.ops), "".join(self.bits))


def extract_path(trace: Trace, d: int) -> Path:
    """Single-assignment straight-line program with guards for a halting trace."""
    if d != trace.d:
        raise MalformedTrace(f"trace input dimension is {trace.d}, not {d}")
    b = _Builder(d)
    for k, (cfg, ins, taken) in enumerate(trace.steps):
        if trace.program.instructions[cfg.n - 1] is not ins:
            raise MalformedTrace(f"instruction at step {k} does not match its label")
        nxt = step(trace.program, cfg)
        if nxt is HALTED:
            raise MalformedTrace(f"halt configuration recorded as a step at {k}")
        if k + 1 < len(trace.steps) and nxt != trace.steps[k + 1][0]:
            raise MalformedTrace(f"configurations at steps {k},{k + 1} are not step-related")
        b.emit(ins, cfg.i, cfg.j, taken)
    return b.path(d)


# -- forced (value-free) execution and path enumeration ------------------------

def _forced_dfs(program: BssProgram, d: int, budget: int,
                exact: Optional[int] = None,
                counter: Optional[list[int]] = None) -> list[tuple[int, Path]]:
    """All forced halting runs with at most `budget` steps (exactly `exact` if given).

    Returns (step_count, path) pairs in the frozen order; `counter`, when
    given, is decremented by one per forced step and the search stops early
    once it runs out.
    """
    out: list[tuple[int, Path]] = []
    # iterative DFS; stack holds (label, i, j, builder, steps_used)
    stack: list[tuple[int, int, int, _Builder, int]] = [(1, 1, 1, _Builder(d), 0)]
    N = program.size
    while stack:
        n, i, j, b, used = stack.pop()
        while True:
            ins = program.instructions[n - 1]
            if ins.kind == "halt":
                if exact is None or used == exact:
                    out.append((used, b.path(d)))
                break
            if used == budget:
                break
            if counter is not None:
                if counter[0] <= 0:
                    return out
                counter[0] -= 1
            used += 1
            if ins.kind == "branch":
                alt = b.clone()
                alt.emit(ins, i, j, False)
                stack.append((n + 1, i, j, alt, used))
                b.emit(ins, i, j, True)
                n = ins.jump
                continue
            b.emit(ins, i, j, None)
            if ins.kind == "copy":
                pass  # register change tracked in the builder
            ictl, jctl = ins.ictl, ins.jctl
            i = i + 1 if ictl == "+" else 0 if ictl == "0" else i
            j = j + 1 if jctl == "+" else 0 if jctl == "0" else j
            n += 1
    # DFS with a stack pops the deepest alternative first, which would put
    # the '0' branch before the '1' branch; restore the frozen order.
    out.sort(key=lambda sp: (sp[0], _bitkey(sp[1].guard_string)))
    return out


def _bitkey(bits: str) -> tuple:
    # '1' (>=0) explored before '0' within the same step count
    return (len(bits), tuple(0 if c == "1" else 1 for c in bits))


class PathEnumerator:
    """Frozen enumeration of forced halting paths of one program.

    Block B lists, for d = 0..B, the forced runs of input dimension d that
    halt in exactly B - d steps (in the frozen per-(d, F) order).  Index n
    unpacks as Cantor (B, k).
    """

    def __init__(self, program: BssProgram):
        self.program = program
        self._blocks: dict[int, list[Path]] = {}
        self._exact: dict[tuple[int, int], list[Path]] = {}

    def exact(self, d: int, steps: int, counter: Optional[list[int]] = None) -> list[Path]:
        key = (d, steps)
        got = self._exact.get(key)
        if got is None:
            got = [p for _, p in _forced_dfs(self.program, d, steps, exact=steps,
                                             counter=counter)]
            if counter is None or counter[0] > 0:
                self._exact[key] = got
        return got

    def block(self, b: int) -> list[Path]:
        got = self._blocks.get(b)
        if got is None:
            got = []
            for d in range(b + 1):
                got.extend(self.exact(d, b - d))
            self._blocks[b] = got
        return got

    def path(self, n: int) -> Optional[Path]:
        b, k = unpair(n)
        block = self.block(b)
        return block[k] if k < len(block) else None


def enumerate_paths(program: BssProgram, n: int,
                    enumerator: Optional[PathEnumerator] = None) -> Optional[Path]:
    """n-th forced halting path of a zero-guarded program, or None (skip)."""
    en = enumerator or PathEnumerator(program)
    return en.path(n)
