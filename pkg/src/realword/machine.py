"""Register machines over exact rationals.

A program is a contiguously labeled list of instructions (the last one is
the halt instruction).  A configuration is (n, i, j, regs): current label,
the two copy-registers used for indirect addressing, and a sparse register
file defaulting to 0.  Execution starts from (1, 1, 1, input), with the
input vector loaded into registers 1..d; register 0 is the branch test cell
("brgeq" jumps when it is >= 0).

Instruction semantics follow the standard real-RAM small step:

    set r<t> <c>      assign the rational constant c to register t
    add r<t> r<a> r<b>   (likewise sub / mul / div)
    copy              copy register #j into register #i (copy-registers)
    brgeq <l>         if r0 >= 0 jump to l, else fall through
    halt

Computation and copy instructions may additionally increment or reset the
copy-registers; the assembly accepts optional `i+ i0 j+ j0` suffix tokens
for that (plain programs never need them).

Division by zero is not an error value: the machine is considered to
diverge on that input, and `mult_guard_transform` rewrites programs so that
every multiplication is preceded by explicit zero tests (assigning 0
directly when a factor is 0) and every division diverges explicitly on a
zero divisor.  Extracted straight-line paths of transformed programs
therefore never invert or multiply by an unguarded zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .rationals import DivisionByZero, RatVec, format_rat, parse_rat, rat_op

_CTL = ("=", "+", "0")


@dataclass(frozen=True)
class Instruction:
    label: int
    kind: str  # compute | assign | branch | copy | halt
    op: str = ""  # add | sub | mul | div for compute
    target: int = 0
    a: int = 0
    b: int = 0
    const: Fraction = Fraction(0)
    jump: int = 0
    ictl: str = "="
    jctl: str = "="


@dataclass(frozen=True)
class BssProgram:
    instructions: tuple[Instruction, ...]

    def __post_init__(self):
        ins = self.instructions
        if not ins:
            raise ValueError("empty program")
        for k, i in enumerate(ins):
            if i.label != k + 1:
                raise ValueError(f"labels must be 1..N in order, got {i.label} at {k + 1}")
            if i.kind == "branch" and not (1 <= i.jump <= len(ins)):
                raise ValueError(f"branch target {i.jump} out of range")
            if i.ictl not in _CTL or i.jctl not in _CTL:
                raise ValueError("bad copy-register control")
        if ins[-1].kind != "halt":
            raise ValueError("last instruction must be halt")

    @property
    def size(self) -> int:
        return len(self.instructions)

    @property
    def constants(self) -> frozenset[Fraction]:
        return frozenset(i.const for i in self.instructions if i.kind == "assign")


@dataclass(frozen=True)
class Configuration:
    n: int
    i: int
    j: int
    regs: tuple[tuple[int, Fraction], ...]  # sparse, sorted, zero-free

    def reg(self, r: int) -> Fraction:
        for k, v in self.regs:
            if k == r:
                return v
        return Fraction(0)


def _pack(regs: dict[int, Fraction]) -> tuple[tuple[int, Fraction], ...]:
    return tuple(sorted((k, v) for k, v in regs.items() if v != 0))


def initial_configuration(input_vec: Sequence[Fraction]) -> Configuration:
    return Configuration(1, 1, 1, _pack({k + 1: Fraction(v) for k, v in enumerate(input_vec)}))


class Halted:
    """Singleton marker returned by step when the halt label is reached."""

    def __repr__(self):
        return "HALTED"


HALTED = Halted()


def _ctl(v: int, c: str) -> int:
    if c == "+":
        return v + 1
    if c == "0":
        return 0
    return v


def step(program: BssProgram, config: Configuration):
    """One small step; returns the next Configuration or HALTED.

    Raises DivisionByZero for a zero divisor (run() folds that into
    divergence).
    """
    ins = program.instructions[config.n - 1]
    if ins.kind == "halt":
        return HALTED
    regs = dict(config.regs)
    n, i, j = config.n, config.i, config.j
    if ins.kind == "compute":
        val = rat_op(ins.op, regs.get(ins.a, Fraction(0)), regs.get(ins.b, Fraction(0)))
        regs[ins.target] = val
        return Configuration(n + 1, _ctl(i, ins.ictl), _ctl(j, ins.jctl), _pack(regs))
    if ins.kind == "assign":
        regs[ins.target] = ins.const
        return Configuration(n + 1, _ctl(i, ins.ictl), _ctl(j, ins.jctl), _pack(regs))
    if ins.kind == "branch":
        taken = regs.get(0, Fraction(0)) >= 0
        return Configuration(ins.jump if taken else n + 1, i, j, config.regs)
    if ins.kind == "copy":
        regs[i] = regs.get(j, Fraction(0))
        return Configuration(n + 1, _ctl(i, ins.ictl), _ctl(j, ins.jctl), _pack(regs))
    raise ValueError(f"bad instruction kind {ins.kind!r}")


TraceStep = tuple[Configuration, Instruction, Optional[bool]]


@dataclass(frozen=True)
class Trace:
    program: BssProgram
    d: int
    steps: tuple[TraceStep, ...]


@dataclass(frozen=True)
class RunResult:
    status: str  # halted | out_of_fuel | division_by_zero
    steps: int
    output: Optional[RatVec] = None
    trace: Optional[Trace] = None
    final: Optional[Configuration] = None

    @property
    def halted(self) -> bool:
        return self.status == "halted"

    @property
    def trimmed_output(self) -> Optional[RatVec]:
        if self.output is None:
            return None
        out = list(self.output)
        while out and out[-1] == 0:
            out.pop()
        return tuple(out)


def run(program: BssProgram, input_vec: Sequence[Fraction], fuel: int,
        record_trace: bool = True) -> RunResult:
    """Iterate step at most `fuel` times from the initial configuration."""
    cfg = initial_configuration(input_vec)
    d = len(input_vec)
    steps: list[TraceStep] = []
    max_written = d
    for count in range(fuel + 1):
        ins = program.instructions[cfg.n - 1]
        if ins.kind == "halt":
            out = tuple(cfg.reg(r) for r in range(1, max_written + 1))
            trace = Trace(program, d, tuple(steps)) if record_trace else None
            return RunResult("halted", count, out, trace, cfg)
        if count == fuel:
            break
        try:
            nxt = step(program, cfg)
        except DivisionByZero:
            trace = Trace(program, d, tuple(steps)) if record_trace else None
            return RunResult("division_by_zero", count, None, trace, cfg)
        taken = None
        if ins.kind == "branch":
            taken = nxt.n == ins.jump
        if ins.kind in ("compute", "assign"):
            max_written = max(max_written, ins.target)
        elif ins.kind == "copy":
            max_written = max(max_written, cfg.i)
        if record_trace:
            steps.append((cfg, ins, taken))
        cfg = nxt
    trace = Trace(program, d, tuple(steps)) if record_trace else None
    return RunResult("out_of_fuel", fuel, None, trace, cfg)


# -- assembly text format ------------------------------------------------------

def parse_program(text: str) -> BssProgram:
    """Parse the one-instruction-per-line assembly format ('#' comments)."""
    out: list[Instruction] = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(":")
        label = int(head.strip())
        toks = rest.split()
        if not toks:
            raise ValueError(f"missing instruction in {raw!r}")
        ictl = jctl = "="
        while toks and toks[-1] in ("i+", "i0", "j+", "j0"):
            t = toks.pop()
            if t[0] == "i":
                ictl = "+" if t[1] == "+" else "0"
            else:
                jctl = "+" if t[1] == "+" else "0"
        name = toks[0]

        def reg(tok: str) -> int:
            if not tok.startswith("r"):
                raise ValueError(f"expected register, got {tok!r}")
            return int(tok[1:])

        if name == "halt":
            out.append(Instruction(label, "halt"))
        elif name == "set":
            out.append(Instruction(label, "assign", target=reg(toks[1]),
                                   const=parse_rat(toks[2]), ictl=ictl, jctl=jctl))
        elif name in ("add", "sub", "mul", "div"):
            out.append(Instruction(label, "compute", op=name, target=reg(toks[1]),
                                   a=reg(toks[2]), b=reg(toks[3]), ictl=ictl, jctl=jctl))
        elif name == "brgeq":
            out.append(Instruction(label, "branch", jump=int(toks[1])))
        elif name == "copy":
            out.append(Instruction(label, "copy", ictl=ictl, jctl=jctl))
        else:
            raise ValueError(f"unknown instruction {name!r}")
    return BssProgram(tuple(out))


def format_program(program: BssProgram) -> str:
    lines = []
    for ins in program.instructions:
        ctl = ""
        if ins.kind in ("compute", "assign", "copy"):
            if ins.ictl != "=":
                ctl += f" i{ins.ictl}"
            if ins.jctl != "=":
                ctl += f" j{ins.jctl}"
        if ins.kind == "halt":
            body = "halt"
        elif ins.kind == "assign":
            body = f"set r{ins.target} {format_rat(ins.const)}"
        elif ins.kind == "compute":
            body = f"{ins.op} r{ins.target} r{ins.a} r{ins.b}"
        elif ins.kind == "branch":
            body = f"brgeq {ins.jump}"
        elif ins.kind == "copy":
            body = "copy"
        else:
            raise ValueError(ins.kind)
        lines.append(f"{ins.label}: {body}{ctl}")
    return "\n".join(lines) + "\n"


def max_register(program: BssProgram) -> int:
    """Largest statically referenced register index."""
    m = 0
    for ins in program.instructions:
        if ins.kind == "compute":
            m = max(m, ins.target, ins.a, ins.b)
        elif ins.kind == "assign":
            m = max(m, ins.target)
    return m


# -- zero-guarding transform ---------------------------------------------------

def mult_guard_transform(program: BssProgram) -> BssProgram:
    """Equivalent program whose multiplications never see a zero operand.

    Every `mul` is preceded by zero tests on both operands (taking the
    direct-assignment branch when one is zero) and every `div` by a zero
    test on the divisor that spins forever when it is zero.  Register 0 is
    saved and restored around the inserted tests through a scratch register
    above the statically referenced range, which is scrubbed afterwards, so
    outputs agree with the original program up to trailing zeros.  Programs
    whose `copy` instructions address registers beyond the static range are
    outside the transform's contract.
    """
    s1 = max_register(program) + 1
    z = s1 + 1  # never written: always reads 0

    blocks: list[list[tuple]] = []  # proto-instructions; jumps symbolic
    for ins in program.instructions:
        if ins.kind == "compute" and ins.op in ("mul", "div"):
            a = s1 if ins.a == 0 else ins.a
            b = s1 if ins.b == 0 else ins.b
            blk: list[tuple] = [("add", s1, 0, z, "=", "=")]  # save r0

            def test_zero(src: int, tag: str, when_zero: str, when_nonzero: str) -> list[tuple]:
                return [
                    ("add", 0, src, z, "=", "="),
                    ("br", f"nonneg_{tag}"),
                    ("set", 0, Fraction(0), "=", "="),
                    ("br", when_nonzero),
                    ("label", f"nonneg_{tag}"),
                    ("sub", 0, z, src, "=", "="),
                    ("br", when_zero),
                    ("set", 0, Fraction(0), "=", "="),
                    ("br", when_nonzero),
                ]

            if ins.op == "mul":
                blk += test_zero(a, "a", "zero_a", "test_b")
                blk += [("label", "zero_a"),
                        ("set", ins.target, Fraction(0), ins.ictl, ins.jctl),
                        ("set", 0, Fraction(0), "=", "="),
                        ("br", "finish")]
                blk += [("label", "test_b")]
                blk += test_zero(b, "b", "zero_b", "do_op")
                blk += [("label", "zero_b"),
                        ("set", ins.target, Fraction(0), ins.ictl, ins.jctl),
                        ("set", 0, Fraction(0), "=", "="),
                        ("br", "finish")]
                blk += [("label", "do_op"),
                        ("mul", ins.target, a, b, ins.ictl, ins.jctl),
                        ("label", "finish")]
            else:  # div: diverge on zero divisor
                blk += test_zero(b, "b", "spin", "do_op")
                blk += [("label", "spin"),
                        ("set", 0, Fraction(0), "=", "="),
                        ("br", "spin"),
                        ("label", "do_op"),
                        ("div", ins.target, a, b, ins.ictl, ins.jctl),
                        ("label", "finish")]
            if ins.target != 0:
                blk.append(("add", 0, s1, z, "=", "="))  # restore r0
            blk.append(("set", s1, Fraction(0), "=", "="))  # scrub scratch
            blocks.append(blk)
        else:
            blocks.append([("orig", ins)])

    # assign labels: first pass computes block start labels and local labels
    starts: list[int] = []
    next_label = 1
    local_labels: list[dict[str, int]] = []
    for blk in blocks:
        starts.append(next_label)
        local: dict[str, int] = {}
        pos = next_label
        for proto in blk:
            if proto[0] == "label":
                local[proto[1]] = pos
            else:
                pos += 1
        local_labels.append(local)
        next_label = pos

    out: list[Instruction] = []
    label = 1
    for bi, blk in enumerate(blocks):
        local = local_labels[bi]
        after = starts[bi + 1] if bi + 1 < len(starts) else next_label
        for proto in blk:
            kind = proto[0]
            if kind == "label":
                continue
            if kind == "orig":
                ins = proto[1]
                if ins.kind == "branch":
                    out.append(Instruction(label, "branch", jump=starts[ins.jump - 1]))
                else:
                    out.append(Instruction(
                        label, ins.kind, op=ins.op, target=ins.target, a=ins.a,
                        b=ins.b, const=ins.const, jump=0, ictl=ins.ictl, jctl=ins.jctl))
            elif kind == "br":
                tgt = local.get(proto[1], after if proto[1] == "finish" else None)
                if tgt is None:
                    raise AssertionError(f"unresolved label {proto[1]}")
                out.append(Instruction(label, "branch", jump=tgt))
            elif kind == "set":
                out.append(Instruction(label, "assign", target=proto[1],
                                       const=proto[2], ictl=proto[3], jctl=proto[4]))
            else:  # add | sub | mul | div
                out.append(Instruction(label, "compute", op=kind, target=proto[1],
                                       a=proto[2], b=proto[3], ictl=proto[4], jctl=proto[5]))
            label += 1
    return BssProgram(tuple(out))
