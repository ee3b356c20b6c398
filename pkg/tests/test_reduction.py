import random
from fractions import Fraction as F

import pytest

from realword.machine import mult_guard_transform, parse_program, run
from realword.programs import halt_program, sign_program
from realword.reduction import (GroupHandles, ZeroScale, assemble_u, build_W,
                                check_reduction, extension_presentation,
                                l_reachability_check, path_constants,
                                pattern_group_presentation, reduce_halting,
                                stable_conjugate, u_membership, u_structure,
                                v_membership, w_membership, word_constants)
from realword.britton import hnn_is_identity
from realword.presentations import check_generator, check_relator
from realword.slp import extract_path, path_extend
from realword.words import (EMPTY, GenSym, Word, concat, encode_w,
                            encode_w_tagged, format_word, invert, parse_word)


def sign_path():
    res = run(sign_program(), (F(2),), 100)
    return extract_path(res.trace, 1)


def test_build_w_rows():
    add = build_W(("add", 3, 1, 2), 0, 3)
    assert add.w_pred.eval((F(2), F(-1), F(1)))
    assert not add.w_pred.eval((F(2), F(-1), F(0)))
    inv = build_W(("inv", 2, 1), 0, 2)
    assert not inv.w_pred.eval((F(0), F(5)))
    assert inv.w_pred.eval((F(4), F(1, 4)))
    geq = build_W(("geq", 1), 0, 1)
    assert geq.w_pred.eval((F(0),))
    lt = build_W(("lt", 1), 0, 1)
    assert lt.w_pred.eval((F(-1),)) and not lt.w_pred.eval((F(0),))
    with pytest.raises(IndexError):
        build_W(("add", 3, 1, 9), 0, 3)
    with pytest.raises(IndexError):
        build_W(("assign", 1, F(0)), 1, 3)  # target must exceed input dim


def test_doubling_rows():
    dadd = build_W(("add", 2, 1, 1), 0, 2)
    assert dadd.w_pred.eval((F(3), F(6)))
    assert l_reachability_check(dadd, encode_w((F(3), F(6))))
    assert not l_reachability_check(dadd, encode_w((F(3), F(5))))
    dmul = build_W(("mul", 2, 1, 1), 0, 2)
    assert dmul.w_pred.eval((F(3), F(9)))
    assert l_reachability_check(dmul, encode_w((F(3), F(9))))
    assert not l_reachability_check(dmul, encode_w((F(0), F(0))))


def test_w_membership():
    spec = build_W(("add", 3, 1, 2), 0, 3)
    assert w_membership(spec, encode_w((F(2), F(-1), F(1))))
    product = concat(encode_w((F(2), F(-1), F(1))), encode_w((F(0), F(3), F(3))))
    assert w_membership(spec, product)
    assert not w_membership(spec, parse_word("x(1,1)"))
    assert not w_membership(spec, encode_w((F(2), F(-1))))  # wrong dimension
    assert w_membership(spec, EMPTY)


def test_l_reachability():
    spec = build_W(("add", 3, 1, 2), 0, 3)
    assert l_reachability_check(spec, encode_w((F(2), F(-1), F(1))))
    assert l_reachability_check(spec, encode_w((F(0), F(0), F(0))))  # base word
    assert not l_reachability_check(spec, encode_w((F(2), F(-1), F(2))))
    const = build_W(("assign", 2, F(1)), 1, 2)
    assert not l_reachability_check(const, encode_w((F(0), F(2))))
    assert l_reachability_check(const, encode_w((F(7), F(1))))
    mul = build_W(("mul", 3, 1, 2), 0, 3)
    assert l_reachability_check(mul, encode_w((F(2), F(3), F(6))))
    assert not l_reachability_check(mul, encode_w((F(0), F(3), F(0))))  # zeros unreachable
    # products are not single conjugation orbits
    spec_geq = build_W(("geq", 1), 0, 1)
    assert l_reachability_check(spec_geq, encode_w((F(0),)))
    assert not l_reachability_check(spec_geq, encode_w((F(-1),)))
    two = concat(encode_w((F(1),)), encode_w((F(2),)))
    assert not l_reachability_check(spec_geq, two)


def test_stable_conjugate():
    w = encode_w((F(1), F(3)))
    assert stable_conjugate(GenSym("a", (F(2), F(5))), w) == encode_w((F(1), F(8)))
    assert stable_conjugate(GenSym("m", (F(1), F(1))), w) == w
    assert stable_conjugate(GenSym("a", (F(7), F(5))), w) == w
    assert stable_conjugate((GenSym("a", (F(2), F(5))), -1), w) \
        == encode_w((F(1), F(-2)))
    assert stable_conjugate(GenSym("m", (F(2), F(2))), w) == encode_w((F(1), F(6)))
    with pytest.raises(ZeroScale):
        stable_conjugate(GenSym("m", (F(1), F(0))), w)
    with pytest.raises(ValueError):
        stable_conjugate(GenSym("t"), w)


def test_v_membership():
    p = sign_path()
    full = path_extend(p, (F(2),))
    assert v_membership(p, full)
    assert not v_membership(p, (F(2), F(-1), F(0)))
    trivial = extract_path(run(halt_program(), (F(1),), 5).trace, 1)
    assert v_membership(trivial, (F(9),))
    with pytest.raises(ValueError):
        v_membership(p, (F(1),))


def test_u_membership():
    p = sign_path()
    assert u_membership(p, encode_w((F(2),)))
    assert not u_membership(p, encode_w((F(0),)))
    assert u_membership(p, EMPTY)
    both = concat(encode_w((F(2),)), invert(encode_w((F(3),))))
    assert u_membership(p, both)
    assert not u_membership(p, encode_w((F(2), F(2))))  # wrong dimension


def test_u_handle():
    uh = assemble_u(sign_program())
    assert uh.member_within(encode_w((F(2),)), 2000)
    assert not uh.member_within(encode_w((F(0),)), 2000)
    assert uh.member_within(EMPTY, 1)
    assert not uh.member_within(parse_word("x(1,1)"), 1000)


def test_u_handle_tagged():
    uh = assemble_u(sign_program())
    n = next(n for n in range(300)
             if (p := uh.enum.path(n)) is not None
             and p.d == 1 and p.guard_string == "1")
    assert uh.member_tagged(encode_w_tagged(n, (F(5),)))
    assert not uh.member_tagged(encode_w_tagged(n, (F(0),)))
    absent = next(n for n in range(300) if uh.enum.path(n) is None)
    assert not uh.member_tagged(encode_w_tagged(absent, (F(5),)))
    assert not uh.member_tagged(encode_w((F(5),)))  # untagged pattern


def test_reduce_halting_shapes():
    q, c = reduce_halting(sign_program(), (F(2),))
    assert q == encode_w((F(2),))
    assert len(c) == 8
    q0, c0 = reduce_halting(sign_program(), ())
    assert format_word(q0) == "y"
    assert len(c0) == 4


def test_check_reduction_sign():
    inputs = [(F(0),), (F(1, 2),), (F(1),), (F(2),), (F(100),)]
    report = check_reduction(sign_program(), inputs, 2000)
    assert all(r["agree"] for r in report)
    halting = [r["input"][0] for r in report if r["simulated"] == "halt"]
    assert halting == [F(1), F(2), F(100)]
    for r in report:
        if r["simulated"] == "halt":
            assert r["group"] == "member"


def test_check_reduction_trivial_cases():
    report = check_reduction(halt_program(), [(F(1),), (F(-5),)], 100)
    assert all(r["simulated"] == "halt" and r["group"] == "member" for r in report)
    report0 = check_reduction(sign_program(), [(F(2),)], 0)
    assert report0[0]["simulated"] == "inconclusive"
    assert report0[0]["group"] == "not-within-fuel"
    assert report0[0]["agree"] and not report0[0]["conclusive"]


def test_commutator_structure_matches_membership():
    uh = assemble_u(sign_program())
    struct = u_structure(uh, 2000)
    for x, expect in ((F(2), True), (F(1), True), (F(0), False), (F(-3), False)):
        _, comm = reduce_halting(sign_program(), (x,))
        assert hnn_is_identity(struct, comm) == expect


def test_constant_tracking():
    q, c = reduce_halting(sign_program(), (F(2), F(1, 3)))
    assert word_constants(c) == {F(1), F(2), F(1, 3)}
    p = sign_path()
    assert path_constants(p) == {F(-1)}


def test_pattern_group_presentation():
    g = pattern_group_presentation()
    assert check_generator(g, GenSym("x", (F(0), F(5))))
    assert check_generator(g, GenSym("y"))
    assert not check_generator(g, GenSym("x", (F(1, 2), F(5))))
    handles = GroupHandles(2)
    assert handles.in_low(GenSym("x", (F(2), F(5))))
    assert handles.in_low(GenSym("y"))
    assert not handles.in_low(GenSym("x", (F(3), F(5))))
    assert handles.in_high(GenSym("x", (F(3), F(5))))
    assert not handles.in_high(GenSym("y"))


def test_extension_presentation_realizes_action():
    ext = extension_presentation()
    rng = random.Random(40)
    shift_schema = next(s for s in ext.relators if s.label == "hnn-x"
                        and "a" in {t.family for t in s.template})
    for _ in range(50):
        i = F(rng.randint(1, 4))
        t = F(rng.randint(-5, 5), rng.randint(1, 3))
        s = F(rng.randint(-5, 5), rng.randint(1, 3))
        inst = shift_schema.instantiate((i, t, i, s))
        assert check_relator(ext, inst)
        # relator reads image . a . letter^-1 . a^-1 with image = the action
        x = Word.from_letters([(GenSym("x", (i, s)), 1)])
        image = stable_conjugate(GenSym("a", (i, t)), x)
        assert inst.letters[0] == image.letters[0]
    # scaling letters exclude the zero factor
    m_schema = next(s for s in ext.relators if s.label == "hnn-x"
                    and "m" in {t.family for t in s.template})
    assert not m_schema.admits((F(1), F(0), F(1), F(3)))
    assert m_schema.admits((F(1), F(2), F(1), F(3)))


def test_constant_free_program_emits_no_foreign_rationals():
    src = """\
1: add r0 r1 r2
2: brgeq 5
3: mul r0 r1 r1
4: brgeq 3
5: halt
"""
    prog = parse_program(src)
    assert not prog.constants
    uh = assemble_u(prog)
    vec = (F(7, 3),)
    q, c = reduce_halting(prog, vec)
    allowed = {F(7, 3), F(0), F(1)}
    assert word_constants(q) <= allowed
    assert word_constants(c) <= allowed
    for b in range(7):
        for path in uh.enum.block(b):
            assert path_constants(path) <= {F(0)}


def test_v_membership_of_extensions():
    # any input following a path has its full vector inside every row set
    from realword.programs import ALL_PROGRAMS
    rng = random.Random(41)
    for name, mk in ALL_PROGRAMS.items():
        prog = mult_guard_transform(mk())
        for _ in range(10):
            x = F(rng.randint(-6, 6), rng.randint(1, 3))
            res = run(prog, (x,), 4000)
            if not res.halted:
                continue
            p = extract_path(res.trace, 1)
            full = path_extend(p, (x,))
            assert full is not None
            assert v_membership(p, full), (name, x)
