import random
from fractions import Fraction as F

import pytest

from realword.words import (EMPTY, CapExceeded, GenSym, Word, concat,
                            encode_w, encode_w_tagged, format_word,
                            free_reduce, invert, nielsen_decompose,
                            parse_word, pattern_product, span_decide, word)


def rand_word(rng, gens, max_len=40):
    return Word.from_letters(
        (rng.choice(gens), rng.choice((1, -1))) for _ in range(rng.randint(0, max_len)))


GENS = [GenSym("x", (F(k),)) for k in range(1, 8)] + [GenSym("y")]


def test_free_reduce_examples():
    g = GenSym("x", (F(1), F(2)))
    assert free_reduce(word((g, 1), (g, -1))) == EMPTY
    w = word((g, 1), (GenSym("y"), 1))
    assert free_reduce(w) == w


def test_reduce_invert_property():
    rng = random.Random(2)
    for _ in range(1000):
        w = rand_word(rng, GENS)
        assert free_reduce(concat(w, invert(w))) == EMPTY
        assert free_reduce(concat(invert(w), w)) == EMPTY


def test_concat_identity_and_involution():
    rng = random.Random(3)
    for _ in range(200):
        w = rand_word(rng, GENS)
        assert concat(w, EMPTY) == free_reduce(w)
        r = free_reduce(w)
        assert invert(invert(r)) == r


def test_concat_associative():
    rng = random.Random(4)
    for _ in range(1000):
        u, v, z = (rand_word(rng, GENS, 15) for _ in range(3))
        assert concat(concat(u, v), z) == concat(u, concat(v, z))


def test_not_auto_reduced():
    g = GenSym("x", (F(1),))
    w = word((g, 1), (g, -1))
    assert len(w) == 2 and not w.is_reduced()


def test_parse_format_roundtrip():
    w = parse_word("x(1,5)^-1 . y . x(1,5)")
    assert format_word(w) == "x(1,5)^-1 . y . x(1,5)"
    assert parse_word(format_word(w)) == w
    assert parse_word("1") == EMPTY
    assert format_word(EMPTY) == "1"
    assert parse_word("x(-1/2)").letters[0][0].index == (F(-1, 2),)
    assert parse_word("x(1)^3") == parse_word("x(1) . x(1) . x(1)")
    assert parse_word("a^-2") == parse_word("a^-1 . a^-1")
    with pytest.raises(ValueError):
        parse_word("x(1)^z")
    with pytest.raises(ValueError):
        parse_word("x(1)^0")


def test_encode_w():
    assert encode_w(()) == word((GenSym("y"), 1))
    got = encode_w((F(5),))
    assert got == parse_word("x(1,5)^-1 . y . x(1,5)")
    assert len(encode_w((F(1), F(2)))) == 5
    tagged = encode_w_tagged(3, (F(5),))
    assert len(tagged) == 5
    assert tagged == parse_word("x(1,5)^-1 . x(0,3)^-1 . y . x(0,3) . x(1,5)")
    assert encode_w_tagged(0, ()) == parse_word("x(0,0)^-1 . y . x(0,0)")


def test_encode_w_reduced_by_construction():
    rng = random.Random(5)
    for _ in range(200):
        vec = tuple(F(rng.randint(-5, 5), rng.randint(1, 4))
                    for _ in range(rng.randint(0, 5)))
        w = encode_w(vec)
        assert w.is_reduced()
        assert len(w) == 2 * len(vec) + 1


def test_nielsen_decompose_examples():
    assert nielsen_decompose(encode_w((F(1), F(2)))) == [(1, (F(1), F(2)))]
    w = concat(encode_w((F(1),)), invert(encode_w((F(2),))))
    assert nielsen_decompose(w) == [(1, (F(1),)), (-1, (F(2),))]
    assert nielsen_decompose(parse_word("x(1,1)")) is None
    assert nielsen_decompose(EMPTY) == []
    assert nielsen_decompose(word((GenSym("y"), 1))) == [(1, ())]


def test_nielsen_decompose_junction_cancellation():
    # shared top coordinates cancel across the junction and must be recovered
    w = concat(encode_w((F(1), F(2))), invert(encode_w((F(5), F(2)))))
    assert nielsen_decompose(w) == [(1, (F(1), F(2))), (-1, (F(5), F(2)))]
    sq = concat(encode_w((F(3),)), encode_w((F(3),)))
    assert nielsen_decompose(sq) == [(1, (F(3),)), (1, (F(3),))]


def test_nielsen_freeness():
    rng = random.Random(6)
    for _ in range(500):
        d = rng.randint(1, 4)
        r = tuple(F(rng.randint(-6, 6), rng.randint(1, 4)) for _ in range(d))
        s = tuple(F(rng.randint(-6, 6), rng.randint(1, 4)) for _ in range(d))
        if r == s:
            continue
        assert free_reduce(concat(encode_w(r), invert(encode_w(s)))) != EMPTY


def test_decompose_roundtrip():
    rng = random.Random(7)
    done = 0
    while done < 1000:
        decomp = []
        for _ in range(rng.randint(1, 6)):
            exp = rng.choice((1, -1))
            vec = tuple(F(rng.randint(-4, 4), rng.randint(1, 3))
                        for _ in range(rng.randint(0, 3)))
            if decomp and decomp[-1] == (-exp, vec):
                continue
            decomp.append((exp, vec))
        w = pattern_product(decomp)
        got = nielsen_decompose(w)
        assert got is not None
        assert pattern_product(got) == w
        done += 1


def test_tagged_decompose():
    w = concat(encode_w_tagged(2, (F(1),)), encode_w_tagged(3, (F(1),)))
    got = nielsen_decompose(w, lo=0)
    assert got == [(1, (F(2), F(1))), (1, (F(3), F(1)))]
    assert pattern_product(got, lo=0) == w


def test_span_decide():
    is_pattern = lambda b: (dec := nielsen_decompose(b)) is not None \
        and len(dec) == 1 and dec[0][0] == 1
    assert span_decide(EMPTY, is_pattern)
    assert span_decide(encode_w((F(1, 2),)), is_pattern)
    assert not span_decide(parse_word("x(1,0)"), is_pattern)
    w = concat(encode_w((F(1),)), invert(encode_w((F(2), F(3)))))
    assert span_decide(w, is_pattern)
    with pytest.raises(CapExceeded):
        span_decide(encode_w(tuple(F(k) for k in range(13))), is_pattern,
                    max_letters=24)


def test_span_decide_blockwise_not_subgroup():
    # span membership is about string factorization: a product whose factors
    # cancelled across the junction no longer splits into full blocks
    is_pattern = lambda b: (dec := nielsen_decompose(b)) is not None \
        and len(dec) == 1 and dec[0][0] == 1
    w = concat(encode_w((F(1), F(2))), invert(encode_w((F(5), F(2)))))
    assert nielsen_decompose(w) is not None
    assert not span_decide(w, is_pattern)


def test_gensym_validation():
    with pytest.raises(ValueError):
        GenSym("q", ())
    with pytest.raises(ValueError):
        Word.from_letters([(GenSym("y"), 2)])


def test_letters_roundtrip():
    rng = random.Random(8)
    for _ in range(100):
        w = rand_word(rng, GENS, 12)
        assert Word.from_letters(w.letters) == w
