"""Differential tests: compiled kernel vs pure-Python fallback."""

import random

import pytest

from realword import _kernel_py

try:
    from realword import _kernel
except ImportError:
    _kernel = None

needs_ext = pytest.mark.skipif(_kernel is None, reason="compiled kernel not built")


def rand_ids(rng, n):
    return tuple(rng.choice((1, -1)) * rng.randint(1, 9) for _ in range(n))


@needs_ext
def test_reduce_matches_fallback():
    rng = random.Random(10)
    for _ in range(3000):
        ids = rand_ids(rng, rng.randint(0, 60))
        assert _kernel.reduce_ids(ids) == _kernel_py.reduce_ids(ids)


@needs_ext
def test_concat_matches_fallback():
    rng = random.Random(11)
    for _ in range(3000):
        a = _kernel_py.reduce_ids(rand_ids(rng, rng.randint(0, 30)))
        b = _kernel_py.reduce_ids(rand_ids(rng, rng.randint(0, 30)))
        assert _kernel.concat_ids(a, b) == _kernel_py.concat_ids(a, b)


@needs_ext
def test_invert_matches_fallback():
    rng = random.Random(12)
    for _ in range(1000):
        ids = rand_ids(rng, rng.randint(0, 40))
        assert _kernel.invert_ids(ids) == _kernel_py.invert_ids(ids)


def test_fallback_reduce_is_stack_scan():
    assert _kernel_py.reduce_ids((1, -1)) == ()
    assert _kernel_py.reduce_ids((1, 2, -2, -1, 3)) == (3,)
    assert _kernel_py.concat_ids((1, 2), (-2, 5)) == (1, 5)
    assert _kernel_py.invert_ids((1, -2)) == (2, -1)


def test_words_module_selected_a_kernel():
    from realword.words import KERNEL
    assert KERNEL in ("compiled", "pure-python")
