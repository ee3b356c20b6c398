"""realword: exact BSS-style machines over the rationals, free-group word
machinery with certified word-problem search, and the constructive reduction
from machine halting to word triviality."""

__version__ = "0.1.0"
