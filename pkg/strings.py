#!/usr/bin/env python
# coding: utf-8

"""
Two-one index strings and their comma/plus composition strings.

A two-one string {2}^{s_1},1,...,{2}^{s_m},1 (optionally followed by a final
run {2}^{s_{m+1}}) is stored as its exponent tuple plus an ending flag. Each
1-terminated run contributes a block 2s_i+1 to p and s_i+1 to p~; a final run
of 2s contributes 2s_{m+1} and s_{m+1}. A composition string merges adjacent
blocks according to a plus/comma mask, the same mask for p and p~.
"""

import itertools
import re
from dataclasses import dataclass
from enum import Enum

import config


class InvalidIndexStringError(ValueError):
    """Raised for exponent data or text that is not a valid two-one string."""


class Ending(Enum):
    ONE = "one"
    TWO = "two"


@dataclass(frozen=True)
class IndexString:
    exponents: tuple
    ending: Ending

    def __post_init__(self):
        exponents = tuple(self.exponents)
        object.__setattr__(self, "exponents", exponents)
        if not isinstance(self.ending, Ending):
            raise InvalidIndexStringError(f"Unknown ending: {self.ending!r}")
        for value in exponents:
            if isinstance(value, bool) or not isinstance(value, int) or value < 0:
                raise InvalidIndexStringError(f"Exponents must be non-negative integers, got {exponents}")
        if not exponents:
            raise InvalidIndexStringError("A two-one string needs at least one block")
        if self.ending is Ending.TWO and exponents[-1] < 1:
            raise InvalidIndexStringError("A string ending with 2 needs a final run s_{m+1} >= 1")

    @property
    def ones(self):
        """m, the number of 1s in the string."""
        return len(self.exponents) if self.ending is Ending.ONE else len(self.exponents) - 1

    @property
    def weight(self):
        return 2 * sum(self.exponents) + self.ones

    def expanded(self):
        entries = []
        runs = self.exponents if self.ending is Ending.ONE else self.exponents[:-1]
        for run in runs:
            entries.extend([2] * run)
            entries.append(1)
        if self.ending is Ending.TWO:
            entries.extend([2] * self.exponents[-1])
        return tuple(entries)

    def to_text(self):
        return ",".join(str(entry) for entry in self.expanded())

    def to_dict(self):
        return {"exponents": list(self.exponents), "ending": self.ending.value, "string": self.to_text()}


@dataclass(frozen=True)
class CompositionString:
    p: tuple
    p_tilde: tuple
    mask: tuple

    @property
    def length(self):
        """l(p): number of commas plus one."""
        return len(self.p)

    @property
    def merge_counts(self):
        counts = [1]
        for bit in self.mask:
            if bit:
                counts[-1] += 1
            else:
                counts.append(1)
        return tuple(counts)

    @property
    def mask_text(self):
        return "".join(str(bit) for bit in self.mask)

    def to_dict(self):
        return {"mask": self.mask_text, "p": list(self.p), "p_tilde": list(self.p_tilde)}


def index_string(exponents, ending="one"):
    try:
        ending = ending if isinstance(ending, Ending) else Ending(str(ending).strip().lower())
    except ValueError as exc:
        raise InvalidIndexStringError(f"Ending must be 'one' or 'two', got {ending!r}") from exc
    return IndexString(tuple(exponents), ending)


def block_count(s):
    return len(s.exponents)


def _blocks(s):
    runs = s.exponents if s.ending is Ending.ONE else s.exponents[:-1]
    p_blocks = [2 * run + 1 for run in runs]
    tilde_blocks = [run + 1 for run in runs]
    if s.ending is Ending.TWO:
        p_blocks.append(2 * s.exponents[-1])
        tilde_blocks.append(s.exponents[-1])
    return p_blocks, tilde_blocks


def _merge(blocks, mask):
    merged = [blocks[0]]
    for bit, block in zip(mask, blocks[1:]):
        if bit:
            merged[-1] += block
        else:
            merged.append(block)
    return tuple(merged)


def enumerate_compositions(s, max_ones=None):
    """
    All 2^(B-1) composition strings of ``s``, masks in lexicographic order.

    Mask bit i is the separator between block i and block i+1 (1 = plus).
    The all-commas composition comes first.
    """
    if not isinstance(s, IndexString):
        raise InvalidIndexStringError(f"Expected an IndexString, got {s!r}")
    limit = config.MAX_ONES if max_ones is None else max_ones
    if s.ones > limit:
        raise InvalidIndexStringError(f"String has {s.ones} ones; the enumeration limit is {limit}")

    p_blocks, tilde_blocks = _blocks(s)
    compositions = []
    for mask in itertools.product((0, 1), repeat=len(p_blocks) - 1):
        compositions.append(
            CompositionString(_merge(p_blocks, mask), _merge(tilde_blocks, mask), mask)
        )
    return compositions


_TOKEN = re.compile(r"^[12]$")


def parse_two_one(text):
    """
    Parse the expanded surface form, e.g. "2,2,1,2,1" or "1,2".

    Returns None for the empty string. A trailing run of 2s makes the string
    end with 2.
    """
    text = (text or "").strip()
    if not text:
        return None
    tokens = [token.strip() for token in text.split(",")]
    for token in tokens:
        if not _TOKEN.match(token):
            raise InvalidIndexStringError(f"'{text}' is not a two-one string: bad token {token!r}")

    exponents = []
    run = 0
    for token in tokens:
        if token == "2":
            run += 1
        else:
            exponents.append(run)
            run = 0
    if run:
        return IndexString(tuple(exponents) + (run,), Ending.TWO)
    return IndexString(tuple(exponents), Ending.ONE)


def two_one_strings(ending, m_range, s_range):
    """
    Every two-one string with the given ending, number of ones in ``m_range``
    and exponent total in ``s_range`` (both inclusive (lo, hi) pairs).
    """
    ending = ending if isinstance(ending, Ending) else Ending(ending)
    m_lo, m_hi = m_range
    s_lo, s_hi = s_range
    strings = []
    for m in range(m_lo, m_hi + 1):
        blocks = m if ending is Ending.ONE else m + 1
        if blocks < 1:
            continue
        for exponents in itertools.product(range(s_hi + 1), repeat=blocks):
            total = sum(exponents)
            if not s_lo <= total <= s_hi:
                continue
            if ending is Ending.TWO and exponents[-1] < 1:
                continue
            strings.append(IndexString(exponents, ending))
    return strings
