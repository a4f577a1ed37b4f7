"""Symbols, words, anchored windows, the dyadic metric, and pseudo-orbits.

Points of a shift space are never materialized.  Every operation works on
finite windows anchored at an integer base index, and every metric statement
``d(x, y) < 2**-k`` is replaced by its exact finite equivalent: agreement of
the windows on the index block of radius ``k`` around 0.  This keeps the
whole symbolic layer decidable and free of floating point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


class AlphabetMismatchError(ValueError):
    """Two values built over different alphabets were combined."""


@dataclass(frozen=True)
class Alphabet:
    """An ordered set of distinct display tokens; symbols are their indices."""

    tokens: tuple[str, ...]

    def __post_init__(self):
        if len(self.tokens) == 0:
            raise ValueError("alphabet must have at least one symbol")
        if len(set(self.tokens)) != len(self.tokens):
            raise ValueError("alphabet tokens must be pairwise distinct")
        if any(not tok for tok in self.tokens):
            raise ValueError("alphabet tokens must be nonempty strings")

    @property
    def size(self):
        return len(self.tokens)

    def index(self, token):
        try:
            return self.tokens.index(token)
        except ValueError:
            raise ValueError(f"token {token!r} not in alphabet {self.tokens}") from None

    def word(self, text):
        """Parse a word from a token string or a sequence of tokens/indices.

        A plain string is split character by character, which is exact when
        every token is a single character (all bundled alphabets are).
        """
        if isinstance(text, Word):
            if text.alphabet != self:
                raise AlphabetMismatchError("word belongs to a different alphabet")
            return text
        if isinstance(text, str):
            items = list(text)
        else:
            items = list(text)
        symbols = []
        for item in items:
            if isinstance(item, int):
                if not 0 <= item < self.size:
                    raise ValueError(f"symbol index {item} out of range")
                symbols.append(item)
            else:
                symbols.append(self.index(item))
        return Word(self, tuple(symbols))


def make_alphabet(tokens):
    return Alphabet(tuple(str(t) for t in tokens))


@dataclass(frozen=True)
class Word:
    """A finite block of symbols (indices into an alphabet)."""

    alphabet: Alphabet
    symbols: tuple[int, ...]

    def __post_init__(self):
        if any(not 0 <= s < self.alphabet.size for s in self.symbols):
            raise ValueError("word contains symbol indices outside the alphabet")

    def __len__(self):
        return len(self.symbols)

    def __getitem__(self, item):
        if isinstance(item, slice):
            return Word(self.alphabet, self.symbols[item])
        return self.symbols[item]

    def __add__(self, other):
        if not isinstance(other, Word):
            return NotImplemented
        if other.alphabet != self.alphabet:
            raise AlphabetMismatchError("cannot concatenate words over different alphabets")
        return Word(self.alphabet, self.symbols + other.symbols)

    @property
    def text(self):
        """Render the word; single-character alphabets concatenate bare."""
        toks = [self.alphabet.tokens[s] for s in self.symbols]
        if all(len(t) == 1 for t in self.alphabet.tokens):
            return "".join(toks)
        return " ".join(toks)

    def token_list(self):
        return [self.alphabet.tokens[s] for s in self.symbols]

    def __repr__(self):
        return f"Word({self.text!r})"


@dataclass(frozen=True)
class Window:
    """A word anchored in the integer line: symbol ``word[i - base]`` sits at index ``i``."""

    word: Word
    base: int

    @property
    def lo(self):
        return self.base

    @property
    def hi(self):
        """Largest covered index (inclusive); lo - 1 for the empty window."""
        return self.base + len(self.word) - 1

    def covers(self, i):
        return self.base <= i < self.base + len(self.word)

    def at(self, i):
        if not self.covers(i):
            raise IndexError(f"index {i} outside window [{self.lo}, {self.hi}]")
        return self.word.symbols[i - self.base]

    def segment(self, lo, hi):
        """The sub-word on the inclusive index block [lo, hi]."""
        if lo > hi:
            return Word(self.word.alphabet, ())
        if not (self.covers(lo) and self.covers(hi)):
            raise IndexError(f"block [{lo}, {hi}] not inside window [{self.lo}, {self.hi}]")
        return self.word[lo - self.base : hi - self.base + 1]

    def to_json(self):
        return {"base": self.base, "symbols": self.word.token_list()}

    def __repr__(self):
        return f"Window({self.word.text!r} @ {self.base})"


def shift_window(x, n):
    """Apply the shift map n times: the returned window reads index i as x read i + n."""
    return Window(x.word, x.base - n)


@dataclass(frozen=True)
class Agreement:
    """Result of a window comparison.

    ``radius`` is the largest certified r with agreement on the radius-r
    block around 0 (``-1`` when the windows differ at 0, ``math.inf`` only
    under optimistic comparison).  ``clamped`` records that the answer was
    limited by window coverage rather than by an actual mismatch, so the
    true radius of the underlying points may be larger.
    """

    radius: float
    clamped: bool


def _common_cover_radius(x, y, one_sided):
    if one_sided:
        return min(x.hi, y.hi)
    return min(x.hi, y.hi, -x.lo, -y.lo)


def agreement_radius(x, y, one_sided=False, optimistic=False):
    """Largest r such that x and y agree on the radius-r block around index 0.

    Both windows must cover index 0.  The block is ``[-r, r]`` for two-sided
    comparisons and ``[0, r]`` for one-sided ones (forward shifts).  When the
    windows agree on the whole block they jointly cover, the result is
    clamped at that coverage radius and flagged, or reported as unbounded
    when ``optimistic`` is set.  The derived metric relation
    ``d(x, y) < 2**-k`` holds exactly when the radius is >= k.
    """
    if x.word.alphabet != y.word.alphabet:
        raise AlphabetMismatchError("windows over different alphabets")
    if not (x.covers(0) and y.covers(0)):
        raise ValueError("agreement_radius requires both windows to cover index 0")
    cover = _common_cover_radius(x, y, one_sided)
    for r in range(cover + 1):
        offsets = (r,) if (one_sided or r == 0) else (-r, r)
        for o in offsets:
            if x.at(o) != y.at(o):
                return Agreement(radius=r - 1, clamped=False)
    if optimistic:
        return Agreement(radius=math.inf, clamped=True)
    return Agreement(radius=cover, clamped=True)


def agree_within(x, y, k, one_sided=False):
    """The exact finite form of d(x, y) < 2**-k."""
    return agreement_radius(x, y, one_sided=one_sided).radius >= k


class PseudoOrbitViolation(ValueError):
    """A pseudo-orbit check failed; ``report`` carries the structured reason."""

    def __init__(self, report):
        self.report = report
        super().__init__(report.get("reason", "invalid pseudo-orbit"))


@dataclass(frozen=True)
class PseudoOrbit:
    """A finite sequence of entry windows with a certified dyadic step bound.

    Entry ``i`` is the point x^i viewed in its own frame: on ``[-radius,
    radius]`` for two-sided orbits, ``[0, radius]`` for forward ones.
    Consecutive entries shift-agree at radius ``delta_exponent`` (the finite
    form of d(shift(x^i), x^{i+1}) < 2**-delta_exponent).
    """

    entries: tuple[Window, ...]
    delta_exponent: int
    radius: int
    base_index: int
    two_sided: bool

    @property
    def alphabet(self):
        return self.entries[0].word.alphabet

    @property
    def last_index(self):
        return self.base_index + len(self.entries) - 1

    def indices(self):
        return range(self.base_index, self.base_index + len(self.entries))

    def entry(self, i):
        if not self.base_index <= i <= self.last_index:
            raise IndexError(f"pseudo-orbit has no entry at index {i}")
        return self.entries[i - self.base_index]

    def to_json(self):
        return {
            "alphabet": list(self.alphabet.tokens),
            "delta_exponent": self.delta_exponent,
            "radius": self.radius,
            "base_index": self.base_index,
            "sided": "two" if self.two_sided else "forward",
            "entries": [e.word.token_list() for e in self.entries],
        }


def check_pseudo_orbit(entries, delta_exponent, presentation, base_index=0, two_sided=True):
    """Validate a sequence of centered windows as a 2**-K pseudo-orbit.

    Checks that every entry word is allowed in the presentation and that
    consecutive entries shift-agree at every offset in [-K, K] where both
    windows are defined.  Raises PseudoOrbitViolation with a structured
    report on the first failure; two-sided orbits whose consecutive overlap
    cannot be checked at all (radius < K) are rejected outright.
    """
    entries = tuple(entries)
    if not entries:
        raise PseudoOrbitViolation({"reason": "empty", "detail": "no entries"})
    K = delta_exponent
    if K < 0:
        raise PseudoOrbitViolation({"reason": "bad_delta", "detail": "delta exponent must be >= 0"})
    alphabet = presentation.alphabet
    expected_base = None
    radius = None
    for pos, w in enumerate(entries):
        if w.word.alphabet != alphabet:
            raise AlphabetMismatchError("entry alphabet differs from the presentation's")
        if radius is None:
            if two_sided:
                if len(w.word) % 2 == 0:
                    raise PseudoOrbitViolation(
                        {"reason": "bad_shape", "index": base_index + pos,
                         "detail": "two-sided entries need odd length 2R+1"})
                radius = (len(w.word) - 1) // 2
                expected_base = -radius
            else:
                radius = len(w.word) - 1
                expected_base = 0
        if w.base != expected_base or len(w.word) != len(entries[0].word):
            raise PseudoOrbitViolation(
                {"reason": "bad_shape", "index": base_index + pos,
                 "detail": f"entry must cover [{expected_base}, {expected_base + len(entries[0].word) - 1}]"})
    if radius < K:
        raise PseudoOrbitViolation(
            {"reason": "insufficient_radius", "radius": radius, "delta_exponent": K,
             "detail": "entry radius below the delta exponent; cannot certify the step bound"})
    for pos, w in enumerate(entries):
        if not presentation.is_allowed(w.word):
            raise PseudoOrbitViolation(
                {"reason": "entry_not_allowed", "index": base_index + pos,
                 "word": w.word.text})
    lo_off = -K if two_sided else 0
    for pos in range(len(entries) - 1):
        cur, nxt = entries[pos], entries[pos + 1]
        for j in range(lo_off, K + 1):
            if not (cur.covers(j + 1) and nxt.covers(j)):
                continue
            if cur.at(j + 1) != nxt.at(j):
                raise PseudoOrbitViolation(
                    {"reason": "step_mismatch", "index": base_index + pos, "offset": j,
                     "detail": "shifted entry disagrees with the next entry inside the delta block"})
    return PseudoOrbit(entries=entries, delta_exponent=K, radius=radius,
                       base_index=base_index, two_sided=two_sided)


def trace(po):
    """The center-symbol word of a pseudo-orbit, padded by the boundary entries.

    Index i of the result is x^i's center symbol inside the horizon; to the
    left and right of the horizon it continues with the first and last
    entry's own window.  The pseudo-orbit overlap invariant makes this
    consistent: the result agrees with every entry at radius delta_exponent.
    """
    first, last = po.entries[0], po.entries[-1]
    symbols = []
    if po.two_sided:
        base = po.base_index - po.radius
        symbols.extend(first.word.symbols[: po.radius])
    else:
        base = po.base_index
    symbols.extend(e.at(0) for e in po.entries)
    tail = last.word.symbols
    symbols.extend(tail[len(tail) - po.radius :])
    return Window(Word(po.alphabet, tuple(symbols)), base)
