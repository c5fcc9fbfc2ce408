"""The rank-one extended affine Weyl group and its word combinatorics.

Elements are triples (x, y, flip) with x, y integers: the diagonal part
records block valuations, and flip says whether the block-swapping finite
reflection is present.  The product twists the diagonal through the swap:

    (x, y, 1) . (x', y', v') = (x + x', y + y', v')
    (x, y, w) . (x', y', v') = (x + y', y + x', w v')

Generators of interest: the swap w, the translation t (which has flip on),
its conjugate w' = t w t^-1, and the diagonal elements delta(x, y).  Every
element has a canonical reduced word  t^alpha . letter_1 ... letter_a  with
letters alternating in {w, w'}; the length function counts letters only.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import TooShort


@dataclass(frozen=True, order=True)
class W:
    x: int
    y: int
    flip: bool

    def __mul__(self, other):
        if not isinstance(other, W):
            return NotImplemented
        if self.flip:
            return W(self.x + other.y, self.y + other.x, not other.flip)
        return W(self.x + other.x, self.y + other.y, other.flip)

    def inv(self):
        if self.flip:
            return W(-self.y, -self.x, True)
        return W(-self.x, -self.y, False)

    @property
    def grade(self):
        """Z/2 grading; equals the letter count mod 2."""
        return (self.x + self.y + (1 if self.flip else 0)) % 2

    def __repr__(self):
        return "W(%d,%d,%s)" % (self.x, self.y, "w" if self.flip else "1")


W_ID = W(0, 0, False)
W_W = W(0, 0, True)
W_T = W(0, 1, True)
W_TINV = W(-1, 0, True)
W_WP = W_T * W_W * W_TINV  # = W(-1, 1, True)

LETTER = {"w": W_W, "w'": W_WP}


def diag(x, y):
    return W(x, y, False)


def t_power(m):
    """The element t^m: central for even m, flip-carrying for odd m."""
    if m % 2 == 0:
        return W(m // 2, m // 2, False)
    return W((m - 1) // 2, (m + 1) // 2, True)


def prime_swap(letter):
    """Conjugation by t swaps the two letters: t w t^-1 = w'."""
    return "w'" if letter == "w" else "w"


def _diag_word(x, y):
    """Canonical word of delta(x, y) as (alpha, letters)."""
    d = y - x
    if d >= 0:
        if d % 2 == 0:
            letters = ("w'", "w") * (d // 2)
        else:
            letters = ("w",) + ("w'", "w") * ((d - 1) // 2)
    else:
        d = -d
        if d % 2 == 0:
            letters = ("w", "w'") * (d // 2)
        else:
            letters = ("w'", "w") * ((d - 1) // 2) + ("w'",)
    return x + y, letters


@lru_cache(maxsize=None)
def word_of(e):
    """Canonical reduced word (alpha, letters) with e = t^alpha . letters."""
    alpha, letters = _diag_word(e.x, e.y)
    if e.flip:
        if letters and letters[-1] == "w":
            letters = letters[:-1]
        else:
            letters = letters + ("w",)
    assert from_word(alpha, letters) == e, (e, alpha, letters)
    for a, b in zip(letters, letters[1:]):
        assert a != b, ("word not alternating", e, letters)
    return alpha, letters


def from_word(alpha, letters):
    e = t_power(alpha)
    for s in letters:
        e = e * LETTER[s]
    return e


def length(e):
    return len(word_of(e)[1])


def is_length_additive(a, b):
    return length(a) + length(b) == length(a * b)


def ends_on_w(e):
    _, letters = word_of(e)
    return bool(letters) and letters[-1] == "w"


def shape_class(e):
    """Which commutation pattern w . e^a falls into: A, B, C, D, or T.

    T is the pure odd translation t^{2x+1} (handled by length additivity,
    no commutation needed).  The square diagonal delta(x, x) sits in both
    the A and D patterns, whose formulas agree there; the square-with-flip
    t^{2x} w belongs to A (the letterwise patterns misfile it, but only A
    is consistent with the basic product [w][w] and centrality).
    """
    if not e.flip:
        if e.x < e.y:
            return "A"
        if e.x > e.y:
            return "D"
        return "A"
    if e.y == e.x + 1:
        return "T"
    if e.x < e.y:
        return "C"
    if e.x > e.y:
        return "B"
    return "A"


def left_factor(e):
    """Split e = e1 * e2 with e1 a diagonal of length 1 and lengths adding.

    Requires length(e) >= 2.  The first letter is absorbed into e1 along
    with most of the t-power; the five rows cover the parity and sign of
    alpha.  Postconditions are asserted.
    """
    alpha, letters = word_of(e)
    a = len(letters)
    if a < 2:
        raise TooShort("need length >= 2, got %d" % a)
    w1, rest = letters[0], letters[1:]
    if alpha % 2 != 0:
        e1 = from_word(alpha, (w1,))
        e2 = from_word(0, rest)
    elif alpha > 0:
        e1 = from_word(alpha - 1, (prime_swap(w1),))
        e2 = from_word(1, rest)
    elif alpha < 0:
        e1 = from_word(alpha + 1, (prime_swap(w1),))
        e2 = from_word(-1, rest)
    elif w1 == "w":
        e1 = from_word(-1, ("w'",))
        e2 = from_word(1, rest)
    else:
        e1 = from_word(1, ("w",))
        e2 = from_word(-1, rest)
    assert e1 * e2 == e
    assert not e1.flip and length(e1) == 1
    assert length(e2) == a - 1
    return e1, e2


def right_factor(e):
    """Split e = e2 * e1 with e1 a diagonal of length 1, lengths adding."""
    a1, a2 = left_factor(e.inv())
    e1, e2 = a1.inv(), a2.inv()
    assert e2 * e1 == e
    assert not e1.flip and length(e1) == 1
    return e2, e1


def elements_in_window(bound, with_flip=True):
    out = []
    for x in range(-bound, bound + 1):
        for y in range(-bound, bound + 1):
            out.append(W(x, y, False))
            if with_flip:
                out.append(W(x, y, True))
    return out


def render(e):
    alpha, letters = word_of(e)
    bits = []
    if alpha:
        bits.append("t" if alpha == 1 else "t^%d" % alpha)
    bits.extend(letters)
    return ".".join(bits) if bits else "1"
