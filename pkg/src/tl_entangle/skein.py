"""Slice words: tangles as stacks of elementary slices.

A word starts from a fixed number of top endpoints and grows downward one
slice at a time: cup (insert an adjacent arc), cap (join two adjacent
strands), e (a cap-cup hook on two adjacent strands), over / under (a
crossing of two adjacent strands), jw (a projector across a run of strands).
Crossings are resolved immediately:

    over  = A * id + A^(-1) * e_i
    under = A^(-1) * id + A * e_i

so a fully expanded word is a combination of pair diagrams.  In permutation
mode both smoothings carry coefficient 1 and loops count -2, which is the
A = 1 specialization; connectivity is all that survives there.
"""

from __future__ import annotations

from fractions import Fraction

from .diagrams import PlanarDiagram, TLElement
from .jones_wenzl import jones_wenzl
from .scalars import LaurentPoly, d_param

MODES = ("kauffman", "permutation")


def loop_value(mode):
    if mode == "kauffman":
        return d_param()
    if mode == "permutation":
        return Fraction(-2)
    raise ValueError(f"unknown mode {mode!r}")


def cup_slice(width, i):
    """Map from width strands to width+2, inserting an arc at positions i, i+1."""
    if not 1 <= i <= width + 1:
        raise ValueError(f"cup position {i} out of range for width {width}")
    nb = width + 2
    pairs = []
    for j in range(1, width + 1):
        pos = j if j < i else j + 2
        pairs.append((j, width + nb + 1 - pos))
    pairs.append((width + nb - i, width + nb + 1 - i))
    return PlanarDiagram(width, nb, pairs)


def cap_slice(width, i):
    """Map from width strands to width-2, joining strands i and i+1."""
    if not 1 <= i <= width - 1:
        raise ValueError(f"cap position {i} out of range for width {width}")
    nb = width - 2
    pairs = [(i, i + 1)]
    for j in range(1, width + 1):
        if j in (i, i + 1):
            continue
        pos = j if j < i else j - 2
        pairs.append((j, width + nb + 1 - pos))
    return PlanarDiagram(width, nb, pairs)


def crossing_element(width, i, kind, mode="kauffman"):
    """Resolve one crossing of strands i, i+1 into a two-term combination."""
    ident = TLElement.from_diagram(PlanarDiagram.identity(width))
    hook = TLElement.from_diagram(PlanarDiagram.generator(width, i))
    if mode == "permutation":
        return ident + hook
    if kind == "over":
        return LaurentPoly.A_power(1) * ident + LaurentPoly.A_power(-1) * hook
    if kind == "under":
        return LaurentPoly.A_power(-1) * ident + LaurentPoly.A_power(1) * hook
    raise ValueError(f"unknown crossing kind {kind!r}")


class SliceWord:
    """A validated sequence of slices below n_top starting endpoints.

    ops is a tuple of (kind, position) or ("jw", position, width) entries.
    """

    __slots__ = ("n_top", "ops")

    def __init__(self, n_top, ops):
        if n_top < 0:
            raise ValueError("negative endpoint count")
        self.n_top = int(n_top)
        clean = []
        width = self.n_top
        for op in ops:
            kind = op[0]
            if kind == "cup":
                _, i = op
                if not 1 <= i <= width + 1:
                    raise ValueError(f"cup {i} invalid at width {width}")
                width += 2
            elif kind == "cap":
                _, i = op
                if not 1 <= i <= width - 1:
                    raise ValueError(f"cap {i} invalid at width {width}")
                width -= 2
            elif kind in ("over", "under", "e"):
                _, i = op
                if not 1 <= i <= width - 1:
                    raise ValueError(f"{kind} {i} invalid at width {width}")
            elif kind == "jw":
                _, i, k = op
                if k < 1 or not 1 <= i <= width - k + 1:
                    raise ValueError(f"jw {i} {k} invalid at width {width}")
            else:
                raise ValueError(f"unknown slice kind {kind!r}")
            clean.append(tuple(op))
        self.ops = tuple(clean)

    @property
    def final_width(self):
        width = self.n_top
        for op in self.ops:
            if op[0] == "cup":
                width += 2
            elif op[0] == "cap":
                width -= 2
        return width

    def is_closed(self):
        return self.n_top == 0 and self.final_width == 0

    def to_element(self, mode="kauffman"):
        """Expand the word into a combination of pair diagrams."""
        d = loop_value(mode)
        element = TLElement.from_diagram(PlanarDiagram.identity(self.n_top)
                                         if self.n_top else PlanarDiagram.empty())
        width = self.n_top
        for op in self.ops:
            kind = op[0]
            if kind == "cup":
                layer = TLElement.from_diagram(cup_slice(width, op[1]))
                width += 2
            elif kind == "cap":
                layer = TLElement.from_diagram(cap_slice(width, op[1]))
                width -= 2
            elif kind in ("over", "under"):
                layer = crossing_element(width, op[1], kind, mode)
            elif kind == "e":
                layer = TLElement.from_diagram(
                    PlanarDiagram.generator(width, op[1]))
            else:  # jw
                _, i, k = op
                layer = jones_wenzl(k)
                if i > 1:
                    layer = TLElement.from_diagram(PlanarDiagram.identity(i - 1)).tensor(layer)
                if i + k - 1 < width:
                    layer = layer.tensor(
                        TLElement.from_diagram(PlanarDiagram.identity(width - i - k + 1)))
            element = element.compose(layer, d)
        return element

    def __repr__(self):
        bits = " ".join("-".join(str(x) for x in op) for op in self.ops)
        return f"SliceWord(top {self.n_top}: {bits})"


def bracket(word, mode="kauffman"):
    """Scalar value of a closed slice word (loop-weighted smoothing sum)."""
    if not word.is_closed():
        raise ValueError("bracket needs a closed word (no open endpoints)")
    return word.to_element(mode).scalar()


def word_from_matching(pairs, n_points=None):
    """Cups-only slice word whose state diagram has the given label pairing.

    Labels are circular, so bottom column j carries label n_points + 1 - j;
    the pairing must be noncrossing in that ordering.
    """
    pairs = [tuple(sorted(p)) for p in pairs]
    if n_points is None:
        n_points = 2 * len(pairs)
    cols = sorted((n_points + 1 - b, n_points + 1 - a) for a, b in pairs)
    removals = []
    while cols:
        for idx, (a, b) in enumerate(cols):
            if b == a + 1:
                removals.append(a)
                del cols[idx]
                cols = [(x if x < a else x - 2, y if y < a else y - 2)
                        for x, y in cols]
                break
        else:
            raise ValueError("pairing is not noncrossing")
    return SliceWord(0, [("cup", i) for i in reversed(removals)])
