"""Boundary-pairing diagrams and their formal linear combinations.

A diagram is a perfect matching of boundary points on a disk.  Points are
labeled circularly: top points 1..n_top left to right, then bottom points
n_top+1..n_top+n_bottom right to left, so that walking 1, 2, ..., N goes once
around the boundary.  Strand crossings never appear here; crossings live one
level up and are resolved into combinations of these matchings.  Matchings
with crossing pairs are still representable (they occur in the loop-counting
model where only connectivity matters).
"""

from __future__ import annotations

from fractions import Fraction

from .scalars import LaurentPoly, RationalFn


class PlanarDiagram:
    """Perfect matching of n_top + n_bottom circularly labeled points."""

    __slots__ = ("n_top", "n_bottom", "pairs")

    def __init__(self, n_top, n_bottom, pairs):
        n = n_top + n_bottom
        norm = tuple(sorted((a, b) if a < b else (b, a) for a, b in pairs))
        seen = [p for ab in norm for p in ab]
        if sorted(seen) != list(range(1, n + 1)):
            raise ValueError(f"pairs {norm} do not form a perfect matching of 1..{n}")
        self.n_top = n_top
        self.n_bottom = n_bottom
        self.pairs = norm

    # -- point labeling helpers ------------------------------------------

    def top_label(self, j):
        """Label of the top point at left-to-right position j (1-based)."""
        return j

    def bottom_label(self, j):
        """Label of the bottom point at left-to-right position j (1-based)."""
        return self.n_top + self.n_bottom + 1 - j

    @property
    def n_points(self):
        return self.n_top + self.n_bottom

    def partner(self, p):
        for a, b in self.pairs:
            if a == p:
                return b
            if b == p:
                return a
        raise KeyError(p)

    # -- constructors -----------------------------------------------------

    @classmethod
    def identity(cls, n):
        return cls(n, n, [(i, 2 * n + 1 - i) for i in range(1, n + 1)])

    @classmethod
    def generator(cls, n, i):
        """The cup-cap element e_i in the n-strand algebra (1 <= i < n)."""
        if not 1 <= i < n:
            raise ValueError(f"generator index {i} out of range for {n} strands")
        pairs = [(i, i + 1), (2 * n - i, 2 * n + 1 - i)]
        for j in range(1, n + 1):
            if j not in (i, i + 1):
                pairs.append((j, 2 * n + 1 - j))
        return cls(n, n, pairs)

    @classmethod
    def cups(cls, n):
        """State with n bottom points joined in adjacent pairs (n even)."""
        if n % 2:
            raise ValueError("cups need an even number of points")
        return cls(0, n, [(2 * i - 1, 2 * i) for i in range(1, n // 2 + 1)])

    @classmethod
    def caps(cls, n):
        return cls.cups(n).adjoint()

    @classmethod
    def empty(cls):
        return cls(0, 0, ())

    # -- structure --------------------------------------------------------

    def is_noncrossing(self):
        for i, (a, b) in enumerate(self.pairs):
            for c, d in self.pairs[i + 1:]:
                if a < c < b < d or c < a < d < b:
                    return False
        return True

    def __eq__(self, other):
        return (isinstance(other, PlanarDiagram)
                and self.n_top == other.n_top
                and self.n_bottom == other.n_bottom
                and self.pairs == other.pairs)

    def __hash__(self):
        return hash((self.n_top, self.n_bottom, self.pairs))

    def __repr__(self):
        return f"PlanarDiagram({self.n_top}, {self.n_bottom}, {list(self.pairs)})"

    # -- operations -------------------------------------------------------

    def adjoint(self):
        """Vertical flip (top and bottom exchanged, left-right kept)."""
        nt, nb = self.n_bottom, self.n_top

        def remap(p):
            if p <= self.n_top:
                # top position p -> new bottom position p
                return nt + nb + 1 - p
            # bottom R->L position i = p - n_top -> new top R->L position i
            i = p - self.n_top
            return nt + 1 - i

        return PlanarDiagram(nt, nb, [(remap(a), remap(b)) for a, b in self.pairs])

    def tensor(self, other):
        """Place other to the right of self."""
        nt = self.n_top + other.n_top
        nb = self.n_bottom + other.n_bottom

        def remap_self(p):
            if p <= self.n_top:
                return p
            return p + other.n_top + other.n_bottom

        pairs = [(remap_self(a), remap_self(b)) for a, b in self.pairs]
        pairs += [(a + self.n_top, b + self.n_top) for a, b in other.pairs]
        return PlanarDiagram(nt, nb, pairs)

    def compose_with(self, lower):
        """Stack self on top of lower, gluing self's bottom to lower's top.

        Returns (diagram, n_loops)."""
        m = self.n_bottom
        if lower.n_top != m:
            raise ValueError(f"cannot glue {m} bottom points to {lower.n_top} top points")
        pair_u = {}
        for a, b in self.pairs:
            pair_u[("u", a)] = ("u", b)
            pair_u[("u", b)] = ("u", a)
        for a, b in lower.pairs:
            pair_u[("l", a)] = ("l", b)
            pair_u[("l", b)] = ("l", a)
        glue = {}
        for j in range(1, m + 1):
            un = ("u", self.bottom_label(j))
            ln = ("l", j)
            glue[un] = ln
            glue[ln] = un

        new_nt, new_nb = self.n_top, lower.n_bottom

        def boundary_new_label(node):
            side, p = node
            if side == "u" and p <= self.n_top:
                return p
            if side == "l" and p > lower.n_top:
                # lower bottom L->R position j keeps its position in the result
                j = lower.n_top + lower.n_bottom + 1 - p
                return new_nt + new_nb + 1 - j
            return None

        boundary = [n for n in pair_u if boundary_new_label(n) is not None]
        new_pairs = []
        seen = set()
        for start in boundary:
            if start in seen:
                continue
            seen.add(start)
            cur = pair_u[start]
            while boundary_new_label(cur) is None:
                seen.add(cur)
                mate = glue[cur]
                seen.add(mate)
                cur = pair_u[mate]
            seen.add(cur)
            new_pairs.append((boundary_new_label(start), boundary_new_label(cur)))
        # remaining interior nodes form closed loops alternating pair and glue edges
        loops = 0
        for node in pair_u:
            if node in seen:
                continue
            loops += 1
            cur = node
            while cur not in seen:
                seen.add(cur)
                nxt = pair_u[cur]
                seen.add(nxt)
                cur = glue[nxt]
        return PlanarDiagram(new_nt, new_nb, new_pairs), loops


def noncrossing_matchings(labels):
    """All non-crossing perfect matchings of circularly ordered labels."""
    labels = list(labels)
    if len(labels) % 2:
        raise ValueError("odd number of points has no perfect matching")
    if not labels:
        return [()]
    out = []
    first = labels[0]
    for idx in range(1, len(labels), 2):
        mate = labels[idx]
        inner = noncrossing_matchings(labels[1:idx])
        outer = noncrossing_matchings(labels[idx + 1:])
        for lm in inner:
            for rm in outer:
                out.append(((first, mate),) + lm + rm)
    return out


def all_matchings(labels):
    """All perfect matchings (crossings allowed, connectivity only)."""
    labels = list(labels)
    if len(labels) % 2:
        raise ValueError("odd number of points has no perfect matching")
    if not labels:
        return [()]
    out = []
    first = labels[0]
    for idx in range(1, len(labels)):
        rest = labels[1:idx] + labels[idx + 1:]
        for m in all_matchings(rest):
            out.append(((first, labels[idx]),) + m)
    return out


def tl_basis(n_top, n_bottom):
    """Diagram basis of maps from n_bottom to n_top points (Catalan many)."""
    return [PlanarDiagram(n_top, n_bottom, m)
            for m in noncrossing_matchings(range(1, n_top + n_bottom + 1))]


def conj_scalar(c):
    if isinstance(c, (LaurentPoly, RationalFn)):
        return c.bar()
    if isinstance(c, complex):
        return c.conjugate()
    return c


def _is_zero(c):
    if isinstance(c, (LaurentPoly, RationalFn)):
        return c.is_zero()
    return c == 0


class TLElement:
    """Formal linear combination of diagrams with a common boundary shape.

    Coefficients may be exact (LaurentPoly / RationalFn / Fraction) or numeric
    (complex); operations that close loops take the loop value d explicitly so
    the same element type serves both modes.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        for diag, c in (terms or {}).items():
            if not _is_zero(c):
                self.terms[diag] = c
        shapes = {(dg.n_top, dg.n_bottom) for dg in self.terms}
        if len(shapes) > 1:
            raise ValueError(f"mixed boundary shapes {shapes}")

    @classmethod
    def from_diagram(cls, diag, coeff=1):
        return cls({diag: coeff})

    @classmethod
    def zero(cls):
        return cls()

    def is_zero(self):
        return not self.terms

    def shape(self):
        for dg in self.terms:
            return dg.n_top, dg.n_bottom
        return None

    def __add__(self, other):
        if not isinstance(other, TLElement):
            return NotImplemented
        out = dict(self.terms)
        for dg, c in other.terms.items():
            s = out.get(dg, 0) + c
            if _is_zero(s):
                out.pop(dg, None)
            else:
                out[dg] = s
        return TLElement(out)

    def __sub__(self, other):
        return self + (-1) * other

    def __neg__(self):
        return (-1) * self

    def __rmul__(self, scalar):
        return TLElement({dg: scalar * c for dg, c in self.terms.items()})

    def __mul__(self, scalar):
        return TLElement({dg: c * scalar for dg, c in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, TLElement):
            return NotImplemented
        return (self - other).is_zero()

    def __repr__(self):
        if not self.terms:
            return "TLElement(0)"
        bits = [f"({c!r})*{dg!r}" for dg, c in self.terms.items()]
        return " + ".join(bits)

    def map_coefficients(self, f):
        return TLElement({dg: f(c) for dg, c in self.terms.items()})

    def adjoint(self):
        return TLElement({dg.adjoint(): conj_scalar(c) for dg, c in self.terms.items()})

    def tensor(self, other):
        out = {}
        for d1, c1 in self.terms.items():
            for d2, c2 in other.terms.items():
                dg = d1.tensor(d2)
                s = out.get(dg, 0) + c1 * c2
                if _is_zero(s):
                    out.pop(dg, None)
                else:
                    out[dg] = s
        return TLElement(out)

    def compose(self, lower, d):
        """self stacked on top of lower; each closed loop contributes d."""
        out = {}
        for d1, c1 in self.terms.items():
            for d2, c2 in lower.terms.items():
                dg, loops = d1.compose_with(d2)
                c = c1 * c2
                for _ in range(loops):
                    c = c * d
                s = out.get(dg, 0) + c
                if _is_zero(s):
                    out.pop(dg, None)
                else:
                    out[dg] = s
        return TLElement(out)

    def scalar(self):
        """Coefficient of the empty diagram (element must be fully closed)."""
        if not self.terms:
            return 0
        shape = self.shape()
        if shape != (0, 0):
            raise ValueError(f"element with boundary {shape} is not a scalar")
        return self.terms.get(PlanarDiagram.empty(), 0)

    def inner(self, other, d):
        """Hermitian pairing <self|other> of two states (conjugate linear on self)."""
        return other.compose(self.adjoint(), d).scalar()

    def norm_sq(self, d):
        return self.inner(self, d)

    def evaluate(self, point, tol=1e-12):
        from .scalars import evaluate as _ev
        out = {}
        for dg, c in self.terms.items():
            val = _ev(c, point, tol=tol) if not isinstance(c, complex) else c
            if val != 0:
                out[dg] = out.get(dg, 0j) + val
        return TLElement(out)


def close_trace(element, d):
    """Markov trace closure: join each top point to the bottom point below it."""
    shape = element.shape()
    if shape is None:
        return 0
    nt, nb = shape
    if nt != nb:
        raise ValueError("trace closure needs equal top and bottom point counts")
    total = 0
    for dg, c in element.terms.items():
        pair = {a: b for a, b in dg.pairs}
        pair.update({b: a for a, b in dg.pairs})
        closure = {}
        for j in range(1, nt + 1):
            closure[j] = dg.bottom_label(j)
            closure[dg.bottom_label(j)] = j
        visited = set()
        loops = 0
        for p in range(1, 2 * nt + 1):
            if p in visited:
                continue
            loops += 1
            cur = p
            while cur not in visited:
                visited.add(cur)
                nxt = pair[cur]
                visited.add(nxt)
                cur = closure[nxt]
        term = c
        for _ in range(loops):
            term = term * d
        total = total + term
    return total


def glue_network(tiles, bonds, d):
    """Contract a closed network of state tiles into a scalar.

    tiles: list of TLElement states (n_top = 0).
    bonds: list of ((tile_index, point_label), (tile_index, point_label));
           every boundary point of every tile must appear in exactly one bond.
    Each closed loop of strands contributes a factor d.

    Tiles are processed in order, keeping a frontier of partially connected
    bonds, so the cost is driven by frontier width rather than by the product
    of term counts.
    """
    point_bond = {}
    for b, (end1, end2) in enumerate(bonds):
        for end in (end1, end2):
            if end in point_bond:
                raise ValueError(f"point {end} appears in two bonds")
            point_bond[end] = b
    for t, tile in enumerate(tiles):
        shape = tile.shape()
        if shape is None:
            return 0
        if shape[0] != 0:
            raise ValueError("glue_network tiles must be states (no top points)")
        for p in range(1, shape[1] + 1):
            if (t, p) not in point_bond:
                raise ValueError(f"unbonded point ({t}, {p})")

    # states: frozenset of frozenset({bond, bond}) partial pairings -> coefficient
    states = {frozenset(): 1}
    for t, tile in enumerate(tiles):
        new_states = {}
        for diag, dcoeff in tile.terms.items():
            tile_edges = [(point_bond[(t, a)], point_bond[(t, b)]) for a, b in diag.pairs]
            for state, scoeff in states.items():
                adj = {}
                for pr in state:
                    x, y = tuple(pr) if len(pr) == 2 else (next(iter(pr)), next(iter(pr)))
                    adj.setdefault(x, []).append(y)
                    adj.setdefault(y, []).append(x)
                loops = 0
                for x, y in tile_edges:
                    if x == y:
                        # both endpoints of one bond joined by a single arc
                        loops += 1
                        continue
                    adj.setdefault(x, []).append(y)
                    adj.setdefault(y, []).append(x)
                endpoints = [n for n, nb_ in adj.items() if len(nb_) == 1]
                visited = set()
                new_pairs = []
                for start in endpoints:
                    if start in visited:
                        continue
                    visited.add(start)
                    prev, cur = start, adj[start][0]
                    while len(adj[cur]) == 2:
                        nxt = adj[cur][0] if adj[cur][0] != prev else adj[cur][1]
                        visited.add(cur)
                        prev, cur = cur, nxt
                    visited.add(cur)
                    new_pairs.append(frozenset((start, cur)))
                for n in adj:
                    if n in visited:
                        continue
                    loops += 1
                    prev, cur = n, adj[n][0]
                    visited.add(n)
                    while cur != n:
                        visited.add(cur)
                        nxt = adj[cur][0] if adj[cur][0] != prev else adj[cur][1]
                        prev, cur = cur, nxt
                c = scoeff * dcoeff
                for _ in range(loops):
                    c = c * d
                key = frozenset(new_pairs)
                s = new_states.get(key, 0) + c
                if _is_zero(s):
                    new_states.pop(key, None)
                else:
                    new_states[key] = s
        states = new_states
    return states.get(frozenset(), 0)
