"""Qudit state spaces on punctured disk boundaries and amplitude extraction.

A party of local dimension n occupies 4(n-1) consecutive boundary labels,
grouped into four punctures of n-1 points, each dressed with the width-(n-1)
projector.  The n non-null noncrossing pairings of those points form the local
basis; exact Gram-Schmidt over rational functions of A produces the lower
triangular transform to an orthonormal frame, with one square root per vector
taken at the evaluation point (sign fixed by the square part of the norm).
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .diagrams import PlanarDiagram, TLElement, conj_scalar
from .jones_wenzl import jones_wenzl
from .scalars import RationalFn, d_param, evaluate, sqrt_normalizer

_D = d_param()


def local_basis_matchings(n):
    """The n non-null noncrossing pairings of 4(n-1) points.

    Pairing j (0-based) sends j arcs from each outer puncture across the
    middle; j = 0 is fully nested within each half, j = n-1 fully across.
    Every arc joins two different punctures, so no pairing is killed by the
    projector dressing, and each pairing is symmetric under label reversal.
    """
    if n < 1:
        raise ValueError("local dimension must be at least 1")
    w = n - 1
    out = []
    for j in range(n):
        arcs = []
        for i in range(j + 1, w + 1):
            arcs.append((i, 2 * w + 1 - i))
            arcs.append((2 * w + i, 4 * w + 1 - i))
        for i in range(1, j + 1):
            arcs.append((i, 4 * w + 1 - i))
        for i in range(2 * w - j + 1, 2 * w + 1):
            arcs.append((i, 4 * w + 1 - i))
        out.append(tuple(sorted(tuple(sorted(a)) for a in arcs)))
    return out


class QuditSpace:
    """Local basis, Gram matrix, and orthonormalization data for one party."""

    def __init__(self, n):
        self.n = n
        self.width = n - 1
        self.n_points = 4 * self.width
        self.matchings = local_basis_matchings(n)
        self.basis = [TLElement.from_diagram(PlanarDiagram(0, self.n_points, m))
                      for m in self.matchings]
        self.dressed = [self._dress(b) for b in self.basis]
        self.gram = [[RationalFn.from_scalar(self.basis[i].inner(self.dressed[j], _D))
                      for j in range(n)] for i in range(n)]
        self._gs_coeffs, self.gs_norms_sq = self._orthogonalize()
        self._transform_cache = {}
        self._projector_cache = {}

    def _dress(self, state):
        w = self.width
        if w <= 1:
            return state
        proj = jones_wenzl(w)
        out = state
        for t in range(4):
            gate = _identity_element(t * w).tensor(proj)
            gate = gate.tensor(_identity_element((3 - t) * w))
            out = out.compose(gate, _D)
        return out

    def _orthogonalize(self):
        """Unnormalized Gram-Schmidt over rational functions of A.

        Returns (coeffs, norms_sq): row i of coeffs expresses the i-th
        orthogonal vector in the raw basis; norms_sq[i] is its squared norm.
        """
        n = self.n
        G = self.gram
        coeffs = [[RationalFn(1 if i == j else 0) for j in range(n)] for i in range(n)]
        norms_sq = []
        for i in range(n):
            for j in range(i):
                ov = RationalFn(0)
                for k in range(j + 1):
                    ov = ov + coeffs[j][k].bar() * G[k][i]
                f = ov / norms_sq[j]
                for k in range(j + 1):
                    coeffs[i][k] = coeffs[i][k] - f * coeffs[j][k]
            nu = RationalFn(0)
            for a in range(i + 1):
                for b in range(i + 1):
                    nu = nu + coeffs[i][a].bar() * G[a][b] * coeffs[i][b]
            if nu.is_zero():
                raise ValueError(f"basis vector {i} has identically zero norm")
            norms_sq.append(nu)
        return coeffs, norms_sq

    def ortho_transform(self, point):
        """Lower triangular T with orthonormal vectors u_i = sum_j T[i,j] b_j."""
        if point in self._transform_cache:
            return self._transform_cache[point]
        n = self.n
        T = np.zeros((n, n), dtype=complex)
        for i in range(n):
            nrm = sqrt_normalizer(self.gs_norms_sq[i], point)
            for j in range(i + 1):
                T[i, j] = complex(evaluate(self._gs_coeffs[i][j], point)) / nrm
        self._transform_cache[point] = T
        return T

    def gram_numeric(self, point):
        n = self.n
        return np.array([[complex(evaluate(self.gram[i][j], point))
                          for j in range(n)] for i in range(n)])

    def projector_element(self, point):
        """Numeric resolution of identity on the local span, as a 4w -> 4w map.

        Composing a state with this element from below replaces it by its
        orthogonal projection onto the dressed local basis span.
        """
        if point in self._projector_cache:
            return self._projector_cache[point]
        ginv = np.linalg.inv(self.gram_numeric(point))
        dressed_num = [v.evaluate(point) for v in self.dressed]
        out = TLElement.zero()
        for a in range(self.n):
            for b in range(self.n):
                op = dressed_num[b].adjoint().tensor(dressed_num[a])
                out = out + complex(ginv[a, b]) * op
        self._projector_cache[point] = out
        return out


@lru_cache(maxsize=None)
def qudit_space(n):
    return QuditSpace(n)


def _identity_element(k):
    return TLElement.from_diagram(PlanarDiagram.identity(k))


class PartyLayout:
    """Named parties in boundary order, each covering 4(dim-1) labels."""

    def __init__(self, parties):
        parties = tuple((str(name), int(n)) for name, n in parties)
        names = [nm for nm, _ in parties]
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate party names in {names}")
        if any(n < 1 for _, n in parties):
            raise ValueError("party dimensions must be at least 1")
        self.parties = parties
        offs = []
        off = 0
        for _, n in parties:
            offs.append(off)
            off += 4 * (n - 1)
        self.offsets = tuple(offs)
        self.n_points = off

    @classmethod
    def qubits(cls, *names):
        return cls(tuple((nm, 2) for nm in names))

    @property
    def names(self):
        return tuple(nm for nm, _ in self.parties)

    @property
    def dims(self):
        return tuple(n for _, n in self.parties)

    def index(self, name):
        for k, (nm, _) in enumerate(self.parties):
            if nm == name:
                return k
        raise KeyError(f"no party named {name!r}")

    def block(self, name):
        k = self.index(name)
        return range(self.offsets[k] + 1, self.offsets[k] + 4 * (self.dims[k] - 1) + 1)

    def __repr__(self):
        inner = ", ".join(f"{nm}:{n}" for nm, n in self.parties)
        return f"PartyLayout({inner})"

    def __eq__(self, other):
        return isinstance(other, PartyLayout) and self.parties == other.parties

    def __hash__(self):
        return hash(self.parties)


def tuple_basis_diagram(layout, indices):
    """Product of local basis pairings, offset into each party's label block."""
    if len(indices) != len(layout.parties):
        raise ValueError("one basis index per party required")
    arcs = []
    for k, (_, nk) in enumerate(layout.parties):
        o = layout.offsets[k]
        if not 0 <= indices[k] < nk:
            raise ValueError(f"basis index {indices[k]} out of range for dimension {nk}")
        arcs += [(a + o, b + o) for a, b in qudit_space(nk).matchings[indices[k]]]
    return PlanarDiagram(0, layout.n_points, arcs)


class DiagramState:
    """A boundary pairing state together with its party layout."""

    def __init__(self, element, layout):
        if isinstance(element, PlanarDiagram):
            element = TLElement.from_diagram(element)
        shape = element.shape()
        if shape is not None and shape != (0, layout.n_points):
            raise ValueError(f"element shape {shape} does not match layout "
                             f"with {layout.n_points} bottom points")
        self.element = element
        self.layout = layout

    def norm_sq(self, point):
        """Raw pairing of the diagram with itself (no projection)."""
        el = self.element.evaluate(point)
        return el.inner(el, complex(point.d))

    def dressed_numeric(self, point):
        """The state with every puncture of every party projector-dressed."""
        el = self.element.evaluate(point)
        dval = complex(point.d)
        N = self.layout.n_points
        for k, (_, nk) in enumerate(self.layout.parties):
            w = nk - 1
            if w < 2:
                continue
            o = self.layout.offsets[k]
            proj = jones_wenzl(w).evaluate(point)
            for t in range(4):
                # party labels o+tw+1 .. o+(t+1)w sit at bottom positions
                # N-o-(t+1)w+1 .. N-o-tw (labels run right to left)
                a = N - o - (t + 1) * w
                gate = _identity_element(a).tensor(proj)
                gate = gate.tensor(_identity_element(N - a - w))
                el = el.compose(gate, dval)
        return el

    def raw_overlaps(self, point):
        """Tensor of pairings of the dressed state with tuple basis pairings."""
        dval = complex(point.d)
        dressed = self.dressed_numeric(point)
        dims = self.layout.dims
        M = np.zeros(dims, dtype=complex)
        for idx in np.ndindex(*dims):
            b = TLElement.from_diagram(tuple_basis_diagram(self.layout, idx))
            M[idx] = b.inner(dressed, dval)
        return M

    def amplitudes(self, point):
        """Amplitude tensor in the orthonormal local frames, one axis per party."""
        amp = self.raw_overlaps(point)
        for k, (_, nk) in enumerate(self.layout.parties):
            T = qudit_space(nk).ortho_transform(point)
            amp = np.moveaxis(np.tensordot(np.conj(T), amp, axes=(1, k)), 0, k)
        return amp

    def projected_norm_sq(self, point):
        amp = self.amplitudes(point)
        return float(np.sum(np.abs(amp) ** 2))

    def __repr__(self):
        return f"DiagramState({self.element!r}, {self.layout!r})"


def reduced_diagram(n, j):
    """Two-party qudit diagram with j+1 strand groups crossing the middle.

    The lower half of each party is joined straight across; the upper halves
    carry the arcs of local basis pairing j, with its across arcs turned into
    lines between the parties.  The resulting states have Schmidt rank j+1.
    """
    if not 0 <= j < n:
        raise ValueError(f"diagram index {j} out of range for dimension {n}")
    w = n - 1
    arcs = [(i, 8 * w + 1 - i) for i in range(1, 2 * w + 1)]
    for p, q in local_basis_matchings(n)[j]:
        if p > 2 * w:
            arcs.append((p, q))
        elif q <= 2 * w:
            arcs.append((p + 4 * w, q + 4 * w))
        else:
            arcs.append((q, p + 4 * w))
    layout = PartyLayout((("L", n), ("R", n)))
    return DiagramState(PlanarDiagram(0, 8 * w, arcs), layout)


def crossed_triple_residual(dval):
    """Squared norm of the third orthogonalized 4-point pairing at loop value d.

    The three pairings of 4 points (two noncrossing plus the crossed one) are
    orthogonalized in order; the returned residual vanishes exactly at d = -2,
    where the crossed pairing becomes linearly dependent on the other two.
    """
    pairings = [((1, 2), (3, 4)), ((1, 4), (2, 3)), ((1, 3), (2, 4))]
    els = [TLElement.from_diagram(PlanarDiagram(0, 4, m)) for m in pairings]
    G = np.array([[complex(els[i].inner(els[j], dval)) for j in range(3)]
                  for i in range(3)])
    C = np.eye(3, dtype=complex)
    nus = []
    for i in range(3):
        for j in range(i):
            ov = np.conj(C[j]) @ G @ C[i]
            C[i] = C[i] - (ov / nus[j]) * C[j]
        nus.append(np.conj(C[i]) @ G @ C[i])
    return nus[2]
