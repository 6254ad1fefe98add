"""Entanglement measures and SLOCC classification on amplitude tensors.

Tensors carry one axis per party (axis order = party order of the layout that
produced them).  Everything here normalizes internally, so raw diagram
normalizations only matter for amplitude output, never for the measures.
"""

from __future__ import annotations

import numpy as np

from .diagrams import PlanarDiagram, TLElement, conj_scalar, glue_network
from .spaces import qudit_space


def _normalized(t):
    t = np.asarray(t, dtype=complex)
    nrm = np.linalg.norm(t)
    if nrm == 0:
        raise ValueError("zero tensor has no entanglement data")
    return t / nrm


def reduced_density(t, keep=(0,)):
    """Density matrix of the kept parties, traced over the rest."""
    t = _normalized(t)
    keep = tuple(keep)
    rest = [a for a in range(t.ndim) if a not in keep]
    tt = np.transpose(t, list(keep) + rest)
    dk = int(np.prod([t.shape[a] for a in keep], dtype=np.int64)) if keep else 1
    tt = tt.reshape(dk, -1)
    return tt @ tt.conj().T


def schmidt_rank(t, keep=None, tol=1e-9):
    """Rank across a bipartition (or of a plain matrix) at relative tolerance."""
    t = np.asarray(t, dtype=complex)
    if keep is None:
        if t.ndim != 2:
            raise ValueError("schmidt_rank needs a bipartition for tensors")
        m = t
    else:
        keep = tuple(keep)
        rest = [a for a in range(t.ndim) if a not in keep]
        dk = int(np.prod([t.shape[a] for a in keep], dtype=np.int64))
        m = np.transpose(t, list(keep) + rest).reshape(dk, -1)
    sv = np.linalg.svd(m, compute_uv=False)
    if sv.size == 0 or sv[0] == 0:
        return 0
    return int(np.sum(sv > tol * sv[0]))


def von_neumann_entropy(rho):
    """Entropy in nats of a density matrix (normalized to unit trace first)."""
    rho = np.asarray(rho, dtype=complex)
    tr = np.trace(rho).real
    if tr <= 0:
        raise ValueError("density matrix with nonpositive trace")
    ev = np.linalg.eigvalsh(rho / tr)
    ev = ev[ev > 1e-14]
    return float(-(ev * np.log(ev)).sum())


def entanglement_entropy(t, keep=(0,)):
    return von_neumann_entropy(reduced_density(t, keep))


def trace_power(t, n, keep=(0,)):
    """Tr rho^n of the reduced density matrix, from the amplitude tensor."""
    ev = np.linalg.eigvalsh(reduced_density(t, keep))
    return float(np.sum(ev ** n).real)


def _state_view(element):
    """Reindex a map element as a state on the same circularly labeled points."""
    return TLElement({PlanarDiagram(0, dg.n_points, dg.pairs): c
                      for dg, c in element.terms.items()})


def _glued_power(state, n, keep, point):
    """Tr of the n-th power of the unnormalized reduced density by gluing.

    2n copies of the diagram alternate ket/bra around a ring; every interface
    between a ket and a bra passes through the local resolution of identity of
    each glued party, so the contraction happens in the physical spans rather
    than in the ambient pairing space.
    """
    layout = state.layout
    dval = complex(point.d)
    ket = state.element.evaluate(point)
    bra = ket.map_coefficients(conj_scalar)
    nontrivial = [k for k, (_, nk) in enumerate(layout.parties) if nk > 1]
    keep = set(keep)
    traced = [k for k in nontrivial if k not in keep]
    kept = [k for k in nontrivial if k in keep]
    projs = {k: _state_view(qudit_space(layout.dims[k]).projector_element(point))
             for k in nontrivial}

    order = []
    for r in range(n):
        order.append(("ket", r))
        order += [("pi", r, p, "T") for p in traced]
        order.append(("bra", r))
        order += [("pi", r, p, "K") for p in kept]
    index = {tag: i for i, tag in enumerate(order)}
    tiles = [ket if tag[0] == "ket" else bra if tag[0] == "bra" else projs[tag[2]]
             for tag in order]

    bonds = []

    def wire(ket_tile, pi_tile, bra_tile, party):
        o = layout.offsets[party]
        w4 = 4 * (layout.dims[party] - 1)
        for l in range(1, w4 + 1):
            bonds.append(((ket_tile, o + l), (pi_tile, w4 + 1 - l)))
            bonds.append(((pi_tile, w4 + l), (bra_tile, o + l)))

    for r in range(n):
        for p in traced:
            wire(index[("ket", r)], index[("pi", r, p, "T")], index[("bra", r)], p)
        for p in kept:
            wire(index[("ket", (r + 1) % n)], index[("pi", r, p, "K")],
                 index[("bra", r)], p)
    return glue_network(tiles, bonds, dval)


def replica_check(t, state, point, n, keep=(0,)):
    """Tr rho^n two ways: from the tensor and by gluing 2n diagram copies."""
    if not 2 <= n <= 4:
        raise ValueError("replica order must be between 2 and 4")
    numeric = trace_power(t, n, keep)
    norm = _glued_power(state, 1, keep, point)
    glued = _glued_power(state, n, keep, point) / norm ** n
    return numeric, complex(glued)


def conversion_probability(t):
    """Chance of converting a two-qubit pure state to the maximally entangled one."""
    t = _normalized(t)
    if t.shape != (2, 2):
        raise ValueError("conversion probability is defined for qubit pairs")
    sv = np.linalg.svd(t, compute_uv=False)
    p = sv ** 2
    return float(2 * min(p[0], p[1]))


def three_tangle(t):
    """Residual tangle 4|d1 - 2 d2 + 4 d3| of a three-qubit pure state."""
    p = _normalized(t)
    if p.shape != (2, 2, 2):
        raise ValueError("three_tangle needs a 2x2x2 tensor")
    d1 = (p[0, 0, 0] ** 2 * p[1, 1, 1] ** 2 + p[0, 0, 1] ** 2 * p[1, 1, 0] ** 2
          + p[0, 1, 0] ** 2 * p[1, 0, 1] ** 2 + p[1, 0, 0] ** 2 * p[0, 1, 1] ** 2)
    d2 = (p[0, 0, 0] * p[1, 1, 1] * (p[0, 1, 1] * p[1, 0, 0]
                                     + p[1, 0, 1] * p[0, 1, 0]
                                     + p[1, 1, 0] * p[0, 0, 1])
          + p[0, 1, 1] * p[1, 0, 0] * p[1, 0, 1] * p[0, 1, 0]
          + p[0, 1, 1] * p[1, 0, 0] * p[1, 1, 0] * p[0, 0, 1]
          + p[1, 0, 1] * p[0, 1, 0] * p[1, 1, 0] * p[0, 0, 1])
    d3 = (p[0, 0, 0] * p[1, 1, 0] * p[1, 0, 1] * p[0, 1, 1]
          + p[1, 1, 1] * p[0, 0, 1] * p[0, 1, 0] * p[1, 0, 0])
    return float(4 * abs(d1 - 2 * d2 + 4 * d3))


def local_ranks(t, tol=1e-9):
    return tuple(schmidt_rank(t, keep=(ax,), tol=tol) for ax in range(np.ndim(t)))


def slocc_tripartite_class(t, tol=1e-8):
    """One of separable, biseparable(X|YZ), W, GHZ for a three-qubit tensor."""
    t = _normalized(t)
    if t.shape != (2, 2, 2):
        raise ValueError("tripartite classifier needs a 2x2x2 tensor")
    ranks = local_ranks(t)
    ones = [ax for ax, r in enumerate(ranks) if r == 1]
    if len(ones) == 3:
        return "separable"
    if len(ones) == 1:
        names = ("A", "B", "C")
        ax = ones[0]
        others = "".join(nm for k, nm in enumerate(names) if k != ax)
        return f"biseparable({names[ax]}|{others})"
    if three_tangle(t) > tol:
        return "GHZ"
    return "W"


def ladder_operator(t, party=0):
    """Six-copy ladder contraction on the doubled space of one party.

    With the chosen party moved to the first axis, copies 1..6 alternate
    psi, conj(psi) around a ring.  First-axis bonds join copies (3,4); second
    axis joins (1,2),(3,4),(5,6); third axis joins (2,3),(4,5),(6,1).  The
    four remaining first-axis indices are grouped as rows (copies 1,6) and
    columns (copies 2,5).  Returns (L, asymmetry): L is trace-normalized and
    symmetrized, asymmetry is the Frobenius norm dropped by symmetrization.
    """
    psi = _normalized(t)
    if psi.ndim != 3:
        raise ValueError("ladder indicator needs a tripartite tensor")
    psi = np.moveaxis(psi, party, 0)
    c = np.conj(psi)
    lhat = np.einsum("ibc,jbg,keg,keh,lfh,mfc->imjl", psi, c, psi, c, psi, c)
    q = psi.shape[0]
    lhat = lhat.reshape(q * q, q * q)
    tr = np.trace(lhat)
    if abs(tr) < 1e-14:
        raise ValueError("ladder operator is traceless; indicator undefined")
    lhat = lhat / tr
    asym = float(np.linalg.norm(lhat - lhat.conj().T))
    return (lhat + lhat.conj().T) / 2, asym


def ladder_indicator(t, party=0):
    """Entropy of the positive part of the normalized ladder operator."""
    L, _ = ladder_operator(t, party)
    ev = np.linalg.eigvalsh(L)
    ev = ev[ev > 1e-14]
    ev = ev / ev.sum()
    return float(-(ev * np.log(ev)).sum())


def min_ladder_indicator(t):
    """Minimum of the ladder indicator over the three party choices.

    Vanishes on every product and biseparable tensor (whichever party is
    unentangled gives a rank-one ladder), stays positive on genuinely
    tripartite-entangled states.
    """
    return min(ladder_indicator(t, party=p) for p in range(np.ndim(t)))
