"""Finite abstract simplicial complexes: Euler characteristic, Poincare-Hopf
indices, counting matrices, and Green-function identities.

Everything here is exact: integers and Fractions throughout, since the
statements being checked (det L = prod h, sums of inverse entries, index
sums) are exact identities.

The counting matrix of a complex G with energy h is

    L(x, y) = sum of h(z) over simplices z of G contained in x intersect y,

which for h = 1 counts the simplices in the intersection (2^|x n y| - 1).
Its determinant is prod_x h(x), so L is invertible iff no h vanishes, and
the sum of all entries of L^{-1} equals sum_x 1/h(x) -- which coincides
with sum_x h(x) whenever h takes values in {-1, +1} (in particular for
h = omega, where both sides are the Euler characteristic).
"""

from __future__ import annotations

import json
from fractions import Fraction
from itertools import combinations

import numpy as np

from .errors import NotLocallyInjectiveError, SingularCountingMatrixError
from .rationals import exact_det, exact_solve

__all__ = [
    "SimplicialComplex",
    "whitney_complex",
    "euler_characteristic",
    "ph_index",
    "counting_matrix",
    "green_sum",
    "transported_index",
    "random_graph",
    "random_corpus",
    "all_complexes_on",
    "load_complex",
    "dump_complex",
]


class SimplicialComplex:
    """A finite collection of nonempty vertex sets closed under subsets.

    Simplices are stored canonically: sorted tuples, ordered by
    (dimension, lexicographic).  The constructor validates closure.
    """

    def __init__(self, simplices):
        canon = {tuple(sorted(s)) for s in simplices}
        if any(len(s) == 0 for s in canon):
            raise ValueError("simplices must be nonempty")
        if any(len(set(s)) != len(s) for s in canon):
            raise ValueError("simplices must not repeat vertices")
        for s in canon:
            for k in range(1, len(s)):
                for sub in combinations(s, k):
                    if sub not in canon:
                        raise ValueError(
                            "not closed under subsets: %r missing face %r" % (s, sub)
                        )
        self.simplices = tuple(sorted(canon, key=lambda s: (len(s), s)))
        self.vertices = tuple(sorted({v for s in self.simplices for v in s}))
        self._index = {s: i for i, s in enumerate(self.simplices)}

    @classmethod
    def generated_by(cls, sets):
        """Closure of the given vertex sets under nonempty subsets."""
        out = set()
        for s in sets:
            s = tuple(sorted(set(s)))
            for k in range(1, len(s) + 1):
                out.update(combinations(s, k))
        return cls(out)

    def __len__(self):
        return len(self.simplices)

    def __contains__(self, s):
        return tuple(sorted(s)) in self._index

    def __eq__(self, other):
        return isinstance(other, SimplicialComplex) and self.simplices == other.simplices

    def __hash__(self):
        return hash(self.simplices)

    def induced(self, vertex_subset):
        """Subcomplex of simplices entirely inside the vertex subset."""
        vs = set(vertex_subset)
        kept = [s for s in self.simplices if set(s) <= vs]
        out = object.__new__(SimplicialComplex)
        out.simplices = tuple(kept)
        out.vertices = tuple(sorted({v for s in kept for v in s}))
        out._index = {s: i for i, s in enumerate(kept)}
        return out

    def edges(self):
        return [s for s in self.simplices if len(s) == 2]

    def neighbors(self, v):
        return sorted({w for e in self.edges() if v in e for w in e if w != v})


def whitney_complex(vertices, edges):
    """Whitney (clique) complex of a graph: simplices are the cliques."""
    vertices = sorted(set(vertices))
    adj = {v: set() for v in vertices}
    for a, b in edges:
        if a == b:
            raise ValueError("no self-loops")
        adj[a].add(b)
        adj[b].add(a)
    cliques = []
    for k in range(1, len(vertices) + 1):
        found_any = False
        for cand in combinations(vertices, k):
            if all(b in adj[a] for a, b in combinations(cand, 2)):
                cliques.append(cand)
                found_any = True
        if not found_any:
            break
    out = object.__new__(SimplicialComplex)
    out.simplices = tuple(sorted(cliques, key=lambda s: (len(s), s)))
    out.vertices = tuple(vertices)
    out._index = {s: i for i, s in enumerate(out.simplices)}
    return out


def euler_characteristic(complex_):
    """chi(G) = sum over simplices of (-1)^dim."""
    return sum((-1) ** (len(s) - 1) for s in complex_.simplices)


def omega(simplex):
    """The alternating weight (-1)^dim of a simplex."""
    return (-1) ** (len(simplex) - 1)


def _check_locally_injective(complex_, f):
    for v in complex_.vertices:
        seen = {f[v]}
        for w in complex_.neighbors(v):
            if f[w] in seen:
                raise NotLocallyInjectiveError(
                    "f is not injective on the closed neighborhood of %r" % (v,)
                )
            seen.add(f[w])


def ph_index(complex_, f, v):
    """Poincare-Hopf index 1 - chi(S-) at vertex v.

    S- is the subcomplex induced on the neighbors of v with strictly
    smaller f-value.  ``f`` maps vertices to comparable values and must be
    injective on closed neighborhoods.
    """
    _check_locally_injective(complex_, f)
    lower = [w for w in complex_.neighbors(v) if f[w] < f[v]]
    return 1 - euler_characteristic(complex_.induced(lower))


def transported_index(complex_, f):
    """Index obtained by transporting omega(x) to the f-minimal vertex of x.

    Returns a dict vertex -> sum of omega(x) over simplices whose
    f-smallest vertex is that vertex; the values sum to chi(G) by
    construction (every simplex is counted exactly once).
    """
    out = {v: 0 for v in complex_.vertices}
    for s in complex_.simplices:
        vmin = min(s, key=lambda w: f[w])
        out[vmin] += omega(s)
    return out


# -- counting matrix and Green functions ----------------------------------------


def counting_matrix(complex_, h=None):
    """Energized counting matrix L(x, y) = sum_{z in G, z <= x n y} h(z).

    ``h`` maps simplices to integers/Fractions; omitted h means h = 1,
    for which L(x, y) = 2^{|x n y|} - 1.  Returns a nested list of exact
    values in the complex's canonical simplex order.
    """
    simplices = complex_.simplices
    masks = []
    vindex = {v: i for i, v in enumerate(complex_.vertices)}
    for s in simplices:
        m = 0
        for v in s:
            m |= 1 << vindex[v]
        masks.append(m)
    hvals = [1 if h is None else h[s] for s in simplices]
    n = len(simplices)
    out = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            cap = masks[i] & masks[j]
            acc = 0
            for k in range(n):
                if masks[k] & ~cap == 0:
                    acc += hvals[k]
            out[i][j] = acc
            out[j][i] = acc
    return out


def counting_determinant(complex_, h=None):
    """det L, exactly; equals the product of all h(x)."""
    return exact_det(counting_matrix(complex_, h))


def green_sum(complex_, h=None):
    """Sum of all entries of L^{-1}, exactly (one linear solve).

    Raises :class:`SingularCountingMatrixError` when L is singular, which
    by det L = prod h happens exactly when some h(x) = 0.
    """
    L = counting_matrix(complex_, h)
    ones = [Fraction(1)] * len(L)
    try:
        z = exact_solve(L, ones)
    except ValueError:
        raise SingularCountingMatrixError(
            "counting matrix is singular (some h(x) = 0)"
        ) from None
    return sum(z, Fraction(0))


# -- corpora ---------------------------------------------------------------------


def random_graph(n, p, rng):
    """Erdos-Renyi graph G(n, p) as (vertices, edges)."""
    vertices = list(range(n))
    edges = [(a, b) for a, b in combinations(vertices, 2) if rng.random() < p]
    return vertices, edges


def random_corpus(count, seed, n_range=(4, 8), ps=(0.3, 0.5, 0.7)):
    """Whitney complexes of random graphs; deterministic for a given seed."""
    rng = np.random.Generator(np.random.PCG64(seed))
    out = []
    while len(out) < count:
        n = int(rng.integers(n_range[0], n_range[1] + 1))
        p = ps[int(rng.integers(0, len(ps)))]
        out.append(whitney_complex(*random_graph(n, p, rng)))
    return out


def all_complexes_on(max_vertices=4):
    """Every simplicial complex on a vertex subset of {0..max_vertices-1}.

    Enumerates all downward-closed families of nonempty subsets.  The
    count grows doubly exponentially; max_vertices = 4 (15 candidate
    simplices, 2^15 families to filter) is the intended scale.
    """
    ground = list(range(max_vertices))
    subsets = []
    for k in range(1, max_vertices + 1):
        subsets.extend(combinations(ground, k))
    sub_index = {s: i for i, s in enumerate(subsets)}
    # face_mask[i] = bitmask of proper nonempty faces of subsets[i]
    face_masks = []
    for s in subsets:
        m = 0
        for k in range(1, len(s)):
            for sub in combinations(s, k):
                m |= 1 << sub_index[sub]
        face_masks.append(m)
    out = []
    for family in range(1, 1 << len(subsets)):
        ok = True
        f = family
        while f:
            i = (f & -f).bit_length() - 1
            if face_masks[i] & ~family:
                ok = False
                break
            f &= f - 1
        if ok:
            sims = [subsets[i] for i in range(len(subsets)) if family >> i & 1]
            k = object.__new__(SimplicialComplex)
            k.simplices = tuple(sorted(sims, key=lambda s: (len(s), s)))
            k.vertices = tuple(sorted({v for s in k.simplices for v in s}))
            k._index = {s: i for i, s in enumerate(k.simplices)}
            out.append(k)
    return out


def random_energy(complex_, rng, lo=-3, hi=3, signs_only=False):
    """Random nonzero integer energy per simplex (or +-1 when signs_only)."""
    h = {}
    for s in complex_.simplices:
        if signs_only:
            h[s] = int(rng.integers(0, 2)) * 2 - 1
        else:
            v = 0
            while v == 0:
                v = int(rng.integers(lo, hi + 1))
            h[s] = v
    return h


# -- JSON I/O ---------------------------------------------------------------------


def dump_complex(complex_, path_or_file):
    """Write the complex as a JSON list of vertex lists (all simplices)."""
    payload = [list(s) for s in complex_.simplices]
    if hasattr(path_or_file, "write"):
        json.dump(payload, path_or_file)
    else:
        with open(path_or_file, "w") as fh:
            json.dump(payload, fh)


def load_complex(path_or_file, generate_closure=False):
    """Read a complex from a JSON list of vertex lists.

    With ``generate_closure`` the listed sets may be just the maximal
    simplices; otherwise the list must already be closed under subsets.
    """
    if hasattr(path_or_file, "read"):
        data = json.load(path_or_file)
    else:
        with open(path_or_file) as fh:
            data = json.load(fh)
    if generate_closure:
        return SimplicialComplex.generated_by(data)
    return SimplicialComplex(data)
