"""Undirected simple graphs and their complexity over labellings.

Adjacency matrices depend on how nodes are numbered, so graph measures are
minima over a set of labellings: every permutation (``exact`` mode) or a
canonical labelling plus seeded random permutations (``sampled`` mode).

A labelling is a permutation ``perm`` with ``perm[i]`` the new index of
node ``i``.
"""
from __future__ import annotations

import itertools
import math
from collections import deque
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Callable, Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

import numpy as np

from .baselines import compress_matrix
from .bdm import DEFAULT_BLOCK, DEFAULT_BOUNDARY, BlockPricer, bdm_batch, block_entropy_batch
from .ctm import CtmTable

Edge = Tuple[int, int]
PathLike = Union[str, Path]

EXACT_LIMIT = 8
EXACT_OVERRIDE_LIMIT = 10
AUTOMORPHISM_LIMIT = 10
ISOMORPHISM_LIMIT = 12
DEFAULT_SAMPLES = 100
_CHUNK = 20000


class SizeGuardError(ValueError):
    """A brute-force operation was asked to run on a graph above its size cap."""


def _edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


def _face_edges(face: Sequence[int]) -> Iterator[Edge]:
    for i, u in enumerate(face):
        yield _edge(u, face[(i + 1) % len(face)])


@dataclass(frozen=True)
class Graph:
    n: int
    edges: FrozenSet[Edge]
    faces: Optional[Tuple[Tuple[int, ...], ...]] = None
    _adj: Tuple[FrozenSet[int], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("node count must be nonnegative")
        edges = set()
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"self-loop at node {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge ({u}, {v}) outside 0..{self.n - 1}")
            edges.add(_edge(u, v))
        object.__setattr__(self, "edges", frozenset(edges))
        adj = [set() for _ in range(self.n)]
        for u, v in edges:
            adj[u].add(v)
            adj[v].add(u)
        object.__setattr__(self, "_adj", tuple(frozenset(a) for a in adj))
        if self.faces is not None:
            faces = tuple(tuple(int(x) for x in f) for f in self.faces)
            object.__setattr__(self, "faces", faces)
            check_faces(self)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Edge], faces=None) -> "Graph":
        return cls(n, frozenset(_edge(u, v) for u, v in edges), faces)

    def neighbors(self, v: int) -> FrozenSet[int]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def degrees(self) -> List[int]:
        return [len(a) for a in self._adj]

    def sorted_edges(self) -> List[Edge]:
        return sorted(self.edges)

    def __repr__(self):
        f = "" if self.faces is None else f", faces={len(self.faces)}"
        return f"Graph(n={self.n}, m={len(self.edges)}{f})"


def check_faces(g: Graph) -> None:
    """Every edge must border exactly two faces, and faces must use real edges."""
    seen: Dict[Edge, int] = {}
    for f in g.faces:
        if len(f) < 3:
            raise ValueError(f"face {f} has fewer than 3 nodes")
        for e in _face_edges(f):
            if e not in g.edges:
                raise ValueError(f"face {f} uses non-edge {e}")
            seen[e] = seen.get(e, 0) + 1
    for e in g.edges:
        if seen.get(e, 0) != 2:
            raise ValueError(f"edge {e} lies on {seen.get(e, 0)} faces, expected 2")


# -- matrices and labellings ---------------------------------------------------

def adjacency(g: Graph, labelling: Optional[Sequence[int]] = None) -> np.ndarray:
    a = np.zeros((g.n, g.n), dtype=np.uint8)
    if g.edges:
        e = np.array(sorted(g.edges))
        if labelling is not None:
            e = np.asarray(labelling)[e]
        a[e[:, 0], e[:, 1]] = 1
        a[e[:, 1], e[:, 0]] = 1
    return a


def relabel(g: Graph, perm: Sequence[int]) -> Graph:
    if sorted(perm) != list(range(g.n)):
        raise ValueError("labelling must be a permutation of 0..n-1")
    faces = None if g.faces is None else [[perm[v] for v in f] for f in g.faces]
    return Graph.from_edges(g.n, ((perm[u], perm[v]) for u, v in g.edges), faces)


def canonical_labelling(g: Graph) -> np.ndarray:
    """Cheap deterministic labelling: higher degree first, then BFS order.

    BFS starts at the highest-degree node and visits neighbours by
    decreasing degree, ties broken by their neighbour-degree sequences.
    """
    deg = g.degrees()
    sig = [tuple(sorted((deg[u] for u in g.neighbors(v)), reverse=True)) for v in range(g.n)]

    def rank(v):
        return (-deg[v], tuple(-x for x in sig[v]), v)

    disc = {}
    for root in sorted(range(g.n), key=rank):
        if root in disc:
            continue
        disc[root] = len(disc)
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for u in sorted(g.neighbors(v), key=rank):
                if u not in disc:
                    disc[u] = len(disc)
                    queue.append(u)
    order = sorted(range(g.n), key=lambda v: (-deg[v], disc[v]))
    perm = np.empty(g.n, dtype=np.int64)
    perm[order] = np.arange(g.n)
    return perm


def _labelled_stack(base: np.ndarray, perms: np.ndarray) -> np.ndarray:
    inv = np.argsort(perms, axis=1)
    return base[inv[:, :, None], inv[:, None, :]]


def candidate_labellings(g: Graph, mode: str = "sampled", samples: int = DEFAULT_SAMPLES,
                         seed=0, allow_large: bool = False) -> Iterator[np.ndarray]:
    """Yield ``(k, n)`` arrays of labellings to minimise over.

    ``exact``: all ``n!`` permutations.  ``sampled``: the canonical
    labelling plus ``samples`` random permutations drawn from ``seed``
    (an int, ``SeedSequence`` or ``Generator``); when ``samples >= n!``
    every permutation is used instead.
    """
    n = g.n
    if mode == "exact":
        limit = EXACT_OVERRIDE_LIMIT if allow_large else EXACT_LIMIT
        if n > limit:
            raise SizeGuardError(
                f"exact labelling search refused for n={n} > {limit}"
                + ("" if allow_large else " (override allows up to 10)"))
    elif mode != "sampled":
        raise ValueError(f"unknown mode {mode!r}")
    elif samples < 0:
        raise ValueError("samples must be >= 0")
    if n == 0:
        yield np.zeros((1, 0), dtype=np.int64)
        return
    if mode == "exact" or samples >= math.factorial(n):
        it = itertools.permutations(range(n))
        while True:
            chunk = list(itertools.islice(it, _CHUNK))
            if not chunk:
                return
            yield np.array(chunk, dtype=np.int64)
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    perms = [canonical_labelling(g)] + [rng.permutation(n) for _ in range(samples)]
    yield np.array(perms, dtype=np.int64)


@dataclass
class Minimum:
    value: float
    labelling: np.ndarray


def minimize(g: Graph, evaluate: Callable[[np.ndarray], np.ndarray], **search) -> Minimum:
    """Smallest ``evaluate`` value over the candidate labellings of ``g``.

    ``evaluate`` maps an ``(k, n, n)`` adjacency stack to ``k`` values.
    Ties keep the first labelling encountered.
    """
    base = adjacency(g)
    best = None
    for perms in candidate_labellings(g, **search):
        vals = evaluate(_labelled_stack(base, perms))
        i = int(np.argmin(vals))
        if best is None or vals[i] < best.value:
            best = Minimum(float(vals[i]), perms[i].copy())
    return best


def _compress_batch(stack: np.ndarray) -> np.ndarray:
    cache: Dict[bytes, int] = {}
    out = np.empty(len(stack))
    for i, a in enumerate(stack):
        key = np.packbits(a).tobytes()
        if key not in cache:
            cache[key] = compress_matrix(a)
        out[i] = cache[key]
    return out


def graph_bdm(g: Graph, d: int = DEFAULT_BLOCK, table: CtmTable = None,
              mode: str = "sampled", samples: int = DEFAULT_SAMPLES, seed=0,
              boundary: str = DEFAULT_BOUNDARY, allow_large: bool = False) -> float:
    """Minimum BDM of the adjacency matrix over the candidate labellings."""
    if table is None:
        raise ValueError("a CTM table is required")
    if g.n == 0:
        return 0.0
    pricer = BlockPricer(table)
    return minimize(g, lambda s: bdm_batch(s, d, pricer, boundary), mode=mode,
                    samples=samples, seed=seed, allow_large=allow_large).value


def graph_block_entropy(g: Graph, d: int = DEFAULT_BLOCK, mode: str = "sampled",
                        samples: int = DEFAULT_SAMPLES, seed=0,
                        boundary: str = DEFAULT_BOUNDARY, allow_large: bool = False) -> float:
    if g.n == 0:
        return 0.0
    return minimize(g, lambda s: block_entropy_batch(s, d, boundary), mode=mode,
                    samples=samples, seed=seed, allow_large=allow_large).value


def graph_compress(g: Graph, mode: str = "sampled", samples: int = DEFAULT_SAMPLES,
                   seed=0, allow_large: bool = False) -> float:
    if g.n == 0:
        return 0.0
    return minimize(g, _compress_batch, mode=mode, samples=samples, seed=seed,
                    allow_large=allow_large).value


def graph_measures(g: Graph, table: CtmTable, measures=("bdm", "entropy", "compress"),
                   d: int = DEFAULT_BLOCK, boundary: str = DEFAULT_BOUNDARY,
                   pricer: Optional[BlockPricer] = None, **search) -> Dict[str, float]:
    """Each requested measure minimised over one shared candidate set."""
    pricer = pricer or BlockPricer(table)
    evaluators = {
        "bdm": lambda s: bdm_batch(s, d, pricer, boundary),
        "entropy": lambda s: block_entropy_batch(s, d, boundary),
        "compress": _compress_batch,
    }
    best = {m: math.inf for m in measures}
    base = adjacency(g)
    for perms in candidate_labellings(g, **search):
        stack = _labelled_stack(base, perms)
        for m in measures:
            best[m] = min(best[m], float(np.min(evaluators[m](stack))))
    return best


# -- symmetry and isomorphism --------------------------------------------------

def _bfs_order(g: Graph) -> List[int]:
    order, seen = [], set()
    for root in sorted(range(g.n), key=lambda v: -g.degree(v)):
        if root in seen:
            continue
        seen.add(root)
        queue = deque([root])
        while queue:
            v = queue.popleft()
            order.append(v)
            for u in sorted(g.neighbors(v)):
                if u not in seen:
                    seen.add(u)
                    queue.append(u)
    return order


def _matchings(g1: Graph, g2: Graph) -> Iterator[Dict[int, int]]:
    """Backtracking over edge-preserving bijections ``g1 -> g2``."""
    if g1.n != g2.n or len(g1.edges) != len(g2.edges):
        return
    if sorted(g1.degrees()) != sorted(g2.degrees()):
        return
    order = _bfs_order(g1)
    by_degree: Dict[int, List[int]] = {}
    for v in range(g2.n):
        by_degree.setdefault(g2.degree(v), []).append(v)
    mapping: Dict[int, int] = {}
    used = set()

    def extend(i):
        if i == len(order):
            yield dict(mapping)
            return
        v = order[i]
        for w in by_degree[g1.degree(v)]:
            if w in used:
                continue
            ok = True
            for u, x in mapping.items():
                if (u in g1.neighbors(v)) != (x in g2.neighbors(w)):
                    ok = False
                    break
            if not ok:
                continue
            mapping[v] = w
            used.add(w)
            yield from extend(i + 1)
            del mapping[v]
            used.discard(w)

    yield from extend(0)


def automorphism_count(g: Graph, allow_large: bool = False) -> int:
    """Number of node permutations mapping the edge set onto itself."""
    if g.n > AUTOMORPHISM_LIMIT and not allow_large:
        raise SizeGuardError(f"automorphism count refused for n={g.n} > {AUTOMORPHISM_LIMIT}")
    return sum(1 for _ in _matchings(g, g))


def isomorphic(g1: Graph, g2: Graph, allow_large: bool = False) -> bool:
    if max(g1.n, g2.n) > ISOMORPHISM_LIMIT and not allow_large:
        raise SizeGuardError(
            f"isomorphism test refused for n={max(g1.n, g2.n)} > {ISOMORPHISM_LIMIT}")
    return next(_matchings(g1, g2), None) is not None


def find_isomorphism(g1: Graph, g2: Graph) -> Optional[List[int]]:
    m = next(_matchings(g1, g2), None)
    return None if m is None else [m[v] for v in range(g1.n)]


# -- duals -----------------------------------------------------------------------

def _vertex_cycle(g: Graph, v: int, faces_at: List[int]) -> List[int]:
    """Faces around ``v`` in cyclic order, walking across shared edges."""
    def edges_at(fi):
        return [e for e in _face_edges(g.faces[fi]) if v in e]

    start = faces_at[0]
    cycle = [start]
    prev_edge = edges_at(start)[0]
    current = start
    while True:
        out_edge = next(e for e in edges_at(current) if e != prev_edge)
        nxt = next(f for f in faces_at if f != current and out_edge in edges_at(f))
        if nxt == start:
            break
        cycle.append(nxt)
        prev_edge, current = out_edge, nxt
        if len(cycle) > len(faces_at):
            raise ValueError(f"faces around node {v} do not close into one cycle")
    if len(cycle) != len(faces_at):
        raise ValueError(f"node {v} has a non-disc neighbourhood")
    return cycle


def dual(g: Graph) -> Graph:
    """One node per face, one edge per original edge joining its two faces.

    Faces of the result are the face cycles around the original nodes, in
    node order, so ``dual(dual(g))`` reproduces ``g`` exactly.
    """
    if g.faces is None:
        raise ValueError("dual needs a graph with faces")
    check_faces(g)
    sides: Dict[Edge, List[int]] = {}
    for fi, f in enumerate(g.faces):
        for e in _face_edges(f):
            sides.setdefault(e, []).append(fi)
    edges = [tuple(sides[e]) for e in g.sorted_edges()]
    faces_at: List[List[int]] = [[] for _ in range(g.n)]
    for fi, f in enumerate(g.faces):
        for v in f:
            faces_at[v].append(fi)
    faces = [_vertex_cycle(g, v, faces_at[v]) for v in range(g.n)]
    return Graph.from_edges(len(g.faces), edges, faces)


# -- generators ------------------------------------------------------------------

def complete(n: int) -> Graph:
    return Graph.from_edges(n, itertools.combinations(range(n), 2))


def empty(n: int) -> Graph:
    return Graph.from_edges(n, [])


def cycle(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def path(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def erdos_renyi(n: int, p: float, seed=None) -> Graph:
    """G(n, p) with pairs drawn in lexicographic order from a seeded generator."""
    if not 0 <= p <= 1:
        raise ValueError("p must lie in [0, 1]")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    pairs = list(itertools.combinations(range(n), 2))
    keep = rng.random(len(pairs)) < p
    return Graph.from_edges(n, [e for e, k in zip(pairs, keep) if k])


def hypercube(dim: int) -> Graph:
    if dim < 0:
        raise ValueError("dimension must be >= 0")
    n = 1 << dim
    return Graph.from_edges(n, [(v, v ^ (1 << b)) for v in range(n) for b in range(dim)
                                if v < v ^ (1 << b)])


def remove_edge(g: Graph, e: Edge) -> Graph:
    e = _edge(*e)
    if e not in g.edges:
        raise ValueError(f"edge {e} not in graph")
    return Graph(g.n, g.edges - {e})


def remove_node(g: Graph, v: int) -> Graph:
    """Drop ``v`` and its edges; nodes above ``v`` shift down by one."""
    if not 0 <= v < g.n:
        raise ValueError(f"node {v} not in graph")

    def r(u):
        return u - 1 if u > v else u
    return Graph.from_edges(g.n - 1, [(r(a), r(b)) for a, b in g.edges if v not in (a, b)])


# -- edge-list files and the polyhedron catalog ----------------------------------

def dumps(g: Graph) -> str:
    lines = [str(g.n)] + [f"{u} {v}" for u, v in g.sorted_edges()]
    if g.faces is not None:
        lines.append("F")
        lines += [" ".join(map(str, f)) for f in g.faces]
    return "\n".join(lines) + "\n"


def loads(text: str) -> Graph:
    """Parse ``n``, then ``u v`` lines, then an optional ``F`` section of face cycles."""
    lines = [(i, ln.split("#")[0].strip()) for i, ln in enumerate(text.splitlines(), start=1)]
    lines = [(i, ln) for i, ln in lines if ln]
    if not lines:
        raise ValueError("empty graph file")
    try:
        n = int(lines[0][1])
    except ValueError:
        raise ValueError(f"line {lines[0][0]}: expected node count") from None
    edges, faces, in_faces = [], None, False
    for i, ln in lines[1:]:
        if ln == "F":
            in_faces, faces = True, []
            continue
        try:
            nums = [int(x) for x in ln.split()]
        except ValueError:
            raise ValueError(f"line {i}: expected integers") from None
        if in_faces:
            faces.append(nums)
        elif len(nums) == 2:
            edges.append(tuple(nums))
        else:
            raise ValueError(f"line {i}: expected 'u v'")
    try:
        return Graph.from_edges(n, edges, faces)
    except ValueError as exc:
        raise ValueError(f"invalid graph: {exc}") from None


def read_graph(path: PathLike) -> Graph:
    return loads(Path(path).read_text())


def write_graph(g: Graph, path: PathLike) -> None:
    Path(path).write_text(dumps(g))


PLATONIC = ("tetrahedron", "cube", "octahedron", "dodecahedron", "icosahedron")
ARCHIMEDEAN = (
    "truncated-tetrahedron", "cuboctahedron", "truncated-cube", "truncated-octahedron",
    "rhombicuboctahedron", "truncated-cuboctahedron", "snub-cube", "icosidodecahedron",
    "truncated-dodecahedron", "truncated-icosahedron", "rhombicosidodecahedron",
    "truncated-icosidodecahedron", "snub-dodecahedron",
)
DUALS = {"tetrahedron": "tetrahedron", "cube": "octahedron", "octahedron": "cube",
         "dodecahedron": "icosahedron", "icosahedron": "dodecahedron"}


def _catalog(name: str, names: Sequence[str], kind: str) -> Graph:
    if name not in names:
        raise ValueError(f"unknown {kind} solid {name!r}; valid names: {', '.join(names)}")
    text = resources.files("acss").joinpath("data", "polyhedra", f"{name}.edges").read_text()
    g = loads(text)
    if g.n - len(g.edges) + len(g.faces) != 2:
        raise ValueError(f"catalog entry {name} fails Euler's formula")
    return g


def platonic(name: str) -> Graph:
    return _catalog(name, PLATONIC, "Platonic")


def archimedean(name: str) -> Graph:
    return _catalog(name, ARCHIMEDEAN, "Archimedean")
