"""Regenerate src/acss/data/polyhedra/*.edges.

Platonic solids come from hand-written face lists (octahedron and
dodecahedron as duals).  Archimedean solids are derived combinatorially
with Conway operators on consistently oriented face lists:

    t  truncate    a  ambo (rectify)    e  expand    b = t(a(.))    s  snub

Usage: python tools/build_catalog.py [outdir]
"""
import sys
from collections import Counter, deque
from pathlib import Path

from acss.graphs import Graph, dual, dumps

ROOT = Path(__file__).resolve().parents[1]
OUT = ROOT / "src" / "acss" / "data" / "polyhedra"


def orient(faces):
    """Flip faces so that each edge is traversed once in each direction."""
    faces = [list(f) for f in faces]
    by_edge = {}
    for i, f in enumerate(faces):
        for j in range(len(f)):
            by_edge.setdefault(frozenset((f[j], f[(j + 1) % len(f)])), []).append(i)
    done = {0}
    queue = deque([0])
    while queue:
        i = queue.popleft()
        f = faces[i]
        for j in range(len(f)):
            a, b = f[j], f[(j + 1) % len(f)]
            for k in by_edge[frozenset((a, b))]:
                if k in done:
                    continue
                g = faces[k]
                directed = {(g[t], g[(t + 1) % len(g)]) for t in range(len(g))}
                if (a, b) in directed:
                    faces[k] = g[::-1]
                done.add(k)
                queue.append(k)
    return faces


def halfedges(faces):
    """Map directed edge (a, b) -> (face index, position of a)."""
    return {(f[j], f[(j + 1) % len(f)]): (i, j) for i, f in enumerate(faces) for j in range(len(f))}


def rotation(faces, v):
    """Neighbours of v in cyclic order."""
    he = halfedges(faces)
    start = next(b for (a, b) in he if a == v)
    order = [start]
    while True:
        fi, j = he[(v, order[-1])]
        f = faces[fi]
        u = f[j - 1]
        if u == start:
            return order
        order.append(u)


def vertices(faces):
    return sorted({v for f in faces for v in f})


def relabel(faces):
    keys = sorted({x for f in faces for x in f})
    idx = {k: i for i, k in enumerate(keys)}
    return orient([[idx[x] for x in f] for f in faces])


def truncate(faces):
    new = [[p for i in range(len(f)) for p in ((f[i], f[(i + 1) % len(f)]),
                                               (f[(i + 1) % len(f)], f[i]))] for f in faces]
    for v in vertices(faces):
        new.append([(v, w) for w in rotation(faces, v)])
    return relabel(new)


def ambo(faces):
    def e(a, b):
        return (min(a, b), max(a, b))
    new = [[e(f[i], f[(i + 1) % len(f)]) for i in range(len(f))] for f in faces]
    for v in vertices(faces):
        new.append([e(v, w) for w in rotation(faces, v)])
    return relabel(new)


def _corner_faces(faces, split):
    he = halfedges(faces)
    new = [[(i, v) for v in f] for i, f in enumerate(faces)]
    for v in vertices(faces):
        new.append([(he[(v, w)][0], v) for w in rotation(faces, v)])
    for (a, b), (f1, _) in he.items():
        if a > b:
            continue
        f2 = he[(b, a)][0]
        if split:
            new.append([(f1, a), (f1, b), (f2, b)])
            new.append([(f1, a), (f2, b), (f2, a)])
        else:
            new.append([(f1, a), (f1, b), (f2, b), (f2, a)])
    return relabel(new)


def expand(faces):
    return _corner_faces(faces, split=False)


def snub(faces):
    return _corner_faces(faces, split=True)


def to_graph(faces):
    edges = {(min(f[i], f[(i + 1) % len(f)]), max(f[i], f[(i + 1) % len(f)]))
             for f in faces for i in range(len(f))}
    return Graph.from_edges(len(vertices(faces)), edges, faces)


def dual_faces(faces):
    return orient([list(f) for f in dual(to_graph(faces)).faces])


TETRA = orient([[0, 1, 2], [0, 3, 1], [0, 2, 3], [1, 3, 2]])
CUBE = orient([[0, 2, 6, 4], [1, 3, 7, 5], [0, 1, 5, 4], [2, 3, 7, 6], [0, 1, 3, 2], [4, 5, 7, 6]])


def _icosahedron():
    top, bottom = 0, 11
    up = [1 + i for i in range(5)]
    lo = [6 + i for i in range(5)]
    faces = []
    for i in range(5):
        j = (i + 1) % 5
        faces += [[top, up[i], up[j]], [up[i], lo[i], up[j]],
                  [up[j], lo[i], lo[j]], [bottom, lo[j], lo[i]]]
    return orient(faces)


ICOSA = _icosahedron()
OCTA = dual_faces(CUBE)
DODECA = dual_faces(ICOSA)

SOLIDS = {
    "tetrahedron": (TETRA, (4, 6, 4), {3: 4}),
    "cube": (CUBE, (8, 12, 6), {4: 6}),
    "octahedron": (OCTA, (6, 12, 8), {3: 8}),
    "dodecahedron": (DODECA, (20, 30, 12), {5: 12}),
    "icosahedron": (ICOSA, (12, 30, 20), {3: 20}),
    "truncated-tetrahedron": (truncate(TETRA), (12, 18, 8), {3: 4, 6: 4}),
    "cuboctahedron": (ambo(CUBE), (12, 24, 14), {3: 8, 4: 6}),
    "truncated-cube": (truncate(CUBE), (24, 36, 14), {3: 8, 8: 6}),
    "truncated-octahedron": (truncate(OCTA), (24, 36, 14), {4: 6, 6: 8}),
    "rhombicuboctahedron": (expand(CUBE), (24, 48, 26), {3: 8, 4: 18}),
    "truncated-cuboctahedron": (truncate(ambo(CUBE)), (48, 72, 26), {4: 12, 6: 8, 8: 6}),
    "snub-cube": (snub(CUBE), (24, 60, 38), {3: 32, 4: 6}),
    "icosidodecahedron": (ambo(DODECA), (30, 60, 32), {3: 20, 5: 12}),
    "truncated-dodecahedron": (truncate(DODECA), (60, 90, 32), {3: 20, 10: 12}),
    "truncated-icosahedron": (truncate(ICOSA), (60, 90, 32), {5: 12, 6: 20}),
    "rhombicosidodecahedron": (expand(DODECA), (60, 120, 62), {3: 20, 4: 30, 5: 12}),
    "truncated-icosidodecahedron": (truncate(ambo(DODECA)), (120, 180, 62),
                                    {4: 30, 6: 20, 10: 12}),
    "snub-dodecahedron": (snub(DODECA), (60, 150, 92), {3: 80, 5: 12}),
}


def main(out=OUT):
    out = Path(out)
    out.mkdir(parents=True, exist_ok=True)
    for name, (faces, vef, face_sizes) in SOLIDS.items():
        g = to_graph(faces)
        got = (g.n, len(g.edges), len(g.faces))
        sizes = dict(Counter(len(f) for f in g.faces))
        assert got == vef, (name, got, vef)
        assert sizes == face_sizes, (name, sizes, face_sizes)
        assert len(set(g.degrees())) == 1, (name, "not vertex-uniform")
        (out / f"{name}.edges").write_text(f"# {name}\n" + dumps(g))
        print(f"{name:30s} V={g.n:3d} E={len(g.edges):3d} F={len(g.faces):3d}")


if __name__ == "__main__":
    main(*sys.argv[1:])
