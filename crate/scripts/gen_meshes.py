#!/usr/bin/env python3
"""Regenerates the OFF fixtures under data/meshes/.

Deterministic; run from the repository root:  python3 scripts/gen_meshes.py
"""
import math
import os

OUT = os.path.join(os.path.dirname(__file__), "..", "data", "meshes")


def write_off(name, verts, faces, dim=3):
    path = os.path.join(OUT, name)
    with open(path, "w") as f:
        if dim == 3:
            f.write("OFF\n")
        else:
            f.write("nOFF\n%d\n" % dim)
        f.write("%d %d 0\n" % (len(verts), len(faces)))
        for v in verts:
            f.write(" ".join("%.17g" % c for c in v) + "\n")
        for t in faces:
            f.write("3 %d %d %d\n" % tuple(t))


def icosahedron():
    p = (1.0 + math.sqrt(5.0)) / 2.0
    v = [(-1, p, 0), (1, p, 0), (-1, -p, 0), (1, -p, 0),
         (0, -1, p), (0, 1, p), (0, -1, -p), (0, 1, -p),
         (p, 0, -1), (p, 0, 1), (-p, 0, -1), (-p, 0, 1)]
    f = [(0, 11, 5), (0, 5, 1), (0, 1, 7), (0, 7, 10), (0, 10, 11),
         (1, 5, 9), (5, 11, 4), (11, 10, 2), (10, 7, 6), (7, 1, 8),
         (3, 9, 4), (3, 4, 2), (3, 2, 6), (3, 6, 8), (3, 8, 9),
         (4, 9, 5), (2, 4, 11), (6, 2, 10), (8, 6, 7), (9, 8, 1)]
    v = [normalize(x) for x in v]
    return v, f


def normalize(x):
    n = math.sqrt(sum(c * c for c in x))
    return tuple(c / n for c in x)


def icosphere(level):
    verts, faces = icosahedron()
    for _ in range(level):
        cache = {}
        new_faces = []

        def mid(a, b):
            key = (min(a, b), max(a, b))
            if key not in cache:
                m = tuple((verts[a][i] + verts[b][i]) / 2.0 for i in range(3))
                verts.append(normalize(m))
                cache[key] = len(verts) - 1
            return cache[key]

        for (a, b, c) in faces:
            ab, bc, ca = mid(a, b), mid(b, c), mid(c, a)
            new_faces += [(a, ab, ca), (b, bc, ab), (c, ca, bc), (ab, bc, ca)]
        faces = new_faces
    return verts, faces


def torus_of_revolution(big, small, nu, nv):
    verts, faces = [], []
    for i in range(nu):
        u = 2 * math.pi * i / nu
        for j in range(nv):
            w = 2 * math.pi * j / nv
            verts.append(((big + small * math.cos(w)) * math.cos(u),
                          (big + small * math.cos(w)) * math.sin(u),
                          small * math.sin(w)))
    idx = lambda i, j: (i % nu) * nv + (j % nv)
    for i in range(nu):
        for j in range(nv):
            a, b, c, d = idx(i, j), idx(i + 1, j), idx(i + 1, j + 1), idx(i, j + 1)
            faces += [(a, b, c), (a, c, d)]
    return verts, faces


def clifford_torus(n):
    # Flat torus embedded in R^4; each factor circle has radius 1.
    verts, faces = [], []
    for i in range(n):
        u = 2 * math.pi * i / n
        for j in range(n):
            w = 2 * math.pi * j / n
            verts.append((math.cos(u), math.sin(u), math.cos(w), math.sin(w)))
    idx = lambda i, j: (i % n) * n + (j % n)
    for i in range(n):
        for j in range(n):
            a, b, c, d = idx(i, j), idx(i + 1, j), idx(i + 1, j + 1), idx(i, j + 1)
            faces += [(a, b, c), (a, c, d)]
    return verts, faces


def voxel_surface(cells, sub, unit):
    """Boundary of a union of unit cubes, each face split into sub x sub quads."""
    filled = set(cells)
    index = {}
    verts, faces = [], []

    def vid(p):
        if p not in index:
            index[p] = len(verts)
            verts.append(tuple(c * unit / sub for c in p))
        return index[p]

    dirs = [(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1)]
    for cell in sorted(filled):
        for d in dirs:
            nb = tuple(cell[i] + d[i] for i in range(3))
            if nb in filled:
                continue
            axis = [i for i in range(3) if d[i] != 0][0]
            sign = d[axis]
            u_ax, v_ax = (axis + 1) % 3, (axis + 2) % 3
            if sign < 0:
                u_ax, v_ax = v_ax, u_ax
            # (u, v, n) right-handed with n = outward normal
            base = [c * sub for c in cell]
            if sign > 0:
                base[axis] += sub
            for a in range(sub):
                for b in range(sub):
                    def corner(da, db):
                        p = list(base)
                        p[u_ax] += a + da
                        p[v_ax] += b + db
                        return vid(tuple(p))
                    p00, p10, p11, p01 = corner(0, 0), corner(1, 0), corner(1, 1), corner(0, 1)
                    faces += [(p00, p10, p11), (p00, p11, p01)]
    return verts, faces


def main():
    os.makedirs(OUT, exist_ok=True)
    for level in range(5):
        v, f = icosphere(level)
        write_off("icosphere_%d.off" % level, v, f)

    v, f = icosphere(2)
    n = len(v)
    v2 = [(x - 3.0, y, z) for (x, y, z) in v] + [(x + 3.0, y, z) for (x, y, z) in v]
    f2 = f + [(a + n, b + n, c + n) for (a, b, c) in f]
    write_off("two_spheres.off", v2, f2)

    v, f = torus_of_revolution(2.0, 0.7, 32, 16)
    write_off("torus_revolution.off", v, f)

    v, f = clifford_torus(32)
    write_off("flat_torus_2pi.off", v, f, dim=4)

    cells = [(i, j, 0) for i in range(3) for j in range(5) if (i, j) not in [(1, 1), (1, 3)]]
    v, f = voxel_surface(cells, 4, 0.5)
    write_off("genus2.off", v, f)


if __name__ == "__main__":
    main()
