"""Independent cross-check of the angle-assignment MIP using scipy/HiGHS.

Builds platonic solids and nested triangulations from coordinates, traces
faces, builds the model with y substituted, and solves it with a
floating-point MIP solver. Used to confirm integer optima and model sizes.
"""
import itertools
import math
import sys

import numpy as np
from scipy.optimize import milp, LinearConstraint, Bounds


def platonic_coords(name):
    phi = (1 + 5 ** 0.5) / 2
    if name == "tetrahedron":
        return [(1, 1, 1), (1, -1, -1), (-1, 1, -1), (-1, -1, 1)]
    if name == "cube":
        return list(itertools.product([-1, 1], repeat=3))
    if name == "octahedron":
        return [(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1)]
    if name == "icosahedron":
        pts = []
        for a in (-1, 1):
            for b in (-phi, phi):
                pts += [(0, a, b), (a, b, 0), (b, 0, a)]
        return pts
    if name == "dodecahedron":
        pts = list(itertools.product([-1, 1], repeat=3))
        for a in (-1, 1):
            for b in (-1, 1):
                pts += [(0, a / phi, b * phi), (a / phi, b * phi, 0), (b * phi, 0, a / phi)]
        return pts
    raise ValueError(name)


def polyhedron(name):
    pts = np.array(platonic_coords(name), dtype=float)
    n = len(pts)
    d = np.linalg.norm(pts[:, None] - pts[None], axis=2)
    dmin = min(d[i, j] for i in range(n) for j in range(n) if i != j)
    adj = [[j for j in range(n) if j != i and abs(d[i, j] - dmin) < 1e-9] for i in range(n)]
    rot = []
    for v in range(n):
        nrm = pts[v] / np.linalg.norm(pts[v])
        e1 = pts[adj[v][0]] - pts[v]
        e1 -= nrm * e1.dot(nrm)
        e1 /= np.linalg.norm(e1)
        e2 = np.cross(nrm, e1)
        ang = []
        for u in adj[v]:
            w = pts[u] - pts[v]
            ang.append((-math.atan2(w.dot(e2), w.dot(e1)) % (2 * math.pi), u))  # clockwise from outside
        rot.append([u for _, u in sorted(ang)])
    return n, rot


def nested(k):
    pts = []
    for i in range(k):
        r = 0.4 ** i
        for j in range(3):
            a = 2 * math.pi * j / 3 + i * math.pi / 3
            pts.append((r * math.cos(a), r * math.sin(a)))
    n = 3 * k
    edges = set()
    for i in range(k):
        b = 3 * i
        for j in range(3):
            edges.add(frozenset((b + j, b + (j + 1) % 3)))
        if i + 1 < k:
            c = 3 * (i + 1)
            for j in range(3):
                edges.add(frozenset((c + j, b + j)))
                edges.add(frozenset((c + j, b + (j + 1) % 3)))
    adj = [[] for _ in range(n)]
    for e in edges:
        u, v = tuple(e)
        adj[u].append(v)
        adj[v].append(u)
    rot = []
    for v in range(n):
        ang = sorted((-math.atan2(pts[u][1] - pts[v][1], pts[u][0] - pts[v][0]) % (2 * math.pi), u) for u in adj[v])
        rot.append([u for _, u in ang])
    return n, rot


def faces(n, rot):
    pos = [{u: i for i, u in enumerate(r)} for r in rot]
    seen = set()
    out = []
    darts = sorted((u, v) for u in range(n) for v in rot[u])
    for d in darts:
        if d in seen:
            continue
        f = []
        cur = d
        while cur not in seen:
            seen.add(cur)
            f.append(cur)
            u, v = cur
            w = rot[v][(pos[v][u] + 1) % len(rot[v])]
            cur = (v, w)
        out.append(f)
    return out


def solve(n, rot, outer_pick, eps=0.0):
    fs = faces(n, rot)
    face_of_dart = {}
    for fi, f in enumerate(fs):
        for d in f:
            face_of_dart[d] = fi
    outer = outer_pick(fs)
    # x variables: (v, f) for each angle = dart (u->v) in face f meaning corner at v
    xidx = {}
    for fi, f in enumerate(fs):
        for (u, v) in f:
            xidx[(v, fi)] = len(xidx)
    nx = len(xidx)
    pairs = []
    for v in range(n):
        r = rot[v]
        a = r.index(min(r))
        L = r[a:] + r[:a]
        k = len(L)
        fvt = [face_of_dart[(L[t], v)] for t in range(k)]
        for i in range(k):
            for j in range(i + 1, k):
                pairs.append((v, [xidx[(v, fvt[t])] for t in range(i, j)]))
    ns = len(pairs)
    nv = nx + ns
    rows, lo, hi = [], [], []
    for v in range(n):
        row = np.zeros(nv)
        for (w, f), i in xidx.items():
            if w == v:
                row[i] = 1
        rows.append(row); lo.append(2); hi.append(2)
    for fi, f in enumerate(fs):
        row = np.zeros(nv)
        for (w, g), i in xidx.items():
            if g == fi:
                row[i] = 1
        rhs = len(f) + 2 if fi == outer else len(f) - 2
        rows.append(row); lo.append(rhs); hi.append(rhs)
    for si, (v, xs) in enumerate(pairs):
        row = np.zeros(nv); row[nx + si] = 1
        for i in xs: row[i] -= 1
        rows.append(row); lo.append(-np.inf); hi.append(0)
        row = np.zeros(nv); row[nx + si] = 1
        for i in xs: row[i] += 1
        rows.append(row); lo.append(-np.inf); hi.append(2)
    c = np.zeros(nv); c[nx:] = -1
    integ = np.zeros(nv); integ[nx:] = 1
    lb = np.concatenate([np.full(nx, eps), np.zeros(ns)])
    ub = np.concatenate([np.full(nx, 2 - eps), np.ones(ns)])
    res = milp(c, constraints=LinearConstraint(np.array(rows), lo, hi), integrality=integ, bounds=Bounds(lb, ub))
    lp = milp(c, constraints=LinearConstraint(np.array(rows), lo, hi), bounds=Bounds(lb, ub))
    m = sum(len(r) for r in rot) // 2
    ang = round(-res.fun)
    table4_rows = n + len(fs) + 2 * ns + 2 * nx + len(fs[outer])
    return dict(ang=ang, seg=m - ang, lp=-lp.fun, vars=nx + ns, rows=table4_rows, faces=len(fs))


if __name__ == "__main__":
    eps = float(sys.argv[1]) if len(sys.argv) > 1 else 0.0
    for name in ["tetrahedron", "octahedron", "cube", "dodecahedron", "icosahedron"]:
        n, rot = polyhedron(name)
        print(name, solve(n, rot, lambda fs: 0, eps))
    for k in range(2, 9):
        n, rot = nested(k)
        # outer face: the outermost triangle 0,1,2
        def pick(fs):
            for i, f in enumerate(fs):
                if sorted(u for u, _ in f) == [0, 1, 2]:
                    # both the outer face and the first inner... choose the one of degree 3 whose
                    # darts run opposite to the other
                    return i
        print("G_%d" % k, 3 * k, solve(n, rot, pick, eps), "expect seg", 2 * 3 * k - 3)
