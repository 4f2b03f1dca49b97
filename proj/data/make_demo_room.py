#!/usr/bin/env python3
"""Writes demo_room.json: a 4 x 2.6 x 3 m room with a table, a desk and a
cabinet front, every quad split into an n x n grid of triangle pairs."""
import json
import sys

verts, faces, labels = [], [], []


def quad(origin, du, dv, label, n=4):
    """Grid on origin + s*du + t*dv; triangles wound so normal = du x dv."""
    base = len(verts)
    for j in range(n + 1):
        for i in range(n + 1):
            s, t = i / n, j / n
            verts.append([round(origin[k] + s * du[k] + t * dv[k], 6) for k in range(3)])
    for j in range(n):
        for i in range(n):
            a = base + j * (n + 1) + i
            b, c, d = a + 1, a + n + 1, a + n + 2
            faces.extend([[a, b, d], [a, d, c]])
            labels.extend([label, label])


# room: x in [-2, 2], y in [0, 2.6], z in [-1.5, 1.5]; normals face inward
quad([-2, 0, 1.5], [4, 0, 0], [0, 0, -3], "floor")
quad([-2, 2.6, -1.5], [4, 0, 0], [0, 0, 3], "ceiling")
quad([-2, 0, -1.5], [4, 0, 0], [0, 2.6, 0], "wall")      # front, faces +z
quad([2, 0, 1.5], [-4, 0, 0], [0, 2.6, 0], "wall")       # back, faces -z
quad([-2, 0, 1.5], [0, 0, -3], [0, 2.6, 0], "wall")      # left, faces +x
quad([2, 0, -1.5], [0, 0, 3], [0, 2.6, 0], "wall")       # right, faces -x
# furniture
quad([-0.6, 0.75, -0.2], [1.2, 0, 0], [0, 0, -0.8], "table", n=2)
quad([-1.9, 0.72, 0.7], [0.8, 0, 0], [0, 0, -1.2], "desk", n=2)
quad([1.6, 0.0, -1.2], [0, 0, 0.8], [0, 1.0, 0], "cabinet", n=2)

json.dump({"scene_id": "demo-room", "vertices": verts, "faces": faces, "labels": labels},
          sys.stdout if len(sys.argv) < 2 else open(sys.argv[1], "w"))
