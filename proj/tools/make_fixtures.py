#!/usr/bin/env python3
"""Regenerate fixtures/graph_XX.{txt,json} from the published instance table.

Graphs come from networkx.fast_gnp_random_graph(8, p, seed). Each sidecar
records the table metadata and whether the regenerated edge list reproduces
the table's solution count s and max-cut value E.
"""
import itertools
import json
import pathlib

import networkx as nx

TABLE = [
    # id, p, r (%), s, E, seed
    (1, 0.30, 1.025, 672, 12, 7),
    (2, 0.55, 1.501, 984, 11, 8),
    (3, 0.40, 1.025, 672, 11, 9),
    (4, 0.40, 1.428, 936, 9, 10),
    (5, 0.35, 3.369, 2208, 9, 11),
    (6, 0.30, 2.051, 1344, 10, 12),
    (7, 0.35, 3.223, 2112, 10, 13),
    (8, 0.50, 0.879, 576, 10, 14),
    (9, 0.90, 0.037, 24, 15, 15),
    (10, 0.40, 0.659, 432, 12, 16),
]
N_NODES = 8
COLORS = 4


def proper_colorings(edges):
    return sum(
        1
        for col in itertools.product(range(COLORS), repeat=N_NODES)
        if all(col[u] != col[v] for u, v in edges)
    )


def max_cut(edges):
    return max(
        sum(1 for u, v in edges if ((z >> u) & 1) != ((z >> v) & 1))
        for z in range(1 << N_NODES)
    )


def main():
    out = pathlib.Path(__file__).resolve().parent.parent / "fixtures"
    out.mkdir(exist_ok=True)
    for gid, p, r, s, e, seed in TABLE:
        g = nx.fast_gnp_random_graph(N_NODES, p, seed=seed)
        edges = sorted(tuple(sorted(edge)) for edge in g.edges())
        stem = f"graph_{gid:02d}"
        with open(out / f"{stem}.txt", "w") as f:
            f.write(f"{N_NODES}\n")
            for u, v in edges:
                f.write(f"{u} {v}\n")
        meta = {
            "id": gid,
            "p": p,
            "r_percent": r,
            "s": s,
            "E": e,
            "seed": seed,
            "colors": COLORS,
            "generator": f"networkx {nx.__version__} fast_gnp_random_graph",
            "connected": nx.is_connected(g),
            "reproduces_table": proper_colorings(edges) == s and max_cut(edges) == e,
        }
        with open(out / f"{stem}.json", "w") as f:
            json.dump(meta, f, indent=2)
            f.write("\n")


if __name__ == "__main__":
    main()
