"""Connected cubic graphs on 4..10 vertices, one graph6 string per class.

Random cubic graphs are drawn until the seed budget runs out; candidates are
bucketed by Weisfeiler-Lehman hash and compared with an exact isomorphism
test inside the bucket. Output is the initializer list in cubic_graphs.inc.
"""
import networkx as nx


def classes(n, seeds=20000):
    buckets = {}
    for s in range(seeds):
        g = nx.random_regular_graph(3, n, seed=s)
        if not nx.is_connected(g):
            continue
        bucket = buckets.setdefault(nx.weisfeiler_lehman_graph_hash(g, iterations=4), [])
        if not any(nx.is_isomorphic(g, h) for h in bucket):
            bucket.append(g)
    return [g for b in buckets.values() for g in b]


for n in (4, 6, 8, 10):
    codes = sorted(nx.to_graph6_bytes(g, header=False).decode().strip() for g in classes(n))
    print(f"    {{{n}, {{" + ", ".join(f'"{c}"' for c in codes) + "}},")
