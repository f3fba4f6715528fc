"""
Counting the trees that block the decoder
=========================================

The lightest obstruction to decoding is an exact tree: a root with t+1
branches, every inner vertex with t more, leaves at depth r.  Its edge and
automorphism counts have closed forms, and the expected number of copies in
a random graph is a falling-factorial product that the sampler should hit
dead on.  This script prints the census and then checks it empirically.
"""

import numpy as np

from peelsim import (
    build_exact_tree, count_exact_trees, expected_tree_count,
    sample_bipartite, threshold_p, tree_stats,
)

print(f"{'r':>2} {'t':>2} {'edges':>6} {'vertices':>9} {'automorphisms':>14}")
for r in (1, 2, 3):
    for t in (1, 2, 3):
        s = tree_stats(r, t)
        print(f"{r:>2} {t:>2} {s.edges:>6} {s.vertices:>9} {s.automorphisms:>14}")
print()

# The construction and the closed forms describe the same object.
for r, t in ((2, 2), (3, 1)):
    host = build_exact_tree(r, t)
    s = tree_stats(r, t)
    print(f"built the exact ({r},{t})-tree: {host.n_left}+{host.n_right} vertices, "
          f"{host.edge_count} edges (closed form says {s.edges})")
print()

# Sampling check: at p = c * threshold, copies of the (1,1)-tree arrive at
# Poisson rate c^2 / 2, and the finite-n mean is exact at every n.
n, c = 40, 1.0
p = c * threshold_p(n, 1, 1)
lam = expected_tree_count(n, p, 1, 1)
rng = np.random.default_rng(11)
counts = [count_exact_trees(sample_bipartite(n, n, p, int(rng.integers(2**63))), 1, 1)
          for _ in range(300)]
print(f"n={n}, p={p:.5f}: expected {lam:.4f} copies per graph, "
      f"sampled mean {np.mean(counts):.4f} over {len(counts)} graphs")
print(f"copy-count histogram: {np.bincount(counts).tolist()}")
