# %% [markdown]
# Community detection: divisive betweenness splitting vs greedy modularity.

# %%
from netmorph import (
    Graph,
    community_sizes,
    edge_betweenness,
    girvan_newman,
    louvain,
    resolution_advisory,
)

# ring of 10 cliques of 5, consecutive cliques joined by one edge
edges = []
for c in range(10):
    b = 5 * c
    edges += [(b + i, b + j) for i in range(5) for j in range(i + 1, 5)]
    edges.append((b, (b + 5) % 50))
ring = Graph.from_edges(50, edges)

# %%
top = sorted(edge_betweenness(ring).items(), key=lambda kv: -kv[1])[:3]
print("highest betweenness:", top)

# %%
gn = girvan_newman(ring)
lv = louvain(ring, seed=0)
print(f"Girvan-Newman Q={gn.partition.modularity():.4f}  m={gn.partition.m_communities}")
print(f"Louvain       Q={lv.modularity():.4f}  m={lv.m_communities}")

# %% [markdown]
# With 30 cliques the ring crosses the resolution limit: Louvain starts
# merging neighbours, and the advisory points at the communities at risk.

# %%
edges = []
for c in range(30):
    b = 5 * c
    edges += [(b + i, b + j) for i in range(5) for j in range(i + 1, 5)]
    edges.append((b, (b + 5) % 150))
big = Graph.from_edges(150, edges)
p = louvain(big, seed=0)
print("sizes:", community_sizes(p).histogram)
print("advisory:", resolution_advisory(big, p).to_dict())
