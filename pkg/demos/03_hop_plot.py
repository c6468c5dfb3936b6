# %% [markdown]
# Hop plots: exact versus sampled, and growth of the effective diameter with n.

# %%
import time

from netmorph import GenSpec, generate, hop_plot

g = generate(GenSpec("HK", 20_000, m=3, p_t=0.5, seed=2))
exact = hop_plot(g, mode="exact")
for h, gh, frac in exact.rows():
    print(f"h={h:2d}  g(h)={gh:14.1f}  {frac:.4f}")
print("exact d(0.9) =", round(exact.effective_diameter, 3))

# %%
for s in (16, 64, 256, 1024):
    est = hop_plot(g, mode="sample", sources=s, seed=0)
    print(f"{s:5d} sources: d(0.9) = {est.effective_diameter:.3f}")

# %%
for n in (1_000, 10_000, 100_000):
    t0 = time.perf_counter()
    d = hop_plot(generate(GenSpec("BA", n, m=4, seed=0)), mode="sample").effective_diameter
    print(f"n={n:7d}  d(0.9)={d:.3f}  ({time.perf_counter() - t0:.1f} s)")
