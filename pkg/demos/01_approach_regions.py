"""Sampling approach regions and reading their tangency gauges."""
import math

import numpy as np

from projadj import (classify, make_attached_example, make_prop2b_region, make_radial_region,
                     make_stolz_region, union_regions)

# Every region is based at a boundary angle and hands out finite samples of its
# tail inside a ball around that point.  Boundary coordinates are (angle, depth),
# with depth = 1 - |z|.
seq = make_prop2b_region()
th, de = seq.sample_tail(0.01, budget=8)
print("first tail points of the tangential sequence inside B(1, 0.01):")
for t, d in zip(th, de):
    print(f"  angle {t:.6f}  depth {d:.3e}  tau {seq.tau((np.array([t]), np.array([d])))[0]:.4f}")

# tau = depth / distance.  Radial approach keeps it at 1, a Stolz cone keeps it
# above 1/(1+b), and the sequence above drives it to zero.
ladder = [2.0 ** -k for k in range(3, 15)]
regions = {
    "radius": make_radial_region(),
    "cone, b=2": make_stolz_region(2),
    "tangential sequence": seq,
    "radius plus arc pieces": make_attached_example(),
    "radius and sequence interleaved": union_regions(make_radial_region(), seq),
}
for name, region in regions.items():
    rep = classify(region, ladder)
    print(f"{name:34s} tau in [{rep.a_lower:.4f}, {rep.a_upper:.4f}] -> {rep.verdict}")

# Rotating a region moves its base point; the gauges do not change.
rot = seq.rotate(math.pi / 3)
print("rotated gauge matches:", np.allclose(seq.tau(seq.sample_tail(0.01, 32)),
                                            rot.tau(rot.sample_tail(0.01, 32))))
