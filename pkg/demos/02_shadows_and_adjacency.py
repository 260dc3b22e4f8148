"""Shadows on the circle, and when they reach the base point along a whole arc."""
from projadj import (make_prop2b_region, make_prop2c_region, refute_projective_adjacency, set_shadow,
                     test_projective_adjacency)

# The shadow of a disc point is the arc of boundary points whose cone of
# aperture b contains it.  The shadow of a tail is the union over its points.
seq = make_prop2b_region()
tail = seq.sample_tail(0.05, budget=64)
S = set_shadow(2, tail)
print(f"shadow of 64 tail points: {len(S)} arcs, total length {S.measure():.5f}")

# For the slowly converging sequence the shadows pile up into an arc that
# starts exactly at the base point.  Finite samples alone never reach the
# endpoint, so an analytic tail cover closes the gap.
ladder = [2.0 ** -k for k in range(3, 11)]
res = test_projective_adjacency(seq, 2, ladder)
print("verdict:", res.verdict)
for r in res.radii:
    print(f"  r = {r.r:.5f}: arc of length {r.witness.length:.5f} from the base point "
          f"(4r/25 = {4 * r.r / 25:.5f}, analytic part {r.certified_tail:.5f})")

# The doubly exponential sequence leaves gaps on both sides of the base point
# at every scale.  Its coordinates underflow doubles after a few terms, so the
# refutation runs in extended precision.
ref = refute_projective_adjacency(make_prop2c_region(), 10)
print("verdict:", ref.verdict)
for p in ref.probes[:4]:
    print(f"  {p.side:5s} probe {p.index}: worst tau^2 {p.max_tau_sq} (needs < 1/121)")
print(" ", ref.note)
