#!/usr/bin/env python3
"""Entropy along windows and along sparse coordinate sequences.

rate(n) = log2(pattern count) / n.  The headline number is the tail
slope of log2-counts: a full shift holds slope 1, structured sequences
decay toward zero.  Along a well-chosen sparse sequence a tame-looking
source can still show full sequence entropy.
"""

from tamelab import SeqSource, entropy_estimate, materialize, sequence_entropy_estimate
from tamelab.sources import concat_block_bounds, concat_slot_coordinates

fib = materialize(SeqSource.fibonacci(), (0, 100_000))
db = materialize(SeqSource.de_bruijn(16), (0, 1 << 17))

for name, win, n_max in [("golden", fib, 30), ("de Bruijn 16", db, 16)]:
    series = entropy_estimate(win, n_max)
    rates = [f"{r:.3f}" for _, _, r in series.points[:8]]
    print(f"{name:>12}: rates {rates} ... headline {series.headline:.4f}")

# the block-concatenation source: vanishing window entropy, but along
# the coordinates of one length-12 slot the pattern count is full
end = concat_block_bounds(12)[-1][1]
concat = materialize(SeqSource.concat_nonnull(), (0, end + 1))
slot = concat_slot_coordinates(12)[0]
window_series = entropy_estimate(concat, 48)
along = sequence_entropy_estimate(concat, range(slot, slot + 12))
print(f"\nconcatenation source over w1..w12 ({end} symbols):")
print(f"  window-entropy headline: {window_series.headline:.4f}")
print(f"  sequence entropy along one slot: rate(12) = {along.rate(12):.3f}")
print("  (one bit per coordinate: the slot enumerates every 12-word)")

# lacunary sampling of the golden coding stays thin
lac = sequence_entropy_estimate(fib, [2 ** j for j in range(11)])
print("\ngolden coding along {2^j}:",
      [f"{r:.3f}" for _, _, r in lac.points])
