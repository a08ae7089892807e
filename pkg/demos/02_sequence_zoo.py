#!/usr/bin/env python3
"""A tour of the bundled sequence families.

Every family sits behind one abstraction: a source recipe plus a window
to materialize.  Windows are two-sided and bit-identical across runs.
"""

from tamelab import SeqSource, materialize

ZOO = [
    ("golden coding (Fibonacci bisequence)", SeqSource.fibonacci()),
    ("Thue-Morse with mirrored negatives", SeqSource.morse()),
    ("sums of distinct powers of ten", SeqSource.ip_indicator(10, 5)),
    ("block concatenation of all words", SeqSource.concat_nonnull()),
    ("half-line indicator", SeqSource.char_halfline()),
    ("de Bruijn word, order 5", SeqSource.de_bruijn(5)),
    ("seeded hash noise", SeqSource.random(7)),
]

for label, source in ZOO:
    win = materialize(source, (-8, 40))
    text = "".join(str(win.value_at(n)) for n in range(-8, 40))
    print(f"{label:>40}: ...{text[:8]}.{text[8:]}")

print("\nwindows report generation statistics in .meta:")
fib = materialize(SeqSource.fibonacci(), (0, 100_000))
print("  golden coding, 1e5 symbols:", fib.meta)
print("  (orbit points within 2^-88 of a cut, where the truncated")
print("   coding could disagree with the true irrational one)")

print("\nsources carry stable digests for manifests:")
print(" ", SeqSource.fibonacci().digest)
