#!/usr/bin/env python3
"""Window languages: complexity counts and patterns on coordinate sets.

The complexity function p(n) counts distinct length-n windows.  The
golden coding shows the minimal aperiodic profile p(n) = n+1; the
half-line indicator is barely above it; a de Bruijn word doubles.
"""

from tamelab import CoordSet, SeqSource, complexity, materialize, patterns_on, project

fib = materialize(SeqSource.fibonacci(), (0, 100_000))
half = materialize(SeqSource.char_halfline(), (-1000, 1000))
db = materialize(SeqSource.de_bruijn(12), (0, 1 << 13))

print("n:      ", *[f"{n:>5}" for n in range(1, 13)])
for name, win in [("golden", fib), ("half-line", half), ("de Bruijn", db)]:
    counts = complexity(win, 12).counts
    print(f"{name:>8}:", *[f"{c:>5}" for c in counts])

# patterns restricted to an arbitrary coordinate set
A = CoordSet.of([0, 1, 2])
ps = patterns_on(fib, A, want_witness=True)
print("\ngolden coding on {0,1,2}:", ps.count, "patterns out of 8 possible")
for code in ps.codes:
    print("  pattern", ps.decode(int(code)), "first seen at shift",
          ps.witness[int(code)])

# projections commute with direct computation
sub = CoordSet.of([0, 2])
print("\nproject to {0,2}:",
      project(ps, sub).codes.tolist(),
      "== direct:", patterns_on(fib, sub).codes.tolist())
