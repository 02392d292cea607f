#!/usr/bin/env python3
"""Statistics over a randomized negotiation corpus.

Usage: python scripts/corpus_stats.py [N] [SEED] [--unfiltered]
"""

import random
import sys
from collections import Counter

from mnd.agents import Attitude
from mnd.corpus import gen_scenario, search_common_angle
from mnd.engine import Mode, Phase, run


def main() -> int:
    args = [a for a in sys.argv[1:] if not a.startswith("--")]
    n = int(args[0]) if args else 300
    seed = int(args[1]) if len(args) > 1 else 0
    filtered = "--unfiltered" not in sys.argv

    rng = random.Random(seed)
    scenarios = [gen_scenario(rng, filtered=filtered) for _ in range(n)]

    phases = Counter()
    rules = Counter()
    violations = 0
    beats = []
    adequacy_checked = adequacy_matched = 0
    for sc in scenarios:
        out = run(sc.agents, sc.mode, sc.ws, alpha=sc.alpha)
        phases[out.phase.value] += 1
        beats.append(out.beats)
        for ev in out.trace:
            rules[ev.rule] += 1
            violations += ev.violation
        if filtered:
            collab = sc.with_attitude(Attitude.COLLABORATIVE)
            out2 = run(collab.agents, collab.mode, collab.ws, alpha=collab.alpha)
            found = search_common_angle(collab)
            adequacy_checked += 1
            adequacy_matched += (out2.phase is Phase.AGREEMENT) == (found is not None)

    modes = Counter("auction" if sc.mode is Mode.AUCTION else "bilateral" for sc in scenarios)
    print(f"corpus: {n} scenarios, seed {seed}, filtered={filtered}")
    print(f"modes: {dict(modes)}")
    print(f"outcomes: {dict(phases)}")
    print(f"violation events: {violations}")
    print(f"beats: mean {sum(beats)/len(beats):.1f}, max {max(beats)}")
    if filtered:
        print(f"adequacy vs search: {adequacy_matched}/{adequacy_checked} matched")
    top = ", ".join(f"{r}:{c}" for r, c in rules.most_common(12))
    print(f"rule usage: {top}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
