"""Shared helpers: seeded samplers for gap sets and gap-adapted pairs,
plus a terminal summary that prints one line per acceptance criterion.
"""

import random
import re
from fractions import Fraction


from plmonoid import GapSet, PLMono, isolated_points, merge_gaps


def random_gapset(rng: random.Random, max_gaps: int = 3) -> GapSet | None:
    """Random isolated-point-free gap set, or None if the draw was bad."""
    pairs = rng.randrange(1, max_gaps + 1)
    cuts = sorted(Fraction(rng.randrange(1, 64), 64) for _ in range(2 * pairs))
    ivs = [(cuts[2 * i], cuts[2 * i + 1]) for i in range(pairs) if cuts[2 * i] < cuts[2 * i + 1]]
    if not ivs:
        return None
    g = merge_gaps(ivs)
    if isolated_points(g):
        return None
    return g


def gapset_corpus(seed: int, count: int, max_gaps: int = 3) -> list[GapSet]:
    rng = random.Random(seed)
    out: list[GapSet] = []
    while len(out) < count:
        g = random_gapset(rng, max_gaps)
        if g is not None:
            out.append(g)
    return out


def gap_adapted_pair(rng: random.Random, g: GapSet) -> tuple[PLMono, PLMono]:
    """A canonical pair differing only inside the gaps of g: splice a
    smaller extreme pair into each gap (or a randomly shrunk one)."""
    lo_pts = [(Fraction(0), Fraction(0))]
    hi_pts = [(Fraction(0), Fraction(0))]
    for a, b in g.gaps:
        if rng.randrange(2):
            quarter = (b - a) / 4
            a, b = a + quarter, b - quarter
        mid = (a + b) / 2
        lo_pts += [(a, a), (mid, a), (b, b)]
        hi_pts += [(a, a), (mid, b), (b, b)]
    lo_pts.append((Fraction(1), Fraction(1)))
    hi_pts.append((Fraction(1), Fraction(1)))
    return PLMono(tuple(lo_pts)), PLMono(tuple(hi_pts))


_CRITERION = re.compile(r"test_c(\d+)([a-z]?)_(\w+)")


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = []
    for outcome in ("passed", "failed"):
        for rep in terminalreporter.stats.get(outcome, []):
            if "test_acceptance.py::" not in rep.nodeid:
                continue
            m = _CRITERION.search(rep.nodeid.split("::")[-1])
            if not m:
                continue
            num, part = int(m.group(1)), m.group(2)
            label = m.group(3).replace("_", " ")
            status = "PASS" if outcome == "passed" else "FAIL"
            lines.append((num, part, f"criterion {num:2d}{part or ' '} [{status}] {label}"))
    if lines:
        terminalreporter.write_sep("-", "acceptance criteria")
        for _, _, line in sorted(lines):
            terminalreporter.write_line(line)
