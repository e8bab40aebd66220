"""Gap calculus: merging, isolated points, extreme pairs, the exact
equivalence decision, collapse maps and pulled-back pseudo-distances."""

import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from plmonoid import (
    GapSet,
    InputError,
    MonoTuple,
    PLMono,
    collapse_map,
    collapsed_dist,
    equiv_test,
    extreme_pair,
    extreme_pair_all,
    identity,
    isolated_points,
    merge_gaps,
    order_excess,
    pullback_pseudometric,
    sup_dist,
)
from plmonoid.explorer import random_mono, random_point

from conftest import gap_adapted_pair, random_gapset

seeds = st.integers(0, 2**32 - 1)
I14 = (F(1, 4), F(3, 4))


# --- merging


def test_merge_overlapping():
    g = merge_gaps([(F(1, 10), F(3, 10)), (F(2, 10), F(5, 10))])
    assert g.gaps == ((F(1, 10), F(1, 2)),)


def test_merge_disjoint_unchanged():
    g = merge_gaps([(F(1, 10), F(2, 10)), (F(3, 10), F(4, 10))])
    assert g.gaps == ((F(1, 10), F(1, 5)), (F(3, 10), F(2, 5)))


def test_merge_nested_absorbed():
    g = merge_gaps([(F(1, 10), F(4, 10)), (F(2, 10), F(3, 10))])
    assert g.gaps == ((F(1, 10), F(2, 5)),)


def test_merge_touching_stay_separate():
    g = merge_gaps([(F(1, 4), F(1, 2)), (F(1, 2), F(3, 4))])
    assert len(g.gaps) == 2
    assert isolated_points(g) == [F(1, 2)]


def test_merge_rejects_bad_intervals():
    with pytest.raises(InputError):
        merge_gaps([(F(1, 2), F(1, 2))])
    with pytest.raises(InputError):
        merge_gaps([(F(3, 4), F(1, 4))])
    with pytest.raises(InputError):
        merge_gaps([(F(-1, 4), F(1, 4))])


@given(seeds)
@settings(max_examples=30, deadline=None)
def test_merge_idempotent_order_insensitive_union_preserving(seed):
    rng = random.Random(seed)
    ivs = []
    for _ in range(rng.randrange(1, 6)):
        a = F(rng.randrange(0, 63), 64)
        b = F(rng.randrange(int(a * 64) + 1, 65), 64)
        ivs.append((a, b))
    g = merge_gaps(ivs)
    assert merge_gaps(g.gaps) == g
    shuffled = ivs[:]
    rng.shuffle(shuffled)
    assert merge_gaps(shuffled) == g

    def in_union(x, intervals):
        return any(a < x < b for a, b in intervals)

    probes = set()
    for a, b in ivs:
        probes |= {a, b, (a + b) / 2, a + F(1, 1024), b - F(1, 1024)}
    for x in probes:
        if 0 <= x <= 1:
            assert in_union(x, ivs) == in_union(x, g.gaps)


# --- isolated points


def test_isolated_examples():
    assert isolated_points(merge_gaps([(F(1, 4), F(3, 4))])) == []
    assert isolated_points(GapSet(())) == []


def test_gapset_validation():
    with pytest.raises(InputError):
        GapSet(((F(1, 4), F(3, 4)), (F(1, 2), F(7, 8))))


# --- extreme pairs


def test_extreme_pair_worked():
    lo, hi = extreme_pair(I14)
    assert lo(F(1, 2)) == F(1, 4)
    assert hi(F(1, 2)) == F(3, 4)


def test_extreme_pair_full_interval():
    lo, hi = extreme_pair((F(0), F(1)))
    assert lo == PLMono(((0, 0), (F(1, 2), 0), (1, 1)))
    assert hi == PLMono(((0, 0), (F(1, 2), 1), (1, 1)))


@given(seeds)
@settings(max_examples=25, deadline=None)
def test_extreme_pair_orders_around_identity(seed):
    rng = random.Random(seed)
    a = F(rng.randrange(0, 31), 64)
    b = F(rng.randrange(int(a * 64) + 1, 65), 64)
    lo, hi = extreme_pair((a, b))
    assert order_excess(lo, identity()) == 0
    assert order_excess(identity(), hi) == 0
    for t in (a / 2, a, b, (b + 1) / 2):
        assert lo(t) == t and hi(t) == t


def test_extreme_pair_all_empty_and_single():
    assert extreme_pair_all(GapSet(())) == (identity(), identity())
    g = GapSet((I14,))
    assert extreme_pair_all(g) == extreme_pair(I14)


def test_extreme_pair_all_two_gaps():
    g = merge_gaps([(F(1, 8), F(1, 4)), (F(1, 2), F(3, 4))])
    lo, hi = extreme_pair_all(g)
    l1, h1 = extreme_pair((F(1, 8), F(1, 4)))
    l2, h2 = extreme_pair((F(1, 2), F(3, 4)))
    for k in range(65):
        t = F(k, 64)
        if F(1, 8) <= t <= F(1, 4):
            assert lo(t) == l1(t) and hi(t) == h1(t)
        elif F(1, 2) <= t <= F(3, 4):
            assert lo(t) == l2(t) and hi(t) == h2(t)
        else:
            assert lo(t) == t and hi(t) == t


def test_extreme_pair_all_rejects_isolated():
    g = merge_gaps([(F(1, 4), F(1, 2)), (F(1, 2), F(3, 4))])
    with pytest.raises(InputError):
        extreme_pair_all(g)


# --- equivalence decision


def test_equiv_worked_cases():
    lo, hi = extreme_pair(I14)
    g = GapSet((I14,))
    assert equiv_test(lo, hi, g) is True
    assert equiv_test(lo, lo, g) is True
    wide_lo, wide_hi = extreme_pair((F(1, 8), F(7, 8)))
    assert equiv_test(wide_lo, wide_hi, g) is False


def test_equiv_identity_with_extreme():
    lo, hi = extreme_pair(I14)
    g = GapSet((I14,))
    assert equiv_test(identity(), lo, g) is True
    assert equiv_test(identity(), hi, g) is True


def test_equiv_all_gap_witness():
    g = merge_gaps([(F(1, 8), F(1, 4)), (F(1, 2), F(3, 4))])
    lo, hi = extreme_pair_all(g)
    assert equiv_test(lo, hi, g) is True


@given(seeds)
@settings(max_examples=20, deadline=None)
def test_equiv_symmetric_and_reflexive(seed):
    rng = random.Random(seed)
    g = random_gapset(rng)
    if g is None:
        return
    f, h = random_point(rng, 2).components
    assert equiv_test(f, f, g) is True
    assert equiv_test(f, h, g) == equiv_test(h, f, g)


def test_equiv_transitive_chain():
    lo, hi = extreme_pair(I14)
    g = GapSet((I14,))
    assert equiv_test(lo, identity(), g)
    assert equiv_test(identity(), hi, g)
    assert equiv_test(lo, hi, g)


@given(seeds)
@settings(max_examples=20, deadline=None)
def test_equiv_transitive_on_adapted_triples(seed):
    # triples built to differ only inside the gaps are pairwise
    # equivalent, so transitivity is exercised on the positive side
    rng = random.Random(seed)
    g = random_gapset(rng)
    if g is None:
        return
    f1, h1 = gap_adapted_pair(rng, g)
    f2, h2 = gap_adapted_pair(rng, g)
    for a in (f1, h1):
        for b in (f2, h2):
            assert equiv_test(a, b, g) is True


def test_equiv_respects_isolated_point():
    # two touching gaps do not identify a pair whose midpoint crosses
    # the shared endpoint
    g = merge_gaps([(F(1, 4), F(1, 2)), (F(1, 2), F(3, 4))])
    lo, hi = extreme_pair(I14)
    assert equiv_test(lo, hi, g) is False


# --- collapse map


def test_collapse_worked_values():
    chi = collapse_map(GapSet((I14,)))
    assert chi == PLMono(((0, 0), (F(1, 4), F(1, 2)), (F(3, 4), F(1, 2)), (1, 1)))
    chi0 = collapse_map(GapSet(((F(0), F(1, 2)),)))
    assert chi0 == PLMono(((0, 0), (F(1, 2), 0), (1, 1)))
    assert collapse_map(GapSet(())) == identity()


def test_collapse_errors():
    with pytest.raises(InputError):
        collapse_map(GapSet(((F(0), F(1)),)))
    with pytest.raises(InputError):
        collapse_map(merge_gaps([(F(0), F(1, 2)), (F(1, 2), F(1))]))


@given(seeds)
@settings(max_examples=25, deadline=None)
def test_collapse_constant_on_gaps_increasing_elsewhere(seed):
    rng = random.Random(seed)
    g = random_gapset(rng)
    if g is None:
        return
    chi = collapse_map(g)
    for (x0, y0), (x1, y1) in zip(chi.breakpoints, chi.breakpoints[1:]):
        mid = (x0 + x1) / 2
        if g.union_contains(mid):
            assert y0 == y1
        else:
            assert y1 > y0


# --- induced pseudo-distance


def test_collapsed_dist_worked():
    lo, hi = extreme_pair(I14)
    chi = collapse_map(GapSet((I14,)))
    assert collapsed_dist(lo, hi, chi) == 0
    assert collapsed_dist(lo, lo, chi) == 0
    assert collapsed_dist(identity(), lo, chi) == 0
    wide_lo, wide_hi = extreme_pair((F(1, 8), F(7, 8)))
    assert collapsed_dist(wide_lo, wide_hi, chi) > 0


@given(seeds)
@settings(max_examples=20, deadline=None)
def test_characterization_agreement(seed):
    rng = random.Random(seed)
    g = random_gapset(rng)
    if g is None:
        return
    chi = collapse_map(g)
    if rng.randrange(2):
        f, h = gap_adapted_pair(rng, g)
    else:
        f, h = random_point(rng, 2).components
    assert (collapsed_dist(f, h, chi) == 0) == equiv_test(f, h, g)


# --- pullback


def tuple_sup(ta: MonoTuple, tb: MonoTuple) -> F:
    return max(sup_dist(f, g) for f, g in zip(ta, tb))


def test_pullback_identity_base():
    rng = random.Random(6)
    f, h = random_mono(rng), random_mono(rng)
    pulled = pullback_pseudometric(MonoTuple((identity(),)), tuple_sup)
    assert pulled(f, h) == tuple_sup(MonoTuple((f,)), MonoTuple((h,)))


def test_pullback_reflexive():
    lo, _ = extreme_pair(I14)
    chi = collapse_map(GapSet((I14,)))

    def rho(ta, tb):
        return max(collapsed_dist(f, g, chi) for f, g in zip(ta, tb))

    pulled = pullback_pseudometric(MonoTuple((lo,)), rho)
    assert pulled(identity(), identity()) == 0


@given(seeds)
@settings(max_examples=15, deadline=None)
def test_pullback_triangle(seed):
    rng = random.Random(seed)
    base = MonoTuple((random_mono(rng), random_mono(rng)))
    pulled = pullback_pseudometric(base, tuple_sup)
    f, g, h = random_mono(rng), random_mono(rng), random_mono(rng)
    assert pulled(f, h) <= pulled(f, g) + pulled(g, h)
    assert pulled(f, g) == pulled(g, f)
