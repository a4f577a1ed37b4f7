import random

import pytest

from shiftshadow import (
    BlockParams,
    BridgeNotFoundError,
    BudgetExceededError,
    PseudoOrbitViolation,
    Window,
    agreement_radius,
    check_pseudo_orbit,
    construct_pair_mixing,
    construct_pair_mixing_forward,
    construct_pair_qft,
    construct_pair_schedule,
    make_spliced_pseudo_orbit,
    random_pseudo_orbit,
    search_shadow_sets,
    shift_window,
    specification_schedule,
    trace,
    verify_shadow_set,
    zoo,
)
from shiftshadow.shadowing import (
    extended_trace,
    first_block_left,
    first_block_right,
    second_block_left,
    second_block_right,
)


class TestBlockArithmetic:
    def test_block_parameter_rules(self):
        p = BlockParams.for_accuracy(3, 2)
        assert p.block == 4 and p.delta_exponent == 16
        p = BlockParams.for_accuracy(1, 5)
        assert p.block == 6 and p.delta_exponent == 24
        assert BlockParams.for_accuracy(0, 1).block == 2

    def test_first_round_bounds(self):
        for n in (2, 4, 6):
            assert first_block_left(n, 1) == -n
            assert first_block_right(n, 1) == 4 * n
            assert second_block_left(n, 1) == -4 * n
            assert second_block_right(n, 1) == n

    def test_round_gaps_are_six_blocks(self):
        n = 4
        for j in range(1, 8):
            assert first_block_right(n, j + 1) - first_block_right(n, j) == 6 * n
            assert first_block_left(n, j) - first_block_left(n, j + 1) == 6 * n

    def test_staggered_schedule_values(self):
        sched = specification_schedule(2, 3)
        assert sched["j"] == [0, 4, 8]
        assert sched["k"] == [2, 6, 10]
        assert sched["p"] == [0, 6, 10]
        assert sched["q"] == [4, 8, 12]

    def test_staggered_schedule_tiles_the_line(self):
        for m in (2, 3, 6):
            sched = specification_schedule(m, 8)
            covered = set()
            for a, b in zip(sched["j"], sched["k"]):
                covered.update(range(a, b + 1))
            for a, b in zip(sched["p"], sched["q"]):
                covered.update(range(a, b + 1))
            assert set(range(sched["q"][-1] + 1)) <= covered


class TestExtendedTrace:
    def test_extension_windows_stay_allowed(self, even):
        rng = random.Random(11)
        po = random_pseudo_orbit(even, rng, horizon=(-10, 10), delta_exponent=6,
                                 switches=2)
        c = extended_trace(even, po, -60, 60)
        assert c.lo == -60 and c.hi == 60
        guard = 2 * po.delta_exponent + 1
        for lo in range(-60, 61 - guard, 7):
            assert even.is_allowed(c.segment(lo, lo + guard - 1))

    def test_extension_preserves_real_trace(self, even):
        rng = random.Random(12)
        po = random_pseudo_orbit(even, rng, horizon=(-8, 8), delta_exponent=5,
                                 switches=1)
        t = trace(po)
        c = extended_trace(even, po, t.lo - 20, t.hi + 20)
        assert c.segment(t.lo, t.hi).symbols == t.word.symbols


def _central_agreement(pair, po):
    n = pair.block
    a, b = pair.points
    want = po.entry(0).segment(-n + 1, n - 1).symbols
    return (a.segment(-n + 1, n - 1).symbols == want
            and b.segment(-n + 1, n - 1).symbols == want)


class TestMixingConstruction:
    def test_zero_orbit_yields_zero_points(self, even):
        al = even.alphabet
        zeros = Window(al.word("0" * 33), -16)
        entries = [zeros] * 21
        po = check_pseudo_orbit(entries, 16, even, base_index=-10)
        pair = construct_pair_mixing(even, 2, po, 3)
        for p in pair.points:
            assert set(p.word.symbols) == {al.index("0")}
        cert = verify_shadow_set(even, po, pair.points, 3, size_bound=2)
        assert cert.verdict == "pass"

    def test_random_splices_verify(self, even):
        for seed in range(15):
            rng = random.Random(seed)
            po = random_pseudo_orbit(even, rng, horizon=(-60, 60),
                                     delta_exponent=16, switches=rng.randint(1, 4))
            pair = construct_pair_mixing(even, 2, po, 3)
            cert = verify_shadow_set(even, po, pair.points, 3, size_bound=2)
            assert cert.verdict == "pass", (seed, cert.first_failure)
            assert _central_agreement(pair, po)
            assert not cert.unverified

    def test_points_equal_trace_on_recorded_intervals(self, even):
        rng = random.Random(99)
        po = random_pseudo_orbit(even, rng, horizon=(-40, 40), delta_exponent=16,
                                 switches=2)
        pair = construct_pair_mixing(even, 2, po, 3)
        t = trace(po)
        for point, key in zip(pair.points, ("first", "second")):
            for lo, hi in pair.schedule["trace_agreement"][key]:
                lo2, hi2 = max(lo, t.lo), min(hi, t.hi)
                if lo2 > hi2:
                    continue
                assert point.segment(lo2, hi2).symbols == t.segment(lo2, hi2).symbols

    def test_schedule_covers_every_centered_window(self, even):
        rng = random.Random(5)
        po = random_pseudo_orbit(even, rng, horizon=(-50, 50), delta_exponent=16,
                                 switches=3)
        pair = construct_pair_mixing(even, 2, po, 3)
        n = pair.block
        agree = pair.schedule["trace_agreement"]
        intervals = [tuple(iv) for key in ("first", "second") for iv in agree[key]]
        for i in po.indices():
            window = (i - n + 1, i + n - 1)
            assert any(lo <= window[0] and window[1] <= hi for lo, hi in intervals), i

    def test_bridge_failure_surfaces_a_refutation(self, chambers):
        al = chambers.alphabet
        left = Window(al.word("0" * 30 + "1" + "0" * 49), -40)
        right = Window(al.word("0" * 50 + "2" + "0" * 29), -40)
        po = make_spliced_pseudo_orbit(chambers, [left, right], [0], 8, 8,
                                       (-8, 8), two_sided=True)
        with pytest.raises(BridgeNotFoundError) as err:
            construct_pair_mixing(chambers, 1, po, 1)
        blob = err.value.refutation["u"] + err.value.refutation["v"]
        assert "1" in blob and "2" in blob

    def test_insufficient_delta_rejected(self, even):
        rng = random.Random(1)
        po = random_pseudo_orbit(even, rng, horizon=(-10, 10), delta_exponent=8,
                                 switches=1)
        with pytest.raises(ValueError):
            construct_pair_mixing(even, 2, po, 3)  # needs delta exponent 16


class TestForwardConstruction:
    def test_true_forward_orbit_verifies(self, even):
        al = even.alphabet
        point = Window(al.word("1001" * 30), 0)
        entries = [Window(point.segment(i, i + 16), 0) for i in range(40)]
        po = check_pseudo_orbit(entries, 16, even, two_sided=False)
        pair = construct_pair_mixing_forward(even, 2, po, 3)
        cert = verify_shadow_set(even, po, pair.points, 3, size_bound=2)
        assert cert.verdict == "pass"

    def test_random_forward_splices_verify(self, even):
        for seed in range(15):
            rng = random.Random(seed)
            po = random_pseudo_orbit(even, rng, horizon=(0, 80), delta_exponent=16,
                                     switches=rng.randint(1, 3), two_sided=False)
            pair = construct_pair_mixing_forward(even, 2, po, 3)
            cert = verify_shadow_set(even, po, pair.points, 3, size_bound=2)
            assert cert.verdict == "pass", (seed, cert.first_failure)

    def test_full_shift_forward(self, full2):
        rng = random.Random(3)
        po = random_pseudo_orbit(full2, rng, horizon=(0, 40), delta_exponent=8,
                                 switches=2, two_sided=False)
        pair = construct_pair_mixing_forward(full2, 1, po, 1)
        cert = verify_shadow_set(full2, po, pair.points, 1, size_bound=2)
        assert cert.verdict == "pass"

    def test_two_sided_orbit_rejected(self, even):
        rng = random.Random(0)
        po = random_pseudo_orbit(even, rng, horizon=(-5, 5), delta_exponent=16)
        with pytest.raises(ValueError):
            construct_pair_mixing_forward(even, 2, po, 3)


class TestQftConstruction:
    def test_left_component_orbit(self, door):
        al = door.alphabet
        point = Window(al.word("1001" * 30), -60)
        entries = [Window(point.segment(i - 24, i + 24), -24) for i in range(-20, 21)]
        po = check_pseudo_orbit(entries, 24, door, base_index=-20)
        pair = construct_pair_qft(door, 5, po, 3)
        cert = verify_shadow_set(door, po, pair.points, 3, size_bound=2)
        assert cert.verdict == "pass"
        assert _central_agreement(pair, po)

    def test_crossing_splices_verify(self, door):
        crossings = 0
        for seed in range(15):
            rng = random.Random(seed)
            po = random_pseudo_orbit(door, rng, horizon=(-50, 50),
                                     delta_exponent=24, switches=rng.randint(1, 3))
            if "2" in trace(po).word.text:
                crossings += 1
            pair = construct_pair_qft(door, 5, po, 3)
            cert = verify_shadow_set(door, po, pair.points, 3, size_bound=2)
            assert cert.verdict == "pass", (seed, cert.first_failure)
        assert crossings > 0  # the sample exercises the one-way transition

    def test_finite_type_orbit_verifies(self, golden):
        rng = random.Random(21)
        po = random_pseudo_orbit(golden, rng, horizon=(-30, 30), delta_exponent=12,
                                 switches=2)
        pair = construct_pair_qft(golden, 2, po, 1)
        cert = verify_shadow_set(golden, po, pair.points, 1, size_bound=2)
        assert cert.verdict == "pass"


class TestScheduleConstruction:
    def test_full_shift_schedule(self, full2):
        rng = random.Random(2)
        po = random_pseudo_orbit(full2, rng, horizon=(0, 50), delta_exponent=10,
                                 switches=2, two_sided=False)
        pair = construct_pair_schedule(full2, 1, po, 2)
        cert = verify_shadow_set(full2, po, pair.points, 2, size_bound=2)
        assert cert.verdict == "pass"

    def test_even_shift_schedule_blocks_and_joint_cover(self, even):
        from shiftshadow.scenarios import scheduled_blocks_match

        for seed in range(10):
            rng = random.Random(seed)
            po = random_pseudo_orbit(even, rng, horizon=(0, 80), delta_exponent=16,
                                     switches=rng.randint(1, 3), two_sided=False)
            pair = construct_pair_schedule(even, 2, po, 3)
            z, w = pair.points
            assert pair.schedule["schedule_constant"] == 6
            assert scheduled_blocks_match(even, po, z,
                                          pair.schedule["first_point_blocks"], 3)
            assert scheduled_blocks_match(even, po, w,
                                          pair.schedule["second_point_blocks"], 3)
            cert = verify_shadow_set(even, po, pair.points, 3, size_bound=2)
            assert cert.verdict == "pass", (seed, cert.first_failure)

    def test_gap_between_blocks_is_the_mixing_number(self, even):
        rng = random.Random(4)
        po = random_pseudo_orbit(even, rng, horizon=(0, 60), delta_exponent=16,
                                 switches=1, two_sided=False)
        pair = construct_pair_schedule(even, 2, po, 3)
        k = pair.epsilon_exponent
        for blocks in (pair.schedule["first_point_blocks"],
                       pair.schedule["second_point_blocks"]):
            for (a1, b1), (a2, b2) in zip(blocks, blocks[1:]):
                assert a2 - (b1 + k) - 1 == 2

    def test_small_delta_rejected(self, even):
        rng = random.Random(4)
        po = random_pseudo_orbit(even, rng, horizon=(0, 30), delta_exponent=12,
                                 switches=1, two_sided=False)
        with pytest.raises(ValueError):
            construct_pair_schedule(even, 2, po, 3)  # needs 2*(2+3+1)+3 = 15


class TestVerifyShadowSet:
    def _forward_orbit(self, X, text, length, radius, delta):
        al = X.alphabet
        point = Window(al.word(text), 0)
        entries = [Window(point.segment(i, i + radius), 0) for i in range(length)]
        return check_pseudo_orbit(entries, delta, X, two_sided=False), point

    def test_true_orbit_single_point_passes(self, even):
        po, point = self._forward_orbit(even, "1001" * 10, 12, 8, 6)
        cert = verify_shadow_set(even, po, [point], 4, size_bound=1)
        assert cert.verdict == "pass"
        assert cert.diameter["ok"] is True

    def test_short_member_gives_clamped_pass(self, even):
        po, point = self._forward_orbit(even, "1001" * 10, 12, 8, 6)
        short = Window(point.segment(0, 6), 0)
        cert = verify_shadow_set(even, po, [short], 2)
        assert cert.verdict == "clamped_pass"
        assert cert.unverified == list(range(5, 12))

    def test_marker_pair_fails_after_the_zero_run(self, chambers):
        al = chambers.alphabet
        first = Window(al.word("1" + "0" * 15), 0)
        second = Window(al.word("0" * 4 + "2" * 12), 1)
        po = make_spliced_pseudo_orbit(chambers, [first, second], [1], 3, 8,
                                       (0, 6), two_sided=False)
        # both members near x^0 (prefix 10), diameter below 1/2
        a = Window(al.word("1" + "0" * 14), 0)
        b = Window(al.word("1" + "0" * 13 + "1"), 0)
        cert = verify_shadow_set(chambers, po, [a, b], 1, size_bound=2)
        assert cert.verdict == "fail"
        # the marker 2 enters the radius-1 window one step before it reaches
        # the origin, so the strict inequality already fails at index 4; the
        # center disagreement itself lands at index 5
        assert cert.first_failure["index"] == 4
        for member in (a, b):
            agr = agreement_radius(shift_window(member, 5), po.entry(5),
                                   one_sided=True)
            assert agr.radius == -1

    def test_forbidden_member_fails(self, even):
        po, _ = self._forward_orbit(even, "1001" * 10, 10, 8, 6)
        bad = Window(even.alphabet.word("101" + "0" * 12), 0)
        cert = verify_shadow_set(even, po, [bad], 2)
        assert cert.verdict == "fail"
        assert cert.first_failure["reason"] == "member_not_in_language"

    def test_size_bound_enforced(self, even):
        po, point = self._forward_orbit(even, "1001" * 10, 10, 8, 6)
        cert = verify_shadow_set(even, po, [point, shift_window(point, 0)], 2,
                                 size_bound=1)
        assert cert.verdict == "fail"
        assert cert.first_failure["reason"] == "size_bound_exceeded"

    def test_diameter_skip_is_recorded(self, chambers):
        al = chambers.alphabet
        first = Window(al.word("1" + "0" * 15), 0)
        second = Window(al.word("0" * 4 + "2" * 12), 1)
        po = make_spliced_pseudo_orbit(chambers, [first, second], [1], 3, 8,
                                       (0, 6), two_sided=False)
        a, b = zoo.chamber_pair(po)
        plain = verify_shadow_set(chambers, po, [a, b], 1, check_diameter=False)
        assert plain.verdict == "pass" and not plain.diameter["checked"]
        strict = verify_shadow_set(chambers, po, [a, b], 1, check_diameter=True)
        assert strict.verdict == "fail"
        assert strict.first_failure["reason"] == "diameter_too_large"

    def test_match_table_records_members(self, even):
        po, point = self._forward_orbit(even, "1001" * 10, 8, 8, 6)
        other = shift_window(point, -4)  # wrong phase: never matches alone
        cert = verify_shadow_set(even, po, [other, point], 3, size_bound=2,
                                 check_diameter=False)
        assert cert.verdict == "pass"
        assert {row["member"] for row in cert.table} <= {0, 1}
        assert any(row["member"] == 1 for row in cert.table)


class TestSearchShadowSets:
    def _marker_orbit(self, chambers):
        al = chambers.alphabet
        first = Window(al.word("1" + "0" * 15), 0)
        second = Window(al.word("0" * 4 + "2" * 12), 1)
        return make_spliced_pseudo_orbit(chambers, [first, second], [1], 3, 8,
                                         (0, 6), two_sided=False)

    def test_full_shift_has_a_single_point_witness(self, full2):
        rng = random.Random(9)
        po = random_pseudo_orbit(full2, rng, horizon=(0, 4), delta_exponent=2,
                                 radius=3, switches=1, two_sided=False)
        res = search_shadow_sets(full2, po, 1, 1, 6)
        assert res.witness is not None and len(res.witness) == 1

    def test_marker_orbit_dichotomy(self, chambers):
        po = self._marker_orbit(chambers)
        constrained = search_shadow_sets(chambers, po, 2, 1, 7, check_diameter=True)
        assert constrained.exhausted and constrained.candidate_words == 511
        free = search_shadow_sets(chambers, po, 2, 1, 7, check_diameter=False)
        assert free.witness is not None
        texts = [w.word.text for w in free.witness]
        assert any("1" in t for t in texts) and any("2" in t for t in texts)

    def test_projection_pair_passes_the_oracle_test(self, chambers):
        po = self._marker_orbit(chambers)
        a, b = zoo.chamber_pair(po)
        cut = [Window(w.segment(0, 7), 0) for w in (a, b)]
        lo, hi = 0, 6
        for i in range(lo, hi + 1):
            assert any(
                agreement_radius(shift_window(w, i), po.entry(i),
                                 one_sided=True).radius >= 1
                for w in cut), i

    def test_budget_refusal(self, chambers):
        po = self._marker_orbit(chambers)
        with pytest.raises(BudgetExceededError):
            search_shadow_sets(chambers, po, 2, 1, 7, budget=100)

    def test_witness_is_verified_by_the_verifier(self, even):
        al = even.alphabet
        point = Window(al.word("0" * 12), 0)
        entries = [Window(point.segment(i, i + 4), 0) for i in range(5)]
        po = check_pseudo_orbit(entries, 3, even, two_sided=False)
        res = search_shadow_sets(even, po, 2, 1, 6)
        assert res.witness is not None
        cert = verify_shadow_set(even, po, res.witness, 1, check_diameter=True)
        assert cert.verdict in ("pass", "clamped_pass")


class TestSplicedOrbits:
    def test_single_anchor_is_a_true_orbit(self, even):
        al = even.alphabet
        anchor = Window(al.word("1001" * 10), -20)
        po = make_spliced_pseudo_orbit(even, [anchor], [], 4, 4, (-5, 5))
        for i in po.indices():
            assert po.entry(i).word.symbols == anchor.segment(i - 4, i + 4).symbols

    def test_switch_agreement_violation_detected(self, even):
        al = even.alphabet
        a = Window(al.word("0" * 40), -20)
        b = Window(al.word("0" * 15 + "1" + "0" * 24), -20)  # 1 lands at -5
        with pytest.raises(PseudoOrbitViolation):
            make_spliced_pseudo_orbit(even, [a, b], [0], 8, 8, (-5, 5))

    def test_switch_times_validated(self, even):
        al = even.alphabet
        a = Window(al.word("0" * 40), -20)
        with pytest.raises(ValueError):
            make_spliced_pseudo_orbit(even, [a, a], [9], 4, 4, (-5, 5))

    def test_random_orbit_is_deterministic_per_seed(self, even):
        po1 = random_pseudo_orbit(even, random.Random(42), horizon=(-10, 10),
                                  delta_exponent=6, switches=2)
        po2 = random_pseudo_orbit(even, random.Random(42), horizon=(-10, 10),
                                  delta_exponent=6, switches=2)
        assert po1.to_json() == po2.to_json()
