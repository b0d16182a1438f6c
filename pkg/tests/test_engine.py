from __future__ import annotations

import json
import math
import random
import re
from dataclasses import replace

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from formtime import (
    Device,
    ElementKind,
    FittsCoefficients,
    FormDocument,
    FormElement,
    Geometry,
    MentalPlacementRule,
    OperatorTable,
    PointerState,
    Press,
    SelectOption,
    StepDevices,
    Strategy,
    StrategyKind,
    TaskSpec,
    TaskStep,
    TaskValidationError,
    Toggle,
    TypeText,
    TypingSkill,
    UserProfile,
    explain_trace,
    fitts_movement_time,
    model_task,
    place_mental_operators,
    pointing_time,
)
from formtime.engine import (
    INITIAL_POINTER_STATE,
    compile_manipulate,
    compile_reach,
)
from formtime.serialize import render_json, result_to_dict

from cases import canonical_task, random_case

EXPERT = UserProfile(typing_skill=TypingSkill.EXPERT)
FITTS_DEFAULT = FittsCoefficients(a=0.1, b=0.15)


def doc_with(*specs) -> FormDocument:
    """(id, kind, geometry[, options]) tuples; focus order = document order."""
    elements = []
    for i, spec in enumerate(specs):
        element_id, kind, geometry = spec[:3]
        options = spec[3] if len(spec) > 3 else ()
        elements.append(
            FormElement(element_id, kind, element_id, i, options=options, geometry=geometry)
        )
    return FormDocument("test", "", tuple(elements))


def single_text_doc() -> FormDocument:
    return doc_with(("field", ElementKind.TEXT_INPUT, Geometry(100, 100, 200, 30)))


def ops_of(result, code=None):
    ops = [op for entry in result.entries for op in entry.operators]
    if code is None:
        return ops
    return [op for op in ops if op.code == code]


class TestFittsMovementTime:
    def test_zero_distance_is_intercept(self):
        assert fitts_movement_time(0, 50, FITTS_DEFAULT) == pytest.approx(0.1, abs=1e-12)

    def test_distance_equal_width_is_one_bit(self):
        assert fitts_movement_time(100, 100, FITTS_DEFAULT) == pytest.approx(0.25, abs=1e-12)

    def test_three_bit_case(self):
        # log2(210/30 + 1) = log2(8) = 3 bits exactly
        assert fitts_movement_time(210, 30, FITTS_DEFAULT) == pytest.approx(0.55, abs=1e-9)

    def test_degenerate_width_rejected(self):
        with pytest.raises(ValueError):
            fitts_movement_time(100, 0, FITTS_DEFAULT)
        with pytest.raises(ValueError):
            fitts_movement_time(100, -3, FITTS_DEFAULT)

    def test_negative_distance_rejected(self):
        with pytest.raises(ValueError):
            fitts_movement_time(-1, 10, FITTS_DEFAULT)

    @given(
        d1=st.floats(0, 5000),
        d2=st.floats(0, 5000),
        w1=st.floats(1, 500),
        w2=st.floats(1, 500),
    )
    @settings(max_examples=200, deadline=None)
    def test_monotonicity(self, d1, d2, w1, w2):
        lo_d, hi_d = sorted((d1, d2))
        lo_w, hi_w = sorted((w1, w2))
        assert fitts_movement_time(hi_d, lo_w, FITTS_DEFAULT) >= fitts_movement_time(
            lo_d, lo_w, FITTS_DEFAULT
        )
        assert fitts_movement_time(lo_d, hi_w, FITTS_DEFAULT) <= fitts_movement_time(
            lo_d, lo_w, FITTS_DEFAULT
        )


class TestPointingTime:
    def test_table_fallback_when_fitts_disabled(self):
        op, state = pointing_time(
            INITIAL_POINTER_STATE, Geometry(100, 100, 200, 30), OperatorTable(), None, UserProfile()
        )
        assert op.code == "P"
        assert op.duration_us == 1_100_000
        assert state.position == (200.0, 115.0)
        assert state.hands is Device.MOUSE

    def test_zero_distance_costs_intercept(self):
        target = Geometry(100, 100, 200, 30)
        at_center = PointerState(position=target.center(), hands=Device.MOUSE)
        op, _ = pointing_time(at_center, target, OperatorTable(), FITTS_DEFAULT, UserProfile())
        assert op.duration_us == 100_000

    def test_euclidean_distance_with_min_dimension_width(self):
        # (0,0) -> center (160,120): D = 200, W = 30,
        # MT = 0.1 + 0.15*log2(200/30 + 1) = 0.540790s (rounded to microseconds)
        target = Geometry(10, 105, 300, 30)
        assert target.center() == (160.0, 120.0)
        op, _ = pointing_time(
            INITIAL_POINTER_STATE, target, OperatorTable(), FITTS_DEFAULT, UserProfile()
        )
        assert op.duration_us == 540_790
        expected = 0.1 + 0.15 * math.log2(200 / 30 + 1)
        assert op.seconds == pytest.approx(expected, abs=1e-6)

    def test_motor_multiplier_scales_pointing(self):
        target = Geometry(10, 105, 300, 30)
        slow = UserProfile(motor_multiplier=1.5)
        op, _ = pointing_time(INITIAL_POINTER_STATE, target, OperatorTable(), FITTS_DEFAULT, slow)
        assert op.duration_us == round(1.5 * 540_790)


class TestCompileReach:
    def test_keyboard_reach_adjacent_element(self):
        doc = doc_with(
            ("a", ElementKind.TEXT_INPUT, None),
            ("b", ElementKind.TEXT_INPUT, None),
        )
        table = OperatorTable.for_skill(TypingSkill.SKILLED)
        state = replace(INITIAL_POINTER_STATE, focused="a")
        entry, new_state = compile_reach(
            doc, TaskStep("b", TypeText("x")), 0, EXPERT, Strategy(StrategyKind.KEYBOARD_ONLY),
            table, state,
        )
        assert [op.code for op in entry.operators] == ["K"]
        assert entry.phase_us == 200_000
        assert new_state.focused == "b"

    def test_mouse_reach_from_keyboard_homes_first(self):
        doc = single_text_doc()
        entry, state = compile_reach(
            doc, TaskStep("field", TypeText("x")), 0, EXPERT, Strategy(), OperatorTable(),
            INITIAL_POINTER_STATE,
        )
        assert [op.code for op in entry.operators] == ["H", "P"]
        assert entry.phase_us == 1_500_000
        assert state.hands is Device.MOUSE

    def test_first_step_keyboard_reach_is_single_tab(self):
        doc = doc_with(("a", ElementKind.TEXT_INPUT, None))
        entry, _ = compile_reach(
            doc, TaskStep("a", TypeText("x")), 0, EXPERT, Strategy(StrategyKind.KEYBOARD_ONLY),
            OperatorTable.for_skill(TypingSkill.EXPERT), INITIAL_POINTER_STATE,
        )
        assert [op.code for op in entry.operators] == ["K"]

    def test_backward_reach_uses_shift_tab_detail(self):
        doc = doc_with(
            ("a", ElementKind.TEXT_INPUT, None),
            ("b", ElementKind.TEXT_INPUT, None),
            ("c", ElementKind.TEXT_INPUT, None),
        )
        state = replace(INITIAL_POINTER_STATE, focused="c")
        entry, _ = compile_reach(
            doc, TaskStep("a", TypeText("x")), 0, EXPERT, Strategy(StrategyKind.KEYBOARD_ONLY),
            OperatorTable(), state,
        )
        assert len(entry.operators) == 2
        assert all(op.detail == "Shift+Tab" for op in entry.operators)

    def test_keyboard_reach_same_element_is_empty(self):
        doc = doc_with(("a", ElementKind.TEXT_INPUT, None))
        state = replace(INITIAL_POINTER_STATE, focused="a")
        entry, _ = compile_reach(
            doc, TaskStep("a", TypeText("x")), 0, EXPERT, Strategy(StrategyKind.KEYBOARD_ONLY),
            OperatorTable(), state,
        )
        assert entry.operators == ()

    def test_mouse_reach_always_emits_exactly_one_p(self):
        doc = single_text_doc()
        state = INITIAL_POINTER_STATE
        for strategy in (Strategy(), Strategy(StrategyKind.MOUSE_ONLY)):
            entry, _ = compile_reach(
                doc, TaskStep("field", TypeText("x")), 0, EXPERT, strategy, OperatorTable(), state,
            )
            assert sum(1 for op in entry.operators if op.code == "P") == 1


class TestCompileManipulate:
    def test_typing_cost_per_character(self):
        doc = single_text_doc()
        state = replace(INITIAL_POINTER_STATE, hands=Device.KEYBOARD)
        entry, _ = compile_manipulate(
            doc, TaskStep("field", TypeText("abc")), 0, EXPERT,
            Strategy(StrategyKind.KEYBOARD_ONLY), OperatorTable.for_skill(TypingSkill.EXPERT),
            state,
        )
        assert [op.code for op in entry.operators] == ["K", "K", "K"]
        assert entry.phase_us == 360_000

    def test_typing_after_mouse_reach_homes_back(self):
        doc = single_text_doc()
        state = replace(INITIAL_POINTER_STATE, hands=Device.MOUSE)
        entry, new_state = compile_manipulate(
            doc, TaskStep("field", TypeText("ab")), 0, EXPERT, Strategy(),
            OperatorTable.for_skill(TypingSkill.EXPERT), state,
        )
        assert [op.code for op in entry.operators] == ["H", "K", "K"]
        assert new_state.hands is Device.KEYBOARD

    def test_toggle_via_mouse_is_single_click(self):
        doc = doc_with(("box", ElementKind.CHECKBOX, Geometry(10, 10, 18, 18)))
        state = replace(INITIAL_POINTER_STATE, hands=Device.MOUSE)
        entry, _ = compile_manipulate(
            doc, TaskStep("box", Toggle()), 0, EXPERT, Strategy(StrategyKind.MOUSE_ONLY),
            OperatorTable(), state,
        )
        assert [op.code for op in entry.operators] == ["BB"]
        assert entry.phase_us == 200_000

    def test_toggle_via_keyboard_is_single_key(self):
        doc = doc_with(("box", ElementKind.CHECKBOX, None))
        entry, _ = compile_manipulate(
            doc, TaskStep("box", Toggle()), 0, EXPERT, Strategy(StrategyKind.KEYBOARD_ONLY),
            OperatorTable.for_skill(TypingSkill.EXPERT), INITIAL_POINTER_STATE,
        )
        assert [op.code for op in entry.operators] == ["K"]

    def test_select_via_keyboard_arrows_and_enter(self):
        doc = doc_with(
            ("menu", ElementKind.SELECT, None, ("a", "b", "c", "d")),
        )
        entry, _ = compile_manipulate(
            doc, TaskStep("menu", SelectOption(2)), 0, EXPERT,
            Strategy(StrategyKind.KEYBOARD_ONLY), OperatorTable.for_skill(TypingSkill.SKILLED),
            INITIAL_POINTER_STATE,
        )
        assert [op.code for op in entry.operators] == ["K", "K", "K", "K"]
        assert entry.phase_us == 800_000

    def test_select_via_mouse_click_point_click(self):
        geometry = Geometry(100, 100, 180, 32)
        doc = doc_with(("menu", ElementKind.SELECT, geometry, ("a", "b", "c")))
        state = PointerState(position=geometry.center(), hands=Device.MOUSE)
        entry, new_state = compile_manipulate(
            doc, TaskStep("menu", SelectOption(1)), 0, EXPERT,
            Strategy(StrategyKind.MOUSE_ONLY), OperatorTable(), state, fitts=FITTS_DEFAULT,
        )
        assert [op.code for op in entry.operators] == ["BB", "P", "BB"]
        point = entry.operators[1]
        # vertical distance (i+1) x height = 64, W = height: ID = log2(3) bits
        expected = 0.1 + 0.15 * math.log2((1 + 1) * 32 / 32 + 1)
        assert point.seconds == pytest.approx(expected, abs=1e-6)
        assert new_state.position == (geometry.center()[0], geometry.center()[1] + 64)

    def test_radio_select_rides_reach_device(self):
        doc = doc_with(("opt", ElementKind.RADIO, Geometry(5, 5, 18, 18), ("yes",)))
        mouse_state = replace(INITIAL_POINTER_STATE, hands=Device.MOUSE)
        entry, _ = compile_manipulate(
            doc, TaskStep("opt", SelectOption(0)), 0, EXPERT, Strategy(), OperatorTable(),
            mouse_state,
        )
        assert [op.code for op in entry.operators] == ["BB"]
        entry, _ = compile_manipulate(
            doc, TaskStep("opt", SelectOption(0)), 0, EXPERT,
            Strategy(StrategyKind.KEYBOARD_ONLY), OperatorTable(), INITIAL_POINTER_STATE,
        )
        assert [op.code for op in entry.operators] == ["K"]

    def test_response_time_appends_r(self):
        doc = single_text_doc()
        entry, _ = compile_manipulate(
            doc, TaskStep("field", TypeText("a")), 0, EXPERT,
            Strategy(StrategyKind.KEYBOARD_ONLY), OperatorTable(), INITIAL_POINTER_STATE,
            response_time=0.75,
        )
        assert entry.operators[-1].code == "R"
        assert entry.operators[-1].duration_us == 750_000

    def test_table_r_is_fallback(self):
        doc = single_text_doc()
        entry, _ = compile_manipulate(
            doc, TaskStep("field", TypeText("a")), 0, EXPERT,
            Strategy(StrategyKind.KEYBOARD_ONLY), OperatorTable(R=0.3), INITIAL_POINTER_STATE,
        )
        assert entry.operators[-1].duration_us == 300_000

    def test_shifted_keys_double_flag(self):
        doc = single_text_doc()
        base = dict(
            doc=doc, step=TaskStep("field", TypeText("Ab!")), step_index=0, profile=EXPERT,
            strategy=Strategy(StrategyKind.KEYBOARD_ONLY), table=OperatorTable(),
            state=INITIAL_POINTER_STATE,
        )
        plain, _ = compile_manipulate(**base)
        doubled, _ = compile_manipulate(**base, shifted_keys_double=True)
        assert sum(1 for op in plain.operators if op.code == "K") == 3
        assert sum(1 for op in doubled.operators if op.code == "K") == 5


class TestMentalPlacement:
    def make_result(self, n_fields=3, rule=MentalPlacementRule.NONE):
        doc = doc_with(
            *[
                (f"f{i}", ElementKind.TEXT_INPUT, Geometry(10, 10 + 50 * i, 200, 30))
                for i in range(n_fields)
            ]
        )
        task = TaskSpec(tuple(TaskStep(f"f{i}", TypeText("hi")) for i in range(n_fields)))
        return model_task(doc, task, profile=EXPERT, rule=rule)

    def test_once_per_element_count_equals_steps(self):
        result = self.make_result(3, MentalPlacementRule.ONCE_PER_ELEMENT)
        assert result.operator_count("M") == 3

    def test_none_rule_is_identity(self):
        bare = self.make_result(3, MentalPlacementRule.NONE)
        assert bare.operator_count("M") == 0

    def test_totals_differ_by_steps_times_adjusted_m(self):
        profile = UserProfile(typing_skill=TypingSkill.EXPERT, cognitive_multiplier=1.3)
        doc = doc_with(("f", ElementKind.TEXT_INPUT, Geometry(10, 10, 200, 30)))
        task = TaskSpec((TaskStep("f", TypeText("abcd")), TaskStep("f", TypeText("e"))))
        table = OperatorTable.for_skill(TypingSkill.EXPERT)
        with_m = model_task(doc, task, profile=profile, table=table,
                            rule=MentalPlacementRule.ONCE_PER_ELEMENT)
        without = model_task(doc, task, profile=profile, table=table,
                             rule=MentalPlacementRule.NONE)
        adjusted_m = round(1.3 * round(table.M * 1e6))
        assert with_m.total_us - without.total_us == 2 * adjusted_m

    def test_per_chunk_single_step_reach_plus_type_has_one_m(self):
        # the typing burst directly follows reach, same cognitive unit
        result = self.make_result(1, MentalPlacementRule.PER_CHUNK)
        assert result.operator_count("M") == 1

    def test_mental_prepended_to_reach_phase(self):
        result = self.make_result(2, MentalPlacementRule.ONCE_PER_ELEMENT)
        for entry in result.entries:
            if entry.phase == "reach":
                assert entry.operators[0].code == "M"

    def test_double_placement_rejected(self):
        result = self.make_result(2, MentalPlacementRule.ONCE_PER_ELEMENT)
        with pytest.raises(ValueError, match="already"):
            place_mental_operators(result, MentalPlacementRule.ONCE_PER_ELEMENT)

    def test_enabling_rule_never_decreases_total(self):
        rng = random.Random(23)
        for _ in range(20):
            case = random_case(rng)
            case.pop("rule")
            totals = {
                rule: model_task(**case, rule=rule).total_us
                for rule in MentalPlacementRule
            }
            assert totals[MentalPlacementRule.ONCE_PER_ELEMENT] >= totals[MentalPlacementRule.NONE]
            assert totals[MentalPlacementRule.PER_CHUNK] >= totals[MentalPlacementRule.NONE]


class TestModelTask:
    def test_empty_task_is_zero(self):
        doc = single_text_doc()
        result = model_task(doc, TaskSpec(()))
        assert result.total_us == 0
        assert result.entries == ()

    def test_mouse_reach_keyboard_fill_hand_sum(self):
        # M 1.35 + H 0.4 + P 1.1 + H 0.4 + 3K 0.36 = 3.61
        doc = single_text_doc()
        task = TaskSpec((TaskStep("field", TypeText("abc")),))
        result = model_task(doc, task, profile=EXPERT)
        assert result.total_us == 3_610_000
        assert [op.code for op in ops_of(result)] == ["M", "H", "P", "H", "K", "K", "K"]

    def test_keyboard_only_hand_sum(self):
        # M 1.35 + Tab 0.12 + 3K 0.36 = 1.83
        doc = single_text_doc()
        task = TaskSpec((TaskStep("field", TypeText("abc")),))
        result = model_task(doc, task, profile=EXPERT, strategy=Strategy(StrategyKind.KEYBOARD_ONLY))
        assert result.total_us == 1_830_000

    def test_validation_failure_carries_violations(self):
        doc = single_text_doc()
        task = TaskSpec((TaskStep("field", Toggle()),))
        with pytest.raises(TaskValidationError) as excinfo:
            model_task(doc, task)
        assert excinfo.value.violations[0].code == "action-mismatch"

    def test_per_element_times_sum_to_total(self):
        rng = random.Random(5)
        for _ in range(25):
            case = random_case(rng)
            result = model_task(**case)
            assert sum(result.per_element_us().values()) == result.total_us

    def test_keyboard_only_has_no_pointer_operators(self, corpus):
        for doc in corpus.values():
            if not doc.elements:
                continue
            result = model_task(
                doc, canonical_task(doc), strategy=Strategy(StrategyKind.KEYBOARD_ONLY)
            )
            assert result.operator_count("P") == 0
            assert result.operator_count("BB") == 0

    def test_mouse_strategies_point_once_per_reach(self, corpus):
        for fitts in (None, FITTS_DEFAULT):
            for doc in corpus.values():
                if not doc.elements:
                    continue
                result = model_task(doc, canonical_task(doc), fitts=fitts)
                for entry in result.entries:
                    if entry.phase == "reach":
                        assert sum(1 for op in entry.operators if op.code == "P") == 1

    def test_degrading_typist_never_speeds_up(self, corpus):
        skills = [TypingSkill.EXPERT, TypingSkill.SKILLED, TypingSkill.AVERAGE, TypingSkill.NONTYPIST]
        doc = corpus["form02_signup.html"]
        task = canonical_task(doc)
        for strategy in (Strategy(), Strategy(StrategyKind.KEYBOARD_ONLY), Strategy(StrategyKind.MOUSE_ONLY)):
            totals = [
                model_task(doc, task, profile=UserProfile(typing_skill=s), strategy=strategy).total_us
                for s in skills
            ]
            assert totals == sorted(totals)

    def test_click_only_task_invariant_under_typing_skill(self):
        doc = doc_with(
            ("box", ElementKind.CHECKBOX, Geometry(10, 10, 18, 18)),
            ("go", ElementKind.SUBMIT, Geometry(10, 60, 110, 36)),
        )
        task = TaskSpec((TaskStep("box", Toggle()), TaskStep("go", Press())))
        for strategy in (Strategy(), Strategy(StrategyKind.MOUSE_ONLY)):
            totals = {
                model_task(doc, task, profile=UserProfile(typing_skill=s), strategy=strategy).total_us
                for s in TypingSkill
            }
            assert len(totals) == 1

    def test_per_step_override_changes_one_step(self):
        doc = doc_with(
            ("a", ElementKind.TEXT_INPUT, Geometry(10, 10, 200, 30)),
            ("b", ElementKind.TEXT_INPUT, Geometry(10, 60, 200, 30)),
        )
        task = TaskSpec((TaskStep("a", TypeText("x")), TaskStep("b", TypeText("y"))))
        strategy = Strategy(overrides={1: StepDevices(reach=Device.KEYBOARD)})
        result = model_task(doc, task, profile=EXPERT, strategy=strategy)
        reaches = [e for e in result.entries if e.phase == "reach"]
        assert any(op.code == "P" for op in reaches[0].operators)
        assert all(op.code != "P" for op in reaches[1].operators)

    def test_widening_target_never_slows_task(self):
        # width grows around a fixed center, isolating size from position
        for width in (30, 60, 120, 240):
            geometry = Geometry(200 - width / 2, 100, width, 30)
            assert geometry.center()[0] == 200
        totals = []
        for width in (30, 60, 120, 240):
            doc = doc_with(("field", ElementKind.TEXT_INPUT, Geometry(200 - width / 2, 100, width, 30)))
            task = TaskSpec((TaskStep("field", TypeText("hi")),))
            totals.append(model_task(doc, task, fitts=FITTS_DEFAULT).total_us)
        assert totals == sorted(totals, reverse=True)

    def test_moving_last_element_farther_never_speeds_up(self):
        totals = []
        for offset in (0, 100, 400, 900):
            doc = doc_with(
                ("a", ElementKind.TEXT_INPUT, Geometry(10, 10, 200, 30)),
                ("b", ElementKind.SUBMIT, Geometry(10, 60 + offset, 110, 36)),
            )
            task = TaskSpec((TaskStep("a", TypeText("x")), TaskStep("b", Press())))
            totals.append(model_task(doc, task, fitts=FITTS_DEFAULT).total_us)
        assert totals == sorted(totals)

    def test_deterministic_serialization(self):
        rng = random.Random(99)
        case = random_case(rng)
        first = render_json(model_task(**case), explain=True)
        second = render_json(model_task(**case), explain=True)
        assert first == second

    def test_pointer_chains_between_steps(self):
        a = Geometry(0, 85, 60, 30)   # center (30, 100)
        b = Geometry(270, 85, 60, 30)  # center (300, 100): D = 270 from a
        doc = doc_with(("a", ElementKind.TEXT_INPUT, a), ("b", ElementKind.TEXT_INPUT, b))
        task = TaskSpec((TaskStep("a", TypeText("")), TaskStep("b", TypeText(""))))
        result = model_task(doc, task, fitts=FITTS_DEFAULT, rule=MentalPlacementRule.NONE)
        points = ops_of(result, "P")
        assert len(points) == 2
        second = points[1]
        expected = 0.1 + 0.15 * math.log2(270 / 30 + 1)
        assert second.seconds == pytest.approx(expected, abs=1e-6)


class TestExplainTrace:
    def test_empty_trace(self):
        doc = single_text_doc()
        assert explain_trace(model_task(doc, TaskSpec(()))) == []

    def test_single_click_step_contains_bb(self):
        doc = doc_with(("box", ElementKind.CHECKBOX, Geometry(10, 10, 18, 18)))
        result = model_task(doc, TaskSpec((TaskStep("box", Toggle()),)),
                            rule=MentalPlacementRule.NONE)
        records = explain_trace(result)
        assert any(r.code == "BB" and r.duration_us == 200_000 for r in records)

    def test_records_sum_exactly_to_total(self):
        rng = random.Random(31)
        for _ in range(25):
            case = random_case(rng)
            result = model_task(**case)
            records = explain_trace(result)
            assert sum(r.duration_us for r in records) == result.total_us
            assert [r.position for r in records] == list(range(len(records)))

    def test_fitts_rationale_matches_recomputation(self):
        doc = doc_with(("field", ElementKind.TEXT_INPUT, Geometry(10, 105, 300, 30)))
        result = model_task(
            doc, TaskSpec((TaskStep("field", TypeText("x")),)), fitts=FITTS_DEFAULT
        )
        fitts_records = [r for r in explain_trace(result) if "Fitts" in r.rationale]
        assert fitts_records
        pattern = re.compile(r"Fitts: D=([\d.]+)px W=([\d.]+)px ID=([\d.]+)b")
        for record in fitts_records:
            match = pattern.search(record.rationale)
            assert match, record.rationale
            d, w, bits = map(float, match.groups())
            assert bits == pytest.approx(math.log2(d / w + 1), abs=1e-4)
            assert record.seconds == pytest.approx(0.1 + 0.15 * bits, abs=1e-5)


class TestTraceSumOracle:
    def test_serialized_operator_sum_equals_total(self):
        rng = random.Random(2024)
        for _ in range(60):
            case = random_case(rng)
            result = model_task(**case)
            payload = json.loads(json.dumps(result_to_dict(result)))
            op_sum = sum(
                op["duration_us"] for entry in payload["entries"] for op in entry["operators"]
            )
            assert op_sum == payload["total_us"] == result.total_us
            for entry in payload["entries"]:
                assert entry["phase_us"] == sum(op["duration_us"] for op in entry["operators"])
