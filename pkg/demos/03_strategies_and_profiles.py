"""
What-if analysis: strategies, profiles, mental rules
====================================================

The same task can be executed keyboard-only, mouse-only, or with the default
mixed strategy; and the modeled user can be anything from an expert typist to
a hunt-and-peck novice. Each combination yields a different prediction.
"""
from formtime import (
    MentalPlacementRule,
    Strategy,
    StrategyKind,
    TypingSkill,
    UserProfile,
    estimate_layout,
    model_task,
    parse_html,
)
from formtime.serialize import task_from_dict

HTML = """
<form>
  <label for="user">Username</label><input type="text" id="user">
  <label for="pw">Password</label><input type="password" id="pw">
  <label for="tier">Tier</label>
  <select id="tier"><option>Free</option><option>Pro</option><option>Team</option></select>
  <input type="submit" id="go" value="Create account">
</form>
"""
doc = estimate_layout(parse_html(HTML, source="strategies-demo"))

task = task_from_dict(
    {
        "steps": [
            {"element_id": "user", "action": {"type": "type", "value": "ada_l"}},
            {"element_id": "pw", "action": {"type": "type", "value": "s3cret!"}},
            {"element_id": "tier", "action": {"type": "select", "index": 2}},
            {"element_id": "go", "action": {"type": "press"}},
        ]
    }
)

print("strategy x typing skill (total seconds):")
header = "".join(f"{skill.value:<12}" for skill in TypingSkill)
print(f"{'':<16}{header}")
for kind in StrategyKind:
    row = []
    for skill in TypingSkill:
        result = model_task(
            doc, task, profile=UserProfile(typing_skill=skill), strategy=Strategy(kind)
        )
        row.append(f"{result.total_seconds:<12.2f}")
    print(f"{kind.value:<16}{''.join(row)}")

# Age-style slowdowns are plain multipliers: motor on K/P/BB/H, cognitive on M.
young = UserProfile(typing_skill=TypingSkill.AVERAGE)
older = UserProfile(typing_skill=TypingSkill.AVERAGE, motor_multiplier=1.4,
                    cognitive_multiplier=1.6)
print("\nmotor x1.4, cognitive x1.6 vs baseline:")
for label, profile in (("baseline", young), ("slowed", older)):
    result = model_task(doc, task, profile=profile)
    print(f"  {label:<9} {result.total_seconds:.2f}s")

# Mental-operator placement is a modeling assumption worth exposing: how much
# of the prediction is thinking rather than doing?
print("\nmental placement rules:")
for rule in MentalPlacementRule:
    result = model_task(doc, task, rule=rule)
    m_count = result.operator_count("M")
    print(f"  {rule.value:<12} M-operators={m_count}  total={result.total_seconds:.2f}s")
