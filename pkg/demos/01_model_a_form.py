"""
Model a small signup form end to end
====================================

Parse HTML, lay the form out deterministically, describe the filling task,
and compile it into a timed operator trace.
"""
from formtime import (
    SelectOption,
    TaskSpec,
    TaskStep,
    Toggle,
    TypeText,
    TypingSkill,
    UserProfile,
    estimate_layout,
    explain_trace,
    model_task,
    parse_html,
)

HTML = """
<html><head><title>Signup</title></head><body>
<form>
  <label for="name">Name</label><input type="text" id="name">
  <label for="lang">Language</label>
  <select id="lang"><option>English</option><option>Greek</option></select>
  <label><input type="checkbox" name="updates"> Email me updates</label>
</form></body></html>
"""

# The parser finds every element inside <form> scopes; the layout estimator
# gives each one a deterministic pixel box (single-column flow).
doc = estimate_layout(parse_html(HTML, source="signup-demo"))
for element in doc.elements:
    print(f"{element.id:<10} {element.kind.value:<9} {element.label!r:<22} {element.geometry}")

# A task is an ordered list of element interactions.
task = TaskSpec(
    (
        TaskStep("name", TypeText("Ada")),
        TaskStep("lang", SelectOption(1)),
        TaskStep("updates", Toggle()),
    )
)

# Default strategy: reach each element with the mouse, fill with the keyboard.
result = model_task(doc, task, profile=UserProfile(typing_skill=TypingSkill.AVERAGE))
print(f"\npredicted completion time: {result.total_seconds:.3f}s")

# The explanation trace shows every operator and why it was charged.
for record in explain_trace(result):
    print(f"  {record.code:<2} {record.seconds:8.3f}s  {record.rationale}")

# Per-element times reveal which field dominates the total.
print("\nper element:")
for element_id, us in result.per_element_us().items():
    print(f"  {element_id:<10} {us / 1e6:8.3f}s")
