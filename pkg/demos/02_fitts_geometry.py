"""
Size and position under Fitts' law
==================================

The pointing model MT = a + b * log2(D/W + 1) makes element geometry matter:
bigger targets are faster, farther targets are slower. This demo sweeps both.
"""
import numpy as np

from formtime import (
    ElementKind,
    FittsCoefficients,
    FormDocument,
    FormElement,
    Geometry,
    Press,
    TaskSpec,
    TaskStep,
    TypeText,
    fitts_movement_time,
    model_task,
)

coefficients = FittsCoefficients(a=0.1, b=0.15)

# Raw law first: one pointing act over a grid of distances and widths.
distances = np.array([50, 100, 200, 400, 800], dtype=float)
widths = np.array([10, 20, 40, 80], dtype=float)
print("movement time (s) by distance (rows) and width (cols):")
print("        " + "".join(f"W={int(w):<7}" for w in widths))
for d in distances:
    row = [fitts_movement_time(d, w, coefficients) for w in widths]
    print(f"D={int(d):<5} " + "".join(f"{t:<9.3f}" for t in row))


def two_field_form(submit_y: float, submit_width: float) -> FormDocument:
    return FormDocument(
        "demo", "",
        (
            FormElement("name", ElementKind.TEXT_INPUT, "Name", 0,
                        geometry=Geometry(160, 20, 220, 32)),
            FormElement("send", ElementKind.SUBMIT, "Send", 1,
                        geometry=Geometry(160, submit_y, submit_width, 36)),
        ),
    )


task = TaskSpec((TaskStep("name", TypeText("Ada")), TaskStep("send", Press())))

# Now the same effect inside a whole-task prediction: drag the submit button
# away from the field it follows and watch the total grow.
print("\nsubmit button distance sweep (width fixed at 110px):")
for y in (70, 170, 370, 770):
    total = model_task(two_field_form(y, 110), task, fitts=coefficients).total_seconds
    print(f"  submit at y={y:<4} total={total:.3f}s")

# And grow the button in place: the pointing cost shrinks, never grows.
print("\nsubmit button width sweep (position fixed):")
for width in (36, 72, 144, 288):
    total = model_task(two_field_form(370, width), task, fitts=coefficients).total_seconds
    print(f"  width={width:<4} total={total:.3f}s")
