"""
Study measurement toolbox
=========================

Score a SUS questionnaire, check scale reliability with Cronbach's alpha,
and compute normalized learning gain with descriptive statistics, the way a
small usability or classroom study would be analyzed.
"""
import numpy as np

from formtime import (
    cronbach_alpha,
    descriptive_stats,
    normalized_gain,
    sus_band,
    sus_mean,
    sus_scores,
)

# Eight synthetic respondents on the 10-item SUS (odd items positive-keyed).
# Each respondent has one underlying attitude that drives every item, plus
# noise: that shared signal is exactly what Cronbach's alpha picks up.
rng = np.random.default_rng(7)
respondents = []
for _ in range(8):
    attitude = rng.uniform(0.0, 2.0)  # 0 = lukewarm, 2 = enthusiastic
    noise = rng.normal(0, 0.4, size=10)
    positive = np.clip(np.rint(3 + attitude + noise[:5]), 1, 5).astype(int)
    negative = np.clip(np.rint(3 - attitude + noise[5:]), 1, 5).astype(int)
    row = np.empty(10, dtype=int)
    row[0::2] = positive
    row[1::2] = negative
    respondents.append(row.tolist())

scores = sus_scores(respondents)
mean = sus_mean(respondents)
print("per-respondent SUS:", [f"{s:.1f}" for s in scores])
print(f"mean SUS {mean:.1f} -> {sus_band(mean)!r}")

# Reliability of the scale itself. SUS alternates positive and negative
# items, so reverse-code the even items before computing alpha, exactly as
# the scoring rule does (odd: r-1, even: 5-r).
keyed = np.array(respondents, dtype=float)
keyed[:, 0::2] -= 1
keyed[:, 1::2] = 5 - keyed[:, 1::2]
alpha = cronbach_alpha(keyed)
print(f"Cronbach's alpha of the questionnaire: {alpha:.3f}")

# Pre/post knowledge scores for the same eight people (0-100 scale).
pre = np.array([45.0, 60.0, 52.5, 70.0, 66.7, 58.0, 75.0, 62.5])
post = np.array([60.0, 72.5, 55.0, 82.5, 75.0, 70.0, 80.0, 70.0])
gains = [normalized_gain(p, q, 100.0) for p, q in zip(pre, post)]
print("\nnormalized gains (%):", [f"{g:.1f}" for g in gains])

for label, values in (("pretest", pre), ("posttest", post), ("gain %", gains)):
    stats = descriptive_stats(values)
    print(
        f"{label:<9} M={stats.mean:6.2f}  Mdn={stats.median:6.2f}  SD={stats.sd:5.2f}"
        f"  95% CI [{stats.ci_low:6.2f}, {stats.ci_high:6.2f}]"
    )
