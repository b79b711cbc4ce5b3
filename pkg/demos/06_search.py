"""Resonance-selected extreme values.

Evaluates every character with X <= ell <= 2X and reports the largest
|L(1/2, xi)| next to the weighted-average bound from the moment ratio.
Equivalent CLI:  hecke-resonance search --d -1 --X 4096 --epsilon 0.05 --out report.json
"""

import math

from hecke_resonance import build_field, desk_resonator, extreme_value_search

G = build_field(-1)
for k in (10, 12, 14):
    X = 2**k
    res = extreme_value_search(X, desk_resonator(X ** 0.2, G))
    thr = 0.5 * math.sqrt(math.log(X) / math.log(math.log(X)))
    print(f"X=2^{k}: ell*={res.ell_star:6d}  log|L|={res.log_abs_L_star:.4f}  "
          f"threshold {thr:.4f}  avg bound {res.weighted_avg_bound:.3f}  gain {res.predicted_gain:.3f}")
