"""How the gain over CPP depends on the phase-shift layout.

With two available phase shifts {0, gap}, the advantage of exact
optimization is smallest when the gap is pi (an evenly spread set) and
grows steeply as the set becomes lopsided -- the regime where switching
elements off starts to matter.  The same story holds for three phase
shifts: the gain surface over (gap1, gap2) bottoms out at the uniform
point (2pi/3, 2pi/3).
"""

import numpy as np

from ris_dps.experiments import get_builtin, run_scenario

fig12 = get_builtin("fig12")[0]
fig12.trials = 200
rows = run_scenario(fig12)

print("two phase shifts {0, gap}, N=50, 200 draws per point")
print(f"{'gap/pi':>8} {'gain %':>8}   ")
for row in rows[::2]:
    bar = "#" * int(round(row.gain_pct))
    print(f"{row.x[0] / np.pi:>8.3f} {row.gain_pct:>8.2f}   {bar}")
best = min(rows, key=lambda r: r.gain_pct)
print(f"\nminimum gain {best.gain_pct:.2f}% at gap = {best.x[0] / np.pi:.3f} pi")

fig13 = get_builtin("fig13")[0]
fig13.trials = 100
rows13 = run_scenario(fig13)
best13 = min(rows13, key=lambda r: r.gain_pct)
print(f"three phase shifts: minimum gain {best13.gain_pct:.2f}% at "
      f"gaps ({best13.x[0] / np.pi:.3f} pi, {best13.x[1] / np.pi:.3f} pi) "
      f"-- the uniform layout")
