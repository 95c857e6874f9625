"""
Critical values beyond published tables
=======================================

Published tables stop at n = 1000, and software commonly reuses the n = 1000
row for larger samples. The expansion gives critical values for any n, and
they keep shrinking towards the limiting mean of the statistic, 2*pi/e.
"""

import math
import time

from raospacing import approximation, critical_value

alphas = (0.001, 0.01, 0.05, 0.10)
print(f"{'n':>7} " + " ".join(f"{a:>8}" for a in alphas) + f" {'mean':>8} {'sd':>7}")
for n in (20, 100, 1000, 2000, 10_000, 100_000):
    start = time.perf_counter()
    row = [critical_value(n, a) for a in alphas]
    approx = approximation(n)
    print(
        f"{n:>7} " + " ".join(f"{v:8.2f}" for v in row)
        + f" {math.degrees(approx.mean):8.3f} {math.degrees(approx.sd):7.3f}"
        + f"   ({time.perf_counter() - start:.2f} s)"
    )
print(f"limit of the mean: {math.degrees(2 * math.pi / math.e):.3f} deg")
