"""
Step functions under averaging and heat flow
============================================
"""
import numpy as np

from varlat import (
    avg_apply,
    heat_apply,
    heat_integral_representation_check,
    hilbert_apply,
    make_pcf,
    pcf_eval,
)

# a two-step function: +1 on [0, 1), -1 on [1, 2)
f = make_pcf([0.0, 1.0, 2.0], [1.0, -1.0])

# differential averages carry the mass-2 normalization: on a region where f
# is constant c the average reads 2c
print("averages at x=0.5:")
for t in (0.25, 0.5, 1.0, 2.0):
    print(f"  t={t}: {avg_apply(f, t, 0.5):+.6f}")

# heat flow smooths the steps; tiny times reproduce the function away from
# its jumps, large times wash it out
print("heat values at x=0.5:")
for s in (1e-6, 0.01, 0.1, 1.0, 10.0):
    print(f"  s={s}: {heat_apply(f, s, 0.5):+.6f}  (pointwise value {pcf_eval(f, 0.5):+.1f})")

# the heat operator is an average of averages: H_s f(x) equals the integral
# of A_{t sqrt(s)} f(x) against the subordination weight.  The residual is
# pure quadrature error.
rng = np.random.default_rng(1)
worst = 0.0
for _ in range(20):
    s = float(rng.uniform(0.05, 2.0))
    x = float(rng.uniform(-1.0, 3.0))
    worst = max(worst, heat_integral_representation_check(f, s, x, 2048))
print(f"worst representation residual over 20 random (s, x): {worst:.2e}")

# the Hilbert transform of a step function is a sum of logarithms; for the
# unit indicator it is ln|x/(x-1)|
from varlat import unit_indicator

u = unit_indicator()
for x in (0.25, 0.75, 2.0):
    closed = np.log(abs(x / (x - 1.0)))
    print(f"hilbert at {x}: {hilbert_apply(u, x):+.10f}  closed form {closed:+.10f}")
