"""Why the condition number does not care how many rows you have.

The York design stacks four row patterns in proportions 49:1:1:49.  Making
every block m times taller multiplies X'X by m, and unit-length scaling
divides that factor straight back out.  Run this script to watch the
eigenvalues of the scaled cross-product matrix stay put as m grows.
"""

import numpy as np

from collinlab import condition_number_of, symmetric_eigenvalues, york_design
from collinlab.linalg import unit_length_scale

for m in (1, 10, 100, 1000):
    X = york_design(m)
    Z = unit_length_scale(X)
    eig = symmetric_eigenvalues(Z.T @ Z)
    print(f"m={m:>5}  rows={X.shape[0]:>6}  eigenvalues={np.round(eig, 7)}  CN={condition_number_of(X):.5f}")

print()
print("Raw (unscaled) condition numbers do move with the column scale, so scaling matters:")
X = york_design(1)
print(f"  unit-length: {condition_number_of(X):.4f}")
print(f"  raw:         {condition_number_of(X, scaling='raw'):.4f}")
