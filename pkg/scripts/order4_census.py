"""List the isomorphism classes of unital rings on (Z/2)^2 and whether each is minimal over F2."""
import time

from minext.classify import order4_census

t0 = time.perf_counter()
classes = order4_census()
for c in classes:
    print(f"{c.label or '?':12s} tables={c.count:2d} minimal_over_F2={c.minimal_over_prime_field}")
print(f"{len(classes)} classes in {time.perf_counter() - t0:.2f} s")
