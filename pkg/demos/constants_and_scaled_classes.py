"""
Denominators of the Todd class
==============================

The Todd class has denominators, and ``T_m`` is the smallest integer that
clears them in degree ``m``.  This script prints the constants and then
the scaled universal classes for a line bundle.
"""
from intgrr.arith import bernoulli, factorial, jam_constant
from intgrr.symring import chern_character, todd_class, todd_inverse

# the constants side by side
for m in range(9):
    print(f"m={m}  m!={factorial(m)}  T_m={jam_constant(m)}  B_m={bernoulli(m)}")

# Td(L) for a line bundle, truncated at degree 4; scaled by T_4 it is integral
d = 4
td = todd_class(1, d)
print("Td      =", td)
print("T_4 Td  =", td * jam_constant(d))
print("integral:", (td * jam_constant(d)).is_integral())

# the same constant also clears the inverse, and the product is T_4^2
inv = todd_inverse(1, d) * jam_constant(d)
print("T_4 Td^-1 =", inv)
print("product   =", td * jam_constant(d) * inv)

# l! is what the Chern character needs
print("4! ch(E), rank 2 =", chern_character(2, d) * factorial(d))
