"""
Scaled Riemann-Roch for a zero section
======================================

Embed ``P1`` as the zero section of ``P(O(2) + O)`` and compare the two
sides of the scaled Grothendieck-Riemann-Roch identity.  Both sides are
integral, and the unscaled rational identity is checked by a separate
route through dual bases.
"""
from intgrr.grrcheck import LIMITATION, verify_grr_zero_section, zero_section_instance
from intgrr.ktheory import chern_character_map

inst = zero_section_instance(base_dims=(1,), twists=[2], l=2)
print("source :", inst.source)
print("target :", inst.target)

rep = verify_grr_zero_section(inst)
fx = rep.details["f_*x"]
print("f_*[O] in K_0      :", fx)
print("ch(f_*[O])         :", chern_character_map(fx))
print("left  (scaled)     :", rep.left)
print("right (scaled)     :", rep.right)
print("integrality        :", rep.integrality)
print("rational oracle ok :", rep.oracle)
print(rep.status)

# below the bound the check refuses to run unless asked to explore
low = zero_section_instance(base_dims=(1,), twists=[2], l=0)
explored = verify_grr_zero_section(low, explore=True)
print("smallest l that already works here:", explored.details["explore_min_l"])
print()
print(LIMITATION)
