"""
Graded integral parts
=====================

Split ``T_l ch(E) Td(X)`` into its homogeneous pieces ``CT_m``, each
scaled by its own ``T_m``.  The pieces are integral, and the full class is
rebuilt as ``sum (T_l / T_m) CT_m``.
"""
from intgrr.arith import jam_constant
from intgrr.chow import projective_space, todd_tangent
from intgrr.grrcheck import embedding_instance, graded_parts, verify_pappas_graded
from intgrr.ktheory import KClass, chern_character_map

X = projective_space(3)
parts = graded_parts([1, -2], X)
for m, (s, td, ct) in enumerate(zip(parts.s, parts.td, parts.ct)):
    print(f"m={m}:  s={s}   Td={td}   CT={ct}")

E = KClass.line_bundle(X, (1,)) + KClass.line_bundle(X, (-2,))
l = 5
rebuilt = parts.reconstruct(l)
direct = chern_character_map(E) * todd_tangent(X) * jam_constant(l)
print("reconstruction exact:", rebuilt == direct)

# per-degree statement for the hyperplane P2 in P3 (negative relative dimension)
rep = verify_pappas_graded(embedding_instance(2, 3, 3))
print(rep.details["case"], rep.details["per_degree"], rep.status)
