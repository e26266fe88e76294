"""
Correspondences and the functor Phi
===================================

Classes on ``X x Y`` compose by pull, multiply, push.  The diagonal of
``P2`` comes from the Beilinson resolution; ``Phi`` sends it to the class
of the diagonal, and ``Phi`` respects composition.
"""
from intgrr.chow import projective_space
from intgrr.ktheory import KClass
from intgrr.orbitcat import (
    KMCorrespondence,
    compose_km,
    diagonal_k_class,
    external,
    identity_orbit,
    phi,
    verify_phi_functoriality,
)

P1, P2 = projective_space(1), projective_space(2)
delta = diagonal_k_class(2)
print("[Delta_* O] on P2 x P2 =", delta.cls)
print("Phi(Delta) is the identity:", phi(delta, 6) == identity_orbit(P2))

a = KMCorrespondence(P1, P2, external(KClass.line_bundle(P1, (1,)), KClass.line_bundle(P2, (-1,))))
b = KMCorrespondence(P2, P1, external(KClass.line_bundle(P2, (2,)), KClass.one(P1)) * 3)
print("b o a =", compose_km(a, b).cls)
print("unit law:", compose_km(delta, b) == b)

rep = verify_phi_functoriality(P1, P2, P1, a, b, l=6)
print("Phi(b o a) components:", {i: str(c) for i, c in rep.left.components.items()})
print(rep.status, rep.integrality)
