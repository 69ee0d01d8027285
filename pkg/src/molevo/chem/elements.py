"""Element data for the supported set: C, H, O, N, S, P, F, Cl, Br, I.

Valence model
-------------
* ``allowed_valences`` lists the bond-order sums an uncharged atom may carry
  (S and P are multivalent).  Implicit hydrogens fill up to the smallest
  allowed valence >= the current bond-order sum; validation caps at the
  largest.
* Charge shifts the allowed valences by the usual organic rules
  (N+ -> 4, O- -> 1, C+/- -> 3, ...).
* Aromatic atoms count ring bonds with order 1 and use a reduced bond
  budget: an unsubstituted benzene carbon has two ring bonds plus one
  implicit H.  ``AROMATIC_BOND_CAP`` is the maximum sigma-bond count,
  ``AROMATIC_H_BASE`` the reference for implicit-H fill
  (fill = max(0, base - bond count)).
"""

from __future__ import annotations

from ..errors import UnsupportedFeatureError

SUPPORTED_ELEMENTS = ("C", "N", "O", "S", "P", "F", "Cl", "Br", "I")

# IUPAC 2021 standard atomic weights (conventional values).
ATOMIC_MASS = {
    "H": 1.008,
    "C": 12.011,
    "N": 14.007,
    "O": 15.999,
    "F": 18.998403163,
    "P": 30.973761998,
    "S": 32.06,
    "Cl": 35.45,
    "Br": 79.904,
    "I": 126.90447,
}

ALLOWED_VALENCES = {
    "C": (4,),
    "N": (3,),
    "O": (2,),
    "S": (2, 4, 6),
    "P": (3, 5),
    "F": (1,),
    "Cl": (1,),
    "Br": (1,),
    "I": (1,),
}

# Elements that may carry the aromatic flag.
AROMATIC_ELEMENTS = ("C", "N", "O", "S", "P")

# Max sigma-bond count for an aromatic atom (aromatic bonds count 1).
AROMATIC_BOND_CAP = {"C": 3, "N": 3, "O": 2, "S": 2, "P": 3}

# Implicit H fill reference: fill = max(0, base - bonds).  Pyridine-type n
# gets 0 H by default; pyrrole-type needs an explicit [nH].
AROMATIC_H_BASE = {"C": 3, "N": 2, "O": 2, "S": 2, "P": 2}


def allowed_valences(element: str, charge: int) -> tuple[int, ...]:
    """Allowed bond-order sums for an atom, shifted by formal charge."""
    if element not in ALLOWED_VALENCES:
        raise UnsupportedFeatureError(f"unsupported element: {element!r}")
    base = ALLOWED_VALENCES[element]
    if charge == 0:
        return base
    if element == "C":
        shift = -abs(charge)
    elif element in ("N", "P"):
        shift = charge
    elif element in ("O", "S"):
        shift = charge
    else:  # halogens
        shift = charge
    vals = tuple(v + shift for v in base if v + shift >= 0)
    return vals or (0,)


def max_valence(element: str, charge: int = 0) -> int:
    return max(allowed_valences(element, charge))
