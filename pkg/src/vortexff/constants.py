"""Physical constants and unit conversions.

Internally every length is measured in Bohr radii; lengths cross the public
boundary in nanometres.
"""

BOHR_NM = 0.052917721
CLASSICAL_ELECTRON_RADIUS_M = 2.818e-15


def nm_to_bohr(length_nm):
    return length_nm / BOHR_NM


def bohr_to_nm(length_bohr):
    return length_bohr * BOHR_NM
