"""Physical constants used throughout the package (SI units)."""

import math

C0 = 299_792_458.0           # speed of light in vacuum (m/s)
MU0 = 4.0e-7 * math.pi       # permeability of free space (H/m)
EPS0 = 1.0 / (MU0 * C0 * C0)  # permittivity of free space (F/m)
ETA0 = math.sqrt(MU0 / EPS0)  # free-space wave impedance, ~376.730 ohm
