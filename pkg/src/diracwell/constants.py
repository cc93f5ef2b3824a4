"""Physical constants in atomic units (hbar = e = m_e = 1)."""

C = 137.036          # speed of light
C2 = C * C           # electron rest energy
LAMBDA_E = 1.0 / C   # Compton wavelength
