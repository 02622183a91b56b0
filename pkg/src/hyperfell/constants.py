"""Numerical defaults shared by every module and the CLI."""

TAU_MEM = 1e-9
TAU_SEP = 1e-6
H_DIV = 1e3
C_DIV = 0.05
RESOLUTION = 64
TAIL_LENGTH = 20
ALPHA0 = 0.5
HYSTERESIS = 5
SEED = 0x5EED
BISECTION_STEPS = 60
