"""Toric promotion with reflections and refractions.

Brute-force orbit enumeration, closed-form orbit-size predictors, a
cyclic sieving verifier, the affine symmetric group lift and SVG
diagrams for labeled billiards graphs.
"""

__version__ = "1.0.0"
