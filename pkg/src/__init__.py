"""
Torus Gauss

Gauss sum identities verified from discrete cyclic path integrals on a
toroidal phase space.
"""

__version__ = "1.0.0"
__author__ = "Torus Gauss Team"

from src.harness import VerificationHarness

__all__ = ['VerificationHarness']
