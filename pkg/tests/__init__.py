"""
Test Suite for Torus Gauss
"""
