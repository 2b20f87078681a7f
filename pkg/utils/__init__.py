"""
Utility helpers: file IO and seed derivation
"""
