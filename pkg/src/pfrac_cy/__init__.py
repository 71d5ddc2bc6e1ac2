"""Exact partial fractions and Chung-Yao Hermite interpolation."""
