"""Constant Christoffel tensors, curvature and genericity."""
