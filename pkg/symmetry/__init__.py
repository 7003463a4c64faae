"""Stabilizers, finite symmetries and torsion bounds."""
