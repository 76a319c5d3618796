"""Minimal ring extensions of finite rings: structure, ideals, classification."""
