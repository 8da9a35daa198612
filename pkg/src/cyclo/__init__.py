"""Cyclo core package."""
