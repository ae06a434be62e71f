"""Certified arithmetic for Jeśmanowicz' equation over primitive Pythagorean pairs."""

__version__ = "0.1.0"
